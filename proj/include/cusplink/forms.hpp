#pragma once

// Dimension-generic (dim <= 5) pointwise exterior algebra: k-form values over
// increasing multi-indices stored by bitmask, wedge products, exterior
// derivatives (registered analytic field + central-difference oracle), and
// Lie brackets of vector fields.

#include <array>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <span>

#include "cusplink/error.hpp"

namespace cusplink {

inline constexpr int kMaxDim = 5;

struct Point {
  int dim = 0;
  std::array<double, kMaxDim> x{};

  static Point of(std::initializer_list<double> coords) {
    Point p;
    p.dim = static_cast<int>(coords.size());
    if (p.dim < 1 || p.dim > kMaxDim) fail("BadArity", "dimension must be 1..5");
    int i = 0;
    for (double c : coords) p.x[static_cast<size_t>(i++)] = c;
    return p;
  }
};
using Vec = Point;

// Pointwise value of a k-form; coefficient of dx^I stored at the bitmask of I.
class KFormValue {
 public:
  KFormValue(int dim, int degree);

  int dim() const { return dim_; }
  int degree() const { return degree_; }

  double coef(uint32_t mask) const;
  void set_coef(uint32_t mask, double v);
  void add_coef(uint32_t mask, double v);

  double evaluate(std::span<const Vec> vectors) const;

  KFormValue& operator+=(const KFormValue& o);
  KFormValue& operator-=(const KFormValue& o);
  KFormValue& scale(double s);

  double max_abs_coef() const;
  double max_abs_diff(const KFormValue& o) const;

 private:
  int dim_, degree_;
  std::array<double, 32> c_{};
  void check_mask(uint32_t mask) const;
};

KFormValue wedge(const KFormValue& w, const KFormValue& e);

// Evaluable form field; when analytic_d is registered it is used by
// ext_derivative, with fd_ext_derivative as the independent oracle.
struct FormField {
  int dim = 0;
  int degree = 0;
  std::function<KFormValue(const Point&)> eval;
  std::shared_ptr<const FormField> analytic_d;
};

inline constexpr double kDefaultFdStep = 1e-5;

KFormValue ext_derivative(const FormField& f, const Point& p);
KFormValue fd_ext_derivative(const FormField& f, const Point& p, double h);

struct VectorFieldSpec {
  int dim = 0;
  std::function<Vec(const Point&)> eval;
};

Vec lie_bracket(const VectorFieldSpec& u, const VectorFieldSpec& v, const Point& p, double h);

}  // namespace cusplink
