#pragma once

// SL(2,Z) monodromy matrices of cusp singularities, periodic minus
// continued-fraction cycles, the w_k/p_k/q_k/A_k sequences, fundamental
// units, Mori's A_{m,k} matrices, and Milnor-fiber Euler characteristics.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cusplink/quadfield.hpp"

namespace cusplink {

class Mat2Z {
 public:
  Mat2Z() : m_{1, 0, 0, 1} {}
  Mat2Z(Int a, Int b, Int c, Int d);  // determinant must be 1

  const Int& at(int row, int col) const { return m_[static_cast<size_t>(2 * row + col)]; }
  Int trace() const { return m_[0] + m_[3]; }
  Int det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }
  Mat2Z inverse() const { return Mat2Z(m_[3], -m_[1], -m_[2], m_[0]); }
  Mat2Z pow(long n) const;

  std::array<QuadElem, 2> apply(const std::array<QuadElem, 2>& v) const;
  std::pair<double, double> apply(double x, double y) const;

  friend Mat2Z operator*(const Mat2Z& x, const Mat2Z& y);
  friend bool operator==(const Mat2Z& x, const Mat2Z& y) { return x.m_ == y.m_; }
  friend bool operator!=(const Mat2Z& x, const Mat2Z& y) { return x.m_ != y.m_; }

  std::string to_string() const;  // [[a,b],[c,d]]
  static Mat2Z parse(const std::string& text);

 private:
  std::array<Int, 4> m_;  // row-major
};

// Exponents of x^p + y^q + z^r + xyz with 1/p + 1/q + 1/r < 1 (checked
// exactly; equality or more is the Nil/elliptic regime).
struct Triple {
  long p, q, r;
  static Triple make(long p, long q, long r);
  std::string to_string() const;
};

// Periodic minus-CF cycle (b_0,...,b_{r-1}): entries >= 2 with some >= 3.
class BCycle {
 public:
  explicit BCycle(std::vector<long> b);

  long size() const { return static_cast<long>(b_.size()); }
  long at(long k) const {  // periodic index
    long r = size();
    return b_[static_cast<size_t>(((k % r) + r) % r)];
  }
  const std::vector<long>& entries() const { return b_; }
  BCycle canonical() const;  // lexicographically minimal rotation

  friend bool operator==(const BCycle& x, const BCycle& y) { return x.b_ == y.b_; }

  std::string to_string() const;  // comma-separated
  static BCycle parse(const std::string& text);

 private:
  std::vector<long> b_;
};

// Exact eigen data of a hyperbolic A: A v_+ = a v_+, A v_- = a^{-1} v_-,
// det(v_+|v_-) = 1, first coordinate of v_+ positive.
struct EigenFrame {
  QuadElem a;
  std::array<QuadElem, 2> v_plus;
  std::array<QuadElem, 2> v_minus;
};

// w_k, p_k, q_k, A_k on an index range, plus the unit A_r.
class CFData {
 public:
  CFData(BCycle cycle, std::vector<QuadElem> w, long k_min, long k_max,
         std::vector<Int> p, std::vector<Int> q, std::vector<QuadElem> a_seq, QuadElem unit);

  const BCycle& cycle() const { return cycle_; }
  long k_min() const { return k_min_; }
  long k_max() const { return k_max_; }
  const QuadElem& w0() const { return w_[0]; }
  const QuadElem& wk(long k) const;  // periodic in k
  const Int& pk(long k) const;
  const Int& qk(long k) const;
  const QuadElem& Ak(long k) const;
  const QuadElem& unit() const { return unit_; }

 private:
  BCycle cycle_;
  std::vector<QuadElem> w_;  // w_0..w_{r-1}
  long k_min_, k_max_;       // valid index range for p/q/A (inclusive)
  std::vector<Int> p_, q_;
  std::vector<QuadElem> a_;
  QuadElem unit_;
  size_t idx(long k) const;
};

Mat2Z monodromy_from_pqr(const Triple& t);
Mat2Z mori_matrix(long m, const std::vector<long>& k);
bool is_hyperbolic(const Mat2Z& a);
EigenFrame eigen_frame(const Mat2Z& a);
Mat2Z cycle_to_matrix(const BCycle& c);
BCycle matrix_to_cycle(const Mat2Z& a);
CFData cf_sequence(const BCycle& c, long k_min, long k_max);
QuadElem fundamental_unit(const BCycle& c);
long euler_characteristic(long m, const std::vector<long>& k);
bool cycles_equivalent(const BCycle& c1, const BCycle& c2);

// Conjugacy-class data of one matrix: canonical cycles of A and A^{-1},
// trace, field discriminant radicand, fundamental units.
struct ClassData {
  Int trace;
  Int disc_radicand;  // reduced radicand of trace^2 - 4
  BCycle cycle_fwd;   // canonical cycle of A
  BCycle cycle_bwd;   // canonical cycle of A^{-1}
  QuadElem unit_fwd;
  QuadElem unit_bwd;
};
ClassData class_data(const Mat2Z& a);

struct PqrReport {
  Triple triple;
  Mat2Z monodromy;
  ClassData a_class;
  // Present when the triple matches one of the section-4 patterns.
  std::optional<long> mori_m;
  std::vector<long> mori_k;
  std::optional<Mat2Z> mori;
  std::optional<ClassData> mori_class;
  // Conjugacy/equality findings, surfaced without asserting any relation.
  std::vector<std::pair<std::string, std::string>> findings;
};
PqrReport pqr_cycle_report(const Triple& t);

}  // namespace cusplink
