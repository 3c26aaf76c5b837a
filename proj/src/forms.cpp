#include "cusplink/forms.hpp"

#include <bit>
#include <cmath>
#include <vector>

namespace cusplink {

namespace {

int popcount(uint32_t m) { return std::popcount(m); }

// Determinant of the k x k minor picking `rows` coordinates of `vectors`.
double minor_det(std::span<const Vec> vectors, std::span<const int> rows) {
  size_t k = rows.size();
  double m[kMaxDim][kMaxDim];
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j)
      m[i][j] = vectors[j].x[static_cast<size_t>(rows[i])];
  // Identical columns make the value exactly zero (alternation).
  for (size_t j1 = 0; j1 < k; ++j1)
    for (size_t j2 = j1 + 1; j2 < k; ++j2) {
      bool equal = true;
      for (size_t i = 0; i < k && equal; ++i) equal = m[i][j1] == m[i][j2];
      if (equal) return 0.0;
    }
  // Gaussian elimination with partial pivoting.
  double det = 1.0;
  for (size_t col = 0; col < k; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < k; ++r)
      if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
    if (m[piv][col] == 0.0) return 0.0;
    if (piv != col) {
      for (size_t j = 0; j < k; ++j) std::swap(m[piv][j], m[col][j]);
      det = -det;
    }
    det *= m[col][col];
    for (size_t r = col + 1; r < k; ++r) {
      double f = m[r][col] / m[col][col];
      for (size_t j = col; j < k; ++j) m[r][j] -= f * m[col][j];
    }
  }
  return det;
}

// Parity sign of merging sorted index sets I and J: (-1)^{#{(i,j): i in I, j in J, j < i}}.
int merge_sign(uint32_t i_mask, uint32_t j_mask) {
  int inversions = 0;
  for (int i = 0; i < kMaxDim; ++i)
    if (i_mask & (1u << i)) inversions += popcount(j_mask & ((1u << i) - 1));
  return (inversions % 2 == 0) ? 1 : -1;
}

}  // namespace

KFormValue::KFormValue(int dim, int degree) : dim_(dim), degree_(degree) {
  if (dim < 1 || dim > kMaxDim) fail("BadArity", "dimension must be 1..5");
  if (degree < 0 || degree > dim) fail("BadDegree", "degree must be 0..dim");
}

void KFormValue::check_mask(uint32_t mask) const {
  if (mask >= (1u << dim_) || popcount(mask) != degree_)
    fail("BadDegree", "multi-index does not match form degree");
}

double KFormValue::coef(uint32_t mask) const {
  check_mask(mask);
  return c_[mask];
}

void KFormValue::set_coef(uint32_t mask, double v) {
  check_mask(mask);
  c_[mask] = v;
}

void KFormValue::add_coef(uint32_t mask, double v) {
  check_mask(mask);
  c_[mask] += v;
}

double KFormValue::evaluate(std::span<const Vec> vectors) const {
  if (static_cast<int>(vectors.size()) != degree_)
    fail("BadArity", "expected " + std::to_string(degree_) + " vectors, got " +
                         std::to_string(vectors.size()));
  for (const Vec& v : vectors)
    if (v.dim != dim_) fail("BadArity", "vector dimension mismatch");
  if (degree_ == 0) return c_[0];
  double total = 0.0;
  for (uint32_t mask = 0; mask < (1u << dim_); ++mask) {
    if (popcount(mask) != degree_ || c_[mask] == 0.0) continue;
    int rows[kMaxDim];
    int k = 0;
    for (int i = 0; i < dim_; ++i)
      if (mask & (1u << i)) rows[k++] = i;
    total += c_[mask] * minor_det(vectors, std::span<const int>(rows, static_cast<size_t>(k)));
  }
  return total;
}

KFormValue& KFormValue::operator+=(const KFormValue& o) {
  if (dim_ != o.dim_ || degree_ != o.degree_) fail("BadDegree", "form shape mismatch in +=");
  for (uint32_t m = 0; m < 32; ++m) c_[m] += o.c_[m];
  return *this;
}

KFormValue& KFormValue::operator-=(const KFormValue& o) {
  if (dim_ != o.dim_ || degree_ != o.degree_) fail("BadDegree", "form shape mismatch in -=");
  for (uint32_t m = 0; m < 32; ++m) c_[m] -= o.c_[m];
  return *this;
}

KFormValue& KFormValue::scale(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

double KFormValue::max_abs_coef() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::fabs(v));
  return m;
}

double KFormValue::max_abs_diff(const KFormValue& o) const {
  double m = 0.0;
  for (uint32_t i = 0; i < 32; ++i) m = std::max(m, std::fabs(c_[i] - o.c_[i]));
  return m;
}

KFormValue wedge(const KFormValue& w, const KFormValue& e) {
  if (w.dim() != e.dim()) fail("BadArity", "wedge of forms on different charts");
  if (w.degree() + e.degree() > w.dim())
    fail("BadDegree", "wedge degree " + std::to_string(w.degree() + e.degree()) + " exceeds dim " +
                          std::to_string(w.dim()));
  KFormValue out(w.dim(), w.degree() + e.degree());
  uint32_t top = 1u << w.dim();
  for (uint32_t mi = 0; mi < top; ++mi) {
    if (popcount(mi) != w.degree()) continue;
    double wi = w.coef(mi);
    if (wi == 0.0) continue;
    for (uint32_t mj = 0; mj < top; ++mj) {
      if (popcount(mj) != e.degree() || (mi & mj)) continue;
      double ej = e.coef(mj);
      if (ej == 0.0) continue;
      out.add_coef(mi | mj, merge_sign(mi, mj) * wi * ej);
    }
  }
  return out;
}

KFormValue ext_derivative(const FormField& f, const Point& p) {
  if (f.analytic_d) return f.analytic_d->eval(p);
  return fd_ext_derivative(f, p, kDefaultFdStep);
}

KFormValue fd_ext_derivative(const FormField& f, const Point& p, double h) {
  if (h <= 0) fail("BadInput", "fd step must be positive");
  // partial_i of every coefficient by central differences
  std::vector<KFormValue> dcoef;
  dcoef.reserve(static_cast<size_t>(f.dim));
  for (int i = 0; i < f.dim; ++i) {
    Point hi = p, lo = p;
    hi.x[static_cast<size_t>(i)] += h;
    lo.x[static_cast<size_t>(i)] -= h;
    KFormValue d = f.eval(hi);
    d -= f.eval(lo);
    d.scale(1.0 / (2.0 * h));
    dcoef.push_back(d);
  }
  KFormValue out(f.dim, f.degree + 1);
  uint32_t top = 1u << f.dim;
  for (uint32_t mj = 0; mj < top; ++mj) {
    if (popcount(mj) != f.degree + 1) continue;
    double acc = 0.0;
    for (int i = 0; i < f.dim; ++i) {
      uint32_t bit = 1u << i;
      if (!(mj & bit)) continue;
      int sign = (popcount(mj & (bit - 1)) % 2 == 0) ? 1 : -1;
      acc += sign * dcoef[static_cast<size_t>(i)].coef(mj ^ bit);
    }
    out.set_coef(mj, acc);
  }
  return out;
}

Vec lie_bracket(const VectorFieldSpec& u, const VectorFieldSpec& v, const Point& p, double h) {
  if (h <= 0) fail("BadInput", "fd step must be positive");
  if (u.dim != v.dim) fail("BadArity", "vector fields on different charts");
  Vec up = u.eval(p), vp = v.eval(p);
  Vec out;
  out.dim = u.dim;
  for (int j = 0; j < u.dim; ++j) {
    Point hi = p, lo = p;
    hi.x[static_cast<size_t>(j)] += h;
    lo.x[static_cast<size_t>(j)] -= h;
    Vec dv_hi = v.eval(hi), dv_lo = v.eval(lo);
    Vec du_hi = u.eval(hi), du_lo = u.eval(lo);
    for (int i = 0; i < u.dim; ++i) {
      size_t si = static_cast<size_t>(i);
      double djv = (dv_hi.x[si] - dv_lo.x[si]) / (2.0 * h);
      double dju = (du_hi.x[si] - du_lo.x[si]) / (2.0 * h);
      out.x[si] += up.x[static_cast<size_t>(j)] * djv - vp.x[static_cast<size_t>(j)] * dju;
    }
  }
  return out;
}

}  // namespace cusplink
