#include "cusplink/monodromy.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace cusplink {

Mat2Z::Mat2Z(Int a, Int b, Int c, Int d) : m_{std::move(a), std::move(b), std::move(c), std::move(d)} {
  if (det() != 1)
    fail("BadInput", "matrix " + to_string() + " has determinant " + det().get_str() + ", expected 1");
}

Mat2Z operator*(const Mat2Z& x, const Mat2Z& y) {
  return Mat2Z(x.m_[0] * y.m_[0] + x.m_[1] * y.m_[2], x.m_[0] * y.m_[1] + x.m_[1] * y.m_[3],
               x.m_[2] * y.m_[0] + x.m_[3] * y.m_[2], x.m_[2] * y.m_[1] + x.m_[3] * y.m_[3]);
}

Mat2Z Mat2Z::pow(long n) const {
  Mat2Z base = n < 0 ? inverse() : *this;
  unsigned long e = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1 : static_cast<unsigned long>(n);
  Mat2Z acc;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

std::array<QuadElem, 2> Mat2Z::apply(const std::array<QuadElem, 2>& v) const {
  return {v[0] * Rat(m_[0]) + v[1] * Rat(m_[1]), v[0] * Rat(m_[2]) + v[1] * Rat(m_[3])};
}

std::pair<double, double> Mat2Z::apply(double x, double y) const {
  return {m_[0].get_d() * x + m_[1].get_d() * y, m_[2].get_d() * x + m_[3].get_d() * y};
}

std::string Mat2Z::to_string() const {
  return "[[" + m_[0].get_str() + "," + m_[1].get_str() + "],[" + m_[2].get_str() + "," +
         m_[3].get_str() + "]]";
}

Mat2Z Mat2Z::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s += c;
  auto bad = [&]() -> void { fail("BadInput", "cannot parse matrix: " + text); };
  if (s.size() < 9 || s.substr(0, 2) != "[[" || s.substr(s.size() - 2) != "]]") bad();
  std::string inner = s.substr(2, s.size() - 4);
  size_t mid = inner.find("],[");
  if (mid == std::string::npos) bad();
  auto split2 = [&](const std::string& row) {
    size_t comma = row.find(',');
    if (comma == std::string::npos || row.find(',', comma + 1) != std::string::npos) bad();
    return std::pair<std::string, std::string>(row.substr(0, comma), row.substr(comma + 1));
  };
  auto [a, b] = split2(inner.substr(0, mid));
  auto [c, d] = split2(inner.substr(mid + 3));
  try {
    return Mat2Z(Int(a), Int(b), Int(c), Int(d));
  } catch (const std::invalid_argument&) {
    bad();
  }
  return Mat2Z();
}

Triple Triple::make(long p, long q, long r) {
  if (p < 2 || q < 2 || r < 2)
    fail("BadInput", "exponents must be >= 2, got " + std::to_string(p) + "," + std::to_string(q) +
                         "," + std::to_string(r));
  Rat sum = Rat(1, p) + Rat(1, q) + Rat(1, r);
  if (sum >= 1)
    fail("NotHyperbolicCusp", "1/p + 1/q + 1/r >= 1 for (" + std::to_string(p) + "," +
                                  std::to_string(q) + "," + std::to_string(r) +
                                  "): not a cusp (Nil or elliptic regime)");
  return Triple{p, q, r};
}

std::string Triple::to_string() const {
  return std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r);
}

BCycle::BCycle(std::vector<long> b) : b_(std::move(b)) {
  if (b_.empty()) fail("BadInput", "cycle must be nonempty");
  bool some3 = false;
  for (long v : b_) {
    if (v < 2) fail("BadInput", "cycle entries must be >= 2, got " + std::to_string(v));
    if (v >= 3) some3 = true;
  }
  if (!some3) fail("NotHyperbolicCycle", "all-2 cycle corresponds to w_k = 1 (not hyperbolic)");
}

BCycle BCycle::canonical() const {
  std::vector<long> best = b_;
  std::vector<long> cur = b_;
  for (long i = 1; i < size(); ++i) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (cur < best) best = cur;
  }
  return BCycle(best);
}

std::string BCycle::to_string() const {
  std::string s;
  for (size_t i = 0; i < b_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(b_[i]);
  }
  return s;
}

BCycle BCycle::parse(const std::string& text) {
  std::vector<long> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      long v = std::stol(item, &pos);
      while (pos < item.size() && (item[pos] == ' ' || item[pos] == '\t')) ++pos;
      if (pos != item.size()) throw std::invalid_argument(item);
      vals.push_back(v);
    } catch (const std::exception&) {
      fail("BadInput", "cannot parse cycle: " + text);
    }
  }
  return BCycle(vals);
}

Mat2Z monodromy_from_pqr(const Triple& t) {
  auto c_factor = [](long b) { return Mat2Z(0, 1, -1, Int(b)); };
  Mat2Z m = c_factor(t.p) * c_factor(t.q) * c_factor(t.r);
  Mat2Z a = m.inverse();
  if (a.trace() <= 2) fail("NotHyperbolicCusp", "trace " + a.trace().get_str() + " <= 2");
  return a;
}

Mat2Z mori_matrix(long m, const std::vector<long>& k) {
  if (m <= 0) fail("BadInput", "m must be positive, got " + std::to_string(m));
  if (static_cast<long>(k.size()) != m)
    fail("BadInput", "k must have length m = " + std::to_string(m));
  bool nonzero = false;
  for (long v : k) {
    if (v < 0) fail("BadInput", "k entries must be >= 0");
    if (v != 0) nonzero = true;
  }
  if (!nonzero) fail("NilCase", "k = 0 gives a Nil-manifold, not a cusp link");
  Mat2Z lower(1, 0, 1, 1);
  Mat2Z acc;
  for (long v : k) acc = acc * lower * Mat2Z(1, Int(v), 0, 1);
  return acc;
}

bool is_hyperbolic(const Mat2Z& a) { return a.trace() > 2; }

namespace {

// Field data of the eigenvalue: trace^2 - 4 = f^2 * d0.
struct EigenField {
  Int d0, f;
  QuadElem a_large, a_small;
};

EigenField eigen_field(const Mat2Z& m) {
  Int tr = m.trace();
  auto [d0, f] = reduce_radicand(tr * tr - 4);
  QuadElem large(d0, Rat(tr, 2), Rat(f, 2));
  return {d0, f, large, large.conjugate()};
}

}  // namespace

EigenFrame eigen_frame(const Mat2Z& a) {
  if (!is_hyperbolic(a)) fail("NotHyperbolic", "trace " + a.trace().get_str() + " <= 2");
  EigenField ef = eigen_field(a);
  // a01 = 0 would force an integer diagonal with trace +-2; unreachable here.
  if (a.at(0, 1) == 0) fail("NotHyperbolic", "degenerate hyperbolic matrix");
  QuadElem w = (ef.a_large - Rat(a.at(0, 0))) / Rat(a.at(0, 1));
  QuadElem wbar = w.conjugate();
  QuadElem one = QuadElem::rational(ef.d0, 1);
  QuadElem scale = (w - wbar).inverse();
  return EigenFrame{ef.a_large, {one, w}, {-scale, -wbar * scale}};
}

Mat2Z cycle_to_matrix(const BCycle& c) {
  Mat2Z acc;
  for (long i = 0; i < c.size(); ++i) acc = Mat2Z(Int(c.at(i)), -1, 1, 0) * acc;
  if (acc.trace() <= 2) fail("NotHyperbolicCycle", "cycle " + c.to_string() + " is not hyperbolic");
  return acc;
}

BCycle matrix_to_cycle(const Mat2Z& m) {
  if (!is_hyperbolic(m)) fail("NotHyperbolic", "trace " + m.trace().get_str() + " <= 2");
  EigenField ef = eigen_field(m);
  const Int& b = m.at(0, 1);
  if (b == 0) fail("NotHyperbolic", "degenerate hyperbolic matrix");
  // w = y/x of the contracting eigenvector solves b w^2 + (a - d) w - c = 0;
  // its minus-CF expansion is eventually periodic with the cycle of m.
  Int ad = m.at(0, 0) - m.at(1, 1);
  QuadElem cand1(ef.d0, Rat(-ad, 2 * b), Rat(ef.f, 2 * b));
  QuadElem cand2 = cand1.conjugate();
  auto is_contracting = [&](const QuadElem& w) {
    return QuadElem::rational(ef.d0, Rat(m.at(0, 0))) + w * Rat(b) == ef.a_small;
  };
  QuadElem w = is_contracting(cand1) ? cand1 : cand2;
  if (!is_contracting(w)) fail("NotHyperbolic", "no contracting fixed point");

  std::map<QuadElem, size_t> seen;
  std::vector<Int> expansion;
  for (int iter = 0; iter < 100000; ++iter) {
    auto it = seen.find(w);
    if (it != seen.end()) {
      std::vector<long> period;
      for (size_t i = it->second; i < expansion.size(); ++i) {
        if (!expansion[i].fits_slong_p()) fail("BadInput", "cycle entry overflows");
        period.push_back(expansion[i].get_si());
      }
      // The expansion yields the primitive period; a power of a primitive
      // class (eigenvalue A_r^n) repeats it n times.
      BCycle primitive(period);
      QuadElem unit = fundamental_unit(primitive);
      QuadElem acc = unit;
      for (long n = 1; n <= 256; ++n) {
        if (acc == ef.a_small) {
          std::vector<long> full;
          for (long rep = 0; rep < n; ++rep)
            full.insert(full.end(), period.begin(), period.end());
          return BCycle(full);
        }
        acc = acc * unit;
      }
      fail("NotHyperbolic", "eigenvalue is not a power of the primitive unit");
    }
    seen.emplace(w, expansion.size());
    Int bi = w.ceil();
    expansion.push_back(bi);
    w = (QuadElem::rational(ef.d0, Rat(bi)) - w).inverse();
  }
  fail("BadInput", "minus-CF expansion did not become periodic");
}

CFData::CFData(BCycle cycle, std::vector<QuadElem> w, long k_min, long k_max, std::vector<Int> p,
               std::vector<Int> q, std::vector<QuadElem> a_seq, QuadElem unit)
    : cycle_(std::move(cycle)),
      w_(std::move(w)),
      k_min_(k_min),
      k_max_(k_max),
      p_(std::move(p)),
      q_(std::move(q)),
      a_(std::move(a_seq)),
      unit_(std::move(unit)) {}

size_t CFData::idx(long k) const {
  if (k < k_min_ || k > k_max_)
    fail("BadInput", "index " + std::to_string(k) + " outside computed range [" +
                         std::to_string(k_min_) + "," + std::to_string(k_max_) + "]");
  return static_cast<size_t>(k - k_min_);
}

const QuadElem& CFData::wk(long k) const {
  long r = cycle_.size();
  return w_[static_cast<size_t>(((k % r) + r) % r)];
}
const Int& CFData::pk(long k) const { return p_[idx(k)]; }
const Int& CFData::qk(long k) const { return q_[idx(k)]; }
const QuadElem& CFData::Ak(long k) const { return a_[idx(k)]; }

CFData cf_sequence(const BCycle& c, long k_min, long k_max) {
  if (k_min > 0 || k_max < 0) fail("BadInput", "range must satisfy k_min <= 0 <= k_max");
  long r = c.size();
  long lo = k_min - 1;
  long hi = std::max(k_max + 1, r);

  // p_k, q_k with (p_{-1},p_0) = (0,1), (q_{-1},q_0) = (-1,0) and
  // x_{k+1} = b_k x_k - x_{k-1} in both directions.
  size_t n = static_cast<size_t>(hi - lo + 1);
  std::vector<Int> p(n), q(n);
  auto at = [&](std::vector<Int>& v, long k) -> Int& { return v[static_cast<size_t>(k - lo)]; };
  at(p, -1) = 0;
  at(p, 0) = 1;
  at(q, -1) = -1;
  at(q, 0) = 0;
  for (long k = 1; k <= hi; ++k) {
    at(p, k) = Int(c.at(k - 1)) * at(p, k - 1) - at(p, k - 2);
    at(q, k) = Int(c.at(k - 1)) * at(q, k - 1) - at(q, k - 2);
  }
  for (long k = -2; k >= lo; --k) {
    at(p, k) = Int(c.at(k + 1)) * at(p, k + 1) - at(p, k + 2);
    at(q, k) = Int(c.at(k + 1)) * at(q, k + 1) - at(q, k + 2);
  }

  // w_0 is the larger root of q_r t^2 - (p_r + q_{r-1}) t + p_{r-1} = 0.
  Int pr = at(p, r), qr = at(q, r), pr1 = at(p, r - 1), qr1 = at(q, r - 1);
  Int disc = (pr + qr1) * (pr + qr1) - 4 * qr * pr1;
  auto [d0, f] = reduce_radicand(disc);
  QuadElem w0(d0, Rat(pr + qr1, 2 * qr), Rat(f, 2 * qr));

  std::vector<QuadElem> w;
  w.reserve(static_cast<size_t>(r) + 1);
  w.push_back(w0);
  for (long k = 0; k < r; ++k)
    w.push_back((QuadElem::rational(d0, Rat(c.at(k))) - w.back()).inverse());
  if (!(w.back() == w0)) fail("BadInput", "periodicity w_r = w_0 failed for " + c.to_string());
  w.pop_back();

  auto wk = [&](long k) -> const QuadElem& {
    return w[static_cast<size_t>(((k % r) + r) % r)];
  };

  std::vector<QuadElem> a_seq(n, QuadElem::rational(d0, 0));
  auto a_at = [&](long k) -> QuadElem& { return a_seq[static_cast<size_t>(k - lo)]; };
  a_at(0) = QuadElem::rational(d0, 1);
  for (long k = 0; k < hi; ++k) a_at(k + 1) = a_at(k) / wk(k + 1);
  for (long k = -1; k >= lo; --k) a_at(k) = wk(k + 1) * a_at(k + 1);

  QuadElem unit = a_at(r);
  if (unit.norm() != 1) fail("BadInput", "unit A_r has norm != 1 for " + c.to_string());
  return CFData(c, std::move(w), lo, hi, std::move(p), std::move(q), std::move(a_seq),
                std::move(unit));
}

QuadElem fundamental_unit(const BCycle& c) { return cf_sequence(c, 0, c.size()).unit(); }

long euler_characteristic(long m, const std::vector<long>& k) {
  if (m < 1 || m > 3)
    fail("NoSuchSingularity", "no surface singularity for m = " + std::to_string(m));
  if (static_cast<long>(k.size()) != m) fail("BadInput", "k must have length m");
  long sum = 0;
  for (long v : k) {
    if (v < 0) fail("BadInput", "k entries must be >= 0");
    sum += v;
  }
  return (12 - m) + sum;
}

bool cycles_equivalent(const BCycle& c1, const BCycle& c2) {
  if (c1.size() != c2.size()) return false;
  return c1.canonical() == c2.canonical();
}

ClassData class_data(const Mat2Z& a) {
  Int tr = a.trace();
  auto [d0, f] = reduce_radicand(tr * tr - 4);
  (void)f;
  BCycle fwd = matrix_to_cycle(a).canonical();
  BCycle bwd = matrix_to_cycle(a.inverse()).canonical();
  return ClassData{tr, d0, fwd, bwd, fundamental_unit(fwd), fundamental_unit(bwd)};
}

PqrReport pqr_cycle_report(const Triple& t) {
  Mat2Z a = monodromy_from_pqr(t);
  PqrReport rep{t, a, class_data(a), std::nullopt, {}, std::nullopt, std::nullopt, {}};

  long m = 0;
  std::vector<long> k;
  if (t.p == 2 && t.q == 3 && t.r >= 7) {
    m = 1;
    k = {t.r - 6};
  } else if (t.p == 2 && t.q >= 4 && t.r >= 4) {
    m = 2;
    k = {t.q - 4, t.r - 4};
  } else if (t.p >= 3 && t.q >= 3 && t.r >= 3) {
    m = 3;
    k = {t.p - 3, t.q - 3, t.r - 3};
  }
  if (m > 0) {
    rep.mori_m = m;
    rep.mori_k = k;
    rep.mori = mori_matrix(m, k);
    rep.mori_class = class_data(*rep.mori);
    auto yes_no = [](bool v) { return v ? std::string("yes") : std::string("no"); };
    rep.findings.emplace_back("traces_equal", yes_no(rep.a_class.trace == rep.mori_class->trace));
    rep.findings.emplace_back("same_field", yes_no(rep.a_class.disc_radicand ==
                                                   rep.mori_class->disc_radicand));
    rep.findings.emplace_back(
        "cycle_A_eq_cycle_Amk",
        yes_no(cycles_equivalent(rep.a_class.cycle_fwd, rep.mori_class->cycle_fwd)));
    rep.findings.emplace_back(
        "cycle_A_eq_cycle_Amk_inv",
        yes_no(cycles_equivalent(rep.a_class.cycle_fwd, rep.mori_class->cycle_bwd)));
    rep.findings.emplace_back(
        "cycle_A_inv_eq_cycle_Amk",
        yes_no(cycles_equivalent(rep.a_class.cycle_bwd, rep.mori_class->cycle_fwd)));
    rep.findings.emplace_back(
        "cycle_A_inv_eq_cycle_Amk_inv",
        yes_no(cycles_equivalent(rep.a_class.cycle_bwd, rep.mori_class->cycle_bwd)));
  }
  return rep;
}

}  // namespace cusplink
