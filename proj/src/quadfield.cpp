#include "cusplink/quadfield.hpp"

#include <mpfr.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>
#include <vector>

namespace cusplink {

std::pair<Int, Int> reduce_radicand(const Int& d) {
  if (d < 2) fail("BadInput", "radicand must be >= 2, got " + d.get_str());
  if (mpz_perfect_square_p(d.get_mpz_t()))
    fail("RationalRadicand", "radicand " + d.get_str() + " is a perfect square");

  Int m = d, f = 1, d0 = 1;
  auto extract = [&](const Int& p) {
    unsigned long e = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
      m /= p;
      ++e;
    }
    for (unsigned long i = 0; i + 1 < e; i += 2) f *= p;
    if (e % 2 == 1) d0 *= p;
  };

  extract(2);
  Int p = 3;
  while (p * p * p <= m) {
    extract(p);
    p += 2;
  }
  // The cofactor has at most two prime factors: p, p*q, or p^2.
  if (m > 1) {
    if (mpz_perfect_square_p(m.get_mpz_t())) {
      Int root;
      mpz_sqrt(root.get_mpz_t(), m.get_mpz_t());
      f *= root;
    } else {
      d0 *= m;
    }
  }
  return {d0, f};
}

QuadElem::QuadElem(Int d0, Rat a, Rat b) : d0_(std::move(d0)), a_(std::move(a)), b_(std::move(b)) {
  if (d0_ < 2) fail("BadInput", "reduced radicand must be >= 2, got " + d0_.get_str());
  a_.canonicalize();
  b_.canonicalize();
}

QuadElem QuadElem::rational(const Int& d0, const Rat& a) { return QuadElem(d0, a, 0); }

QuadElem QuadElem::sqrt_of(const Int& d) {
  auto [d0, f] = reduce_radicand(d);
  return QuadElem(d0, 0, Rat(f));
}

void QuadElem::check_same_field(const QuadElem& x, const QuadElem& y) {
  if (x.d0_ != y.d0_)
    fail("FieldMismatch",
         "Q(sqrt(" + x.d0_.get_str() + ")) vs Q(sqrt(" + y.d0_.get_str() + "))");
}

Rat QuadElem::norm() const { return a_ * a_ - b_ * b_ * Rat(d0_); }

int QuadElem::sign() const {
  int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // a and b have opposite signs: compare a^2 against b^2*D0.
  int c = cmp(a_ * a_, b_ * b_ * Rat(d0_));
  if (c == 0) fail("BadInput", "sqrt(" + d0_.get_str() + ") is rational; radicand not reduced");
  return c > 0 ? sa : sb;
}

QuadElem QuadElem::inverse() const {
  if (is_zero()) fail("DivByZero", "inverse of zero in Q(sqrt(" + d0_.get_str() + "))");
  Rat n = norm();
  return QuadElem(d0_, a_ / n, -b_ / n);
}

QuadElem QuadElem::pow(long n) const {
  QuadElem base = n < 0 ? inverse() : *this;
  unsigned long e = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1 : static_cast<unsigned long>(n);
  QuadElem acc = QuadElem::rational(d0_, 1);
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

QuadElem operator+(const QuadElem& x, const QuadElem& y) {
  QuadElem::check_same_field(x, y);
  return QuadElem(x.d0_, x.a_ + y.a_, x.b_ + y.b_);
}

QuadElem operator-(const QuadElem& x, const QuadElem& y) {
  QuadElem::check_same_field(x, y);
  return QuadElem(x.d0_, x.a_ - y.a_, x.b_ - y.b_);
}

QuadElem operator*(const QuadElem& x, const QuadElem& y) {
  QuadElem::check_same_field(x, y);
  Rat d(x.d0_);
  return QuadElem(x.d0_, x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_);
}

QuadElem operator/(const QuadElem& x, const QuadElem& y) {
  QuadElem::check_same_field(x, y);
  return x * y.inverse();
}

QuadElem operator+(const QuadElem& x, const Rat& q) { return QuadElem(x.d0_, x.a_ + q, x.b_); }
QuadElem operator-(const QuadElem& x, const Rat& q) { return QuadElem(x.d0_, x.a_ - q, x.b_); }
QuadElem operator*(const QuadElem& x, const Rat& q) { return QuadElem(x.d0_, x.a_ * q, x.b_ * q); }
QuadElem operator/(const QuadElem& x, const Rat& q) {
  if (q == 0) fail("DivByZero", "division by rational zero");
  return QuadElem(x.d0_, x.a_ / q, x.b_ / q);
}

bool operator<(const QuadElem& x, const QuadElem& y) { return (x - y).sign() < 0; }

QuadElem arith(const QuadElem& x, const QuadElem& y, ArithOp op) {
  switch (op) {
    case ArithOp::add: return x + y;
    case ArithOp::sub: return x - y;
    case ArithOp::mul: return x * y;
    case ArithOp::div: return x / y;
  }
  fail("BadInput", "unknown arithmetic op");
}

namespace {

struct MpfrValue {
  mpfr_t v;
  explicit MpfrValue(mpfr_prec_t prec) { mpfr_init2(v, prec); }
  ~MpfrValue() { mpfr_clear(v); }
  MpfrValue(const MpfrValue&) = delete;
  MpfrValue& operator=(const MpfrValue&) = delete;
};

// Directed evaluation of a + b*sqrt(d0): rnd = RNDD gives a lower bound,
// RNDU an upper bound, for either sign of b.
void eval_directed(const QuadElem& x, mpfr_t out, mpfr_rnd_t rnd) {
  mpfr_prec_t prec = mpfr_get_prec(out);
  MpfrValue s(prec), t(prec);
  mpfr_rnd_t sqrt_rnd = rnd;
  if (sgn(x.b()) < 0) sqrt_rnd = (rnd == MPFR_RNDD) ? MPFR_RNDU : MPFR_RNDD;
  mpfr_set_z(s.v, x.d0().get_mpz_t(), sqrt_rnd);
  mpfr_sqrt(s.v, s.v, sqrt_rnd);
  mpfr_mul_q(t.v, s.v, x.b().get_mpq_t(), rnd);
  mpfr_add_q(out, t.v, x.a().get_mpq_t(), rnd);
}

struct Digits {
  int sign = 0;            // -1, 0, +1
  std::string mantissa;    // `digits` decimal digits, value = 0.mantissa * 10^exp
  long exp = 0;
};

bool get_digits(mpfr_t v, int digits, Digits* out) {
  if (mpfr_zero_p(v)) {
    *out = Digits{0, std::string(static_cast<size_t>(digits), '0'), 0};
    return true;
  }
  mpfr_exp_t e = 0;
  char* str = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), v, MPFR_RNDN);
  if (!str) return false;
  std::string m(str);
  mpfr_free_str(str);
  out->sign = 1;
  if (!m.empty() && m[0] == '-') {
    out->sign = -1;
    m.erase(0, 1);
  }
  out->mantissa = m;
  out->exp = static_cast<long>(e);
  return true;
}

// Correct rounding of an exact rational to `digits` significant digits,
// ties to even. Only reachable for rational inputs.
Digits round_rational(const Rat& q, int digits) {
  if (q == 0) return Digits{0, std::string(static_cast<size_t>(digits), '0'), 0};
  Rat aq = abs(q);
  // Find exp with 10^(exp-1) <= aq < 10^exp.
  long e = 0;
  Rat ten(10);
  Rat lo = 1;
  if (aq >= 1) {
    while (aq >= lo * ten) { lo *= ten; ++e; }
    ++e;
  } else {
    while (aq < lo) { lo /= ten; --e; }
    ++e;
  }
  // scaled = aq * 10^(digits - e) in [10^(digits-1), 10^digits)
  Rat scale = 1;
  long sh = digits - e;
  for (long i = 0; i < std::labs(sh); ++i) scale *= ten;
  Rat scaled = sh >= 0 ? Rat(aq * scale) : Rat(aq / scale);
  Int n = scaled.get_num() / scaled.get_den();
  Rat frac = scaled - Rat(n);
  int c = cmp(frac, Rat(1, 2));
  if (c > 0 || (c == 0 && mpz_odd_p(n.get_mpz_t()))) n += 1;
  std::string digs = n.get_str();
  if (static_cast<int>(digs.size()) > digits) {  // carry 999... -> 1000...
    digs.pop_back();
    ++e;
  }
  return Digits{sgn(q), digs, e};
}

std::string render(const Digits& d, int digits) {
  if (d.sign == 0) return "0.0";
  std::string body;
  long e = d.exp;
  const std::string& m = d.mantissa;
  if (e >= -3 && e <= digits + 3) {
    if (e <= 0) {
      body = "0." + std::string(static_cast<size_t>(-e), '0') + m;
    } else if (e >= static_cast<long>(m.size())) {
      body = m + std::string(static_cast<size_t>(e) - m.size(), '0') + ".0";
    } else {
      body = m.substr(0, static_cast<size_t>(e)) + "." + m.substr(static_cast<size_t>(e));
    }
  } else if (m.size() == 1) {
    body = m + "e" + std::to_string(e - 1);
  } else {
    body = m.substr(0, 1) + "." + m.substr(1) + "e" + std::to_string(e - 1);
  }
  // Trim trailing zeros in the fractional part, keeping one digit.
  auto dot = body.find('.');
  if (dot != std::string::npos && body.find('e') == std::string::npos) {
    size_t last = body.size();
    while (last > dot + 2 && body[last - 1] == '0') --last;
    body.erase(last);
  }
  return (d.sign < 0 ? "-" : "") + body;
}

}  // namespace

double QuadElem::to_double() const {
  MpfrValue t(128);
  eval_directed(*this, t.v, MPFR_RNDN);
  return mpfr_get_d(t.v, MPFR_RNDN);
}

std::string QuadElem::to_decimal(int digits) const {
  if (digits < 1) fail("BadInput", "digits must be >= 1");
  if (is_zero()) return "0.0";
  if (is_rational()) return render(round_rational(a_, digits), digits);
  mpfr_prec_t prec = 64 + 4 * static_cast<mpfr_prec_t>(digits);
  for (int iter = 0; iter < 12; ++iter, prec *= 2) {
    MpfrValue lo(prec), hi(prec);
    eval_directed(*this, lo.v, MPFR_RNDD);
    eval_directed(*this, hi.v, MPFR_RNDU);
    Digits dl, dh;
    if (!get_digits(lo.v, digits, &dl) || !get_digits(hi.v, digits, &dh)) continue;
    if (dl.sign == dh.sign && dl.exp == dh.exp && dl.mantissa == dh.mantissa)
      return render(dl, digits);
  }
  // Irrational values settle the Ziv loop; this is unreachable in practice.
  fail("BadInput", "decimal rounding did not converge");
}

std::string to_real(const QuadElem& x, int digits) { return x.to_decimal(digits); }

Int QuadElem::floor() const {
  if (is_rational()) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a_.get_num().get_mpz_t(), a_.get_den().get_mpz_t());
    return q;
  }
  MpfrValue t(256);
  eval_directed(*this, t.v, MPFR_RNDN);
  Int n;
  mpfr_get_z(n.get_mpz_t(), t.v, MPFR_RNDD);
  // Exact fixup of the float estimate.
  while ((*this - Rat(n)).sign() < 0) n -= 1;
  while ((*this - Rat(n + 1)).sign() >= 0) n += 1;
  return n;
}

Int QuadElem::ceil() const {
  Int f = floor();
  if (is_rational() && a_ == Rat(f)) return f;
  return f + 1;
}

std::string QuadElem::to_string() const {
  auto rat = [](const Rat& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
  };
  return rat(a_) + " + " + rat(b_) + "*sqrt(" + d0_.get_str() + ")";
}

QuadElem QuadElem::parse(const std::string& text) {
  auto bad = [&]() -> void { fail("BadInput", "cannot parse quadratic element: " + text); };
  auto strip = [](std::string s) {
    size_t b = s.find_first_not_of(" \t");
    size_t e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  auto parse_rat = [&](const std::string& s) {
    std::string t = strip(s);
    if (t.empty()) bad();
    try {
      Rat q(t);
      if (q.get_den() == 0) bad();
      q.canonicalize();
      return q;
    } catch (const std::exception&) {
      bad();
    }
    return Rat(0);
  };
  size_t star = text.find("*sqrt(");
  size_t close = text.rfind(')');
  if (star == std::string::npos || close == std::string::npos || close < star) bad();
  std::string d_str = strip(text.substr(star + 6, close - (star + 6)));
  size_t plus = text.find(" + ");
  if (plus == std::string::npos || plus > star) bad();
  Rat a = parse_rat(text.substr(0, plus));
  Rat b = parse_rat(text.substr(plus + 3, star - (plus + 3)));
  Int d;
  try {
    d = Int(d_str);
  } catch (const std::exception&) {
    bad();
  }
  auto [d0, f] = reduce_radicand(d);
  return QuadElem(d0, a, b * Rat(f));
}

}  // namespace cusplink
