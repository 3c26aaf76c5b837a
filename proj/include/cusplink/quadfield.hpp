#pragma once

// Exact arithmetic in real quadratic fields Q(sqrt(D0)): elements a + b*sqrt(D0)
// with arbitrary-precision rational a, b, exact sign determination, conjugation,
// norms, and correctly rounded decimal output.

#include <gmpxx.h>

#include <string>
#include <utility>

#include "cusplink/error.hpp"

namespace cusplink {

using Int = mpz_class;
using Rat = mpq_class;

// Canonicalizes sqrt(D) = f*sqrt(D0) with D0 squarefree.
// Errors: D < 2 -> BadInput; D a perfect square -> RationalRadicand.
std::pair<Int, Int> reduce_radicand(const Int& d);

enum class ArithOp { add, sub, mul, div };

class QuadElem {
 public:
  // d0 must be a reduced radicand (squarefree, >= 2); all library construction
  // paths go through reduce_radicand.
  QuadElem(Int d0, Rat a, Rat b);

  static QuadElem rational(const Int& d0, const Rat& a);
  // f*sqrt(d0) for arbitrary d >= 2; reduces the radicand.
  static QuadElem sqrt_of(const Int& d);

  const Int& d0() const { return d0_; }
  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }

  bool is_rational() const { return b_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool same_field(const QuadElem& o) const { return d0_ == o.d0_; }

  QuadElem conjugate() const { return QuadElem(d0_, a_, -b_); }
  Rat norm() const;
  int sign() const;  // exact sign of the real embedding
  QuadElem inverse() const;
  QuadElem pow(long n) const;

  Int floor() const;
  Int ceil() const;

  double to_double() const;
  // Correctly rounded to `digits` significant decimal digits.
  std::string to_decimal(int digits) const;

  std::string to_string() const;  // "a/b + c/d*sqrt(D)"
  static QuadElem parse(const std::string& text);

  friend QuadElem operator+(const QuadElem& x, const QuadElem& y);
  friend QuadElem operator-(const QuadElem& x, const QuadElem& y);
  friend QuadElem operator*(const QuadElem& x, const QuadElem& y);
  friend QuadElem operator/(const QuadElem& x, const QuadElem& y);
  QuadElem operator-() const { return QuadElem(d0_, -a_, -b_); }

  friend QuadElem operator+(const QuadElem& x, const Rat& q);
  friend QuadElem operator-(const QuadElem& x, const Rat& q);
  friend QuadElem operator*(const QuadElem& x, const Rat& q);
  friend QuadElem operator/(const QuadElem& x, const Rat& q);

  friend bool operator==(const QuadElem& x, const QuadElem& y) {
    return x.d0_ == y.d0_ && x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const QuadElem& x, const QuadElem& y) { return !(x == y); }
  // Exact numeric order; requires the same field.
  friend bool operator<(const QuadElem& x, const QuadElem& y);

 private:
  Int d0_;
  Rat a_, b_;

  static void check_same_field(const QuadElem& x, const QuadElem& y);
};

// Free-function operation surface.
QuadElem arith(const QuadElem& x, const QuadElem& y, ArithOp op);
inline QuadElem conjugate(const QuadElem& x) { return x.conjugate(); }
inline Rat norm(const QuadElem& x) { return x.norm(); }
inline int sign_of(const QuadElem& x) { return x.sign(); }
std::string to_real(const QuadElem& x, int digits);

}  // namespace cusplink
