#pragma once

#include <string>
#include <string_view>
#include <utility>

#include "hypcert/scalar.hpp"

namespace hypcert {

/// Closed interval [lo, hi] of Scalars. Every operation below returns an
/// interval containing the exact real image of its arguments.
class Interval {
 public:
  /// Throws Error when lo > hi or an endpoint is NaN.
  Interval(Scalar lo, Scalar hi);

  static Interval point(const Scalar& v) { return Interval(v, v); }
  static Interval from_int(long v, Precision prec = kDefaultPrecision);
  /// Outward enclosure of a decimal literal (at most one ulp per side).
  static Interval from_decimal(std::string_view text, Precision prec = kDefaultPrecision);

  const Scalar& lo() const { return lo_; }
  const Scalar& hi() const { return hi_; }

  /// Upper bound on hi - lo.
  Scalar width() const;
  bool is_point() const { return lo_ == hi_; }
  bool contains(const Scalar& v) const { return lo_ <= v && v <= hi_; }
  bool contains(const Interval& other) const { return lo_ <= other.lo_ && other.hi_ <= hi_; }
  bool overlaps(const Interval& other) const { return lo_ <= other.hi_ && other.lo_ <= hi_; }
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }

  /// "[lo, hi]" with exact hexadecimal endpoints.
  std::string to_hex() const;
  /// "[lo, hi]" with outward-rounded decimal endpoints.
  std::string to_decimal(int digits = 20) const;

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  Scalar lo_;
  Scalar hi_;
};

enum class ArithOp { Add, Sub, Mul, Div };

Interval arith(ArithOp op, const Interval& a, const Interval& b, Precision prec);
Interval add(const Interval& a, const Interval& b, Precision prec);
Interval sub(const Interval& a, const Interval& b, Precision prec);
Interval mul(const Interval& a, const Interval& b, Precision prec);
/// Throws DivisionByIntervalContainingZero when 0 is in b.
Interval div(const Interval& a, const Interval& b, Precision prec);
Interval neg(const Interval& a);
/// Integer power; negative exponents require 0 outside a.
Interval pow_int(const Interval& a, long n, Precision prec);

enum class Fn { Exp, Ln, Sqrt, Cosh, Sinh, Tanh, Arcosh, Artanh };

std::string_view fn_name(Fn f);
/// Inverse of fn_name; returns false for names outside the vocabulary.
bool fn_from_name(std::string_view name, Fn& out);

/// Enclosure of f over x. Throws DomainViolation naming the offending
/// endpoint, and OverflowRange when an endpoint leaves the exponent range.
Interval fn_eval(Fn f, const Interval& x, Precision prec);

/// Splits x at an interior midpoint shared by both halves.
/// Throws DegenerateInterval when lo == hi.
std::pair<Interval, Interval> bisect(const Interval& x);

/// A point strictly inside x when x has positive width, otherwise x.lo().
Scalar midpoint(const Interval& x);

}  // namespace hypcert
