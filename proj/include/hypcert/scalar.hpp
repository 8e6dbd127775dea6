#pragma once

#include <mpfr.h>

#include <compare>
#include <string>
#include <string_view>

namespace hypcert {

/// Working precision in bits.
using Precision = mpfr_prec_t;

inline constexpr Precision kDefaultPrecision = 64;

enum class Round { Down, Up, Nearest };

constexpr mpfr_rnd_t to_mpfr(Round r) {
  switch (r) {
    case Round::Down:
      return MPFR_RNDD;
    case Round::Up:
      return MPFR_RNDU;
    case Round::Nearest:
      break;
  }
  return MPFR_RNDN;
}

/// Binary floating-point value with an explicit precision, backed by MPFR.
///
/// Rounding direction is always an argument of the producing operation; no
/// process-wide rounding state is read or written.
class Scalar {
 public:
  explicit Scalar(Precision prec = kDefaultPrecision);
  Scalar(const Scalar& other);
  Scalar(Scalar&& other) noexcept;
  Scalar& operator=(const Scalar& other);
  Scalar& operator=(Scalar&& other) noexcept;
  ~Scalar();

  /// Exact when prec >= 53.
  static Scalar from_double(double v, Precision prec = kDefaultPrecision);
  static Scalar from_int(long v, Precision prec, Round r);
  /// Decimal literal such as "0.3" or "1e-6", rounded in direction r.
  static Scalar from_decimal(std::string_view text, Precision prec, Round r);
  /// Parses the exact hexadecimal rendering produced by to_hex().
  static Scalar from_hex(std::string_view text);
  static Scalar infinity(int sign = 1);

  /// Exact rendering, e.g. "0x1.8p+1".
  std::string to_hex() const;
  /// Decimal rendering with `digits` significant digits, rounded in direction r.
  std::string to_decimal(int digits, Round r) const;
  double to_double(Round r = Round::Nearest) const;

  Precision precision() const { return mpfr_get_prec(v_); }
  Scalar rounded(Precision prec, Round r) const;

  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  friend bool operator==(const Scalar& a, const Scalar& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Scalar& a, const Scalar& b);

 private:
  mpfr_t v_;
};

Scalar min(const Scalar& a, const Scalar& b);
Scalar max(const Scalar& a, const Scalar& b);
Scalar abs(const Scalar& a);

}  // namespace hypcert
