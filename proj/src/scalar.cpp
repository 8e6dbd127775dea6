#include "hypcert/scalar.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <string>

#include "hypcert/error.hpp"

namespace hypcert {

Scalar::Scalar(Precision prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

Scalar::Scalar(const Scalar& other) {
  mpfr_init2(v_, other.precision());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Scalar::Scalar(Scalar&& other) noexcept {
  // Steal the limbs; leave `other` as a valid minimal-precision zero.
  *v_ = *other.v_;
  mpfr_init2(other.v_, MPFR_PREC_MIN);
  mpfr_set_zero(other.v_, 1);
}

Scalar& Scalar::operator=(const Scalar& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

Scalar& Scalar::operator=(Scalar&& other) noexcept {
  if (this != &other) mpfr_swap(v_, other.v_);
  return *this;
}

Scalar::~Scalar() { mpfr_clear(v_); }

Scalar Scalar::from_double(double v, Precision prec) {
  Scalar s(prec);
  mpfr_set_d(s.v_, v, MPFR_RNDN);
  return s;
}

Scalar Scalar::from_int(long v, Precision prec, Round r) {
  Scalar s(prec);
  mpfr_set_si(s.v_, v, to_mpfr(r));
  return s;
}

Scalar Scalar::from_decimal(std::string_view text, Precision prec, Round r) {
  Scalar s(prec);
  std::string buf(text);
  char* end = nullptr;
  mpfr_strtofr(s.v_, buf.c_str(), &end, 10, to_mpfr(r));
  if (buf.empty() || end != buf.c_str() + buf.size() || !s.is_finite()) {
    throw Error("invalid decimal literal '" + buf + "'");
  }
  return s;
}

Scalar Scalar::from_hex(std::string_view text) {
  std::string buf(text);
  if (buf == "inf" || buf == "+inf") return infinity(1);
  if (buf == "-inf") return infinity(-1);
  // Each hex digit carries 4 bits; this precision makes the parse exact.
  const auto prec = static_cast<Precision>(std::max<std::size_t>(64, 4 * buf.size() + 8));
  Scalar s(prec);
  char* end = nullptr;
  const int inexact = mpfr_strtofr(s.v_, buf.c_str(), &end, 0, MPFR_RNDN);
  if (buf.empty() || end != buf.c_str() + buf.size() || inexact != 0 || s.is_nan()) {
    throw MalformedCertificate("invalid hexadecimal scalar '" + buf + "'");
  }
  return s;
}

Scalar Scalar::infinity(int sign) {
  Scalar s(MPFR_PREC_MIN);
  mpfr_set_inf(s.v_, sign);
  return s;
}

std::string Scalar::to_hex() const {
  if (mpfr_inf_p(v_)) return sign() > 0 ? "inf" : "-inf";
  char* raw = nullptr;
  mpfr_asprintf(&raw, "%Ra", v_);
  std::unique_ptr<char, decltype(&mpfr_free_str)> owned(raw, &mpfr_free_str);
  return std::string(raw);
}

std::string Scalar::to_decimal(int digits, Round r) const {
  if (mpfr_inf_p(v_)) return sign() > 0 ? "inf" : "-inf";
  if (is_nan()) return "nan";
  char* raw = nullptr;
  const std::string fmt = "%." + std::to_string(digits - 1) + "R" +
                          (r == Round::Down ? "D" : r == Round::Up ? "U" : "N") + "e";
  mpfr_asprintf(&raw, fmt.c_str(), v_);
  std::unique_ptr<char, decltype(&mpfr_free_str)> owned(raw, &mpfr_free_str);
  return std::string(raw);
}

double Scalar::to_double(Round r) const { return mpfr_get_d(v_, to_mpfr(r)); }

Scalar Scalar::rounded(Precision prec, Round r) const {
  Scalar s(prec);
  mpfr_set(s.v_, v_, to_mpfr(r));
  return s;
}

std::partial_ordering operator<=>(const Scalar& a, const Scalar& b) {
  if (a.is_nan() || b.is_nan()) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.v_, b.v_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

Scalar min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }
Scalar max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

Scalar abs(const Scalar& a) {
  Scalar s(a.precision());
  mpfr_abs(s.get(), a.get(), MPFR_RNDN);
  return s;
}

}  // namespace hypcert
