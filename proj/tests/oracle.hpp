#pragma once

#include <boost/math/special_functions/acosh.hpp>
#include <boost/math/special_functions/atanh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstring>

#include <gmp.h>
#include <mpfr.h>

#include "hypcert/interval.hpp"

namespace oracle {

using Real = boost::multiprecision::cpp_bin_float_50;

/// Exact conversion; 64-bit significands fit in the 50-digit type.
inline Real to_real(const hypcert::Scalar& s) {
  mpz_t m;
  mpz_init(m);
  const mpfr_exp_t e = mpfr_get_z_2exp(m, s.get());
  char* digits = mpz_get_str(nullptr, 10, m);
  const boost::multiprecision::cpp_int mi(digits);
  void (*freefunc)(void*, size_t);
  mp_get_memory_functions(nullptr, nullptr, &freefunc);
  freefunc(digits, std::strlen(digits) + 1);
  mpz_clear(m);
  return ldexp(Real(mi), static_cast<int>(e));
}

inline bool encloses(const hypcert::Interval& x, const Real& v) {
  return to_real(x.lo()) <= v && v <= to_real(x.hi());
}

inline Real eval(hypcert::Fn f, const Real& x) {
  using hypcert::Fn;
  switch (f) {
    case Fn::Exp: return exp(x);
    case Fn::Ln: return log(x);
    case Fn::Sqrt: return sqrt(x);
    case Fn::Cosh: return cosh(x);
    case Fn::Sinh: return sinh(x);
    case Fn::Tanh: return tanh(x);
    case Fn::Arcosh: return boost::math::acosh(x);
    case Fn::Artanh: return boost::math::atanh(x);
  }
  return Real(0);
}

/// Sampling range inside the function's domain, kept clear of overflow.
inline std::pair<double, double> range_of(hypcert::Fn f) {
  using hypcert::Fn;
  switch (f) {
    case Fn::Exp: return {-40, 40};
    case Fn::Ln: return {1e-6, 1e6};
    case Fn::Sqrt: return {0, 1e4};
    case Fn::Cosh:
    case Fn::Sinh: return {-40, 40};
    case Fn::Tanh: return {-25, 25};
    case Fn::Arcosh: return {1, 1e6};
    case Fn::Artanh: return {-0.999999, 0.999999};
  }
  return {0, 1};
}

inline constexpr hypcert::Fn kAllFns[] = {hypcert::Fn::Exp,    hypcert::Fn::Ln,
                                          hypcert::Fn::Sqrt,   hypcert::Fn::Cosh,
                                          hypcert::Fn::Sinh,   hypcert::Fn::Tanh,
                                          hypcert::Fn::Arcosh, hypcert::Fn::Artanh};

}  // namespace oracle
