#include "hypcert/interval.hpp"

#include <algorithm>
#include <array>

#include "hypcert/error.hpp"

namespace hypcert {

namespace {

using UnaryMpfr = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);
using BinaryMpfr = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

Scalar apply(UnaryMpfr fn, const Scalar& x, Precision prec, Round r) {
  Scalar out(prec);
  fn(out.get(), x.get(), to_mpfr(r));
  return out;
}

Scalar apply(BinaryMpfr fn, const Scalar& x, const Scalar& y, Precision prec, Round r) {
  Scalar out(prec);
  fn(out.get(), x.get(), y.get(), to_mpfr(r));
  return out;
}

Interval checked(Scalar lo, Scalar hi, std::string_view what) {
  if (!lo.is_finite() || !hi.is_finite()) {
    throw OverflowRange(std::string(what) + ": result endpoint outside the representable range");
  }
  return Interval(std::move(lo), std::move(hi));
}

Interval monotone(UnaryMpfr fn, const Interval& x, Precision prec, std::string_view what) {
  return checked(apply(fn, x.lo(), prec, Round::Down), apply(fn, x.hi(), prec, Round::Up), what);
}

std::string show(const Interval& x) { return x.to_decimal(17); }

// Four-corner rule shared by mul and div.
Interval corners(BinaryMpfr fn, const Interval& a, const Interval& b, Precision prec,
                 std::string_view what) {
  const std::array<std::pair<const Scalar*, const Scalar*>, 4> pairs{{
      {&a.lo(), &b.lo()}, {&a.lo(), &b.hi()}, {&a.hi(), &b.lo()}, {&a.hi(), &b.hi()}}};
  Scalar lo = apply(fn, *pairs[0].first, *pairs[0].second, prec, Round::Down);
  Scalar hi = apply(fn, *pairs[0].first, *pairs[0].second, prec, Round::Up);
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    lo = min(lo, apply(fn, *pairs[i].first, *pairs[i].second, prec, Round::Down));
    hi = max(hi, apply(fn, *pairs[i].first, *pairs[i].second, prec, Round::Up));
  }
  return checked(std::move(lo), std::move(hi), what);
}

}  // namespace

Interval::Interval(Scalar lo, Scalar hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.is_nan() || hi_.is_nan()) throw Error("interval endpoint is NaN");
  if (hi_ < lo_) {
    throw Error("interval with lo > hi: [" + lo_.to_hex() + ", " + hi_.to_hex() + "]");
  }
}

Interval Interval::from_int(long v, Precision prec) {
  return Interval(Scalar::from_int(v, prec, Round::Down), Scalar::from_int(v, prec, Round::Up));
}

Interval Interval::from_decimal(std::string_view text, Precision prec) {
  return Interval(Scalar::from_decimal(text, prec, Round::Down),
                  Scalar::from_decimal(text, prec, Round::Up));
}

Scalar Interval::width() const {
  const Precision p = std::max({lo_.precision(), hi_.precision(), kDefaultPrecision});
  return apply(&mpfr_sub, hi_, lo_, p, Round::Up);
}

std::string Interval::to_hex() const { return "[" + lo_.to_hex() + ", " + hi_.to_hex() + "]"; }

std::string Interval::to_decimal(int digits) const {
  return "[" + lo_.to_decimal(digits, Round::Down) + ", " + hi_.to_decimal(digits, Round::Up) +
         "]";
}

Interval add(const Interval& a, const Interval& b, Precision prec) {
  return checked(apply(&mpfr_add, a.lo(), b.lo(), prec, Round::Down),
                 apply(&mpfr_add, a.hi(), b.hi(), prec, Round::Up), "add");
}

Interval sub(const Interval& a, const Interval& b, Precision prec) {
  return checked(apply(&mpfr_sub, a.lo(), b.hi(), prec, Round::Down),
                 apply(&mpfr_sub, a.hi(), b.lo(), prec, Round::Up), "sub");
}

Interval mul(const Interval& a, const Interval& b, Precision prec) {
  return corners(&mpfr_mul, a, b, prec, "mul");
}

Interval div(const Interval& a, const Interval& b, Precision prec) {
  if (b.contains_zero()) {
    throw DivisionByIntervalContainingZero("division by interval " + show(b) +
                                           " which contains zero");
  }
  return corners(&mpfr_div, a, b, prec, "div");
}

Interval arith(ArithOp op, const Interval& a, const Interval& b, Precision prec) {
  switch (op) {
    case ArithOp::Add:
      return add(a, b, prec);
    case ArithOp::Sub:
      return sub(a, b, prec);
    case ArithOp::Mul:
      return mul(a, b, prec);
    case ArithOp::Div:
      return div(a, b, prec);
  }
  throw Error("unknown arithmetic operation");
}

Interval neg(const Interval& a) {
  Scalar lo(a.hi().precision());
  Scalar hi(a.lo().precision());
  mpfr_neg(lo.get(), a.hi().get(), MPFR_RNDN);  // exact
  mpfr_neg(hi.get(), a.lo().get(), MPFR_RNDN);
  return Interval(std::move(lo), std::move(hi));
}

Interval pow_int(const Interval& a, long n, Precision prec) {
  if (n == 0) return Interval::from_int(1, prec);
  if (n < 0) {
    if (a.contains_zero()) {
      throw DivisionByIntervalContainingZero("negative power of interval " + show(a) +
                                             " which contains zero");
    }
    return div(Interval::from_int(1, prec), pow_int(a, -n, prec), prec);
  }
  auto pw = [&](const Scalar& x, Round r) {
    Scalar out(prec);
    mpfr_pow_si(out.get(), x.get(), n, to_mpfr(r));
    return out;
  };
  if (n % 2 == 1 || a.lo().sign() >= 0) {
    return checked(pw(a.lo(), Round::Down), pw(a.hi(), Round::Up), "pow");
  }
  if (a.hi().sign() <= 0) {
    return checked(pw(a.hi(), Round::Down), pw(a.lo(), Round::Up), "pow");
  }
  return checked(Scalar(prec), pw(max(abs(a.lo()), abs(a.hi())), Round::Up), "pow");
}

std::string_view fn_name(Fn f) {
  switch (f) {
    case Fn::Exp:
      return "exp";
    case Fn::Ln:
      return "ln";
    case Fn::Sqrt:
      return "sqrt";
    case Fn::Cosh:
      return "cosh";
    case Fn::Sinh:
      return "sinh";
    case Fn::Tanh:
      return "tanh";
    case Fn::Arcosh:
      return "arcosh";
    case Fn::Artanh:
      return "artanh";
  }
  return "?";
}

bool fn_from_name(std::string_view name, Fn& out) {
  static constexpr std::array kAll{Fn::Exp,  Fn::Ln,   Fn::Sqrt,   Fn::Cosh,
                                   Fn::Sinh, Fn::Tanh, Fn::Arcosh, Fn::Artanh};
  for (Fn f : kAll) {
    if (fn_name(f) == name) {
      out = f;
      return true;
    }
  }
  return false;
}

Interval fn_eval(Fn f, const Interval& x, Precision prec) {
  const std::string name(fn_name(f));
  auto violation = [&](bool lower, const std::string& need) {
    const Scalar& end = lower ? x.lo() : x.hi();
    return DomainViolation(name, "argument " + show(x) + " has " + (lower ? "lower" : "upper") +
                                     " endpoint " + end.to_decimal(17, Round::Nearest) +
                                     ", requires " + need);
  };
  switch (f) {
    case Fn::Exp:
      return monotone(&mpfr_exp, x, prec, name);
    case Fn::Ln:
      if (x.lo().sign() <= 0) throw violation(true, "> 0");
      return monotone(&mpfr_log, x, prec, name);
    case Fn::Sqrt:
      if (x.lo().sign() < 0) throw violation(true, ">= 0");
      return monotone(&mpfr_sqrt, x, prec, name);
    case Fn::Sinh:
      return monotone(&mpfr_sinh, x, prec, name);
    case Fn::Tanh:
      return monotone(&mpfr_tanh, x, prec, name);
    case Fn::Arcosh:
      if (mpfr_cmp_ui(x.lo().get(), 1) < 0) throw violation(true, ">= 1");
      return monotone(&mpfr_acosh, x, prec, name);
    case Fn::Artanh:
      if (mpfr_cmp_si(x.lo().get(), -1) <= 0) throw violation(true, "> -1");
      if (mpfr_cmp_ui(x.hi().get(), 1) >= 0) throw violation(false, "< 1");
      return monotone(&mpfr_atanh, x, prec, name);
    case Fn::Cosh:
      if (x.lo().sign() >= 0) return monotone(&mpfr_cosh, x, prec, name);
      if (x.hi().sign() <= 0) {
        return checked(apply(&mpfr_cosh, x.hi(), prec, Round::Down),
                       apply(&mpfr_cosh, x.lo(), prec, Round::Up), name);
      }
      return checked(Scalar::from_int(1, prec, Round::Down),
                     apply(&mpfr_cosh, max(abs(x.lo()), abs(x.hi())), prec, Round::Up), name);
  }
  throw Error("unknown function");
}

Scalar midpoint(const Interval& x) {
  if (x.is_point()) return x.lo();
  if (!x.lo().is_finite() || !x.hi().is_finite()) throw OverflowRange("midpoint of unbounded interval");
  Precision p = std::max({x.lo().precision(), x.hi().precision(), kDefaultPrecision});
  for (;;) {
    Scalar m(p + 1);
    mpfr_add(m.get(), x.lo().get(), x.hi().get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    if (x.lo() < m && m < x.hi()) return m;
    p *= 2;
  }
}

std::pair<Interval, Interval> bisect(const Interval& x) {
  if (x.is_point()) throw DegenerateInterval("cannot bisect point interval " + x.to_hex());
  Scalar m = midpoint(x);
  return {Interval(x.lo(), m), Interval(m, x.hi())};
}

}  // namespace hypcert
