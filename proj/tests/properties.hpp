#pragma once

#include <random>
#include <string>

#include "hypcert/interval.hpp"
#include "oracle.hpp"

namespace properties {

struct Outcome {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool ok() const { return cases > 0 && failures == 0; }
  void fail(std::string what) {
    if (failures++ == 0) first_failure = std::move(what);
  }
};

inline hypcert::Interval exact(double a, double b) {
  return {hypcert::Scalar::from_double(a), hypcert::Scalar::from_double(b)};
}

/// Sorted pair drawn from [lo, hi]; occasionally degenerate.
inline std::pair<double, double> draw(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  double a = d(rng);
  double b = (rng() % 8 == 0) ? a : d(rng);
  if (b < a) std::swap(a, b);
  return {a, b};
}

/// f(p) from the 50-digit oracle lies in fn_eval(f, x, 64) for p in x.
inline Outcome containment(std::size_t n, std::uint64_t seed) {
  using namespace hypcert;
  Outcome out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0, 1);
  for (std::size_t i = 0; i < n; ++i) {
    const Fn f = oracle::kAllFns[i % std::size(oracle::kAllFns)];
    auto [lo, hi] = oracle::range_of(f);
    // Narrow boxes as often as wide ones.
    if (i % 2 == 1) {
      const double c = std::uniform_real_distribution<double>(lo, hi)(rng);
      const double w = (hi - lo) * 1e-9;
      lo = std::max(lo, c - w);
      hi = std::min(hi, c + w);
    }
    const auto [a, b] = draw(rng, lo, hi);
    const double p = std::clamp(a + (b - a) * unit(rng), a, b);
    ++out.cases;
    const Interval y = fn_eval(f, exact(a, b), 64);
    if (!oracle::encloses(y, oracle::eval(f, oracle::Real(p)))) {
      out.fail(std::string(fn_name(f)) + " at " + std::to_string(p));
    }
  }
  return out;
}

/// x inside y implies fn_eval(f, x) inside fn_eval(f, y), for the function
/// vocabulary and the four arithmetic operations.
inline Outcome inclusion_monotonicity(std::size_t n, std::uint64_t seed) {
  using namespace hypcert;
  Outcome out;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t kind = i % (std::size(oracle::kAllFns) + 4);
    if (kind < std::size(oracle::kAllFns)) {
      const Fn f = oracle::kAllFns[kind];
      const auto [lo, hi] = oracle::range_of(f);
      const auto [a, b] = draw(rng, lo, hi);
      const auto [c, d] = draw(rng, a, b);
      const Interval outer = fn_eval(f, exact(a, b), 64);
      const Interval inner = fn_eval(f, exact(c, d), 64);
      ++out.cases;
      if (!outer.contains(inner) || !oracle::encloses(inner, oracle::eval(f, oracle::Real(c)))) {
        out.fail(std::string(fn_name(f)) + " on nested pair at " + std::to_string(c));
      }
    } else {
      const auto op = static_cast<ArithOp>(kind - std::size(oracle::kAllFns));
      const auto [a, b] = draw(rng, -100, 100);
      const auto [c, d] = draw(rng, a, b);
      auto [e, g] = draw(rng, -100, 100);
      if (op == ArithOp::Div && e <= 0 && g >= 0) {
        e = 0.5 + std::abs(e);
        g = e + std::abs(g);
      }
      const auto [h, k] = draw(rng, e, g);
      const Interval outer = arith(op, exact(a, b), exact(e, g), 64);
      const Interval inner = arith(op, exact(c, d), exact(h, k), 64);
      oracle::Real exact_value;
      const oracle::Real x(c), z(h);
      switch (op) {
        case ArithOp::Add: exact_value = x + z; break;
        case ArithOp::Sub: exact_value = x - z; break;
        case ArithOp::Mul: exact_value = x * z; break;
        case ArithOp::Div: exact_value = x / z; break;
      }
      ++out.cases;
      if (!outer.contains(inner) || !oracle::encloses(inner, exact_value)) {
        out.fail("arithmetic op " + std::to_string(static_cast<int>(op)) + " on nested pair");
      }
    }
  }
  return out;
}

}  // namespace properties
