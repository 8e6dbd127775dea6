#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hypcert/expr.hpp"
#include "hypcert/prover.hpp"

namespace hypcert {

/// A box of the branch-and-bound partition with its certified lower bound.
struct BoundedBox {
  Interval box;
  Scalar lower;
  Precision precision = 0;
};

struct MinimizationResult {
  std::string expression_text;
  std::string expression_hash;
  std::string variable;
  Interval domain = Interval::from_int(0);
  Scalar target_width;
  ProverConfig config;

  /// lb <= inf e <= ub.
  Interval inf_enclosure = Interval::from_int(0);
  /// Coalesced union of the unpruned boxes; contains every global minimizer.
  std::vector<Interval> argmin_boxes;
  /// Point whose certified value is at most ub.
  Scalar witness;
  Precision witness_precision = 0;

  std::vector<BoundedBox> live;    // unpruned at termination, sorted
  std::vector<BoundedBox> pruned;  // lower bound exceeds ub, sorted
  std::size_t leaves_processed = 0;
  bool budget_exhausted = false;

  const Scalar& lower_bound() const { return inf_enclosure.lo(); }
  const Scalar& upper_bound() const { return inf_enclosure.hi(); }
};

/// Best-first interval branch and bound for the infimum of a univariate
/// expression over a compact interval. Every box is split until it is pruned
/// or its enclosure is at most target_width wide, which gives
/// ub - lb <= target_width. Running out of cfg.leaf_budget splits, or boxes
/// stuck at cfg.max_depth, sets budget_exhausted.
MinimizationResult certified_infimum(const Expr& e, std::string_view variable,
                                     const Interval& domain, const Scalar& target_width,
                                     const ProverConfig& cfg);

/// Re-checks a minimization record: witness value, every pruned and live
/// lower bound, and that live and pruned boxes tile the domain.
bool minimization_validate(const MinimizationResult& r, const Expr& e);

std::string serialize(const MinimizationResult& r);
MinimizationResult parse_minimization(std::string_view text);

struct ScanRow {
  std::string u;                 // shortest decimal of the grid point
  std::optional<Interval> value; // empty when evaluation failed
  std::string error;
};

struct ScanTable {
  std::vector<ScanRow> rows;
};

/// n equally spaced points from domain.lo() to domain.hi() inclusive, each
/// enclosed exactly and evaluated. Failing rows are kept and marked.
ScanTable scan(const Expr& e, std::string_view variable, const Interval& domain, std::size_t n,
               Precision prec);

/// CSV with header "u,lo,hi"; invalid rows carry "invalid" in lo and hi.
std::string to_csv(const ScanTable& table, int digits = 20);

}  // namespace hypcert
