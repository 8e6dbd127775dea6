#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hypcert/expr.hpp"
#include "hypcert/interval.hpp"

namespace hypcert {

/// Ordered list of (variable, range) pairs; 1 or 2 dimensions.
class Box {
 public:
  using Dim = std::pair<std::string, Interval>;

  Box() = default;
  explicit Box(std::vector<Dim> dims);

  const std::vector<Dim>& dims() const { return dims_; }
  std::size_t size() const { return dims_.size(); }
  const Interval& operator[](std::size_t i) const { return dims_[i].second; }
  const std::string& name(std::size_t i) const { return dims_[i].first; }

  Binding binding() const;
  /// Index of the widest dimension; ties go to the earliest.
  std::size_t widest() const;
  /// Upper bound on the largest side length.
  Scalar max_width() const;
  std::pair<Box, Box> split(std::size_t dim) const;
  bool contains(const Box& other) const;

  /// Lexicographic order on the lower endpoints.
  friend bool lex_less(const Box& a, const Box& b);

 private:
  std::vector<Dim> dims_;
};

/// Strict inequality lhs < rhs over a compact box.
struct InequalityStatement {
  Expr lhs;
  Expr rhs;
  Box domain;

  /// "lhs < rhs" in canonical rendering.
  std::string text() const;
};

/// Parses "lhs < rhs"; the domain is supplied separately.
InequalityStatement parse_statement(std::string_view text, Box domain);

/// "u=0.3:3" style range; decimal endpoints are converted outward.
Box::Dim parse_range(std::string_view spec, Precision prec = kDefaultPrecision);

struct ProverConfig {
  Precision start_precision = 64;
  long escalation_factor = 2;
  Precision max_precision = 512;
  int max_depth = 60;
  std::size_t leaf_budget = 1'000'000;
  /// Worker threads for box evaluation; results do not depend on it.
  unsigned threads = 1;

  void validate() const;
};

enum class BoxVerdict { Proved, Unknown };

struct BoxCheck {
  BoxVerdict verdict;
  Interval lhs;
  Interval rhs;
};

/// One node of the bisection tree: Proved iff upper(lhs) < lower(rhs).
BoxCheck check_box(const InequalityStatement& stmt, const Box& box, Precision prec);

enum class Status { Proved, Undetermined };

std::string_view status_name(Status s);

struct Leaf {
  Box box;
  Scalar lhs_upper;
  Scalar rhs_lower;
  int depth = 0;
  Precision precision = 0;
};

/// Bisection proof record for one strict inequality.
struct Certificate {
  std::string statement_text;
  std::string statement_hash;
  Box domain;
  ProverConfig config;
  Status status = Status::Undetermined;
  std::vector<Leaf> leaves;     // ascending lexicographic order
  std::vector<Box> frontier;    // unresolved boxes when Undetermined
  std::size_t boxes_examined = 0;
};

/// Adaptive bisection. Budget exhaustion yields status Undetermined; domain
/// errors propagate.
Certificate verify_strict(const InequalityStatement& stmt, const ProverConfig& cfg);

/// Independent re-check of a certificate against a statement: statement
/// identity, leaf bounds re-evaluated at their recorded precisions, and the
/// partition property. Returns false on any failed check.
bool certificate_validate(const Certificate& cert, const InequalityStatement& stmt);

/// True iff `pieces` cover `domain` exactly with pairwise disjoint interiors
/// (1 or 2 dimensions). Uses only exact endpoint comparisons.
bool boxes_tile(const Box& domain, const std::vector<Box>& pieces);

/// Hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

/// Serialization in the versioned text format (schema v1).
std::string serialize(const Certificate& cert);
/// Throws MalformedCertificate.
Certificate parse_certificate(std::string_view text);

/// Rebuilds the statement recorded inside a certificate.
InequalityStatement statement_of(const Certificate& cert);

}  // namespace hypcert
