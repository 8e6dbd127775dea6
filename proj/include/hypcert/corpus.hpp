#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hypcert/minimize.hpp"
#include "hypcert/prover.hpp"

namespace hypcert {

// ---------------------------------------------------------------------------
// Corpus items

enum class Plan { Certify, Property, Series, Composite, Metamorphic, Limit, Axioms };

struct CorpusItem {
  std::string id;
  std::string anchor;
  std::vector<Plan> plans;
  std::string certify;          // "lhs < rhs"
  std::string certify_domain;   // "x=lo:hi y=lo:hi"
  std::string property;
  std::string property_domain;
  std::size_t samples = 0;
  std::string reduce_to;        // "L1 x=arcosh(x) y=artanh(K)"
  std::vector<std::string> parts;
  std::string note;

  bool has(Plan p) const;
};

/// Parses the corpus file format. Throws Error on malformed input.
std::vector<CorpusItem> parse_corpus(std::string_view text);

/// Text of the corpus file shipped with the library.
std::string_view builtin_corpus_text();
std::vector<CorpusItem> builtin_items();
/// Throws Error when no item has this id.
const CorpusItem& find_item(const std::vector<CorpusItem>& items, std::string_view id);

Box parse_domain_spec(std::string_view spec, Precision prec = kDefaultPrecision);

// ---------------------------------------------------------------------------
// Tail reductions

/// A finite hypothesis check that, together with the listed axioms, proves
/// a statement on a subdomain that bisection cannot handle.
struct TailReduction {
  std::string name;        // "near-zero", "infinity", ...
  std::string parameter;   // decimal literal (delta, u0, ...)
  std::string covers;      // human readable subdomain
  std::string hypothesis;  // closed statement "lhs < rhs"
  Precision precision = 0;
  std::optional<Interval> lhs;
  std::optional<Interval> rhs;
  std::vector<std::string> axioms;
  std::string conclusion;
  Status status = Status::Undetermined;
};

/// Builds the tail `name` (see tail_hypothesis) and checks its hypothesis.
TailReduction check_tail(std::string_view name, std::string_view parameter, std::string covers,
                         std::vector<std::string> axioms, std::string conclusion, Precision prec);

/// Interval check of (arcosh(2) + 2(cosh(delta) - 1)/sqrt(3))^2 < 2, which
/// licenses the main inequality on (0, delta]. Requires delta > 0.
TailReduction verify_near_zero_reduction(std::string_view delta, Precision prec);

/// Interval check of
///   1 + 2^(-2 tanh u0) exp(4 u0 exp(-2 u0)) < 2 ln 2 (1 - exp(-2 u0)),
/// which licenses the main inequality on [u0, inf). Requires u0 >= 1.
TailReduction verify_infinity_reduction(std::string_view u0, Precision prec);

/// The hypothesis text the reduction `name` uses for `parameter`.
std::string tail_hypothesis(std::string_view name, std::string_view parameter);

/// Re-evaluates the hypothesis of a recorded tail at its precision.
bool tail_validate(const TailReduction& t);

// ---------------------------------------------------------------------------
// Full-line composites

inline constexpr std::string_view kMainStatement =
    "cosh(tanh(u)*arcosh(2*cosh(u))) < exp(u*tanh(u))";
inline constexpr std::string_view kRatioExpression =
    "cosh(tanh(u)*arcosh(2*cosh(u)))/exp(u*tanh(u))";

struct CompositePart {
  std::string label;  // "compact" or "minimum"
  std::string text;   // serialized component certificate
  std::string sha256;
};

struct CompositeResult {
  std::string name;
  std::string claim;
  Status status = Status::Undetermined;
  std::vector<std::string> failing;  // components that did not prove
  std::vector<TailReduction> tails;
  std::vector<CompositePart> parts;
  std::optional<Certificate> compact;
  std::optional<MinimizationResult> minimum;
};

/// Main inequality on (0, inf): near-zero reduction at 0.3, bisection on
/// [0.3, 3], infinity reduction at 3. `compact_statement` replaces the
/// statement certified on [0.3, 3]; the tails only apply to the main one.
CompositeResult verify_three_full_line(const ProverConfig& cfg,
                                       std::string_view compact_statement = kMainStatement);

/// f(u) > 0.972 on [0, inf) where f is kRatioExpression.
CompositeResult infimum_claim_full_line(const ProverConfig& cfg);

std::string serialize(const CompositeResult& r);
CompositeResult parse_composite(std::string_view text);
bool composite_validate(const CompositeResult& r);

/// The "kind:" field of a certificate document ("strict", "infimum" or
/// "composite"); empty when absent.
std::string document_kind(std::string_view text);
/// Parses and re-checks any certificate document. Throws MalformedCertificate.
bool validate_document(std::string_view text);

// ---------------------------------------------------------------------------
// Randomized and closed-form checks

struct CheckReport {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<std::string> details;

  bool passed() const { return cases > 0 && failures == 0; }
};

/// Deterministic uniform doubles in [0, 1).
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed);
  double unit();
  /// Uniform in (lo, hi].
  double open_closed(double lo, double hi);

 private:
  std::uint64_t state_;
};

/// Evaluates a strict statement at a point binding, raising precision from
/// `prec` up to 1024 bits until the two enclosures separate.
bool separated_at(const InequalityStatement& stmt, const Binding& point, Precision prec);

CheckReport property_check(const CorpusItem& item, std::uint64_t seed, Precision prec);
CheckReport reduction_check(const CorpusItem& item, const std::vector<CorpusItem>& items,
                            std::uint64_t seed, Precision prec);
/// Exact rational check that the artanh series has coefficients 1/(2k+1).
CheckReport series_check(int terms);
CheckReport metamorphic_equivalence_check(std::size_t n, Precision prec, std::uint64_t seed);
CheckReport limit_behavior_check(Precision prec);
CheckReport axiom_check(std::size_t samples, Precision prec, std::uint64_t seed);

struct Axiom {
  std::string name;
  std::string lhs;
  std::string rhs;
  bool strict;
  std::string domain;  // sampling ranges
  std::string proof;   // one-line justification
};

const std::vector<Axiom>& axiom_ledger();

// ---------------------------------------------------------------------------
// Running items

struct RunOptions {
  ProverConfig config;
  std::uint64_t seed = 0;
  Precision property_precision = 64;
};

struct ItemReport {
  std::string id;
  bool passed = false;
  std::vector<std::string> lines;
  /// (file name, contents) of certificates produced by the run.
  std::vector<std::pair<std::string, std::string>> artifacts;
};

ItemReport run_item(const CorpusItem& item, const std::vector<CorpusItem>& items,
                    const RunOptions& opts);

}  // namespace hypcert
