#include <sstream>

#include "hypcert/corpus.hpp"
#include "hypcert/error.hpp"
#include "textdoc.hpp"

namespace hypcert {

namespace {

constexpr std::string_view kNearZeroDelta = "0.3";
constexpr std::string_view kInfinityStart = "3";
constexpr std::string_view kRatioDelta = "0.15";
constexpr std::string_view kRatioBound = "0.972";
constexpr std::string_view kRatioTargetWidth = "1e-4";

Interval literal(std::string_view text) { return Interval::from_decimal(text, 128); }

CompositePart make_part(std::string label, std::string text) {
  std::string digest = sha256_hex(text);
  return {std::move(label), std::move(text), std::move(digest)};
}

void note(CompositeResult& r, bool ok, const std::string& component) {
  if (!ok) r.failing.push_back(component);
}

}  // namespace

CompositeResult verify_three_full_line(const ProverConfig& cfg,
                                       std::string_view compact_statement) {
  CompositeResult r;
  r.name = "T3-full";
  r.claim = std::string(kMainStatement) + " for all u > 0";

  const Box compact_domain({parse_range("u=" + std::string(kNearZeroDelta) + ":" +
                                        std::string(kInfinityStart))});
  const InequalityStatement stmt = parse_statement(compact_statement, compact_domain);
  const bool main_statement = stmt.text() == kMainStatement;

  r.tails.push_back(verify_near_zero_reduction(kNearZeroDelta, cfg.start_precision));
  Certificate cert = verify_strict(stmt, cfg);
  r.tails.push_back(verify_infinity_reduction(kInfinityStart, cfg.start_precision));

  note(r, main_statement && r.tails[0].status == Status::Proved,
       main_statement ? "near-zero" : "near-zero (applies to the main statement only)");
  note(r, cert.status == Status::Proved, "compact [0.3, 3]");
  note(r, main_statement && r.tails[1].status == Status::Proved,
       main_statement ? "infinity" : "infinity (applies to the main statement only)");

  r.parts.push_back(make_part("compact", serialize(cert)));
  r.compact = std::move(cert);
  r.status = r.failing.empty() ? Status::Proved : Status::Undetermined;
  return r;
}

CompositeResult infimum_claim_full_line(const ProverConfig& cfg) {
  CompositeResult r;
  r.name = "infimum-full";
  const Expr f = parse(kRatioExpression);
  r.claim = render(f) + " > " + std::string(kRatioBound) + " for all u >= 0";
  const Precision prec = cfg.start_precision;

  r.tails.push_back(check_tail("ratio-origin", "0", "{0}", {}, "f(0) > 0.972", prec));
  r.tails.push_back(check_tail(
      "ratio-near-zero", kRatioDelta, "(0, " + std::string(kRatioDelta) + "]",
      {"cosh >= 1, so f(u) >= exp(-u tanh u)",
       "tanh u < u for u > 0, so u tanh u < u^2 <= delta^2 on (0, delta]",
       "exp is increasing"},
      "f(u) > 0.972 for all u in (0, " + std::string(kRatioDelta) + "]", prec));

  const Interval domain = parse_range("u=" + std::string(kRatioDelta) + ":" +
                                      std::string(kInfinityStart))
                              .second;
  MinimizationResult m = certified_infimum(
      f, "u", domain, Scalar::from_decimal(kRatioTargetWidth, 64, Round::Down), cfg);

  r.tails.push_back(check_tail(
      "ratio-infinity", kInfinityStart, "[" + std::string(kInfinityStart) + ", inf)",
      {"arcosh(2 cosh u) > ln 2 + u, since sqrt(4 cosh^2 u - 1) > 2 sinh u",
       "cosh z > exp(z)/2, so f(u) > exp(tanh(u)(u + ln 2))/(2 exp(u tanh u)) = 2^(tanh u - 1)",
       "tanh increases, so 2^(tanh u - 1) >= 2^(tanh u0 - 1) for u >= u0"},
      "f(u) > 0.972 for all u in [" + std::string(kInfinityStart) + ", inf)", prec));

  note(r, r.tails[0].status == Status::Proved, "origin");
  note(r, r.tails[1].status == Status::Proved, "near-zero");
  note(r, literal(kRatioBound).hi() < m.lower_bound(), "minimum [0.15, 3]");
  note(r, r.tails[2].status == Status::Proved, "infinity");

  r.parts.push_back(make_part("minimum", serialize(m)));
  r.minimum = std::move(m);
  r.status = r.failing.empty() ? Status::Proved : Status::Undetermined;
  return r;
}

std::string serialize(const CompositeResult& r) {
  std::ostringstream os;
  os << detail::kCertificateMagic << '\n'
     << "kind: composite\n"
     << "name: " << r.name << '\n'
     << "claim: " << r.claim << '\n'
     << "status: " << status_name(r.status) << '\n'
     << "failing: " << r.failing.size() << '\n';
  for (const auto& f : r.failing) os << f << '\n';
  os << "tails: " << r.tails.size() << '\n';
  for (const auto& t : r.tails) {
    os << "tail: " << t.name << '\n'
       << "parameter: " << t.parameter << '\n'
       << "covers: " << t.covers << '\n'
       << "hypothesis: " << t.hypothesis << '\n'
       << "precision: " << t.precision << '\n'
       << "lhs-enclosure: " << t.lhs->lo().to_hex() << ' ' << t.lhs->hi().to_hex() << '\n'
       << "rhs-enclosure: " << t.rhs->lo().to_hex() << ' ' << t.rhs->hi().to_hex() << '\n'
       << "status: " << status_name(t.status) << '\n'
       << "conclusion: " << t.conclusion << '\n'
       << "axioms: " << t.axioms.size() << '\n';
    for (const auto& a : t.axioms) os << a << '\n';
    os << "end-tail\n";
  }
  os << "parts: " << r.parts.size() << '\n';
  for (const auto& p : r.parts) {
    os << "part: " << p.label << ' ' << p.sha256 << '\n' << p.text;
  }
  os << "end\n";
  return os.str();
}

namespace {

Status parse_status(detail::LineReader& in) {
  const std::string s = in.field("status");
  if (s == "proved") return Status::Proved;
  if (s == "undetermined") return Status::Undetermined;
  in.fail("unknown status '" + s + "'");
}

Interval parse_enclosure(detail::LineReader& in, std::string_view key) {
  const auto w = in.words(key);
  if (w.size() != 2) in.fail("malformed enclosure");
  try {
    return Interval(Scalar::from_hex(w[0]), Scalar::from_hex(w[1]));
  } catch (const MalformedCertificate&) {
    throw;
  } catch (const Error& e) {
    in.fail(e.what());
  }
}

}  // namespace

CompositeResult parse_composite(std::string_view text) {
  detail::LineReader in(text);
  in.expect(detail::kCertificateMagic);
  if (in.field("kind") != "composite") in.fail("expected kind 'composite'");
  CompositeResult r;
  r.name = in.field("name");
  r.claim = in.field("claim");
  r.status = parse_status(in);
  const std::size_t nf = detail::parse_size(in.field("failing"));
  for (std::size_t i = 0; i < nf; ++i) r.failing.emplace_back(in.next());
  const std::size_t nt = detail::parse_size(in.field("tails"));
  for (std::size_t i = 0; i < nt; ++i) {
    TailReduction t;
    t.name = in.field("tail");
    t.parameter = in.field("parameter");
    t.covers = in.field("covers");
    t.hypothesis = in.field("hypothesis");
    t.precision = detail::parse_long(in.field("precision"));
    t.lhs = parse_enclosure(in, "lhs-enclosure");
    t.rhs = parse_enclosure(in, "rhs-enclosure");
    t.status = parse_status(in);
    t.conclusion = in.field("conclusion");
    const std::size_t na = detail::parse_size(in.field("axioms"));
    for (std::size_t k = 0; k < na; ++k) t.axioms.emplace_back(in.next());
    in.expect("end-tail");
    r.tails.push_back(std::move(t));
  }
  const std::size_t np = detail::parse_size(in.field("parts"));
  for (std::size_t i = 0; i < np; ++i) {
    const auto w = in.words("part");
    if (w.size() != 2) in.fail("malformed part header");
    CompositePart part{w[0], in.nested_document(), w[1]};
    if (part.label == "compact") {
      r.compact = parse_certificate(part.text);
    } else if (part.label == "minimum") {
      r.minimum = parse_minimization(part.text);
    } else {
      in.fail("unknown part '" + part.label + "'");
    }
    r.parts.push_back(std::move(part));
  }
  in.expect("end");
  return r;
}

namespace {

const TailReduction* find_tail(const CompositeResult& r, std::string_view name) {
  for (const auto& t : r.tails) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

bool parts_intact(const CompositeResult& r) {
  for (const auto& p : r.parts) {
    if (p.sha256 != sha256_hex(p.text)) return false;
  }
  return true;
}

}  // namespace

bool composite_validate(const CompositeResult& r) {
  if (r.status != Status::Proved || !r.failing.empty() || !parts_intact(r)) return false;
  for (const auto& t : r.tails) {
    if (!tail_validate(t)) return false;
  }
  try {
    if (r.name == "T3-full") {
      const TailReduction* near = find_tail(r, "near-zero");
      const TailReduction* far = find_tail(r, "infinity");
      if (near == nullptr || far == nullptr || !r.compact || r.parts.size() != 1) return false;
      if (r.parts[0].label != "compact" || r.compact->statement_text != kMainStatement) {
        return false;
      }
      const Certificate& c = *r.compact;
      if (c.domain.size() != 1 || c.domain.name(0) != "u") return false;
      // (0, delta] U [lo, hi] U [u0, inf) must cover (0, inf).
      if (literal(near->parameter).lo() < c.domain[0].lo()) return false;
      if (c.domain[0].hi() < literal(far->parameter).hi()) return false;
      return certificate_validate(c, statement_of(c));
    }
    if (r.name == "infimum-full") {
      const TailReduction* origin = find_tail(r, "ratio-origin");
      const TailReduction* near = find_tail(r, "ratio-near-zero");
      const TailReduction* far = find_tail(r, "ratio-infinity");
      if (!origin || !near || !far || !r.minimum || r.parts.size() != 1) return false;
      if (origin->parameter != "0") return false;
      const MinimizationResult& m = *r.minimum;
      const Expr f = parse(kRatioExpression);
      if (m.expression_text != render(f) || m.variable != "u") return false;
      if (literal(near->parameter).lo() < m.domain.lo()) return false;
      if (m.domain.hi() < literal(far->parameter).hi()) return false;
      if (!(literal(kRatioBound).hi() < m.lower_bound())) return false;
      return minimization_validate(m, f);
    }
  } catch (const Error&) {
    return false;
  }
  return false;
}

std::string document_kind(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    if (line.starts_with("kind: ")) return std::string(line.substr(6));
    pos = end + 1;
  }
  return {};
}

bool validate_document(std::string_view text) {
  const std::string kind = document_kind(text);
  if (kind == "strict") {
    const Certificate cert = parse_certificate(text);
    return certificate_validate(cert, statement_of(cert));
  }
  if (kind == "infimum") {
    const MinimizationResult r = parse_minimization(text);
    return minimization_validate(r, parse(r.expression_text));
  }
  if (kind == "composite") return composite_validate(parse_composite(text));
  throw MalformedCertificate("unknown certificate kind '" + kind + "'");
}

}  // namespace hypcert
