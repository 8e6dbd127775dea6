// Certificate text format (schema v1) and the independent validator.
//
// The validator re-derives everything from the record: it never calls into
// the bisection search, only into expression evaluation at the precision
// stored with each leaf.

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <sstream>

#include "hypcert/error.hpp"
#include "hypcert/prover.hpp"
#include "textdoc.hpp"

namespace hypcert {

namespace {

using detail::LineReader;

std::string domain_line(const Box& box) {
  std::string out;
  for (std::size_t i = 0; i < box.size(); ++i) {
    if (i) out += ' ';
    out += box.name(i) + ' ' + box[i].lo().to_hex() + ' ' + box[i].hi().to_hex();
  }
  return out;
}

std::string box_words(const Box& box) {
  std::string out;
  for (std::size_t i = 0; i < box.size(); ++i) {
    out += ' ' + box[i].lo().to_hex() + ' ' + box[i].hi().to_hex();
  }
  return out;
}

Box parse_domain(const std::vector<std::string>& w) {
  if (w.empty() || w.size() % 3 != 0) throw MalformedCertificate("malformed domain");
  std::vector<Box::Dim> dims;
  for (std::size_t i = 0; i < w.size(); i += 3) {
    dims.emplace_back(w[i], Interval(Scalar::from_hex(w[i + 1]), Scalar::from_hex(w[i + 2])));
  }
  try {
    return Box(std::move(dims));
  } catch (const MalformedCertificate&) {
    throw;
  } catch (const Error& e) {
    throw MalformedCertificate(e.what());
  }
}

Box box_from_words(const Box& domain, const std::vector<std::string>& w, std::size_t offset) {
  if (w.size() != offset + 2 * domain.size()) throw MalformedCertificate("malformed box");
  std::vector<Box::Dim> dims;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    try {
      dims.emplace_back(domain.name(i), Interval(Scalar::from_hex(w[offset + 2 * i]),
                                                 Scalar::from_hex(w[offset + 2 * i + 1])));
    } catch (const MalformedCertificate&) {
      throw;
    } catch (const Error& e) {
      throw MalformedCertificate(e.what());
    }
  }
  return Box(std::move(dims));
}

std::string field_names(const Box& domain) {
  std::string out;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    out += ' ' + domain.name(i) + ".lo " + domain.name(i) + ".hi";
  }
  return out;
}

ProverConfig parse_config(const std::vector<std::string>& w) {
  ProverConfig cfg;
  for (const auto& kv : w) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos) throw MalformedCertificate("malformed config entry '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    const long v = detail::parse_long(kv.substr(eq + 1));
    if (key == "start-precision") {
      cfg.start_precision = v;
    } else if (key == "escalation-factor") {
      cfg.escalation_factor = v;
    } else if (key == "max-precision") {
      cfg.max_precision = v;
    } else if (key == "max-depth") {
      cfg.max_depth = static_cast<int>(v);
    } else if (key == "leaf-budget") {
      cfg.leaf_budget = static_cast<std::size_t>(v);
    } else {
      throw MalformedCertificate("unknown config key '" + key + "'");
    }
  }
  return cfg;
}

bool precision_ok(Precision p) { return p >= MPFR_PREC_MIN && p <= (1 << 16); }

// Exact 1-D tiling check of [lo, hi] by pieces.
bool tiles_1d(const Interval& range, std::vector<Interval> pieces) {
  if (pieces.empty()) return false;
  std::sort(pieces.begin(), pieces.end(),
            [](const Interval& a, const Interval& b) { return a.lo() < b.lo(); });
  if (!(pieces.front().lo() == range.lo()) || !(pieces.back().hi() == range.hi())) return false;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (!(pieces[i].lo() < pieces[i].hi())) return false;
    if (i + 1 < pieces.size() && !(pieces[i].hi() == pieces[i + 1].lo())) return false;
  }
  return true;
}

}  // namespace

bool boxes_tile(const Box& domain, const std::vector<Box>& pieces) {
  if (pieces.empty()) return false;
  for (const auto& p : pieces) {
    if (!domain.contains(p)) return false;
  }
  if (domain.size() == 1) {
    std::vector<Interval> ranges;
    ranges.reserve(pieces.size());
    for (const auto& p : pieces) ranges.push_back(p[0]);
    return tiles_1d(domain[0], std::move(ranges));
  }
  if (domain.size() != 2) return false;

  // Sweep over x: between consecutive x breakpoints the active pieces must
  // tile the y range exactly.
  std::vector<Scalar> xs;
  for (const auto& p : pieces) {
    if (!(p[0].lo() < p[0].hi())) return false;
    xs.push_back(p[0].lo());
    xs.push_back(p[0].hi());
  }
  std::sort(xs.begin(), xs.end(), [](const Scalar& a, const Scalar& b) { return a < b; });
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  if (!(xs.front() == domain[0].lo()) || !(xs.back() == domain[0].hi())) return false;

  std::vector<std::size_t> order(pieces.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pieces[a][0].lo() < pieces[b][0].lo(); });

  std::vector<std::size_t> active;
  std::size_t cursor = 0;
  for (std::size_t s = 0; s + 1 < xs.size(); ++s) {
    const Scalar& left = xs[s];
    std::erase_if(active, [&](std::size_t i) { return pieces[i][0].hi() <= left; });
    while (cursor < order.size() && pieces[order[cursor]][0].lo() == left) {
      active.push_back(order[cursor++]);
    }
    std::vector<Interval> column;
    column.reserve(active.size());
    for (std::size_t i : active) column.push_back(pieces[i][1]);
    if (!tiles_1d(domain[1], std::move(column))) return false;
  }
  return cursor == order.size();
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

std::string serialize(const Certificate& cert) {
  std::ostringstream os;
  const ProverConfig& c = cert.config;
  os << detail::kCertificateMagic << '\n'
     << "kind: strict\n"
     << "statement: " << cert.statement_text << '\n'
     << "statement-sha256: " << cert.statement_hash << '\n'
     << "domain: " << domain_line(cert.domain) << '\n'
     << "config: start-precision=" << c.start_precision
     << " escalation-factor=" << c.escalation_factor << " max-precision=" << c.max_precision
     << " max-depth=" << c.max_depth << " leaf-budget=" << c.leaf_budget << '\n'
     << "status: " << status_name(cert.status) << '\n'
     << "boxes-examined: " << cert.boxes_examined << '\n'
     << "leaf-fields: depth precision lhs-upper rhs-lower" << field_names(cert.domain) << '\n'
     << "leaves: " << cert.leaves.size() << '\n';
  for (const Leaf& l : cert.leaves) {
    os << l.depth << ' ' << l.precision << ' ' << l.lhs_upper.to_hex() << ' '
       << l.rhs_lower.to_hex() << box_words(l.box) << '\n';
  }
  os << "frontier-fields:" << field_names(cert.domain) << '\n'
     << "frontier: " << cert.frontier.size() << '\n';
  for (const Box& b : cert.frontier) os << box_words(b).substr(1) << '\n';
  os << "end\n";
  return os.str();
}

Certificate parse_certificate(std::string_view text) {
  LineReader in(text);
  in.expect(detail::kCertificateMagic);
  if (in.field("kind") != "strict") in.fail("expected kind 'strict'");
  Certificate cert;
  cert.statement_text = in.field("statement");
  cert.statement_hash = in.field("statement-sha256");
  cert.domain = parse_domain(in.words("domain"));
  cert.config = parse_config(in.words("config"));
  const std::string status = in.field("status");
  if (status == "proved") {
    cert.status = Status::Proved;
  } else if (status == "undetermined") {
    cert.status = Status::Undetermined;
  } else {
    in.fail("unknown status '" + status + "'");
  }
  cert.boxes_examined = detail::parse_size(in.field("boxes-examined"));
  if (in.field("leaf-fields") != "depth precision lhs-upper rhs-lower" + field_names(cert.domain)) {
    in.fail("leaf-fields do not match domain");
  }
  const std::size_t n = detail::parse_size(in.field("leaves"));
  cert.leaves.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto w = detail::split_words(in.next());
    if (w.size() < 4) in.fail("malformed leaf");
    Leaf leaf{box_from_words(cert.domain, w, 4), Scalar::from_hex(w[2]), Scalar::from_hex(w[3]),
              static_cast<int>(detail::parse_long(w[0])), detail::parse_long(w[1])};
    cert.leaves.push_back(std::move(leaf));
  }
  if (in.field("frontier-fields") != field_names(cert.domain).substr(1)) {
    in.fail("frontier-fields do not match domain");
  }
  const std::size_t m = detail::parse_size(in.field("frontier"));
  for (std::size_t i = 0; i < m; ++i) {
    cert.frontier.push_back(box_from_words(cert.domain, detail::split_words(in.next()), 0));
  }
  in.expect("end");
  while (!in.done()) {
    if (!in.next().empty()) in.fail("trailing content after end");
  }
  return cert;
}

bool certificate_validate(const Certificate& cert, const InequalityStatement& stmt) {
  if (cert.status != Status::Proved || !cert.frontier.empty() || cert.leaves.empty()) return false;
  if (cert.statement_text != stmt.text() || cert.statement_hash != sha256_hex(stmt.text())) {
    return false;
  }
  if (cert.domain.size() != stmt.domain.size() || !cert.domain.contains(stmt.domain) ||
      !stmt.domain.contains(cert.domain)) {
    return false;
  }
  std::vector<Box> boxes;
  boxes.reserve(cert.leaves.size());
  for (const Leaf& leaf : cert.leaves) {
    if (!(leaf.lhs_upper < leaf.rhs_lower) || !precision_ok(leaf.precision)) return false;
    if (!cert.domain.contains(leaf.box)) return false;
    const Binding b = leaf.box.binding();
    try {
      const Interval lhs = eval_interval(stmt.lhs, b, leaf.precision);
      const Interval rhs = eval_interval(stmt.rhs, b, leaf.precision);
      if (leaf.lhs_upper < lhs.hi() || rhs.lo() < leaf.rhs_lower) return false;
    } catch (const Error&) {
      return false;
    }
    boxes.push_back(leaf.box);
  }
  return boxes_tile(cert.domain, boxes);
}

}  // namespace hypcert
