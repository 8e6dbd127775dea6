#include "hypcert/minimize.hpp"

#include <algorithm>
#include <charconv>
#include <queue>
#include <sstream>

#include "hypcert/error.hpp"
#include "textdoc.hpp"

namespace hypcert {

namespace {

struct Node {
  Interval box;
  Scalar lower;
  Scalar upper;
  int depth;
};

// Lowest lower bound first; ties by position for a deterministic order.
struct LaterFirst {
  bool operator()(const Node& a, const Node& b) const {
    if (a.lower == b.lower) return b.box.lo() < a.box.lo();
    return b.lower < a.lower;
  }
};

bool by_position(const BoundedBox& a, const BoundedBox& b) { return a.box.lo() < b.box.lo(); }

class Search {
 public:
  Search(const Expr& e, std::string_view var, Precision prec)
      : expr_(e), var_(var), prec_(prec), ub_(Scalar::infinity()), witness_(prec) {}

  Interval enclose(const Interval& box) const {
    Binding b;
    b.emplace(var_, box);
    return eval_interval(expr_, b, prec_);
  }

  void offer_midpoint(const Interval& box) {
    Scalar m = midpoint(box);
    const Interval v = enclose(Interval::point(m));
    if (v.hi() < ub_) {
      ub_ = v.hi();
      witness_ = std::move(m);
    }
  }

  const Scalar& ub() const { return ub_; }
  const Scalar& witness() const { return witness_; }
  Precision precision() const { return prec_; }

 private:
  const Expr& expr_;
  std::string var_;
  Precision prec_;
  Scalar ub_;
  Scalar witness_;
};

Scalar difference_up(const Scalar& a, const Scalar& b) {
  Scalar out(std::max({a.precision(), b.precision(), kDefaultPrecision}));
  mpfr_sub(out.get(), a.get(), b.get(), MPFR_RNDU);
  return out;
}

}  // namespace

MinimizationResult certified_infimum(const Expr& e, std::string_view variable,
                                     const Interval& domain, const Scalar& target_width,
                                     const ProverConfig& cfg) {
  cfg.validate();
  for (const auto& v : e.free_variables()) {
    if (v != variable) throw UnboundVariable(v);
  }
  const Precision prec = cfg.start_precision;
  Search search(e, variable, prec);

  MinimizationResult r{.expression_text = render(e),
                       .expression_hash = sha256_hex(render(e)),
                       .variable = std::string(variable),
                       .domain = domain,
                       .target_width = target_width,
                       .config = cfg,
                       .inf_enclosure = domain,
                       .argmin_boxes = {},
                       .witness = Scalar(prec),
                       .witness_precision = prec,
                       .live = {},
                       .pruned = {},
                       .leaves_processed = 0,
                       .budget_exhausted = false};

  // A box is settled once its enclosure is narrower than the target; the
  // search ends when every box is settled or pruned.
  auto node_of = [&](Interval box, int depth) {
    Interval v = search.enclose(box);
    return Node{std::move(box), v.lo(), v.hi(), depth};
  };
  auto settled = [&](const Node& n) {
    return !(difference_up(n.upper, n.lower) > target_width);
  };

  std::priority_queue<Node, std::vector<Node>, LaterFirst> queue;
  std::vector<Node> done;
  queue.push(node_of(domain, 0));
  search.offer_midpoint(domain);

  while (!queue.empty()) {
    Node top = queue.top();
    queue.pop();
    if (search.ub() < top.lower) {
      r.pruned.push_back({std::move(top.box), std::move(top.lower), prec});
      continue;
    }
    if (settled(top)) {
      done.push_back(std::move(top));
      continue;
    }
    if (r.leaves_processed >= cfg.leaf_budget) {
      r.budget_exhausted = true;
      done.push_back(std::move(top));
      break;
    }
    ++r.leaves_processed;
    if (top.box.is_point() || top.depth >= cfg.max_depth) {
      done.push_back(std::move(top));
      continue;
    }
    auto [left, right] = bisect(top.box);
    search.offer_midpoint(left);
    search.offer_midpoint(right);
    for (Interval* half : {&left, &right}) {
      Node child = node_of(std::move(*half), top.depth + 1);
      if (search.ub() < child.lower) {
        r.pruned.push_back({std::move(child.box), std::move(child.lower), prec});
      } else {
        queue.push(std::move(child));
      }
    }
  }

  // Final sequential pass against the final upper bound.
  while (!queue.empty()) {
    done.push_back(queue.top());
    queue.pop();
  }
  for (auto& n : done) {
    if (search.ub() < n.lower) {
      r.pruned.push_back({std::move(n.box), std::move(n.lower), prec});
    } else {
      r.live.push_back({std::move(n.box), std::move(n.lower), prec});
    }
  }
  std::sort(r.live.begin(), r.live.end(), by_position);
  std::sort(r.pruned.begin(), r.pruned.end(), by_position);

  Scalar lb = Scalar::infinity();
  for (const auto& b : r.live) lb = min(lb, b.lower);
  r.inf_enclosure = Interval(lb, search.ub());
  r.witness = search.witness();
  // Boxes stuck at the depth limit can leave the enclosure wider than asked.
  if (difference_up(search.ub(), lb) > target_width) r.budget_exhausted = true;

  for (const auto& b : r.live) {
    if (!r.argmin_boxes.empty() && r.argmin_boxes.back().hi() == b.box.lo()) {
      r.argmin_boxes.back() = Interval(r.argmin_boxes.back().lo(), b.box.hi());
    } else {
      r.argmin_boxes.push_back(b.box);
    }
  }
  return r;
}

bool minimization_validate(const MinimizationResult& r, const Expr& e) {
  const std::string text = render(e);
  if (r.expression_text != text || r.expression_hash != sha256_hex(text)) return false;
  if (r.live.empty() || !(r.lower_bound() <= r.upper_bound())) return false;
  const Scalar& ub = r.upper_bound();
  auto enclose = [&](const Interval& box, Precision prec) {
    Binding b;
    b.emplace(r.variable, box);
    return eval_interval(e, b, prec);
  };
  try {
    if (!r.domain.contains(r.witness)) return false;
    if (ub < enclose(Interval::point(r.witness), r.witness_precision).hi()) return false;
    std::vector<Box> pieces;
    for (const auto& b : r.pruned) {
      if (!(ub < b.lower) || !(ub < enclose(b.box, b.precision).lo())) return false;
      pieces.push_back(Box({{r.variable, b.box}}));
    }
    for (const auto& b : r.live) {
      if (enclose(b.box, b.precision).lo() < r.lower_bound()) return false;
      pieces.push_back(Box({{r.variable, b.box}}));
    }
    return boxes_tile(Box({{r.variable, r.domain}}), pieces);
  } catch (const Error&) {
    return false;
  }
}

namespace {

std::string bounded_line(const BoundedBox& b) {
  return std::to_string(b.precision) + ' ' + b.lower.to_hex() + ' ' + b.box.lo().to_hex() + ' ' +
         b.box.hi().to_hex();
}

BoundedBox parse_bounded(std::string_view line) {
  const auto w = detail::split_words(line);
  if (w.size() != 4) throw MalformedCertificate("malformed bounded box '" + std::string(line) + "'");
  try {
    return {Interval(Scalar::from_hex(w[2]), Scalar::from_hex(w[3])), Scalar::from_hex(w[1]),
            detail::parse_long(w[0])};
  } catch (const MalformedCertificate&) {
    throw;
  } catch (const Error& e) {
    throw MalformedCertificate(e.what());
  }
}

}  // namespace

std::string serialize(const MinimizationResult& r) {
  std::ostringstream os;
  const ProverConfig& c = r.config;
  os << detail::kCertificateMagic << '\n'
     << "kind: infimum\n"
     << "expression: " << r.expression_text << '\n'
     << "expression-sha256: " << r.expression_hash << '\n'
     << "domain: " << r.variable << ' ' << r.domain.lo().to_hex() << ' ' << r.domain.hi().to_hex()
     << '\n'
     << "target-width: " << r.target_width.to_hex() << '\n'
     << "config: start-precision=" << c.start_precision << " max-depth=" << c.max_depth
     << " leaf-budget=" << c.leaf_budget << '\n'
     << "status: " << (r.budget_exhausted ? "budget-exhausted" : "converged") << '\n'
     << "lower-bound: " << r.lower_bound().to_hex() << '\n'
     << "upper-bound: " << r.upper_bound().to_hex() << '\n'
     << "enclosure-decimal: " << r.inf_enclosure.to_decimal(20) << '\n'
     << "witness: " << r.witness.to_hex() << ' ' << r.witness_precision << '\n'
     << "leaves-processed: " << r.leaves_processed << '\n'
     << "argmin: " << r.argmin_boxes.size() << '\n';
  for (const auto& a : r.argmin_boxes) os << a.lo().to_hex() << ' ' << a.hi().to_hex() << '\n';
  os << "box-fields: precision lower " << r.variable << ".lo " << r.variable << ".hi\n"
     << "live: " << r.live.size() << '\n';
  for (const auto& b : r.live) os << bounded_line(b) << '\n';
  os << "pruned: " << r.pruned.size() << '\n';
  for (const auto& b : r.pruned) os << bounded_line(b) << '\n';
  os << "end\n";
  return os.str();
}

MinimizationResult parse_minimization(std::string_view text) {
  detail::LineReader in(text);
  in.expect(detail::kCertificateMagic);
  if (in.field("kind") != "infimum") in.fail("expected kind 'infimum'");
  MinimizationResult r;
  r.expression_text = in.field("expression");
  r.expression_hash = in.field("expression-sha256");
  const auto dom = in.words("domain");
  if (dom.size() != 3) in.fail("malformed domain");
  r.variable = dom[0];
  try {
    r.domain = Interval(Scalar::from_hex(dom[1]), Scalar::from_hex(dom[2]));
  } catch (const MalformedCertificate&) {
    throw;
  } catch (const Error& e) {
    in.fail(e.what());
  }
  r.target_width = Scalar::from_hex(in.field("target-width"));
  for (const auto& kv : in.words("config")) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos) in.fail("malformed config entry");
    const std::string key = kv.substr(0, eq);
    const long v = detail::parse_long(kv.substr(eq + 1));
    if (key == "start-precision") {
      r.config.start_precision = v;
    } else if (key == "max-depth") {
      r.config.max_depth = static_cast<int>(v);
    } else if (key == "leaf-budget") {
      r.config.leaf_budget = static_cast<std::size_t>(v);
    } else {
      in.fail("unknown config key '" + key + "'");
    }
  }
  const std::string status = in.field("status");
  if (status != "converged" && status != "budget-exhausted") in.fail("unknown status");
  r.budget_exhausted = status == "budget-exhausted";
  Scalar lb = Scalar::from_hex(in.field("lower-bound"));
  Scalar ub = Scalar::from_hex(in.field("upper-bound"));
  if (ub < lb) in.fail("lower bound exceeds upper bound");
  r.inf_enclosure = Interval(std::move(lb), std::move(ub));
  in.field("enclosure-decimal");
  const auto wit = in.words("witness");
  if (wit.size() != 2) in.fail("malformed witness");
  r.witness = Scalar::from_hex(wit[0]);
  r.witness_precision = detail::parse_long(wit[1]);
  r.leaves_processed = detail::parse_size(in.field("leaves-processed"));
  const std::size_t na = detail::parse_size(in.field("argmin"));
  for (std::size_t i = 0; i < na; ++i) {
    const auto w = detail::split_words(in.next());
    if (w.size() != 2) in.fail("malformed argmin box");
    r.argmin_boxes.emplace_back(Scalar::from_hex(w[0]), Scalar::from_hex(w[1]));
  }
  if (in.field("box-fields") != "precision lower " + r.variable + ".lo " + r.variable + ".hi") {
    in.fail("box-fields do not match domain");
  }
  const std::size_t nl = detail::parse_size(in.field("live"));
  for (std::size_t i = 0; i < nl; ++i) r.live.push_back(parse_bounded(in.next()));
  const std::size_t np = detail::parse_size(in.field("pruned"));
  for (std::size_t i = 0; i < np; ++i) r.pruned.push_back(parse_bounded(in.next()));
  in.expect("end");
  return r;
}

ScanTable scan(const Expr& e, std::string_view variable, const Interval& domain, std::size_t n,
               Precision prec) {
  if (n < 2) throw Error("scan needs at least 2 points");
  ScanTable table;
  table.rows.reserve(n);
  const Interval a = Interval::point(domain.lo());
  const Interval b = Interval::point(domain.hi());
  const long steps = static_cast<long>(n - 1);
  const Precision grid_prec = prec + 64;
  for (long i = 0; i <= steps; ++i) {
    // Exact rational grid point (a*(steps-i) + b*i)/steps, enclosed.
    const Interval u =
        div(add(mul(a, Interval::from_int(steps - i, grid_prec), grid_prec),
                mul(b, Interval::from_int(i, grid_prec), grid_prec), grid_prec),
            Interval::from_int(steps, grid_prec), grid_prec);
    ScanRow row;
    char buf[64];
    const double ud = midpoint(u).to_double();
    const auto res = std::to_chars(buf, buf + sizeof buf, ud);
    row.u.assign(buf, res.ptr);
    try {
      Binding bind;
      bind.emplace(std::string(variable), u);
      row.value = eval_interval(e, bind, prec);
    } catch (const Error& err) {
      row.error = err.what();
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string to_csv(const ScanTable& table, int digits) {
  std::string out = "u,lo,hi\n";
  for (const auto& row : table.rows) {
    out += row.u;
    if (row.value) {
      out += ',' + row.value->lo().to_decimal(digits, Round::Down) + ',' +
             row.value->hi().to_decimal(digits, Round::Up) + '\n';
    } else {
      out += ",invalid,invalid\n";
    }
  }
  return out;
}

}  // namespace hypcert
