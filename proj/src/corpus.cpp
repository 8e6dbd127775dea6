#include <algorithm>
#include <functional>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "hypcert/corpus.hpp"
#include "hypcert/error.hpp"
#include "textdoc.hpp"

namespace hypcert {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

Plan plan_from_name(std::string_view name) {
  if (name == "certify") return Plan::Certify;
  if (name == "property") return Plan::Property;
  if (name == "series") return Plan::Series;
  if (name == "composite") return Plan::Composite;
  if (name == "metamorphic") return Plan::Metamorphic;
  if (name == "limit") return Plan::Limit;
  if (name == "axioms") return Plan::Axioms;
  throw Error("unknown plan '" + std::string(name) + "'");
}

}  // namespace

bool CorpusItem::has(Plan p) const {
  return std::find(plans.begin(), plans.end(), p) != plans.end();
}

std::vector<CorpusItem> parse_corpus(std::string_view text) {
  std::vector<CorpusItem> items;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  auto fail = [&](const std::string& what) -> Error {
    return Error("corpus line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) throw fail("malformed item header");
      CorpusItem item;
      item.id = line.substr(1, line.size() - 2);
      for (const auto& other : items) {
        if (other.id == item.id) throw fail("duplicate item '" + item.id + "'");
      }
      items.push_back(std::move(item));
      continue;
    }
    if (items.empty()) throw fail("field outside of an item");
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw fail("expected 'key: value'");
    const std::string key = trim(std::string_view(line).substr(0, colon));
    const std::string value = trim(std::string_view(line).substr(colon + 1));
    CorpusItem& it = items.back();
    if (key == "anchor") {
      it.anchor = value;
    } else if (key == "plan") {
      for (const auto& w : detail::split_words(value)) it.plans.push_back(plan_from_name(w));
    } else if (key == "certify") {
      it.certify = value;
    } else if (key == "certify-domain") {
      it.certify_domain = value;
    } else if (key == "property") {
      it.property = value;
    } else if (key == "property-domain") {
      it.property_domain = value;
    } else if (key == "samples") {
      it.samples = detail::parse_size(value);
    } else if (key == "reduce-to") {
      it.reduce_to = value;
    } else if (key == "parts") {
      it.parts = detail::split_words(value);
    } else if (key == "note") {
      it.note = value;
    } else {
      throw fail("unknown field '" + key + "'");
    }
  }
  for (const auto& it : items) {
    if (it.anchor.empty()) throw Error("corpus item '" + it.id + "' has no anchor");
    if (it.plans.empty()) throw Error("corpus item '" + it.id + "' has no plan");
    if (it.has(Plan::Composite) && it.parts.empty()) {
      throw Error("composite item '" + it.id + "' lists no parts");
    }
  }
  return items;
}

std::vector<CorpusItem> builtin_items() { return parse_corpus(builtin_corpus_text()); }

const CorpusItem& find_item(const std::vector<CorpusItem>& items, std::string_view id) {
  for (const auto& it : items) {
    if (it.id == id) return it;
  }
  throw Error("unknown corpus item '" + std::string(id) + "'");
}

Box parse_domain_spec(std::string_view spec, Precision prec) {
  std::vector<Box::Dim> dims;
  for (const auto& w : detail::split_words(spec)) dims.push_back(parse_range(w, prec));
  return Box(std::move(dims));
}

// ---------------------------------------------------------------------------
// Sampling

Sampler::Sampler(std::uint64_t seed) : state_(seed) {}

double Sampler::unit() {
  // splitmix64
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

double Sampler::open_closed(double lo, double hi) {
  const double x = hi - (hi - lo) * unit();
  return x > lo ? x : hi;
}

namespace {

constexpr Precision kMaxCheckPrecision = 1024;

/// Escalates precision until the two sides separate. `bind` produces the
/// binding at a given precision. Returns +1 when lhs < rhs was certified,
/// -1 when rhs < lhs was, 0 when the enclosures still overlap at the cap.
int compare_sides(const Expr& lhs, const Expr& rhs,
                  const std::function<Binding(Precision)>& bind, Precision prec,
                  bool allow_equal = false) {
  for (Precision p = prec; p <= kMaxCheckPrecision; p *= 2) {
    const Binding b = bind(p);
    const Interval l = eval_interval(lhs, b, p);
    const Interval r = eval_interval(rhs, b, p);
    if (allow_equal ? l.hi() <= r.lo() : l.hi() < r.lo()) return 1;
    if (r.hi() < l.lo()) return -1;
  }
  return 0;
}

std::vector<std::pair<std::string, double>> sample_point(const Box& box, Sampler& rng) {
  std::vector<std::pair<std::string, double>> pt;
  for (std::size_t d = 0; d < box.size(); ++d) {
    pt.emplace_back(box.name(d), rng.open_closed(box[d].lo().to_double(Round::Up),
                                                 box[d].hi().to_double(Round::Down)));
  }
  return pt;
}

Binding point_binding(const std::vector<std::pair<std::string, double>>& pt) {
  Binding b;
  for (const auto& [name, v] : pt) b.emplace(name, Interval::point(Scalar::from_double(v)));
  return b;
}

std::string describe(const std::vector<std::pair<std::string, double>>& pt) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < pt.size(); ++i) {
    os << (i ? " " : "") << pt[i].first << '=' << pt[i].second;
  }
  return os.str();
}

}  // namespace

bool separated_at(const InequalityStatement& stmt, const Binding& point, Precision prec) {
  return compare_sides(stmt.lhs, stmt.rhs, [&](Precision) { return point; }, prec) > 0;
}

CheckReport property_check(const CorpusItem& item, std::uint64_t seed, Precision prec) {
  CheckReport rep;
  rep.name = item.id + " property";
  const Box domain = parse_domain_spec(item.property_domain);
  const InequalityStatement stmt = parse_statement(item.property, domain);
  Sampler rng(seed);
  for (std::size_t i = 0; i < item.samples; ++i) {
    const auto pt = sample_point(domain, rng);
    ++rep.cases;
    try {
      if (!separated_at(stmt, point_binding(pt), prec)) {
        ++rep.failures;
        rep.details.push_back("not separated at " + describe(pt));
      }
    } catch (const Error& e) {
      ++rep.failures;
      rep.details.push_back(describe(pt) + ": " + e.what());
    }
  }
  return rep;
}

CheckReport reduction_check(const CorpusItem& item, const std::vector<CorpusItem>& items,
                            std::uint64_t seed, Precision prec) {
  CheckReport rep;
  rep.name = item.id + " reduction";
  const auto words = detail::split_words(item.reduce_to);
  if (words.empty()) throw Error("item '" + item.id + "' has no reduction");
  const CorpusItem& target = find_item(items, words[0]);

  std::vector<std::pair<std::string, Expr>> map;
  for (std::size_t i = 1; i < words.size(); ++i) {
    const auto eq = words[i].find('=');
    if (eq == std::string::npos) throw Error("malformed reduction binding '" + words[i] + "'");
    map.emplace_back(words[i].substr(0, eq), parse(std::string_view(words[i]).substr(eq + 1)));
  }

  const Box domain = parse_domain_spec(item.property_domain);
  const InequalityStatement source = parse_statement(item.property, domain);
  const InequalityStatement dest = parse_statement(target.property, parse_domain_spec(target.property_domain));

  Sampler rng(seed);
  for (std::size_t i = 0; i < item.samples; ++i) {
    const auto pt = sample_point(domain, rng);
    const Binding src = point_binding(pt);
    ++rep.cases;
    try {
      const int a = compare_sides(source.lhs, source.rhs, [&](Precision) { return src; }, prec);
      const int b = compare_sides(
          dest.lhs, dest.rhs,
          [&](Precision p) {
            Binding out;
            for (const auto& [name, e] : map) out.emplace(name, eval_interval(e, src, p));
            return out;
          },
          prec);
      if (a <= 0 || b <= 0) {
        ++rep.failures;
        rep.details.push_back("disagreement at " + describe(pt));
      }
    } catch (const Error& e) {
      ++rep.failures;
      rep.details.push_back(describe(pt) + ": " + e.what());
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// artanh series

namespace {

using boost::multiprecision::cpp_rational;
using Series = std::vector<cpp_rational>;

/// exp(s) truncated to s.size() terms; needs s[0] == 0. From E' = s' E.
Series series_exp(const Series& s) {
  const std::size_t n = s.size();
  Series e(n);
  e[0] = 1;
  for (std::size_t m = 1; m < n; ++m) {
    cpp_rational acc = 0;
    for (std::size_t k = 1; k <= m; ++k) acc += cpp_rational(static_cast<long>(k)) * s[k] * e[m - k];
    e[m] = acc / static_cast<long>(m);
  }
  return e;
}

}  // namespace

CheckReport series_check(int terms) {
  CheckReport rep;
  rep.name = "artanh series";
  if (terms < 0) throw Error("series_check needs terms >= 0");
  const std::size_t degree = 2 * static_cast<std::size_t>(terms) + 1;

  // Candidate coefficients 1/(2k+1) on odd powers.
  Series a(degree + 1, cpp_rational(0));
  for (int k = 0; k <= terms; ++k) a[2 * k + 1] = cpp_rational(1, 2 * k + 1);

  // tanh(a(t)) = t  <=>  sinh(a) = t cosh(a)  <=>  E - 1/E = t (E + 1/E)
  Series minus(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) minus[i] = -a[i];
  const Series ep = series_exp(a);
  const Series em = series_exp(minus);
  for (std::size_t m = 0; m <= degree; ++m) {
    const cpp_rational sinh2 = ep[m] - em[m];
    const cpp_rational cosh2_shift = m == 0 ? cpp_rational(0) : ep[m - 1] + em[m - 1];
    ++rep.cases;
    if (sinh2 != cosh2_shift) {
      ++rep.failures;
      rep.details.push_back("coefficient of t^" + std::to_string(m) + " breaks tanh(artanh t) = t");
    }
  }
  for (int k = 0; k <= terms; ++k) {
    ++rep.cases;
    if (a[2 * k + 1] <= 0) {
      ++rep.failures;
      rep.details.push_back("negative coefficient at k=" + std::to_string(k));
    }
  }

  // artanh(1/2) lies in the partial sum plus [0, tail], with
  // tail <= t^(2K+3) / ((2K+3)(1 - t^2)).
  const Precision prec = 128;
  const Interval t = Interval::from_decimal("0.5", prec);
  Interval sum = Interval::from_int(0, prec);
  for (int k = 0; k <= terms; ++k) {
    sum = add(sum, div(pow_int(t, 2 * k + 1, prec), Interval::from_int(2 * k + 1, prec), prec), prec);
  }
  const Interval tail_hi = div(pow_int(t, 2 * terms + 3, prec),
                               mul(Interval::from_int(2 * terms + 3, prec),
                                   sub(Interval::from_int(1, prec), pow_int(t, 2, prec), prec), prec),
                               prec);
  const Interval bracket(sum.lo(), add(sum, Interval::point(tail_hi.hi()), prec).hi());
  ++rep.cases;
  if (!bracket.contains(fn_eval(Fn::Artanh, t, prec))) {
    ++rep.failures;
    rep.details.push_back("artanh(0.5) outside partial sum plus tail bound");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Equivalent forms

CheckReport metamorphic_equivalence_check(std::size_t n, Precision prec, std::uint64_t seed) {
  CheckReport rep;
  rep.name = "equivalent forms";
  if (n < 1) throw Error("metamorphic_equivalence_check needs n >= 1");
  const auto items = builtin_items();
  auto form = [&](std::string_view id) {
    const CorpusItem& it = find_item(items, id);
    return parse_statement(it.certify, parse_domain_spec(it.certify_domain));
  };
  const InequalityStatement f1 = form("T1");
  const InequalityStatement f2 = form("T2");
  const InequalityStatement f3 = form("T3");
  const Expr identity = parse("exp(c*arcosh(1/sqrt(1 - c^2)))");
  const Expr t_of_u = parse("cosh(u)");
  const Expr c_of_u = parse("tanh(u)");

  Sampler rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.open_closed(0, 10);
    const std::vector<std::pair<std::string, double>> pt{{"u", u}};
    const Binding bu = point_binding(pt);
    ++rep.cases;
    try {
      const Binding bt{{"t", eval_interval(t_of_u, bu, prec)}};
      const Binding bc{{"c", eval_interval(c_of_u, bu, prec)}};
      const Interval l1 = eval_interval(f1.lhs, bt, prec);
      const Interval r1 = eval_interval(f1.rhs, bt, prec);
      const Interval l2 = eval_interval(f2.lhs, bc, prec);
      const Interval r2 = eval_interval(f2.rhs, bc, prec);
      const Interval l3 = eval_interval(f3.lhs, bu, prec);
      const Interval r3 = eval_interval(f3.rhs, bu, prec);
      const Interval r2b = eval_interval(identity, bc, prec);
      const bool ok = l1.overlaps(l2) && l1.overlaps(l3) && l2.overlaps(l3) && r1.overlaps(r2) &&
                      r1.overlaps(r3) && r2.overlaps(r3) && r2.overlaps(r2b);
      if (!ok) {
        ++rep.failures;
        rep.details.push_back("enclosures disjoint at " + describe(pt));
      }
    } catch (const Error& e) {
      ++rep.failures;
      rep.details.push_back(describe(pt) + ": " + e.what());
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Behaviour at infinity

CheckReport limit_behavior_check(Precision prec) {
  CheckReport rep;
  rep.name = "ratio limit";
  const Expr f = parse(kRatioExpression);
  const Expr lower = parse("exp((tanh(u) - 1)*ln(2))");
  const Expr one = parse("1");
  const std::vector<std::pair<std::string, std::string>> points = {
      {"5", "7e-5"}, {"10", "3e-9"}, {"20", "1e-17"}};

  std::optional<Interval> previous_gap;
  for (const auto& [u, tol] : points) {
    const Binding b{{"u", Interval::from_decimal(u, prec)}};
    ++rep.cases;
    // 2^(tanh u - 1) < f(u) < 1, escalating precision as the gaps shrink.
    const int below = compare_sides(lower, f, [&](Precision) { return b; }, prec);
    const int above = compare_sides(f, one, [&](Precision) { return b; }, prec);
    if (below <= 0 || above <= 0) {
      ++rep.failures;
      rep.details.push_back("f(" + u + ") not enclosed in (2^(tanh u - 1), 1)");
    }
    const Interval gap = sub(Interval::from_int(1, prec), eval_interval(lower, b, prec), prec);
    ++rep.cases;
    if (!(gap.hi() <= Scalar::from_decimal(tol, prec, Round::Down))) {
      ++rep.failures;
      rep.details.push_back("1 - 2^(tanh " + u + " - 1) exceeds " + tol);
    }
    if (previous_gap) {
      ++rep.cases;
      const Interval ratio = div(*previous_gap, gap, prec);
      if (!(Scalar::from_int(10, prec, Round::Down) <= ratio.lo())) {
        ++rep.failures;
        rep.details.push_back("gap at u=" + u + " did not shrink tenfold");
      }
    }
    previous_gap = gap;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Axioms

CheckReport axiom_check(std::size_t samples, Precision prec, std::uint64_t seed) {
  CheckReport rep;
  rep.name = "axiom ledger";
  for (const auto& ax : axiom_ledger()) {
    const Expr lhs = parse(ax.lhs);
    const Expr rhs = parse(ax.rhs);
    const Box domain = parse_domain_spec(ax.domain);
    Sampler rng(seed ^ std::hash<std::string>{}(ax.name));
    std::size_t failed = 0;
    for (std::size_t i = 0; i < samples; ++i) {
      const auto pt = sample_point(domain, rng);
      const Binding b = point_binding(pt);
      ++rep.cases;
      try {
        if (compare_sides(lhs, rhs, [&](Precision) { return b; }, prec, !ax.strict) <= 0) {
          ++failed;
          if (failed <= 3) rep.details.push_back(ax.name + " fails at " + describe(pt));
        }
      } catch (const Error& e) {
        ++failed;
        if (failed <= 3) rep.details.push_back(ax.name + " at " + describe(pt) + ": " + e.what());
      }
    }
    rep.failures += failed;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Running items

namespace {

std::string check_line(const CheckReport& r) {
  std::string s = r.name + ": " + std::to_string(r.cases - r.failures) + "/" +
                  std::to_string(r.cases) + (r.passed() ? " passed" : " FAILED");
  for (std::size_t i = 0; i < r.details.size() && i < 5; ++i) s += "\n    " + r.details[i];
  return s;
}

}  // namespace

ItemReport run_item(const CorpusItem& item, const std::vector<CorpusItem>& items,
                    const RunOptions& opts) {
  ItemReport rep;
  rep.id = item.id;
  bool ok = true;
  auto record = [&](const CheckReport& r) {
    ok = ok && r.passed();
    rep.lines.push_back(check_line(r));
  };

  for (Plan plan : item.plans) {
    switch (plan) {
      case Plan::Certify: {
        const InequalityStatement stmt =
            parse_statement(item.certify, parse_domain_spec(item.certify_domain));
        const Certificate cert = verify_strict(stmt, opts.config);
        const bool valid = cert.status == Status::Proved && certificate_validate(cert, stmt);
        ok = ok && valid;
        rep.lines.push_back("certify " + item.certify_domain + ": " +
                            std::string(status_name(cert.status)) + ", " +
                            std::to_string(cert.leaves.size()) + " leaves" +
                            (valid ? ", certificate validates" : ""));
        rep.artifacts.emplace_back(item.id + ".cert", serialize(cert));
        break;
      }
      case Plan::Property:
        record(property_check(item, opts.seed, opts.property_precision));
        if (!item.reduce_to.empty()) {
          record(reduction_check(item, items, opts.seed, opts.property_precision));
        }
        break;
      case Plan::Series:
        record(series_check(static_cast<int>(item.samples)));
        break;
      case Plan::Metamorphic:
        record(metamorphic_equivalence_check(item.samples, 128, opts.seed));
        break;
      case Plan::Limit:
        record(limit_behavior_check(128));
        break;
      case Plan::Axioms:
        record(axiom_check(item.samples, 170, opts.seed));
        break;
      case Plan::Composite: {
        CompositeResult r;
        if (item.id == "T3-full") {
          r = verify_three_full_line(opts.config);
        } else if (item.id == "infimum-full") {
          r = infimum_claim_full_line(opts.config);
        } else {
          throw Error("no composite named '" + item.id + "'");
        }
        const std::string text = serialize(r);
        const bool valid = r.status == Status::Proved && composite_validate(parse_composite(text));
        ok = ok && valid;
        for (const auto& t : r.tails) {
          rep.lines.push_back(t.name + " " + t.covers + ": " + std::string(status_name(t.status)));
        }
        if (r.compact) {
          rep.lines.push_back("compact " + r.compact->domain.name(0) + "=" +
                              r.compact->domain[0].to_decimal(6) + ": " +
                              std::string(status_name(r.compact->status)) + ", " +
                              std::to_string(r.compact->leaves.size()) + " leaves");
        }
        if (r.minimum) {
          rep.lines.push_back("minimum on " + r.minimum->domain.to_decimal(6) + ": inf in " +
                              r.minimum->inf_enclosure.to_decimal(12));
        }
        for (const auto& f : r.failing) rep.lines.push_back("failing: " + f);
        rep.lines.push_back(r.claim + ": " + std::string(status_name(r.status)) +
                            (valid ? ", certificate validates" : ""));
        rep.artifacts.emplace_back(item.id + ".cert", text);
        break;
      }
    }
  }
  rep.passed = ok;
  return rep;
}

}  // namespace hypcert
