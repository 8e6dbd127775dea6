#include "hypcert/prover.hpp"

#include <algorithm>
#include <cmath>

#include "hypcert/error.hpp"
#include "parallel.hpp"

namespace hypcert {

Box::Box(std::vector<Dim> dims) : dims_(std::move(dims)) {
  if (dims_.empty() || dims_.size() > 2) throw Error("box must have 1 or 2 dimensions");
  if (dims_.size() == 2 && dims_[0].first == dims_[1].first) {
    throw Error("box repeats variable '" + dims_[0].first + "'");
  }
}

Binding Box::binding() const {
  Binding b;
  for (const auto& [name, range] : dims_) b.emplace(name, range);
  return b;
}

std::size_t Box::widest() const {
  std::size_t best = 0;
  Scalar best_width = dims_[0].second.width();
  for (std::size_t i = 1; i < dims_.size(); ++i) {
    Scalar w = dims_[i].second.width();
    if (best_width < w) {
      best = i;
      best_width = std::move(w);
    }
  }
  return best;
}

Scalar Box::max_width() const { return dims_[widest()].second.width(); }

std::pair<Box, Box> Box::split(std::size_t dim) const {
  auto [left, right] = bisect(dims_[dim].second);
  Box a = *this;
  Box b = *this;
  a.dims_[dim].second = std::move(left);
  b.dims_[dim].second = std::move(right);
  return {std::move(a), std::move(b)};
}

bool Box::contains(const Box& other) const {
  if (other.size() != size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (name(i) != other.name(i) || !(*this)[i].contains(other[i])) return false;
  }
  return true;
}

bool lex_less(const Box& a, const Box& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i].lo() < b[i].lo()) return true;
    if (b[i].lo() < a[i].lo()) return false;
  }
  return a.size() < b.size();
}

std::string InequalityStatement::text() const { return render(lhs) + " < " + render(rhs); }

namespace {

Expr parse_side(std::string_view text, std::size_t base) {
  try {
    return parse(text);
  } catch (const UnknownFunction& e) {
    throw UnknownFunction(e.name(), e.offset() + base);
  } catch (const NonIntegerExponent& e) {
    throw NonIntegerExponent(e.message(), e.offset() + base);
  } catch (const SyntaxError& e) {
    throw SyntaxError(e.message(), e.offset() + base);
  }
}

}  // namespace

InequalityStatement parse_statement(std::string_view text, Box domain) {
  const std::size_t lt = text.find('<');
  if (lt == std::string_view::npos) throw SyntaxError("expected '<' in statement", text.size());
  if (text.find('<', lt + 1) != std::string_view::npos) {
    throw SyntaxError("statement has more than one '<'", text.find('<', lt + 1));
  }
  InequalityStatement stmt{parse_side(text.substr(0, lt), 0),
                           parse_side(text.substr(lt + 1), lt + 1), std::move(domain)};
  std::set<std::string> vars = stmt.lhs.free_variables();
  vars.merge(stmt.rhs.free_variables());
  for (const auto& v : vars) {
    const auto& dims = stmt.domain.dims();
    if (std::none_of(dims.begin(), dims.end(), [&](const Box::Dim& d) { return d.first == v; })) {
      throw UnboundVariable(v);
    }
  }
  return stmt;
}

Box::Dim parse_range(std::string_view spec, Precision prec) {
  const std::size_t eq = spec.find('=');
  const std::size_t colon = spec.find(':', eq == std::string_view::npos ? 0 : eq);
  if (eq == std::string_view::npos || colon == std::string_view::npos || eq == 0) {
    throw Error("range must look like name=lo:hi, got '" + std::string(spec) + "'");
  }
  std::string name(spec.substr(0, eq));
  Interval lo = Interval::from_decimal(spec.substr(eq + 1, colon - eq - 1), prec);
  Interval hi = Interval::from_decimal(spec.substr(colon + 1), prec);
  if (hi.hi() < lo.lo()) throw Error("range '" + std::string(spec) + "' has lo > hi");
  return {std::move(name), Interval(lo.lo(), hi.hi())};
}

void ProverConfig::validate() const {
  if (start_precision < MPFR_PREC_MIN || max_precision < start_precision) {
    throw Error("precision schedule must satisfy 2 <= start <= max");
  }
  if (escalation_factor < 2) throw Error("escalation factor must be at least 2");
  if (max_depth < 1) throw Error("max depth must be at least 1");
  if (leaf_budget < 1) throw Error("leaf budget must be positive");
}

BoxCheck check_box(const InequalityStatement& stmt, const Box& box, Precision prec) {
  const Binding b = box.binding();
  Interval lhs = eval_interval(stmt.lhs, b, prec);
  Interval rhs = eval_interval(stmt.rhs, b, prec);
  const BoxVerdict v = lhs.hi() < rhs.lo() ? BoxVerdict::Proved : BoxVerdict::Unknown;
  return {v, std::move(lhs), std::move(rhs)};
}

std::string_view status_name(Status s) { return s == Status::Proved ? "proved" : "undetermined"; }

namespace {

struct Pending {
  Box box;
  int depth;
};

struct Outcome {
  bool proved = false;
  std::optional<Leaf> leaf;
};

// Evaluates one box, escalating precision while the box is narrow for its
// depth (looseness then comes from rounding rather than dependency).
Outcome examine(const InequalityStatement& stmt, const Pending& p, const ProverConfig& cfg) {
  Precision prec = cfg.start_precision;
  const double narrow = std::exp2(-p.depth / 2.0);
  for (;;) {
    BoxCheck c = check_box(stmt, p.box, prec);
    if (c.verdict == BoxVerdict::Proved) {
      return {true, Leaf{p.box, c.lhs.hi(), c.rhs.lo(), p.depth, prec}};
    }
    const Precision escalated = prec * cfg.escalation_factor;
    if (cfg.escalation_factor < 2 || escalated > cfg.max_precision ||
        !(p.box.max_width().to_double(Round::Up) < narrow)) {
      return {};
    }
    prec = escalated;
  }
}

}  // namespace

Certificate verify_strict(const InequalityStatement& stmt, const ProverConfig& cfg) {
  cfg.validate();
  if (stmt.domain.size() == 0) throw Error("statement has no domain");
  Certificate cert;
  cert.statement_text = stmt.text();
  cert.statement_hash = sha256_hex(cert.statement_text);
  cert.domain = stmt.domain;
  cert.config = cfg;

  // Breadth-wise waves: every box of a wave is evaluated independently (in
  // parallel when threads > 1), then children are generated in wave order.
  std::vector<Pending> wave{{stmt.domain, 0}};
  while (!wave.empty()) {
    std::vector<Outcome> results(wave.size());
    detail::parallel_for(wave.size(), cfg.threads,
                         [&](std::size_t i) { results[i] = examine(stmt, wave[i], cfg); });
    cert.boxes_examined += wave.size();

    std::vector<std::size_t> splittable;
    for (std::size_t i = 0; i < wave.size(); ++i) {
      if (results[i].proved) {
        cert.leaves.push_back(std::move(*results[i].leaf));
      } else if (wave[i].depth >= cfg.max_depth || wave[i].box.max_width().is_zero()) {
        cert.frontier.push_back(wave[i].box);
      } else {
        splittable.push_back(i);
      }
    }
    if (cert.leaves.size() + cert.frontier.size() + 2 * splittable.size() > cfg.leaf_budget) {
      for (std::size_t i : splittable) cert.frontier.push_back(wave[i].box);
      break;
    }
    std::vector<Pending> next;
    next.reserve(2 * splittable.size());
    for (std::size_t i : splittable) {
      auto [a, b] = wave[i].box.split(wave[i].box.widest());
      next.push_back({std::move(a), wave[i].depth + 1});
      next.push_back({std::move(b), wave[i].depth + 1});
    }
    wave = std::move(next);
  }

  std::sort(cert.leaves.begin(), cert.leaves.end(),
            [](const Leaf& a, const Leaf& b) { return lex_less(a.box, b.box); });
  std::sort(cert.frontier.begin(), cert.frontier.end(), lex_less);
  cert.status = cert.frontier.empty() ? Status::Proved : Status::Undetermined;
  return cert;
}

InequalityStatement statement_of(const Certificate& cert) {
  return parse_statement(cert.statement_text, cert.domain);
}

}  // namespace hypcert
