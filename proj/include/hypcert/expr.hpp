#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>

#include "hypcert/interval.hpp"

namespace hypcert {

class Expr;

namespace node {
/// Decimal literal, kept as text so each evaluation encloses it at the
/// requested precision.
struct Constant {
  std::string literal;
};
struct Variable {
  std::string name;
};
struct Negate {
  std::shared_ptr<const Expr> child;
};
struct Call {
  Fn fn;
  std::shared_ptr<const Expr> arg;
};
struct Binary {
  ArithOp op;
  std::shared_ptr<const Expr> left;
  std::shared_ptr<const Expr> right;
};
struct Power {
  std::shared_ptr<const Expr> base;
  long exponent;
};
}  // namespace node

/// Immutable expression tree over the function vocabulary of Fn.
class Expr {
 public:
  using Node = std::variant<node::Constant, node::Variable, node::Negate, node::Call,
                            node::Binary, node::Power>;

  static Expr constant(std::string literal);
  static Expr variable(std::string name);
  static Expr negate(Expr child);
  static Expr call(Fn fn, Expr arg);
  static Expr binary(ArithOp op, Expr left, Expr right);
  static Expr power(Expr base, long exponent);

  const Node& node() const { return *node_; }

  std::set<std::string> free_variables() const;

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

using Binding = std::map<std::string, Interval, std::less<>>;

/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := atom ('^' integer)?
///   atom   := number | name | name '(' expr ')' | '(' expr ')' | '-' factor
/// Throws SyntaxError (with byte offset), UnknownFunction, NonIntegerExponent.
Expr parse(std::string_view text);

/// Canonical text; parse(render(e)) has the same tree.
std::string render(const Expr& e);

/// Enclosure of the image of the binding box under e.
/// Throws UnboundVariable, DomainViolation (with node path), OverflowRange,
/// DivisionByIntervalContainingZero.
Interval eval_interval(const Expr& e, const Binding& b, Precision prec);

/// Point evaluation; the binding's intervals are expected to be degenerate.
Interval eval_point(const Expr& e, const Binding& b, Precision prec);

/// Replaces every occurrence of variable `var` with `replacement`.
Expr substitute(const Expr& e, std::string_view var, const Expr& replacement);

}  // namespace hypcert
