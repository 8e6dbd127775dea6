#include "hypcert/expr.hpp"

#include <cctype>
#include <charconv>

#include "hypcert/error.hpp"

namespace hypcert {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    Expr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Expr expr() {
    Expr left = term();
    for (;;) {
      if (accept('+')) {
        left = Expr::binary(ArithOp::Add, left, term());
      } else if (accept('-')) {
        left = Expr::binary(ArithOp::Sub, left, term());
      } else {
        return left;
      }
    }
  }

  Expr term() {
    Expr left = factor();
    for (;;) {
      if (accept('*')) {
        left = Expr::binary(ArithOp::Mul, left, factor());
      } else if (accept('/')) {
        left = Expr::binary(ArithOp::Div, left, factor());
      } else {
        return left;
      }
    }
  }

  Expr factor() {
    Expr base = atom();
    if (!accept('^')) return base;
    skip_space();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const bool trailing_fraction =
        pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E');
    if (pos_ == digits || trailing_fraction) {
      throw NonIntegerExponent("exponent must be an integer literal", start);
    }
    long n = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, n);
    if (ec != std::errc{}) throw NonIntegerExponent("exponent out of range", start);
    return Expr::power(base, n);
  }

  Expr atom() {
    const char c = peek();
    if (c == '-') {
      ++pos_;
      return Expr::negate(factor());
    }
    if (c == '(') {
      ++pos_;
      Expr inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name();
    if (c == '\0') fail("unexpected end of input");
    fail(std::string("unexpected '") + c + "'");
  }

  Expr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t from = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return pos_ - from;
    };
    std::size_t count = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      count += digits();
    }
    if (count == 0) fail("malformed number");
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) fail("malformed exponent in number");
    }
    return Expr::constant(std::string(text_.substr(start, pos_ - start)));
  }

  Expr name() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    std::string id(text_.substr(start, pos_ - start));
    if (peek() != '(') return Expr::variable(std::move(id));
    Fn fn{};
    if (!fn_from_name(id, fn)) throw UnknownFunction(id, start);
    ++pos_;
    Expr arg = expr();
    if (!accept(')')) fail("expected ')'");
    return Expr::call(fn, arg);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

bool is_sum(const Expr& e) {
  const auto* b = std::get_if<node::Binary>(&e.node());
  return b != nullptr && (b->op == ArithOp::Add || b->op == ArithOp::Sub);
}

bool is_binary(const Expr& e) { return std::holds_alternative<node::Binary>(e.node()); }

bool is_atom(const Expr& e) {
  return std::holds_alternative<node::Constant>(e.node()) ||
         std::holds_alternative<node::Variable>(e.node()) ||
         std::holds_alternative<node::Call>(e.node());
}

std::string paren(const std::string& s) { return "(" + s + ")"; }

std::string render_node(const Expr& e) {
  return std::visit(
      Overloaded{
          [](const node::Constant& c) { return c.literal; },
          [](const node::Variable& v) { return v.name; },
          [](const node::Negate& n) {
            const std::string inner = render_node(*n.child);
            return "-" + (is_binary(*n.child) ? paren(inner) : inner);
          },
          [](const node::Call& c) {
            return std::string(fn_name(c.fn)) + "(" + render_node(*c.arg) + ")";
          },
          [](const node::Power& p) {
            const std::string base = render_node(*p.base);
            return (is_atom(*p.base) ? base : paren(base)) + "^" + std::to_string(p.exponent);
          },
          [](const node::Binary& b) {
            std::string l = render_node(*b.left);
            std::string r = render_node(*b.right);
            switch (b.op) {
              case ArithOp::Add:
              case ArithOp::Sub:
                if (is_sum(*b.right)) r = paren(r);
                return l + (b.op == ArithOp::Add ? " + " : " - ") + r;
              case ArithOp::Mul:
              case ArithOp::Div:
                if (is_sum(*b.left)) l = paren(l);
                if (is_binary(*b.right)) r = paren(r);
                return l + (b.op == ArithOp::Mul ? "*" : "/") + r;
            }
            return std::string();
          },
      },
      e.node());
}

// Child evaluation that extends the node path of a DomainViolation.
template <class F>
Interval step(std::string_view label, F&& f) {
  try {
    return f();
  } catch (const DomainViolation& dv) {
    throw dv.at("/" + std::string(label) + dv.path());
  }
}

Interval eval_node(const Expr& e, const Binding& b, Precision prec) {
  auto here = [&](const std::string& function, const std::string& detail) {
    return DomainViolation(function, detail, " in " + render_node(e));
  };
  return std::visit(
      Overloaded{
          [&](const node::Constant& c) { return Interval::from_decimal(c.literal, prec); },
          [&](const node::Variable& v) {
            const auto it = b.find(v.name);
            if (it == b.end()) throw UnboundVariable(v.name);
            return it->second;
          },
          [&](const node::Negate& n) {
            return neg(step("child", [&] { return eval_node(*n.child, b, prec); }));
          },
          [&](const node::Call& c) {
            Interval arg = step("arg", [&] { return eval_node(*c.arg, b, prec); });
            try {
              return fn_eval(c.fn, arg, prec);
            } catch (const DomainViolation& dv) {
              throw here(dv.function(), dv.detail());
            }
          },
          [&](const node::Power& p) {
            Interval base = step("base", [&] { return eval_node(*p.base, b, prec); });
            try {
              return pow_int(base, p.exponent, prec);
            } catch (const DivisionByIntervalContainingZero& err) {
              throw here("^", err.what());
            }
          },
          [&](const node::Binary& bin) {
            Interval l = step("left", [&] { return eval_node(*bin.left, b, prec); });
            Interval r = step("right", [&] { return eval_node(*bin.right, b, prec); });
            try {
              return arith(bin.op, l, r, prec);
            } catch (const DivisionByIntervalContainingZero& err) {
              throw here("/", err.what());
            }
          },
      },
      e.node());
}

void collect_variables(const Expr& e, std::set<std::string>& out) {
  std::visit(Overloaded{
                 [](const node::Constant&) {},
                 [&](const node::Variable& v) { out.insert(v.name); },
                 [&](const node::Negate& n) { collect_variables(*n.child, out); },
                 [&](const node::Call& c) { collect_variables(*c.arg, out); },
                 [&](const node::Power& p) { collect_variables(*p.base, out); },
                 [&](const node::Binary& b) {
                   collect_variables(*b.left, out);
                   collect_variables(*b.right, out);
                 },
             },
             e.node());
}

}  // namespace

Expr Expr::constant(std::string literal) {
  return Expr(std::make_shared<const Node>(node::Constant{std::move(literal)}));
}

Expr Expr::variable(std::string name) {
  return Expr(std::make_shared<const Node>(node::Variable{std::move(name)}));
}

Expr Expr::negate(Expr child) {
  return Expr(std::make_shared<const Node>(node::Negate{std::make_shared<const Expr>(child)}));
}

Expr Expr::call(Fn fn, Expr arg) {
  return Expr(
      std::make_shared<const Node>(node::Call{fn, std::make_shared<const Expr>(std::move(arg))}));
}

Expr Expr::binary(ArithOp op, Expr left, Expr right) {
  return Expr(std::make_shared<const Node>(
      node::Binary{op, std::make_shared<const Expr>(std::move(left)),
                   std::make_shared<const Expr>(std::move(right))}));
}

Expr Expr::power(Expr base, long exponent) {
  return Expr(std::make_shared<const Node>(
      node::Power{std::make_shared<const Expr>(std::move(base)), exponent}));
}

std::set<std::string> Expr::free_variables() const {
  std::set<std::string> out;
  collect_variables(*this, out);
  return out;
}

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

std::string render(const Expr& e) { return render_node(e); }

Interval eval_interval(const Expr& e, const Binding& b, Precision prec) {
  try {
    return eval_node(e, b, prec);
  } catch (const DomainViolation& dv) {
    if (dv.path().starts_with(" in ")) throw dv.at("root" + dv.path());
    throw;
  }
}

Interval eval_point(const Expr& e, const Binding& b, Precision prec) {
  for (const auto& [name, value] : b) {
    if (!value.is_point()) throw Error("eval_point: binding for '" + name + "' is not a point");
  }
  return eval_interval(e, b, prec);
}

Expr substitute(const Expr& e, std::string_view var, const Expr& replacement) {
  return std::visit(
      Overloaded{
          [&](const node::Constant&) { return e; },
          [&](const node::Variable& v) { return v.name == var ? replacement : e; },
          [&](const node::Negate& n) {
            return Expr::negate(substitute(*n.child, var, replacement));
          },
          [&](const node::Call& c) { return Expr::call(c.fn, substitute(*c.arg, var, replacement)); },
          [&](const node::Power& p) {
            return Expr::power(substitute(*p.base, var, replacement), p.exponent);
          },
          [&](const node::Binary& b) {
            return Expr::binary(b.op, substitute(*b.left, var, replacement),
                                substitute(*b.right, var, replacement));
          },
      },
      e.node());
}

}  // namespace hypcert
