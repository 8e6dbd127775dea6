// Tail reductions: closed-form hypothesis checks covering the parts of the
// half-line where the inequality becomes tight.
//
// near-zero (0, delta]:
//   cosh z <= exp(z^2/2), and arcosh(2 cosh u) <= A(u) = arcosh 2 + (2 cosh u - 2)/sqrt(3)
//   by concavity, so LHS <= exp(tanh(u)^2 A(u)^2 / 2). With tanh u < u and A
//   increasing, A(delta)^2 < 2 gives LHS < exp(u tanh u).
//
// infinity [u0, inf):
//   write LHS = e^z (1 + e^-2z)/2 with z = tanh(u) arcosh(2 cosh u). The upper
//   bound arcosh(2 cosh u) <= u + ln 2 + e^-2u, the lower bound
//   z >= tanh(u)(u + ln 2), ln(1+y) <= y and 1 - tanh u >= 2e^-2u (1 - e^-2u)
//   reduce the claim to 2 ln 2 (1 - e^-2u) > tanh u + 2^(-2 tanh u) e^(4u e^-2u),
//   whose left side increases and right side (with tanh u <= 1) decreases for
//   u >= 1/2. Checking it at u0 covers [u0, inf).

#include <utility>

#include "hypcert/corpus.hpp"
#include "hypcert/error.hpp"

namespace hypcert {

namespace {

constexpr std::string_view kRatioBound = "0.972";

std::pair<Interval, Interval> closed_sides(const std::string& text, Precision prec) {
  const std::size_t lt = text.find('<');
  if (lt == std::string::npos) throw Error("closed statement without '<': " + text);
  const Binding none;
  return {eval_interval(parse(text.substr(0, lt)), none, prec),
          eval_interval(parse(text.substr(lt + 1)), none, prec)};
}

void run_check(TailReduction& t, Precision prec) {
  t.precision = prec;
  auto [lhs, rhs] = closed_sides(t.hypothesis, prec);
  t.status = lhs.hi() < rhs.lo() ? Status::Proved : Status::Undetermined;
  t.lhs = std::move(lhs);
  t.rhs = std::move(rhs);
}

Interval literal(std::string_view text) { return Interval::from_decimal(text, 128); }

}  // namespace

std::string tail_hypothesis(std::string_view name, std::string_view parameter) {
  const std::string p(parameter);
  if (name == "near-zero") return "(arcosh(2) + 2*(cosh(" + p + ") - 1)/sqrt(3))^2 < 2";
  if (name == "infinity") {
    return "1 + exp(-2*tanh(" + p + ")*ln(2))*exp(4*" + p + "*exp(-2*" + p + ")) < 2*ln(2)*(1 - exp(-2*" +
           p + "))";
  }
  if (name == "ratio-near-zero") return std::string(kRatioBound) + " < exp(-" + p + "^2)";
  if (name == "ratio-infinity") {
    return std::string(kRatioBound) + " < exp((tanh(" + p + ") - 1)*ln(2))";
  }
  if (name == "ratio-origin") {
    return std::string(kRatioBound) + " < " +
           render(substitute(parse(kRatioExpression), "u", Expr::constant(p)));
  }
  throw Error("unknown tail reduction '" + std::string(name) + "'");
}

TailReduction check_tail(std::string_view name, std::string_view parameter, std::string covers,
                         std::vector<std::string> axioms, std::string conclusion,
                         Precision prec) {
  TailReduction t;
  t.name = std::string(name);
  t.parameter = std::string(parameter);
  t.covers = std::move(covers);
  t.hypothesis = tail_hypothesis(name, parameter);
  t.axioms = std::move(axioms);
  t.conclusion = std::move(conclusion);
  run_check(t, prec);
  return t;
}

TailReduction verify_near_zero_reduction(std::string_view delta, Precision prec) {
  if (literal(delta).lo().sign() <= 0) throw Error("near-zero reduction needs delta > 0");
  return check_tail("near-zero", delta, "(0, " + std::string(delta) + "]",
                    {
      "cosh z <= exp(z^2/2) for real z: termwise comparison of the even power series, "
      "(2k)! >= 2^k k!",
      "arcosh y <= arcosh 2 + (y - 2)/sqrt(3) for y >= 1: arcosh is concave with slope "
      "1/sqrt(3) at 2",
      "tanh u < u for u > 0: the derivative 1 - tanh^2 u is below 1",
      "A(u) = arcosh 2 + 2(cosh u - 1)/sqrt(3) increases on u > 0: cosh increases there",
                    },
                    std::string(kMainStatement) + " for all u in (0, " + std::string(delta) + "]",
                    prec);
}

TailReduction verify_infinity_reduction(std::string_view u0, Precision prec) {
  if (literal(u0).lo() < literal("1").lo()) throw Error("infinity reduction needs u0 >= 1");
  return check_tail("infinity", u0, "[" + std::string(u0) + ", inf)",
                    {
      "arcosh(2 cosh u) <= u + ln 2 + exp(-2u): arcosh y <= ln(2y) and ln(1 + e^-2u) <= e^-2u",
      "cosh z = e^z (1 + e^-2z)/2 with z >= tanh(u)(u + ln 2), from arcosh(2 cosh u) > u + ln 2",
      "ln(1 + y) <= y for y >= 0: ln is concave with slope 1 at 1",
      "1 - tanh u = 2/(e^2u + 1) >= 2 e^-2u (1 - e^-2u): 1/(1 + x) >= 1 - x for x >= 0",
      "u exp(-2u) decreases for u >= 1/2: its derivative is (1 - 2u) exp(-2u)",
      "tanh increases, so 2^(-2 tanh u) decreases and tanh u <= 1",
                    },
                    std::string(kMainStatement) + " for all u in [" + std::string(u0) + ", inf)",
                    prec);
}

bool tail_validate(const TailReduction& t) {
  try {
    if (t.hypothesis != tail_hypothesis(t.name, t.parameter)) return false;
    if (t.precision < MPFR_PREC_MIN || t.precision > (1 << 16)) return false;
    auto [lhs, rhs] = closed_sides(t.hypothesis, t.precision);
    return t.status == Status::Proved && lhs.hi() < rhs.lo();
  } catch (const Error&) {
    return false;
  }
}

const std::vector<Axiom>& axiom_ledger() {
  static const std::vector<Axiom> kAxioms = {
      {"cosh-gaussian", "cosh(z)", "exp(z^2/2)", false, "z=0:10",
       "termwise comparison of the even power series, (2k)! >= 2^k k!"},
      {"tanh-below-identity", "tanh(u)", "u", true, "u=0:20",
       "tanh(0) = 0 and the derivative 1 - tanh^2 u is below 1"},
      {"sinh-above-identity", "u", "sinh(u)", true, "u=0:20",
       "sinh(0) = 0 and the derivative cosh u exceeds 1"},
      {"log1p-below-identity", "ln(1 + y)", "y", false, "y=0:10",
       "ln is concave with tangent y at 1 + y = 1"},
      {"arcosh-tangent-at-2", "arcosh(y)", "arcosh(2) + (y - 2)/sqrt(3)", false, "y=1:50",
       "arcosh is concave and its derivative at 2 is 1/sqrt(3)"},
      {"u-exp-decreasing", "(u + h)*exp(-2*(u + h))", "u*exp(-2*u)", true, "u=0.5:20 h=0:5",
       "the derivative of u exp(-2u) is (1 - 2u) exp(-2u) <= 0 for u >= 1/2"},
      {"arcosh-2cosh-upper", "arcosh(2*cosh(u))", "u + ln(2) + exp(-2*u)", false, "u=0:20",
       "arcosh y <= ln(2y) for y >= 1 and ln(1 + e^-2u) <= e^-2u"},
      {"arcosh-2cosh-lower", "ln(2) + u", "arcosh(2*cosh(u))", true, "u=0:20",
       "sqrt(4 cosh^2 u - 1) > 2 sinh u, so arcosh(2 cosh u) > ln(2 cosh u + 2 sinh u)"},
      {"one-minus-tanh", "2*exp(-2*u)*(1 - exp(-2*u))", "1 - tanh(u)", false, "u=0:20",
       "1 - tanh u = 2/(e^2u + 1) and 1/(1 + x) >= 1 - x"},
      {"cosh-above-half-exp", "exp(z)/2", "cosh(z)", true, "z=-20:20",
       "cosh z - e^z/2 = e^-z/2 > 0"},
  };
  return kAxioms;
}

}  // namespace hypcert
