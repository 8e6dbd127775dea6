#include <doctest.h>

#include "hypcert/corpus.hpp"
#include "hypcert/error.hpp"
#include "oracle.hpp"

using namespace hypcert;
using oracle::Real;

namespace {

const std::vector<CorpusItem>& items() {
  static const auto all = builtin_items();
  return all;
}

const CompositeResult& three_full() {
  static const CompositeResult r = verify_three_full_line(ProverConfig{});
  return r;
}

const CompositeResult& infimum_full() {
  static const CompositeResult r = infimum_claim_full_line(ProverConfig{});
  return r;
}

bool names(const CompositeResult& r, std::string_view what) {
  for (const auto& f : r.failing) {
    if (f.find(what) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("built-in items") {
  for (const char* id : {"L1", "L1S", "L2", "T1", "T2", "T3", "PS", "CH", "S3A", "T3-full",
                         "infimum-full", "EQUIV", "LIMIT", "AXIOMS"}) {
    const CorpusItem& it = find_item(items(), id);
    CHECK_FALSE(it.anchor.empty());
    CHECK_FALSE(it.plans.empty());
  }
  CHECK(find_item(items(), "T3").certify == kMainStatement);
  const InequalityStatement t2 =
      parse_statement(find_item(items(), "T2").certify, parse_domain_spec("c=0.3:0.99"));
  CHECK(render(t2.rhs) == "exp(c*artanh(c))");
  CHECK(find_item(items(), "L1").certify == "tanh(x)*tanh(y) < tanh(x*tanh(y))");
  CHECK(find_item(items(), "L2").reduce_to == "L1 x=arcosh(x) y=artanh(K)");
  CHECK(find_item(items(), "T3-full").parts == std::vector<std::string>{"near-zero", "T3", "infinity"});
  CHECK_THROWS_AS(find_item(items(), "no-such-id"), Error);

  // Every certify and property statement parses against its domain.
  for (const auto& it : items()) {
    if (it.has(Plan::Certify)) {
      CHECK_NOTHROW(parse_statement(it.certify, parse_domain_spec(it.certify_domain)));
    }
    if (it.has(Plan::Property)) {
      CHECK_NOTHROW(parse_statement(it.property, parse_domain_spec(it.property_domain)));
      CHECK(it.samples > 0);
    }
  }
}

TEST_CASE("corpus parsing errors") {
  CHECK_THROWS_AS(parse_corpus("anchor: x\n"), Error);
  CHECK_THROWS_AS(parse_corpus("[a]\nanchor: x\nplan: dance\n"), Error);
  CHECK_THROWS_AS(parse_corpus("[a]\nplan: certify\n"), Error);
  CHECK_THROWS_AS(parse_corpus("[a]\nanchor: x\nplan: composite\n"), Error);
  CHECK_THROWS_AS(parse_corpus("[a]\nanchor: x\nplan: limit\ncolour: red\n"), Error);
  CHECK_THROWS_AS(parse_corpus("[a]\nanchor: x\nplan: limit\n[a]\nanchor: y\nplan: limit\n"), Error);
  const auto parsed = parse_corpus("# comment\n\n[a]\nanchor: x\nplan: limit axioms\nsamples: 3\n");
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0].has(Plan::Axioms));
  CHECK(parsed[0].samples == 3);
}

TEST_CASE("near-zero reduction") {
  const TailReduction at03 = verify_near_zero_reduction("0.3", 64);
  CHECK(at03.status == Status::Proved);
  CHECK(oracle::encloses(*at03.lhs, Real("1.8750107075416384917534261970113036147165452818415")));
  CHECK(tail_validate(at03));
  CHECK(at03.axioms.size() == 4);

  const TailReduction at05 = verify_near_zero_reduction("0.5", 64);
  CHECK(at05.status == Status::Undetermined);
  CHECK(oracle::encloses(*at05.lhs, Real("2.1442555182739786225652763927552537685100529232069")));
  CHECK_FALSE(tail_validate(at05));

  const TailReduction tiny = verify_near_zero_reduction("1e-9", 64);
  CHECK(tiny.status == Status::Proved);
  CHECK(abs(oracle::to_real(tiny.lhs->hi()) - Real("1.7343781022726361504082581254584386470805789021765")) <
        Real("1e-15"));

  CHECK_THROWS_AS(verify_near_zero_reduction("0", 64), Error);
  CHECK_THROWS_AS(verify_near_zero_reduction("-0.1", 64), Error);
}

TEST_CASE("infinity reduction") {
  const TailReduction at3 = verify_infinity_reduction("3", 64);
  CHECK(at3.status == Status::Proved);
  CHECK(oracle::encloses(*at3.lhs, Real("1.259319660486519016897365628454465369780780393953")));
  CHECK(oracle::encloses(*at3.rhs, Real("1.3828580809547643912417940699090835860637849569346")));
  CHECK(tail_validate(at3));
  CHECK(at3.axioms.size() == 6);

  const TailReduction at1 = verify_infinity_reduction("1", 64);
  CHECK(at1.status == Status::Undetermined);
  CHECK(oracle::encloses(*at1.lhs, Real("1.5978277853228737514734733478203902023336363662138")));
  CHECK(oracle::encloses(*at1.rhs, Real("1.1986798211084111844634073427754247397879526568493")));

  const TailReduction at4 = verify_infinity_reduction("4", 64);
  const Interval m3 = sub(*at3.rhs, *at3.lhs, 64);
  const Interval m4 = sub(*at4.rhs, *at4.lhs, 64);
  CHECK(m3.hi() < m4.lo());

  CHECK_THROWS_AS(verify_infinity_reduction("0.9", 64), Error);
}

TEST_CASE("tampered tails are rejected") {
  TailReduction t = verify_near_zero_reduction("0.3", 64);
  t.parameter = "0.5";
  CHECK_FALSE(tail_validate(t));
  t = verify_near_zero_reduction("0.3", 64);
  t.hypothesis = "1 < 2";
  CHECK_FALSE(tail_validate(t));
  t = verify_near_zero_reduction("0.5", 64);
  t.status = Status::Proved;
  CHECK_FALSE(tail_validate(t));
}

TEST_CASE("main inequality on the whole half-line") {
  const CompositeResult& r = three_full();
  CHECK(r.status == Status::Proved);
  CHECK(r.failing.empty());
  CHECK(r.tails.size() == 2);
  REQUIRE(r.compact);
  CHECK(r.compact->status == Status::Proved);
  const std::string text = serialize(r);
  CHECK(composite_validate(parse_composite(text)));
  CHECK(serialize(parse_composite(text)) == text);
  // embeds the checked hypotheses
  CHECK(text.find("hypothesis: (arcosh(2) + 2*(cosh(0.3) - 1)/sqrt(3))^2 < 2") != std::string::npos);
  CHECK(text.find("hypothesis: 1 + exp(-2*tanh(3)*ln(2))") != std::string::npos);
  CHECK(text.find("part: compact " + sha256_hex(serialize(*r.compact))) != std::string::npos);
}

TEST_CASE("composite failures name the component") {
  ProverConfig starved;
  starved.leaf_budget = 10;
  const CompositeResult r = verify_three_full_line(starved);
  CHECK(r.status == Status::Undetermined);
  CHECK(names(r, "compact"));
  CHECK_FALSE(composite_validate(r));

  ProverConfig small;
  small.leaf_budget = 20000;
  const CompositeResult p =
      verify_three_full_line(small, "cosh(tanh(u)*arcosh(2.1*cosh(u))) < exp(u*tanh(u))");
  CHECK(p.status == Status::Undetermined);
  CHECK(names(p, "compact"));
  REQUIRE(p.compact);
  CHECK_FALSE(p.compact->frontier.empty());
  // The unresolved boxes include the right end of the core.
  CHECK(p.compact->frontier.back()[0].hi() == Scalar::from_double(3));
}

TEST_CASE("tampered composites are rejected") {
  const std::string text = serialize(three_full());
  SUBCASE("tail parameter") {
    CompositeResult t = parse_composite(text);
    t.tails[0].parameter = "0.5";
    CHECK_FALSE(composite_validate(t));
  }
  SUBCASE("coverage gap between tail and core") {
    CompositeResult t = parse_composite(text);
    t.tails[1].parameter = "4";
    t.tails[1].hypothesis = tail_hypothesis("infinity", "4");
    CHECK(tail_validate(t.tails[1]));
    CHECK_FALSE(composite_validate(t));
  }
  SUBCASE("embedded part") {
    std::string bad = text;
    const auto pos = bad.find("leaves: ");
    bad.replace(bad.find('\n', pos) + 1, 1, "9");
    bool rejected = false;
    try {
      rejected = !composite_validate(parse_composite(bad));
    } catch (const MalformedCertificate&) {
      rejected = true;
    }
    CHECK(rejected);
  }
}

TEST_CASE("ratio bound on the whole half-line") {
  const CompositeResult& r = infimum_full();
  CHECK(r.status == Status::Proved);
  REQUIRE(r.minimum);
  const Real lb = oracle::to_real(r.minimum->lower_bound());
  CHECK(Real("0.972") < lb);
  CHECK(lb < Real("0.973"));
  CHECK(oracle::to_real(r.minimum->inf_enclosure.width()) <= Real("1e-4"));
  REQUIRE(r.tails.size() == 3);
  CHECK(oracle::encloses(*r.tails[0].rhs, Real(1)));
  CHECK(oracle::encloses(*r.tails[1].rhs, Real("0.97775123719333636392860359013840503799278637578482")));
  CHECK(oracle::encloses(*r.tails[2].rhs, Real("0.99657808460395561138891918603189568226307787640065")));
  const std::string text = serialize(r);
  CHECK(composite_validate(parse_composite(text)));
}

TEST_CASE("property and reduction checks") {
  const CheckReport l1 = property_check(find_item(items(), "L1"), 0, 64);
  CHECK(l1.cases == 10000);
  CHECK(l1.passed());
  const CheckReport ch = property_check(find_item(items(), "CH"), 0, 64);
  CHECK(ch.cases == 10000);
  CHECK(ch.passed());
  const CheckReport red = reduction_check(find_item(items(), "L2"), items(), 0, 64);
  CHECK(red.cases == 1000);
  CHECK(red.passed());

  // A false property is caught.
  CorpusItem bad = find_item(items(), "CH");
  bad.property = "arcosh(2*cosh(u)) < ln(2) + u";
  bad.samples = 50;
  CHECK(property_check(bad, 0, 64).failures == 50);
}

TEST_CASE("sampler") {
  Sampler a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const double x = a.unit();
    CHECK(x == b.unit());
    CHECK(x >= 0);
    CHECK(x < 1);
  }
  CHECK(Sampler(42).unit() != c.unit());
  Sampler s(1);
  for (int i = 0; i < 1000; ++i) {
    const double x = s.open_closed(0, 20);
    CHECK(x > 0);
    CHECK(x <= 20);
  }
}

TEST_CASE("artanh series") {
  const CheckReport r = series_check(20);
  CHECK(r.passed());
  CHECK(r.cases == 42 + 21 + 1);
}

TEST_CASE("equivalent forms") {
  const CheckReport r = metamorphic_equivalence_check(1000, 128, 0);
  CHECK(r.cases == 1000);
  CHECK(r.passed());
  CHECK_THROWS_AS(metamorphic_equivalence_check(0, 128, 0), Error);
}

TEST_CASE("equivalent forms near zero") {
  const Binding u{{"u", Interval::from_decimal("1e-6", 128)}};
  const Expr t = parse("cosh(u)");
  const InequalityStatement f1 =
      parse_statement(find_item(items(), "T1").certify, parse_domain_spec("t=1.1:10"));
  const Binding bt{{"t", eval_interval(t, u, 128)}};
  for (const Interval& v : {eval_interval(f1.lhs, bt, 128), eval_interval(f1.rhs, bt, 128)}) {
    CHECK(abs(oracle::to_real(v.lo()) - 1) < Real("1e-10"));
  }
}

TEST_CASE("limit behaviour") {
  const CheckReport r = limit_behavior_check(128);
  CHECK(r.cases == 8);
  CHECK(r.passed());
}

TEST_CASE("axiom ledger") {
  CHECK(axiom_ledger().size() == 10);
  for (const auto& ax : axiom_ledger()) {
    CHECK_FALSE(ax.proof.empty());
    CHECK_NOTHROW(parse(ax.lhs));
    CHECK_NOTHROW(parse(ax.rhs));
  }
  const CheckReport r = axiom_check(10000, 170, 0);
  CHECK(r.cases == 100000);
  CHECK(r.passed());
}

TEST_CASE("run_item") {
  RunOptions opts;
  const ItemReport t3 = run_item(find_item(items(), "T3"), items(), opts);
  CHECK(t3.passed);
  REQUIRE(t3.artifacts.size() == 1);
  CHECK(t3.artifacts[0].first == "T3.cert");
  const ItemReport l1s = run_item(find_item(items(), "L1S"), items(), opts);
  CHECK(l1s.passed);
}
