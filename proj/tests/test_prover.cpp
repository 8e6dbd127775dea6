#include <doctest.h>

#include <random>

#include "hypcert/corpus.hpp"
#include "hypcert/error.hpp"
#include "hypcert/prover.hpp"
#include "tamper.hpp"

using namespace hypcert;

namespace {

Box box1(std::string_view spec) { return Box({parse_range(spec)}); }

InequalityStatement main_on(std::string_view range) {
  return parse_statement(kMainStatement, box1(range));
}

ProverConfig budget(std::size_t leaves) {
  ProverConfig cfg;
  cfg.leaf_budget = leaves;
  return cfg;
}

}  // namespace

TEST_CASE("parse_statement") {
  const InequalityStatement s = main_on("u=0.3:3");
  CHECK(s.text() == kMainStatement);
  CHECK_THROWS_AS(parse_statement("u < v", box1("u=0:1")), UnboundVariable);
  CHECK_THROWS_AS(parse_statement("u <= 1", box1("u=0:1")), SyntaxError);
  CHECK_THROWS_AS(parse_statement("u + 1", box1("u=0:1")), SyntaxError);
  try {
    parse_statement("u < u + * 1", box1("u=0:1"));
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 8);
  }
}

TEST_CASE("parse_range and boxes") {
  const auto [name, x] = parse_range("u=0.3:3");
  CHECK(name == "u");
  CHECK(x.lo() < x.hi());
  CHECK(x.lo() < Scalar::from_decimal("0.3", 128, Round::Down));
  CHECK(Scalar::from_decimal("0.3", 128, Round::Up) < x.hi());
  CHECK(x.hi() == Scalar::from_double(3));
  CHECK(parse_range("z=-20:20").second.lo() == Scalar::from_double(-20));
  CHECK_THROWS_AS(parse_range("u=3:1"), Error);
  CHECK_THROWS_AS(parse_range("u=1"), Error);
  CHECK_THROWS_AS(parse_range("=1:2"), Error);
  CHECK_THROWS_AS(Box({parse_range("u=0:1"), parse_range("u=0:2")}), Error);
  CHECK_THROWS_AS(Box(std::vector<Box::Dim>{}), Error);

  const Box b({parse_range("x=0:1"), parse_range("y=0:4")});
  CHECK(b.widest() == 1);
  const auto [lo, hi] = b.split(1);
  CHECK(b.contains(lo));
  CHECK(b.contains(hi));
  CHECK(lex_less(lo, hi));
}

TEST_CASE("check_box examples") {
  const InequalityStatement s = main_on("u=0.3:3");
  // Dependency widening on [1, 1.1] exceeds the 2.6% gap; a tenth of it is enough.
  CHECK(check_box(s, box1("u=1:1.1"), 64).verdict == BoxVerdict::Unknown);
  CHECK(check_box(s, box1("u=1:1.01"), 64).verdict == BoxVerdict::Proved);
  CHECK(check_box(s, box1("u=0.3:3"), 64).verdict == BoxVerdict::Unknown);
  const InequalityStatement same = parse_statement("u < u", box1("u=0:1"));
  CHECK(check_box(same, box1("u=0:1"), 64).verdict == BoxVerdict::Unknown);
}

TEST_CASE("main inequality on the compact core") {
  const InequalityStatement s = main_on("u=0.3:3");
  const Certificate c = verify_strict(s, ProverConfig{});
  CHECK(c.status == Status::Proved);
  CHECK(c.leaves.size() < 10000);
  CHECK(c.frontier.empty());
  CHECK(certificate_validate(c, s));
  CHECK(std::is_sorted(c.leaves.begin(), c.leaves.end(),
                       [](const Leaf& a, const Leaf& b) { return lex_less(a.box, b.box); }));
}

TEST_CASE("two-dimensional statement") {
  const InequalityStatement s = parse_statement(
      "tanh(x)*tanh(y) < tanh(x*tanh(y))", Box({parse_range("x=0.5:2"), parse_range("y=0.5:2")}));
  const Certificate c = verify_strict(s, ProverConfig{});
  CHECK(c.status == Status::Proved);
  CHECK(certificate_validate(c, s));
}

TEST_CASE("domain closed at zero stays undetermined") {
  ProverConfig cfg;
  cfg.max_depth = 30;
  const Certificate c = verify_strict(main_on("u=0:3"), cfg);
  CHECK(c.status == Status::Undetermined);
  REQUIRE(c.frontier.size() >= 1);
  CHECK(c.frontier.front()[0].lo().is_zero());
  for (const auto& b : c.frontier) CHECK(b[0].hi() < Scalar::from_double(1e-6));
}

TEST_CASE("false statements are never proved") {
  const char* statements[] = {"tanh(u) < tanh(u)", "u < u", "u^2 < u", "exp(u) < 1 + u"};
  for (const char* text : statements) {
    const InequalityStatement s = parse_statement(text, box1("u=0:2"));
    const Certificate c = verify_strict(s, budget(2000));
    CHECK(c.status == Status::Undetermined);
    CHECK_FALSE(certificate_validate(c, s));
  }
}

TEST_CASE("a proved certificate holds at sampled points") {
  const InequalityStatement s = main_on("u=0.3:3");
  const Certificate c = verify_strict(s, ProverConfig{});
  REQUIRE(c.status == Status::Proved);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(0.3, 3);
  for (int i = 0; i < 2000; ++i) {
    const Binding b{{"u", Interval::point(Scalar::from_double(d(rng)))}};
    REQUIRE(separated_at(s, b, 128));
  }
}

TEST_CASE("leaf budget exhaustion is a status, not an error") {
  const Certificate c = verify_strict(main_on("u=0.3:3"), budget(10));
  CHECK(c.status == Status::Undetermined);
  CHECK_FALSE(c.frontier.empty());
  CHECK(c.leaves.size() + c.frontier.size() <= 10);
}

TEST_CASE("domain errors propagate") {
  CHECK_THROWS_AS(verify_strict(parse_statement("ln(u) < u", box1("u=-1:1")), ProverConfig{}),
                  DomainViolation);
}

TEST_CASE("config validation") {
  ProverConfig cfg;
  cfg.max_depth = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = ProverConfig{};
  cfg.escalation_factor = 1;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = ProverConfig{};
  cfg.max_precision = 32;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("certificate serialization round trip") {
  const InequalityStatement s = main_on("u=0.3:3");
  const Certificate c = verify_strict(s, ProverConfig{});
  const std::string text = serialize(c);
  const Certificate back = parse_certificate(text);
  CHECK(serialize(back) == text);
  CHECK(certificate_validate(back, statement_of(back)));
  CHECK(statement_of(back).text() == s.text());

  CHECK_THROWS_AS(parse_certificate(text + "extra\n"), MalformedCertificate);
  CHECK_THROWS_AS(parse_certificate("not a certificate"), MalformedCertificate);
  std::string truncated = text.substr(0, text.size() / 2);
  CHECK_THROWS_AS(parse_certificate(truncated), MalformedCertificate);
}

TEST_CASE("tampered certificates are rejected") {
  const InequalityStatement s = main_on("u=0.3:3");
  const Certificate c = verify_strict(s, ProverConfig{});
  REQUIRE(certificate_validate(c, s));
  CHECK_FALSE(certificate_validate(tamper::delete_leaf(c), s));
  CHECK_FALSE(certificate_validate(tamper::raise_bound(c), s));
  CHECK_FALSE(certificate_validate(tamper::open_gap(c), s));

  SUBCASE("an understated lhs bound fails re-evaluation") {
    Certificate t = c;
    t.leaves[5].lhs_upper = t.leaves[5].lhs_upper.rounded(8, Round::Down);
    CHECK_FALSE(certificate_validate(t, s));
  }
  SUBCASE("another statement") {
    const InequalityStatement other = parse_statement(
        "cosh(tanh(u)*arcosh(2.1*cosh(u))) < exp(u*tanh(u))", box1("u=0.3:3"));
    CHECK_FALSE(certificate_validate(c, other));
  }
  SUBCASE("hash mismatch") {
    Certificate t = c;
    t.statement_hash[0] = t.statement_hash[0] == '0' ? '1' : '0';
    CHECK_FALSE(certificate_validate(t, s));
  }
  SUBCASE("leaf outside the domain") {
    Certificate t = c;
    t.leaves.back().box = box1("u=2.9:3.5");
    CHECK_FALSE(certificate_validate(t, s));
  }
}

TEST_CASE("boxes_tile") {
  const Box d({parse_range("x=0:2"), parse_range("y=0:2")});
  const auto [l, r] = d.split(0);
  const auto [ll, lu] = l.split(1);
  CHECK(boxes_tile(d, {ll, lu, r}));
  CHECK_FALSE(boxes_tile(d, {ll, r}));
  CHECK_FALSE(boxes_tile(d, {ll, lu, r, r}));
  CHECK_FALSE(boxes_tile(d, {l, lu, r}));
  const Box one = box1("u=0:1");
  const auto [a, b] = one.split(0);
  CHECK(boxes_tile(one, {b, a}));
  CHECK_FALSE(boxes_tile(one, {a}));
  CHECK_FALSE(boxes_tile(one, {}));
}

TEST_CASE("output does not depend on the thread count") {
  const InequalityStatement s = parse_statement(
      "tanh(x)*tanh(y) < tanh(x*tanh(y))", Box({parse_range("x=0.5:2"), parse_range("y=0.5:2")}));
  ProverConfig one;
  ProverConfig four;
  four.threads = 4;
  CHECK(serialize(verify_strict(s, one)) == serialize(verify_strict(s, four)));
  const InequalityStatement closed = main_on("u=0:3");
  one.max_depth = four.max_depth = 20;
  CHECK(serialize(verify_strict(closed, one)) == serialize(verify_strict(closed, four)));
}

TEST_CASE("larger budgets keep proofs") {
  const InequalityStatement s = main_on("u=0.3:3");
  ProverConfig cfg;
  const Certificate base = verify_strict(s, cfg);
  REQUIRE(base.status == Status::Proved);
  cfg.leaf_budget *= 4;
  CHECK(verify_strict(s, cfg).status == Status::Proved);
  cfg.max_precision = 1024;
  CHECK(verify_strict(s, cfg).status == Status::Proved);
}

TEST_CASE("sha256") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
