#include "spectral/io.hpp"

#include <gtest/gtest.h>

using namespace spectral;
using io::json;

TEST(Io, OperatorRoundTrip) {
  auto J = io::jacobi_from_json(json::parse(R"({"a":[1],"b":[2]})"));
  EXPECT_EQ(J, PerturbedJacobi({1.0}, {2.0}));
  EXPECT_EQ(io::jacobi_from_json(io::to_json(J)), J);
  EXPECT_THROW(io::jacobi_from_json(json::parse(R"({"a":[-1],"b":[0]})")), ValidationError);
  EXPECT_THROW(io::jacobi_from_json(json::parse(R"({"a":[1]})")), ValidationError);
}

TEST(Io, Rules) {
  auto r = io::rule_from_json(json::parse(R"({"kind":"power","c":1,"gamma":1,"target":"a"})"));
  EXPECT_EQ(r.kind(), RuleKind::power);
  EXPECT_EQ(r.target(), RuleTarget::a);
  EXPECT_EQ(io::rule_from_json(json::parse(R"({"kind":"exponential","c":1,"r":0.25})")).kind(),
            RuleKind::exponential);
  EXPECT_EQ(io::rule_from_json(json::parse(R"({"a":[],"b":[]})")).kind(), RuleKind::finite);
  EXPECT_THROW(io::rule_from_json(json::parse(R"({"kind":"bogus"})")), ValidationError);
}

TEST(Io, PolynomialAndMeasure) {
  EXPECT_EQ(io::polynomial_from_json(json::parse(R"({"L":[1,-2]})")).degree(), 1);
  EXPECT_EQ(io::polynomial_from_json(json::parse("[1,0,-3]")).degree(), 2);
  auto m = io::measure_from_json(json::parse(R"({"points":[[2.5,0.75]],"density":[0.1,0.2],"grid":2})"));
  EXPECT_EQ(m.points().size(), 1u);
  EXPECT_THROW(io::measure_from_json(json::parse(R"({"density":[0.1],"grid":2})")), ValidationError);
  auto back = io::measure_from_json(io::to_json(m));
  EXPECT_DOUBLE_EQ(back.points()[0].weight, 0.75);
}

TEST(Io, Potential) {
  auto V = io::potential_from_json(json::parse(R"({"X":1,"h":0.5,"samples":[-1,-1,-1]})"));
  EXPECT_DOUBLE_EQ(V.X(), 1.0);
  EXPECT_THROW(io::potential_from_json(json::parse(R"({"X":2,"h":0.5,"samples":[-1,-1,-1]})")), ValidationError);
}

TEST(Io, DeterministicDump) {
  json j{{"zeta", 0.1}, {"alpha", {1.0 / 3.0, std::numeric_limits<double>::infinity()}}, {"n", 3}};
  EXPECT_EQ(io::dump(j), R"({"alpha":[0.33333333333333331,null],"n":3,"zeta":0.10000000000000001})");
  ConditionReport r("t");
  r.add({"x", 1.5, {1.0}, Verdict::holds, "note"});
  EXPECT_EQ(io::dump(io::to_json(r)),
            R"({"all_hold":true,"entries":[{"label":"x","note":"note","trace":[1],"value":1.5,"verdict":"holds"}],"title":"t"})");
}
