#include <gtest/gtest.h>

#include "commands.hpp"

using extri::cli::json;
using extri::cli::Options;
using extri::cli::run;
using extri::io::canonical_dump;

namespace {

Options with_seed(std::uint64_t s) {
  Options o;
  o.seed = s;
  return o;
}

json rp2() {
  return json::parse(R"({"modulus":0,"ranks":{"0":1,"1":1,"2":1},
    "differentials":{"2":{"rows":1,"cols":1,"entries":[["2"]]}}})");
}

// Feeds a report back in as input and expects the same bytes.
void expect_round_trip(const std::string& cmd, const std::optional<json>& in, const Options& opt = {}) {
  auto first = run(cmd, in, opt);
  ASSERT_EQ(first.exit_code, 0) << first.output.dump();
  Options plain = opt;
  plain.seed.reset();
  auto second = run(cmd, first.output, plain);
  ASSERT_EQ(second.exit_code, 0) << second.output.dump();
  EXPECT_EQ(canonical_dump(first.output), canonical_dump(second.output)) << cmd;
}

}  // namespace

TEST(CanonicalJson, SortsKeysNumericallyFirst) {
  json j = json::parse(R"({"b":1,"10":2,"2":3,"a":[1,2]})");
  EXPECT_EQ(canonical_dump(j), "{\n  \"2\": 3,\n  \"10\": 2,\n  \"a\": [1, 2],\n  \"b\": 1\n}\n");
}

TEST(Cli, SnfExample) {
  auto o = run("snf", json::parse(R"({"rows":2,"cols":2,"entries":[["2","4"],["6","8"]]})"), {});
  ASSERT_EQ(o.exit_code, 0);
  EXPECT_EQ(o.output["diagonal"], json::parse(R"(["2","4"])"));
  EXPECT_EQ(o.output["cokernel"]["torsion"], json::parse(R"(["2","4"])"));
}

TEST(Cli, PoincareReport) {
  auto o = run("poincare", std::nullopt, {});
  ASSERT_EQ(o.exit_code, 0);
  EXPECT_EQ(o.output["report"], "I^#(P;Z) = Z_(0) + G_(1), G a nontrivial 2-group; not an F2 L-space");
  EXPECT_EQ(o.output["A3"], "(Z^3)_(0) + K_(1)");
}

TEST(Cli, ModuliDefault) {
  auto o = run("moduli", std::nullopt, {});
  ASSERT_EQ(o.exit_code, 0);
  ASSERT_EQ(o.output["results"].size(), 2u);
  for (const auto& r : o.output["results"]) EXPECT_EQ(r["count"], 1);
  EXPECT_EQ(o.output["results"][1]["solutions"][0]["a"], json::parse(R"(["1","0"])"));
}

TEST(Cli, IndexClaimsAllHold) {
  auto o = run("index", std::nullopt, {});
  ASSERT_EQ(o.exit_code, 0);
  for (const auto& c : o.output["result"]) EXPECT_TRUE(c["holds"].get<bool>()) << c["claim"];
  auto p = run("index", json::parse(R"({"op":"charge_point","k0":"0","l0":"1/2"})"), {});
  EXPECT_EQ(p.output["result"]["kappa"], "3/8");
}

TEST(Cli, Homology) {
  auto o = run("homology", rp2(), {});
  ASSERT_EQ(o.exit_code, 0);
  EXPECT_EQ(o.output["text"], "Z_(0) + Z/2_(1)");
  EXPECT_EQ(o.output["dims"]["F2"], json::parse(R"({"0":1,"1":1,"2":1})"));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("nope", std::nullopt, {}).exit_code, 2);
  EXPECT_EQ(run("snf", std::nullopt, {}).exit_code, 2);
  EXPECT_EQ(run("snf", json::parse(R"({"rows":2,"cols":1,"entries":[["1"]]})"), {}).exit_code, 2);
  // Well-formed but inconsistent constraints: a domain error.
  auto bad = json::parse(R"({"op":"charge_point","k0":"1/3","l0":"0"})");
  EXPECT_EQ(run("index", bad, {}).exit_code, 1);
  Options p4;
  p4.prime = 4;
  EXPECT_EQ(run("homology", rp2(), p4).exit_code, 2);
  auto failing = run("lin-check", std::nullopt, [] {
    Options o;
    o.seed = 3;
    o.certificate = true;
    return o;
  }());
  EXPECT_EQ(failing.exit_code == 0 || failing.exit_code == 1, true);
  EXPECT_EQ(failing.exit_code == 0, failing.output["ok"].get<bool>());
}

TEST(Cli, Deterministic) {
  for (const std::string& cmd : {"poincare", "moduli", "index"})
    EXPECT_EQ(canonical_dump(run(cmd, std::nullopt, {}).output), canonical_dump(run(cmd, std::nullopt, {}).output));
  EXPECT_EQ(canonical_dump(run("ss", std::nullopt, with_seed(9)).output),
            canonical_dump(run("ss", std::nullopt, with_seed(9)).output));
}

TEST(Cli, RoundTrips) {
  expect_round_trip("snf", json::parse(R"({"rows":2,"cols":3,"entries":[["2","4","1"],["6","8","0"]]})"));
  expect_round_trip("homology", rp2());
  expect_round_trip("poincare", std::nullopt);
  expect_round_trip("index", std::nullopt);
  expect_round_trip("moduli", std::nullopt);
  expect_round_trip("ss", std::nullopt, with_seed(4));
  expect_round_trip("lin-check", std::nullopt, with_seed(4));
  Options pi = with_seed(4);
  pi.pi = true;
  expect_round_trip("lin-check", std::nullopt, pi);
  expect_round_trip("triangle-solve", json::parse(R"({"puzzle":{"corners":[
      {"mod":2,"components":{"0":{"rank":0,"torsion":["2"]}}},
      {"mod":2,"components":{"0":{"rank":0,"torsion":["4"]}}},null]}})"));
  json one = json::parse(R"({"rows":1,"cols":1,"entries":[["1"]]})");
  json map = {{"source", rp2()}, {"target", rp2()}, {"degree", 0}, {"blocks", {{"0", one}, {"1", one}, {"2", one}}}};
  expect_round_trip("cone", map);
  auto cone = run("cone", map, {});
  EXPECT_TRUE(cone.output["quasi_isomorphism"].get<bool>());
}

TEST(Cli, TriangleSolveVerifiesCandidate) {
  auto in = json::parse(R"({"puzzle":{"corners":[
      {"mod":2,"components":{"0":{"rank":0,"torsion":["2"]}}},
      {"mod":2,"components":{"0":{"rank":0,"torsion":["4"]}}},null]},
      "candidate":{"mod":2,"components":{"0":{"rank":0,"torsion":["2"]}}}})");
  auto o = run("triangle-solve", in, {});
  ASSERT_EQ(o.exit_code, 0);
  EXPECT_TRUE(o.output["verify"]["ok"].get<bool>());
  EXPECT_EQ(o.output["result"]["families"].size(), 2u);
}
