#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "json.hpp"

namespace {

struct CliRun {
  int status = -1;
  std::string out;
};

// Runs the CLI with stderr merged into stdout when `merge_err` is set.
CliRun run(const std::string& args, bool merge_err = false) {
  std::string cmd = std::string(TROPELL_CLI_PATH) + " " + args + (merge_err ? " 2>&1" : " 2>/dev/null");
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string data(const char* name) { return std::string(TROPELL_DATA_DIR) + "/" + name; }

std::string example() { return " --model " + data("example_model.json") + " --curve " + data("example_curve.json"); }

nlohmann::json json_of(const CliRun& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST(Cli, LaplacianOfDiscriminant) {
  CliRun r = run("--json laplacian" + example());
  ASSERT_EQ(r.status, 0) << r.out;
  auto j = json_of(r);
  EXPECT_EQ(j["phi"], nlohmann::json({"0", "1"}));
  EXPECT_EQ(j["divisor"], nlohmann::json({"-1", "1"}));
  EXPECT_EQ(j["slopes"], nlohmann::json({"1"}));
}

TEST(Cli, LaplacianOfConstant) {
  CliRun r = run("--json laplacian --model " + data("example_model.json") + " --function 7");
  ASSERT_EQ(r.status, 0);
  auto j = json_of(r);
  EXPECT_EQ(j["phi"], nlohmann::json({"0", "0"}));
  EXPECT_EQ(j["slopes"], nlohmann::json({"0"}));
}

TEST(Cli, UnadaptedModelExitsWithTwo) {
  CliRun r = run("--json laplacian --model " + data("example_model.json") + " --function 't - pi^(1/2)'", true);
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(json_of(r)["error"], "ModelNotAdapted");
}

TEST(Cli, ReductionTypes) {
  CliRun good = run("--json reduction-type" + example() + " --subgraph 'vertices=0'");
  ASSERT_EQ(good.status, 0);
  EXPECT_EQ(json_of(good)["kind"], "Good");
  CliRun mult = run("--json reduction-type" + example() + " --subgraph 'vertices=1;edges=0-1'");
  ASSERT_EQ(mult.status, 0);
  EXPECT_EQ(json_of(mult)["kind"], "Multiplicative");
  EXPECT_EQ(json_of(mult)["evidence"]["phi_discriminant"], nlohmann::json({"0", "1"}));
  CliRun add = run("--json reduction-type --model " + data("gauss_model.json") + " --curve " + data("short_cusp.json") +
                " --subgraph vertices=0");
  ASSERT_EQ(add.status, 0) << add.out;
  EXPECT_EQ(json_of(add)["kind"], "Additive");
}

TEST(Cli, Transvection) {
  CliRun ok = run("--json transvection" + example() + " --edge 0 --ell 5 --group-order 24 --residue-char 7");
  ASSERT_EQ(ok.status, 0);
  auto j = json_of(ok);
  EXPECT_TRUE(j["verdict"].get<bool>());
  EXPECT_EQ(j["delta"], "1");
  EXPECT_EQ(j["matrix"]["entries"], nlohmann::json({1, 1, 0, 1}));
  CliRun bad = run("--json transvection" + example() + " --edge 0 --ell 2 --group-order 24");
  ASSERT_EQ(bad.status, 0);
  EXPECT_FALSE(json_of(bad)["verdict"].get<bool>());
}

TEST(Cli, Sl2) {
  EXPECT_EQ(json_of(run("--json sl2 order --modulus 5"))["order"], "120");
  EXPECT_EQ(json_of(run("--json sl2 order --modulus 5"))["psl2_order"], "60");
  auto gen = json_of(run("--json sl2 generate --modulus 7 --gens '1,1,0,1;1,0,1,1'"));
  EXPECT_EQ(gen["size"], 336);
  auto check = json_of(run("--json sl2 check --modulus 7 --gens '1,1,0,1;1,0,1,1'"));
  EXPECT_TRUE(check["surjective"].get<bool>());
  auto same = json_of(run("--json sl2 check --modulus 7 --gens '1,1,0,1;1,2,0,1'"));
  EXPECT_FALSE(same["surjective"].get<bool>());
  CliRun cap = run("--json sl2 generate --modulus 7 --gens '1,1,0,1;1,0,1,1' --cap 10", true);
  EXPECT_EQ(cap.status, 2);
  EXPECT_EQ(json_of(cap)["error"], "CapExceeded");
}

TEST(Cli, FiberInertiaTate) {
  auto f = json_of(run("--json fiber --reduction Multiplicative --group-order 24 --ell 3 --delta 1 --length 3"));
  EXPECT_EQ(f["count"], "8");
  EXPECT_EQ(f["length"], "1");
  CliRun viol = run("--json fiber --reduction Multiplicative --group-order 24 --ell 3 --delta 3 --length 3", true);
  EXPECT_EQ(viol.status, 2);
  EXPECT_EQ(json_of(viol)["error"], "HypothesisViolated");
  auto chain = json_of(run("--json inertia-chain --n 6 --m 4"));
  EXPECT_EQ(chain["orders"], nlohmann::json({4, 2, 4, 1, 4}));
  auto q = json_of(run("--json tate-q" + example() + " --vertex 1"));
  EXPECT_EQ(q["v_q"], "1");
  CliRun nonneg = run("--json tate-q" + example() + " --vertex 0", true);
  EXPECT_EQ(nonneg.status, 2);
  EXPECT_EQ(json_of(nonneg)["error"], "NotNonIntegralJ");
}

TEST(Cli, TwistSubdivideHasseDivision) {
  auto tw = json_of(run("--json minimal-twist" + example()));
  EXPECT_EQ(tw["transform"]["u"], "1");
  auto sub = json_of(run("--json subdivide --model " + data("example_model.json") + " --n 3"));
  EXPECT_EQ(sub["model"]["vertices"].size(), 4u);
  EXPECT_EQ(sub["model"]["n_lattice"], 3);
  auto h = json_of(run("--json hasse --curve " + data("legendre_like.json")));
  EXPECT_TRUE(h.contains("hasse"));
  auto d = json_of(run("--json division-poly --curve " + data("x3_plus_1.json") + " --n 3"));
  EXPECT_EQ(d["polynomial"], "3*x^4 + 12*x");
}

TEST(Cli, DeterministicOutput) {
  const std::string args = "--json reduction-type" + example() + " --subgraph 'vertices=1;edges=0-1'";
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, BadInputs) {
  CliRun missing = run("--json laplacian --model /nonexistent.json --function t", true);
  EXPECT_EQ(missing.status, 2);
  EXPECT_EQ(json_of(missing)["error"], "ParseError");
  CliRun bad_sub = run("--json reduction-type" + example() + " --subgraph 'vertices=9'", true);
  EXPECT_EQ(bad_sub.status, 2);
  EXPECT_EQ(json_of(bad_sub)["error"], "InvalidArgument");
}
