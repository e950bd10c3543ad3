#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "catdtc_cli/config.hpp"
#include "catdtc_cli/runner.hpp"

namespace fs = std::filesystem;
using namespace catdtc::cli;
using nlohmann::json;

namespace {

class Scratch : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("catdtc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  int run(const fs::path& cfg, const fs::path& out, std::optional<std::uint64_t> seed = {}) {
    CliOptions o;
    o.config = cfg;
    o.output_dir = out;
    o.seed = seed;
    o.quiet = true;
    return run_cli(o);
  }

  bool leftovers() const {
    return std::any_of(fs::directory_iterator(dir_), fs::directory_iterator(), [](const auto& e) {
      return e.path().filename().string().find(".partial-") != std::string::npos;
    });
  }

  fs::path dir_;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> problems_of(const json& doc) {
  try {
    parse_config(doc);
  } catch (const ValidationError& e) {
    return e.problems();
  }
  return {};
}

bool mentions(const std::vector<std::string>& problems, const std::string& needle) {
  return std::any_of(problems.begin(), problems.end(),
                     [&](const std::string& p) { return p.find(needle) != std::string::npos; });
}

const char* kSmallGhz = R"({
  // comments are allowed
  "experiment": "ghz-verify",
  "seed": 5,
  "qstate": { "n": 4, "pattern": "0110" },
  "circuits": { "layout": { "rows": 2, "cols": 2 } }
})";

const char* kNoisyMqc = R"({
  "experiment": "mqc",
  "seed": 9,
  "qstate": { "n": 4 },
  "noise": { "model": "depolarizing", "ep_1q": 0.01, "ep_2q": 0.02 },
  "sampling": { "grid": "sparse", "n_traj": 20 }
})";

}  // namespace

TEST(Fnv, ReferenceVectors) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cull);
  EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ull);
}

TEST(ConfigHash, IndependentOfKeyOrder) {
  const json a = json::parse(R"({"b": 1, "a": {"y": 2, "x": [1, 2]}})");
  const json b = json::parse(R"({"a": {"x": [1, 2], "y": 2}, "b": 1})");
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_EQ(config_hash(a).size(), 16u);
  EXPECT_NE(config_hash(a), config_hash(json::parse(R"({"b": 2})")));
}

TEST(Config, FieldLevelErrors) {
  const auto p = problems_of(json::parse(
      R"({"experiment": "mqc", "qstate": {"n": 10, "pattern": "0101"}, "sampling": {"n_traj": 0, "bogus": 1}})"));
  EXPECT_TRUE(mentions(p, "qstate.pattern: length 4 does not match")) << ::testing::PrintToString(p);
  EXPECT_TRUE(mentions(p, "sampling.n_traj: must be >= 1"));
  EXPECT_TRUE(mentions(p, "sampling.bogus: unknown field"));

  EXPECT_TRUE(mentions(problems_of(json::parse(R"({"experiment": "mqc", "qstate": {}})")), "qstate.n"));
  EXPECT_TRUE(mentions(problems_of(json::parse(R"({"experiment": "teleport"})")), "experiment"));
  EXPECT_TRUE(mentions(
      problems_of(json::parse(R"({"experiment": "ghz-verify", "qstate": {"n": 6},
                                  "noise": {"model": "table"}})")),
      "noise.model: no tabulated gate errors for N = 6"));
}

TEST(Config, AllExamplesParse) {
  int count = 0;
  for (const auto& e : fs::directory_iterator(CATDTC_EXAMPLES_DIR)) {
    if (e.path().extension() != ".json") continue;
    ++count;
    EXPECT_NO_THROW({
      const RunConfig c = parse_config(read_json_file(e.path()));
      check_resources(c);
    }) << e.path();
  }
  EXPECT_GE(count, 10);
}

TEST_F(Scratch, ExitCodes) {
  EXPECT_EQ(run(write("ok.json", kSmallGhz), dir_ / "ok"), kExitOk);
  EXPECT_TRUE(fs::exists(dir_ / "ok" / "manifest.json"));
  EXPECT_TRUE(fs::exists(dir_ / "ok" / "summary.json"));

  EXPECT_EQ(run(write("bad.json", R"({"experiment": "mqc", "qstate": {"n": 0}})"), dir_ / "bad"), kExitValidation);
  EXPECT_EQ(run(write("broken.json", "{ not json"), dir_ / "broken"), kExitValidation);
  EXPECT_FALSE(fs::exists(dir_ / "bad"));

  // An existing directory that is not a previous run is never replaced.
  fs::create_directories(dir_ / "taken");
  std::ofstream(dir_ / "taken" / "notes.txt") << "keep";
  EXPECT_EQ(run(dir_ / "ok.json", dir_ / "taken"), kExitRuntime);
  EXPECT_EQ(slurp(dir_ / "taken" / "notes.txt"), "keep");
  EXPECT_FALSE(leftovers());
}

TEST_F(Scratch, ResourceLimitsAreValidationErrors) {
  const fs::path cfg = write("big.json", R"({"experiment": "dtc-spectrum", "qstate": {"n": 16}})");
  EXPECT_EQ(run(cfg, dir_ / "big"), kExitValidation);
  EXPECT_FALSE(fs::exists(dir_ / "big"));
}

TEST_F(Scratch, RerunsAreByteIdentical) {
  const fs::path cfg = write("mqc.json", kNoisyMqc);
  ASSERT_EQ(run(cfg, dir_ / "a"), kExitOk);
  ASSERT_EQ(run(cfg, dir_ / "b"), kExitOk);
  for (const char* f : {"summary.json", "config.json", "mqc_trace.csv", "mqc_spectrum.csv"}) {
    EXPECT_EQ(slurp(dir_ / "a" / f), slurp(dir_ / "b" / f)) << f;
  }
  // Rerunning into an earlier output directory replaces it.
  ASSERT_EQ(run(cfg, dir_ / "a"), kExitOk);
  EXPECT_FALSE(leftovers());
}

TEST_F(Scratch, SeedOverride) {
  const fs::path cfg = write("mqc.json", kNoisyMqc);
  ASSERT_EQ(run(cfg, dir_ / "base"), kExitOk);
  ASSERT_EQ(run(cfg, dir_ / "other", 1234), kExitOk);
  const json s0 = json::parse(slurp(dir_ / "base" / "summary.json"));
  const json s1 = json::parse(slurp(dir_ / "other" / "summary.json"));
  EXPECT_EQ(s0["seed"], 9);
  EXPECT_EQ(s1["seed"], 1234);
  EXPECT_EQ(s0["config_hash"], s1["config_hash"]);
  EXPECT_NE(slurp(dir_ / "base" / "mqc_trace.csv"), slurp(dir_ / "other" / "mqc_trace.csv"));
  const json m1 = json::parse(slurp(dir_ / "other" / "manifest.json"));
  EXPECT_TRUE(m1["seed_overridden"].get<bool>());
}
