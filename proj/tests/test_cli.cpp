#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lefdisc/cli.hpp"

using namespace lefdisc;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("lefdisc_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name), std::ios::binary) << text;
    return path(name);
  }

  std::string emit(const std::string& key) const {
    return write(key + ".ring", emit_ring(catalog_entry(key).ring));
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, DiscAllOnF1) {
  auto r = run({"disc", emit("f1"), "--all"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("δ_1 = 1 (vacuous)\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("δ_2 = t0^2 - t1^2\n"), std::string::npos) << r.out;
}

TEST_F(CliTest, DiscSingleLevel) {
  auto r = run({"disc", "catalog:p3", "--k", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("δ_3 = t0^3"), std::string::npos);
  EXPECT_EQ(r.out.find("δ_1"), std::string::npos);
  EXPECT_EQ(run({"disc", "catalog:p3", "--k", "4"}).code, 2);
  EXPECT_EQ(run({"disc", "catalog:p3", "--k", "1", "--all"}).code, 2);
}

TEST_F(CliTest, CheckFailureIsViolation) {
  std::string f = emit("f1");
  auto bad = run({"check", f, "--eta", "1,1"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("k = 2: FAIL"), std::string::npos) << bad.out;
  EXPECT_EQ(run({"check", f, "--eta", "1,0"}).code, 0);
  EXPECT_EQ(run({"check", f, "--eta", "2,-1/2"}).code, 0);
}

TEST_F(CliTest, MalformedInputExitsTwo) {
  std::string f = emit("f1");
  EXPECT_EQ(run({"check", f, "--eta", "1.5,1"}).code, 2);
  EXPECT_EQ(run({"check", f, "--eta", "1"}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"disc", path("missing.ring"), "--all"}).code, 2);
  EXPECT_EQ(run({"disc", write("junk.ring", "{not json"), "--all"}).code, 2);
  EXPECT_EQ(run({"ray", f, "--alpha", "0,0"}).code, 2);
  EXPECT_EQ(run({"search", f, "--height", "0"}).code, 2);
  EXPECT_EQ(run({"catalog", "emit", "nope"}).code, 2);
  EXPECT_EQ(run({"disc", f, "--format", "xml"}).code, 2);
}

TEST_F(CliTest, ValidateBrokenRing) {
  RingDocument doc = f1().ring.to_document();
  for (auto& p : doc.products)
    if (p.a == BasisRef{0, 0} && p.b == BasisRef{2, 0}) p.result = {Rational(2), Rational(0)};
  std::string broken = write("broken.ring", to_json(doc).dump(2));
  auto r = run({"validate", broken});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("associativity: (1 * H) * H"), std::string::npos) << r.out;
  // Other commands refuse an invalid ring as malformed input.
  EXPECT_EQ(run({"disc", broken, "--all"}).code, 2);
}

TEST_F(CliTest, EmitThenValidate) {
  for (const auto& key : catalog_keys()) {
    std::string file = path(key + ".ring");
    ASSERT_EQ(run({"catalog", "emit", key, "-o", file}).code, 0) << key;
    EXPECT_EQ(run({"validate", file}).code, 0) << key;
  }
  auto stdout_emit = run({"catalog", "emit", "p2"});
  EXPECT_EQ(stdout_emit.out, emit_ring(projective_space(2).ring));
}

TEST_F(CliTest, CatalogList) {
  auto r = run({"catalog", "list"});
  EXPECT_EQ(r.code, 0);
  for (const auto& key : catalog_keys()) EXPECT_NE(r.out.find(key + "\t"), std::string::npos);
}

TEST_F(CliTest, HopfIsVoidNotAnError) {
  auto r = run({"disc", "catalog:hopf", "--all"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("δ_1 = 0 (void)"), std::string::npos);
  EXPECT_NE(r.out.find("δ_2 = 0 (void)"), std::string::npos);
  auto s = run({"search", "catalog:hopf", "--height", "2"});
  EXPECT_EQ(s.code, 0);
  EXPECT_NE(s.out.find("void levels: 1, 2"), std::string::npos);
}

TEST_F(CliTest, RayAndSearch) {
  auto r = run({"ray", "catalog:f1", "--alpha", "2,2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("support [(2,1)]"), std::string::npos) << r.out;
  auto s = run({"search", "catalog:p1xp1", "--height", "3"});
  EXPECT_EQ(s.code, 0);
  EXPECT_LT(s.out.find("(1,0)"), s.out.find("(0,1)"));
}

TEST_F(CliTest, GeomChecks) {
  EXPECT_EQ(run({"geom", "--n", "2", "--dim-s", "1", "--dim-phi-s", "0", "--length", "1"}).code, 0);
  EXPECT_EQ(run({"geom", "--n", "3", "--dim-s", "1", "--dim-phi-s", "0", "--length", "2"}).code, 1);
  EXPECT_EQ(run({"geom", "--n", "4", "--dim-s", "2", "--dim-phi-s", "0", "--strata", "2:1"}).code, 1);
  EXPECT_EQ(run({"geom", "--n", "4", "--dim-s", "2", "--dim-phi-s", "0", "--strata", "2:0"}).code, 0);
  EXPECT_EQ(run({"geom", "--n", "2", "--dim-s", "2", "--dim-phi-s", "0", "--length", "5", "--observed", "1"}).code, 1);
  EXPECT_EQ(run({"geom", "--n", "2", "--dim-s", "3", "--dim-phi-s", "0"}).code, 2);
  EXPECT_EQ(run({"geom", "--n", "2", "--dim-s", "1"}).code, 2);
}

TEST_F(CliTest, CrossChecks) {
  auto a = run({"cross", "catalog:p2", "--ray", "1", "--n", "2", "--dim-s", "2", "--dim-phi-s", "0"});
  EXPECT_EQ(a.code, 0);
  EXPECT_NE(a.out.find("observed: multiplicity 2 ok"), std::string::npos) << a.out;
  auto b = run({"cross", "catalog:f1", "--ray", "0,1", "--n", "2", "--dim-s", "1", "--dim-phi-s", "0"});
  EXPECT_EQ(b.code, 0);
  EXPECT_NE(b.out.find("predicted: none"), std::string::npos);
  EXPECT_EQ(run({"cross", "catalog:f1", "--ray", "1,2", "--n", "2", "--dim-s", "2", "--dim-phi-s", "1"}).code, 1);
}

TEST_F(CliTest, OutputIsDeterministic) {
  std::vector<std::vector<std::string>> cases{{"disc", "catalog:torus2", "--all"},
                                              {"search", "catalog:f1", "--height", "3", "--format", "json"},
                                              {"info", "catalog:p1xp2"},
                                              {"check", "catalog:dp7", "--eta", "3,-1,-1", "--format", "json"}};
  for (const auto& args : cases) {
    auto first = run(args), second = run(args);
    EXPECT_EQ(first.out, second.out);
    EXPECT_EQ(first.code, second.code);
  }
}

TEST_F(CliTest, JsonReportRoundTrips) {
  std::string f = emit("f1");
  cli::Options o;
  o.ring = f;
  o.all = true;
  o.format = "json";
  std::ostringstream sink;
  cli::Report expected = cli::cmd_disc(o, sink);
  auto r = run({"disc", f, "--all", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  cli::Report parsed = cli::Report::from_json(Json::parse(r.out));
  EXPECT_EQ(parsed, expected);
  EXPECT_EQ(parsed.to_json().dump(2) + "\n", r.out);

  o.eta = "1,1";
  cli::Report check = cli::cmd_check(o, sink);
  auto c = run({"check", f, "--eta", "1,1", "--format", "json"});
  EXPECT_EQ(c.code, 1);
  EXPECT_EQ(cli::Report::from_json(Json::parse(c.out)), check);
  EXPECT_FALSE(check.violations.empty());
}

TEST_F(CliTest, JsonReportsHaveFixedKeyOrder) {
  auto r = run({"ray", "catalog:p2", "--alpha", "1", "--format", "json"});
  Json j = Json::parse(r.out);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"command", "inputs", "results", "violations"}));
  EXPECT_EQ(r.out.find('.'), std::string::npos);
}
