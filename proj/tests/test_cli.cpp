#include "netmap/cli.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace netmap;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(NETMAP_DATA_DIR) + "/" + name; }

}  // namespace

TEST(Cli, DecideD2) {
  CliRun r = invoke({"decide", data("d2.net"), "--depth", "3", "--height", "50"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "obstructed slope=1/0 multiplier=1");
}

TEST(Cli, DecideArclessIsRefused) {
  CliRun r = invoke({"decide", data("arcless.net")});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.out, "refused: Euclidean\n");
  EXPECT_EQ(invoke({"decide", data("rabbit.net")}).code, 2);
}

TEST(Cli, PullbackD0) {
  CliRun r = invoke({"pullback", data("d0.net"), "--slope", "1/2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("image=1/0"), std::string::npos);
}

TEST(Cli, TextAndJsonAgree) {
  CliRun text = invoke({"decide", data("d5.net"), "--depth", "3", "--height", "30", "--budget", "2000"});
  CliRun json = invoke({"decide", data("d5.net"), "--depth", "3", "--height", "30", "--budget", "2000", "--json"});
  ASSERT_EQ(text.code, 0);
  ASSERT_EQ(json.code, 0);
  auto j = nlohmann::json::parse(json.out);
  for (const char* key : {"verdict", "slope", "multiplier", "depth", "height_budget", "assumptions"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(text.out, "obstructed slope=" + j["slope"].get<std::string>() +
                          " multiplier=" + j["multiplier"].get<std::string>() + "\n");

  CliRun pt = invoke({"pullback", data("d0.net"), "--slope", "1/1"});
  CliRun pj = invoke({"pullback", data("d0.net"), "--slope", "1/1", "--json"});
  auto k = nlohmann::json::parse(pj.out);
  EXPECT_NE(pt.out.find("image=" + k["image"].get<std::string>()), std::string::npos);
  EXPECT_EQ(k["image"], "-1/1");
}

TEST(Cli, SlopesTable) {
  CliRun r = invoke({"slopes", data("d0.net"), "--max-height", "2", "--json"});
  ASSERT_EQ(r.code, 0);
  auto rows = nlohmann::json::parse(r.out);
  EXPECT_EQ(rows.size(), farey_enumerate(2).size());
  EXPECT_EQ(rows[0]["slope"], "1/0");
  EXPECT_EQ(rows[0]["image"], "0/1");
}

TEST(Cli, PortraitAndExclude) {
  CliRun p = invoke({"portrait", data("d2.net"), "--translation", "0"});
  EXPECT_EQ(p.code, 0);
  EXPECT_NE(p.out.find("net=no"), std::string::npos);
  EXPECT_EQ(invoke({"portrait", data("d0.net")}).code, 2);
  CliRun e = invoke({"exclude", data("d0.net"), "--cusp", "0"});
  EXPECT_EQ(e.code, 0);
  EXPECT_NE(e.out.find("(-1/400, 1/400)"), std::string::npos);
  CliRun refused = invoke({"exclude", data("d2.net"), "--cusp", "0"});
  EXPECT_EQ(refused.code, 2);
}

TEST(Cli, CandidatesDnAndBounds) {
  CliRun c = invoke({"candidates", data("d5.net"), "--path", "[0,2]"});
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("early stop"), std::string::npos);
  CliRun t = invoke({"dn", "--n", "8", "--table", "--json"});
  auto rows = nlohmann::json::parse(t.out);
  EXPECT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[2]["obstruction_slope"], "-13/10");
  CliRun b = invoke({"bounds", "--size", "2", "--a0", "1", "--depth", "0", "--contraction", "1/2", "--json"});
  auto bj = nlohmann::json::parse(b.out);
  EXPECT_EQ(bj["H"][0]["value"], "256");
  EXPECT_TRUE(bj.contains("N"));
}

TEST(Cli, Errors) {
  EXPECT_EQ(invoke({"decide", data("missing.net")}).code, 1);
  EXPECT_EQ(invoke({"decide", data("d2.net"), "--bogus"}).code, 1);
  EXPECT_EQ(invoke({}).code, 1);
  EXPECT_EQ(invoke({"pullback", data("d0.net"), "--slope", "x"}).code, 1);
  EXPECT_EQ(invoke({"bounds", "--size", "2", "--contraction", "3/2"}).code, 1);
}
