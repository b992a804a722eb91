#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "chebias/cli.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path source_dir(CHEBIAS_SOURCE_DIR);

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "chebias");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = chebias::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path temp_path(const std::string& name) { return fs::temp_directory_path() / ("chebias_cli_" + name); }

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Cli, Selftest) {
  const auto r = run({"selftest"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("selftest passed"), std::string::npos);
}

TEST(Cli, CheckWreathExample) {
  const auto r = run({"check", "--example", "paper", "--table"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("ambient_order=32 sub_order=8"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("r1=0 r2=4 fused=yes valid=yes"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("class_plus"), std::string::npos);
}

TEST(Cli, CheckGroupFile) {
  const auto r = run({"check", "--group", (source_dir / "fixtures" / "paper32.json").string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("valid=yes"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"check", "--example", "other"}).code, 2);
  const auto out = temp_path("never.csv");
  fs::remove(out);
  const auto fixture = (source_dir / "fixtures" / "paper32").string();
  EXPECT_EQ(run({"count", "--field", fixture, "--limit", "abc", "--out", out.string()}).code, 2);
  EXPECT_EQ(run({"count", "--field", fixture, "--limit", "1.5", "--out", out.string()}).code, 2);
  EXPECT_EQ(run({"count", "--field", fixture, "--limit", "1", "--out", out.string()}).code, 2);
  EXPECT_EQ(run({"count", "--field", fixture, "--grid-ratio", "1", "--out", out.string()}).code, 2);
  EXPECT_EQ(run({"count", "--field", fixture, "--threads", "0", "--out", out.string()}).code, 2);
  EXPECT_EQ(run({"count", "--field", fixture, "--t", "bogus", "--limit", "100", "--out", out.string()}).code, 2);
  EXPECT_EQ(run({"count", "--field", "no/such/file", "--out", out.string()}).code, 2);
  EXPECT_EQ(run({"count", "--limit", "100", "--out", out.string()}).code, 2);
  EXPECT_FALSE(fs::exists(out));
}

TEST(Cli, CountWritesSeriesWithPositiveFinalD) {
  const auto out = temp_path("series.csv");
  const auto r = run({"count", "--field", (source_dir / "fixtures" / "paper32").string(), "--limit", "1e6", "--out",
                      out.string(), "--mobius"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("excluded primes 2,3,7,17"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("checksum a6287ecd"), std::string::npos) << r.err;
  const auto rows = chebias::read_series_xd(out);
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(rows.back().first, "1000000");
  EXPECT_GT(std::stod(rows.back().second), 0.0);

  const auto fig = temp_path("fig.csv");
  ASSERT_EQ(run({"emit-figure", "--series", out.string(), "--out", fig.string()}).code, 0);
  const auto text = read_file(fig);
  EXPECT_EQ(text.substr(0, 4), "x,D\n");
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')), rows.size() + 1);
  fs::remove(out);
  fs::remove(fig);
}

TEST(Cli, FixtureDirectoryFromEnvironment) {
  ::setenv("CHEBIAS_FIXTURE_DIR", (source_dir / "fixtures").c_str(), 1);
  const auto out = temp_path("env.csv");
  const auto r = run({"count", "--field", "paper32", "--limit", "2000", "--out", out.string(), "-q"});
  ::unsetenv("CHEBIAS_FIXTURE_DIR");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.err.empty());
  EXPECT_TRUE(fs::exists(out));
  fs::remove(out);
}

TEST(Cli, CountIsThreadIndependent) {
  const auto a = temp_path("t1.csv"), b = temp_path("t4.csv");
  const auto fixture = (source_dir / "fixtures" / "paper32").string();
  ASSERT_EQ(run({"count", "--field", fixture, "--limit", "3e5", "--out", a.string(), "--threads", "1"}).code, 0);
  ASSERT_EQ(run({"count", "--field", fixture, "--limit", "3e5", "--out", b.string(), "--threads", "4"}).code, 0);
  EXPECT_EQ(read_file(a), read_file(b));
  fs::remove(a);
  fs::remove(b);
}

TEST(Cli, CountCyclotomic) {
  const auto out = temp_path("cyc.csv");
  const auto r = run({"count", "--cyclotomic", "8", "--t", "one", "--limit", "1e4", "--out", out.string(), "--mobius"});
  EXPECT_EQ(r.code, 0) << r.err;
  fs::remove(out);
}

TEST(Cli, FieldValidateAndCyclotomic) {
  EXPECT_EQ(run({"field", "validate", (source_dir / "fixtures" / "paper32.json").string(), "--samples", "2"}).code, 0);
  const auto path = temp_path("cyc15.json");
  ASSERT_EQ(run({"field", "cyclotomic", "15", "--out", path.string()}).code, 0);
  EXPECT_EQ(run({"field", "validate", path.string(), "--samples", "3"}).code, 0);

  auto j = nlohmann::json::parse(read_file(path));
  j["automorphisms"][2]["coeffs"][1] = "5/1";
  std::ofstream(path) << j.dump();
  const auto bad = run({"field", "validate", path.string(), "--samples", "3"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("invalid"), std::string::npos);

  j["poly"][0] = "7";
  std::ofstream(path) << j.dump();
  EXPECT_EQ(run({"field", "validate", path.string()}).code, 1);
  fs::remove(path);
}

TEST(Cli, SearchEmitsJsonLines) {
  const auto r = run({"search", "--degree", "8"});
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  bool wreath_like = false;
  std::size_t n = 0;
  for (std::string line; std::getline(lines, line); ++n) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_TRUE(j["valid"].get<bool>());
    wreath_like |= j["ambient_order"] == 32 && j["sub_order"] == 8 && j["r_gap"] == 4;
  }
  EXPECT_GT(n, 0u);
  EXPECT_TRUE(wreath_like);
}

TEST(Cli, GroupParseAndShow) {
  const auto p = run({"group", "parse", "(12)(34)", "--degree", "8"});
  EXPECT_EQ(p.code, 0);
  EXPECT_EQ(p.out, "(1 2)(3 4)\n2 1 4 3 5 6 7 8\n");
  const auto s = run({"group", "show", "--degree", "8", "(12)(34)", "(5678)", "(15)(27)(36)(48)"});
  EXPECT_EQ(s.code, 0);
  EXPECT_NE(s.out.find("order 32"), std::string::npos);
  EXPECT_NE(s.out.find("abelian no"), std::string::npos);
  EXPECT_EQ(run({"group", "parse", "(1 1)"}).code, 1);
}
