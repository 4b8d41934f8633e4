#include "aniso/cli.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "aniso");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = aniso::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

const std::string kUnit = R"({"a":[1],"b":[1]})";

}  // namespace

TEST(Cli, Widths) {
  const auto r = run({"widths", "--seq", kUnit, "--n", "1,2,4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 4u);
  EXPECT_EQ(l[0], "n,a_n");
  EXPECT_EQ(l[1], "1,1");
  EXPECT_EQ(l[2], "2,0.70710678118654746");
  EXPECT_EQ(l[3], "4,0.44721359549995793");
}

TEST(Cli, Bridge) {
  const auto r = run({"bridge", "--seq", kUnit, "--omega", "0.3678794", "--eps", "0.1353353"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 2u);
  EXPECT_NE(l[1].find(",3,3,true"), std::string::npos) << l[1];
}

TEST(Cli, Volume) {
  const auto r = run({"volume", "--b", "1,1,1", "--a", "1,1,1", "--t", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("1.333333333333333"), std::string::npos) << r.out;
}

TEST(Cli, CountExactRational) {
  const auto r = run({"count", "--seq", R"({"a":[1,1],"b":[1,1]})", "--threshold", "2", "--strict",
                      "--mode", "exact"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out).at(1), "2,lt,exact,5");
}

TEST(Cli, JsonRoundTrip) {
  const auto r = run({"eigs", "--seq", R"({"a":[1,2],"b":[0.7,1.3]})", "--omega", "0.3", "--n-max", "512",
                      "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 10u);
  EXPECT_EQ(nlohmann::json::parse(j.dump()), j);
  for (const auto& row : j) {
    const double lam = row["lambda_n"].get<double>();
    EXPECT_EQ(nlohmann::json::parse(nlohmann::json(lam).dump()).get<double>(), lam);
  }
}

TEST(Cli, ThreadCountDoesNotChangeOutput) {
  const std::string seq = R"({"a":[0.6,1.1,2.0],"b":[0.8,1.0,1.4]})";
  const auto one = run({"sandwich", "--seq", seq, "--m-max", "12", "--threads", "1"});
  const auto four = run({"sandwich", "--seq", seq, "--m-max", "12", "--threads", "4"});
  ASSERT_EQ(one.code, 0) << one.err;
  EXPECT_EQ(one.out, four.out);
  EXPECT_EQ(one.out, run({"sandwich", "--seq", seq, "--m-max", "12", "--threads", "1"}).out);
}

TEST(Cli, Classify) {
  const auto r = run({"classify", "--a-family", R"({"kind":"power","c":1,"alpha":1})", "--b-family",
                      R"({"kind":"constant","c":1})", "--st", "2,1", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  bool saw_wt = false;
  for (const auto& n : j["problem_I"]) {
    if (n["notion"] == "WT") {
      saw_wt = true;
      EXPECT_EQ(n["holds"], false);
    }
  }
  EXPECT_TRUE(saw_wt);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"widths", "--seq", kUnit, "--bogus"}).code, 1);
  EXPECT_NE(run({"widths", "--seq", kUnit, "--bogus"}).err.find("Usage"), std::string::npos);
  EXPECT_EQ(run({"widths", "--seq", "{not json"}).code, 1);
  EXPECT_EQ(run({"complexity", "--seq", R"({"a":[1],"b":[0.05]})", "--eps", "0.01"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, Probe) {
  const auto r = run({"probe", "--seq", kUnit, "--s", "2", "--t", "1", "--eps", "0.5,0.1", "--d", "1,2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 6u);
  EXPECT_EQ(l[0].rfind("# heuristic", 0), 0u);
  EXPECT_NE(l[5].find("input:"), std::string::npos);
}

TEST(Cli, EnvironmentThreadsOnlyWithoutFlag) {
  setenv("ANISO_THREADS", "3", 1);
  const auto env = run({"count", "--seq", kUnit, "--threshold", "100"});
  unsetenv("ANISO_THREADS");
  const auto flag = run({"count", "--seq", kUnit, "--threshold", "100", "--threads", "1"});
  EXPECT_EQ(env.out, flag.out);
}

TEST(Cli, ParseRational) {
  using aniso::cli::parse_rational;
  EXPECT_EQ(parse_rational("7/2"), aniso::Rational(7, 2));
  EXPECT_EQ(parse_rational("-3"), aniso::Rational(-3));
  EXPECT_EQ(parse_rational("4.5"), aniso::Rational(9, 2));
  EXPECT_EQ(parse_rational("1.25e-3"), aniso::Rational(1, 800));
  EXPECT_THROW(parse_rational("abc"), aniso::InputError);
  EXPECT_THROW(parse_rational("1/0"), aniso::InputError);
}

TEST(Cli, FormatDouble) {
  EXPECT_EQ(aniso::cli::format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(aniso::cli::format_double(3.0), "3");
}
