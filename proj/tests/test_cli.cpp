#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pmi/cli.hpp"
#include "pmi/errors.hpp"
#include "pmi/problem_file.hpp"
#include "pmi/scalarize.hpp"
#include "pmi/sdpa.hpp"

using namespace pmi;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(PMI_TEST_DATA) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("pmicert_test_" + name)).string();
}

void expect_golden(const std::string& name, const std::string& actual) {
  std::string path = data(name);
  if (std::getenv("PMI_UPDATE_GOLDEN")) {
    std::ofstream(path) << actual;
    return;
  }
  EXPECT_EQ(actual, slurp(path)) << "golden file " << name;
}

}  // namespace

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(run({}).code, cli::kExitInputError);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitInputError);
  EXPECT_EQ(run({"scalarize", data("interval_x.pmi"), "--bogus"}).code, cli::kExitInputError);
  EXPECT_EQ(run({"scalarize", data("missing.pmi")}).code, cli::kExitInputError);
  CliRun r = run({"scalarize", data("asymmetric.pmi")});
  EXPECT_EQ(r.code, cli::kExitInputError);
  EXPECT_NE(r.err.find("symmetric"), std::string::npos);
  EXPECT_EQ(run({"bound", "--formula", "nope"}).code, cli::kExitInputError);
}

TEST(Cli, ScalarizeGolden) {
  CliRun r = run({"scalarize", data("matrix_x.pmi")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("entries 6"), std::string::npos);
  expect_golden("scalarize_matrix_x.golden", r.out);
  EXPECT_EQ(run({"scalarize", data("matrix_x.pmi")}).out, r.out);
}

TEST(Cli, ScalarizeJsonReparses) {
  CliRun r = run({"--json", "scalarize", data("matrix_x.pmi")});
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  ProblemFile p = read_problem_file(data("matrix_x.pmi"));
  ScalarizedSystem s = scalarize(*p.G);
  ASSERT_EQ(j["entries"].size(), s.entries.size());
  for (std::size_t i = 0; i < s.entries.size(); ++i) {
    EXPECT_EQ(Polynomial::parse(j["entries"][i]["d"].get<std::string>(), 1), s.entries[i].d);
    for (std::size_t k = 0; k < 2; ++k)
      EXPECT_EQ(Polynomial::parse(j["entries"][i]["v"][k].get<std::string>(), 1), s.entries[i].v(k, 0));
  }
}

TEST(Cli, BoundGolden) {
  CliRun r = run({"bound", "--formula", "putinar-matrix", "--json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["k"], "330225942528");
  expect_golden("bound_all_ones.golden", r.out);
  CliRun t = run({"bound", "--formula", "theta", "--m", "3"});
  EXPECT_EQ(t.out, "theta(3) = 42\n");
}

TEST(Cli, RelaxInterval) {
  std::string sdpa = temp_path("interval.dat-s"), cert = temp_path("interval.qmc");
  CliRun r = run({"relax", "--order", "1", data("interval_x.pmi"), "--export-sdpa", sdpa, "--emit-certificate", cert});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("f_1 = -1"), std::string::npos) << r.out;
  SdpaData d = parse_sdpa(slurp(sdpa));
  EXPECT_EQ(d.mdim, 3);
  EXPECT_EQ(d.block_sizes, (std::vector<int>{2, 1}));

  CliRun j = run({"--json", "relax", "--order", "1", data("interval_x.pmi")});
  auto js = nlohmann::json::parse(j.out);
  std::string gamma = js["certified_gamma"];
  EXPECT_EQ(run({"verify", cert, data("interval_x.pmi"), "--gamma", gamma}).code, 0);
  // Without the shift the certificate proves x + 1, not x.
  EXPECT_EQ(run({"verify", cert, data("interval_x.pmi")}).code, cli::kExitFailure);
}

TEST(Cli, VerifyTamperedCertificateNamesBlock) {
  std::string cert = temp_path("assembled.qmc");
  CliRun c = run({"certify-simplex", data("two_x_x_two.pmi"), "-o", cert});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(run({"verify", cert, data("two_x_x_two.pmi")}).code, 0);
  std::string text = slurp(cert);
  auto pos = text.find("weight ");
  ASSERT_NE(pos, std::string::npos);
  text.insert(pos + 7, "-");
  std::string bad = temp_path("tampered.qmc");
  std::ofstream(bad) << text;
  CliRun v = run({"verify", bad, data("two_x_x_two.pmi")});
  EXPECT_EQ(v.code, cli::kExitFailure);
  EXPECT_NE(v.err.find("multiplier 1"), std::string::npos) << v.err;
}

TEST(Cli, PolyaFailureExitsOne) {
  CliRun r = run({"polya", data("square_x.pmi")});
  EXPECT_EQ(r.code, cli::kExitFailure);
  EXPECT_NE(r.err.find("witness 0"), std::string::npos) << r.err;
  CliRun ok = run({"--json", "polya", data("two_x_x_two.pmi")});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(nlohmann::json::parse(ok.out)["degree"], 1);
}

TEST(Cli, HomogenizeReportsMinimum) {
  CliRun r = run({"--json", "homogenize", data("shifted_square.pmi")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["ftilde_min"].get<double>(), 1.5 - std::sqrt(5.0) / 2, 1e-4);
  EXPECT_EQ(run({"homogenize", data("shifted_square.pmi")}).out, run({"homogenize", data("shifted_square.pmi")}).out);
}

TEST(Cli, ExportSdpaDeterministic) {
  CliRun a = run({"export-sdpa", data("matrix_x.pmi"), "--order", "2"});
  CliRun b = run({"export-sdpa", data("matrix_x.pmi"), "--order", "2"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  SdpaData d = parse_sdpa(a.out);
  EXPECT_EQ(d.mdim, 5);
  EXPECT_EQ(d.block_sizes, (std::vector<int>{3, 4}));
}

TEST(ProblemFile, PrintParseRoundTrip) {
  for (const char* f : {"interval_x.pmi", "matrix_x.pmi", "two_x_x_two.pmi", "shifted_square.pmi"}) {
    ProblemFile p = read_problem_file(data(f));
    std::string text = print_problem(p);
    ProblemFile q = parse_problem(text);
    EXPECT_EQ(print_problem(q), text);
    EXPECT_EQ(q.F.has_value(), p.F.has_value());
    if (p.F) EXPECT_EQ(*q.F, *p.F);
    if (p.G) EXPECT_EQ(*q.G, *p.G);
  }
  EXPECT_THROW(parse_problem("{\"n\": 1, \"l\": 1, \"F\": [{\"row\": 0, \"col\": 0, \"terms\": [{\"exp\": [1, 2], \"coef\": \"1\"}]}]}"),
               InputError);
  EXPECT_THROW(parse_problem("not json"), InputError);
}
