#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "dualslope/cli/run.hpp"

namespace dualslope::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string log;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream log;
  const int code = main(args, out, log);
  return {code, out.str(), log.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("dualslope_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(Format, NineSignificantDigits) {
  EXPECT_EQ(format_number(0.1234567891234), "0.123456789");
  EXPECT_EQ(format_number(-10.0), "-10");
  EXPECT_EQ(format_number(1e-7), "1e-07");
  EXPECT_EQ(format_number(123456789012.0), "1.23456789e+11");
  EXPECT_DOUBLE_EQ(db_to_linear(10.0), 10.0);
  EXPECT_DOUBLE_EQ(linear_to_db(100.0), 20.0);
}

TEST(Options, DbRangeIsInclusive) {
  const auto r = parse_db_range("-10:20:1");
  ASSERT_EQ(r.size(), 31u);
  EXPECT_EQ(r.front(), -10.0);
  EXPECT_EQ(r.back(), 20.0);
  EXPECT_EQ(parse_db_range("3").size(), 1u);
  EXPECT_EQ(parse_db_range("0:1:0.25").size(), 5u);
  EXPECT_THROW(parse_db_range("1:0:1"), InvalidScalar);
  EXPECT_THROW(parse_db_range("0:1"), InvalidScalar);
  EXPECT_THROW(parse_db_range("a"), InvalidScalar);
}

TEST(Cli, CoverageFigureOneCaption) {
  const auto r = invoke({"coverage", "--dim", "3d", "--a0", "3.3", "--a1", "5", "--rc", "0.4",
                         "--lambda", "10", "--sigma2", "1", "--tdb", "-10:20:1"});
  ASSERT_EQ(r.code, 0) << r.log;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 32u);
  EXPECT_EQ(rows[0], "T_dB,Pc_sinr,Pc_sir,Pc_snr");
  EXPECT_EQ(rows[1].substr(0, 4), "-10,");
  EXPECT_EQ(rows[31].substr(0, 3), "20,");
  const auto m = make_model(DimTag::ThreeD, 3.3, 5.0, 0.4, 10.0, 1.0);
  EXPECT_EQ(rows[11], "0," + format_number(coverage_sinr(m, 1.0)) + "," +
                          format_number(coverage_sir(m, 1.0)) + "," +
                          format_number(coverage_snr(m, 1.0)));
  EXPECT_EQ(r.out, invoke({"coverage", "--tdb", "-10:20:1"}).out);
}

TEST(Cli, LinearThresholdList) {
  const auto r = invoke({"coverage", "--t", "1,10", "--dim", "2d", "--a0", "4", "--a1", "4",
                         "--sigma2", "0"});
  ASSERT_EQ(r.code, 0) << r.log;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1], "0,0.560099154,0.560099154,1");
  EXPECT_EQ(rows[2].substr(0, 3), "10,");
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const auto dir = scratch_dir("config");
  const auto cfg = dir / "run.ini";
  std::ofstream(cfg) << "dim = 2d\na0 = 4\na1 = 4\nsigma2 = 0\ntdb = 0\n";
  const auto base = invoke({"coverage", "--config", cfg.string()});
  ASSERT_EQ(base.code, 0) << base.log;
  EXPECT_EQ(lines(base.out).at(1), "0,0.560099154,0.560099154,1");
  const auto over = invoke({"coverage", "--config", cfg.string(), "--tdb", "3"});
  EXPECT_EQ(lines(over.out).at(1).substr(0, 2), "3,");
}

TEST(Cli, SweepAndThroughput) {
  const auto s = invoke({"sweep", "--a0", "2.5", "--a1", "4", "--lambda-min", "1", "--lambda-max",
                         "100", "--per-decade", "4", "--tdb", "0", "--metric", "sir"});
  ASSERT_EQ(s.code, 0) << s.log;
  const auto rows = lines(s.out);
  ASSERT_EQ(rows.size(), 10u);
  EXPECT_EQ(rows[0], "lambda,value");
  EXPECT_EQ(rows[1].substr(0, 2), "1,");
  const auto t = invoke({"throughput", "--a0", "2", "--a1", "4", "--lambda-min", "1e3",
                         "--lambda-max", "1e5", "--per-decade", "4", "--tdb", "0"});
  ASSERT_EQ(t.code, 0) << t.log;
  EXPECT_EQ(lines(t.out)[0], "lambda,throughput");
  EXPECT_NE(t.log.find("regime: sublinear"), std::string::npos);
  EXPECT_NE(t.log.find("last-decade log-log slope: 0.4"), std::string::npos) << t.log;
  EXPECT_EQ(invoke({"sweep", "--tdb", "0:3:1"}).code, kExitError);
}

TEST(Cli, SimulateIsByteIdenticalAcrossWorkers) {
  const std::vector<std::string> base{"simulate", "--lambda", "2", "--trials", "3000", "--seed",
                                      "9", "--eps", "5e-3", "--tdb", "-10:20:5"};
  auto with = [&](const char* workers) {
    auto args = base;
    args.insert(args.end(), {"--workers", workers});
    return invoke(args);
  };
  const auto one = with("1");
  const auto four = with("4");
  ASSERT_EQ(one.code, 0) << one.log;
  EXPECT_EQ(lines(one.out)[0], "T_dB,p_hat,ci");
  EXPECT_EQ(lines(one.out).size(), 8u);
  EXPECT_EQ(one.out, four.out);
}

TEST(Cli, CompareReportsAgreementColumn) {
  const auto ok = invoke({"compare", "--lambda", "2", "--trials", "20000", "--eps", "5e-3", "--tdb",
                          "-10:20:10"});
  EXPECT_EQ(ok.code, kExitOk) << ok.out << ok.log;
  const auto rows = lines(ok.out);
  EXPECT_EQ(rows[0], "T_dB,Pc_analytic,p_hat,ci,agree");
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(rows[i].substr(rows[i].size() - 4), "pass");
}

TEST(Cli, CompareExitsNonzeroOnDisagreement) {
  // One trial gives p_hat in {0, 1} with a zero-width CI; with no margin that
  // cannot match 0 < P_c < 1.
  const auto r = invoke({"compare", "--lambda", "2", "--trials", "1", "--eps", "5e-3", "--tdb",
                         "0", "--margin", "0"});
  EXPECT_EQ(r.code, kExitDisagree) << r.out;
  EXPECT_NE(lines(r.out).at(1).find(",fail"), std::string::npos);
}

TEST(Cli, FigureTwoWritesCsvAndSvg) {
  const auto dir = scratch_dir("fig2");
  const auto r = invoke({"figure", "2", "--out-dir", dir.string(), "--per-decade", "4"});
  ASSERT_EQ(r.code, 0) << r.log;
  const auto csv = lines(slurp(dir / "fig2.csv"));
  ASSERT_GT(csv.size(), 3u);
  EXPECT_EQ(csv[0].substr(0, 2), "# ");
  EXPECT_EQ(csv[1], "lambda,Pc_sinr_a2.5,Pc_sir_a2.5,Pc_sinr_a3.5,Pc_sir_a3.5");
  // The alpha0 = 2.5 SINR curve ends below its peak and keeps falling.
  std::vector<double> col;
  for (std::size_t i = 2; i < csv.size(); ++i) {
    std::istringstream row(csv[i]);
    std::string cell;
    std::getline(row, cell, ',');
    std::getline(row, cell, ',');
    col.push_back(std::stod(cell));
  }
  const double peak = *std::max_element(col.begin(), col.end());
  EXPECT_LT(col.back(), 0.5 * peak);
  EXPECT_LT(col.back(), col[col.size() - 2]);
  const auto svg = slurp(dir / "fig2.svg");
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_EQ(svg.find("<script"), std::string::npos);
  EXPECT_EQ(svg.find("href"), std::string::npos);
  EXPECT_EQ(std::count(svg.begin(), svg.end(), '\n') > 10, true);
}

TEST(Cli, FigureOutputDirFromEnvironment) {
  const auto dir = scratch_dir("env");
  ::setenv("DUALSLOPE_OUTPUT_DIR", dir.string().c_str(), 1);
  const auto r = invoke({"figure", "3", "--per-decade", "2"});
  ::unsetenv("DUALSLOPE_OUTPUT_DIR");
  ASSERT_EQ(r.code, 0) << r.log;
  EXPECT_TRUE(fs::exists(dir / "fig3.csv"));
  EXPECT_TRUE(fs::exists(dir / "fig3.svg"));
  EXPECT_NE(r.log.find("alpha0=2: sublinear"), std::string::npos) << r.log;
}

TEST(Cli, FigureOneSmallRun) {
  const auto dir = scratch_dir("fig1");
  const auto r = invoke({"figure", "1", "--out-dir", dir.string(), "--trials", "300"});
  ASSERT_EQ(r.code, 0) << r.log;
  const auto csv = lines(slurp(dir / "fig1.csv"));
  ASSERT_EQ(csv.size(), 33u);
  EXPECT_NE(csv[0].find("eps=0.005"), std::string::npos);
  EXPECT_EQ(csv[1].substr(0, 20), "T_dB,Pc_3d_lambda10,");
  // 3D+ at lambda and 3D at lambda/2 share a closed form.
  std::istringstream row(csv[12]);
  std::vector<std::string> cells;
  for (std::string c; std::getline(row, c, ',');) cells.push_back(c);
  EXPECT_EQ(cells[2], cells[3]);
}

TEST(Cli, InvalidInputsExitNonzero) {
  EXPECT_EQ(invoke({"coverage", "--dim", "4d"}).code, kExitError);
  EXPECT_EQ(invoke({"coverage", "--a0", "6", "--a1", "5"}).code, kExitError);
  EXPECT_EQ(invoke({"coverage", "--a1", "3"}).code, kExitError);
  EXPECT_EQ(invoke({"coverage", "--tdb", "1:0:1"}).code, kExitError);
  EXPECT_EQ(invoke({"figure", "4"}).code, kExitError);
  EXPECT_EQ(invoke({}).code, kExitError);
  EXPECT_EQ(invoke({"bogus"}).code, kExitError);
  EXPECT_EQ(invoke({"coverage", "--t", "-1"}).code, kExitError);
  const auto e = invoke({"coverage", "--lambda", "-1"});
  EXPECT_EQ(e.code, kExitError);
  EXPECT_NE(e.log.find("error:"), std::string::npos);
  EXPECT_EQ(invoke({"--help"}).code, kExitOk);
}

}  // namespace
}  // namespace dualslope::cli
