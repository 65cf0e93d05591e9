#include <pjl/cli.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "test_util.hpp"

using namespace pjl;
using namespace pjl::cli;

namespace {

ParseResult parse(std::vector<std::string> args, const char* env = nullptr) {
  std::vector<const char*> argv{"pjl"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return parse_args(static_cast<int>(argv.size()), argv.data(), env);
}

ErrorKind parse_error(std::vector<std::string> args) {
  try {
    parse(std::move(args));
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}

int run_main(std::vector<std::string> args, std::string* out_text = nullptr) {
  std::vector<const char*> argv{"pjl"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int rc = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  return rc;
}

const ResultRow* find_row(const Report& r, const std::string& name) {
  for (const auto& row : r.results)
    if (row.name == name) return &row;
  return nullptr;
}

std::filesystem::path temp_file(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST(CliParse, Defaults) {
  const auto r = parse({"verify-all"});
  EXPECT_FALSE(r.help);
  EXPECT_EQ(r.config.command, Command::VerifyAll);
  EXPECT_EQ(r.config.digits, 60u);
  EXPECT_EQ(r.config.output, OutputFormat::Json);
  EXPECT_FALSE(r.config.grid.has_value());
}

TEST(CliParse, FlagsAndGrid) {
  const auto r = parse({"painleve", "--alpha", "0.3", "--n", "3", "--grid", "0.5,1.5,20", "--output", "csv"});
  EXPECT_EQ(r.config.command, Command::Painleve);
  EXPECT_EQ(r.config.alpha, "0.3");
  EXPECT_EQ(r.config.n, 3u);
  ASSERT_TRUE(r.config.grid.has_value());
  EXPECT_EQ(r.config.grid->points, 20u);
  EXPECT_EQ(r.config.output, OutputFormat::Csv);
}

TEST(CliParse, EnvironmentDigits) {
  EXPECT_EQ(parse({"moments"}, "45").config.digits, 45u);
  EXPECT_EQ(parse({"moments", "--digits", "70"}, "45").config.digits, 70u);
  try {
    parse({"moments"}, "20");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UsageError);
  }
}

TEST(CliParse, ConfigFileUnderFlags) {
  const auto path = temp_file("pjl_cli_config_test.json");
  {
    std::ofstream f(path);
    f << R"({"alpha": 0.3, "beta": "1.5", "t": 2, "n_max": 5, "digits": 40, "grid": {"t_min": 0.5, "t_max": 1, "points": 9}})";
  }
  const auto r = parse({"aux", "--config", path.string(), "--beta", "0.5"});
  EXPECT_EQ(r.config.alpha, "0.3");
  EXPECT_EQ(r.config.beta, "0.5");
  EXPECT_EQ(r.config.t, "2");
  EXPECT_EQ(r.config.n_max, 5u);
  EXPECT_EQ(r.config.digits, 40u);
  ASSERT_TRUE(r.config.grid.has_value());
  EXPECT_EQ(r.config.grid->points, 9u);
  {
    std::ofstream f(path);
    f << R"({"alpha": 0.3, "colour": "red"})";
  }
  EXPECT_EQ(parse_error({"aux", "--config", path.string()}), ErrorKind::UsageError);
  std::filesystem::remove(path);
  EXPECT_EQ(parse_error({"aux", "--config", "/nonexistent/pjl.json"}), ErrorKind::IoError);
}

TEST(CliParse, UsageErrors) {
  EXPECT_EQ(parse_error({"moments", "--digits", "10"}), ErrorKind::UsageError);
  EXPECT_EQ(parse_error({"moments", "--n-max", "65"}), ErrorKind::UsageError);
  EXPECT_EQ(parse_error({"moments", "--grid", "0.5,1,1"}), ErrorKind::UsageError);
  EXPECT_EQ(parse_error({"moments", "--grid", "1,0.5,10"}), ErrorKind::UsageError);
  EXPECT_EQ(parse_error({"moments", "--alpha", "abc"}), ErrorKind::UsageError);
  EXPECT_EQ(parse_error({"moments", "--alpha", "-1"}), ErrorKind::UsageError);
  EXPECT_EQ(parse_error({"moments", "--case", "5"}), ErrorKind::UsageError);
  EXPECT_EQ(parse_error({"moments", "--output", "xml"}), ErrorKind::UsageError);
  EXPECT_EQ(parse_error({"integrate"}), ErrorKind::UsageError);
  EXPECT_EQ(parse_error({}), ErrorKind::UsageError);
  EXPECT_EQ(parse_error({"moments", "--frobnicate"}), ErrorKind::UsageError);
}

TEST(CliRun, MomentsPiHalf) {
  RunConfig cfg;
  cfg.command = Command::Moments;
  cfg.t = "0";
  const Report r = build_report(cfg);
  const ResultRow* mu0 = find_row(r, "mu_0");
  ASSERT_NE(mu0, nullptr);
  ASSERT_TRUE(mu0->value.has_value());
  EXPECT_EQ(mu0->value->substr(0, 61), "1.57079632679489661923132169163975144209858469968755291048747");
  EXPECT_EQ(r.exit_code(), 0);
}

TEST(CliRun, FredholmTrivial) {
  RunConfig cfg;
  cfg.command = Command::Fredholm;
  cfg.kernel_case = 1;
  cfg.t = "0";
  const Report r = build_report(cfg);
  const ResultRow* det = find_row(r, "fredholm_det[case 1, n=1]");
  ASSERT_NE(det, nullptr);
  EXPECT_EQ(det->value->substr(0, 12), "1.0000000000");
  const ResultRow* gap = find_row(r, "fredholm identity[case 1, n=1]");
  ASSERT_NE(gap, nullptr);
  EXPECT_EQ(*gap->residual, "0.000000e+00");
  EXPECT_EQ(r.exit_code(), 0);
}

TEST(CliRun, PrintedVariantsAreReportOnly) {
  RunConfig cfg;
  cfg.command = Command::Painleve;
  cfg.n = 2;
  cfg.grid = GridSpec{"0.5", "1", 9};
  const Report r = build_report(cfg);
  unsigned printed = 0;
  for (const auto& row : r.results) {
    if (row.name.find("printed") != std::string::npos) {
      ++printed;
      EXPECT_EQ(row.status, Status::Report) << row.name;
    }
  }
  EXPECT_GE(printed, 2u);
  EXPECT_EQ(r.exit_code(), 0);
}

TEST(CliRun, DeterministicJsonAndCsvColumns) {
  RunConfig cfg;
  cfg.command = Command::Recurrence;
  cfg.n_max = 3;
  const std::string a = to_json(build_report(cfg), false);
  const std::string b = to_json(build_report(cfg), false);
  EXPECT_EQ(a, b);
  const auto j = nlohmann::json::parse(a);
  EXPECT_EQ(j["command"], "recurrence");
  EXPECT_FALSE(j["environment"].contains("timestamp"));
  EXPECT_EQ(j["environment"]["digits"], 60);
  for (const auto& row : j["results"]) {
    EXPECT_TRUE(row.contains("name") && row.contains("status") && row.contains("paper_ref"));
    EXPECT_TRUE(row.contains("value") || row.contains("residual") || row["status"] == "skipped");
    EXPECT_FALSE(row["paper_ref"].get<std::string>().empty());
  }
  const Report rep = build_report(cfg);
  const std::string csv = to_csv(rep);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "command,name,value,residual,relative,tolerance,status,paper_ref,note");
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), rep.results.size() + 1);
}

TEST(CliRun, SkipsOutsideDomain) {
  RunConfig cfg;
  cfg.command = Command::Aux;
  cfg.alpha = "-0.5";
  cfg.n_max = 2;
  const Report r = build_report(cfg);
  const ResultRow* q = find_row(r, "r_n, R_n quadrature");
  ASSERT_NE(q, nullptr);
  EXPECT_EQ(q->status, Status::Skipped);
  EXPECT_EQ(r.exit_code(), 0);
}

TEST(CliMain, ExitCodes) {
  std::string out;
  EXPECT_EQ(run_main({"moments", "--t", "0", "--n", "1"}, &out), 0);
  EXPECT_NE(out.find("1.5707963267948966192313216916397514420985846996875"), std::string::npos);
  // No route agrees to 1e-100 at 60 digits.
  EXPECT_EQ(run_main({"aux", "--n-max", "2", "--tol", "1e-100"}), 1);
  EXPECT_EQ(run_main({"moments", "--digits", "10"}), 2);
  EXPECT_EQ(run_main({"moments", "--out", "/nonexistent/dir/report.json"}), 2);
  EXPECT_EQ(run_main({"--help"}, &out), 0);
  EXPECT_NE(out.find("--n-max"), std::string::npos);
}

TEST(CliMain, WritesOutFile) {
  const auto path = temp_file("pjl_cli_out_test.csv");
  EXPECT_EQ(run_main({"moments", "--t", "0.5", "--output", "csv", "--out", path.string()}), 0);
  std::ifstream f(path);
  std::string header;
  std::getline(f, header);
  EXPECT_EQ(header.rfind("command,name", 0), 0u);
  std::filesystem::remove(path);
}
