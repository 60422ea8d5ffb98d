// Drives the ghzpur binary through a shell.

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ghzpur_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  std::string read(const std::string& name) {
    std::ifstream in(dir_ / name);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }

  CliRun run(const std::string& args, const std::string& env = "") {
    const fs::path log = dir_ / "stdout.txt";
    const std::string cmd = env + " \"" GHZPUR_CLI_PATH "\" " + args + " > \"" + log.string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(log);
    std::ostringstream os;
    os << in.rdbuf();
    return {WEXITSTATUS(status), os.str()};
  }

  std::string out_flag() const { return " --out-dir \"" + dir_.string() + "\""; }

  fs::path dir_;
};

// The report line for one validation check.
std::string check_line(const std::string& out, const std::string& name) {
  std::istringstream in(out);
  for (std::string line; std::getline(in, line);) {
    if (line.rfind(name + " ", 0) == 0) return line;
  }
  return "";
}

const char* kWerner = R"({"n_qubits": 3, "initial": {"type": "werner", "x": 0.8},
  "schedule": ["P1", "P2"], "mode": "even-plus-odd"})";

}  // namespace

TEST_F(Cli, RunWritesTraceAndSummary) {
  const auto cfg = write("w.json", kWerner);
  const auto r = run("run \"" + cfg.string() + "\"" + out_flag());
  ASSERT_EQ(r.code, 0) << r.out;
  const std::string csv = read("trace.csv");
  EXPECT_EQ(csv.rfind("round,step,fidelity,keep_probability,cumulative_yield\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);  // header + init + 3 rounds
  const auto summary = nlohmann::json::parse(read("summary.json"));
  EXPECT_TRUE(summary["converged"].get<bool>());
  EXPECT_EQ(summary["mode"], "even-plus-odd");
}

TEST_F(Cli, IdenticalConfigGivesIdenticalBytes) {
  const auto cfg = write("w.json", kWerner);
  ASSERT_EQ(run("run \"" + cfg.string() + "\"" + out_flag()).code, 0);
  const std::string first = read("trace.csv") + read("summary.json");
  ASSERT_EQ(run("run \"" + cfg.string() + "\"" + out_flag()).code, 0);
  EXPECT_EQ(first, read("trace.csv") + read("summary.json"));
}

TEST_F(Cli, PerfectInputGivesSingleRow) {
  const auto r = run("run --F 1 --n 3" + out_flag());
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(read("trace.csv"), "round,step,fidelity,keep_probability,cumulative_yield\n0,init,1,1,1\n");
}

TEST_F(Cli, FlagsOverrideTheFile) {
  const auto cfg = write("w.json", kWerner);
  const auto r = run("run \"" + cfg.string() + "\" --schedule P1 --rounds 2 --mode even-only" + out_flag());
  ASSERT_EQ(r.code, 0) << r.out;
  const auto summary = nlohmann::json::parse(read("summary.json"));
  EXPECT_EQ(summary["schedule"], "P1");
  EXPECT_EQ(summary["rounds"], 2);
  EXPECT_EQ(summary["mode"], "even-only");
}

TEST_F(Cli, NonConvergenceHasItsOwnExitCode) {
  const auto cfg = write("w.json", kWerner);
  const auto r = run("run \"" + cfg.string() + "\" --schedule P1" + out_flag());
  EXPECT_EQ(r.code, 3) << r.out;
  EXPECT_TRUE(fs::exists(dir_ / "trace.csv"));
}

TEST_F(Cli, ConfigErrors) {
  const auto bad = write("bad.json", "{\n \"n_qubits\": 3,\n \"initial\": {\"type\": \"werner\" \"x\": 0.8}\n}");
  auto r = run("run \"" + bad.string() + "\"" + out_flag());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("line 3"), std::string::npos) << r.out;

  const auto cfg = write("w.json", kWerner);
  r = run("run \"" + cfg.string() + "\" --n 7 --engine exact" + out_flag());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("n_qubits"), std::string::npos) << r.out;

  EXPECT_EQ(run("run --bogus").code, 2);
  EXPECT_EQ(run("run \"" + (dir_ / "missing.json").string() + "\"").code, 2);
}

TEST_F(Cli, OutputDirectoryFromEnvironment) {
  const auto cfg = write("w.json", kWerner);
  const fs::path env_dir = dir_ / "from_env";
  const auto r = run("run \"" + cfg.string() + "\"", "GHZPUR_OUT_DIR=\"" + env_dir.string() + "\"");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(fs::exists(env_dir / "trace.csv"));
}

TEST_F(Cli, SweepOverWernerGrid) {
  const auto cfg = write("w.json", kWerner);
  const auto r = run("sweep \"" + cfg.string() + "\" --grid 0.6:0.9:0.1" + out_flag());
  ASSERT_EQ(r.code, 0) << r.out;
  const std::string csv = read("sweep.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
  EXPECT_NE(csv.find(",0.65000000000000002,"), std::string::npos) << csv;
  EXPECT_NE(csv.find(",0.91249999999999998,"), std::string::npos) << csv;
}

TEST_F(Cli, SweepAtHalfMixing) {
  const auto cfg = write("w.json", kWerner);
  const auto r = run("sweep \"" + cfg.string() + "\" --grid 0.5:0.5:0.1" + out_flag());
  EXPECT_NE(read("sweep.csv").find("0.5,0.5625,"), std::string::npos) << r.out;
}

TEST_F(Cli, SweepWithoutGridIsAUsageError) {
  const auto cfg = write("w.json", kWerner);
  EXPECT_EQ(run("sweep \"" + cfg.string() + "\"" + out_flag()).code, 2);
  const auto empty = write("e.json", R"({"initial": {"type": "werner", "x": 0.8}, "grid": {"values": []}})");
  EXPECT_EQ(run("sweep \"" + empty.string() + "\"" + out_flag()).code, 2);
}

TEST_F(Cli, Validate) {
  auto r = run("validate --n-max 3 --cases 20");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(check_line(r.out, "oracle-equivalence-p2").find("PASS"), std::string::npos) << r.out;
  r = run("validate --n-max 3 --cases 20 --corrupt-p2-table");
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(check_line(r.out, "p2-correction").find("FAIL"), std::string::npos) << r.out;
  EXPECT_NE(check_line(r.out, "p1-correction").find("PASS"), std::string::npos) << r.out;
  EXPECT_EQ(run("validate --n-max 6").code, 2);
}
