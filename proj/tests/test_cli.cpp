#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include <doctest.h>

#include "dropoff/trace.hpp"

using namespace dropoff;
namespace fs = std::filesystem;

namespace {

struct CmdResult {
  int code = -1;
  std::string output;
};

CmdResult run_cli(const std::string& args) {
  const std::string cmd =
      std::string("\"") + DROPOFF_CLI_PATH + "\" " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CmdResult r;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof(buf), pipe)) {
    r.output.append(buf, got);
  }
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() /
                       ("dropoff_cli_" + std::to_string(getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::size_t count_occurrences(const std::string& text,
                              const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("cli reports a version") {
  const CmdResult r = run_cli("--version");
  CHECK(r.code == 0);
  CHECK(r.output.find("0.1.0") != std::string::npos);
}

TEST_CASE("cli simulate is deterministic and replayable from its manifest") {
  const fs::path a = fresh_dir("sim_a");
  const fs::path b = fresh_dir("sim_b");
  const fs::path c = fresh_dir("sim_c");
  const std::string common =
      "simulate --k 5 --steps 60 --seed 7 --price USTAR_LOCAL --out ";

  CHECK(run_cli(common + "\"" + a.string() + "\"").code == 0);
  CHECK(run_cli(common + "\"" + b.string() + "\"").code == 0);
  const std::string trace_a = read_file(a / "trace.csv");
  CHECK(trace_a == read_file(b / "trace.csv"));

  const CmdResult replay = run_cli("simulate --config \"" +
                                   (a / "manifest.json").string() +
                                   "\" --out \"" + c.string() + "\"");
  CHECK(replay.code == 0);
  CHECK(trace_a == read_file(c / "trace.csv"));
}

TEST_CASE("cli simulate with a zero step budget records only the start") {
  const fs::path dir = fresh_dir("sim_zero");
  const CmdResult r = run_cli("simulate --k 4 --steps 0 --seed 3 --out \"" +
                              dir.string() + "\"");
  CHECK(r.code == 0);
  const Trace tr = read_trace_csv((dir / "trace.csv").string());
  CHECK(tr.steps.size() == 1);
  CHECK(tr.steps[0].positions.size() == 4);
  CHECK_FALSE(tr.terminal);
}

TEST_CASE("cli maps failures to distinct exit codes") {
  const fs::path dir = fresh_dir("codes");

  const fs::path bad_cfg = dir / "bad.json";
  {
    std::ofstream out(bad_cfg);
    out << R"({"k": 4, "stepz": 10})";
  }
  const CmdResult unknown_key = run_cli("simulate --config \"" +
                                        bad_cfg.string() + "\" --out \"" +
                                        dir.string() + "\"");
  CHECK(unknown_key.code == 2);
  CHECK(unknown_key.output.find("stepz") != std::string::npos);

  const CmdResult bad_objective = run_cli(
      "optimum --objective MIN_FUN --k 2 --budget 10 --out \"" + dir.string() +
      "\"");
  CHECK(bad_objective.code == 2);

  const fs::path coincident = dir / "coincident.txt";
  {
    std::ofstream out(coincident);
    out << "0.25 0.25\n0.25 0.25\n";
  }
  const CmdResult degenerate = run_cli("simulate --k 2 --steps 5 --init \"" +
                                       coincident.string() + "\" --out \"" +
                                       dir.string() + "\"");
  CHECK(degenerate.code == 3);
}

TEST_CASE("cli render draws a cell per car and incircles at the generators") {
  const fs::path dir = fresh_dir("render");

  CHECK(run_cli("simulate --k 9 --steps 30 --seed 11 --out \"" +
                dir.string() + "\"").code == 0);
  const fs::path svg = dir / "run.svg";
  CHECK(run_cli("render --trace \"" + (dir / "trace.csv").string() +
                "\" --out \"" + svg.string() + "\"").code == 0);
  const std::string image = read_file(svg);
  CHECK(image.find("<svg") != std::string::npos);
  CHECK(count_occurrences(image, "class=\"cell\"") == 9);
  CHECK(count_occurrences(image, "class=\"car-final\"") == 9);

  const fs::path many = fresh_dir("render_many");
  CHECK(run_cli("simulate --k 33 --steps 0 --seed 5 --out \"" +
                many.string() + "\"").code == 0);
  const fs::path many_svg = many / "run.svg";
  CHECK(run_cli("render --trace \"" + (many / "trace.csv").string() +
                "\" --out \"" + many_svg.string() + "\"").code == 0);
  CHECK(count_occurrences(read_file(many_svg), "class=\"cell\"") == 33);
}

TEST_CASE("cli render shows the exact safety margin of a balanced grid") {
  const fs::path dir = fresh_dir("render_grid");
  const fs::path points = dir / "grid.txt";
  {
    std::ofstream out(points);
    out << std::setprecision(17);
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        out << (2 * a + 1) / 6.0 << " " << (2 * b + 1) / 6.0 << "\n";
      }
    }
  }
  CHECK(run_cli("simulate --k 9 --steps 0 --init \"" + points.string() +
                "\" --out \"" + dir.string() + "\"").code == 0);
  const fs::path svg = dir / "grid.svg";
  CHECK(run_cli("render --trace \"" + (dir / "trace.csv").string() +
                "\" --out \"" + svg.string() + "\"").code == 0);
  const std::string image = read_file(svg);
  CHECK(count_occurrences(image, "class=\"incircle\"") == 9);
  CHECK(count_occurrences(image, "r=\"0.16666667\"") == 9);
}

TEST_CASE("cli optimum finds the single-car center cost") {
  const fs::path dir = fresh_dir("optimum");
  const CmdResult r = run_cli(
      "optimum --objective SOCIAL_MAX --k 1 --budget 20000 --seed 2 --out \"" +
      dir.string() + "\"");
  CHECK(r.code == 0);
  const std::size_t pos = r.output.find("cost=");
  REQUIRE(pos != std::string::npos);
  const double cost = std::strtod(r.output.c_str() + pos + 5, nullptr);
  CHECK(cost == doctest::Approx(2.0).epsilon(0.02));
  CHECK(fs::exists(dir / "optimum_points.txt"));
  CHECK(fs::exists(dir / "optimum_summary.txt"));
}

TEST_CASE("cli compare runs one start under several prices") {
  const fs::path dir = fresh_dir("compare");
  const fs::path cfg = dir / "compare.json";
  {
    std::ofstream out(cfg);
    out << R"({"k": 4, "steps": 60, "seed": 9, "s_max": 0.05,
               "prices": [{"price": "USTAR_LOCAL"},
                          {"price": "W", "neighborhood": 1}]})";
  }
  const CmdResult r = run_cli("compare --config \"" + cfg.string() +
                              "\" --out \"" + dir.string() + "\"");
  CHECK(r.code == 0);
  CHECK(r.output.find("C*") != std::string::npos);
  CHECK(r.output.find("USTAR_LOCAL") != std::string::npos);
  CHECK(r.output.find("W(1)") != std::string::npos);
  CHECK(fs::exists(dir / "compare_1_USTAR_LOCAL.csv"));
  CHECK(fs::exists(dir / "compare_2_W.csv"));
}
