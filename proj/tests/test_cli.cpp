#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "vlab/config.hpp"
#include "vlab/io.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

std::string binary() {
  const char* env = std::getenv("VLAB_BIN");
  REQUIRE_MESSAGE(env != nullptr, "VLAB_BIN must point at the CLI binary");
  return env;
}

RunResult run(const std::string& args, const std::string& env_prefix = "") {
  std::string cmd = env_prefix + binary() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) res.output.append(buf.data(), n);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

fs::path work_dir() {
  fs::path p = fs::temp_directory_path() / "vlab_cli_test";
  fs::create_directories(p);
  return p;
}

std::string write_config(const std::string& name, const vlab::RunConfig& c) {
  fs::path p = work_dir() / name;
  vlab::atomic_write_text(p, vlab::emit_config(c));
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("solve: default configuration converges and writes a summary") {
  fs::path out = work_dir() / "solve_out";
  RunResult r = run("solve --grid 64x64 --out " + out.string());
  CHECK(r.exit_code == 0);
  auto summary = nlohmann::json::parse(slurp(out / "summary.json"));
  CHECK(summary["residual1"].get<double>() < 1e-8);
  CHECK(summary["residual2"].get<double>() < 1e-10);
  CHECK(summary["integral_identity_defect"].get<double>() < 1e-6);
  CHECK(fs::exists(out / "density.csv"));
  CHECK(fs::exists(out / "density.vlab"));
}

TEST_CASE("solve: Bradlow violation exits with code 2 and names the bound") {
  vlab::RunConfig c;
  c.nx = 32;
  c.ny = 32;
  c.lx = 1.0;
  c.ly = 1.0;  // area 1 < pi
  c.positions = {{0.5, 0.5}};
  std::string cfg = write_config("bradlow.toml", c);
  RunResult r = run("solve --config " + cfg);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("Bradlow") != std::string::npos);
}

TEST_CASE("malformed configs exit with code 1 and a diagnostic") {
  fs::path p = work_dir() / "broken.toml";
  vlab::atomic_write_text(p, "[surface]\nnx = banana\n");
  RunResult r = run("solve --config " + p.string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("config") != std::string::npos);

  RunResult r2 = run("solve --config " + (work_dir() / "missing.toml").string());
  CHECK(r2.exit_code == 1);

  RunResult r3 = run("frobnicate");
  CHECK(r3.exit_code == 1);
}

TEST_CASE("verify: battery passes, reports are written and deterministic") {
  vlab::RunConfig c;
  c.nx = 64;
  c.ny = 64;
  c.battery_count = 4;
  std::string cfg = write_config("verify.toml", c);
  fs::path out1 = work_dir() / "verify1", out2 = work_dir() / "verify2";

  RunResult r1 = run("verify --config " + cfg + " --out " + out1.string());
  CHECK(r1.exit_code == 0);
  CHECK(r1.output.find("all identities hold") != std::string::npos);
  CHECK(r1.output.find("seed") != std::string::npos);

  RunResult r2 = run("verify --config " + cfg + " --out " + out2.string());
  CHECK(r2.exit_code == 0);
  CHECK(slurp(out1 / "reports.json") == slurp(out2 / "reports.json"));

  auto reports = nlohmann::json::parse(slurp(out1 / "reports.json"));
  CHECK(reports.is_array());
  bool saw_prequantum = false;
  for (const auto& item : reports) {
    CHECK(item["pass"].get<bool>());
    if (item["name"].get<std::string>().rfind("prequantum", 0) == 0) saw_prequantum = true;
  }
  CHECK(saw_prequantum);
}

TEST_CASE("verify: the sabotage hook flips the verdict and the exit code") {
  vlab::RunConfig c;
  c.nx = 48;
  c.ny = 48;
  c.battery_count = 2;
  std::string cfg = write_config("sabotage.toml", c);
  fs::path out = work_dir() / "sabotage_out";
  RunResult r = run("verify --sabotage-omega --config " + cfg + " --out " + out.string());
  CHECK(r.exit_code != 0);
  CHECK(r.output.find("FAIL") != std::string::npos);
}

TEST_CASE("tangents: writes the Gram matrix of the projected basis") {
  fs::path out = work_dir() / "tangents_out";
  RunResult r = run("tangents --grid 64x64 --out " + out.string());
  CHECK(r.exit_code == 0);
  std::string gram = slurp(out / "gram.csv");
  CHECK(gram.find("#") == 0);
  // 2x2 matrix: two data lines
  int lines = 0;
  for (char ch : gram) {
    if (ch == '\n') ++lines;
  }
  CHECK(lines == 3);
}

TEST_CASE("sweep: rows are emitted for every position and stay consistent") {
  fs::path out = work_dir() / "sweep_out";
  RunResult r = run("sweep --steps 2 --grid 48x48 --out " + out.string());
  CHECK(r.exit_code == 0);
  std::string csv = slurp(out / "sweep.csv");
  CHECK(csv.find("x,y,G11,G12,G22,Om12,OmPsi12,status") == 0);
  int data_lines = -1;  // header
  for (char ch : csv) {
    if (ch == '\n') ++data_lines;
  }
  CHECK(data_lines == 4);
  CHECK(csv.find("error") == std::string::npos);

  // re-running the same position set reproduces the rows exactly, even with
  // the thread cap exercised
  fs::path out2 = work_dir() / "sweep_out2";
  RunResult r2 =
      run("sweep --steps 2 --grid 48x48 --out " + out2.string(), "VLAB_THREADS=2 ");
  CHECK(r2.exit_code == 0);
  CHECK(slurp(out / "sweep.csv") == slurp(out2 / "sweep.csv"));
}

TEST_CASE("sweep: a nonconstant conformal factor breaks translation symmetry") {
  vlab::RunConfig c;
  c.nx = 48;
  c.ny = 48;
  c.h_profile = "cosine";
  c.h_params = {1.0, 0.2, 0.1};
  std::string cfg = write_config("sweep_h.toml", c);
  fs::path out = work_dir() / "sweep_h_out";
  // three steps per axis so the sample points see different values of h
  RunResult r = run("sweep --steps 3 --config " + cfg + " --out " + out.string());
  CHECK(r.exit_code == 0);

  std::istringstream csv(slurp(out / "sweep.csv"));
  std::string line;
  std::getline(csv, line);  // header
  std::vector<double> g11;
  while (std::getline(csv, line)) {
    std::istringstream row(line);
    std::string cell;
    std::getline(row, cell, ',');
    std::getline(row, cell, ',');
    std::getline(row, cell, ',');
    g11.push_back(std::stod(cell));
  }
  REQUIRE(g11.size() == 9);
  double lo = *std::min_element(g11.begin(), g11.end());
  double hi = *std::max_element(g11.begin(), g11.end());
  CHECK((hi - lo) / lo > 1e-4);
}
