#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <future>
#include <iostream>
#include <numbers>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "vlab/battery.hpp"
#include "vlab/io.hpp"

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::string grid_spec;
  std::uint64_t seed = 0;
  bool seed_given = false;
};

void add_common(CLI::App* sub, CommonOpts& o) {
  sub->add_option("--config", o.config_path, "run configuration file");
  sub->add_option("--out", o.out_dir, "output directory");
  sub->add_option("--seed", o.seed, "override the battery seed")->each([&](const std::string&) {
    o.seed_given = true;
  });
  sub->add_option("--grid", o.grid_spec, "override the grid, e.g. 128x128");
}

vlab::RunConfig resolve_config(const CommonOpts& o) {
  vlab::RunConfig c = o.config_path.empty() ? vlab::RunConfig{} : vlab::load_config(o.config_path);
  if (!o.grid_spec.empty()) {
    int nx = 0, ny = 0;
    if (std::sscanf(o.grid_spec.c_str(), "%dx%d", &nx, &ny) != 2 || nx < 4 || ny < 4) {
      throw vlab::ConfigError("bad --grid spec '" + o.grid_spec + "'");
    }
    c.nx = nx;
    c.ny = ny;
  }
  if (o.seed_given) c.seed = o.seed;
  if (!o.out_dir.empty()) c.output_dir = o.out_dir;
  return c;
}

int max_threads() {
  if (const char* env = std::getenv("VLAB_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(std::min(hw, 8u)) : 1;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int cmd_solve(const vlab::RunConfig& c) {
  vlab::VortexSolution sol = vlab::solve_from_config(c);
  fs::create_directories(c.output_dir);

  ojson summary;
  summary["degree"] = c.degree;
  summary["grid"] = std::to_string(c.nx) + "x" + std::to_string(c.ny);
  ojson pos = ojson::array();
  for (vlab::cplx z : sol.positions) pos.push_back({z.real(), z.imag()});
  summary["positions"] = pos;
  summary["area"] = sol.bundle.surf.area();
  summary["residual1"] = sol.residual1;
  summary["residual2"] = sol.residual2;
  summary["newton_iterations"] = sol.newton_iterations;
  summary["bradlow_integral"] = sol.bradlow_integral();
  summary["integral_identity_defect"] = sol.integral_identity_defect();
  summary["seed"] = c.seed;
  vlab::atomic_write_text(fs::path(c.output_dir) / "summary.json", summary.dump(2) + "\n");

  vlab::write_csv(fs::path(c.output_dir) / "density.csv", sol.density());
  vlab::write_csv(fs::path(c.output_dir) / "profile_v.csv", sol.v);
  vlab::write_snapshot(fs::path(c.output_dir) / "density.vlab", vlab::to_complex(sol.density()));
  vlab::write_snapshot(fs::path(c.output_dir) / "connection_a10.vlab", sol.A.a.c10);

  std::cout << "converged in " << sol.newton_iterations << " Newton steps; residual1 "
            << sol.residual1 << ", residual2 " << sol.residual2 << "\n"
            << "area " << sol.bundle.surf.area() << ", vortex area deficit "
            << sol.bundle.surf.area() - sol.bradlow_integral() << " (pi N = "
            << std::numbers::pi * c.degree << ")\n";
  return 0;
}

int cmd_verify(const vlab::RunConfig& c, bool sabotage) {
  vlab::BatteryHooks hooks;
  hooks.sabotage_omega = sabotage;
  vlab::BatteryResult result = vlab::run_verify_battery(c, hooks);
  fs::create_directories(c.output_dir);
  vlab::atomic_write_text(fs::path(c.output_dir) / "reports.json",
                          vlab::reports_to_json(result.reports, c));
  std::cout << "seed " << c.seed << "\n" << vlab::reports_to_table(result.reports);
  int failures = 0;
  for (const auto& r : result.reports) {
    if (!r.pass) ++failures;
  }
  std::cout << (failures == 0 ? "all identities hold\n"
                              : std::to_string(failures) + " identities failed\n");
  return failures == 0 ? 0 : 4;
}

int cmd_tangents(const vlab::RunConfig& c) {
  vlab::VortexSolution sol = vlab::solve_from_config(c);
  std::vector<vlab::TangentVector> basis;
  for (int k = 0; k < c.degree; ++k) {
    for (int dir : {0, 1}) {
      basis.push_back(vlab::gauge_project(sol, vlab::tangent_from_positions(sol, k, dir, 5e-4)));
    }
  }
  std::ostringstream csv;
  csv << "# gram matrix of the projected position basis (x0,y0,x1,y1,...)\n";
  for (const auto& X : basis) {
    bool first = true;
    for (const auto& Y : basis) {
      if (!first) csv << ",";
      csv << fmt(vlab::metric_g(sol.bundle, X, Y));
      first = false;
    }
    csv << "\n";
  }
  fs::create_directories(c.output_dir);
  vlab::atomic_write_text(fs::path(c.output_dir) / "gram.csv", csv.str());
  std::cout << csv.str();
  return 0;
}

int cmd_sweep(const vlab::RunConfig& c, int steps) {
  vlab::Surface s = vlab::surface_from_config(c);
  vlab::HermitianMetric H = vlab::metric_from_config(c, s.grid());

  struct Row {
    double x = 0, y = 0;
    double g11 = 0, g12 = 0, g22 = 0, om12 = 0, ompsi12 = 0;
    std::string status = "ok";
  };
  std::vector<Row> rows(static_cast<std::size_t>(steps) * steps);

  auto run_row = [&](int i, int j) {
    Row row;
    row.x = (i + 0.5) * c.lx / steps;
    row.y = (j + 0.5) * c.ly / steps;
    try {
      vlab::SolveOptions opts;
      opts.tol = c.tol;
      opts.max_iter = c.max_iter;
      vlab::VortexSolution sol =
          vlab::solve_vortices(s, H, 1, {vlab::cplx(row.x, row.y)}, opts);
      vlab::TangentVector tx =
          vlab::gauge_project(sol, vlab::tangent_from_positions(sol, 0, 0, 5e-4, opts));
      vlab::TangentVector ty =
          vlab::gauge_project(sol, vlab::tangent_from_positions(sol, 0, 1, 5e-4, opts));
      vlab::FixedSection psi0 = vlab::FixedSection::from_solution(sol);
      row.g11 = vlab::metric_g(sol.bundle, tx, tx);
      row.g12 = vlab::metric_g(sol.bundle, tx, ty);
      row.g22 = vlab::metric_g(sol.bundle, ty, ty);
      row.om12 = vlab::omega(sol.bundle, tx, ty);
      row.ompsi12 = vlab::omega_psi0(sol.bundle, psi0, tx, ty);
    } catch (const std::exception& e) {
      row.status = std::string("error: ") + e.what();
    }
    return row;
  };

  const int workers = max_threads();
  for (int base = 0; base < steps * steps; base += workers) {
    std::vector<std::future<Row>> futs;
    for (int k = base; k < std::min(base + workers, steps * steps); ++k) {
      futs.push_back(std::async(std::launch::async, run_row, k / steps, k % steps));
    }
    for (int k = base; k < std::min(base + workers, steps * steps); ++k) {
      rows[k] = futs[k - base].get();
    }
  }

  std::ostringstream csv;
  csv << "x,y,G11,G12,G22,Om12,OmPsi12,status\n";
  for (const Row& r : rows) {
    csv << fmt(r.x) << "," << fmt(r.y) << "," << fmt(r.g11) << "," << fmt(r.g12) << ","
        << fmt(r.g22) << "," << fmt(r.om12) << "," << fmt(r.ompsi12) << "," << r.status << "\n";
  }
  fs::create_directories(c.output_dir);
  vlab::atomic_write_text(fs::path(c.output_dir) / "sweep.csv", csv.str());
  std::cout << csv.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vlab: abelian vortex solutions on a flat torus and the geometry of their moduli"};
  app.require_subcommand(1);

  CommonOpts opts;
  bool sabotage = false;
  int sweep_steps = 4;

  CLI::App* solve = app.add_subcommand("solve", "solve the vortex equations");
  add_common(solve, opts);
  CLI::App* verify = app.add_subcommand("verify", "run the geometric identity battery");
  add_common(verify, opts);
  verify->add_flag("--sabotage-omega", sabotage, "test hook: corrupt a sign and expect failure")
      ->group("");
  CLI::App* tangents = app.add_subcommand("tangents", "moduli tangent basis and Gram matrix");
  add_common(tangents, opts);
  CLI::App* sweep = app.add_subcommand("sweep", "metric entries over a grid of vortex positions");
  add_common(sweep, opts);
  sweep->add_option("--steps", sweep_steps, "sweep resolution per axis")->check(CLI::Range(1, 64));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    vlab::RunConfig c = resolve_config(opts);
    if (solve->parsed()) return cmd_solve(c);
    if (verify->parsed()) return cmd_verify(c, sabotage);
    if (tangents->parsed()) return cmd_tangents(c);
    if (sweep->parsed()) return cmd_sweep(c, sweep_steps);
  } catch (const vlab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const vlab::BradlowBoundError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const vlab::SolverConvergenceError& e) {
    std::cerr << e.what() << " (last residual " << e.last_residual() << ")\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
