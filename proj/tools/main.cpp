#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dropoff/config.hpp"
#include "dropoff/dynamics.hpp"
#include "dropoff/optimum.hpp"
#include "dropoff/render.hpp"
#include "dropoff/trace.hpp"
#include "dropoff/version.hpp"

namespace {

using namespace dropoff;
namespace fs = std::filesystem;

ConvexRegion load_region_checked(const std::string& name) {
  try {
    return load_region(name);
  } catch (const std::exception& e) {
    throw config_error(std::string("config: key 'region': ") + e.what());
  }
}

FleetState resolve_init_checked(const SimConfig& config, const ConvexRegion& q) {
  try {
    return resolve_init(config, q);
  } catch (const std::invalid_argument& e) {
    throw config_error(std::string("config: key 'init': ") + e.what());
  }
}

double parse_smax(const std::string& text) {
  if (text == "inf") {
    return std::numeric_limits<double>::infinity();
  }
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size() || !(v > 0.0)) {
      throw std::invalid_argument(text);
    }
    return v;
  } catch (const std::exception&) {
    throw config_error("config: key 's_max' must be a positive number or \"inf\"");
  }
}

std::string price_label(const PriceSpec& spec) {
  if (spec.kind == PriceKind::UstarLocal) {
    return to_string(spec.kind);
  }
  return to_string(spec.kind) + "(" + std::to_string(spec.neighborhood) + ")";
}

Trace run_with(const SimConfig& config, const ConvexRegion& q,
               const FleetState& init) {
  return config.mode == SimMode::Sync ? simulate_sync(config, q, init)
                                      : simulate_async(config, q, init);
}

int cmd_simulate(const SimConfig& config, const std::string& out_dir) {
  fs::create_directories(out_dir);
  const ConvexRegion q = load_region_checked(config.region);
  const FleetState init = resolve_init_checked(config, q);
  const std::vector<std::string> warnings = config_warnings(config);
  for (const std::string& w : warnings) {
    std::cerr << "warning: " << w << "\n";
  }

  const auto t0 = std::chrono::steady_clock::now();
  const Trace trace = run_with(config, q, init);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  const std::string trace_path = (fs::path(out_dir) / "trace.csv").string();
  write_trace_csv(trace, trace_path);

  nlohmann::json manifest;
  manifest["version"] = kVersion;
  manifest["config"] = nlohmann::json::parse(sim_config_to_json(config));
  manifest["artifacts"] = {{"trace", trace_path}};
  manifest["wall_clock_seconds"] = wall;
  manifest["warnings"] = warnings;
  const std::string manifest_path =
      (fs::path(out_dir) / "manifest.json").string();
  std::ofstream mf(manifest_path);
  mf << manifest.dump(2) << "\n";
  if (!mf) {
    throw std::runtime_error("cannot write '" + manifest_path + "'");
  }

  const TraceStep& last = trace.steps.back();
  std::cout << "steps " << last.n << "  final social_cost "
            << last.social_cost << "  fixed_point "
            << (trace.terminal ? "yes" : "no") << "\n"
            << "trace " << trace_path << "\n"
            << "manifest " << manifest_path << "\n";
  return 0;
}

int cmd_render(const std::string& trace_path, const std::string& region_name,
               const std::string& out_path) {
  const Trace trace = read_trace_csv(trace_path);
  const ConvexRegion q = load_region_checked(region_name);
  render_trace_svg_file(trace, q, out_path);
  std::cout << "image " << out_path << "\n";
  return 0;
}

int cmd_optimum(const std::string& objective_name, std::size_t k,
                const std::string& region_name, std::uint64_t budget,
                std::uint64_t seed, int neighbors,
                const std::string& out_dir) {
  const ObjectiveSpec obj{parse_objective_kind(objective_name), neighbors};
  const ConvexRegion q = load_region_checked(region_name);
  fs::create_directories(out_dir);
  const OptimumResult r = global_search_optimum(obj, q, k, budget, seed);

  char line[256];
  std::snprintf(line, sizeof(line),
                "objective=%s k=%zu cost=%.12g evaluations=%llu",
                to_string(obj.kind).c_str(), k, r.cost,
                static_cast<unsigned long long>(r.search_budget));
  std::string summary(line);
  if (obj.kind != ObjectiveKind::SocialMax) {
    std::snprintf(line, sizeof(line), " social_cost=%.12g",
                  social_cost(r.state, q));
    summary += line;
  }
  std::cout << summary << "\n";

  const std::string points_path =
      (fs::path(out_dir) / "optimum_points.txt").string();
  save_points(points_path, r.state.positions);
  std::ofstream sf((fs::path(out_dir) / "optimum_summary.txt").string());
  sf << summary << "\n";
  std::cout << "points " << points_path << "\n";
  return 0;
}

int cmd_compare(const CompareConfig& cc, const std::string& out_dir,
                std::uint64_t budget) {
  fs::create_directories(out_dir);
  const ConvexRegion q = load_region_checked(cc.base.region);
  const FleetState init = resolve_init_checked(cc.base, q);

  double cstar = 0.0;
  bool analytic = false;
  if (cc.base.region == "unit-square") {
    const int i = static_cast<int>(std::lround(std::sqrt(double(cc.base.k))));
    if (i >= 1 && static_cast<std::size_t>(i) * i == cc.base.k) {
      cstar = analytic_square_optimum_cost(i);
      analytic = true;
    }
  }
  if (!analytic) {
    cstar = global_search_optimum(ObjectiveSpec{ObjectiveKind::SocialMax, 1},
                                  q, cc.base.k, budget, cc.base.seed)
                .cost;
  }

  std::printf("%-16s %14s %10s %8s %12s\n", "price", "final_cost", "C*",
              "ratio", "fixed_point");
  std::vector<std::string> notes;
  for (std::size_t i = 0; i < cc.prices.size(); ++i) {
    SimConfig config = cc.base;
    config.price = cc.prices[i];
    const Trace trace = run_with(config, q, init);
    const std::string trace_path =
        (fs::path(out_dir) /
         ("compare_" + std::to_string(i + 1) + "_" +
          to_string(config.price.kind) + ".csv"))
            .string();
    write_trace_csv(trace, trace_path);

    const TraceStep& last = trace.steps.back();
    const FleetState final_state{last.positions};
    const bool fixed =
        is_fixed_point(config.price, final_state, q,
                       StepParams{config.s_max, config.solver}, config.eps_fix);
    const double ratio = last.social_cost / cstar;
    std::printf("%-16s %14.6g %10.6g %8.4g %12s\n",
                price_label(config.price).c_str(), last.social_cost, cstar,
                ratio, fixed ? "yes" : "no");
    if (ratio > 1.1) {
      notes.push_back("note: " + price_label(config.price) +
                      " final cost exceeds 1.1 x reference");
    }
  }
  for (const std::string& n : notes) {
    std::cout << n << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"drop-off pricing simulator"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::string price_name;
  std::string schedule_name;
  std::string mode_name;
  std::string region_name = "unit-square";
  std::string init_path;
  std::string smax_text;
  std::string trace_path;
  std::string out_path = "trace.svg";
  std::string objective_name = "SOCIAL_MAX";
  std::uint64_t seed = 0;
  std::uint64_t budget = 200000;
  std::size_t k = 9;
  std::size_t steps = 0;
  std::size_t record_every = 1;
  int neighbors = 1;

  CLI::App* sim = app.add_subcommand("simulate", "run the dynamics, write trace and manifest");
  sim->add_option("--config", config_path, "JSON config or manifest");
  sim->add_option("--out", out_dir, "output directory");
  sim->add_option("--seed", seed, "RNG seed");
  sim->add_option("--k", k, "fleet size");
  sim->add_option("--price", price_name, "USTAR_LOCAL, V, or W");
  sim->add_option("--neighbors", neighbors, "|D| for V and W");
  sim->add_option("--schedule", schedule_name, "PERMUTED, IID, or CYCLIC");
  sim->add_option("--steps", steps, "per-car step budget");
  sim->add_option("--smax", smax_text, "step-length bound, number or inf");
  sim->add_option("--region", region_name, "region name or vertex file");
  sim->add_option("--mode", mode_name, "async or sync");
  sim->add_option("--record-every", record_every, "snapshot thinning stride");
  sim->add_option("--init", init_path, "initial points file, or 'random'");

  CLI::App* ren = app.add_subcommand("render", "render a trace to SVG");
  ren->add_option("--trace", trace_path, "trace CSV")->required();
  ren->add_option("--region", region_name, "region name or vertex file");
  ren->add_option("--out", out_path, "output SVG path");

  CLI::App* opt = app.add_subcommand("optimum", "search for a social optimum");
  opt->add_option("--objective", objective_name,
                  "SOCIAL_MAX, SUM_USTAR, SUM_V, or SUM_W");
  opt->add_option("--k", k, "fleet size");
  opt->add_option("--region", region_name, "region name or vertex file");
  opt->add_option("--budget", budget, "objective evaluation budget");
  opt->add_option("--seed", seed, "RNG seed");
  opt->add_option("--neighbors", neighbors, "|D| for SUM_V and SUM_W");
  opt->add_option("--out", out_dir, "output directory");

  CLI::App* cmp = app.add_subcommand("compare", "run one init under several prices");
  cmp->add_option("--config", config_path, "JSON config with a prices array")
      ->required();
  cmp->add_option("--out", out_dir, "output directory");
  cmp->add_option("--budget", budget, "oracle budget for the reference cost");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed()) {
      SimConfig config;
      if (sim->count("--config")) {
        config = load_sim_config(config_path);
      }
      if (sim->count("--seed")) config.seed = seed;
      if (sim->count("--k")) config.k = k;
      if (sim->count("--price")) config.price.kind = parse_price_kind(price_name);
      if (sim->count("--neighbors")) config.price.neighborhood = neighbors;
      if (sim->count("--schedule")) config.schedule = parse_schedule(schedule_name);
      if (sim->count("--steps")) config.steps = steps;
      if (sim->count("--smax")) config.s_max = parse_smax(smax_text);
      if (sim->count("--region")) config.region = region_name;
      if (sim->count("--mode")) config.mode = parse_sim_mode(mode_name);
      if (sim->count("--record-every")) config.record_every = record_every;
      if (sim->count("--init")) config.init = init_path;
      return cmd_simulate(config, out_dir);
    }
    if (ren->parsed()) {
      return cmd_render(trace_path, region_name, out_path);
    }
    if (opt->parsed()) {
      return cmd_optimum(objective_name, k, region_name, budget, seed,
                         neighbors, out_dir);
    }
    if (cmp->parsed()) {
      return cmd_compare(load_compare_config(config_path), out_dir, budget);
    }
  } catch (const config_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const degenerate_state_error& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
