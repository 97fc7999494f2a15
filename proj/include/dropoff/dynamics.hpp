#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include "dropoff/geometry.hpp"
#include "dropoff/pricing.hpp"
#include "dropoff/trace.hpp"

namespace dropoff {

// Thrown when a simulation reaches a state with coincident cars.
struct degenerate_state_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Schedule { Permuted, Iid, Cyclic };
enum class SimMode { Async, Sync };

struct SolverParams {
  int grid_resolution = 32;
  double refine_tolerance = 1e-9;
  int max_refine_iters = 200;
};

struct StepParams {
  double s_max = std::numeric_limits<double>::infinity();
  SolverParams solver;
};

// 1-based car id for step n (0-based). Pure in (kind, seed, n, k): PERMUTED
// draws a fresh permutation per block of k steps, IID a fresh uniform id per
// step, CYCLIC needs no randomness.
std::size_t schedule_next(Schedule kind, std::uint64_t seed, std::size_t n,
                          std::size_t k);

// Constrained minimizer of car u's price over the region, other cars fixed.
// Multi-start lattice seeding plus compass refinement; near-ties resolve to
// the candidate closest to u's current position, then lexicographically.
Point inner_argmin(const PriceSpec& spec, const FleetState& state,
                   std::size_t u, const ConvexRegion& q,
                   const SolverParams& sp);

// Displacement toward the constrained minimizer, scaled by 1/c with
// c = max(1, ||D||/s_max) so its norm never exceeds s_max.
Point step(const PriceSpec& spec, const FleetState& state, std::size_t u,
           const ConvexRegion& q, const StepParams& p);

struct SimConfig {
  PriceSpec price;
  std::size_t k = 9;
  std::string region = "unit-square";
  Schedule schedule = Schedule::Permuted;
  SimMode mode = SimMode::Async;
  std::size_t steps = 1000;
  double s_max = 0.05;
  std::uint64_t seed = 0;
  std::size_t record_every = 1;
  double eps_fix = 1e-6;
  SolverParams solver;
  std::string init = "random";  // "random" or a points-file path
};

// k distinct positions strictly inside q, by seeded rejection sampling.
FleetState random_fleet(const ConvexRegion& q, std::size_t k,
                        std::uint64_t seed);

bool is_fixed_point(const PriceSpec& spec, const FleetState& state,
                    const ConvexRegion& q, const StepParams& p, double eps);

// One car per step, chosen by the schedule. Halts early once k consecutive
// steps each move less than eps_fix; the trace's terminal flag records this.
Trace simulate_async(const SimConfig& config, const ConvexRegion& q,
                     const FleetState& init);
// All cars move per round against the same snapshot; runs ceil(steps/k)
// rounds so a step budget compares like-for-like with the async dynamics.
Trace simulate_sync(const SimConfig& config, const ConvexRegion& q,
                    const FleetState& init);

// Resolve region and initial state from the config, then simulate per mode.
FleetState resolve_init(const SimConfig& config, const ConvexRegion& q);
Trace run_simulation(const SimConfig& config);

}  // namespace dropoff
