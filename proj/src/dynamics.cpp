#include "dropoff/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "dropoff/rng.hpp"

namespace dropoff {

namespace {

constexpr std::uint64_t kStreamSchedule = 1;
constexpr std::uint64_t kStreamInit = 2;

// Safety valve so plateau walks cannot run unbounded; generous next to the
// few hundred evaluations a typical refinement needs.
constexpr long kRefineEvalCap = 100000;

void validate_solver(const SolverParams& sp) {
  if (sp.grid_resolution < 2) {
    throw std::invalid_argument("solver: grid_resolution must be at least 2");
  }
  if (!(sp.refine_tolerance > 0.0)) {
    throw std::invalid_argument("solver: refine_tolerance must be positive");
  }
  if (sp.max_refine_iters < 1) {
    throw std::invalid_argument("solver: max_refine_iters must be positive");
  }
}

void validate_sim(const SimConfig& config) {
  if (config.k < 1) {
    throw std::invalid_argument("config: k must be positive");
  }
  if (!(config.s_max > 0.0)) {
    throw std::invalid_argument("config: s_max must be positive");
  }
  if (!(config.eps_fix > 0.0)) {
    throw std::invalid_argument("config: eps_fix must be positive");
  }
  if (config.record_every < 1) {
    throw std::invalid_argument("config: record_every must be positive");
  }
  validate_solver(config.solver);
}

struct Candidate {
  Point p;
  double value = 0.0;
  double disp2 = 0.0;
};

// Strictly better: smaller value beyond a near-tie band, then smaller
// displacement from the car's current position, then lexicographic.
bool candidate_better(const Candidate& a, const Candidate& b) {
  const double tol =
      1e-12 * std::max(1.0, std::min(std::abs(a.value), std::abs(b.value)));
  if (a.value < b.value - tol) {
    return true;
  }
  if (b.value < a.value - tol) {
    return false;
  }
  if (a.disp2 != b.disp2) {
    return a.disp2 < b.disp2;
  }
  if (a.p.x != b.p.x) {
    return a.p.x < b.p.x;
  }
  return a.p.y < b.p.y;
}

constexpr double kDiag = 0.70710678118654752440;
constexpr std::array<Point, 8> kCompass = {{{1.0, 0.0},
                                            {-1.0, 0.0},
                                            {0.0, 1.0},
                                            {0.0, -1.0},
                                            {kDiag, kDiag},
                                            {kDiag, -kDiag},
                                            {-kDiag, kDiag},
                                            {-kDiag, -kDiag}}};

void check_initial(const FleetState& s, std::size_t k) {
  if (k == 0 || s.size() == 0) {
    throw std::invalid_argument("simulate: empty fleet");
  }
  if (s.size() != k) {
    throw std::invalid_argument("simulate: initial state has " +
                                std::to_string(s.size()) +
                                " cars, config expects " + std::to_string(k));
  }
  if (has_coincident_positions(s)) {
    throw degenerate_state_error("simulate: coincident initial positions");
  }
}

void record_step(Trace& tr, std::size_t n, int moved, const FleetState& s,
                 const ConvexRegion& q) {
  tr.steps.push_back(TraceStep{n, moved, s.positions, social_cost(s, q)});
}

}  // namespace

std::size_t schedule_next(Schedule kind, std::uint64_t seed, std::size_t n,
                          std::size_t k) {
  if (k < 1) {
    throw std::invalid_argument("schedule_next: k must be positive");
  }
  switch (kind) {
    case Schedule::Cyclic:
      return n % k + 1;
    case Schedule::Iid: {
      SplitMix64 rng{mix_seed(seed, n)};
      return static_cast<std::size_t>(rng.uniform_below(k)) + 1;
    }
    case Schedule::Permuted: {
      SplitMix64 rng{mix_seed(seed, n / k)};
      std::vector<std::size_t> order(k);
      std::iota(order.begin(), order.end(), std::size_t{1});
      rng.shuffle(order);
      return order[n % k];
    }
  }
  throw std::logic_error("unknown schedule");
}

Point inner_argmin(const PriceSpec& spec, const FleetState& state,
                   std::size_t u, const ConvexRegion& q,
                   const SolverParams& sp) {
  if (u >= state.size()) {
    throw std::out_of_range("inner_argmin: car index out of range");
  }
  validate_solver(sp);
  const Point cur = state.positions[u];
  auto make_candidate = [&](const Point& p) {
    const Point d = p - cur;
    return Candidate{p, price_at(spec, state.positions, u, p, q), norm2(d)};
  };

  Candidate best{};
  bool have = false;
  auto consider = [&](const Point& p) {
    if (!contains(q, p)) {
      return;
    }
    const Candidate c = make_candidate(p);
    if (!have || candidate_better(c, best)) {
      best = c;
      have = true;
    }
  };

  const Point lo = q.bbox_min();
  const Point hi = q.bbox_max();
  const double w = hi.x - lo.x;
  const double h = hi.y - lo.y;
  const int res = sp.grid_resolution;
  for (int i = 0; i < res; ++i) {
    for (int j = 0; j < res; ++j) {
      consider(Point{lo.x + (i + 0.5) * w / res, lo.y + (j + 0.5) * h / res});
    }
  }
  consider(cur);
  if (!have) {
    throw std::runtime_error("inner_argmin: no feasible candidate");
  }

  double step_h = std::max(w, h) / res;
  int halvings = 0;
  long evals = 0;
  while (step_h > sp.refine_tolerance && halvings < sp.max_refine_iters &&
         evals < kRefineEvalCap) {
    bool improved = false;
    for (const Point& d : kCompass) {
      const Point cand{best.p.x + step_h * d.x, best.p.y + step_h * d.y};
      if (!contains(q, cand)) {
        continue;
      }
      ++evals;
      const Candidate c = make_candidate(cand);
      if (candidate_better(c, best)) {
        best = c;
        improved = true;
        break;
      }
    }
    if (!improved) {
      step_h *= 0.5;
      ++halvings;
    }
  }
  return best.p;
}

Point step(const PriceSpec& spec, const FleetState& state, std::size_t u,
           const ConvexRegion& q, const StepParams& p) {
  if (!(p.s_max > 0.0)) {
    throw std::invalid_argument("step: s_max must be positive");
  }
  const Point target = inner_argmin(spec, state, u, q, p.solver);
  const Point d = target - state.positions[u];
  const double c = std::max(1.0, norm(d) / p.s_max);
  return d / c;
}

FleetState random_fleet(const ConvexRegion& q, std::size_t k,
                        std::uint64_t seed) {
  if (k < 1) {
    throw std::invalid_argument("random_fleet: k must be positive");
  }
  SplitMix64 rng{seed};
  const Point lo = q.bbox_min();
  const Point hi = q.bbox_max();
  const double margin = 1e-9;
  FleetState s;
  s.positions.reserve(k);
  std::size_t attempts = 0;
  const std::size_t max_attempts = 1000 * k + 1000;
  while (s.positions.size() < k) {
    if (++attempts > max_attempts) {
      throw std::runtime_error("random_fleet: rejection sampling stalled");
    }
    const Point p{lo.x + rng.uniform01() * (hi.x - lo.x),
                  lo.y + rng.uniform01() * (hi.y - lo.y)};
    if (!contains(q, p, 0.0) || boundary_distance(p, q) <= margin) {
      continue;
    }
    bool distinct = true;
    for (const Point& e : s.positions) {
      if (distance(p, e) <= margin) {
        distinct = false;
        break;
      }
    }
    if (distinct) {
      s.positions.push_back(p);
    }
  }
  return s;
}

bool is_fixed_point(const PriceSpec& spec, const FleetState& state,
                    const ConvexRegion& q, const StepParams& p, double eps) {
  for (std::size_t u = 0; u < state.size(); ++u) {
    if (norm(step(spec, state, u, q, p)) >= eps) {
      return false;
    }
  }
  return true;
}

Trace simulate_async(const SimConfig& config, const ConvexRegion& q,
                     const FleetState& init) {
  validate_sim(config);
  check_initial(init, config.k);
  const std::uint64_t sched_seed = mix_seed(config.seed, kStreamSchedule);
  const StepParams sp{config.s_max, config.solver};
  FleetState s = init;
  Trace tr;
  record_step(tr, 0, kMovedInit, s, q);
  std::size_t consec_small = 0;
  for (std::size_t n = 1; n <= config.steps; ++n) {
    const std::size_t u =
        schedule_next(config.schedule, sched_seed, n - 1, config.k) - 1;
    const Point d = step(config.price, s, u, q, sp);
    s.positions[u] = s.positions[u] + d;
    for (std::size_t v = 0; v < s.size(); ++v) {
      if (v != u && s.positions[v] == s.positions[u]) {
        throw degenerate_state_error("simulate: cars " + std::to_string(u + 1) +
                                     " and " + std::to_string(v + 1) +
                                     " coincide at step " + std::to_string(n));
      }
    }
    consec_small = norm(d) < config.eps_fix ? consec_small + 1 : 0;
    const bool terminal = consec_small >= config.k;
    if (terminal || n == config.steps || n % config.record_every == 0) {
      record_step(tr, n, static_cast<int>(u), s, q);
    }
    if (terminal) {
      tr.terminal = true;
      break;
    }
  }
  return tr;
}

Trace simulate_sync(const SimConfig& config, const ConvexRegion& q,
                    const FleetState& init) {
  validate_sim(config);
  check_initial(init, config.k);
  const std::size_t rounds =
      config.steps == 0 ? 0 : (config.steps + config.k - 1) / config.k;
  const StepParams sp{config.s_max, config.solver};
  FleetState s = init;
  Trace tr;
  record_step(tr, 0, kMovedInit, s, q);
  std::vector<Point> disp(config.k);
  for (std::size_t r = 1; r <= rounds; ++r) {
    bool all_small = true;
    for (std::size_t u = 0; u < config.k; ++u) {
      disp[u] = step(config.price, s, u, q, sp);
      if (norm(disp[u]) >= config.eps_fix) {
        all_small = false;
      }
    }
    for (std::size_t u = 0; u < config.k; ++u) {
      s.positions[u] = s.positions[u] + disp[u];
    }
    if (has_coincident_positions(s)) {
      throw degenerate_state_error("simulate: coincident positions after round " +
                                   std::to_string(r));
    }
    if (all_small || r == rounds || r % config.record_every == 0) {
      record_step(tr, r, kMovedAll, s, q);
    }
    if (all_small) {
      tr.terminal = true;
      break;
    }
  }
  return tr;
}

FleetState resolve_init(const SimConfig& config, const ConvexRegion& q) {
  if (config.init == "random") {
    return random_fleet(q, config.k, mix_seed(config.seed, kStreamInit));
  }
  FleetState s{load_points(config.init)};
  if (s.size() != config.k) {
    throw std::invalid_argument("init file '" + config.init + "' has " +
                                std::to_string(s.size()) +
                                " positions, config expects " +
                                std::to_string(config.k));
  }
  return s;
}

Trace run_simulation(const SimConfig& config) {
  validate_sim(config);
  const ConvexRegion q = load_region(config.region);
  const FleetState init = resolve_init(config, q);
  return config.mode == SimMode::Sync ? simulate_sync(config, q, init)
                                      : simulate_async(config, q, init);
}

}  // namespace dropoff
