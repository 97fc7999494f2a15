#include "dropoff/optimum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dropoff/rng.hpp"

namespace dropoff {

namespace {

// Per-car prices sorted descending for SocialMax, so lexicographic comparison
// still makes progress across plateaus of the max; a single summed value
// otherwise. The leading entry always equals the objective value.
std::vector<double> score_state(const ObjectiveSpec& obj, const FleetState& s,
                                const ConvexRegion& q);

Point sample_in_region(SplitMix64& rng, const ConvexRegion& q) {
  const Point lo = q.bbox_min();
  const Point hi = q.bbox_max();
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const Point p{lo.x + rng.uniform01() * (hi.x - lo.x),
                  lo.y + rng.uniform01() * (hi.y - lo.y)};
    if (contains(q, p, 0.0)) {
      return p;
    }
  }
  throw std::runtime_error("global search: region sampling stalled");
}

FleetState lattice_start(SplitMix64& rng, const ConvexRegion& q,
                         std::size_t k) {
  std::size_t m = 1;
  while (m * m < k) {
    ++m;
  }
  const Point lo = q.bbox_min();
  const Point hi = q.bbox_max();
  const double cw = (hi.x - lo.x) / m;
  const double ch = (hi.y - lo.y) / m;
  FleetState s;
  s.positions.reserve(k);
  for (std::size_t a = 0; a < m && s.positions.size() < k; ++a) {
    for (std::size_t b = 0; b < m && s.positions.size() < k; ++b) {
      const Point p{lo.x + (a + 0.5) * cw + (rng.uniform01() - 0.5) * 0.25 * cw,
                    lo.y + (b + 0.5) * ch + (rng.uniform01() - 0.5) * 0.25 * ch};
      s.positions.push_back(contains(q, p, 0.0) ? p : sample_in_region(rng, q));
    }
  }
  return s;
}

FleetState random_start(SplitMix64& rng, const ConvexRegion& q,
                        std::size_t k) {
  FleetState s;
  s.positions.reserve(k);
  for (std::size_t u = 0; u < k; ++u) {
    s.positions.push_back(sample_in_region(rng, q));
  }
  return s;
}

std::vector<double> score_state(const ObjectiveSpec& obj, const FleetState& s,
                                const ConvexRegion& q) {
  if (obj.kind == ObjectiveKind::SocialMax) {
    std::vector<double> v(s.size());
    for (std::size_t u = 0; u < s.size(); ++u) {
      v[u] = inconvenience_ustar(s, u, q);
    }
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
  }
  return {evaluate_objective(obj, s, q)};
}

}  // namespace

double evaluate_objective(const ObjectiveSpec& obj, const FleetState& state,
                          const ConvexRegion& q) {
  if (state.size() == 0) {
    throw std::invalid_argument("evaluate_objective: empty fleet");
  }
  switch (obj.kind) {
    case ObjectiveKind::SocialMax:
      return social_cost(state, q);
    case ObjectiveKind::SumUstar: {
      double sum = 0.0;
      for (std::size_t u = 0; u < state.size(); ++u) {
        sum += inconvenience_ustar(state, u, q);
      }
      return sum;
    }
    case ObjectiveKind::SumV: {
      double sum = 0.0;
      for (std::size_t u = 0; u < state.size(); ++u) {
        sum += price_v(state, u, q, PriceSpec{PriceKind::V, obj.neighborhood});
      }
      return sum;
    }
    case ObjectiveKind::SumW: {
      double sum = 0.0;
      for (std::size_t u = 0; u < state.size(); ++u) {
        sum += price_w(state, u, q, PriceSpec{PriceKind::W, obj.neighborhood});
      }
      return sum;
    }
  }
  throw std::logic_error("unknown objective kind");
}

FleetState analytic_square_grid(int i) {
  if (i < 1) {
    throw std::invalid_argument("analytic_square_grid: i must be positive");
  }
  FleetState s;
  s.positions.reserve(static_cast<std::size_t>(i) * i);
  for (int a = 0; a < i; ++a) {
    for (int b = 0; b < i; ++b) {
      s.positions.push_back(Point{(2.0 * a + 1.0) / (2.0 * i),
                                  (2.0 * b + 1.0) / (2.0 * i)});
    }
  }
  return s;
}

double analytic_square_optimum_cost(int i) {
  if (i < 1) {
    throw std::invalid_argument("analytic_square_optimum_cost: i must be positive");
  }
  return 2.0 * i;
}

OptimumResult global_search_optimum(const ObjectiveSpec& obj,
                                    const ConvexRegion& q, std::size_t k,
                                    std::uint64_t budget, std::uint64_t seed) {
  if (k < 1) {
    throw std::invalid_argument("global_search_optimum: k must be positive");
  }
  if (budget == 0) {
    throw std::invalid_argument("global_search_optimum: budget must be positive");
  }
  const Point lo = q.bbox_min();
  const Point hi = q.bbox_max();
  const double extent = std::max(hi.x - lo.x, hi.y - lo.y);

  std::uint64_t evals = 0;
  FleetState best_state;
  std::vector<double> best_score;
  bool have = false;

  auto try_eval = [&](const FleetState& s, std::vector<double>* out) {
    if (evals >= budget) {
      return false;
    }
    ++evals;
    *out = score_state(obj, s, q);
    return true;
  };

  for (std::uint64_t start = 0; evals < budget; ++start) {
    SplitMix64 rng{mix_seed(seed, start)};
    FleetState s =
        start == 0 ? lattice_start(rng, q, k) : random_start(rng, q, k);
    std::vector<double> sc;
    if (!try_eval(s, &sc)) {
      break;
    }
    double h = extent / 8.0;
    while (h > 1e-7 && evals < budget) {
      bool improved = false;
      for (std::size_t c = 0; c < 2 * k && evals < budget; ++c) {
        for (const double sign : {1.0, -1.0}) {
          FleetState cand = s;
          Point& p = cand.positions[c / 2];
          (c % 2 == 0 ? p.x : p.y) += sign * h;
          if (!contains(q, p)) {
            continue;
          }
          std::vector<double> csc;
          if (!try_eval(cand, &csc)) {
            break;
          }
          if (csc < sc) {
            s = std::move(cand);
            sc = std::move(csc);
            improved = true;
            break;
          }
        }
      }
      if (!improved) {
        h *= 0.5;
      }
    }
    if (!have || sc < best_score) {
      best_state = std::move(s);
      best_score = std::move(sc);
      have = true;
    }
  }

  OptimumResult r;
  r.state = std::move(best_state);
  r.cost = evaluate_objective(obj, r.state, q);
  r.objective = obj;
  r.search_budget = evals;
  return r;
}

OptimumResult evaluate_best_possible(const ObjectiveSpec& obj,
                                     const ConvexRegion& q, std::size_t k,
                                     std::uint64_t budget, std::uint64_t seed) {
  if (obj.kind == ObjectiveKind::SocialMax) {
    throw std::invalid_argument("evaluate_best_possible: expects a summed objective");
  }
  return global_search_optimum(obj, q, k, budget, seed);
}

}  // namespace dropoff
