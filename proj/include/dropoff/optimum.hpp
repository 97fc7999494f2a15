#pragma once

#include <cstddef>
#include <cstdint>

#include "dropoff/geometry.hpp"
#include "dropoff/pricing.hpp"

namespace dropoff {

enum class ObjectiveKind { SocialMax, SumUstar, SumV, SumW };

struct ObjectiveSpec {
  ObjectiveKind kind = ObjectiveKind::SocialMax;
  int neighborhood = 1;  // |D| for SumV / SumW
};

struct OptimumResult {
  FleetState state;
  double cost = 0.0;
  ObjectiveSpec objective;
  std::uint64_t search_budget = 0;  // objective evaluations consumed
};

double evaluate_objective(const ObjectiveSpec& obj, const FleetState& state,
                          const ConvexRegion& q);

// The i² grid at ((2a+1)/(2i), (2b+1)/(2i)): clipped Voronoi cells are
// congruent squares of side 1/i, every safety margin is 1/(2i).
FleetState analytic_square_grid(int i);
double analytic_square_optimum_cost(int i);  // 2i

// Derivative-free multi-start coordinate pattern search over all 2k
// coordinates. Deterministic given seed; best-found upper bound, certified
// optimal only against the analytic square constructions. The first budget
// evaluations of a longer run coincide with a shorter run's, so the returned
// cost is monotone non-increasing in budget.
OptimumResult global_search_optimum(const ObjectiveSpec& obj,
                                    const ConvexRegion& q, std::size_t k,
                                    std::uint64_t budget, std::uint64_t seed);

// Summed-price variant used for optimum-shape comparisons; obj.kind must be
// one of SumUstar / SumV / SumW.
OptimumResult evaluate_best_possible(const ObjectiveSpec& obj,
                                     const ConvexRegion& q, std::size_t k,
                                     std::uint64_t budget, std::uint64_t seed);

}  // namespace dropoff
