#include "dropoff/pricing.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace dropoff {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_car_index(const FleetState& state, std::size_t u) {
  if (u >= state.size()) {
    throw std::out_of_range("car index out of range");
  }
}

// |D| clamped to the number of other cars; 0 for a lone car.
std::size_t effective_neighborhood(int neighborhood, std::size_t k) {
  if (k < 2) {
    return 0;
  }
  const std::size_t want = neighborhood < 1 ? 1 : static_cast<std::size_t>(neighborhood);
  return std::min(want, k - 1);
}

double min_other_distance(std::span<const Point> positions, std::size_t u,
                          const Point& at) {
  double dmin = kInf;
  for (std::size_t v = 0; v < positions.size(); ++v) {
    if (v != u) {
      dmin = std::min(dmin, distance(at, positions[v]));
    }
  }
  return dmin;
}

std::vector<double> smallest_distances(std::span<const Point> positions,
                                       std::size_t u, const Point& at,
                                       std::size_t m) {
  std::vector<double> dists;
  dists.reserve(positions.size() - 1);
  for (std::size_t v = 0; v < positions.size(); ++v) {
    if (v != u) {
      dists.push_back(distance(at, positions[v]));
    }
  }
  std::partial_sort(dists.begin(), dists.begin() + m, dists.end());
  dists.resize(m);
  return dists;
}

}  // namespace

bool has_coincident_positions(const FleetState& state) {
  for (std::size_t u = 0; u < state.size(); ++u) {
    for (std::size_t v = u + 1; v < state.size(); ++v) {
      if (state.positions[u] == state.positions[v]) {
        return true;
      }
    }
  }
  return false;
}

std::vector<double> nearest_neighbor_distances(const FleetState& state,
                                               std::size_t u, std::size_t m) {
  check_car_index(state, u);
  if (m < 1 || m > state.size() - 1) {
    throw std::out_of_range("neighborhood size out of range");
  }
  return smallest_distances(state.positions, u, state.positions[u], m);
}

double inconvenience_ustar(const FleetState& state, std::size_t u,
                           const ConvexRegion& q) {
  check_car_index(state, u);
  return price_at({PriceKind::UstarLocal, 1}, state.positions, u,
                  state.positions[u], q);
}

double safety_margin(const FleetState& state, std::size_t u,
                     const ConvexRegion& q) {
  check_car_index(state, u);
  const double bd = boundary_distance(state.positions[u], q);
  const double dmin = min_other_distance(state.positions, u, state.positions[u]);
  return std::min(bd, 0.5 * dmin);
}

double price_v_from_distances(double boundary_dist,
                              std::span<const double> neighbor_dists) {
  double mn = 0.5 * boundary_dist;
  for (double d : neighbor_dists) {
    mn = std::min(mn, d);
  }
  return 1.0 / mn;
}

double price_w_from_distances(double boundary_dist,
                              std::span<const double> neighbor_dists) {
  double denom = 0.5 * boundary_dist;
  for (double d : neighbor_dists) {
    denom += d;
  }
  return 1.0 / denom;
}

double price_v(const FleetState& state, std::size_t u, const ConvexRegion& q,
               const PriceSpec& spec) {
  check_car_index(state, u);
  return price_at({PriceKind::V, spec.neighborhood}, state.positions, u,
                  state.positions[u], q);
}

double price_w(const FleetState& state, std::size_t u, const ConvexRegion& q,
               const PriceSpec& spec) {
  check_car_index(state, u);
  return price_at({PriceKind::W, spec.neighborhood}, state.positions, u,
                  state.positions[u], q);
}

double price(const PriceSpec& spec, const FleetState& state, std::size_t u,
             const ConvexRegion& q) {
  check_car_index(state, u);
  return price_at(spec, state.positions, u, state.positions[u], q);
}

double price_at(const PriceSpec& spec, std::span<const Point> positions,
                std::size_t u, const Point& candidate, const ConvexRegion& q) {
  const double bd = boundary_distance(candidate, q);
  const std::size_t k = positions.size();
  switch (spec.kind) {
    case PriceKind::UstarLocal: {
      const double dmin = min_other_distance(positions, u, candidate);
      const double pair_term = k < 2 ? 0.0 : 2.0 / dmin;
      return std::max(1.0 / bd, pair_term);
    }
    case PriceKind::V: {
      // min over the |D| nearest distances is the nearest distance itself.
      const double dmin = min_other_distance(positions, u, candidate);
      return 1.0 / std::min(0.5 * bd, dmin);
    }
    case PriceKind::W: {
      const std::size_t m = effective_neighborhood(spec.neighborhood, k);
      if (m == 0) {
        return price_w_from_distances(bd, {});
      }
      const std::vector<double> nn = smallest_distances(positions, u, candidate, m);
      return price_w_from_distances(bd, nn);
    }
  }
  throw std::logic_error("unknown price kind");
}

double social_cost(const FleetState& state, const ConvexRegion& q) {
  if (state.size() == 0) {
    throw std::invalid_argument("social_cost: empty fleet");
  }
  double worst = 0.0;
  for (std::size_t u = 0; u < state.size(); ++u) {
    worst = std::max(worst, inconvenience_ustar(state, u, q));
  }
  return worst;
}

}  // namespace dropoff
