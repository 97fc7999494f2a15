#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dropoff/geometry.hpp"

namespace dropoff {

// Which price function governs behaviour. UstarLocal is the full
// inconvenience; V and W are its neighbourhood approximations, computable
// from the nearest-car distances plus one boundary distance.
enum class PriceKind { UstarLocal, V, W };

struct PriceSpec {
  PriceKind kind = PriceKind::UstarLocal;
  int neighborhood = 1;  // |D|, clamped to k-1 at evaluation time
};

// Ordered car positions; index = car identity.
struct FleetState {
  std::vector<Point> positions;

  std::size_t size() const { return positions.size(); }
};

inline ConvexRegion voronoi_cell(const FleetState& state, std::size_t u,
                                 const ConvexRegion& q) {
  return voronoi_cell(std::span<const Point>(state.positions), u, q);
}

// True iff two cars occupy the exact same point.
bool has_coincident_positions(const FleetState& state);

// The m smallest distances from car u to the other cars, ascending.
std::vector<double> nearest_neighbor_distances(const FleetState& state,
                                               std::size_t u, std::size_t m);

// Inconvenience of car u: max of the reciprocal boundary distance and twice
// the reciprocal nearest-car distance. +infinity signals a car on the
// boundary or coincident with another; a lone car is priced by the boundary
// term only.
double inconvenience_ustar(const FleetState& state, std::size_t u,
                           const ConvexRegion& q);

// min{boundary distance, half nearest-car distance}; the reciprocal of
// inconvenience_ustar whenever that is finite.
double safety_margin(const FleetState& state, std::size_t u,
                     const ConvexRegion& q);

// Neighbourhood prices evaluated from the already-extracted scalars. These
// are the exact payloads a car would learn by local sensing.
double price_v_from_distances(double boundary_dist,
                              std::span<const double> neighbor_dists);
double price_w_from_distances(double boundary_dist,
                              std::span<const double> neighbor_dists);

double price_v(const FleetState& state, std::size_t u, const ConvexRegion& q,
               const PriceSpec& spec);
double price_w(const FleetState& state, std::size_t u, const ConvexRegion& q,
               const PriceSpec& spec);

// Dispatch over spec.kind.
double price(const PriceSpec& spec, const FleetState& state, std::size_t u,
             const ConvexRegion& q);

// Price of car u as if it stood at `candidate`, every other car fixed.
// Shares the evaluation path with price(); the dynamics' inner search
// hammers this.
double price_at(const PriceSpec& spec, std::span<const Point> positions,
                std::size_t u, const Point& candidate, const ConvexRegion& q);

// Worst inconvenience over the fleet.
double social_cost(const FleetState& state, const ConvexRegion& q);

}  // namespace dropoff
