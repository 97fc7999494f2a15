#include "dropoff/geometry.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dropoff {

namespace {

// Slack for the convexity cross-product test; absorbs clipping roundoff.
constexpr double kConvexSlack = 1e-12;
// Clip results thinner than this are treated as empty.
constexpr double kMinArea = 1e-15;

double shoelace_area(const std::vector<Point>& v) {
  double twice = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % v.size()];
    twice += cross(a, b);
  }
  return 0.5 * twice;
}

}  // namespace

ConvexRegion::ConvexRegion(std::vector<Point> vertices) : verts_(std::move(vertices)) {
  if (verts_.size() < 3) {
    throw std::invalid_argument("convex region needs at least 3 vertices");
  }
  for (const Point& p : verts_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw std::invalid_argument("convex region vertex is not finite");
    }
  }
  const std::size_t n = verts_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point e1 = verts_[(i + 1) % n] - verts_[i];
    const Point e2 = verts_[(i + 2) % n] - verts_[(i + 1) % n];
    if (norm2(e1) == 0.0) {
      throw std::invalid_argument("convex region has a repeated vertex");
    }
    if (cross(e1, e2) < -kConvexSlack) {
      throw std::invalid_argument(
          "convex region vertices must be convex and counter-clockwise");
    }
  }
  area_ = shoelace_area(verts_);
  if (area_ <= 0.0) {
    throw std::invalid_argument("convex region must have positive area");
  }
  bbox_min_ = bbox_max_ = verts_[0];
  for (const Point& p : verts_) {
    bbox_min_.x = std::min(bbox_min_.x, p.x);
    bbox_min_.y = std::min(bbox_min_.y, p.y);
    bbox_max_.x = std::max(bbox_max_.x, p.x);
    bbox_max_.y = std::max(bbox_max_.y, p.y);
  }
}

ConvexRegion ConvexRegion::unit_square() {
  return ConvexRegion({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
}

Segment ConvexRegion::edge(std::size_t i) const {
  return {verts_[i], verts_[(i + 1) % verts_.size()]};
}

double point_segment_distance(const Point& p, const Segment& s) {
  const Point d = s.b - s.a;
  const double len2 = norm2(d);
  if (len2 == 0.0) {
    return distance(p, s.a);
  }
  const double t = std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0);
  return distance(p, s.a + t * d);
}

double boundary_distance(const Point& p, const ConvexRegion& q) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < q.edge_count(); ++i) {
    best = std::min(best, point_segment_distance(p, q.edge(i)));
  }
  return best;
}

bool contains(const ConvexRegion& q, const Point& p, double eps) {
  for (std::size_t i = 0; i < q.edge_count(); ++i) {
    const Segment e = q.edge(i);
    const Point d = e.b - e.a;
    // Signed distance to the edge line, positive on the interior side.
    const double s = cross(d, p - e.a) / norm(d);
    if (s < -eps) {
      return false;
    }
  }
  return true;
}

std::optional<ConvexRegion> clip_halfplane(const ConvexRegion& q,
                                           const Point& boundary_point,
                                           const Point& normal) {
  const double nlen = norm(normal);
  if (nlen == 0.0) {
    throw std::invalid_argument("clip_halfplane: zero normal");
  }
  const Point n = normal / nlen;

  const std::vector<Point>& in = q.vertices();
  std::vector<Point> out;
  out.reserve(in.size() + 1);
  for (std::size_t i = 0; i < in.size(); ++i) {
    const Point& cur = in[i];
    const Point& nxt = in[(i + 1) % in.size()];
    const double sc = dot(cur - boundary_point, n);
    const double sn = dot(nxt - boundary_point, n);
    if (sc <= kGeomEps) {
      out.push_back(cur);
    }
    if ((sc < -kGeomEps && sn > kGeomEps) || (sc > kGeomEps && sn < -kGeomEps)) {
      const double t = sc / (sc - sn);
      out.push_back(cur + t * (nxt - cur));
    }
  }

  // Drop vertices closer than the geometric tolerance, wraparound included.
  std::vector<Point> dedup;
  dedup.reserve(out.size());
  for (const Point& p : out) {
    if (dedup.empty() || distance(dedup.back(), p) > kGeomEps) {
      dedup.push_back(p);
    }
  }
  while (dedup.size() > 1 && distance(dedup.front(), dedup.back()) <= kGeomEps) {
    dedup.pop_back();
  }
  if (dedup.size() < 3 || shoelace_area(dedup) < kMinArea) {
    return std::nullopt;
  }
  return ConvexRegion(std::move(dedup));
}

ConvexRegion voronoi_cell(std::span<const Point> sites, std::size_t u,
                          const ConvexRegion& q) {
  if (u >= sites.size()) {
    throw std::out_of_range("voronoi_cell: site index out of range");
  }
  ConvexRegion cell = q;
  for (std::size_t v = 0; v < sites.size(); ++v) {
    if (v == u) {
      continue;
    }
    const Point diff = sites[v] - sites[u];
    if (norm2(diff) == 0.0) {
      throw std::invalid_argument("voronoi_cell: coincident sites");
    }
    const Point mid = 0.5 * (sites[u] + sites[v]);
    auto clipped = clip_halfplane(cell, mid, diff);
    if (!clipped) {
      throw std::runtime_error("voronoi_cell: cell collapsed during clipping");
    }
    cell = std::move(*clipped);
  }
  return cell;
}

Circle chebyshev_center(const ConvexRegion& q) {
  // Maximize r subject to n_i . c - r >= n_i . a_i over the inward edge
  // normals. The optimum sits at a vertex of the feasible set, so enumerate
  // triples of active constraints and keep the best feasible candidate.
  const std::size_t n = q.edge_count();
  std::vector<Point> normals(n);
  std::vector<double> offsets(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Segment e = q.edge(i);
    const Point d = e.b - e.a;
    const Point inward = Point{-d.y, d.x} / norm(d);
    normals[i] = inward;
    offsets[i] = dot(inward, e.a);
  }

  double best_r = -1.0;
  Point best_c{};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t l = j + 1; l < n; ++l) {
        // Solve n_i.c - r = o_i for the three picked constraints.
        const double a11 = normals[i].x, a12 = normals[i].y;
        const double a21 = normals[j].x, a22 = normals[j].y;
        const double a31 = normals[l].x, a32 = normals[l].y;
        const double det = a11 * (a22 * -1.0 - -1.0 * a32) -
                           a12 * (a21 * -1.0 - -1.0 * a31) +
                           -1.0 * (a21 * a32 - a22 * a31);
        if (std::abs(det) < 1e-14) {
          continue;
        }
        const double b1 = offsets[i], b2 = offsets[j], b3 = offsets[l];
        const double cx = (b1 * (a22 * -1.0 - -1.0 * a32) -
                           a12 * (b2 * -1.0 - -1.0 * b3) +
                           -1.0 * (b2 * a32 - a22 * b3)) /
                          det;
        const double cy = (a11 * (b2 * -1.0 - -1.0 * b3) -
                           b1 * (a21 * -1.0 - -1.0 * a31) +
                           -1.0 * (a21 * b3 - b2 * a31)) /
                          det;
        const double r = (a11 * (a22 * b3 - b2 * a32) -
                          a12 * (a21 * b3 - b2 * a31) +
                          b1 * (a21 * a32 - a22 * a31)) /
                         det;
        if (r <= best_r) {
          continue;
        }
        bool feasible = true;
        for (std::size_t m = 0; m < n; ++m) {
          if (normals[m].x * cx + normals[m].y * cy - offsets[m] < r - kGeomEps) {
            feasible = false;
            break;
          }
        }
        if (feasible) {
          best_r = r;
          best_c = {cx, cy};
        }
      }
    }
  }
  if (best_r < 0.0) {
    throw std::runtime_error("chebyshev_center: no feasible inscribed circle");
  }
  return {best_c, best_r};
}

ConvexRegion load_region(const std::string& name_or_path) {
  if (name_or_path == "unit-square") {
    return ConvexRegion::unit_square();
  }
  return ConvexRegion(load_points(name_or_path));
}

std::vector<Point> load_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open points file: " + path);
  }
  std::vector<Point> points;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') {
      continue;
    }
    std::istringstream ls(line);
    Point p;
    if (!(ls >> p.x >> p.y)) {
      throw std::runtime_error("bad vertex line in " + path + ": " + line);
    }
    points.push_back(p);
  }
  return points;
}

void save_points(const std::string& path, std::span<const Point> points) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write points file: " + path);
  }
  char buf[80];
  for (const Point& p : points) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", p.x, p.y);
    out << buf;
  }
}

}  // namespace dropoff
