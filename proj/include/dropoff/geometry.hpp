#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dropoff {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
inline Point operator/(Point p, double s) { return {p.x / s, p.y / s}; }
inline bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }
inline bool operator!=(Point a, Point b) { return !(a == b); }

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Point p) { return p.x * p.x + p.y * p.y; }
inline double norm(Point p) { return std::sqrt(norm2(p)); }
inline double distance(Point a, Point b) { return norm(a - b); }

struct Segment {
  Point a;
  Point b;
};

struct Circle {
  Point center;
  double radius = 0.0;
};

// Geometric tolerance for containment and clipping, in region units.
inline constexpr double kGeomEps = 1e-9;

// Convex polygon with counter-clockwise vertex order and positive area.
// Construction validates orientation, convexity and a non-empty interior.
class ConvexRegion {
 public:
  explicit ConvexRegion(std::vector<Point> vertices);

  static ConvexRegion unit_square();

  const std::vector<Point>& vertices() const { return verts_; }
  std::size_t edge_count() const { return verts_.size(); }
  Segment edge(std::size_t i) const;
  double area() const { return area_; }
  Point bbox_min() const { return bbox_min_; }
  Point bbox_max() const { return bbox_max_; }

 private:
  std::vector<Point> verts_;
  double area_ = 0.0;
  Point bbox_min_;
  Point bbox_max_;
};

// Distance from p to the nearest point of s. A degenerate segment (a == b)
// reduces to the point-point distance.
double point_segment_distance(const Point& p, const Segment& s);

// Minimum distance from p to the edges of q.
double boundary_distance(const Point& p, const ConvexRegion& q);

// True iff p lies inside q or within eps of its boundary.
bool contains(const ConvexRegion& q, const Point& p, double eps = kGeomEps);

// Sub-polygon of q on the side where (p - boundary_point) . normal <= 0.
// Returns nullopt when nothing of q survives the cut.
std::optional<ConvexRegion> clip_halfplane(const ConvexRegion& q,
                                           const Point& boundary_point,
                                           const Point& normal);

// Voronoi cell of site u clipped to q: the intersection of q with the
// bisector half-planes against every other site. Sites must be distinct.
ConvexRegion voronoi_cell(std::span<const Point> sites, std::size_t u,
                          const ConvexRegion& q);

// Center and radius of a largest inscribed circle of q. Non-unique centers
// (e.g. rectangles) resolve to an arbitrary maximizer; the radius is unique.
Circle chebyshev_center(const ConvexRegion& q);

// Region file: one "x y" vertex per line, counter-clockwise. The name
// "unit-square" resolves to the built-in [0,1]^2.
ConvexRegion load_region(const std::string& name_or_path);

// Position lists share the region file format.
std::vector<Point> load_points(const std::string& path);
void save_points(const std::string& path, std::span<const Point> points);

}  // namespace dropoff
