#pragma once

#include <optional>
#include <span>
#include <vector>

namespace blockmate::geo {

constexpr double kPi = 3.14159265358979323846;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double k) const { return {x * k, y * k}; }
  Vec2 operator-() const { return {-x, -y}; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a);

// Planar rigid transform; theta is kept normalized to (-pi, pi].
struct Pose2 {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

// Maps any angle into (-pi, pi].
double normalize_angle(double a);

// Wrapped absolute angular difference, in [0, pi].
double ang_dist(double a, double b);

// Pose of frame q expressed through frame p.
Pose2 compose(const Pose2& p, const Pose2& q);
Pose2 invert(const Pose2& p);

// compose(invert(a), b): pose of b in a's frame.
Pose2 relative_pose(const Pose2& a, const Pose2& b);

Vec2 transform_point(const Pose2& p, Vec2 v);

// Simple polygon, counterclockwise, signed area > 0.
using Polygon = std::vector<Vec2>;

double signed_area(const Polygon& poly);
Vec2 polygon_centroid(const Polygon& poly);
double polygon_circumradius(const Polygon& poly);
Polygon transform_polygon(const Pose2& p, const Polygon& poly);

bool point_in_polygon(Vec2 q, const Polygon& poly);

// Area of the convex hull of a point set; 0 if fewer than 3 effective
// points or all collinear. Invariant under permutation and rigid motion.
double convex_hull_area(std::span<const Vec2> points);
Polygon convex_hull(std::vector<Vec2> points);

// Penetration between shapes. mtv is the minimum translation that moves the
// second shape out of the first; contact is the midpoint of the deepest
// support points on either side.
struct Overlap {
  Vec2 mtv;
  Vec2 contact;
  double depth = 0.0;
};

// Overlap depths below this count as touching, not interpenetration.
constexpr double kOverlapEps = 1e-12;

// SAT on two convex CCW polygons.
std::optional<Overlap> convex_overlap(const Polygon& a, const Polygon& b);

// Deepest-penetrating part pair over two convex decompositions.
std::optional<Overlap> parts_overlap(std::span<const Polygon> a_parts,
                                     std::span<const Polygon> b_parts);

// Accepts convex or rectilinear (axis-aligned in some rotated frame)
// polygons; non-convex inputs are decomposed into convex parts first.
std::optional<Overlap> polygon_overlap(const Polygon& a, const Polygon& b);

// Convex decomposition: the polygon itself when convex, otherwise the grid
// cells of its rectilinear outline.
std::vector<Polygon> convex_parts(const Polygon& poly);

struct Circle {
  Vec2 center;
  double radius = 0.0;
};

// mtv moves the polygon (not the circle) to separation.
std::optional<Overlap> circle_convex_overlap(const Circle& c, const Polygon& poly);
std::optional<Overlap> circle_parts_overlap(const Circle& c,
                                            std::span<const Polygon> parts);

}  // namespace blockmate::geo
