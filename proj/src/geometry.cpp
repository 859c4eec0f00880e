#include "blockmate/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace blockmate::geo {

namespace {

constexpr double kEps = 1e-9;

Vec2 rotate(Vec2 v, double c, double s) {
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

struct Projection {
  double lo;
  double hi;
};

Projection project(const Polygon& poly, Vec2 axis) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Vec2 v : poly) {
    const double d = dot(v, axis);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return {lo, hi};
}

// Mean of the vertices attaining the extreme projection along axis.
Vec2 support_point(const Polygon& poly, Vec2 axis) {
  double best = -std::numeric_limits<double>::infinity();
  for (Vec2 v : poly) best = std::max(best, dot(v, axis));
  Vec2 acc{0.0, 0.0};
  int n = 0;
  for (Vec2 v : poly) {
    if (dot(v, axis) >= best - 1e-9) {
      acc = acc + v;
      ++n;
    }
  }
  return acc * (1.0 / n);
}

Vec2 vertex_mean(const Polygon& poly) {
  Vec2 acc{0.0, 0.0};
  for (Vec2 v : poly) acc = acc + v;
  return acc * (1.0 / static_cast<double>(poly.size()));
}

Vec2 closest_point_on_segment(Vec2 a, Vec2 b, Vec2 q) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 <= 0.0) return a;
  const double t = std::clamp(dot(q - a, ab) / len2, 0.0, 1.0);
  return a + ab * t;
}

bool is_convex(const Polygon& poly) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[(i + 1) % n];
    const Vec2 c = poly[(i + 2) % n];
    if (cross(b - a, c - b) < -kEps) return false;
  }
  return true;
}

}  // namespace

double norm(Vec2 a) { return std::hypot(a.x, a.y); }

double normalize_angle(double a) {
  double r = std::remainder(a, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

double ang_dist(double a, double b) {
  return std::abs(std::remainder(a - b, 2.0 * kPi));
}

Pose2 compose(const Pose2& p, const Pose2& q) {
  const double c = std::cos(p.theta);
  const double s = std::sin(p.theta);
  return {p.x + c * q.x - s * q.y, p.y + s * q.x + c * q.y,
          normalize_angle(p.theta + q.theta)};
}

Pose2 invert(const Pose2& p) {
  const double c = std::cos(p.theta);
  const double s = std::sin(p.theta);
  return {-(c * p.x + s * p.y), -(-s * p.x + c * p.y),
          normalize_angle(-p.theta)};
}

Pose2 relative_pose(const Pose2& a, const Pose2& b) {
  return compose(invert(a), b);
}

Vec2 transform_point(const Pose2& p, Vec2 v) {
  const double c = std::cos(p.theta);
  const double s = std::sin(p.theta);
  return {p.x + c * v.x - s * v.y, p.y + s * v.x + c * v.y};
}

double signed_area(const Polygon& poly) {
  double acc = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[(i + 1) % n];
    acc += cross(a, b);
  }
  return 0.5 * acc;
}

Vec2 polygon_centroid(const Polygon& poly) {
  double a = 0.0;
  Vec2 acc{0.0, 0.0};
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 p = poly[i];
    const Vec2 q = poly[(i + 1) % n];
    const double w = cross(p, q);
    a += w;
    acc = acc + (p + q) * w;
  }
  if (std::abs(a) < 1e-300) return vertex_mean(poly);
  return acc * (1.0 / (3.0 * a));
}

double polygon_circumradius(const Polygon& poly) {
  double r = 0.0;
  for (Vec2 v : poly) r = std::max(r, norm(v));
  return r;
}

Polygon transform_polygon(const Pose2& p, const Polygon& poly) {
  Polygon out;
  out.reserve(poly.size());
  for (Vec2 v : poly) out.push_back(transform_point(p, v));
  return out;
}

bool point_in_polygon(Vec2 q, const Polygon& poly) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[j];
    if ((a.y > q.y) != (b.y > q.y)) {
      const double t = (q.y - a.y) / (b.y - a.y);
      if (q.x < a.x + t * (b.x - a.x)) inside = !inside;
    }
  }
  return inside;
}

Polygon convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  const std::size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<Vec2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0)
      --k;
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower &&
           cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0)
      --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double convex_hull_area(std::span<const Vec2> points) {
  const Polygon hull = convex_hull({points.begin(), points.end()});
  if (hull.size() < 3) return 0.0;
  return signed_area(hull);
}

std::optional<Overlap> convex_overlap(const Polygon& a, const Polygon& b) {
  double best_depth = std::numeric_limits<double>::infinity();
  Vec2 best_axis{0.0, 0.0};
  const auto consider = [&](const Polygon& poly) -> bool {
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 e = poly[(i + 1) % n] - poly[i];
      const double len = norm(e);
      if (len < 1e-15) continue;
      const Vec2 axis{-e.y / len, e.x / len};
      const Projection pa = project(a, axis);
      const Projection pb = project(b, axis);
      const double depth = std::min(pa.hi, pb.hi) - std::max(pa.lo, pb.lo);
      if (depth <= kOverlapEps) return false;
      if (depth < best_depth) {
        best_depth = depth;
        best_axis = axis;
      }
    }
    return true;
  };
  if (!consider(a) || !consider(b)) return std::nullopt;

  // Orient the axis from a toward b so translating b along mtv separates.
  Vec2 n = best_axis;
  if (dot(vertex_mean(b) - vertex_mean(a), n) < 0.0) n = -n;
  const Vec2 deepest_a = support_point(a, n);
  const Vec2 deepest_b = support_point(b, -n);
  return Overlap{n * best_depth, (deepest_a + deepest_b) * 0.5, best_depth};
}

std::optional<Overlap> parts_overlap(std::span<const Polygon> a_parts,
                                     std::span<const Polygon> b_parts) {
  std::optional<Overlap> best;
  for (const Polygon& pa : a_parts) {
    for (const Polygon& pb : b_parts) {
      const auto ov = convex_overlap(pa, pb);
      if (ov && (!best || ov->depth > best->depth)) best = ov;
    }
  }
  return best;
}

std::vector<Polygon> convex_parts(const Polygon& poly) {
  if (is_convex(poly)) return {poly};

  // Rectilinear outline: all edges parallel or perpendicular to the first.
  // Rotate into the axis-aligned frame, split on the vertex grid, keep the
  // cells whose centers lie inside, rotate back.
  const Vec2 e0 = poly[1] - poly[0];
  const double phi = std::atan2(e0.y, e0.x);
  const double c = std::cos(-phi);
  const double s = std::sin(-phi);
  Polygon aligned;
  aligned.reserve(poly.size());
  for (Vec2 v : poly) aligned.push_back(rotate(v, c, s));
  for (std::size_t i = 0; i < aligned.size(); ++i) {
    const Vec2 e = aligned[(i + 1) % aligned.size()] - aligned[i];
    if (std::min(std::abs(e.x), std::abs(e.y)) > 1e-6 * norm(e))
      throw std::invalid_argument("convex_parts: polygon is neither convex nor rectilinear");
  }

  std::vector<double> xs, ys;
  for (Vec2 v : aligned) {
    xs.push_back(v.x);
    ys.push_back(v.y);
  }
  const auto dedupe = [](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end(),
                        [](double a, double b) { return std::abs(a - b) < 1e-9; }),
            v.end());
  };
  dedupe(xs);
  dedupe(ys);

  const double ci = std::cos(phi);
  const double si = std::sin(phi);
  std::vector<Polygon> parts;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
      const Vec2 center{0.5 * (xs[i] + xs[i + 1]), 0.5 * (ys[j] + ys[j + 1])};
      if (!point_in_polygon(center, aligned)) continue;
      Polygon cell{{xs[i], ys[j]},
                   {xs[i + 1], ys[j]},
                   {xs[i + 1], ys[j + 1]},
                   {xs[i], ys[j + 1]}};
      for (Vec2& v : cell) v = rotate(v, ci, si);
      parts.push_back(std::move(cell));
    }
  }
  return parts;
}

std::optional<Overlap> polygon_overlap(const Polygon& a, const Polygon& b) {
  const std::vector<Polygon> pa = convex_parts(a);
  const std::vector<Polygon> pb = convex_parts(b);
  return parts_overlap(pa, pb);
}

std::optional<Overlap> circle_convex_overlap(const Circle& c, const Polygon& poly) {
  bool inside = true;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (cross(poly[(i + 1) % n] - poly[i], c.center - poly[i]) < 0.0) {
      inside = false;
      break;
    }
  }
  double best_d = std::numeric_limits<double>::infinity();
  Vec2 best_p{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 p = closest_point_on_segment(poly[i], poly[(i + 1) % n], c.center);
    const double d = norm(p - c.center);
    if (d < best_d) {
      best_d = d;
      best_p = p;
    }
  }
  if (!inside && best_d >= c.radius - kOverlapEps) return std::nullopt;

  Vec2 u;
  double depth;
  if (inside) {
    depth = best_d + c.radius;
    u = best_d > 1e-15 ? (c.center - best_p) * (1.0 / best_d) : Vec2{1.0, 0.0};
  } else {
    depth = c.radius - best_d;
    u = (best_p - c.center) * (1.0 / best_d);
  }
  const Vec2 circle_support = c.center + u * c.radius;
  return Overlap{u * depth, (circle_support + best_p) * 0.5, depth};
}

std::optional<Overlap> circle_parts_overlap(const Circle& c,
                                            std::span<const Polygon> parts) {
  std::optional<Overlap> best;
  for (const Polygon& p : parts) {
    const auto ov = circle_convex_overlap(c, p);
    if (ov && (!best || ov->depth > best->depth)) best = ov;
  }
  return best;
}

}  // namespace blockmate::geo
