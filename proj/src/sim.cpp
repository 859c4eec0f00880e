#include "blockmate/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace blockmate::sim {

namespace {

using geo::Pose2;
using geo::Vec2;

std::vector<geo::Polygon> transform_parts(const std::vector<geo::Polygon>& parts,
                                          const Pose2& pose) {
  std::vector<geo::Polygon> out;
  out.reserve(parts.size());
  for (const geo::Polygon& p : parts) out.push_back(geo::transform_polygon(pose, p));
  return out;
}

// Quasi-static response: translate out along the MTV and rotate by the
// contact torque about the block center.
void apply_resolution(Pose2& pose, const geo::Overlap& ov, double beta) {
  const Vec2 r{ov.contact.x - pose.x, ov.contact.y - pose.y};
  const double dtheta = beta * geo::cross(r, ov.mtv) / (geo::dot(r, r) + 1e-6);
  pose.x += ov.mtv.x;
  pose.y += ov.mtv.y;
  pose.theta = geo::normalize_angle(pose.theta + dtheta);
}

}  // namespace

PushAction clamp_action(PushAction a) {
  const auto clamp = [](double v) { return std::clamp(v, -kActionBound, kActionBound); };
  return {{clamp(a.start.x), clamp(a.start.y)}, {clamp(a.end.x), clamp(a.end.y)}};
}

void SimConfig::validate() const {
  if (cell_size <= 0 || pusher_radius <= 0 || step_length <= 0 ||
      rotation_gain <= 0 || workspace_halfwidth <= 0 || success_pos_tol <= 0 ||
      success_ang_tol <= 0 || max_resolve_iters <= 0)
    throw std::invalid_argument("SimConfig: all parameters must be positive");
  if (step_length >= pusher_radius)
    throw std::invalid_argument("SimConfig: step_length must be below pusher_radius");
}

Simulator::Simulator(blocks::BlockPair pair, SimConfig cfg)
    : pair_(std::move(pair)), cfg_(cfg) {
  cfg_.validate();
  female_poly_ = blocks::shape_polygon(pair_.female, cfg_.cell_size);
  male_poly_ = blocks::shape_polygon(pair_.male, cfg_.cell_size);
  female_parts_ = geo::convex_parts(female_poly_);
  male_parts_ = geo::convex_parts(male_poly_);
  female_radius_ = geo::polygon_circumradius(female_poly_);
  male_radius_ = geo::polygon_circumradius(male_poly_);
}

std::vector<geo::Polygon> Simulator::female_parts_world(const Pose2& pose) const {
  return transform_parts(female_parts_, pose);
}

std::vector<geo::Polygon> Simulator::male_parts_world(const Pose2& pose) const {
  return transform_parts(male_parts_, pose);
}

WorldState Simulator::sample_goal_state(Rng& rng) const {
  WorldState s;
  s.pair_id = pair_.id;
  s.female_pose = {rng.uniform(-kSampleHalfwidth, kSampleHalfwidth),
                   rng.uniform(-kSampleHalfwidth, kSampleHalfwidth), rng.angle()};
  const auto idx = static_cast<std::size_t>(
      rng.uniform_int(0, static_cast<std::int64_t>(pair_.mating_offsets.size()) - 1));
  s.male_pose = geo::compose(s.female_pose, pair_.mating_offsets[idx]);
  return s;
}

WorldState Simulator::sample_initial_state(Rng& rng, double min_separation) const {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    WorldState s;
    s.pair_id = pair_.id;
    s.female_pose = {rng.uniform(-kSampleHalfwidth, kSampleHalfwidth),
                     rng.uniform(-kSampleHalfwidth, kSampleHalfwidth), rng.angle()};
    s.male_pose = {rng.uniform(-kSampleHalfwidth, kSampleHalfwidth),
                   rng.uniform(-kSampleHalfwidth, kSampleHalfwidth), rng.angle()};
    if (centroid_separation(s) < min_separation) continue;
    const auto fw = female_parts_world(s.female_pose);
    const auto mw = male_parts_world(s.male_pose);
    if (geo::parts_overlap(fw, mw)) continue;
    return s;
  }
  throw std::runtime_error("sample_initial_state: separation infeasible after 10000 draws");
}

double Simulator::centroid_separation(const WorldState& s) const {
  return geo::norm({s.male_pose.x - s.female_pose.x, s.male_pose.y - s.female_pose.y});
}

WorldState Simulator::step(const WorldState& state, const PushAction& action) const {
  const Vec2 travel = action.end - action.start;
  const double length = geo::norm(travel);
  const int increments =
      length < 1e-12 ? 0 : static_cast<int>(std::ceil(length / cfg_.step_length));

  WorldState s = state;
  bool any_contact = false;
  int last_pushed = 1;  // male yields first if blocks must separate untouched
  const double reach_f = female_radius_ + cfg_.pusher_radius + 1e-3;
  const double reach_m = male_radius_ + cfg_.pusher_radius + 1e-3;

  for (int k = 0; k <= increments; ++k) {
    const double t = increments == 0 ? 0.0 : static_cast<double>(k) / increments;
    const geo::Circle pusher{action.start + travel * t, cfg_.pusher_radius};

    const bool near_f =
        geo::norm({pusher.center.x - s.female_pose.x, pusher.center.y - s.female_pose.y}) <= reach_f;
    const bool near_m =
        geo::norm({pusher.center.x - s.male_pose.x, pusher.center.y - s.male_pose.y}) <= reach_m;
    if (!near_f && !near_m) continue;

    for (int iter = 0; iter < cfg_.max_resolve_iters; ++iter) {
      bool moved = false;
      if (const auto ov = geo::circle_parts_overlap(pusher, female_parts_world(s.female_pose))) {
        apply_resolution(s.female_pose, *ov, cfg_.rotation_gain);
        last_pushed = 0;
        moved = any_contact = true;
      }
      if (const auto ov = geo::circle_parts_overlap(pusher, male_parts_world(s.male_pose))) {
        apply_resolution(s.male_pose, *ov, cfg_.rotation_gain);
        last_pushed = 1;
        moved = any_contact = true;
      }
      if (any_contact) {
        const auto fw = female_parts_world(s.female_pose);
        const auto mw = male_parts_world(s.male_pose);
        if (last_pushed == 1) {
          if (const auto ov = geo::parts_overlap(mw, fw)) {
            apply_resolution(s.female_pose, *ov, cfg_.rotation_gain);
            moved = true;
          }
        } else {
          if (const auto ov = geo::parts_overlap(fw, mw)) {
            apply_resolution(s.male_pose, *ov, cfg_.rotation_gain);
            moved = true;
          }
        }
      }
      if (!moved) break;
    }

    if (any_contact) {
      const double w = cfg_.workspace_halfwidth;
      s.female_pose.x = std::clamp(s.female_pose.x, -w, w);
      s.female_pose.y = std::clamp(s.female_pose.y, -w, w);
      s.male_pose.x = std::clamp(s.male_pose.x, -w, w);
      s.male_pose.y = std::clamp(s.male_pose.y, -w, w);
    }
  }

  if (!any_contact) return state;

  // Pusher lifts out; settle any residual block overlap by pure translation.
  for (int iter = 0; iter < 4 * cfg_.max_resolve_iters; ++iter) {
    const auto fw = female_parts_world(s.female_pose);
    const auto mw = male_parts_world(s.male_pose);
    std::optional<geo::Overlap> ov;
    if (last_pushed == 1) {
      ov = geo::parts_overlap(mw, fw);
      if (!ov) break;
      s.female_pose.x += ov->mtv.x;
      s.female_pose.y += ov->mtv.y;
    } else {
      ov = geo::parts_overlap(fw, mw);
      if (!ov) break;
      s.male_pose.x += ov->mtv.x;
      s.male_pose.y += ov->mtv.y;
    }
  }
  return s;
}

bool Simulator::is_success(const WorldState& state) const {
  const Pose2 rel = geo::relative_pose(state.female_pose, state.male_pose);
  for (const Pose2& g : pair_.mating_offsets) {
    const double dpos = geo::norm({rel.x - g.x, rel.y - g.y});
    if (dpos <= cfg_.success_pos_tol &&
        geo::ang_dist(rel.theta, g.theta) <= cfg_.success_ang_tol)
      return true;
  }
  return false;
}

PushAction Simulator::random_perturbation(const WorldState& state, Rng& rng) const {
  const bool pick_male = rng.uniform_int(0, 1) == 1;
  const geo::Polygon& local = pick_male ? male_poly_ : female_poly_;
  const Pose2& pose = pick_male ? state.male_pose : state.female_pose;
  const double radius = pick_male ? male_radius_ : female_radius_;

  // Uniform point inside the block via rejection in its local bounding box.
  Vec2 lo{1e12, 1e12}, hi{-1e12, -1e12};
  for (Vec2 v : local) {
    lo = {std::min(lo.x, v.x), std::min(lo.y, v.y)};
    hi = {std::max(hi.x, v.x), std::max(hi.y, v.y)};
  }
  Vec2 target_local;
  do {
    target_local = {rng.uniform(lo.x, hi.x), rng.uniform(lo.y, hi.y)};
  } while (!geo::point_in_polygon(target_local, local));
  const Vec2 target = geo::transform_point(pose, target_local);

  const double phi = rng.angle();
  const double standoff = radius + cfg_.pusher_radius + 0.01;
  const Vec2 start = target + Vec2{std::cos(phi), std::sin(phi)} * standoff;
  const Vec2 dir = Vec2{-std::cos(phi), -std::sin(phi)};
  const double overshoot = rng.uniform(0.02, 0.08);
  const Vec2 end = target + dir * overshoot;
  return clamp_action({start, end});
}

}  // namespace blockmate::sim
