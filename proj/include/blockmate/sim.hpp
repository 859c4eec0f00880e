#pragma once

#include <string>
#include <vector>

#include "blockmate/blocks.hpp"
#include "blockmate/geometry.hpp"
#include "blockmate/rng.hpp"

namespace blockmate::sim {

// Poses of the two pieces of one pair on the plane.
struct WorldState {
  std::string pair_id;
  geo::Pose2 female_pose;
  geo::Pose2 male_pose;
};

// One linear push: all four components bounded to [-kActionBound, kActionBound].
constexpr double kActionBound = 0.2;

struct PushAction {
  geo::Vec2 start;
  geo::Vec2 end;
};

PushAction clamp_action(PushAction a);

struct SimConfig {
  double cell_size = 0.05;
  double pusher_radius = 0.01;
  double step_length = 0.002;
  double rotation_gain = 0.5;  // beta in the contact torque rule
  double workspace_halfwidth = 0.28;
  double success_pos_tol = 0.005;
  double success_ang_tol = 0.10;
  int max_resolve_iters = 32;

  void validate() const;
};

// Goal and initial poses are drawn with centers inside this box.
constexpr double kSampleHalfwidth = 0.15;

// Deterministic quasi-static push environment bound to one block pair.
// step() and the predicates are pure; a const Simulator is safe to share
// across threads, with each episode owning its own Rng.
class Simulator {
 public:
  Simulator(blocks::BlockPair pair, SimConfig cfg);

  const blocks::BlockPair& pair() const { return pair_; }
  const SimConfig& config() const { return cfg_; }
  const geo::Polygon& female_polygon() const { return female_poly_; }
  const geo::Polygon& male_polygon() const { return male_poly_; }

  // Uniform goal state: female anywhere in the sample box, male attached at
  // a uniformly chosen mating offset. Always satisfies is_success.
  WorldState sample_goal_state(Rng& rng) const;

  // Rejection-sampled disjoint placement with centroid separation of at
  // least min_separation. Throws after 10000 rejections.
  WorldState sample_initial_state(Rng& rng, double min_separation) const;

  // Circular pusher slides from start to end in step_length increments;
  // penetrations resolve quasi-statically (translation along the MTV plus a
  // contact torque). The pusher lifts out afterwards, so actions are
  // independent.
  WorldState step(const WorldState& state, const PushAction& action) const;

  // True iff the relative pose of male in the female frame is within the
  // position/angle tolerances of some mating offset. Invariant under rigid
  // motions applied to both poses.
  bool is_success(const WorldState& state) const;

  // Random outward push aimed at a uniformly chosen point inside one block.
  PushAction random_perturbation(const WorldState& state, Rng& rng) const;

  double centroid_separation(const WorldState& state) const;

  std::vector<geo::Polygon> female_parts_world(const geo::Pose2& pose) const;
  std::vector<geo::Polygon> male_parts_world(const geo::Pose2& pose) const;

 private:
  blocks::BlockPair pair_;
  SimConfig cfg_;
  geo::Polygon female_poly_;
  geo::Polygon male_poly_;
  std::vector<geo::Polygon> female_parts_;  // local-frame cells
  std::vector<geo::Polygon> male_parts_;
  double female_radius_ = 0.0;
  double male_radius_ = 0.0;
};

}  // namespace blockmate::sim
