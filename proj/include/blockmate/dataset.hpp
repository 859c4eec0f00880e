#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "blockmate/sim.hpp"

namespace blockmate::data {

// Reverse-exploration record: states run from the most-perturbed state down
// to the goal, i.e. the forward rollout already reversed. The stored seed
// replays the whole trajectory for validation.
struct ReverseTrajectory {
  std::string pair_id;
  std::uint64_t seed = 0;
  std::vector<sim::WorldState> states;  // length M+1, goal last
};

struct Transition {
  sim::WorldState state;
  sim::PushAction action;
  sim::WorldState next_state;
};

// Relative encoding r(s): pose of male in the female frame with the angle as
// (cos, sin). Invariant under rigid motion applied to both blocks.
std::array<double, 4> encode_relative(const sim::WorldState& s);

// Inverse of encode_relative; the (cos, sin) slot is renormalized before
// atan2. Throws when its norm is below 1e-6.
geo::Pose2 decode_relative(const std::array<double, 4>& v);

// Absolute encoding a(s): both poses, angles as (cos, sin).
std::array<double, 8> encode_absolute(const sim::WorldState& s);
sim::WorldState decode_absolute(const std::string& pair_id,
                                const std::array<double, 8>& v);

std::array<double, 4> encode_action(const sim::PushAction& a);

// Phase-1 collection. Trajectories use per-index seeds derived from `seed`,
// so results are independent of scheduling and replayable one by one.
std::vector<ReverseTrajectory> collect_reverse(
    const std::vector<blocks::BlockPair>& pairs, int n_traj, int M,
    std::uint64_t seed, const sim::SimConfig& cfg);

// Replays the trajectory with the given per-trajectory seed.
ReverseTrajectory collect_one_reverse(const std::vector<sim::Simulator>& sims,
                                      std::uint64_t traj_seed, int M);

// Uniform-random-action transitions in episodes of 10 pushes from disjoint
// initial placements.
std::vector<Transition> collect_transitions(
    const std::vector<blocks::BlockPair>& pairs, long n, std::uint64_t seed,
    const sim::SimConfig& cfg);

std::vector<sim::Simulator> build_simulators(
    const std::vector<blocks::BlockPair>& pairs, const sim::SimConfig& cfg);

// Line-delimited text formats; header carries format version, SimConfig and
// the master seed. Floats are written with 17 significant digits so reading
// back reproduces every record exactly.
void write_reverse_dataset(std::ostream& out,
                           const std::vector<ReverseTrajectory>& trajs,
                           const sim::SimConfig& cfg, std::uint64_t seed);
std::vector<ReverseTrajectory> read_reverse_dataset(std::istream& in,
                                                    sim::SimConfig* cfg_out = nullptr,
                                                    std::uint64_t* seed_out = nullptr);

void write_transition_dataset(std::ostream& out,
                              const std::vector<Transition>& transitions,
                              const sim::SimConfig& cfg, std::uint64_t seed);
std::vector<Transition> read_transition_dataset(std::istream& in,
                                                sim::SimConfig* cfg_out = nullptr,
                                                std::uint64_t* seed_out = nullptr);

void save_reverse_dataset(const std::string& path,
                          const std::vector<ReverseTrajectory>& trajs,
                          const sim::SimConfig& cfg, std::uint64_t seed);
std::vector<ReverseTrajectory> load_reverse_dataset(const std::string& path,
                                                    sim::SimConfig* cfg_out = nullptr,
                                                    std::uint64_t* seed_out = nullptr);
void save_transition_dataset(const std::string& path,
                             const std::vector<Transition>& transitions,
                             const sim::SimConfig& cfg, std::uint64_t seed);
std::vector<Transition> load_transition_dataset(const std::string& path,
                                                sim::SimConfig* cfg_out = nullptr,
                                                std::uint64_t* seed_out = nullptr);

std::string sim_config_to_string(const sim::SimConfig& cfg);
sim::SimConfig sim_config_from_string(const std::string& s);

// FNV-1a over bytes, hex string; used for dataset/config provenance.
std::string digest_hex(std::string_view bytes);
std::string file_digest_hex(const std::string& path);

std::string format_double(double v);

}  // namespace blockmate::data
