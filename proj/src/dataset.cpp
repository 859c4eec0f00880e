#include "blockmate/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace blockmate::data {

namespace {

void write_state(std::ostream& out, const sim::WorldState& s) {
  out << ' ' << format_double(s.female_pose.x) << ' ' << format_double(s.female_pose.y)
      << ' ' << format_double(s.female_pose.theta) << ' ' << format_double(s.male_pose.x)
      << ' ' << format_double(s.male_pose.y) << ' ' << format_double(s.male_pose.theta);
}

sim::WorldState read_state(std::istream& in, const std::string& pair_id) {
  sim::WorldState s;
  s.pair_id = pair_id;
  in >> s.female_pose.x >> s.female_pose.y >> s.female_pose.theta >>
      s.male_pose.x >> s.male_pose.y >> s.male_pose.theta;
  return s;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::array<double, 4> encode_relative(const sim::WorldState& s) {
  const geo::Pose2 rel = geo::relative_pose(s.female_pose, s.male_pose);
  return {rel.x, rel.y, std::cos(rel.theta), std::sin(rel.theta)};
}

geo::Pose2 decode_relative(const std::array<double, 4>& v) {
  const double n = std::hypot(v[2], v[3]);
  if (n < 1e-6)
    throw std::runtime_error("decode_relative: degenerate angle slot");
  return {v[0], v[1], std::atan2(v[3] / n, v[2] / n)};
}

std::array<double, 8> encode_absolute(const sim::WorldState& s) {
  return {s.female_pose.x, s.female_pose.y, std::cos(s.female_pose.theta),
          std::sin(s.female_pose.theta), s.male_pose.x, s.male_pose.y,
          std::cos(s.male_pose.theta), std::sin(s.male_pose.theta)};
}

sim::WorldState decode_absolute(const std::string& pair_id,
                                const std::array<double, 8>& v) {
  const double nf = std::hypot(v[2], v[3]);
  const double nm = std::hypot(v[6], v[7]);
  if (nf < 1e-6 || nm < 1e-6)
    throw std::runtime_error("decode_absolute: degenerate angle slot");
  sim::WorldState s;
  s.pair_id = pair_id;
  s.female_pose = {v[0], v[1], std::atan2(v[3] / nf, v[2] / nf)};
  s.male_pose = {v[4], v[5], std::atan2(v[7] / nm, v[6] / nm)};
  return s;
}

std::array<double, 4> encode_action(const sim::PushAction& a) {
  return {a.start.x, a.start.y, a.end.x, a.end.y};
}

std::vector<sim::Simulator> build_simulators(
    const std::vector<blocks::BlockPair>& pairs, const sim::SimConfig& cfg) {
  std::vector<sim::Simulator> sims;
  sims.reserve(pairs.size());
  for (const blocks::BlockPair& p : pairs) sims.emplace_back(p, cfg);
  return sims;
}

ReverseTrajectory collect_one_reverse(const std::vector<sim::Simulator>& sims,
                                      std::uint64_t traj_seed, int M) {
  Rng rng(traj_seed);
  const auto pick = static_cast<std::size_t>(
      rng.uniform_int(0, static_cast<std::int64_t>(sims.size()) - 1));
  const sim::Simulator& simulator = sims[pick];

  std::vector<sim::WorldState> forward;
  forward.reserve(M + 1);
  forward.push_back(simulator.sample_goal_state(rng));
  for (int j = 0; j < M; ++j) {
    const sim::PushAction a = simulator.random_perturbation(forward.back(), rng);
    forward.push_back(simulator.step(forward.back(), a));
  }

  ReverseTrajectory traj;
  traj.pair_id = simulator.pair().id;
  traj.seed = traj_seed;
  traj.states.assign(forward.rbegin(), forward.rend());
  return traj;
}

std::vector<ReverseTrajectory> collect_reverse(
    const std::vector<blocks::BlockPair>& pairs, int n_traj, int M,
    std::uint64_t seed, const sim::SimConfig& cfg) {
  if (n_traj < 1 || M < 1)
    throw std::invalid_argument("collect_reverse: n_traj and M must be >= 1");
  if (pairs.empty()) throw std::invalid_argument("collect_reverse: no pairs");
  const std::vector<sim::Simulator> sims = build_simulators(pairs, cfg);
  std::vector<ReverseTrajectory> out;
  out.reserve(n_traj);
  for (int i = 0; i < n_traj; ++i)
    out.push_back(collect_one_reverse(sims, mix_seed(mix_seed(seed, "reverse"), i), M));
  return out;
}

std::vector<Transition> collect_transitions(
    const std::vector<blocks::BlockPair>& pairs, long n, std::uint64_t seed,
    const sim::SimConfig& cfg) {
  if (n < 1) throw std::invalid_argument("collect_transitions: n must be >= 1");
  if (pairs.empty()) throw std::invalid_argument("collect_transitions: no pairs");
  constexpr int kActionsPerEpisode = 10;
  const std::vector<sim::Simulator> sims = build_simulators(pairs, cfg);
  std::vector<Transition> out;
  out.reserve(n);
  for (long episode = 0; static_cast<long>(out.size()) < n; ++episode) {
    Rng rng(mix_seed(mix_seed(seed, "transitions"), episode));
    const auto pick = static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(sims.size()) - 1));
    const sim::Simulator& simulator = sims[pick];
    sim::WorldState s = simulator.sample_initial_state(rng, 0.0);
    for (int j = 0; j < kActionsPerEpisode && static_cast<long>(out.size()) < n; ++j) {
      const sim::PushAction a{
          {rng.uniform(-sim::kActionBound, sim::kActionBound),
           rng.uniform(-sim::kActionBound, sim::kActionBound)},
          {rng.uniform(-sim::kActionBound, sim::kActionBound),
           rng.uniform(-sim::kActionBound, sim::kActionBound)}};
      sim::WorldState next = simulator.step(s, a);
      out.push_back({s, a, next});
      s = std::move(next);
    }
  }
  return out;
}

std::string sim_config_to_string(const sim::SimConfig& cfg) {
  std::ostringstream ss;
  ss << "cell_size=" << format_double(cfg.cell_size)
     << ",pusher_radius=" << format_double(cfg.pusher_radius)
     << ",step_length=" << format_double(cfg.step_length)
     << ",rotation_gain=" << format_double(cfg.rotation_gain)
     << ",workspace_halfwidth=" << format_double(cfg.workspace_halfwidth)
     << ",success_pos_tol=" << format_double(cfg.success_pos_tol)
     << ",success_ang_tol=" << format_double(cfg.success_ang_tol)
     << ",max_resolve_iters=" << cfg.max_resolve_iters;
  return ss.str();
}

sim::SimConfig sim_config_from_string(const std::string& s) {
  sim::SimConfig cfg;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("sim config: bad token '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    if (key == "cell_size") cfg.cell_size = std::stod(val);
    else if (key == "pusher_radius") cfg.pusher_radius = std::stod(val);
    else if (key == "step_length") cfg.step_length = std::stod(val);
    else if (key == "rotation_gain") cfg.rotation_gain = std::stod(val);
    else if (key == "workspace_halfwidth") cfg.workspace_halfwidth = std::stod(val);
    else if (key == "success_pos_tol") cfg.success_pos_tol = std::stod(val);
    else if (key == "success_ang_tol") cfg.success_ang_tol = std::stod(val);
    else if (key == "max_resolve_iters") cfg.max_resolve_iters = std::stoi(val);
    else throw std::runtime_error("sim config: unknown key '" + key + "'");
  }
  return cfg;
}

void write_reverse_dataset(std::ostream& out,
                           const std::vector<ReverseTrajectory>& trajs,
                           const sim::SimConfig& cfg, std::uint64_t seed) {
  const int M = trajs.empty() ? 0 : static_cast<int>(trajs[0].states.size()) - 1;
  out << "blockmate-revtraj v1 seed=" << seed << " n=" << trajs.size()
      << " M=" << M << " cfg " << sim_config_to_string(cfg) << "\n";
  for (const ReverseTrajectory& t : trajs) {
    out << "traj " << t.pair_id << ' ' << t.seed;
    for (const sim::WorldState& s : t.states) write_state(out, s);
    out << "\n";
  }
}

std::vector<ReverseTrajectory> read_reverse_dataset(std::istream& in,
                                                    sim::SimConfig* cfg_out,
                                                    std::uint64_t* seed_out) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("blockmate-revtraj v1", 0) != 0)
    throw std::runtime_error("reverse dataset: bad header");
  {
    std::stringstream hs(line);
    std::string magic, ver, tok;
    hs >> magic >> ver;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    int m = 0;
    while (hs >> tok) {
      if (tok.rfind("seed=", 0) == 0) seed = std::stoull(tok.substr(5));
      else if (tok.rfind("n=", 0) == 0) n = std::stoull(tok.substr(2));
      else if (tok.rfind("M=", 0) == 0) m = std::stoi(tok.substr(2));
      else if (tok == "cfg") {
        std::string cfg_str;
        hs >> cfg_str;
        if (cfg_out) *cfg_out = sim_config_from_string(cfg_str);
      }
    }
    (void)n;
    (void)m;
    if (seed_out) *seed_out = seed;
  }
  std::vector<ReverseTrajectory> trajs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tag;
    ReverseTrajectory t;
    ss >> tag >> t.pair_id >> t.seed;
    if (tag != "traj") throw std::runtime_error("reverse dataset: bad record");
    while (ss) {
      sim::WorldState s = read_state(ss, t.pair_id);
      if (!ss) break;
      t.states.push_back(std::move(s));
    }
    trajs.push_back(std::move(t));
  }
  return trajs;
}

void write_transition_dataset(std::ostream& out,
                              const std::vector<Transition>& transitions,
                              const sim::SimConfig& cfg, std::uint64_t seed) {
  out << "blockmate-transitions v1 seed=" << seed << " n=" << transitions.size()
      << " cfg " << sim_config_to_string(cfg) << "\n";
  for (const Transition& t : transitions) {
    out << "trans " << t.state.pair_id;
    write_state(out, t.state);
    out << ' ' << format_double(t.action.start.x) << ' ' << format_double(t.action.start.y)
        << ' ' << format_double(t.action.end.x) << ' ' << format_double(t.action.end.y);
    write_state(out, t.next_state);
    out << "\n";
  }
}

std::vector<Transition> read_transition_dataset(std::istream& in,
                                                sim::SimConfig* cfg_out,
                                                std::uint64_t* seed_out) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("blockmate-transitions v1", 0) != 0)
    throw std::runtime_error("transition dataset: bad header");
  {
    std::stringstream hs(line);
    std::string magic, ver, tok;
    hs >> magic >> ver;
    while (hs >> tok) {
      if (tok.rfind("seed=", 0) == 0 && seed_out) *seed_out = std::stoull(tok.substr(5));
      else if (tok == "cfg") {
        std::string cfg_str;
        hs >> cfg_str;
        if (cfg_out) *cfg_out = sim_config_from_string(cfg_str);
      }
    }
  }
  std::vector<Transition> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tag, pair_id;
    ss >> tag >> pair_id;
    if (tag != "trans") throw std::runtime_error("transition dataset: bad record");
    Transition t;
    t.state = read_state(ss, pair_id);
    ss >> t.action.start.x >> t.action.start.y >> t.action.end.x >> t.action.end.y;
    t.next_state = read_state(ss, pair_id);
    if (!ss) throw std::runtime_error("transition dataset: truncated record");
    out.push_back(std::move(t));
  }
  return out;
}

namespace {

template <typename WriteFn>
void save_text(const std::string& path, WriteFn&& fn) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  fn(out);
}

}  // namespace

void save_reverse_dataset(const std::string& path,
                          const std::vector<ReverseTrajectory>& trajs,
                          const sim::SimConfig& cfg, std::uint64_t seed) {
  save_text(path, [&](std::ostream& out) { write_reverse_dataset(out, trajs, cfg, seed); });
}

std::vector<ReverseTrajectory> load_reverse_dataset(const std::string& path,
                                                    sim::SimConfig* cfg_out,
                                                    std::uint64_t* seed_out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open dataset: " + path);
  return read_reverse_dataset(in, cfg_out, seed_out);
}

void save_transition_dataset(const std::string& path,
                             const std::vector<Transition>& transitions,
                             const sim::SimConfig& cfg, std::uint64_t seed) {
  save_text(path, [&](std::ostream& out) { write_transition_dataset(out, transitions, cfg, seed); });
}

std::vector<Transition> load_transition_dataset(const std::string& path,
                                                sim::SimConfig* cfg_out,
                                                std::uint64_t* seed_out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open dataset: " + path);
  return read_transition_dataset(in, cfg_out, seed_out);
}

std::string digest_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string file_digest_hex(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for digest: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return digest_hex(ss.str());
}

}  // namespace blockmate::data
