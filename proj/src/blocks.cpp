#include "blockmate/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "blockmate/rng.hpp"

namespace blockmate::blocks {

namespace {

constexpr int kCells = kSquareSide * kSquareSide;

std::vector<Cell> mask_cells(unsigned mask) {
  std::vector<Cell> cells;
  for (int i = 0; i < kCells; ++i)
    if (mask & (1u << i)) cells.push_back({i % kSquareSide, i / kSquareSide});
  return cells;
}

Cell rotate_cell(Cell c, int quarter_turns) {
  for (int k = 0; k < quarter_turns; ++k) c = {-c[1], c[0]};
  return c;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string cells_token(const std::vector<Cell>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(cells[i][0]) + ',' + std::to_string(cells[i][1]);
  }
  return s;
}

std::vector<Cell> parse_cells(const std::string& token) {
  std::vector<Cell> cells;
  std::stringstream ss(token);
  std::string item;
  while (std::getline(ss, item, ';')) {
    const auto comma = item.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("catalog: bad cell token '" + item + "'");
    cells.push_back({std::stoi(item.substr(0, comma)),
                     std::stoi(item.substr(comma + 1))});
  }
  return cells;
}

}  // namespace

geo::Vec2 BlockShape::cell_centroid() const {
  geo::Vec2 acc{0.0, 0.0};
  for (const Cell& c : cells) acc = acc + geo::Vec2{double(c[0]), double(c[1])};
  return acc * (1.0 / static_cast<double>(cells.size()));
}

bool cells_connected(const std::vector<Cell>& cells) {
  if (cells.empty()) return false;
  std::set<Cell> remaining(cells.begin(), cells.end());
  std::vector<Cell> frontier{cells[0]};
  remaining.erase(cells[0]);
  while (!frontier.empty()) {
    const Cell c = frontier.back();
    frontier.pop_back();
    for (const Cell n : {Cell{c[0] + 1, c[1]}, Cell{c[0] - 1, c[1]},
                         Cell{c[0], c[1] + 1}, Cell{c[0], c[1] - 1}}) {
      const auto it = remaining.find(n);
      if (it != remaining.end()) {
        remaining.erase(it);
        frontier.push_back(n);
      }
    }
  }
  return remaining.empty();
}

geo::Polygon shape_polygon(const BlockShape& shape, double cell_size) {
  // Collect the directed boundary edges on the corner lattice (cell (x,y)
  // spans corners [x,x+1]^2); CCW traversal puts bottom edges along +x.
  const std::set<Cell> occupied(shape.cells.begin(), shape.cells.end());
  std::map<Cell, Cell> next_corner;
  const auto add_edge = [&](Cell from, Cell to) {
    if (!next_corner.emplace(from, to).second)
      throw std::runtime_error("shape_polygon: outline is not a simple loop");
  };
  for (const Cell& c : shape.cells) {
    const int x = c[0], y = c[1];
    if (!occupied.count({x, y - 1})) add_edge({x, y}, {x + 1, y});
    if (!occupied.count({x + 1, y})) add_edge({x + 1, y}, {x + 1, y + 1});
    if (!occupied.count({x, y + 1})) add_edge({x + 1, y + 1}, {x, y + 1});
    if (!occupied.count({x - 1, y})) add_edge({x, y + 1}, {x, y});
  }

  const Cell start = next_corner.begin()->first;
  std::vector<Cell> loop;
  Cell cur = start;
  do {
    loop.push_back(cur);
    const auto it = next_corner.find(cur);
    if (it == next_corner.end())
      throw std::runtime_error("shape_polygon: open outline");
    cur = it->second;
    next_corner.erase(it);
  } while (!(cur == start));
  if (!next_corner.empty())
    throw std::runtime_error("shape_polygon: outline has multiple loops");

  // Drop collinear corners.
  std::vector<Cell> corners;
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Cell prev = loop[(i + n - 1) % n];
    const Cell here = loop[i];
    const Cell next = loop[(i + 1) % n];
    const int ax = here[0] - prev[0], ay = here[1] - prev[1];
    const int bx = next[0] - here[0], by = next[1] - here[1];
    if (ax * by - ay * bx != 0) corners.push_back(here);
  }

  const geo::Vec2 centroid = shape.cell_centroid();
  geo::Polygon poly;
  poly.reserve(corners.size());
  for (const Cell& c : corners)
    poly.push_back({(c[0] - centroid.x - 0.5) * cell_size,
                    (c[1] - centroid.y - 0.5) * cell_size});
  return poly;
}

std::vector<geo::Pose2> mating_offsets(const BlockShape& female,
                                       const BlockShape& male) {
  std::set<Cell> complement;
  for (int x = 0; x < kSquareSide; ++x)
    for (int y = 0; y < kSquareSide; ++y) complement.insert({x, y});
  for (const Cell& c : female.cells) {
    if (!complement.erase(c))
      throw std::invalid_argument("mating_offsets: female outside the square");
  }
  if (complement.size() != male.cells.size())
    throw std::invalid_argument("mating_offsets: piece sizes do not tile the square");

  const geo::Vec2 cf = female.cell_centroid();
  const geo::Vec2 cm = male.cell_centroid();
  std::vector<geo::Pose2> offsets;
  for (int k = 0; k < 4; ++k) {
    for (int tx = -4; tx <= 4; ++tx) {
      for (int ty = -4; ty <= 4; ++ty) {
        std::set<Cell> placed;
        for (const Cell& c : male.cells) {
          const Cell r = rotate_cell(c, k);
          placed.insert({r[0] + tx, r[1] + ty});
        }
        if (placed != complement) continue;
        const geo::Vec2 rot_cm = [&] {
          // Rotation acts linearly on the fractional centroid too.
          geo::Vec2 v = cm;
          for (int i = 0; i < k; ++i) v = {-v.y, v.x};
          return v;
        }();
        offsets.push_back({(tx + rot_cm.x - cf.x) * kCellSize,
                           (ty + rot_cm.y - cf.y) * kCellSize,
                           geo::normalize_angle(k * geo::kPi / 2.0)});
      }
    }
  }
  if (offsets.empty())
    throw std::invalid_argument("mating_offsets: no valid placement, invalid pair");
  return offsets;
}

std::vector<BlockPair> enumerate_pairs(int min_cells) {
  if (min_cells < 3 || min_cells > 4)
    throw std::invalid_argument("enumerate_pairs: min_cells must be 3 or 4");
  std::vector<BlockPair> pairs;
  const unsigned full = (1u << kCells) - 1;
  for (unsigned mask = 1; mask < full; ++mask) {
    const int bits = __builtin_popcount(mask);
    // Keep one labeling per decomposition: the male is the smaller piece
    // (9 cells means sizes never tie).
    if (bits * 2 >= kCells) continue;
    if (bits < min_cells || kCells - bits < min_cells) continue;
    BlockShape male{mask_cells(mask)};
    BlockShape female{mask_cells(full & ~mask)};
    if (!cells_connected(male.cells) || !cells_connected(female.cells)) continue;
    char id[16];
    std::snprintf(id, sizeof(id), "p%03u", mask);
    pairs.push_back({id, std::move(female), std::move(male), {}});
  }
  for (BlockPair& p : pairs) p.mating_offsets = mating_offsets(p.female, p.male);
  std::sort(pairs.begin(), pairs.end(),
            [](const BlockPair& a, const BlockPair& b) { return a.id < b.id; });
  return pairs;
}

CatalogSplit split_catalog(const std::vector<BlockPair>& pairs,
                           std::uint64_t seed, double unseen_fraction) {
  if (pairs.size() < 2)
    throw std::invalid_argument("split_catalog: need at least 2 pairs");
  if (!(unseen_fraction > 0.0 && unseen_fraction < 1.0))
    throw std::invalid_argument("split_catalog: fraction must be in (0, 1)");
  const auto total = static_cast<long>(pairs.size());
  long n_unseen = std::lround(unseen_fraction * static_cast<double>(total));
  n_unseen = std::clamp(n_unseen, 1L, total - 1);

  std::vector<std::pair<std::uint64_t, std::size_t>> scored;
  scored.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i)
    scored.emplace_back(mix_seed(seed, pairs[i].id), i);
  std::sort(scored.begin(), scored.end());

  std::vector<bool> unseen_mark(pairs.size(), false);
  for (long i = 0; i < n_unseen; ++i) unseen_mark[scored[i].second] = true;

  CatalogSplit split;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    (unseen_mark[i] ? split.unseen : split.seen).push_back(pairs[i]);
  return split;
}

void write_catalog(std::ostream& out, const std::vector<BlockPair>& pairs) {
  out << "blockmate-catalog v1 pairs=" << pairs.size() << "\n";
  for (const BlockPair& p : pairs) {
    out << "pair " << p.id << " female " << cells_token(p.female.cells)
        << " male " << cells_token(p.male.cells) << " offsets ";
    for (std::size_t i = 0; i < p.mating_offsets.size(); ++i) {
      const geo::Pose2& g = p.mating_offsets[i];
      if (i) out << '|';
      out << format_double(g.x) << ',' << format_double(g.y) << ','
          << format_double(g.theta);
    }
    out << "\n";
  }
}

std::vector<BlockPair> read_catalog(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || header.rfind("blockmate-catalog v1", 0) != 0)
    throw std::runtime_error("catalog: bad header");
  std::vector<BlockPair> pairs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tag, id, fkey, ftok, mkey, mtok, okey, otok;
    ss >> tag >> id >> fkey >> ftok >> mkey >> mtok >> okey >> otok;
    if (tag != "pair" || fkey != "female" || mkey != "male" || okey != "offsets")
      throw std::runtime_error("catalog: bad record '" + line + "'");
    BlockPair p;
    p.id = id;
    p.female.cells = parse_cells(ftok);
    p.male.cells = parse_cells(mtok);
    std::stringstream os(otok);
    std::string item;
    while (std::getline(os, item, '|')) {
      double x, y, th;
      if (std::sscanf(item.c_str(), "%lf,%lf,%lf", &x, &y, &th) != 3)
        throw std::runtime_error("catalog: bad offset '" + item + "'");
      p.mating_offsets.push_back({x, y, th});
    }
    pairs.push_back(std::move(p));
  }
  return pairs;
}

void save_catalog(const std::string& path, const std::vector<BlockPair>& pairs) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  write_catalog(out, pairs);
}

std::vector<BlockPair> load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open catalog: " + path);
  return read_catalog(in);
}

}  // namespace blockmate::blocks
