#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "blockmate/geometry.hpp"

namespace blockmate::blocks {

// Side length of one grid cell, meters.
constexpr double kCellSize = 0.05;
constexpr int kSquareSide = 3;

using Cell = std::array<int, 2>;

// Edge-connected set of grid cells; the local frame origin sits at the
// cell-centroid, so shape polygons come out centered.
struct BlockShape {
  std::vector<Cell> cells;  // sorted, unique

  geo::Vec2 cell_centroid() const;
};

bool cells_connected(const std::vector<Cell>& cells);

// Rectilinear outer boundary of the union of cells, counterclockwise,
// centered at the shape's local origin.
geo::Polygon shape_polygon(const BlockShape& shape, double cell_size);

// Two pieces completing the 3x3 square. Offsets are poses of the male piece
// in the female frame at which the union tiles the square exactly.
struct BlockPair {
  std::string id;
  BlockShape female;  // the larger piece
  BlockShape male;
  std::vector<geo::Pose2> mating_offsets;
};

// All relative poses (quarter-turn rotations, integer-cell translations) of
// male in the female frame that complete the square. Throws if none exist.
std::vector<geo::Pose2> mating_offsets(const BlockShape& female,
                                       const BlockShape& male);

// Every unordered decomposition of the 3x3 square into two edge-connected
// pieces of at least min_cells cells each, ordered by id.
std::vector<BlockPair> enumerate_pairs(int min_cells);

struct CatalogSplit {
  std::vector<BlockPair> seen;
  std::vector<BlockPair> unseen;
};

// Deterministic partition keyed by (id, seed); unseen size =
// round(fraction * total), clamped to [1, total - 1].
CatalogSplit split_catalog(const std::vector<BlockPair>& pairs,
                           std::uint64_t seed, double unseen_fraction);

void write_catalog(std::ostream& out, const std::vector<BlockPair>& pairs);
std::vector<BlockPair> read_catalog(std::istream& in);

void save_catalog(const std::string& path, const std::vector<BlockPair>& pairs);
std::vector<BlockPair> load_catalog(const std::string& path);

}  // namespace blockmate::blocks
