#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace visbench {

/// Unit steps on the grid, counter-clockwise from east in 45° increments.
enum class Direction { e, ne, n, nw, w, sw, s, se };

std::string_view to_string(Direction d);
/// Comma-separated, case-insensitive list, e.g. "e,ne,se".
std::vector<Direction> parse_directions(std::string_view text);

/// Rules for metro-line polylines between two stations on an n×n cell grid.
struct GridRules {
  std::vector<Direction> directions{Direction::e, Direction::ne, Direction::se};
  int max_turn_deg = 90;          ///< largest heading change at a joint
  bool monotone_x = true;         ///< every step advances in x
  std::optional<int> max_bends;   ///< cap on the number of joints with a heading change

  /// Rejects empty or duplicate directions, turn limits outside (0, 180] or
  /// not a multiple of 45, negative bend caps, and monotone rules that
  /// include a step without positive x.
  void validate() const;
};

struct GridPath {
  std::vector<Direction> steps;

  /// Steps joined by '-', e.g. "NE-SE".
  std::string encode() const;
};

using GridPoint = std::pair<int, int>;

struct GridPathResult {
  int n = 0;
  GridPoint start;
  GridPoint end;
  std::uint64_t count = 0;
  std::vector<GridPath> paths;  ///< canonical order; at most `max_listed` entries
  bool truncated = false;
};

/// Stations sit at (0, n/2) and (n, n/2) (integer division). Paths move in
/// unit steps between lattice points of the (n+1)×(n+1) grid, so every
/// joint lies on a grid point. Non-monotone rules only count simple paths
/// and are limited to n <= 6.
GridPathResult enumerate_grid_paths(int n, const GridRules& rules, std::size_t max_listed = 10000);

/// Heading change between two directions, in degrees (0..180).
int turn_degrees(Direction a, Direction b);
GridPoint step(GridPoint p, Direction d);

}  // namespace visbench
