#include "visbench/grid_paths.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <set>

#include "visbench/csv.hpp"
#include "visbench/errors.hpp"

namespace visbench {

namespace {

constexpr std::array<std::string_view, 8> kNames{"E", "NE", "N", "NW", "W", "SW", "S", "SE"};
constexpr std::array<int, 8> kDx{1, 1, 0, -1, -1, -1, 0, 1};
constexpr std::array<int, 8> kDy{0, 1, 1, 1, 0, -1, -1, -1};

int idx(Direction d) { return static_cast<int>(d); }

}  // namespace

std::string_view to_string(Direction d) { return kNames[static_cast<std::size_t>(idx(d))]; }

std::vector<Direction> parse_directions(std::string_view text) {
  std::vector<Direction> out;
  for (const auto& raw : csv::split_line(text)) {
    std::string token;
    for (char c : csv::trim(raw)) token.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    const auto it = std::find(kNames.begin(), kNames.end(), token);
    if (it == kNames.end()) throw validation_error("unknown direction '" + csv::trim(raw) + "'");
    out.push_back(static_cast<Direction>(it - kNames.begin()));
  }
  return out;
}

int turn_degrees(Direction a, Direction b) {
  const int diff = std::abs(idx(a) - idx(b)) % 8;
  return 45 * std::min(diff, 8 - diff);
}

GridPoint step(GridPoint p, Direction d) {
  return {p.first + kDx[static_cast<std::size_t>(idx(d))], p.second + kDy[static_cast<std::size_t>(idx(d))]};
}

void GridRules::validate() const {
  if (directions.empty()) throw validation_error("grid rules need at least one direction");
  std::set<Direction> seen(directions.begin(), directions.end());
  if (seen.size() != directions.size()) throw validation_error("grid rules list a direction twice");
  if (max_turn_deg <= 0 || max_turn_deg > 180 || max_turn_deg % 45 != 0) {
    throw validation_error("max turn must be 45, 90, 135 or 180 degrees");
  }
  if (max_bends && *max_bends < 0) throw validation_error("max bends must be non-negative");
  if (monotone_x) {
    for (Direction d : directions) {
      if (kDx[static_cast<std::size_t>(idx(d))] <= 0) {
        throw validation_error("monotone rules cannot include direction " + std::string(to_string(d)));
      }
    }
  }
}

std::string GridPath::encode() const {
  std::string out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i) out.push_back('-');
    out += to_string(steps[i]);
  }
  return out;
}

namespace {

struct Search {
  int n;
  GridPoint end;
  std::vector<Direction> dirs;
  int max_turn;
  std::optional<int> max_bends;
  bool monotone;
  std::size_t max_listed;
  GridPathResult* result;

  std::vector<Direction> current;
  std::set<GridPoint> visited;

  bool inside(GridPoint p) const { return p.first >= 0 && p.first <= n && p.second >= 0 && p.second <= n; }

  void run(GridPoint at, int bends) {
    if (at == end) {
      ++result->count;
      if (result->paths.size() < max_listed) {
        result->paths.push_back(GridPath{current});
      } else {
        result->truncated = true;
      }
      // A simple path could continue through the end station and return, but
      // the line terminates there.
      return;
    }
    for (Direction d : dirs) {
      int next_bends = bends;
      if (!current.empty()) {
        if (turn_degrees(current.back(), d) > max_turn) continue;
        if (d != current.back()) ++next_bends;
      }
      if (max_bends && next_bends > *max_bends) continue;
      const GridPoint next = step(at, d);
      if (!inside(next)) continue;
      if (monotone && next.first > end.first) continue;
      if (!monotone && visited.count(next)) continue;
      current.push_back(d);
      visited.insert(next);
      run(next, next_bends);
      visited.erase(next);
      current.pop_back();
    }
  }
};

// Monotone paths: dynamic programme over (x, y, last heading, bends).
std::uint64_t count_monotone(int n, GridPoint start, GridPoint end, const std::vector<Direction>& dirs,
                             int max_turn, std::optional<int> max_bends) {
  using State = std::tuple<int, int, int>;  // y, last direction (-1 = none), bends
  std::map<State, std::uint64_t> layer{{State{start.second, -1, 0}, 1}};
  for (int x = start.first; x < end.first; ++x) {
    std::map<State, std::uint64_t> next;
    for (const auto& [state, ways] : layer) {
      const auto [y, last, bends] = state;
      for (Direction d : dirs) {
        int b = bends;
        if (last >= 0) {
          if (turn_degrees(static_cast<Direction>(last), d) > max_turn) continue;
          if (idx(d) != last) ++b;
        }
        if (max_bends && b > *max_bends) continue;
        const GridPoint p = step({x, y}, d);
        if (p.second < 0 || p.second > n) continue;
        next[State{p.second, idx(d), b}] += ways;
      }
    }
    layer = std::move(next);
  }
  std::uint64_t total = 0;
  for (const auto& [state, ways] : layer) {
    if (std::get<0>(state) == end.second) total += ways;
  }
  return total;
}

}  // namespace

GridPathResult enumerate_grid_paths(int n, const GridRules& rules, std::size_t max_listed) {
  if (n < 1) throw validation_error("grid size must be at least 1");
  rules.validate();
  if (!rules.monotone_x && n > 6) throw validation_error("non-monotone enumeration is limited to n <= 6");
  if (rules.monotone_x && n > 40) throw validation_error("grid size above 40 overflows the path count");

  std::vector<Direction> dirs = rules.directions;
  std::sort(dirs.begin(), dirs.end());

  GridPathResult result;
  result.n = n;
  result.start = {0, n / 2};
  result.end = {n, n / 2};

  Search search{n, result.end, dirs, rules.max_turn_deg, rules.max_bends, rules.monotone_x, max_listed, &result, {}, {}};
  if (rules.monotone_x) {
    const std::uint64_t total =
        count_monotone(n, result.start, result.end, dirs, rules.max_turn_deg, rules.max_bends);
    if (max_listed > 0 && total <= 5'000'000) {
      search.run(result.start, 0);
    } else {
      result.truncated = total > 0;
    }
    result.count = total;
  } else {
    search.visited.insert(result.start);
    search.run(result.start, 0);
  }
  return result;
}

}  // namespace visbench
