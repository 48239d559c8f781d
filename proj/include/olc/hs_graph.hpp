#pragma once

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "olc/referee.hpp"
#include "olc/transcript.hpp"

namespace olc {

// Sorted, nonempty set of progress-matrix rows.
using Pattern = std::vector<int>;

// floor(log2 n) + 3.
int hs_rows(int n);

// sum_{1 <= x <= floor(b/2)} x * C(b, x) >= n
bool game_length_check(int b, int n);

// ceil(n / floor(b/2)): nonempty columns forced after n rounds.
int guarantee_hs_columns(int n, int b);

// ceil(2n / (log2 n + 3)), reported next to the integer guarantee only.
int paper_bound_hs(int n);

// Transparent Presenter for the n-round k-bounded on-line graph coloring game.
// Rows of the progress matrix are Presenter colors (1-based), columns are
// Algorithm colors. Vertex ids are 1-based rounds.
class HsGraph {
 public:
  struct Placement {
    int row;
    Color column;
  };

  // Throws BadParameter if n < 2 or k < 1.
  HsGraph(std::optional<int> k, int n);

  // Rebuilds a mid-game state from matrix placements (vertex i+1 at
  // placements[i]) and an explicit active set. Adjacency of restored vertices
  // is left empty.
  static HsGraph restore(std::optional<int> k, int n, const std::vector<Placement>& placements,
                         const std::set<int>& active_rows);

  int n() const { return n_; }
  int b() const { return b_; }
  std::optional<int> k() const { return k_; }
  int round() const { return static_cast<int>(rows_of_vertex_.size()); }
  bool finished() const { return round() >= n_; }
  bool pending() const { return pending_.has_value(); }

  const std::set<int>& active_rows() const { return active_; }
  const std::set<int>& depleted_rows() const { return depleted_; }

  // Smallest non-present active pattern, by size then lexicographic order.
  // Throws PatternsExhausted if every active pattern is present.
  Pattern choose_pattern() const;

  bool is_active_pattern(const Pattern& p) const;
  bool is_present(const Pattern& p) const;

  // Rows occupied in the given column (empty pattern for an unused column).
  Pattern column_pattern(Color column) const;

  // Introduces the pending vertex for pattern p: adjacent exactly to earlier
  // vertices whose Presenter color is not in p. Returns the adjacency.
  const std::vector<int>& make_vertex(const Pattern& p);

  // choose_pattern + make_vertex.
  const std::vector<int>& next_vertex();

  // Records the Algorithm color of the pending vertex and answers with the
  // smallest row rho in the pattern whose cell (rho, gamma) is empty.
  // Throws IllegalAlgorithmMove if gamma clashes with a neighbor or was already
  // used k times; InternalInvariantBroken if the column pattern is not a strict
  // subset of the vertex pattern.
  int respond(Color gamma);

  std::optional<int> cell(int row, Color column) const;
  int row_size(int row) const;

  const std::vector<std::vector<int>>& adjacency() const { return adjacency_; }
  const std::vector<int>& presenter_rows() const { return rows_of_vertex_; }
  const std::vector<Color>& algorithm_colors() const { return colors_; }
  const std::vector<Pattern>& patterns() const { return patterns_; }

  int presenter_colors_used() const;
  int algorithm_colors_used() const { return static_cast<int>(columns_.size()); }

  // Every column's pattern has size <= floor(b/2).
  bool columns_within_half() const;

  // Rechecks matrix bounds, the active-row discipline and that the Presenter
  // coloring is a proper k-bounded coloring. Throws InternalInvariantBroken.
  void check_invariants() const;

  int strict_subset_checks() const { return strict_subset_checks_; }

 private:
  void place(int vertex, int row, Color column);
  void activate_fresh_row();

  std::optional<int> k_;
  int n_;
  int b_;
  std::set<int> active_;
  std::set<int> depleted_;
  int next_row_;

  std::map<std::pair<int, Color>, int> cells_;
  std::map<int, std::set<int>> rows_;      // row -> vertices
  std::map<Color, std::set<int>> columns_;  // column -> rows
  std::map<Pattern, int> present_;          // patterns of nonempty columns, with multiplicity
  std::map<Color, int> color_uses_;

  std::vector<std::vector<int>> adjacency_;
  std::vector<int> rows_of_vertex_;
  std::vector<Color> colors_;
  std::vector<Pattern> patterns_;

  struct Pending {
    Pattern pattern;
    std::vector<int> adjacency;
  };
  std::optional<Pending> pending_;
  int strict_subset_checks_ = 0;
};

struct HsGraphResult {
  std::vector<Move> moves;
  int algorithm_colors = 0;
  int presenter_colors = 0;
  int guarantee = 0;
  int strict_subset_checks = 0;
  bool columns_within_half = false;
};

// Plays n rounds against the algorithm. Moves carry adjacent_to and a 0-based
// presenter_color (row - 1).
HsGraphResult play_hs_graph(std::optional<int> k, int n, GraphAlgorithm& algorithm);

struct GraphReplayReport {
  std::optional<int> illegal_round;
  std::string illegal_reason;
  std::vector<std::string> mismatches;
  int algorithm_colors = 0;
  int presenter_colors = 0;
};

// Checks that the recorded algorithm colors form a proper k-bounded coloring,
// and re-runs the strategy on them to confirm adjacency and Presenter colors.
GraphReplayReport replay_graph_transcript(const Transcript& t);

}  // namespace olc
