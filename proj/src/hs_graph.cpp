#include "olc/hs_graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>

namespace olc {

int hs_rows(int n) {
  if (n < 1) throw BadParameter("n must be positive");
  return static_cast<int>(std::bit_width(static_cast<unsigned>(n))) - 1 + 3;
}

bool game_length_check(int b, int n) {
  if (b < 1) throw BadParameter("b must be positive");
  std::uint64_t total = 0;
  std::uint64_t binom = 1;  // C(b, x)
  for (int x = 1; x <= b / 2; ++x) {
    binom = binom * static_cast<std::uint64_t>(b - x + 1) / static_cast<std::uint64_t>(x);
    total += static_cast<std::uint64_t>(x) * binom;
    if (total >= static_cast<std::uint64_t>(n)) return true;
  }
  return total >= static_cast<std::uint64_t>(n);
}

int guarantee_hs_columns(int n, int b) {
  const int half = b / 2;
  if (half < 1) throw BadParameter("b must be at least 2");
  return (n + half - 1) / half;
}

int paper_bound_hs(int n) {
  return static_cast<int>(std::ceil(2.0 * n / (std::log2(static_cast<double>(n)) + 3.0)));
}

HsGraph::HsGraph(std::optional<int> k, int n) : k_(k), n_(n) {
  if (n < 2) throw BadParameter("n must be at least 2");
  if (k && *k < 1) throw BadParameter("k must be positive");
  b_ = hs_rows(n);
  for (int r = 1; r <= b_; ++r) active_.insert(r);
  next_row_ = b_ + 1;
  if (!game_length_check(b_, n_)) {
    throw InternalInvariantBroken("pattern supply too small for n rounds");
  }
}

HsGraph HsGraph::restore(std::optional<int> k, int n, const std::vector<Placement>& placements,
                         const std::set<int>& active_rows) {
  HsGraph g(k, n);
  if (static_cast<int>(active_rows.size()) != g.b_) {
    throw BadParameter("active set must contain exactly b rows");
  }
  g.active_ = active_rows;
  int max_row = *active_rows.rbegin();
  for (std::size_t i = 0; i < placements.size(); ++i) {
    const int vertex = static_cast<int>(i) + 1;
    g.adjacency_.emplace_back();
    g.patterns_.push_back({placements[i].row});
    g.place(vertex, placements[i].row, placements[i].column);
    max_row = std::max(max_row, placements[i].row);
  }
  if (k) {
    for (const auto& [row, vertices] : g.rows_) {
      if (static_cast<int>(vertices.size()) >= *k) g.depleted_.insert(row);
    }
  }
  g.next_row_ = max_row + 1;
  return g;
}

bool HsGraph::is_active_pattern(const Pattern& p) const {
  if (p.empty() || static_cast<int>(p.size()) > b_ / 2) return false;
  return std::all_of(p.begin(), p.end(), [&](int r) { return active_.count(r) > 0; });
}

bool HsGraph::is_present(const Pattern& p) const { return present_.count(p) > 0; }

Pattern HsGraph::choose_pattern() const {
  const std::vector<int> rows(active_.begin(), active_.end());
  const int b = static_cast<int>(rows.size());
  for (int size = 1; size <= b_ / 2; ++size) {
    // Index combinations in lexicographic order.
    std::vector<int> idx(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
      Pattern p;
      p.reserve(idx.size());
      for (int i : idx) p.push_back(rows[static_cast<std::size_t>(i)]);
      if (!is_present(p)) return p;
      int pos = size - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == b - size + pos) --pos;
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
      for (int j = pos + 1; j < size; ++j) {
        idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
      }
    }
  }
  throw PatternsExhausted("every active pattern is present after " + std::to_string(round()) +
                          " rounds");
}

Pattern HsGraph::column_pattern(Color column) const {
  auto it = columns_.find(column);
  if (it == columns_.end()) return {};
  return Pattern(it->second.begin(), it->second.end());
}

const std::vector<int>& HsGraph::make_vertex(const Pattern& p) {
  if (pending_) throw BadParameter("a vertex is already pending");
  if (!is_active_pattern(p)) throw BadParameter("pattern is not active");
  if (is_present(p)) throw BadParameter("pattern is already present");
  Pending next{p, {}};
  for (std::size_t i = 0; i < rows_of_vertex_.size(); ++i) {
    if (!std::binary_search(p.begin(), p.end(), rows_of_vertex_[i])) {
      next.adjacency.push_back(static_cast<int>(i) + 1);
    }
  }
  pending_ = std::move(next);
  return pending_->adjacency;
}

const std::vector<int>& HsGraph::next_vertex() { return make_vertex(choose_pattern()); }

int HsGraph::respond(Color gamma) {
  if (!pending_) throw BadParameter("no pending vertex");
  const int vertex = round() + 1;
  if (gamma < 0) {
    throw IllegalAlgorithmMove("negative color " + std::to_string(gamma), vertex);
  }
  for (int u : pending_->adjacency) {
    if (colors_[static_cast<std::size_t>(u - 1)] == gamma) {
      throw IllegalAlgorithmMove("color " + std::to_string(gamma) + " already on neighbor v" +
                                     std::to_string(u),
                                 vertex);
    }
  }
  if (k_) {
    auto it = color_uses_.find(gamma);
    if (it != color_uses_.end() && it->second >= *k_) {
      throw IllegalAlgorithmMove("color " + std::to_string(gamma) + " already used k times",
                                 vertex);
    }
  }

  const Pattern& p = pending_->pattern;
  const Pattern q = column_pattern(gamma);
  ++strict_subset_checks_;
  const bool subset = std::includes(p.begin(), p.end(), q.begin(), q.end());
  if (!subset || q.size() >= p.size()) {
    throw InternalInvariantBroken("column pattern is not a strict subset of the vertex pattern");
  }
  int rho = -1;
  for (int r : p) {
    if (!cells_.count({r, gamma})) {
      rho = r;
      break;
    }
  }
  if (rho < 0) throw InternalInvariantBroken("no free row in the vertex pattern");

  adjacency_.push_back(std::move(pending_->adjacency));
  patterns_.push_back(p);
  pending_.reset();
  place(vertex, rho, gamma);

  if (k_ && row_size(rho) == *k_) {
    depleted_.insert(rho);
    active_.erase(rho);
    activate_fresh_row();
  }
  return rho;
}

void HsGraph::place(int vertex, int row, Color column) {
  if (cells_.count({row, column})) throw InternalInvariantBroken("cell already occupied");
  Pattern old = column_pattern(column);
  if (!old.empty()) {
    auto it = present_.find(old);
    if (--it->second == 0) present_.erase(it);
  }
  cells_[{row, column}] = vertex;
  rows_[row].insert(vertex);
  columns_[column].insert(row);
  ++present_[column_pattern(column)];
  ++color_uses_[column];
  rows_of_vertex_.push_back(row);
  colors_.push_back(column);
}

void HsGraph::activate_fresh_row() { active_.insert(next_row_++); }

std::optional<int> HsGraph::cell(int row, Color column) const {
  if (auto it = cells_.find({row, column}); it != cells_.end()) return it->second;
  return std::nullopt;
}

int HsGraph::row_size(int row) const {
  auto it = rows_.find(row);
  return it == rows_.end() ? 0 : static_cast<int>(it->second.size());
}

int HsGraph::presenter_colors_used() const { return static_cast<int>(rows_.size()); }

bool HsGraph::columns_within_half() const {
  return std::all_of(columns_.begin(), columns_.end(), [&](const auto& col) {
    return static_cast<int>(col.second.size()) <= b_ / 2;
  });
}

void HsGraph::check_invariants() const {
  if (static_cast<int>(active_.size()) != b_) {
    throw InternalInvariantBroken("active set does not have b rows");
  }
  for (const auto& [row, vertices] : rows_) {
    const int size = static_cast<int>(vertices.size());
    if (k_ && size > *k_) throw InternalInvariantBroken("row holds more than k vertices");
    const bool depleted = depleted_.count(row) > 0;
    if (k_ && depleted != (size == *k_)) {
      throw InternalInvariantBroken("depleted set out of sync with row sizes");
    }
    if (!depleted && !active_.count(row)) {
      throw InternalInvariantBroken("nonempty non-depleted row is not active");
    }
  }
  if (k_) {
    for (const auto& [column, rows] : columns_) {
      if (static_cast<int>(rows.size()) > *k_) {
        throw InternalInvariantBroken("column holds more than k vertices");
      }
    }
  }
  for (std::size_t v = 0; v < adjacency_.size(); ++v) {
    for (int u : adjacency_[v]) {
      if (rows_of_vertex_[static_cast<std::size_t>(u - 1)] == rows_of_vertex_[v]) {
        throw InternalInvariantBroken("presenter coloring is not proper");
      }
    }
  }
}

HsGraphResult play_hs_graph(std::optional<int> k, int n, GraphAlgorithm& algorithm) {
  HsGraph hs(k, n);
  HsGraphResult result;
  while (!hs.finished()) {
    const std::vector<int>& adjacency = hs.next_vertex();
    Move move;
    move.round = hs.round() + 1;
    move.adjacent_to = adjacency;
    const GraphView view{k, hs.algorithm_colors(), adjacency};
    const Color gamma = algorithm.choose(view, move);
    const int rho = hs.respond(gamma);
    move.algorithm_color = gamma;
    move.presenter_color = rho - 1;
    result.moves.push_back(std::move(move));
  }
  hs.check_invariants();
  result.algorithm_colors = hs.algorithm_colors_used();
  result.presenter_colors = hs.presenter_colors_used();
  result.guarantee = guarantee_hs_columns(n, hs.b());
  result.strict_subset_checks = hs.strict_subset_checks();
  result.columns_within_half = hs.columns_within_half();
  return result;
}

GraphReplayReport replay_graph_transcript(const Transcript& t) {
  GraphReplayReport report;
  if (!t.strategy.params.contains("n") || !t.strategy.params["n"].is_number_integer()) {
    throw MalformedTranscript("hs-graph transcript needs strategy.n");
  }
  const int n = t.strategy.params["n"].get<int>();
  if (static_cast<int>(t.moves.size()) != n) {
    report.mismatches.push_back("expected " + std::to_string(n) + " moves, found " +
                                std::to_string(t.moves.size()));
  }
  HsGraph hs(t.constraints.k, std::max(n, 2));
  std::vector<Color> colors;
  std::map<Color, int> uses;
  for (const Move& m : t.moves) {
    if (!m.adjacent_to) throw MalformedTranscript("graph move without adjacent_to");
    for (int u : *m.adjacent_to) {
      if (u < 1 || u >= m.round) throw MalformedTranscript("adjacent_to refers to a later vertex");
      if (colors[static_cast<std::size_t>(u - 1)] == m.algorithm_color) {
        report.illegal_round = m.round;
        report.illegal_reason = "color " + std::to_string(m.algorithm_color) +
                                " repeats on adjacent vertex " + std::to_string(u);
        break;
      }
    }
    if (!report.illegal_round && t.constraints.k && uses[m.algorithm_color] >= *t.constraints.k) {
      report.illegal_round = m.round;
      report.illegal_reason = "color " + std::to_string(m.algorithm_color) + " used more than k times";
    }
    if (report.illegal_round) break;
    colors.push_back(m.algorithm_color);
    ++uses[m.algorithm_color];

    if (hs.finished()) continue;
    const std::vector<int> expected = hs.next_vertex();
    if (expected != *m.adjacent_to) {
      report.mismatches.push_back("round " + std::to_string(m.round) +
                                  ": adjacency differs from the strategy's");
      break;
    }
    int rho = 0;
    try {
      rho = hs.respond(m.algorithm_color);
    } catch (const Error& e) {
      report.mismatches.push_back("round " + std::to_string(m.round) + ": " + e.what());
      break;
    }
    if (!m.presenter_color || *m.presenter_color != rho - 1) {
      report.mismatches.push_back("round " + std::to_string(m.round) +
                                  ": presenter color differs from the strategy's");
    }
  }
  report.algorithm_colors = static_cast<int>(uses.size());
  report.presenter_colors = hs.presenter_colors_used();
  return report;
}

}  // namespace olc
