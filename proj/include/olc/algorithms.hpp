#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <random>
#include <string>

#include "olc/referee.hpp"

namespace olc {

// Smallest color whose class can take cand. A fresh index always qualifies.
Color first_fit(const ColoringState& state, const WeightedInterval& cand);

// Uniform over {feasible existing colors} + {one fresh color}.
Color random_fit(const ColoringState& state, const WeightedInterval& cand, std::mt19937_64& rng);

// Smallest color not on a neighbor and used fewer than k times.
Color graph_first_fit(const GraphView& view);

Color graph_random_fit(const GraphView& view, std::mt19937_64& rng);

class FirstFit final : public IntervalAlgorithm, public GraphAlgorithm {
 public:
  Color choose(const ColoringState& state, const WeightedInterval& cand, const Move&) override {
    return first_fit(state, cand);
  }
  Color choose(const GraphView& view, const Move&) override { return graph_first_fit(view); }
};

class RandomFit final : public IntervalAlgorithm, public GraphAlgorithm {
 public:
  explicit RandomFit(std::uint64_t seed) : rng_(seed) {}
  Color choose(const ColoringState& state, const WeightedInterval& cand, const Move&) override {
    return random_fit(state, cand, rng_);
  }
  Color choose(const GraphView& view, const Move&) override {
    return graph_random_fit(view, rng_);
  }

 private:
  std::mt19937_64 rng_;
};

// Always opens a new color.
class FreshColor final : public IntervalAlgorithm, public GraphAlgorithm {
 public:
  Color choose(const ColoringState& state, const WeightedInterval&, const Move&) override {
    return state.fresh_color();
  }
  Color choose(const GraphView& view, const Move&) override;
};

// A child process speaking newline-delimited JSON on stdin/stdout. The first
// line sent is the header object; each request is a move without colors and
// each response is {"color": n} with n >= 0.
class ExternalAlgorithm final : public IntervalAlgorithm, public GraphAlgorithm {
 public:
  explicit ExternalAlgorithm(std::string command,
                             std::chrono::milliseconds timeout = std::chrono::seconds(10));
  ~ExternalAlgorithm() override;

  ExternalAlgorithm(const ExternalAlgorithm&) = delete;
  ExternalAlgorithm& operator=(const ExternalAlgorithm&) = delete;

  void begin(const Json& header) override;
  Color choose(const ColoringState&, const WeightedInterval&, const Move& request) override {
    return external_step(request);
  }
  Color choose(const GraphView&, const Move& request) override { return external_step(request); }
  void end() override;

  // Writes one request line and reads one response line.
  // Throws ProtocolError or Timeout.
  Color external_step(const Move& request);

  const std::string& command() const { return command_; }

 private:
  void write_line(const std::string& line);
  std::string read_line();
  void shutdown(bool force);

  std::string command_;
  std::chrono::milliseconds timeout_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
};

// Name accepted on the command line: "first-fit" (or "graph-first-fit"),
// "random", "fresh", "external:<command>".
struct AlgorithmSpec {
  std::string name;
  std::uint64_t seed = 0;
  std::string command;
};

AlgorithmSpec parse_algorithm(const std::string& text, std::uint64_t seed);

class AnyAlgorithm {
 public:
  explicit AnyAlgorithm(const AlgorithmSpec& spec);
  IntervalAlgorithm& interval() { return *interval_; }
  GraphAlgorithm& graph() { return *graph_; }
  AlgorithmInfo info() const;

 private:
  AlgorithmSpec spec_;
  std::unique_ptr<IntervalAlgorithm> owner_;
  IntervalAlgorithm* interval_ = nullptr;
  GraphAlgorithm* graph_ = nullptr;
};

}  // namespace olc
