#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "olc/rational.hpp"

namespace olc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied parameters outside the documented domain.
class BadParameter : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class MalformedTranscript : public Error {
 public:
  using Error::Error;
};

enum class Constraint { kCardinality, kBandwidth };

const char* to_string(Constraint c);

// A coloring move that would break cardinality or bandwidth somewhere on the line.
class IllegalMove : public Error {
 public:
  IllegalMove(Constraint violated, Rational point, std::optional<int> coordinate,
              int round, int color);

  Constraint violated() const { return violated_; }
  const Rational& point() const { return point_; }
  // Zero-based weight coordinate; set only for bandwidth violations.
  std::optional<int> coordinate() const { return coordinate_; }
  int round() const { return round_; }
  int color() const { return color_; }

 private:
  Constraint violated_;
  Rational point_;
  std::optional<int> coordinate_;
  int round_;
  int color_;
};

// Graph game: algorithm color clashes with a neighbor or exceeds k uses.
class IllegalAlgorithmMove : public Error {
 public:
  IllegalAlgorithmMove(const std::string& what, int round)
      : Error(what), round_(round) {}
  int round() const { return round_; }

 private:
  int round_;
};

// A proof-level invariant failed. Never expected against a legal opponent.
class InternalInvariantBroken : public Error {
 public:
  using Error::Error;
};

class PatternsExhausted : public Error {
 public:
  using Error::Error;
};

class CallExhausted : public Error {
 public:
  using Error::Error;
};

class SameEpsOverlap : public Error {
 public:
  using Error::Error;
};

class TooFewColors : public Error {
 public:
  using Error::Error;
};

class RegionCapExceeded : public Error {
 public:
  using Error::Error;
};

class RegionDegenerate : public Error {
 public:
  using Error::Error;
};

class SchemeConflict : public Error {
 public:
  using Error::Error;
};

class WitnessInvalid : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class ProtocolError : public Error {
 public:
  using Error::Error;
};

class Timeout : public Error {
 public:
  using Error::Error;
};

}  // namespace olc
