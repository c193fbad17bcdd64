// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

/// @file ctmc.h
/// Labeled continuous-time Markov chains, their generators, and
/// stationary solutions.
///
/// Rates are in events per hour throughout.

#ifndef REDVOTE_CTMC_CTMC_H_
#define REDVOTE_CTMC_CTMC_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace redvote::ctmc {

/// A labeled transition, as supplied by model builders.
struct Transition {
  std::string from;
  std::string to;
  double rate = 0.0;

  bool operator==(const Transition&) const = default;
};

/// Immutable, validated chain.
class Ctmc {
 public:
  /// A transition between state indices.
  struct Edge {
    std::size_t from;
    std::size_t to;
    double rate;
  };

  /// Throws ValidationError on duplicate or empty state labels, unknown
  /// endpoints, self-loops, repeated (from, to) pairs, non-positive or
  /// non-finite rates, and a missing initial state.
  static Ctmc Build(std::vector<std::string> states, std::string_view initial,
                    std::vector<Transition> transitions);

  std::size_t size() const { return states_.size(); }
  const std::vector<std::string>& states() const { return states_; }
  std::size_t initial() const { return initial_; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::optional<std::size_t> Find(std::string_view label) const;
  /// Rate of the (from, to) transition, 0 when absent.
  double Rate(std::size_t from, std::size_t to) const;
  /// Sum of the outgoing rates of a state.
  double ExitRate(std::size_t state) const;

 private:
  Ctmc() = default;

  std::vector<std::string> states_;
  std::size_t initial_ = 0;
  std::vector<Edge> edges_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// Dense infinitesimal generator Q, row-major over the chain's state order.
class Generator {
 public:
  explicit Generator(const Ctmc& chain);

  std::size_t size() const { return n_; }
  double operator()(std::size_t row, std::size_t col) const {
    return q_[row * n_ + col];
  }
  /// Largest absolute entry.
  double MaxAbs() const;

 private:
  std::size_t n_;
  std::vector<double> q_;
};

/// Long-run probability per state.
struct StationaryDistribution {
  std::vector<std::string> states;
  std::vector<double> probabilities;

  /// Probability of the labeled state; throws ValidationError if unknown.
  double operator[](std::string_view state) const;
  std::optional<double> Find(std::string_view state) const;
};

/// States reachable from the initial state, ascending by index.
///
/// Throws NumericError unless the reachable set is a single closed
/// communicating class, i.e. every reachable state can return to the
/// initial state.
std::vector<std::size_t> ReachableClosedClass(const Ctmc& chain);

/// Stationary distribution by Grassmann-Taksar-Heyman elimination on the
/// closed class; unreachable states receive exactly 0.
StationaryDistribution SteadyState(const Ctmc& chain);

/// Time-average state occupancy from one simulated trajectory.
struct Occupancy {
  std::vector<std::string> states;
  std::vector<double> fractions;
  std::vector<double> std_errors;  ///< Batch-means standard errors.
  std::uint64_t jumps = 0;
};

/// Number of equal-length batches used for the standard errors.
inline constexpr std::size_t kSimulationBatches = 20;

/// Simulates a single trajectory from the initial state over
/// `horizon_hours`. Deterministic for a given seed.
Occupancy Simulate(const Ctmc& chain, double horizon_hours, std::uint64_t seed);

}  // namespace redvote::ctmc

#endif  // REDVOTE_CTMC_CTMC_H_
