// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

/// @file simulate.cc
/// Discrete-event simulation of a chain, used to cross-check the solver.

#include <algorithm>
#include <cmath>
#include <random>

#include "redvote/ctmc/ctmc.h"
#include "redvote/error.h"

namespace redvote::ctmc {

Occupancy Simulate(const Ctmc& chain, double horizon_hours, std::uint64_t seed) {
  if (!(horizon_hours > 0.0) || !std::isfinite(horizon_hours)) {
    throw ValidationError("simulation horizon must be positive and finite");
  }
  const std::size_t n = chain.size();
  std::vector<std::vector<Ctmc::Edge>> out(n);
  std::vector<double> exit(n, 0.0);
  for (const auto& e : chain.edges()) {
    out[e.from].push_back(e);
    exit[e.from] += e.rate;
  }

  const double batch_length = horizon_hours / static_cast<double>(kSimulationBatches);
  std::vector<std::vector<double>> batch_time(kSimulationBatches,
                                              std::vector<double>(n, 0.0));
  // Credits [start, end) of sojourn time in `state` to the overlapping batches.
  auto credit = [&](std::size_t state, double start, double end) {
    auto b = static_cast<std::size_t>(start / batch_length);
    while (start < end && b < kSimulationBatches) {
      double stop = std::min(end, batch_length * static_cast<double>(b + 1));
      if (b + 1 == kSimulationBatches) stop = end;
      batch_time[b][state] += stop - start;
      start = stop;
      ++b;
    }
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  Occupancy occ{chain.states(), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  std::size_t state = chain.initial();
  double now = 0.0;
  while (now < horizon_hours) {
    double next = horizon_hours;
    if (exit[state] > 0.0) {
      std::exponential_distribution<double> sojourn(exit[state]);
      next = std::min(horizon_hours, now + sojourn(rng));
    }
    credit(state, now, next);
    now = next;
    if (now >= horizon_hours) break;
    double u = uniform(rng) * exit[state];
    std::size_t target = out[state].back().to;
    for (const auto& e : out[state]) {
      if (u < e.rate) {
        target = e.to;
        break;
      }
      u -= e.rate;
    }
    state = target;
    ++occ.jumps;
  }

  const double batches = static_cast<double>(kSimulationBatches);
  for (std::size_t s = 0; s < n; ++s) {
    double sum = 0.0;
    for (const auto& bt : batch_time) sum += bt[s];
    occ.fractions[s] = sum / horizon_hours;
    double var = 0.0;
    for (const auto& bt : batch_time) {
      double d = bt[s] / batch_length - occ.fractions[s];
      var += d * d;
    }
    var /= batches - 1.0;
    occ.std_errors[s] = std::sqrt(var / batches);
  }
  return occ;
}

}  // namespace redvote::ctmc
