// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "redvote/ctmc/ctmc.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "redvote/error.h"

namespace redvote::ctmc {

namespace {

std::string Quote(std::string_view s) { return "'" + std::string(s) + "'"; }

}  // namespace

Ctmc Ctmc::Build(std::vector<std::string> states, std::string_view initial,
                 std::vector<Transition> transitions) {
  Ctmc chain;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].empty()) throw ValidationError("state with empty label");
    if (!chain.index_.emplace(states[i], i).second) {
      throw ValidationError("duplicate state " + Quote(states[i]));
    }
  }
  chain.states_ = std::move(states);
  auto init = chain.Find(initial);
  if (!init) throw ValidationError("initial state " + Quote(initial) + " does not exist");
  chain.initial_ = *init;

  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const Transition& t : transitions) {
    auto from = chain.Find(t.from);
    auto to = chain.Find(t.to);
    if (!from) throw ValidationError("transition from unknown state " + Quote(t.from));
    if (!to) throw ValidationError("transition to unknown state " + Quote(t.to));
    if (*from == *to) throw ValidationError("self-loop transition on " + Quote(t.from));
    if (!std::isfinite(t.rate) || t.rate <= 0.0) {
      throw ValidationError("transition " + t.from + " -> " + t.to +
                            " has non-positive rate");
    }
    if (!seen.emplace(*from, *to).second) {
      throw ValidationError("duplicate transition " + t.from + " -> " + t.to);
    }
    chain.edges_.push_back({*from, *to, t.rate});
  }
  return chain;
}

std::optional<std::size_t> Ctmc::Find(std::string_view label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double Ctmc::Rate(std::size_t from, std::size_t to) const {
  for (const Edge& e : edges_) {
    if (e.from == from && e.to == to) return e.rate;
  }
  return 0.0;
}

double Ctmc::ExitRate(std::size_t state) const {
  double sum = 0.0;
  for (const Edge& e : edges_) {
    if (e.from == state) sum += e.rate;
  }
  return sum;
}

Generator::Generator(const Ctmc& chain) : n_(chain.size()), q_(n_ * n_, 0.0) {
  for (const auto& e : chain.edges()) q_[e.from * n_ + e.to] = e.rate;
  for (std::size_t i = 0; i < n_; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      if (j != i) sum += q_[i * n_ + j];
    }
    q_[i * n_ + i] = -sum;
  }
}

double Generator::MaxAbs() const {
  double m = 0.0;
  for (double v : q_) m = std::max(m, std::abs(v));
  return m;
}

double StationaryDistribution::operator[](std::string_view state) const {
  auto p = Find(state);
  if (!p) throw ValidationError("no state " + Quote(state) + " in distribution");
  return *p;
}

std::optional<double> StationaryDistribution::Find(std::string_view state) const {
  auto it = std::find(states.begin(), states.end(), state);
  if (it == states.end()) return std::nullopt;
  return probabilities[static_cast<std::size_t>(it - states.begin())];
}

std::vector<std::size_t> ReachableClosedClass(const Ctmc& chain) {
  const std::size_t n = chain.size();
  std::vector<std::vector<std::size_t>> out(n), in(n);
  for (const auto& e : chain.edges()) {
    out[e.from].push_back(e.to);
    in[e.to].push_back(e.from);
  }
  auto search = [n](std::size_t start, const std::vector<std::vector<std::size_t>>& adj) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t w : adj[v]) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    return seen;
  };
  const auto forward = search(chain.initial(), out);
  const auto backward = search(chain.initial(), in);
  std::vector<std::size_t> members;
  for (std::size_t v = 0; v < n; ++v) {
    if (!forward[v]) continue;
    if (!backward[v]) {
      throw NumericError("reachable states do not form a single closed class: " +
                         Quote(chain.states()[v]) + " cannot return to " +
                         Quote(chain.states()[chain.initial()]));
    }
    members.push_back(v);
  }
  return members;
}

StationaryDistribution SteadyState(const Ctmc& chain) {
  const auto members = ReachableClosedClass(chain);
  const std::size_t m = members.size();
  std::vector<std::size_t> local(chain.size(), m);
  for (std::size_t k = 0; k < m; ++k) local[members[k]] = k;

  // Off-diagonal rates of the closed class; the diagonal is never read.
  std::vector<double> a(m * m, 0.0);
  for (const auto& e : chain.edges()) {
    if (local[e.from] < m && local[e.to] < m) {
      a[local[e.from] * m + local[e.to]] = e.rate;
    }
  }
  auto at = [&a, m](std::size_t i, std::size_t j) -> double& { return a[i * m + j]; };

  // State reduction: censor the chain on {0..k-1} for k = m-1 down to 1.
  // Every update adds non-negative terms, so no cancellation occurs.
  std::vector<double> exit(m, 0.0);
  for (std::size_t k = m; k-- > 1;) {
    double s = 0.0;
    for (std::size_t j = 0; j < k; ++j) s += at(k, j);
    if (!(s > 0.0)) {
      throw NumericError("state reduction hit a zero pivot at " +
                         Quote(chain.states()[members[k]]));
    }
    exit[k] = s;
    for (std::size_t i = 0; i < k; ++i) {
      const double w = at(i, k) / s;
      if (w == 0.0) continue;
      for (std::size_t j = 0; j < k; ++j) {
        if (j != i) at(i, j) += w * at(k, j);
      }
    }
  }
  std::vector<double> pi(m, 0.0);
  pi[0] = 1.0;
  double total = 1.0;
  for (std::size_t k = 1; k < m; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) acc += pi[i] * at(i, k);
    pi[k] = acc / exit[k];
    total += pi[k];
  }

  StationaryDistribution dist{chain.states(), std::vector<double>(chain.size(), 0.0)};
  for (std::size_t k = 0; k < m; ++k) dist.probabilities[members[k]] = pi[k] / total;
  return dist;
}

}  // namespace redvote::ctmc
