// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

/// @file inference.cc
/// Variable elimination over dense factors with min-fill ordering.

#include "redvote/bayes/inference.h"

#include <algorithm>
#include <array>
#include <iterator>
#include <cmath>
#include <limits>
#include <optional>
#include <set>

#include "redvote/error.h"

namespace redvote::bayes {

namespace {

/// Table over a sorted set of variables; the last variable varies fastest.
struct Factor {
  std::vector<std::size_t> vars;
  std::vector<std::size_t> cards;
  std::vector<double> values;

  std::vector<std::size_t> Strides() const {
    std::vector<std::size_t> strides(vars.size());
    std::size_t s = 1;
    for (std::size_t k = vars.size(); k-- > 0;) {
      strides[k] = s;
      s *= cards[k];
    }
    return strides;
  }
};

// Stride of each variable of `scope` inside `f`, or 0 when absent.
std::vector<std::size_t> StridesIn(const Factor& f,
                                   const std::vector<std::size_t>& scope) {
  const auto strides = f.Strides();
  std::vector<std::size_t> out(scope.size(), 0);
  for (std::size_t k = 0; k < scope.size(); ++k) {
    auto it = std::lower_bound(f.vars.begin(), f.vars.end(), scope[k]);
    if (it != f.vars.end() && *it == scope[k]) {
      out[k] = strides[static_cast<std::size_t>(it - f.vars.begin())];
    }
  }
  return out;
}

// Odometer over `cards` that keeps linear offsets into several tables.
template <std::size_t N>
struct Odometer {
  std::vector<std::size_t> cards;
  std::array<std::vector<std::size_t>, N> strides;
  std::vector<std::size_t> digits;
  std::array<std::size_t, N> offsets{};

  void Advance() {
    for (std::size_t k = cards.size(); k-- > 0;) {
      ++digits[k];
      for (std::size_t t = 0; t < N; ++t) offsets[t] += strides[t][k];
      if (digits[k] < cards[k]) return;
      for (std::size_t t = 0; t < N; ++t) offsets[t] -= strides[t][k] * cards[k];
      digits[k] = 0;
    }
  }
};

std::size_t Volume(const std::vector<std::size_t>& cards) {
  std::size_t v = 1;
  for (std::size_t c : cards) v *= c;
  return v;
}

Factor Multiply(const Factor& a, const Factor& b) {
  Factor out;
  std::set_union(a.vars.begin(), a.vars.end(), b.vars.begin(), b.vars.end(),
                 std::back_inserter(out.vars));
  for (std::size_t v : out.vars) {
    auto ia = std::lower_bound(a.vars.begin(), a.vars.end(), v);
    if (ia != a.vars.end() && *ia == v) {
      out.cards.push_back(a.cards[static_cast<std::size_t>(ia - a.vars.begin())]);
    } else {
      auto ib = std::lower_bound(b.vars.begin(), b.vars.end(), v);
      out.cards.push_back(b.cards[static_cast<std::size_t>(ib - b.vars.begin())]);
    }
  }
  const std::size_t total = Volume(out.cards);
  out.values.resize(total);
  Odometer<2> odo{out.cards, {StridesIn(a, out.vars), StridesIn(b, out.vars)},
                  std::vector<std::size_t>(out.vars.size(), 0)};
  for (std::size_t i = 0; i < total; ++i) {
    out.values[i] = a.values[odo.offsets[0]] * b.values[odo.offsets[1]];
    odo.Advance();
  }
  return out;
}

Factor SumOut(const Factor& f, std::size_t var) {
  Factor out;
  for (std::size_t k = 0; k < f.vars.size(); ++k) {
    if (f.vars[k] == var) continue;
    out.vars.push_back(f.vars[k]);
    out.cards.push_back(f.cards[k]);
  }
  out.values.assign(Volume(out.cards), 0.0);
  Odometer<1> odo{f.cards, {StridesIn(out, f.vars)},
                  std::vector<std::size_t>(f.vars.size(), 0)};
  for (double v : f.values) {
    out.values[odo.offsets[0]] += v;
    odo.Advance();
  }
  return out;
}

// Fixes observed variables to their evidence states and drops them from the
// scope. `observed[v]` is the observed state index or nullopt.
Factor Reduce(const Factor& f,
              const std::vector<std::optional<std::size_t>>& observed) {
  Factor out;
  const auto strides = f.Strides();
  std::size_t base = 0;
  std::vector<std::size_t> kept_strides;
  for (std::size_t k = 0; k < f.vars.size(); ++k) {
    if (observed[f.vars[k]]) {
      base += *observed[f.vars[k]] * strides[k];
    } else {
      out.vars.push_back(f.vars[k]);
      out.cards.push_back(f.cards[k]);
      kept_strides.push_back(strides[k]);
    }
  }
  const std::size_t total = Volume(out.cards);
  out.values.resize(total);
  Odometer<1> odo{out.cards, {kept_strides},
                  std::vector<std::size_t>(out.vars.size(), 0)};
  odo.offsets[0] = base;
  for (std::size_t i = 0; i < total; ++i) {
    out.values[i] = f.values[odo.offsets[0]];
    odo.Advance();
  }
  return out;
}

// CPT of `child` as a factor over the sorted scope {child} ∪ parents.
Factor CptFactor(const BayesNet& net, std::size_t child) {
  const auto& parents = net.parents(child);
  std::vector<std::size_t> cpt_order(parents.begin(), parents.end());
  cpt_order.push_back(child);  // CPT layout: parents, then child fastest.
  std::vector<std::size_t> cpt_cards;
  for (std::size_t v : cpt_order) cpt_cards.push_back(net.cardinality(v));

  Factor f;
  f.vars = cpt_order;
  std::sort(f.vars.begin(), f.vars.end());
  for (std::size_t v : f.vars) f.cards.push_back(net.cardinality(v));
  f.values.resize(Volume(f.cards));

  auto table = net.table(child);
  Odometer<1> odo{cpt_cards, {StridesIn(f, cpt_order)},
                  std::vector<std::size_t>(cpt_order.size(), 0)};
  for (double p : table) {
    f.values[odo.offsets[0]] = p;
    odo.Advance();
  }
  return f;
}

std::vector<std::optional<std::size_t>> ResolveEvidence(const BayesNet& net,
                                                        const Evidence& evidence) {
  std::vector<std::optional<std::size_t>> observed(net.size());
  for (const auto& [id, state] : evidence) {
    std::size_t v = net.IndexOf(id);
    observed[v] = net.StateIndex(v, state);
  }
  return observed;
}

std::vector<Factor> ReducedFactors(
    const BayesNet& net, const std::vector<std::optional<std::size_t>>& observed) {
  std::vector<Factor> factors;
  factors.reserve(net.size());
  for (std::size_t v = 0; v < net.size(); ++v) {
    factors.push_back(Reduce(CptFactor(net, v), observed));
  }
  return factors;
}

// Greedy min-fill on the interaction graph of the given factors.
std::vector<std::size_t> MinFillOrder(std::size_t n,
                                      const std::vector<Factor>& factors,
                                      const std::vector<bool>& eliminate) {
  std::vector<std::set<std::size_t>> adj(n);
  for (const Factor& f : factors) {
    for (std::size_t a : f.vars) {
      for (std::size_t b : f.vars) {
        if (a != b) adj[a].insert(b);
      }
    }
  }
  std::vector<bool> pending = eliminate;
  std::vector<std::size_t> order;
  for (;;) {
    std::size_t best = n;
    std::size_t best_fill = std::numeric_limits<std::size_t>::max();
    for (std::size_t v = 0; v < n; ++v) {
      if (!pending[v]) continue;
      std::size_t fill = 0;
      for (auto i = adj[v].begin(); i != adj[v].end(); ++i) {
        for (auto j = std::next(i); j != adj[v].end(); ++j) {
          if (!adj[*i].count(*j)) ++fill;
        }
      }
      if (fill < best_fill) {
        best_fill = fill;
        best = v;
      }
    }
    if (best == n) break;
    for (std::size_t a : adj[best]) {
      for (std::size_t b : adj[best]) {
        if (a != b) adj[a].insert(b);
      }
      adj[a].erase(best);
    }
    adj[best].clear();
    pending[best] = false;
    order.push_back(best);
  }
  return order;
}

// Eliminates everything except `keep` (if any) and returns the product of
// what remains: a factor over {keep} or a scalar factor.
Factor Eliminate(const BayesNet& net,
                 const std::vector<std::optional<std::size_t>>& observed,
                 std::optional<std::size_t> keep) {
  std::vector<Factor> factors = ReducedFactors(net, observed);
  std::vector<bool> eliminate(net.size());
  for (std::size_t v = 0; v < net.size(); ++v) {
    eliminate[v] = !observed[v] && v != keep;
  }
  for (std::size_t v : MinFillOrder(net.size(), factors, eliminate)) {
    Factor product{{}, {}, {1.0}};
    std::vector<Factor> rest;
    for (Factor& f : factors) {
      if (std::binary_search(f.vars.begin(), f.vars.end(), v)) {
        product = Multiply(product, f);
      } else {
        rest.push_back(std::move(f));
      }
    }
    rest.push_back(SumOut(product, v));
    factors = std::move(rest);
  }
  Factor result{{}, {}, {1.0}};
  for (const Factor& f : factors) result = Multiply(result, f);
  return result;
}

[[noreturn]] void ThrowZeroEvidence() {
  throw NumericError("evidence has zero probability (inconsistent observation)");
}

}  // namespace

double JointProbability(const BayesNet& net, const Assignment& assignment) {
  if (assignment.size() != net.size()) {
    for (const auto& var : net.variables()) {
      if (!assignment.count(var.id)) {
        throw ValidationError("incomplete assignment: variable '" + var.id +
                              "' not assigned");
      }
    }
  }
  std::vector<std::size_t> states(net.size());
  for (const auto& [id, state] : assignment) {
    std::size_t v = net.IndexOf(id);
    states[v] = net.StateIndex(v, state);
  }
  double p = 1.0;
  std::vector<std::size_t> parent_states;
  for (std::size_t v = 0; v < net.size(); ++v) {
    parent_states.clear();
    for (std::size_t parent : net.parents(v)) parent_states.push_back(states[parent]);
    p *= net.Entry(v, parent_states, states[v]);
  }
  return p;
}

std::vector<std::string> EliminationOrder(const BayesNet& net,
                                          std::span<const std::string> query,
                                          const Evidence& evidence) {
  auto observed = ResolveEvidence(net, evidence);
  std::vector<bool> eliminate(net.size());
  for (std::size_t v = 0; v < net.size(); ++v) eliminate[v] = !observed[v];
  for (const std::string& id : query) eliminate[net.IndexOf(id)] = false;
  std::vector<std::string> order;
  for (std::size_t v : MinFillOrder(net.size(), ReducedFactors(net, observed), eliminate)) {
    order.push_back(net.variable(v).id);
  }
  return order;
}

double EvidenceProbability(const BayesNet& net, const Evidence& evidence) {
  return Eliminate(net, ResolveEvidence(net, evidence), std::nullopt).values[0];
}

Distribution Marginal(const BayesNet& net, std::string_view target,
                      const Evidence& evidence) {
  const std::size_t t = net.IndexOf(target);
  const auto observed = ResolveEvidence(net, evidence);
  const auto& var = net.variable(t);
  Distribution dist{var.id, var.states, std::vector<double>(var.states.size(), 0.0)};

  if (observed[t]) {
    double pe = Eliminate(net, observed, std::nullopt).values[0];
    if (!(pe > 0.0)) ThrowZeroEvidence();
    dist.probabilities[*observed[t]] = 1.0;
    return dist;
  }
  Factor f = Eliminate(net, observed, t);
  double total = 0.0;
  for (double v : f.values) total += v;
  if (!(total > 0.0) || !std::isfinite(total)) ThrowZeroEvidence();
  for (std::size_t s = 0; s < f.values.size(); ++s) {
    dist.probabilities[s] = f.values[s] / total;
  }
  return dist;
}

std::vector<Distribution> PosteriorReport(const BayesNet& net,
                                          const Evidence& evidence) {
  if (!(EvidenceProbability(net, evidence) > 0.0)) ThrowZeroEvidence();
  std::vector<Distribution> report;
  report.reserve(net.size());
  for (const auto& var : net.variables()) {
    report.push_back(Marginal(net, var.id, evidence));
  }
  return report;
}

}  // namespace redvote::bayes
