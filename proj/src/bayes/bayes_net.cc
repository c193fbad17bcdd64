// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

/// @file bayes_net.cc
/// Validation and storage of Bayesian networks.

#include "redvote/bayes/bayes_net.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "redvote/error.h"

namespace redvote::bayes {

namespace {

std::string Quote(std::string_view id) { return "'" + std::string(id) + "'"; }

void ValidateVariable(const Variable& var) {
  if (var.id.empty()) throw ValidationError("variable with empty id");
  if (var.states.size() < 2) {
    throw ValidationError("variable " + Quote(var.id) +
                          " needs at least two states");
  }
  std::set<std::string_view> seen;
  for (const std::string& state : var.states) {
    if (state.empty()) {
      throw ValidationError("variable " + Quote(var.id) + " has an empty state label");
    }
    if (!seen.insert(state).second) {
      throw ValidationError("variable " + Quote(var.id) +
                            " repeats state label " + Quote(state));
    }
  }
}

// Depth-first search for a directed cycle in the parent graph. Reports the
// cycle as "a -> b -> a" following parent-to-child edges.
void CheckAcyclic(const std::vector<Variable>& vars,
                  const std::vector<std::vector<std::size_t>>& parents) {
  const std::size_t n = vars.size();
  std::vector<std::vector<std::size_t>> children(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t p : parents[c]) children[p].push_back(c);
  }
  enum class Mark { kNew, kActive, kDone };
  std::vector<Mark> mark(n, Mark::kNew);
  std::vector<std::size_t> path;

  auto visit = [&](auto&& self, std::size_t v) -> void {
    mark[v] = Mark::kActive;
    path.push_back(v);
    for (std::size_t w : children[v]) {
      if (mark[w] == Mark::kActive) {
        auto it = std::find(path.begin(), path.end(), w);
        std::string msg = "cycle detected: ";
        for (; it != path.end(); ++it) msg += vars[*it].id + " -> ";
        msg += vars[w].id;
        throw ValidationError(msg);
      }
      if (mark[w] == Mark::kNew) self(self, w);
    }
    path.pop_back();
    mark[v] = Mark::kDone;
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (mark[v] == Mark::kNew) visit(visit, v);
  }
}

}  // namespace

double Distribution::operator[](std::string_view state) const {
  auto it = std::find(states.begin(), states.end(), state);
  if (it == states.end()) {
    throw ValidationError("variable " + Quote(variable) + " has no state " +
                          Quote(state));
  }
  return probabilities[static_cast<std::size_t>(it - states.begin())];
}

BayesNet BayesNet::Build(std::vector<Variable> variables, std::vector<Cpt> cpts) {
  BayesNet net;
  std::sort(variables.begin(), variables.end(),
            [](const Variable& a, const Variable& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < variables.size(); ++i) {
    ValidateVariable(variables[i]);
    if (!net.index_.emplace(variables[i].id, i).second) {
      throw ValidationError("duplicate variable id " + Quote(variables[i].id));
    }
  }
  net.variables_ = std::move(variables);
  const std::size_t n = net.variables_.size();
  net.parents_.resize(n);
  net.tables_.resize(n);

  std::vector<bool> has_cpt(n, false);
  for (Cpt& cpt : cpts) {
    auto child = net.Find(cpt.child);
    if (!child) {
      throw ValidationError("CPT for unknown variable " + Quote(cpt.child));
    }
    if (has_cpt[*child]) {
      throw ValidationError("variable " + Quote(cpt.child) + " has more than one CPT");
    }
    has_cpt[*child] = true;

    std::vector<std::size_t> parents;
    std::size_t rows = 1;
    for (const std::string& parent_id : cpt.parents) {
      auto parent = net.Find(parent_id);
      if (!parent) {
        throw ValidationError("variable " + Quote(cpt.child) +
                              " references unknown parent " + Quote(parent_id));
      }
      if (std::find(parents.begin(), parents.end(), *parent) != parents.end()) {
        throw ValidationError("variable " + Quote(cpt.child) + " lists parent " +
                              Quote(parent_id) + " twice");
      }
      parents.push_back(*parent);
      rows *= net.cardinality(*parent);
    }
    const std::size_t card = net.cardinality(*child);
    if (cpt.values.size() != rows * card) {
      throw ValidationError("CPT of " + Quote(cpt.child) + " has " +
                            std::to_string(cpt.values.size()) + " entries, expected " +
                            std::to_string(rows) + " rows x " + std::to_string(card) +
                            " states");
    }
    for (std::size_t r = 0; r < rows; ++r) {
      double sum = 0.0;
      for (std::size_t s = 0; s < card; ++s) {
        double p = cpt.values[r * card + s];
        if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
          throw ValidationError("CPT of " + Quote(cpt.child) + " row " +
                                std::to_string(r) + " has entry outside [0,1]");
        }
        sum += p;
      }
      if (std::abs(sum - 1.0) > kRowSumTolerance) {
        throw ValidationError("CPT of " + Quote(cpt.child) + " row " +
                              std::to_string(r) + " sums to " + std::to_string(sum));
      }
    }
    net.parents_[*child] = std::move(parents);
    net.tables_[*child] = std::move(cpt.values);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!has_cpt[i]) {
      throw ValidationError("variable " + Quote(net.variables_[i].id) + " has no CPT");
    }
  }
  CheckAcyclic(net.variables_, net.parents_);
  return net;
}

std::optional<std::size_t> BayesNet::Find(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t BayesNet::IndexOf(std::string_view id) const {
  auto found = Find(id);
  if (!found) throw ValidationError("unknown variable " + Quote(id));
  return *found;
}

std::size_t BayesNet::StateIndex(std::size_t variable, std::string_view state) const {
  const auto& states = variables_[variable].states;
  auto it = std::find(states.begin(), states.end(), state);
  if (it == states.end()) {
    throw ValidationError("variable " + Quote(variables_[variable].id) +
                          " has no state " + Quote(state));
  }
  return static_cast<std::size_t>(it - states.begin());
}

double BayesNet::Entry(std::size_t index, std::span<const std::size_t> parent_states,
                       std::size_t state) const {
  const auto& parents = parents_[index];
  std::size_t row = 0;
  for (std::size_t k = 0; k < parents.size(); ++k) {
    row = row * cardinality(parents[k]) + parent_states[k];
  }
  return tables_[index][row * cardinality(index) + state];
}

Cpt BayesNet::CptOf(std::size_t index) const {
  Cpt cpt{variables_[index].id, {}, tables_[index]};
  for (std::size_t p : parents_[index]) cpt.parents.push_back(variables_[p].id);
  return cpt;
}

}  // namespace redvote::bayes
