// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

/// @file bayes_net.h
/// Finite discrete Bayesian networks with dense conditional probability
/// tables.

#ifndef REDVOTE_BAYES_BAYES_NET_H_
#define REDVOTE_BAYES_BAYES_NET_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace redvote::bayes {

/// A discrete random variable with an ordered set of state labels.
struct Variable {
  std::string id;
  std::string name;  ///< Free-form description; may be empty.
  std::vector<std::string> states;

  bool operator==(const Variable&) const = default;
};

/// Conditional probability table of one variable.
///
/// Rows enumerate the Cartesian product of the parent state sets in
/// mixed-radix order, the last parent varying fastest.
/// Each row stores one probability per child state, in child state order.
/// A root variable has exactly one row (its prior).
struct Cpt {
  std::string child;
  std::vector<std::string> parents;
  std::vector<double> values;

  bool operator==(const Cpt&) const = default;
};

/// Observed state label per variable id.
using Evidence = std::map<std::string, std::string, std::less<>>;

/// State label per variable id; a full assignment covers every variable.
using Assignment = std::map<std::string, std::string, std::less<>>;

/// Probability per state of one variable.
struct Distribution {
  std::string variable;
  std::vector<std::string> states;
  std::vector<double> probabilities;

  /// Probability of the named state; throws ValidationError if unknown.
  double operator[](std::string_view state) const;
};

/// Maximum allowed deviation of a CPT row sum from 1.
inline constexpr double kRowSumTolerance = 1e-9;

/// Validated, immutable Bayesian network.
///
/// Variables are stored in ascending id order; every index-based accessor
/// uses that order.
class BayesNet {
 public:
  /// Validates and assembles a network. Rejects rather than repairs:
  /// duplicate or unknown ids, dangling parents, cycles, wrong row counts,
  /// out-of-range entries, and row sums off by more than kRowSumTolerance
  /// all raise ValidationError.
  static BayesNet Build(std::vector<Variable> variables, std::vector<Cpt> cpts);

  std::size_t size() const { return variables_.size(); }
  const std::vector<Variable>& variables() const { return variables_; }
  const Variable& variable(std::size_t index) const { return variables_[index]; }
  std::size_t cardinality(std::size_t index) const {
    return variables_[index].states.size();
  }

  std::optional<std::size_t> Find(std::string_view id) const;
  /// Index of the variable; throws ValidationError for unknown ids.
  std::size_t IndexOf(std::string_view id) const;
  /// Index of the state within the variable; throws for unknown labels.
  std::size_t StateIndex(std::size_t variable, std::string_view state) const;

  const std::vector<std::size_t>& parents(std::size_t index) const {
    return parents_[index];
  }
  /// Dense CPT of the variable, rows in the documented order but with
  /// parents listed as in parents(index).
  std::span<const double> table(std::size_t index) const { return tables_[index]; }

  /// CPT entry P(variable = state | parents = parent_states).
  double Entry(std::size_t index, std::span<const std::size_t> parent_states,
               std::size_t state) const;

  /// The CPT of a variable in its public form.
  Cpt CptOf(std::size_t index) const;

 private:
  BayesNet() = default;

  std::vector<Variable> variables_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<std::vector<std::size_t>> parents_;
  std::vector<std::vector<double>> tables_;
};

}  // namespace redvote::bayes

#endif  // REDVOTE_BAYES_BAYES_NET_H_
