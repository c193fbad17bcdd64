// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

/// @file engine.h
/// Validation and sequential-composition execution of workflows.
///
/// Instances are solved one at a time in a topological order of the binding
/// graph; each solved instance's outputs become available to the bindings of
/// the instances after it. BAYES instances are solved by exact marginal
/// queries, CTMC instances by their stationary distribution.

#ifndef REDVOTE_COMPOSE_ENGINE_H_
#define REDVOTE_COMPOSE_ENGINE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "redvote/bayes/bayes_net.h"
#include "redvote/compose/workflow.h"

namespace redvote {

/// A workflow whose invariants have been checked, with its model classes
/// resolved and a topological order cached. Immutable.
class ValidatedWorkflow {
 public:
  const Workflow& workflow() const { return workflow_; }
  /// Class of each instance, parallel to workflow().instances.
  const std::vector<ModelClass>& classes() const { return classes_; }
  /// Instance indices in execution order.
  const std::vector<std::size_t>& order() const { return order_; }
  std::optional<std::size_t> FindInstance(std::string_view name) const;
  /// Indices of the instances each instance reads from.
  const std::vector<std::size_t>& dependencies(std::size_t instance) const {
    return deps_[instance];
  }

 private:
  friend ValidatedWorkflow ValidateWorkflow(Workflow workflow);

  Workflow workflow_;
  std::vector<ModelClass> classes_;
  std::vector<std::vector<std::size_t>> deps_;
  std::vector<std::size_t> order_;
};

/// Checks every workflow invariant: unique names, resolvable classes,
/// each required input bound exactly once, references to declared outputs,
/// kind compatibility of bindings, and an acyclic binding graph.
/// Throws ValidationError; a cycle is reported as "a -> b -> a".
ValidatedWorkflow ValidateWorkflow(Workflow workflow);

struct InstanceOutputs {
  std::string instance;
  std::vector<std::pair<std::string, double>> values;  ///< Class output order.

  bool operator==(const InstanceOutputs&) const = default;
};

struct SolveResult {
  std::vector<InstanceOutputs> instances;  ///< Workflow declaration order.
  std::vector<std::pair<std::string, double>> exports;
  std::vector<std::string> provenance;

  /// Throws ValidationError when absent.
  double Output(std::string_view instance, std::string_view param) const;
  double Export(std::string_view name) const;

  bool operator==(const SolveResult&) const = default;
};

/// Solves the workflow in its cached topological order. Solver failures
/// are rethrown as NumericError / ValidationError naming the instance.
SolveResult RunWorkflow(const ValidatedWorkflow& workflow);

/// Same, with a caller-chosen order; throws ValidationError unless `order`
/// is a permutation that respects every dependency.
SolveResult RunWorkflow(const ValidatedWorkflow& workflow,
                        std::span<const std::size_t> order);

/// Fully resolved inputs (bindings evaluated, defaults applied) of one
/// instance, given the outputs of the instances it depends on.
ParamValues ResolveInputs(const ValidatedWorkflow& workflow, std::size_t instance,
                          const std::vector<std::optional<ParamValues>>& solved);

/// Solves a model class for resolved inputs.
ParamValues SolveClass(const ModelClass& model, const ParamValues& inputs);

/// Network behind a BAYES class for resolved inputs.
bayes::BayesNet BuildClassNet(const ModelClass& model, const ParamValues& inputs);

/// Network of a BAYES instance after solving the instances it reads from.
/// Throws ValidationError if the instance is unknown or not BAYES.
bayes::BayesNet InstanceNet(const ValidatedWorkflow& workflow, std::string_view instance);

struct SweepRow {
  double factor;
  SolveResult result;
};

/// Reruns the workflow once per factor with the input named by
/// "instance.PARAM" scaled by that factor. The input must be bound to a
/// constant expression or left at its default; reference-bound inputs are
/// rejected with ValidationError. Rows are independent and may be computed
/// concurrently; they are returned in factor order.
std::vector<SweepRow> Sweep(const ValidatedWorkflow& workflow, std::string_view path,
                            std::span<const double> factors);

}  // namespace redvote

#endif  // REDVOTE_COMPOSE_ENGINE_H_
