// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

/// @file workflow.h
/// Model classes, instances, and workflows in their abstract form.
///
/// A workflow is a DAG of model instances. Each instance binds the inputs
/// of its model class to literals or to expressions over the outputs of
/// other instances; exports are expressions evaluated after every instance
/// has been solved.

#ifndef REDVOTE_COMPOSE_WORKFLOW_H_
#define REDVOTE_COMPOSE_WORKFLOW_H_

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "redvote/compose/expr.h"
#include "redvote/compose/kinds.h"

namespace redvote {

enum class Direction { kInput, kOutput };

struct ParamDecl {
  std::string name;
  Direction direction = Direction::kInput;
  ParamKind kind = ParamKind::kProbability;
  std::optional<double> default_value;

  bool operator==(const ParamDecl&) const = default;
};

/// CTMC defined inline in a workflow file. Rates may use the declared
/// input parameters. Outputs are P_<state>, the stationary probabilities.
struct InlineCtmc {
  struct Rate {
    std::string from;
    std::string to;
    Expr rate;
    bool operator==(const Rate&) const = default;
  };
  std::string name;
  std::vector<ParamDecl> params;
  std::vector<std::string> states;
  std::string initial;
  std::vector<Rate> rates;

  bool operator==(const InlineCtmc&) const = default;
};

/// Bayesian network defined inline. Outputs are P_<node>_<state>, the
/// prior marginals. CPT layout as in bayes::Cpt.
struct InlineBayes {
  struct Node {
    std::string id;
    std::vector<std::string> states;
    std::vector<std::string> parents;
    std::vector<double> cpt;
    bool operator==(const Node&) const = default;
  };
  std::string name;
  std::vector<Node> nodes;

  bool operator==(const InlineBayes&) const = default;
};

using InlineModel = std::variant<InlineCtmc, InlineBayes>;

const std::string& NameOf(const InlineModel& model);

/// Reference from an instance to its class: `builtin.NAME` or a local
/// inline model name.
struct ClassRef {
  bool builtin = false;
  std::string name;

  bool operator==(const ClassRef&) const = default;
};

struct Binding {
  std::string param;
  Expr value;

  bool operator==(const Binding&) const = default;
};

struct ModelInstance {
  std::string name;
  ClassRef class_ref;
  std::vector<Binding> bindings;

  bool operator==(const ModelInstance&) const = default;
};

struct Export {
  std::string name;
  Expr value;

  bool operator==(const Export&) const = default;
};

struct Workflow {
  std::string name;
  std::vector<InlineModel> models;
  std::vector<ModelInstance> instances;
  std::vector<Export> exports;

  bool operator==(const Workflow&) const = default;
};

/// Resolved model class: formalism, interface, and the template behind it.
struct ModelClass {
  std::string name;
  Formalism formalism = Formalism::kBayes;
  std::vector<ParamDecl> params;
  /// Builtin template name, or the inline definition.
  std::variant<std::string, InlineCtmc, InlineBayes> source;

  const ParamDecl* Find(std::string_view param, Direction direction) const;
  std::vector<const ParamDecl*> Inputs() const;
  std::vector<const ParamDecl*> Outputs() const;
};

/// Output name of an inline CTMC state / inline Bayes node state.
std::string StateOutputName(std::string_view state);
std::string NodeOutputName(std::string_view node, std::string_view state);

/// Builds the ModelClass for a reference. Throws ValidationError naming
/// the template when a builtin is unknown or an inline model is missing.
ModelClass ResolveClass(const Workflow& workflow, const ClassRef& ref);

}  // namespace redvote

#endif  // REDVOTE_COMPOSE_WORKFLOW_H_
