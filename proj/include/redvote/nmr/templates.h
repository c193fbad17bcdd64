// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

/// @file templates.h
/// Builtin model templates under stable names: "failure2oo2",
/// "maintenance4", "maintenance5", "maintenance8".

#ifndef REDVOTE_NMR_TEMPLATES_H_
#define REDVOTE_NMR_TEMPLATES_H_

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "redvote/bayes/bayes_net.h"
#include "redvote/compose/kinds.h"
#include "redvote/ctmc/ctmc.h"

namespace redvote::nmr {

struct TemplateParam {
  std::string name;
  ParamKind kind;
  std::optional<double> default_value;  ///< Inputs only; nullopt = required.
};

/// A parameterized builtin model. Exactly one of build_bayes / build_ctmc
/// is set, matching `formalism`.
struct Template {
  std::string name;
  Formalism formalism;
  std::string description;
  std::vector<TemplateParam> inputs;
  std::vector<TemplateParam> outputs;
  std::function<bayes::BayesNet(const ParamValues&)> build_bayes;
  std::function<ctmc::Ctmc(const ParamValues&)> build_ctmc;
  /// Maps fully resolved inputs (defaults applied) to every output.
  std::function<ParamValues(const ParamValues&)> solve;
};

/// All builtin templates, in name order.
std::span<const Template> Templates();

/// Lookup by stable name; nullptr when unknown.
const Template* FindTemplate(std::string_view name);

}  // namespace redvote::nmr

#endif  // REDVOTE_NMR_TEMPLATES_H_
