// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "redvote/compose/workflow.h"

#include "redvote/error.h"
#include "redvote/nmr/templates.h"

namespace redvote {

const std::string& NameOf(const InlineModel& model) {
  return std::visit([](const auto& m) -> const std::string& { return m.name; }, model);
}

const ParamDecl* ModelClass::Find(std::string_view param, Direction direction) const {
  for (const ParamDecl& p : params) {
    if (p.name == param && p.direction == direction) return &p;
  }
  return nullptr;
}

std::vector<const ParamDecl*> ModelClass::Inputs() const {
  std::vector<const ParamDecl*> out;
  for (const ParamDecl& p : params) {
    if (p.direction == Direction::kInput) out.push_back(&p);
  }
  return out;
}

std::vector<const ParamDecl*> ModelClass::Outputs() const {
  std::vector<const ParamDecl*> out;
  for (const ParamDecl& p : params) {
    if (p.direction == Direction::kOutput) out.push_back(&p);
  }
  return out;
}

std::string StateOutputName(std::string_view state) { return "P_" + std::string(state); }

std::string NodeOutputName(std::string_view node, std::string_view state) {
  return "P_" + std::string(node) + "_" + std::string(state);
}

ModelClass ResolveClass(const Workflow& workflow, const ClassRef& ref) {
  ModelClass cls;
  cls.name = ref.builtin ? "builtin." + ref.name : ref.name;
  if (ref.builtin) {
    const nmr::Template* t = nmr::FindTemplate(ref.name);
    if (!t) throw ValidationError("unknown builtin template '" + ref.name + "'");
    cls.formalism = t->formalism;
    for (const auto& in : t->inputs) {
      cls.params.push_back({in.name, Direction::kInput, in.kind, in.default_value});
    }
    for (const auto& out : t->outputs) {
      cls.params.push_back({out.name, Direction::kOutput, out.kind, std::nullopt});
    }
    cls.source = ref.name;
    return cls;
  }
  for (const InlineModel& model : workflow.models) {
    if (NameOf(model) != ref.name) continue;
    if (const auto* c = std::get_if<InlineCtmc>(&model)) {
      cls.formalism = Formalism::kCtmc;
      cls.params = c->params;
      for (const std::string& s : c->states) {
        cls.params.push_back(
            {StateOutputName(s), Direction::kOutput, ParamKind::kProbability, std::nullopt});
      }
      cls.source = *c;
    } else {
      const auto& b = std::get<InlineBayes>(model);
      cls.formalism = Formalism::kBayes;
      for (const auto& node : b.nodes) {
        for (const auto& state : node.states) {
          cls.params.push_back({NodeOutputName(node.id, state), Direction::kOutput,
                                ParamKind::kProbability, std::nullopt});
        }
      }
      cls.source = b;
    }
    return cls;
  }
  throw ValidationError("unknown model class '" + ref.name + "'");
}

}  // namespace redvote
