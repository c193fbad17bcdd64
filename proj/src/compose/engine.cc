// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

/// @file engine.cc
/// Workflow validation, topological execution, and parameter sweeps.

#include "redvote/compose/engine.h"

#include <algorithm>
#include <future>
#include <map>
#include <set>

#include "redvote/bayes/inference.h"
#include "redvote/ctmc/ctmc.h"
#include "redvote/error.h"
#include "redvote/nmr/templates.h"

namespace redvote {

namespace {

std::string Quote(std::string_view s) { return "'" + std::string(s) + "'"; }

std::string Path(std::string_view instance, std::string_view param) {
  return std::string(instance) + "." + std::string(param);
}

// Kind algebra for binding expressions. nullopt means a dimensionless
// constant, which adopts the kind of its context.
std::optional<ParamKind> CombineKinds(char op, std::optional<ParamKind> a,
                                      std::optional<ParamKind> b,
                                      const std::string& where) {
  auto fail = [&]() -> std::optional<ParamKind> {
    throw ValidationError("kind mismatch in " + where + ": cannot apply '" +
                          std::string(1, op) + "' to " +
                          std::string(a ? ToString(*a) : "constant") + " and " +
                          std::string(b ? ToString(*b) : "constant"));
  };
  const auto ratio = ParamKind::kRatio;
  switch (op) {
    case '+':
    case '-':
      if (a && b && *a != *b) return fail();
      return a ? a : b;
    case '*':
      if (!a || a == ratio) return b;
      if (!b || b == ratio) return a;
      if (*a == *b && *a == ParamKind::kProbability) return a;
      if (*a != *b) return ParamKind::kRate;  // rate scaled by a probability
      return fail();
    case '/':
      if (!b || b == ratio) return a;
      if (a && *a == *b) return ratio;
      return fail();
  }
  return fail();
}

std::optional<ParamKind> InferKind(const Expr& e, const ValidatedWorkflow& wf,
                                   const std::vector<ModelClass>& classes,
                                   const std::string& where) {
  switch (e.kind()) {
    case Expr::Kind::kNumber: return std::nullopt;
    case Expr::Kind::kOutputRef: {
      auto idx = wf.FindInstance(e.instance());
      return classes[*idx].Find(e.name(), Direction::kOutput)->kind;
    }
    case Expr::Kind::kParam: return std::nullopt;
    case Expr::Kind::kBinary:
      return CombineKinds(e.op(), InferKind(e.lhs(), wf, classes, where),
                          InferKind(e.rhs(), wf, classes, where), where);
  }
  return std::nullopt;
}

void CheckRange(ParamKind kind, double value, const std::string& where) {
  const bool unit = kind != ParamKind::kRate;
  if (value < 0.0 || (unit && value > 1.0)) {
    throw ValidationError("kind mismatch in " + where + ": value " +
                          std::to_string(value) + " is not a valid " +
                          std::string(ToString(kind)));
  }
}

void ValidateInlineCtmc(const InlineCtmc& c) {
  const std::string where = "inline ctmc " + Quote(c.name);
  std::set<std::string> params;
  for (const ParamDecl& p : c.params) {
    if (!params.insert(p.name).second) {
      throw ValidationError(where + " declares parameter " + Quote(p.name) + " twice");
    }
  }
  std::set<std::string> states(c.states.begin(), c.states.end());
  if (states.size() != c.states.size()) throw ValidationError(where + " repeats a state");
  if (!states.count(c.initial)) {
    throw ValidationError(where + " has no initial state " + Quote(c.initial));
  }
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& r : c.rates) {
    if (!states.count(r.from) || !states.count(r.to)) {
      throw ValidationError(where + " rate " + r.from + " -> " + r.to +
                            " uses an undeclared state");
    }
    if (r.from == r.to) throw ValidationError(where + ": self-loop transition on " + r.from);
    if (!pairs.emplace(r.from, r.to).second) {
      throw ValidationError(where + ": duplicate transition " + r.from + " -> " + r.to);
    }
    std::vector<const Expr*> leaves;
    r.rate.CollectLeaves(leaves);
    for (const Expr* leaf : leaves) {
      if (leaf->kind() != Expr::Kind::kParam) {
        throw ValidationError(where + ": rate expressions may only use the model's own "
                              "parameters, found " + Path(leaf->instance(), leaf->name()));
      }
      if (!params.count(leaf->name())) {
        throw ValidationError(where + ": undeclared parameter " + Quote(leaf->name()));
      }
    }
  }
}

bayes::BayesNet BuildInlineNet(const InlineBayes& b) {
  std::vector<bayes::Variable> vars;
  std::vector<bayes::Cpt> cpts;
  for (const auto& node : b.nodes) {
    vars.push_back({node.id, "", node.states});
    cpts.push_back({node.id, node.parents, node.cpt});
  }
  try {
    return bayes::BayesNet::Build(std::move(vars), std::move(cpts));
  } catch (const ValidationError& e) {
    throw ValidationError("inline bayes " + Quote(b.name) + ": " + e.what());
  }
}

ctmc::Ctmc BuildInlineChain(const InlineCtmc& c, const ParamValues& inputs) {
  std::vector<ctmc::Transition> transitions;
  for (const auto& r : c.rates) {
    double rate = r.rate.Evaluate([&](const Expr& leaf) { return inputs.at(leaf.name()); });
    if (rate < 0.0) {
      throw ValidationError("rate " + r.from + " -> " + r.to + " evaluated to " +
                            std::to_string(rate));
    }
    if (rate > 0.0) transitions.push_back({r.from, r.to, rate});
  }
  return ctmc::Ctmc::Build(c.states, c.initial, std::move(transitions));
}

// Rethrows the active exception with the instance name prepended.
[[noreturn]] void RethrowFor(std::string_view instance) {
  const std::string prefix = "instance " + Quote(instance) + ": ";
  try {
    throw;
  } catch (const NumericError& e) {
    throw NumericError(prefix + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(prefix + e.what());
  } catch (const std::exception& e) {
    throw NumericError(prefix + e.what());
  }
}

std::string Describe(const ModelClass& cls) {
  if (cls.formalism == Formalism::kBayes) {
    return "variable elimination on " + cls.name;
  }
  return "GTH steady state of " + cls.name;
}

}  // namespace

std::optional<std::size_t> ValidatedWorkflow::FindInstance(std::string_view name) const {
  for (std::size_t i = 0; i < workflow_.instances.size(); ++i) {
    if (workflow_.instances[i].name == name) return i;
  }
  return std::nullopt;
}

ValidatedWorkflow ValidateWorkflow(Workflow workflow) {
  ValidatedWorkflow v;
  v.workflow_ = std::move(workflow);
  const Workflow& wf = v.workflow_;
  const std::size_t n = wf.instances.size();

  std::set<std::string> names;
  for (const InlineModel& m : wf.models) {
    if (!names.insert(NameOf(m)).second) {
      throw ValidationError("duplicate model name " + Quote(NameOf(m)));
    }
    if (const auto* c = std::get_if<InlineCtmc>(&m)) {
      ValidateInlineCtmc(*c);
    } else {
      BuildInlineNet(std::get<InlineBayes>(m));
    }
  }
  names.clear();
  for (const auto& inst : wf.instances) {
    if (!names.insert(inst.name).second) {
      throw ValidationError("duplicate instance name " + Quote(inst.name));
    }
  }
  names.clear();
  for (const auto& ex : wf.exports) {
    if (!names.insert(ex.name).second) {
      throw ValidationError("duplicate output name " + Quote(ex.name));
    }
  }

  for (const auto& inst : wf.instances) {
    try {
      v.classes_.push_back(ResolveClass(wf, inst.class_ref));
    } catch (const ValidationError& e) {
      throw ValidationError("instance " + Quote(inst.name) + ": " + e.what());
    }
  }

  // References must name a declared output of an existing instance.
  auto check_ref = [&](const Expr& leaf, const std::string& where) -> std::size_t {
    if (leaf.kind() == Expr::Kind::kParam) {
      throw ValidationError(where + ": bare parameter " + Quote(leaf.name()) +
                            " is only allowed inside inline models");
    }
    auto target = v.FindInstance(leaf.instance());
    if (!target) {
      throw ValidationError(where + " references unknown instance " +
                            Quote(leaf.instance()));
    }
    if (!v.classes_[*target].Find(leaf.name(), Direction::kOutput)) {
      throw ValidationError(where + " references " + Path(leaf.instance(), leaf.name()) +
                            ", which is not an output of " + v.classes_[*target].name);
    }
    return *target;
  };

  v.deps_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& inst = wf.instances[i];
    const ModelClass& cls = v.classes_[i];
    std::set<std::string> bound;
    for (const Binding& b : inst.bindings) {
      const std::string where = "binding " + Path(inst.name, b.param);
      const ParamDecl* decl = cls.Find(b.param, Direction::kInput);
      if (!decl) {
        throw ValidationError(where + ": " + cls.name + " has no input " + Quote(b.param));
      }
      if (!bound.insert(b.param).second) {
        throw ValidationError(where + " is bound more than once");
      }
      std::vector<const Expr*> leaves;
      b.value.CollectLeaves(leaves);
      for (const Expr* leaf : leaves) {
        std::size_t dep = check_ref(*leaf, where);
        auto& deps = v.deps_[i];
        if (std::find(deps.begin(), deps.end(), dep) == deps.end()) deps.push_back(dep);
      }
    }
    for (const ParamDecl* in : cls.Inputs()) {
      if (!bound.count(in->name) && !in->default_value) {
        throw ValidationError("unbound input " + Path(inst.name, in->name));
      }
    }
  }
  for (const auto& ex : wf.exports) {
    std::vector<const Expr*> leaves;
    ex.value.CollectLeaves(leaves);
    for (const Expr* leaf : leaves) check_ref(*leaf, "output " + Quote(ex.name));
  }

  // Cycle detection along dependency edges, reporting the offending path.
  {
    enum class Mark { kNew, kActive, kDone };
    std::vector<Mark> mark(n, Mark::kNew);
    std::vector<std::size_t> stack;
    auto visit = [&](auto&& self, std::size_t u) -> void {
      mark[u] = Mark::kActive;
      stack.push_back(u);
      for (std::size_t w : v.deps_[u]) {
        if (mark[w] == Mark::kActive) {
          auto it = std::find(stack.begin(), stack.end(), w);
          std::string msg = "binding cycle: ";
          for (; it != stack.end(); ++it) msg += wf.instances[*it].name + " -> ";
          msg += wf.instances[w].name;
          throw ValidationError(msg);
        }
        if (mark[w] == Mark::kNew) self(self, w);
      }
      stack.pop_back();
      mark[u] = Mark::kDone;
    };
    for (std::size_t i = 0; i < n; ++i) {
      if (mark[i] == Mark::kNew) visit(visit, i);
    }
  }

  // Kahn's algorithm, lowest declaration index first.
  std::vector<std::size_t> pending(n);
  for (std::size_t i = 0; i < n; ++i) pending[i] = v.deps_[i].size();
  std::set<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (pending[i] == 0) ready.insert(i);
  }
  while (!ready.empty()) {
    std::size_t u = *ready.begin();
    ready.erase(ready.begin());
    v.order_.push_back(u);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& d = v.deps_[i];
      if (std::find(d.begin(), d.end(), u) != d.end() && --pending[i] == 0) {
        ready.insert(i);
      }
    }
  }

  // Kinds need the resolved classes of referenced instances.
  for (std::size_t i = 0; i < n; ++i) {
    const auto& inst = wf.instances[i];
    for (const Binding& b : inst.bindings) {
      const std::string where = "binding " + Path(inst.name, b.param);
      const ParamDecl* decl = v.classes_[i].Find(b.param, Direction::kInput);
      auto kind = InferKind(b.value, v, v.classes_, where);
      if (kind && *kind != decl->kind) {
        throw ValidationError("kind mismatch in " + where + ": " +
                              std::string(ToString(*kind)) + " bound where " +
                              std::string(ToString(decl->kind)) + " is declared");
      }
      if (b.value.IsConstant()) {
        CheckRange(decl->kind, b.value.Evaluate([](const Expr&) { return 0.0; }), where);
      }
    }
  }
  return v;
}

double SolveResult::Output(std::string_view instance, std::string_view param) const {
  for (const auto& inst : instances) {
    if (inst.instance != instance) continue;
    for (const auto& [name, value] : inst.values) {
      if (name == param) return value;
    }
  }
  throw ValidationError("no output " + Path(instance, param));
}

double SolveResult::Export(std::string_view name) const {
  for (const auto& [n, value] : exports) {
    if (n == name) return value;
  }
  throw ValidationError("no export " + Quote(name));
}

ParamValues ResolveInputs(const ValidatedWorkflow& wf, std::size_t instance,
                          const std::vector<std::optional<ParamValues>>& solved) {
  const auto& inst = wf.workflow().instances[instance];
  const ModelClass& cls = wf.classes()[instance];
  auto leaf = [&](const Expr& ref) {
    auto idx = wf.FindInstance(ref.instance());
    const auto& outputs = solved[*idx];
    if (!outputs) {
      throw ValidationError("instance " + Quote(ref.instance()) +
                            " has not been solved yet");
    }
    return outputs->at(ref.name());
  };
  ParamValues inputs;
  for (const ParamDecl* in : cls.Inputs()) {
    if (in->default_value) inputs[in->name] = *in->default_value;
  }
  for (const Binding& b : inst.bindings) inputs[b.param] = b.value.Evaluate(leaf);
  return inputs;
}

bayes::BayesNet BuildClassNet(const ModelClass& model, const ParamValues& inputs) {
  if (const auto* name = std::get_if<std::string>(&model.source)) {
    const nmr::Template* t = nmr::FindTemplate(*name);
    if (!t || !t->build_bayes) {
      throw ValidationError(model.name + " is not a Bayesian-network model");
    }
    return t->build_bayes(inputs);
  }
  if (const auto* b = std::get_if<InlineBayes>(&model.source)) return BuildInlineNet(*b);
  throw ValidationError(model.name + " is not a Bayesian-network model");
}

ParamValues SolveClass(const ModelClass& model, const ParamValues& inputs) {
  if (const auto* name = std::get_if<std::string>(&model.source)) {
    const nmr::Template* t = nmr::FindTemplate(*name);
    if (!t) throw ValidationError("unknown builtin template " + Quote(*name));
    return t->solve(inputs);
  }
  ParamValues out;
  if (const auto* c = std::get_if<InlineCtmc>(&model.source)) {
    auto pi = ctmc::SteadyState(BuildInlineChain(*c, inputs));
    for (std::size_t s = 0; s < pi.states.size(); ++s) {
      out[StateOutputName(pi.states[s])] = pi.probabilities[s];
    }
    return out;
  }
  const auto net = BuildInlineNet(std::get<InlineBayes>(model.source));
  for (const auto& var : net.variables()) {
    auto dist = bayes::Marginal(net, var.id);
    for (std::size_t s = 0; s < dist.states.size(); ++s) {
      out[NodeOutputName(var.id, dist.states[s])] = dist.probabilities[s];
    }
  }
  return out;
}

SolveResult RunWorkflow(const ValidatedWorkflow& wf) { return RunWorkflow(wf, wf.order()); }

SolveResult RunWorkflow(const ValidatedWorkflow& wf, std::span<const std::size_t> order) {
  const auto& instances = wf.workflow().instances;
  const std::size_t n = instances.size();
  if (order.size() != n) throw ValidationError("execution order has the wrong length");
  std::vector<std::optional<ParamValues>> solved(n);
  std::vector<bool> placed(n, false);
  SolveResult result;
  for (std::size_t i : order) {
    if (i >= n || placed[i]) throw ValidationError("execution order is not a permutation");
    for (std::size_t d : wf.dependencies(i)) {
      if (!placed[d]) {
        throw ValidationError("execution order runs " + Quote(instances[i].name) +
                              " before " + Quote(instances[d].name));
      }
    }
    placed[i] = true;
    const ModelClass& cls = wf.classes()[i];
    try {
      solved[i] = SolveClass(cls, ResolveInputs(wf, i, solved));
    } catch (...) {
      RethrowFor(instances[i].name);
    }
  }
  // Declaration order keeps the result independent of the execution order.
  for (std::size_t i = 0; i < n; ++i) {
    result.provenance.push_back(instances[i].name + ": " + Describe(wf.classes()[i]));
    InstanceOutputs io{instances[i].name, {}};
    for (const ParamDecl* out : wf.classes()[i].Outputs()) {
      io.values.emplace_back(out->name, solved[i]->at(out->name));
    }
    result.instances.push_back(std::move(io));
  }
  for (const Export& ex : wf.workflow().exports) {
    double value = 0.0;
    try {
      value = ex.value.Evaluate([&](const Expr& ref) {
        return solved[*wf.FindInstance(ref.instance())]->at(ref.name());
      });
    } catch (const NumericError& e) {
      throw NumericError("output " + Quote(ex.name) + ": " + e.what());
    }
    result.exports.emplace_back(ex.name, value);
  }
  return result;
}

bayes::BayesNet InstanceNet(const ValidatedWorkflow& wf, std::string_view instance) {
  auto target = wf.FindInstance(instance);
  if (!target) throw ValidationError("unknown instance " + Quote(instance));
  if (wf.classes()[*target].formalism != Formalism::kBayes) {
    throw ValidationError("instance " + Quote(instance) + " is not a BAYES instance");
  }
  std::vector<std::optional<ParamValues>> solved(wf.workflow().instances.size());
  for (std::size_t i : wf.order()) {
    const auto& name = wf.workflow().instances[i].name;
    try {
      if (i == *target) return BuildClassNet(wf.classes()[i], ResolveInputs(wf, i, solved));
      solved[i] = SolveClass(wf.classes()[i], ResolveInputs(wf, i, solved));
    } catch (...) {
      RethrowFor(name);
    }
  }
  throw ValidationError("instance " + Quote(instance) + " is not in the execution order");
}

std::vector<SweepRow> Sweep(const ValidatedWorkflow& wf, std::string_view path,
                            std::span<const double> factors) {
  const auto dot = path.find('.');
  if (dot == std::string_view::npos) {
    throw ValidationError("sweep parameter " + Quote(path) + " must be instance.PARAM");
  }
  const std::string instance(path.substr(0, dot));
  const std::string param(path.substr(dot + 1));
  auto idx = wf.FindInstance(instance);
  if (!idx) throw ValidationError("sweep: unknown instance " + Quote(instance));
  const ParamDecl* decl = wf.classes()[*idx].Find(param, Direction::kInput);
  if (!decl) {
    throw ValidationError("sweep: " + wf.classes()[*idx].name + " has no input " +
                          Quote(param));
  }
  const auto& bindings = wf.workflow().instances[*idx].bindings;
  auto bound = std::find_if(bindings.begin(), bindings.end(),
                            [&](const Binding& b) { return b.param == param; });
  double base = 0.0;
  if (bound == bindings.end()) {
    base = *decl->default_value;
  } else if (bound->value.IsConstant()) {
    base = bound->value.Evaluate([](const Expr&) { return 0.0; });
  } else {
    throw ValidationError("cannot sweep " + std::string(path) +
                          ": it is reference-bound, a value derived from another "
                          "instance's outputs; sweep the literal input it derives from");
  }

  auto run_row = [&wf, base, idx = *idx, param](double factor) {
    Workflow copy = wf.workflow();
    auto& b = copy.instances[idx].bindings;
    auto it = std::find_if(b.begin(), b.end(),
                           [&](const Binding& x) { return x.param == param; });
    Expr scaled = Expr::Number(base * factor);
    if (it == b.end()) {
      b.push_back({param, scaled});
    } else {
      it->value = scaled;
    }
    return SweepRow{factor, RunWorkflow(ValidateWorkflow(std::move(copy)))};
  };
  std::vector<std::future<SweepRow>> pending;
  pending.reserve(factors.size());
  for (double f : factors) pending.push_back(std::async(std::launch::async, run_row, f));
  std::vector<SweepRow> rows;
  rows.reserve(factors.size());
  for (auto& p : pending) rows.push_back(p.get());
  return rows;
}

}  // namespace redvote
