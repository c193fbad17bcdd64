// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "redvote/nmr/failure_model.h"

#include <cmath>
#include <vector>

#include "redvote/bayes/inference.h"
#include "redvote/error.h"

namespace redvote::nmr {

namespace node {
std::string PerUnit(std::string_view base, char unit) {
  std::string id(base);
  id += '_';
  id += unit;
  return id;
}
}  // namespace node

namespace {

using bayes::Cpt;
using bayes::Variable;

Variable Boolean(std::string id, std::string name) {
  return {std::move(id), std::move(name), {std::string(kTrue), std::string(kFalse)}};
}

// Root with P(True) = p.
Cpt Prior(const std::string& id, double p) { return {id, {}, {p, 1.0 - p}}; }

// Deterministic boolean child over boolean parents. `truth(bits)` receives
// one bool per parent (true == state "True") and returns the child's value.
template <typename Fn>
Cpt Deterministic(const std::string& id, std::vector<std::string> parents, Fn truth) {
  const std::size_t k = parents.size();
  Cpt cpt{id, std::move(parents), {}};
  for (std::size_t row = 0; row < (std::size_t{1} << k); ++row) {
    std::vector<bool> bits(k);
    for (std::size_t j = 0; j < k; ++j) {
      // First state ("True") has index 0; the last parent varies fastest.
      bits[j] = ((row >> (k - 1 - j)) & 1U) == 0;
    }
    bool value = truth(bits);
    cpt.values.push_back(value ? 1.0 : 0.0);
    cpt.values.push_back(value ? 0.0 : 1.0);
  }
  return cpt;
}

void CheckUnit(double value, const char* field) {
  if (!std::isfinite(value) || value < 0.0 || value > 1.0) {
    throw ValidationError(std::string("failure parameter ") + field +
                          " must lie in [0,1], got " + std::to_string(value));
  }
}

void AddUnit(char u, const FailureParams& p, std::vector<Variable>& vars,
             std::vector<Cpt>& cpts) {
  using node::PerUnit;
  const std::string unit(1, u);
  const std::string fault = PerUnit(node::kFault, u);
  const std::string type = PerUnit(node::kFaultType, u);
  const std::string transient = PerUnit(node::kTransientFault, u);
  const std::string permanent = PerUnit(node::kPermanentFault, u);
  const std::string detectability = PerUnit(node::kDetectability, u);
  const std::string detectable = PerUnit(node::kDetectableFault, u);
  const std::string non_detectable = PerUnit(node::kNonDetectableFault, u);
  const std::string error_transient = PerUnit(node::kErrorDueToTransient, u);
  const std::string undetected = PerUnit(node::kUndetectedPermanent, u);
  const std::string uncorr = PerUnit(node::kUncorr, u);
  const std::string excl = PerUnit(node::kExcl, u);

  vars.push_back(Boolean(fault, "A fault occurring in Unit " + unit));
  cpts.push_back(Prior(fault, p.par1));

  vars.push_back({type, "The fault type of Unit " + unit, {"Transient", "Permanent"}});
  cpts.push_back({type, {}, {p.transient_ratio, 1.0 - p.transient_ratio}});

  // Fault_type's first state is "Transient", so bits[1] means transient.
  vars.push_back(Boolean(transient, "A transient fault occurring in Unit " + unit));
  cpts.push_back(Deterministic(transient, {fault, type},
                               [](const auto& b) { return b[0] && b[1]; }));
  vars.push_back(Boolean(permanent, "A permanent fault occurring in Unit " + unit));
  cpts.push_back(Deterministic(permanent, {fault, type},
                               [](const auto& b) { return b[0] && !b[1]; }));

  vars.push_back({detectability,
                  "The possibility of detecting a fault occurring in Unit " + unit,
                  {"Detectable", "Non_detectable"}});
  cpts.push_back({detectability, {}, {1.0 - p.par2, p.par2}});

  vars.push_back(Boolean(detectable, "A detectable fault occurring in Unit " + unit));
  cpts.push_back(Deterministic(detectable, {permanent, detectability},
                               [](const auto& b) { return b[0] && b[1]; }));
  vars.push_back(
      Boolean(non_detectable, "A non detectable fault occurring in Unit " + unit));
  cpts.push_back(Deterministic(non_detectable, {permanent, detectability},
                               [](const auto& b) { return b[0] && !b[1]; }));

  vars.push_back(Boolean(error_transient,
                         "An error due to a transient fault occurring in Unit " + unit));
  cpts.push_back({error_transient,
                  {transient},
                  {p.p_activate, 1.0 - p.p_activate, 0.0, 1.0}});

  // Parents (Non_detectable, Detectable); rows TT, TF, FT, FF.
  vars.push_back(Boolean(undetected,
                         "An undetected permanent fault occurring in Unit " + unit));
  cpts.push_back({undetected,
                  {non_detectable, detectable},
                  {1.0, 0.0, 1.0, 0.0, p.p_miss, 1.0 - p.p_miss, 0.0, 1.0}});

  vars.push_back(Boolean(uncorr, "An incorrect output occurring in Unit " + unit));
  cpts.push_back(Deterministic(uncorr, {error_transient, undetected},
                               [](const auto& b) { return b[0] || b[1]; }));

  vars.push_back(
      Boolean(excl, "A failure occurring in the Exclusion Logic of Unit " + unit));
  cpts.push_back(Prior(excl, p.excl_fail));
}

}  // namespace

void FailureParams::Validate() const {
  CheckUnit(par1, "PAR_1");
  CheckUnit(par2, "PAR_2");
  CheckUnit(par3, "PAR_3");
  CheckUnit(transient_ratio, "transient_ratio");
  CheckUnit(excl_fail, "excl_fail");
  CheckUnit(p_activate, "p_activate");
  CheckUnit(p_miss, "p_miss");
}

bayes::BayesNet BuildFailureBn(const FailureParams& params) {
  params.Validate();
  std::vector<Variable> vars;
  std::vector<Cpt> cpts;
  AddUnit('A', params, vars, cpts);
  AddUnit('B', params, vars, cpts);

  const std::string same(node::kSameOutput);
  vars.push_back(
      Boolean(same, "The two units produce the same modification of their output"));
  cpts.push_back(Prior(same, params.par3));

  const std::string unsafe(node::kUnsafeOutput);
  vars.push_back(Boolean(unsafe, "An unsafe output occurring in the system"));
  // Parents: Same_output_alterations, UNCORR_A, UNCORR_B, Excl_A, Excl_B.
  cpts.push_back(Deterministic(
      unsafe,
      {same, node::PerUnit(node::kUncorr, 'A'), node::PerUnit(node::kUncorr, 'B'),
       node::PerUnit(node::kExcl, 'A'), node::PerUnit(node::kExcl, 'B')},
      [](const auto& b) {
        return (b[1] && b[2] && b[0]) || (b[1] && b[3]) || (b[2] && b[4]);
      }));
  return bayes::BayesNet::Build(std::move(vars), std::move(cpts));
}

InterfaceValues FailureInterface(const FailureParams& params) {
  const auto net = BuildFailureBn(params);
  InterfaceValues out;
  out.par4 = bayes::Marginal(net, node::PerUnit(node::kUncorr, 'A'))[kTrue];
  out.par5 = bayes::Marginal(net, node::kUnsafeOutput)[kTrue];
  out.hr_2oo2 = out.par5;
  if (*out.par5 > 0.0) {
    auto mtbhe = MtbheConversion(*out.par5);
    out.mtbhe_2oo2 = mtbhe.mtbhe_2oo2;
    out.mtbhe_2oo3 = mtbhe.mtbhe_2oo3;
  }
  return out;
}

Mtbhe MtbheConversion(double hr_2oo2) {
  if (!(hr_2oo2 > 0.0) || !std::isfinite(hr_2oo2)) {
    throw ValidationError("hazard rate must be positive and finite, got " +
                          std::to_string(hr_2oo2));
  }
  const double mtbhe_2oo3 = 1.0 / (3.0 * hr_2oo2);
  return {3.0 * mtbhe_2oo3, mtbhe_2oo3};
}

}  // namespace redvote::nmr
