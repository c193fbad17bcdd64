// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "redvote/nmr/templates.h"

#include "redvote/error.h"
#include "redvote/nmr/failure_model.h"
#include "redvote/nmr/maintenance_model.h"

namespace redvote::nmr {

namespace {

constexpr ParamKind kProb = ParamKind::kProbability;
constexpr ParamKind kRate = ParamKind::kRate;
constexpr ParamKind kRatio = ParamKind::kRatio;

double Get(const ParamValues& in, std::string_view name) {
  auto it = in.find(name);
  if (it == in.end()) throw ValidationError("missing input " + std::string(name));
  return it->second;
}

FailureParams ToFailureParams(const ParamValues& in) {
  FailureParams p;
  p.par1 = Get(in, "PAR_1");
  p.par2 = Get(in, "PAR_2");
  p.par3 = Get(in, "PAR_3");
  p.transient_ratio = Get(in, "TRANSIENT_RATIO");
  p.excl_fail = Get(in, "EXCL_FAIL");
  p.p_activate = Get(in, "P_ACTIVATE");
  p.p_miss = Get(in, "P_MISS");
  return p;
}

MaintenanceParams ToMaintenanceParams(const ParamValues& in) {
  return {Get(in, "PAR_4"), Get(in, "PAR_5"), Get(in, "PAR_6"),
          Get(in, "PAR_7"), Get(in, "PAR_8"), Get(in, "PAR_9")};
}

Template Failure2oo2() {
  Template t;
  t.name = "failure2oo2";
  t.formalism = Formalism::kBayes;
  t.description = "Bayesian-network hazardous-failure model of a 2oo2 architecture";
  t.inputs = {{"PAR_1", kProb, std::nullopt},
              {"PAR_2", kRatio, std::nullopt},
              {"PAR_3", kProb, std::nullopt},
              {"TRANSIENT_RATIO", kRatio, 0.9},
              {"EXCL_FAIL", kProb, 1e-10},
              {"P_ACTIVATE", kProb, 0.1},
              {"P_MISS", kProb, 0.35}};
  t.outputs = {{"PAR_4", kProb, std::nullopt},
               {"PAR_5", kProb, std::nullopt},
               {"HR_2OO2", kRate, std::nullopt}};
  t.build_bayes = [](const ParamValues& in) {
    return BuildFailureBn(ToFailureParams(in));
  };
  t.solve = [](const ParamValues& in) {
    auto v = FailureInterface(ToFailureParams(in));
    return ParamValues{{"PAR_4", *v.par4}, {"PAR_5", *v.par5}, {"HR_2OO2", *v.hr_2oo2}};
  };
  return t;
}

Template Maintenance(MaintenanceLevel level, std::string name) {
  Template t;
  t.name = std::move(name);
  t.formalism = Formalism::kCtmc;
  t.description = std::string("imperfect-maintenance CTMC, ") +
                  std::string(ToString(level));
  t.inputs = {{"PAR_4", kProb, std::nullopt}, {"PAR_5", kProb, std::nullopt},
              {"PAR_6", kRate, std::nullopt}, {"PAR_7", kRatio, std::nullopt},
              {"PAR_8", kRate, std::nullopt}, {"PAR_9", kRate, std::nullopt}};
  if (level == MaintenanceLevel::kEightState) {
    t.inputs.push_back({"PAR_1", kProb, std::nullopt});
    t.inputs.push_back({"PAR_2", kRatio, std::nullopt});
    t.inputs.push_back({"TRANSIENT_RATIO", kRatio, 0.9});
  }
  t.outputs = {{"PAR_10", kProb, std::nullopt}, {"HFR_2OO3", kRate, std::nullopt}};
  t.build_ctmc = [level](const ParamValues& in) {
    std::optional<DiagnosableFaultParams> diag;
    if (level == MaintenanceLevel::kEightState) {
      diag = DiagnosableFaultParams{Get(in, "PAR_1"), Get(in, "PAR_2"),
                                    Get(in, "TRANSIENT_RATIO")};
    }
    return BuildMaintenanceCtmc(level, ToMaintenanceParams(in), diag);
  };
  t.solve = [build = t.build_ctmc](const ParamValues& in) {
    auto v = HfrFromMaintenance(ctmc::SteadyState(build(in)));
    return ParamValues{{"PAR_10", *v.par10}, {"HFR_2OO3", *v.hfr_2oo3}};
  };
  return t;
}

const std::vector<Template>& Registry() {
  static const std::vector<Template> registry = [] {
    std::vector<Template> r;
    r.push_back(Failure2oo2());
    r.push_back(Maintenance(MaintenanceLevel::kFourState, "maintenance4"));
    r.push_back(Maintenance(MaintenanceLevel::kFiveState, "maintenance5"));
    r.push_back(Maintenance(MaintenanceLevel::kEightState, "maintenance8"));
    return r;
  }();
  return registry;
}

}  // namespace

std::span<const Template> Templates() { return Registry(); }

const Template* FindTemplate(std::string_view name) {
  for (const Template& t : Registry()) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

}  // namespace redvote::nmr
