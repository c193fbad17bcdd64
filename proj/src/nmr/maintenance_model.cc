// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "redvote/nmr/maintenance_model.h"

#include <cmath>
#include <string>
#include <vector>

#include "redvote/error.h"

namespace redvote::nmr {

namespace {

void CheckProbability(double v, const char* field) {
  if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
    throw ValidationError(std::string("maintenance parameter ") + field +
                          " must lie in [0,1], got " + std::to_string(v));
  }
}

void CheckNonNegative(double v, const char* field) {
  if (!std::isfinite(v) || v < 0.0) {
    throw ValidationError(std::string("maintenance parameter ") + field +
                          " must be a non-negative rate, got " + std::to_string(v));
  }
}

class TransitionList {
 public:
  void Add(std::string from, std::string to, double rate) {
    if (rate > 0.0) list_.push_back({std::move(from), std::move(to), rate});
  }
  std::vector<ctmc::Transition> Take() { return std::move(list_); }

 private:
  std::vector<ctmc::Transition> list_;
};

}  // namespace

void MaintenanceParams::Validate() const {
  CheckProbability(par4, "PAR_4");
  CheckProbability(par5, "PAR_5");
  CheckProbability(par7, "PAR_7");
  CheckNonNegative(par6, "PAR_6");
  CheckNonNegative(par8, "PAR_8");
  CheckNonNegative(par9, "PAR_9");
  if (par5 > 2.0 * par4) {
    throw ValidationError("PAR_5 exceeds 2*PAR_4: the hazardous-failure probability "
                          "cannot exceed the two-unit error probability");
  }
}

std::string_view ToString(MaintenanceLevel level) {
  switch (level) {
    case MaintenanceLevel::kFourState: return "FOUR_STATE";
    case MaintenanceLevel::kFiveState: return "FIVE_STATE";
    case MaintenanceLevel::kEightState: return "EIGHT_STATE";
  }
  return "?";
}

ctmc::Ctmc BuildMaintenanceCtmc(MaintenanceLevel level, const MaintenanceParams& p,
                                const std::optional<DiagnosableFaultParams>& diagnosable) {
  p.Validate();
  const double shutdown = 2.0 * p.par4 - p.par5;
  if (!(shutdown > 0.0)) {
    throw ValidationError("safe-shutdown rate 2*PAR_4 - PAR_5 must be positive, got " +
                          std::to_string(shutdown));
  }
  const double repair_ok = (1.0 - p.par7) * p.par6;
  const double repair_wrong = p.par7 * p.par6;

  TransitionList t;
  switch (level) {
    case MaintenanceLevel::kFourState:
      t.Add("S0", "S1", shutdown);
      t.Add("S0", "S3", p.par5);
      t.Add("S1", "S0", p.par6);
      t.Add("S1", "S2", p.par5);
      t.Add("S2", "S0", repair_ok);
      t.Add("S2", "S3", repair_wrong + p.par8);
      t.Add("S3", "S2", shutdown);
      return ctmc::Ctmc::Build({"S0", "S1", "S2", "S3"}, "S0", t.Take());

    case MaintenanceLevel::kFiveState:
      t.Add("S0", "S1", shutdown);
      t.Add("S0", "S3", p.par5);
      t.Add("S1", "S0", p.par6);
      t.Add("S1", "S2", p.par5);
      t.Add("S2", "S0", repair_ok);
      t.Add("S2", "S3", repair_wrong);
      t.Add("S2", "S4", p.par8);
      t.Add("S3", "S2", shutdown);
      t.Add("S3", "S4", p.par8);
      t.Add("S4", "S3", p.par9);
      return ctmc::Ctmc::Build({"S0", "S1", "S2", "S3", "S4"}, "S0", t.Take());

    case MaintenanceLevel::kEightState: {
      if (!diagnosable) {
        throw ValidationError("the eight-state model needs PAR_1, PAR_2 and the "
                              "transient ratio");
      }
      const auto& d = *diagnosable;
      CheckProbability(d.par1, "PAR_1");
      CheckProbability(d.par2, "PAR_2");
      CheckProbability(d.transient_ratio, "TRANSIENT_RATIO");
      const double latent = 2.0 * d.par1 * (1.0 - d.transient_ratio) * (1.0 - d.par2);
      for (const char* up : {"S0p", "S0pp"}) {
        t.Add(up, "S1", shutdown);
        t.Add(up, "S3", p.par5);
      }
      t.Add("S0p", "S0pp", latent);
      t.Add("S0pp", "S5", shutdown);
      t.Add("S1", "S0p", p.par6);
      t.Add("S1", "S2", p.par5);
      t.Add("S2", "S0p", repair_ok);
      t.Add("S2", "S3", repair_wrong);
      t.Add("S2", "S4", p.par8);
      t.Add("S3", "S2", shutdown);
      t.Add("S3", "S4", p.par8);
      t.Add("S4", "S3", p.par9);
      t.Add("S5", "S0p", repair_ok);
      t.Add("S5", "S0pp", repair_wrong);
      t.Add("S5", "S6", p.par8);
      t.Add("S6", "S5", p.par9);
      return ctmc::Ctmc::Build({"S0p", "S0pp", "S1", "S2", "S3", "S4", "S5", "S6"},
                               "S0p", t.Take());
    }
  }
  throw ValidationError("unknown maintenance level");
}

InterfaceValues HfrFromMaintenance(const ctmc::StationaryDistribution& pi) {
  auto s3 = pi.Find(kHazardState);
  if (!s3) throw ValidationError("maintenance chain has no state S3");
  InterfaceValues out;
  out.par10 = *s3;
  out.hfr_2oo3 = 3.0 * *s3;
  return out;
}

}  // namespace redvote::nmr
