// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

/// @file maintenance_model.h
/// Imperfect-maintenance CTMCs of a voting architecture at three levels of
/// detail.
///
/// States (FIVE_STATE reference model):
///   S0  system up, no undiagnosable permanent fault (initial)
///   S1  safe shutdown, no permanent fault
///   S2  shutdown with an undiagnosable permanent fault
///   S3  up with an undiagnosable permanent fault (hazardous)
///   S4  unpowered with an undiagnosable permanent fault
///
/// Rates, with s = 2*par4 - par5 the safe-shutdown rate:
///   S0->S1 = s        S0->S3 = par5       S1->S0 = par6     S1->S2 = par5
///   S2->S0 = (1-par7)*par6  (correct maintenance)
///   S2->S3 = par7*par6      (incorrect maintenance)
///   S2->S4 = par8     S3->S2 = s          S3->S4 = par8     S4->S3 = par9
///
/// A commonly quoted rate list swaps the two maintenance outcomes; the
/// assignment above follows the state semantics (S2 returns to S0 after a
/// correct repair) and is the one that reproduces the reference 2oo3 hazard
/// rates. Power loss leads to S4 and power restore back to S3.
///
/// FOUR_STATE drops S4 and folds the power cycle into S2->S3 = par7*par6 + par8.
///
/// EIGHT_STATE splits S0 into S0p (no permanent fault, initial) and S0pp (a
/// latent diagnosable permanent fault) and adds S5/S6 as the diagnosable
/// counterparts of S2/S4. Its transition set is a reconstruction:
///   S0p->S0pp = 2*par1*(1-transient_ratio)*(1-par2)
///   S0pp->S5 = s
///   S5->S0p = (1-par7)*par6   S5->S0pp = par7*par6   S5->S6 = par8   S6->S5 = par9
///   S0p and S0pp both carry S0's transitions to S1 and S3; S1 and S2
///   return to S0p.

#ifndef REDVOTE_NMR_MAINTENANCE_MODEL_H_
#define REDVOTE_NMR_MAINTENANCE_MODEL_H_

#include <optional>
#include <string_view>

#include "redvote/ctmc/ctmc.h"
#include "redvote/nmr/failure_model.h"

namespace redvote::nmr {

struct MaintenanceParams {
  double par4 = 0.0;  ///< Per-hour single-unit error probability.
  double par5 = 0.0;  ///< Per-hour 2oo2 hazardous-failure probability.
  double par6 = 0.0;  ///< Repairs per hour (1/MTTR).
  double par7 = 0.0;  ///< Share of wrong maintenance interventions.
  double par8 = 0.0;  ///< Power-line failures per hour (1/MTBF).
  double par9 = 0.0;  ///< Power restores per hour (1/MTTRS).

  /// par4, par5, par7 in [0,1]; par5 <= 2*par4; par6, par8, par9 >= 0.
  void Validate() const;
};

/// Extra inputs of the eight-state model.
struct DiagnosableFaultParams {
  double par1 = 0.0;
  double par2 = 0.0;
  double transient_ratio = 0.9;
};

enum class MaintenanceLevel { kFourState, kFiveState, kEightState };

std::string_view ToString(MaintenanceLevel level);

/// Label of the hazardous "up with an undiagnosable permanent fault" state.
inline constexpr std::string_view kHazardState = "S3";

/// Builds the chain; zero-valued rates are omitted.
/// Throws ValidationError for invalid parameters, a non-positive safe-shutdown
/// rate, or an EIGHT_STATE request without diagnosable-fault parameters.
ctmc::Ctmc BuildMaintenanceCtmc(
    MaintenanceLevel level, const MaintenanceParams& params,
    const std::optional<DiagnosableFaultParams>& diagnosable = std::nullopt);

/// par10 = pi(S3), hfr_2oo3 = 3 * par10.
/// Throws ValidationError when the distribution has no S3.
InterfaceValues HfrFromMaintenance(const ctmc::StationaryDistribution& pi);

}  // namespace redvote::nmr

#endif  // REDVOTE_NMR_MAINTENANCE_MODEL_H_
