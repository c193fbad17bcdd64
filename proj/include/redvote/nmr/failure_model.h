// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

/// @file failure_model.h
/// Bayesian-network failure model of a "2oo2" voting architecture and the
/// derived interface figures.
///
/// Per unit X in {A, B} the network chains a fault occurrence through its
/// type (transient or permanent) and diagnosability to the probability of an
/// incorrect unit output, UNCORR_X. A transient fault yields an undetected
/// activated error with probability p_activate; a diagnosable permanent
/// fault stays undetected within the reference hour with probability p_miss;
/// a non-diagnosable permanent fault always does. The system output is
/// unsafe when both units err identically, or when one unit errs and its
/// exclusion logic fails:
///
///   UNSAFE_OUTPUT = (UNCORR_A & UNCORR_B & Same_output_alterations)
///                 | (UNCORR_A & Excl_A) | (UNCORR_B & Excl_B)
///
/// p_activate = 0.1 and p_miss = 0.35 absorb the fault latencies; they are
/// the unique values consistent with the reference node probabilities (1.5e-6 / 1.5e-5 and (6.9164e-7 - 1.6666e-7) / 1.5e-6).

#ifndef REDVOTE_NMR_FAILURE_MODEL_H_
#define REDVOTE_NMR_FAILURE_MODEL_H_

#include <optional>
#include <string>
#include <string_view>

#include "redvote/bayes/bayes_net.h"

namespace redvote::nmr {

/// Node identifiers of the failure network.
namespace node {
inline constexpr std::string_view kUnsafeOutput = "UNSAFE_OUTPUT";
inline constexpr std::string_view kSameOutput = "Same_output_alterations";
inline constexpr std::string_view kFault = "Fault";
inline constexpr std::string_view kFaultType = "Fault_type";
inline constexpr std::string_view kTransientFault = "Transient_Fault";
inline constexpr std::string_view kPermanentFault = "Permanent_Fault";
inline constexpr std::string_view kDetectability = "Fault_detectability";
inline constexpr std::string_view kDetectableFault = "Detectable_Fault";
inline constexpr std::string_view kNonDetectableFault = "Non_detectable_Fault";
inline constexpr std::string_view kErrorDueToTransient = "Error_due_to_Transient";
inline constexpr std::string_view kUndetectedPermanent = "Undetected_permanent";
inline constexpr std::string_view kUncorr = "UNCORR";
inline constexpr std::string_view kExcl = "Excl";

/// Per-unit node id, e.g. PerUnit(kFault, 'A') == "Fault_A".
std::string PerUnit(std::string_view base, char unit);
}  // namespace node

inline constexpr std::string_view kTrue = "True";
inline constexpr std::string_view kFalse = "False";

/// Failure-model parameters. Every field is a probability or ratio in [0,1].
struct FailureParams {
  double par1 = 0.0;  ///< Per-hour fault probability of a single unit.
  double par2 = 0.0;  ///< Share of permanent faults that are not diagnosable.
  double par3 = 0.0;  ///< Probability two faulty units alter outputs identically.
  double transient_ratio = 0.9;
  double excl_fail = 1e-10;
  double p_activate = 0.1;
  double p_miss = 0.35;

  /// Throws ValidationError naming the first field outside [0,1].
  void Validate() const;
};

/// Builds the 24-variable network for the given parameters.
bayes::BayesNet BuildFailureBn(const FailureParams& params);

/// Interface figures exchanged between failure and maintenance models.
/// Fields are populated by whichever model produced them.
struct InterfaceValues {
  std::optional<double> par4;        ///< Single-unit error probability per hour.
  std::optional<double> par5;        ///< 2oo2 hazardous-failure probability per hour.
  std::optional<double> par10;       ///< Steady-state probability of S3.
  std::optional<double> hr_2oo2;     ///< Hazardous failures per hour, 2oo2.
  std::optional<double> hfr_2oo3;    ///< Hazardous failures per hour, 2oo3.
  std::optional<double> mtbhe_2oo2;  ///< Hours.
  std::optional<double> mtbhe_2oo3;  ///< Hours.
};

/// par4 = P(UNCORR_A = True), par5 = hr_2oo2 = P(UNSAFE_OUTPUT = True);
/// MTBHE figures are filled in when par5 > 0.
InterfaceValues FailureInterface(const FailureParams& params);

struct Mtbhe {
  double mtbhe_2oo2;
  double mtbhe_2oo3;
};

/// A 2oo3 system behaves as three 2oo2 pairs (AB, BC, AC), so its hazard
/// rate is three times the 2oo2 one.
/// Throws ValidationError unless hr_2oo2 is positive and finite.
Mtbhe MtbheConversion(double hr_2oo2);

}  // namespace redvote::nmr

#endif  // REDVOTE_NMR_FAILURE_MODEL_H_
