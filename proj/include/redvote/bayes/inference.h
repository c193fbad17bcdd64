// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

/// @file inference.h
/// Exact inference on discrete Bayesian networks by variable elimination.
///
/// All functions are pure: the network is never modified and no state is
/// shared between calls.

#ifndef REDVOTE_BAYES_INFERENCE_H_
#define REDVOTE_BAYES_INFERENCE_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "redvote/bayes/bayes_net.h"

namespace redvote::bayes {

/// Product of the matching CPT entries.
/// The assignment must name every variable of the net and nothing else.
double JointProbability(const BayesNet& net, const Assignment& assignment);

/// Min-fill elimination order over the variables that are neither queried
/// nor observed. Ties are broken by ascending variable id.
std::vector<std::string> EliminationOrder(const BayesNet& net,
                                          std::span<const std::string> query,
                                          const Evidence& evidence);

/// Exact P(target | evidence).
/// Throws NumericError if the evidence has probability zero.
Distribution Marginal(const BayesNet& net, std::string_view target,
                      const Evidence& evidence = {});

/// Posterior of every variable, ordered by variable id.
/// Observed variables appear as point masses on their observed state.
std::vector<Distribution> PosteriorReport(const BayesNet& net,
                                          const Evidence& evidence);

/// Probability of the evidence itself, P(e).
double EvidenceProbability(const BayesNet& net, const Evidence& evidence);

}  // namespace redvote::bayes

#endif  // REDVOTE_BAYES_INFERENCE_H_
