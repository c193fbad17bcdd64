// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

/// @file kinds.h
/// Vocabulary shared by model templates and the composition engine.

#ifndef REDVOTE_COMPOSE_KINDS_H_
#define REDVOTE_COMPOSE_KINDS_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace redvote {

/// Modeling formalism of a model class.
enum class Formalism { kBayes, kCtmc };

/// Physical meaning of a scalar interface parameter.
enum class ParamKind { kProbability, kRate, kRatio };

/// Scalar values keyed by parameter name.
using ParamValues = std::map<std::string, double, std::less<>>;

std::string_view ToString(Formalism formalism);
std::string_view ToString(ParamKind kind);
std::optional<ParamKind> ParseParamKind(std::string_view text);

}  // namespace redvote

#endif  // REDVOTE_COMPOSE_KINDS_H_
