// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

/// @file dsl.h
/// The `.rvm` workflow format: parsing with positioned diagnostics and
/// canonical printing.
///
/// Grammar (keywords are reserved; `#` starts a comment to end of line):
///
///   file     := [ "version" NUMBER ";" ] workflow
///   workflow := "workflow" STRING "{" item* "}"
///   item     := instance | export | ctmcdef | bayesdef
///   instance := "instance" IDENT ":" ref "{" binding* "}"
///   ref      := "builtin" "." IDENT | IDENT
///   binding  := IDENT "=" expr ";"
///   export   := "output" IDENT "=" expr ";"
///   ctmcdef  := "ctmc" IDENT "{" member* "}"
///   member   := "param" IDENT ":" KIND [ "=" NUMBER ] ";"
///             | "state" IDENT [ "init" ] ";"
///             | "rate" IDENT "->" IDENT ":" expr ";"
///   bayesdef := "bayes" IDENT "{" node* "}"
///   node     := "node" IDENT "states" "(" IDENT { "," IDENT } ")"
///               [ "parents" "(" IDENT { "," IDENT } ")" ]
///               "cpt" "(" NUMBER { "," NUMBER } ")" ";"
///   expr     := term { ("+" | "-") term }
///   term     := atom { ("*" | "/") atom }
///   atom     := NUMBER | IDENT "." IDENT | IDENT | "(" expr ")"
///   KIND     := "probability" | "rate" | "ratio"
///
/// NUMBER is decimal with an optional exponent. A bare IDENT atom is only
/// valid inside a ctmc rate, where it names one of the model's parameters;
/// IDENT "." IDENT names an instance output and is only valid outside.

#ifndef REDVOTE_DSL_DSL_H_
#define REDVOTE_DSL_DSL_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "redvote/compose/workflow.h"
#include "redvote/error.h"

namespace redvote::dsl {

struct SourceFile {
  std::string origin;  ///< File name or other label used in diagnostics.
  std::string text;    ///< UTF-8.
};

enum class Severity { kError, kWarning };

struct Diagnostic {
  Severity severity = Severity::kError;
  std::string message;
  int line = 1;    ///< 1-based.
  int column = 1;  ///< 1-based, in code points.

  /// "origin:line:column: error: message"
  std::string Format(std::string_view origin) const;
};

struct ParseResult {
  std::optional<Workflow> workflow;  ///< Set iff there are no errors.
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return workflow.has_value(); }
};

/// Raised by ParseOrThrow and ReadSourceFile; carries every diagnostic.
class ParseError : public Error {
 public:
  ParseError(std::string origin, std::vector<Diagnostic> diagnostics);

  const std::string& origin() const { return origin_; }
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::string origin_;
  std::vector<Diagnostic> diagnostics_;
};

/// Parses a workflow file. Never throws for malformed input: every
/// rejection yields at least one error diagnostic with a position.
ParseResult Parse(const SourceFile& source);

/// Parse, throwing ParseError on failure.
Workflow ParseOrThrow(const SourceFile& source);

/// Loads a file; an unreadable file raises ParseError positioned at 1:1.
SourceFile ReadSourceFile(const std::string& path);

/// Canonical text of a workflow. Deterministic; parsing the result yields a
/// structurally equal workflow.
std::string Print(const Workflow& workflow);

/// Shortest decimal text that parses back to exactly `value`.
std::string FormatNumber(double value);

}  // namespace redvote::dsl

#endif  // REDVOTE_DSL_DSL_H_
