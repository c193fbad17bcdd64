// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

/// @file lexer.h
/// Tokenizer for the `.rvm` format. Internal to the dsl library.

#ifndef REDVOTE_DSL_LEXER_H_
#define REDVOTE_DSL_LEXER_H_

#include <string>
#include <string_view>
#include <vector>

#include "redvote/dsl/dsl.h"

namespace redvote::dsl {

enum class TokenKind { kIdent, kNumber, kString, kPunct, kEnd };

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;     ///< Identifier, punctuation, raw number, or unescaped string.
  double number = 0.0;  ///< kNumber only.
  int line = 1;
  int column = 1;

  bool Is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool IsPunct(std::string_view t) const { return Is(TokenKind::kPunct, t); }
  bool IsKeyword(std::string_view t) const { return Is(TokenKind::kIdent, t); }
};

/// Tokenizes the whole source. Lexical errors are appended to `diagnostics`
/// and the offending characters skipped. The result always ends with kEnd.
std::vector<Token> Tokenize(std::string_view text, std::vector<Diagnostic>& diagnostics);

/// True for words that cannot be used as names.
bool IsReserved(std::string_view word);

}  // namespace redvote::dsl

#endif  // REDVOTE_DSL_LEXER_H_
