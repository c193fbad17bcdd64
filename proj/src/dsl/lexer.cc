// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "lexer.h"

#include <array>
#include <charconv>
#include <cmath>

namespace redvote::dsl {

namespace {

constexpr std::array<std::string_view, 15> kReserved = {
    "version", "workflow", "instance", "builtin", "output", "ctmc",    "bayes", "param",
    "state",   "init",     "rate",     "node",    "states", "parents", "cpt"};

bool IsIdentStart(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool IsDigit(char c) { return c >= '0' && c <= '9'; }
bool IsIdentChar(char c) { return IsIdentStart(c) || IsDigit(c); }

// Length of the UTF-8 sequence starting at text[i], or 0 if malformed.
std::size_t Utf8Length(std::string_view text, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(text[i]);
  std::size_t len = 0;
  unsigned min = 0;
  if (b0 < 0x80) return 1;
  if ((b0 & 0xE0) == 0xC0) { len = 2; min = 0x80; }
  else if ((b0 & 0xF0) == 0xE0) { len = 3; min = 0x800; }
  else if ((b0 & 0xF8) == 0xF0) { len = 4; min = 0x10000; }
  else return 0;
  if (i + len > text.size()) return 0;
  unsigned cp = b0 & (0xFF >> (len + 1));
  for (std::size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(text[i + k]);
    if ((b & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return 0;
  return len;
}

class Lexer {
 public:
  Lexer(std::string_view text, std::vector<Diagnostic>& diags) : text_(text), diags_(diags) {}

  std::vector<Token> Run() {
    std::vector<Token> tokens;
    while (true) {
      SkipSpaceAndComments();
      if (pos_ >= text_.size()) break;
      Token tok;
      tok.line = line_;
      tok.column = column_;
      const char c = text_[pos_];
      if (IsIdentStart(c)) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && IsIdentChar(text_[pos_])) Advance();
        tok.kind = TokenKind::kIdent;
        tok.text = std::string(text_.substr(start, pos_ - start));
      } else if (IsDigit(c) || (c == '.' && pos_ + 1 < text_.size() && IsDigit(text_[pos_ + 1]))) {
        if (!LexNumber(tok)) continue;
      } else if (c == '"') {
        if (!LexString(tok)) continue;
      } else if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
        tok.kind = TokenKind::kPunct;
        tok.text = "->";
        Advance();
        Advance();
      } else if (std::string_view("{}();:,.=+-*/").find(c) != std::string_view::npos) {
        tok.kind = TokenKind::kPunct;
        tok.text = std::string(1, c);
        Advance();
      } else {
        std::size_t len = Utf8Length(text_, pos_);
        Error(len == 0 ? "invalid UTF-8 byte" : "unexpected character", line_, column_);
        Advance();
        continue;
      }
      tokens.push_back(std::move(tok));
    }
    Token end;
    end.line = line_;
    end.column = column_;
    tokens.push_back(end);
    return tokens;
  }

 private:
  void Error(std::string msg, int line, int column) {
    diags_.push_back({Severity::kError, std::move(msg), line, column});
  }

  // Moves past one code point (one byte for malformed input).
  void Advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
      ++pos_;
      return;
    }
    std::size_t len = Utf8Length(text_, pos_);
    pos_ += len == 0 ? 1 : len;
    ++column_;
  }

  void SkipSpaceAndComments() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        Advance();
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') {
          if (Utf8Length(text_, pos_) == 0) Error("invalid UTF-8 byte", line_, column_);
          Advance();
        }
      } else {
        return;
      }
    }
  }

  bool LexNumber(Token& tok) {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && IsDigit(text_[pos_])) Advance();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      Advance();
      while (pos_ < text_.size() && IsDigit(text_[pos_])) Advance();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_;
      int save_col = column_;
      Advance();
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) Advance();
      if (pos_ >= text_.size() || !IsDigit(text_[pos_])) {
        pos_ = save;
        column_ = save_col;
        Error("malformed exponent in number", tok.line, tok.column);
        Advance();
        return false;
      }
      while (pos_ < text_.size() && IsDigit(text_[pos_])) Advance();
    }
    if (pos_ < text_.size() && IsIdentStart(text_[pos_])) {
      Error("number immediately followed by a name", tok.line, tok.column);
      while (pos_ < text_.size() && IsIdentChar(text_[pos_])) Advance();
      return false;
    }
    tok.kind = TokenKind::kNumber;
    tok.text = std::string(text_.substr(start, pos_ - start));
    auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(),
                                     tok.number);
    if (ec != std::errc() || !std::isfinite(tok.number)) {
      Error("number " + tok.text + " is out of range", tok.line, tok.column);
      return false;
    }
    return true;
  }

  bool LexString(Token& tok) {
    Advance();  // opening quote
    std::string value;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '"') {
        Advance();
        tok.kind = TokenKind::kString;
        tok.text = std::move(value);
        return true;
      }
      if (c == '\n') break;
      if (c == '\\') {
        Advance();
        if (pos_ < text_.size() && (text_[pos_] == '"' || text_[pos_] == '\\')) {
          value += text_[pos_];
          Advance();
          continue;
        }
        Error("unknown escape sequence in string", line_, column_);
        continue;
      }
      std::size_t len = Utf8Length(text_, pos_);
      if (len == 0) {
        Error("invalid UTF-8 byte", line_, column_);
        Advance();
        continue;
      }
      value.append(text_.substr(pos_, len));
      Advance();
    }
    Error("unterminated string", tok.line, tok.column);
    return false;
  }

  std::string_view text_;
  std::vector<Diagnostic>& diags_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace

std::vector<Token> Tokenize(std::string_view text, std::vector<Diagnostic>& diagnostics) {
  return Lexer(text, diagnostics).Run();
}

bool IsReserved(std::string_view word) {
  for (std::string_view r : kReserved) {
    if (r == word) return true;
  }
  return false;
}

}  // namespace redvote::dsl
