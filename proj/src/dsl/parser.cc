// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

/// @file parser.cc
/// Recursive-descent parser for `.rvm` workflows with item-level error
/// recovery.

#include <cerrno>
#include <cstring>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "lexer.h"
#include "redvote/dsl/dsl.h"

namespace redvote::dsl {

namespace {

struct SyntaxError {
  std::string message;
  int line;
  int column;
};

struct Position {
  int line;
  int column;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::vector<Diagnostic>& diags)
      : tokens_(std::move(tokens)), diags_(diags) {}

  std::optional<Workflow> Run() {
    Workflow wf;
    try {
      if (Peek().IsKeyword("version")) {
        Next();
        const Token& v = Peek();
        if (v.kind != TokenKind::kNumber) Fail("expected version number", v);
        if (v.number != 1.0) Report("unsupported format version " + v.text, v);
        Next();
        ExpectPunct(";");
      }
      ExpectKeyword("workflow");
      const Token& name = Peek();
      if (name.kind != TokenKind::kString) Fail("expected workflow name string", name);
      wf.name = name.text;
      Next();
      ExpectPunct("{");
    } catch (const SyntaxError& e) {
      Report(e);
      return std::nullopt;
    }
    while (!Peek().IsPunct("}") && Peek().kind != TokenKind::kEnd) {
      try {
        ParseItem(wf);
      } catch (const SyntaxError& e) {
        Report(e);
        Recover();
      }
    }
    if (Peek().kind == TokenKind::kEnd) {
      Report("missing '}' at end of workflow", Peek());
    } else {
      Next();
      if (Peek().kind != TokenKind::kEnd) Report("unexpected content after workflow", Peek());
    }
    return wf;
  }

 private:
  const Token& Peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }

  const Token& Next() {
    const Token& t = tokens_[pos_];
    if (t.IsPunct("{")) ++depth_;
    if (t.IsPunct("}")) --depth_;
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void Fail(std::string message, const Token& at) {
    throw SyntaxError{std::move(message), at.line, at.column};
  }

  void Report(std::string message, const Token& at) { Report(message, {at.line, at.column}); }
  void Report(std::string message, Position at) {
    diags_.push_back({Severity::kError, std::move(message), at.line, at.column});
  }
  void Report(const SyntaxError& e) { Report(e.message, {e.line, e.column}); }

  static std::string Describe(const Token& t) {
    switch (t.kind) {
      case TokenKind::kEnd: return "end of input";
      case TokenKind::kString: return "string \"" + t.text + "\"";
      case TokenKind::kNumber: return "number " + t.text;
      default: return "'" + t.text + "'";
    }
  }

  void ExpectPunct(std::string_view p) {
    if (!Peek().IsPunct(p)) {
      Fail("expected '" + std::string(p) + "', found " + Describe(Peek()), Peek());
    }
    Next();
  }

  void ExpectKeyword(std::string_view k) {
    if (!Peek().IsKeyword(k)) {
      Fail("expected '" + std::string(k) + "', found " + Describe(Peek()), Peek());
    }
    Next();
  }

  const Token& ExpectName(std::string_view what) {
    const Token& t = Peek();
    if (t.kind != TokenKind::kIdent) {
      Fail("expected " + std::string(what) + ", found " + Describe(t), t);
    }
    if (IsReserved(t.text)) {
      Fail("'" + t.text + "' is a reserved word and cannot be used as " + std::string(what), t);
    }
    return Next();
  }

  double ExpectNumber() {
    const Token& t = Peek();
    if (t.kind != TokenKind::kNumber) Fail("expected number, found " + Describe(t), t);
    Next();
    return t.number;
  }

  // Skips to the start of the next workflow item or the closing brace.
  void Recover() {
    while (Peek().kind != TokenKind::kEnd) {
      const Token& t = Peek();
      if (depth_ == 1 && (t.IsPunct("}") || t.IsKeyword("instance") ||
                          t.IsKeyword("output") || t.IsKeyword("ctmc") ||
                          t.IsKeyword("bayes"))) {
        return;
      }
      Next();
    }
  }

  void ClaimName(std::map<std::string, Position>& taken, const Token& name,
                 std::string_view what) {
    if (!taken.emplace(name.text, Position{name.line, name.column}).second) {
      Report("duplicate " + std::string(what) + " name '" + name.text + "'", name);
    }
  }

  void ParseItem(Workflow& wf) {
    const Token& t = Peek();
    if (t.IsKeyword("instance")) return ParseInstance(wf);
    if (t.IsKeyword("output")) return ParseExport(wf);
    if (t.IsKeyword("ctmc")) return ParseCtmc(wf);
    if (t.IsKeyword("bayes")) return ParseBayes(wf);
    Fail("expected 'instance', 'output', 'ctmc' or 'bayes', found " + Describe(t), t);
  }

  void ParseInstance(Workflow& wf) {
    Next();
    const Token& name = ExpectName("instance name");
    ModelInstance inst{name.text, {}, {}};
    ExpectPunct(":");
    if (Peek().IsKeyword("builtin")) {
      Next();
      ExpectPunct(".");
      inst.class_ref = {true, ExpectName("template name").text};
    } else {
      inst.class_ref = {false, ExpectName("model name").text};
    }
    ExpectPunct("{");
    std::map<std::string, Position> bound;
    while (!Peek().IsPunct("}")) {
      const Token& param = ExpectName("parameter name");
      ClaimName(bound, param, "binding");
      ExpectPunct("=");
      Expr value = ParseExpr(false);
      ExpectPunct(";");
      inst.bindings.push_back({param.text, std::move(value)});
    }
    Next();
    ClaimName(instance_names_, name, "instance");
    wf.instances.push_back(std::move(inst));
  }

  void ParseExport(Workflow& wf) {
    Next();
    const Token& name = ExpectName("output name");
    ExpectPunct("=");
    Expr value = ParseExpr(false);
    ExpectPunct(";");
    ClaimName(export_names_, name, "output");
    wf.exports.push_back({name.text, std::move(value)});
  }

  void ParseCtmc(Workflow& wf) {
    Next();
    const Token& name = ExpectName("model name");
    InlineCtmc c;
    c.name = name.text;
    ExpectPunct("{");
    std::map<std::string, Position> params, states;
    std::set<std::pair<std::string, std::string>> pairs;
    std::vector<std::pair<Position, std::string>> state_uses;
    std::vector<std::pair<Position, std::string>> param_uses;
    bool has_init = false;
    while (!Peek().IsPunct("}")) {
      const Token& kw = Peek();
      if (kw.IsKeyword("param")) {
        Next();
        const Token& p = ExpectName("parameter name");
        ExpectPunct(":");
        const Token& kind_tok = Peek();
        if (kind_tok.kind != TokenKind::kIdent) {
          Fail("expected parameter kind, found " + Describe(kind_tok), kind_tok);
        }
        auto kind = ParseParamKind(kind_tok.text);
        if (!kind) {
          Report("unknown parameter kind '" + kind_tok.text +
                     "' (expected probability, rate or ratio)",
                 kind_tok);
        }
        Next();
        ParamDecl decl{p.text, Direction::kInput, kind.value_or(ParamKind::kRate),
                       std::nullopt};
        if (Peek().IsPunct("=")) {
          Next();
          decl.default_value = ExpectNumber();
        }
        ExpectPunct(";");
        ClaimName(params, p, "parameter");
        c.params.push_back(std::move(decl));
      } else if (kw.IsKeyword("state")) {
        Next();
        const Token& s = ExpectName("state name");
        bool init = false;
        if (Peek().IsKeyword("init")) {
          init = true;
          Next();
        }
        ExpectPunct(";");
        ClaimName(states, s, "state");
        c.states.push_back(s.text);
        if (init) {
          if (has_init) Report("more than one initial state", s);
          has_init = true;
          c.initial = s.text;
        }
      } else if (kw.IsKeyword("rate")) {
        Next();
        const Token& from = ExpectName("state name");
        ExpectPunct("->");
        const Token& to = ExpectName("state name");
        ExpectPunct(":");
        std::size_t first_leaf = param_uses_.size();
        Expr rate = ParseExpr(true);
        ExpectPunct(";");
        for (std::size_t k = first_leaf; k < param_uses_.size(); ++k) {
          param_uses.push_back(param_uses_[k]);
        }
        param_uses_.resize(first_leaf);
        if (from.text == to.text) {
          Report("self-loop transition " + from.text + " -> " + to.text, from);
        } else if (!pairs.emplace(from.text, to.text).second) {
          Report("duplicate transition " + from.text + " -> " + to.text, from);
        }
        state_uses.push_back({{from.line, from.column}, from.text});
        state_uses.push_back({{to.line, to.column}, to.text});
        c.rates.push_back({from.text, to.text, std::move(rate)});
      } else {
        Fail("expected 'param', 'state' or 'rate', found " + Describe(kw), kw);
      }
    }
    Next();
    if (c.states.empty()) Report("ctmc '" + c.name + "' declares no states", name);
    if (!has_init && !c.states.empty()) {
      Report("ctmc '" + c.name + "' has no initial state (mark one with 'init')", name);
    }
    for (const auto& [pos, s] : state_uses) {
      if (!states.count(s)) Report("undeclared state '" + s + "'", pos);
    }
    for (const auto& [pos, p] : param_uses) {
      if (!params.count(p)) Report("undeclared parameter '" + p + "'", pos);
    }
    ClaimName(model_names_, name, "model");
    wf.models.emplace_back(std::move(c));
  }

  std::vector<std::string> ParseNameList(std::string_view what,
                                         std::vector<Position>* positions = nullptr) {
    ExpectPunct("(");
    std::vector<std::string> names;
    do {
      if (!names.empty()) Next();  // ','
      const Token& t = ExpectName(what);
      names.push_back(t.text);
      if (positions) positions->push_back({t.line, t.column});
    } while (Peek().IsPunct(","));
    ExpectPunct(")");
    return names;
  }

  void ParseBayes(Workflow& wf) {
    Next();
    const Token& name = ExpectName("model name");
    InlineBayes b;
    b.name = name.text;
    ExpectPunct("{");
    std::map<std::string, Position> nodes;
    std::vector<Position> node_pos;
    std::vector<std::vector<Position>> parent_pos;
    while (!Peek().IsPunct("}")) {
      ExpectKeyword("node");
      const Token& id = ExpectName("node name");
      InlineBayes::Node node;
      node.id = id.text;
      ExpectKeyword("states");
      std::vector<Position> state_pos;
      node.states = ParseNameList("state name", &state_pos);
      std::set<std::string> seen;
      for (std::size_t k = 0; k < node.states.size(); ++k) {
        if (!seen.insert(node.states[k]).second) {
          Report("duplicate state '" + node.states[k] + "'", state_pos[k]);
        }
      }
      if (node.states.size() < 2) Report("node '" + node.id + "' needs at least two states", id);
      std::vector<Position> ppos;
      if (Peek().IsKeyword("parents")) {
        Next();
        node.parents = ParseNameList("parent name", &ppos);
      }
      ExpectKeyword("cpt");
      ExpectPunct("(");
      do {
        if (!node.cpt.empty()) Next();
        node.cpt.push_back(ExpectNumber());
      } while (Peek().IsPunct(","));
      ExpectPunct(")");
      ExpectPunct(";");
      ClaimName(nodes, id, "node");
      node_pos.push_back({id.line, id.column});
      parent_pos.push_back(std::move(ppos));
      b.nodes.push_back(std::move(node));
    }
    Next();
    std::map<std::string, std::size_t> card;
    for (const auto& n : b.nodes) card.emplace(n.id, n.states.size());
    for (std::size_t k = 0; k < b.nodes.size(); ++k) {
      const auto& n = b.nodes[k];
      std::size_t rows = 1;
      bool known = true;
      for (std::size_t j = 0; j < n.parents.size(); ++j) {
        auto it = card.find(n.parents[j]);
        if (it == card.end()) {
          Report("unknown parent '" + n.parents[j] + "'", parent_pos[k][j]);
          known = false;
        } else {
          rows *= it->second;
        }
      }
      if (known && n.cpt.size() != rows * n.states.size()) {
        Report("cpt of '" + n.id + "' has " + std::to_string(n.cpt.size()) +
                   " entries, expected " + std::to_string(rows * n.states.size()),
               node_pos[k]);
      }
    }
    ClaimName(model_names_, name, "model");
    wf.models.emplace_back(std::move(b));
  }

  Expr ParseExpr(bool in_ctmc) {
    Expr lhs = ParseTerm(in_ctmc);
    while (Peek().IsPunct("+") || Peek().IsPunct("-")) {
      char op = Next().text[0];
      lhs = Expr::Binary(op, std::move(lhs), ParseTerm(in_ctmc));
    }
    return lhs;
  }

  Expr ParseTerm(bool in_ctmc) {
    Expr lhs = ParseAtom(in_ctmc);
    while (Peek().IsPunct("*") || Peek().IsPunct("/")) {
      char op = Next().text[0];
      lhs = Expr::Binary(op, std::move(lhs), ParseAtom(in_ctmc));
    }
    return lhs;
  }

  Expr ParseAtom(bool in_ctmc) {
    const Token& t = Peek();
    if (t.kind == TokenKind::kNumber) {
      Next();
      return Expr::Number(t.number);
    }
    if (t.IsPunct("(")) {
      Next();
      Expr e = ParseExpr(in_ctmc);
      ExpectPunct(")");
      return e;
    }
    if (t.kind == TokenKind::kIdent && !IsReserved(t.text)) {
      Next();
      if (Peek().IsPunct(".")) {
        Next();
        const Token& param = ExpectName("parameter name");
        if (in_ctmc) {
          Report("instance outputs cannot be used inside a ctmc rate; declare a "
                 "parameter and bind it on the instance",
                 t);
        }
        return Expr::OutputRef(t.text, param.text);
      }
      if (!in_ctmc) {
        Fail("expected an instance output reference 'instance.PARAM', found '" + t.text +
                 "'",
             t);
      }
      param_uses_.push_back({{t.line, t.column}, t.text});
      return Expr::Param(t.text);
    }
    Fail("expected expression, found " + Describe(t), t);
  }

  std::vector<Token> tokens_;
  std::vector<Diagnostic>& diags_;
  std::size_t pos_ = 0;
  int depth_ = 0;
  std::map<std::string, Position> instance_names_, model_names_, export_names_;
  std::vector<std::pair<Position, std::string>> param_uses_;
};

}  // namespace

std::string Diagnostic::Format(std::string_view origin) const {
  std::ostringstream os;
  os << origin << ':' << line << ':' << column << ": "
     << (severity == Severity::kError ? "error" : "warning") << ": " << message;
  return os.str();
}

ParseError::ParseError(std::string origin, std::vector<Diagnostic> diagnostics)
    : Error(diagnostics.empty() ? origin + ": parse error"
                                : diagnostics.front().Format(origin)),
      origin_(std::move(origin)),
      diagnostics_(std::move(diagnostics)) {}

ParseResult Parse(const SourceFile& source) {
  ParseResult result;
  auto tokens = Tokenize(source.text, result.diagnostics);
  auto workflow = Parser(std::move(tokens), result.diagnostics).Run();
  bool has_error = false;
  for (const auto& d : result.diagnostics) has_error |= d.severity == Severity::kError;
  if (!has_error && workflow) result.workflow = std::move(workflow);
  if (!result.ok() && !has_error) {
    result.diagnostics.push_back({Severity::kError, "parse failed", 1, 1});
  }
  return result;
}

Workflow ParseOrThrow(const SourceFile& source) {
  auto result = Parse(source);
  if (!result.ok()) throw ParseError(source.origin, std::move(result.diagnostics));
  return std::move(*result.workflow);
}

SourceFile ReadSourceFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError(path, {{Severity::kError,
                             std::string("cannot read file: ") + std::strerror(errno), 1, 1}});
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return {path, buf.str()};
}

}  // namespace redvote::dsl
