// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "redvote/compose/expr.h"

#include <cmath>

#include "redvote/compose/kinds.h"
#include "redvote/error.h"

namespace redvote {

Expr Expr::Number(double value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kNumber;
  n->number = value;
  return Expr(std::move(n));
}

Expr Expr::OutputRef(std::string instance, std::string param) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kOutputRef;
  n->instance = std::move(instance);
  n->name = std::move(param);
  return Expr(std::move(n));
}

Expr Expr::Param(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kParam;
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::Binary(char op, Expr lhs, Expr rhs) {
  if (op != '+' && op != '-' && op != '*' && op != '/') {
    throw ValidationError(std::string("unsupported operator '") + op + "'");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::kBinary;
  n->op = op;
  n->lhs = std::make_shared<const Expr>(std::move(lhs));
  n->rhs = std::make_shared<const Expr>(std::move(rhs));
  return Expr(std::move(n));
}

bool Expr::IsConstant() const {
  switch (kind()) {
    case Kind::kNumber: return true;
    case Kind::kBinary: return lhs().IsConstant() && rhs().IsConstant();
    default: return false;
  }
}

double Expr::Evaluate(const std::function<double(const Expr&)>& leaf) const {
  switch (kind()) {
    case Kind::kNumber: return number();
    case Kind::kOutputRef:
    case Kind::kParam: return leaf(*this);
    case Kind::kBinary: break;
  }
  const double a = lhs().Evaluate(leaf);
  const double b = rhs().Evaluate(leaf);
  double r = 0.0;
  switch (op()) {
    case '+': r = a + b; break;
    case '-': r = a - b; break;
    case '*': r = a * b; break;
    case '/':
      if (b == 0.0) throw NumericError("division by zero in expression");
      r = a / b;
      break;
  }
  if (!std::isfinite(r)) throw NumericError("expression evaluated to a non-finite value");
  return r;
}

void Expr::CollectLeaves(std::vector<const Expr*>& out) const {
  switch (kind()) {
    case Kind::kNumber: return;
    case Kind::kOutputRef:
    case Kind::kParam: out.push_back(this); return;
    case Kind::kBinary:
      lhs().CollectLeaves(out);
      rhs().CollectLeaves(out);
      return;
  }
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expr::Kind::kNumber: return a.number() == b.number();
    case Expr::Kind::kOutputRef: return a.instance() == b.instance() && a.name() == b.name();
    case Expr::Kind::kParam: return a.name() == b.name();
    case Expr::Kind::kBinary:
      return a.op() == b.op() && a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
  return false;
}

std::string_view ToString(Formalism formalism) {
  return formalism == Formalism::kBayes ? "BAYES" : "CTMC";
}

std::string_view ToString(ParamKind kind) {
  switch (kind) {
    case ParamKind::kProbability: return "probability";
    case ParamKind::kRate: return "rate";
    case ParamKind::kRatio: return "ratio";
  }
  return "?";
}

std::optional<ParamKind> ParseParamKind(std::string_view text) {
  if (text == "probability") return ParamKind::kProbability;
  if (text == "rate") return ParamKind::kRate;
  if (text == "ratio") return ParamKind::kRatio;
  return std::nullopt;
}

}  // namespace redvote
