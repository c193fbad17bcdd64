// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

/// @file expr.h
/// Scalar binding expressions: constants, references, and + - * /.

#ifndef REDVOTE_COMPOSE_EXPR_H_
#define REDVOTE_COMPOSE_EXPR_H_

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace redvote {

/// Immutable expression tree with value semantics (nodes are shared).
class Expr {
 public:
  enum class Kind {
    kNumber,     ///< Decimal constant.
    kOutputRef,  ///< instance.PARAM, an output of another instance.
    kParam,      ///< Bare PARAM, an input of the enclosing inline model.
    kBinary,
  };

  static Expr Number(double value);
  static Expr OutputRef(std::string instance, std::string param);
  static Expr Param(std::string name);
  static Expr Binary(char op, Expr lhs, Expr rhs);

  Kind kind() const { return node_->kind; }
  double number() const { return node_->number; }
  /// Instance name of an OutputRef.
  const std::string& instance() const { return node_->instance; }
  /// Parameter name of an OutputRef or Param.
  const std::string& name() const { return node_->name; }
  char op() const { return node_->op; }
  const Expr& lhs() const { return *node_->lhs; }
  const Expr& rhs() const { return *node_->rhs; }

  /// True when the tree contains no references or parameters.
  bool IsConstant() const;

  /// Evaluates with `leaf` resolving OutputRef and Param nodes.
  /// Throws NumericError on division by zero or a non-finite result.
  double Evaluate(const std::function<double(const Expr&)>& leaf) const;

  /// Every OutputRef / Param leaf, left to right.
  void CollectLeaves(std::vector<const Expr*>& out) const;

  /// Structural equality; numbers compare by value.
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node {
    Kind kind = Kind::kNumber;
    double number = 0.0;
    std::string instance;
    std::string name;
    char op = 0;
    std::shared_ptr<const Expr> lhs;
    std::shared_ptr<const Expr> rhs;
  };
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

}  // namespace redvote

#endif  // REDVOTE_COMPOSE_EXPR_H_
