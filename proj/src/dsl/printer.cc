// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include <charconv>
#include <sstream>

#include "redvote/dsl/dsl.h"

namespace redvote::dsl {

namespace {

int Precedence(const Expr& e) {
  if (e.kind() != Expr::Kind::kBinary) return 3;
  return (e.op() == '+' || e.op() == '-') ? 1 : 2;
}

void PrintExpr(const Expr& e, std::ostream& os) {
  switch (e.kind()) {
    case Expr::Kind::kNumber:
      os << FormatNumber(e.number());
      return;
    case Expr::Kind::kOutputRef:
      os << e.instance() << '.' << e.name();
      return;
    case Expr::Kind::kParam:
      os << e.name();
      return;
    case Expr::Kind::kBinary:
      break;
  }
  const int prec = Precedence(e);
  const bool wrap_lhs = Precedence(e.lhs()) < prec;
  const bool wrap_rhs = Precedence(e.rhs()) <= prec;
  if (wrap_lhs) os << '(';
  PrintExpr(e.lhs(), os);
  if (wrap_lhs) os << ')';
  os << ' ' << e.op() << ' ';
  if (wrap_rhs) os << '(';
  PrintExpr(e.rhs(), os);
  if (wrap_rhs) os << ')';
}

std::string Quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

template <class T, class F>
void PrintList(std::ostream& os, const std::vector<T>& items, F&& each) {
  os << '(';
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) os << ", ";
    each(items[i]);
  }
  os << ')';
}

void PrintModel(const InlineCtmc& c, std::ostream& os) {
  os << "  ctmc " << c.name << " {\n";
  for (const auto& p : c.params) {
    os << "    param " << p.name << " : " << ToString(p.kind);
    if (p.default_value) os << " = " << FormatNumber(*p.default_value);
    os << ";\n";
  }
  for (const auto& s : c.states) {
    os << "    state " << s << (s == c.initial ? " init" : "") << ";\n";
  }
  for (const auto& r : c.rates) {
    os << "    rate " << r.from << " -> " << r.to << " : ";
    PrintExpr(r.rate, os);
    os << ";\n";
  }
  os << "  }\n";
}

void PrintModel(const InlineBayes& b, std::ostream& os) {
  os << "  bayes " << b.name << " {\n";
  for (const auto& n : b.nodes) {
    os << "    node " << n.id << " states ";
    PrintList(os, n.states, [&](const std::string& s) { os << s; });
    if (!n.parents.empty()) {
      os << " parents ";
      PrintList(os, n.parents, [&](const std::string& s) { os << s; });
    }
    os << " cpt ";
    PrintList(os, n.cpt, [&](double v) { os << FormatNumber(v); });
    os << ";\n";
  }
  os << "  }\n";
}

}  // namespace

std::string FormatNumber(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string Print(const Workflow& workflow) {
  std::ostringstream os;
  os << "workflow " << Quote(workflow.name) << " {\n";
  for (const auto& m : workflow.models) {
    std::visit([&](const auto& model) { PrintModel(model, os); }, m);
  }
  for (const auto& inst : workflow.instances) {
    os << "  instance " << inst.name << " : "
       << (inst.class_ref.builtin ? "builtin." : "") << inst.class_ref.name << " {\n";
    for (const auto& b : inst.bindings) {
      os << "    " << b.param << " = ";
      PrintExpr(b.value, os);
      os << ";\n";
    }
    os << "  }\n";
  }
  for (const auto& e : workflow.exports) {
    os << "  output " << e.name << " = ";
    PrintExpr(e.value, os);
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace redvote::dsl
