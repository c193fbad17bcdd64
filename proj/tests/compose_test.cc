// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include <doctest.h>

#include <algorithm>

#include "oracles.h"
#include "redvote/compose/engine.h"
#include "redvote/error.h"
#include "redvote/nmr/failure_model.h"

namespace redvote {
namespace {

using testing::RelErr;

Expr N(double v) { return Expr::Number(v); }
Expr Ref(const char* inst, const char* param) { return Expr::OutputRef(inst, param); }
Expr Mul(Expr a, Expr b) { return Expr::Binary('*', std::move(a), std::move(b)); }

ModelInstance Phi(std::string name, double par1, double par2, double par3) {
  return {std::move(name),
          {true, "failure2oo2"},
          {{"PAR_1", N(par1)}, {"PAR_2", N(par2)}, {"PAR_3", N(par3)}}};
}

ModelInstance Mu(std::string name, const char* phi, const char* level = "maintenance5") {
  return {std::move(name),
          {true, level},
          {{"PAR_4", Ref(phi, "PAR_4")},
           {"PAR_5", Ref(phi, "PAR_5")},
           {"PAR_6", N(1.0)},
           {"PAR_7", N(1e-2)},
           {"PAR_8", N(1e-4)},
           {"PAR_9", N(3.0)}}};
}

Workflow CaseStudy(double par1, double par3) {
  Workflow wf;
  wf.name = "case-study";
  wf.instances = {Phi("phi", par1, 0.1, par3), Mu("mu", "phi")};
  wf.exports = {{"HFR_2OO3", Mul(N(3.0), Ref("mu", "PAR_10"))},
                {"PAR_4", Ref("phi", "PAR_4")},
                {"PAR_5", Ref("phi", "PAR_5")}};
  return wf;
}

std::string ValidationMessage(Workflow wf) {
  try {
    ValidateWorkflow(std::move(wf));
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

bool Contains(const std::string& s, std::string_view part) {
  return s.find(part) != std::string::npos;
}

TEST_CASE("case study validates with phi before mu") {
  Workflow wf = CaseStudy(1.666e-5, 0.1);
  std::swap(wf.instances[0], wf.instances[1]);
  auto v = ValidateWorkflow(wf);
  CHECK(v.order() == std::vector<std::size_t>{1, 0});
  CHECK(v.dependencies(0) == std::vector<std::size_t>{1});
}

TEST_CASE("empty workflow") {
  auto v = ValidateWorkflow(Workflow{"w", {}, {}, {}});
  CHECK(v.order().empty());
  auto r = RunWorkflow(v);
  CHECK(r.instances.empty());
  CHECK(r.exports.empty());
}

TEST_CASE("case study runs reproduce the reference figures") {
  auto r1 = RunWorkflow(ValidateWorkflow(CaseStudy(1.666e-5, 0.1)));
  CHECK(RelErr(r1.Output("phi", "PAR_4"), 2.19e-6) <= 0.01);
  CHECK(RelErr(r1.Output("phi", "PAR_5"), 4.8e-13) <= 0.01);
  CHECK(RelErr(r1.Export("HFR_2OO3"), 3.33e-7) <= 0.01);
  CHECK(r1.Export("HFR_2OO3") == 3.0 * r1.Output("mu", "PAR_10"));
  CHECK(r1.Output("mu", "HFR_2OO3") == r1.Export("HFR_2OO3"));
  CHECK(!r1.provenance.empty());
  CHECK_THROWS_AS(r1.Output("mu", "PAR_99"), ValidationError);
  CHECK_THROWS_AS(r1.Export("nope"), ValidationError);
  auto r2 = RunWorkflow(ValidateWorkflow(CaseStudy(1e-5, 3e-4)));
  CHECK(RelErr(r2.Output("phi", "PAR_5"), 7.81e-16) <= 0.01);
  // 9.008e-10 against the reference 9.1e-10; see the acceptance suite.
  CHECK(RelErr(r2.Export("HFR_2OO3"), 9.008e-10) <= 1e-3);
}

TEST_CASE("a single failure instance matches the direct interface bit for bit") {
  Workflow wf{"one", {}, {Phi("phi", 1.666e-5, 0.1, 0.1)}, {{"P5", Ref("phi", "PAR_5")}}};
  auto r = RunWorkflow(ValidateWorkflow(wf));
  auto direct = nmr::FailureInterface({1.666e-5, 0.1, 0.1});
  CHECK(r.Output("phi", "PAR_4") == *direct.par4);
  CHECK(r.Export("P5") == *direct.par5);
}

TEST_CASE("runs are deterministic") {
  auto v = ValidateWorkflow(CaseStudy(1.666e-5, 0.1));
  CHECK(RunWorkflow(v) == RunWorkflow(v));
}

TEST_CASE("every topological order gives the same result") {
  Workflow wf;
  wf.name = "diamond";
  wf.instances = {Phi("a", 1.666e-5, 0.1, 0.1), Phi("b", 1e-5, 0.1, 3e-4), Mu("ma", "a"),
                  Mu("mb", "b", "maintenance4")};
  wf.exports = {{"sum", Expr::Binary('+', Ref("ma", "PAR_10"), Ref("mb", "PAR_10"))}};
  auto v = ValidateWorkflow(wf);
  const SolveResult base = RunWorkflow(v);
  std::vector<std::size_t> order = {0, 1, 2, 3};
  int valid = 0, rejected = 0;
  do {
    bool topo = true;
    for (std::size_t k = 0; k < order.size(); ++k) {
      for (std::size_t dep : v.dependencies(order[k])) {
        if (std::find(order.begin(), order.begin() + k, dep) == order.begin() + k) topo = false;
      }
    }
    if (topo) {
      CHECK(RunWorkflow(v, order) == base);
      ++valid;
    } else {
      CHECK_THROWS_AS(RunWorkflow(v, order), ValidationError);
      ++rejected;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  CHECK(valid == 6);
  CHECK(rejected == 18);
  CHECK_THROWS_AS(RunWorkflow(v, std::vector<std::size_t>{0, 1, 2}), ValidationError);
  CHECK_THROWS_AS(RunWorkflow(v, std::vector<std::size_t>{0, 0, 2, 3}), ValidationError);
}

TEST_CASE("maintenance classes with the same interface are interchangeable") {
  Workflow five = CaseStudy(1.666e-5, 0.1);
  Workflow four = five;
  four.instances[1].class_ref.name = "maintenance4";
  auto r5 = RunWorkflow(ValidateWorkflow(five));
  auto r4 = RunWorkflow(ValidateWorkflow(four));
  CHECK(r4.Output("phi", "PAR_4") == r5.Output("phi", "PAR_4"));
  CHECK(RelErr(r4.Export("HFR_2OO3"), r5.Export("HFR_2OO3")) <= 0.20);
}

TEST_CASE("export arithmetic identities") {
  Workflow wf = CaseStudy(1.666e-5, 0.1);
  wf.exports = {{"x", Ref("mu", "PAR_10")},
                {"three_x", Mul(N(3.0), Ref("mu", "PAR_10"))},
                {"x_minus_x", Expr::Binary('-', Ref("mu", "PAR_10"), Ref("mu", "PAR_10"))},
                {"x_over_x", Expr::Binary('/', Ref("mu", "PAR_10"), Ref("mu", "PAR_10"))}};
  auto r = RunWorkflow(ValidateWorkflow(wf));
  CHECK(r.Export("three_x") == 3.0 * r.Export("x"));
  CHECK(r.Export("x_minus_x") == 0.0);
  CHECK(r.Export("x_over_x") == 1.0);
  CHECK(r.exports[0].first == "x");
}

TEST_CASE("division by zero in an export is a numeric error") {
  Workflow wf{"z", {}, {Phi("phi", 0.0, 0.1, 0.1)},
              {{"m", Expr::Binary('/', N(1.0), Ref("phi", "PAR_5"))}}};
  CHECK_THROWS_AS(RunWorkflow(ValidateWorkflow(wf)), NumericError);
}

TEST_CASE("validation errors") {
  SUBCASE("self reference is a cycle") {
    Workflow wf = CaseStudy(1.666e-5, 0.1);
    wf.instances[1].bindings[0].value = Ref("mu", "PAR_10");
    CHECK(Contains(ValidationMessage(wf), "binding cycle: mu -> mu"));
  }
  SUBCASE("longer cycle prints its path") {
    Workflow wf;
    wf.name = "loop";
    wf.instances = {Mu("m1", "m2"), Mu("m2", "m1")};
    // Outputs PAR_4/PAR_5 do not exist on maintenance instances, so bind
    // through PAR_10 instead.
    for (auto& inst : wf.instances) {
      const char* other = inst.name == "m1" ? "m2" : "m1";
      inst.bindings[0].value = Ref(other, "PAR_10");
      inst.bindings[1].value = Mul(N(1e-9), Ref(other, "PAR_10"));
    }
    CHECK(Contains(ValidationMessage(wf), "binding cycle: m1 -> m2 -> m1"));
  }
  SUBCASE("unbound input") {
    Workflow wf = CaseStudy(1.666e-5, 0.1);
    wf.instances[0].bindings.pop_back();
    CHECK(Contains(ValidationMessage(wf), "unbound input phi.PAR_3"));
  }
  SUBCASE("unknown builtin names the template") {
    Workflow wf = CaseStudy(1.666e-5, 0.1);
    wf.instances[1].class_ref.name = "maintenance6";
    CHECK(Contains(ValidationMessage(wf), "maintenance6"));
  }
  SUBCASE("unknown local model") {
    Workflow wf = CaseStudy(1.666e-5, 0.1);
    wf.instances[1].class_ref = {false, "mine"};
    CHECK(Contains(ValidationMessage(wf), "mine"));
  }
  SUBCASE("kind mismatch: probability bound to a rate input") {
    Workflow wf = CaseStudy(1.666e-5, 0.1);
    wf.instances[1].bindings[2].value = Ref("phi", "PAR_4");  // PAR_6 is a rate
    CHECK(Contains(ValidationMessage(wf), "kind mismatch"));
  }
  SUBCASE("kind mismatch: adding a rate to a probability") {
    Workflow wf = CaseStudy(1.666e-5, 0.1);
    wf.instances[1].bindings[0].value =
        Expr::Binary('+', Ref("phi", "PAR_4"), Ref("phi", "HR_2OO2"));
    CHECK(Contains(ValidationMessage(wf), "kind mismatch"));
  }
  SUBCASE("constant outside the probability range") {
    Workflow wf = CaseStudy(1.666e-5, 0.1);
    wf.instances[0].bindings[0].value = N(1.5);
    CHECK(Contains(ValidationMessage(wf), "kind mismatch"));
  }
  SUBCASE("constant expressions are folded before the range check") {
    Workflow wf = CaseStudy(1.666e-5, 0.1);
    wf.instances[0].bindings[0].value = Expr::Binary('/', N(1.0), N(60000.0));
    CHECK(ValidationMessage(wf).empty());
  }
  SUBCASE("unknown input name") {
    Workflow wf = CaseStudy(1.666e-5, 0.1);
    wf.instances[0].bindings.push_back({"PAR_42", N(0.1)});
    CHECK(Contains(ValidationMessage(wf), "PAR_42"));
  }
  SUBCASE("input bound twice") {
    Workflow wf = CaseStudy(1.666e-5, 0.1);
    wf.instances[0].bindings.push_back({"PAR_1", N(0.1)});
    CHECK(Contains(ValidationMessage(wf), "more than once"));
  }
  SUBCASE("reference to a missing output") {
    Workflow wf = CaseStudy(1.666e-5, 0.1);
    wf.exports.push_back({"bad", Ref("phi", "PAR_10")});
    CHECK(Contains(ValidationMessage(wf), "phi.PAR_10"));
  }
  SUBCASE("reference to a missing instance") {
    Workflow wf = CaseStudy(1.666e-5, 0.1);
    wf.exports.push_back({"bad", Ref("psi", "PAR_4")});
    CHECK(Contains(ValidationMessage(wf), "psi"));
  }
  SUBCASE("duplicate instance and export names") {
    Workflow wf = CaseStudy(1.666e-5, 0.1);
    wf.instances.push_back(Phi("phi", 1e-5, 0.1, 0.1));
    CHECK(Contains(ValidationMessage(wf), "duplicate instance"));
    wf = CaseStudy(1.666e-5, 0.1);
    wf.exports.push_back(wf.exports[0]);
    CHECK(Contains(ValidationMessage(wf), "duplicate output"));
  }
  SUBCASE("bare parameters are only allowed in inline models") {
    Workflow wf = CaseStudy(1.666e-5, 0.1);
    wf.exports.push_back({"bad", Expr::Param("PAR_4")});
    CHECK(!ValidationMessage(wf).empty());
  }
}

TEST_CASE("inline models") {
  InlineCtmc chain;
  chain.name = "two";
  chain.params = {{"up", Direction::kInput, ParamKind::kRate, std::nullopt},
                  {"down", Direction::kInput, ParamKind::kRate, 2.0}};
  chain.states = {"ok", "ko"};
  chain.initial = "ok";
  chain.rates = {{"ok", "ko", Expr::Param("down")}, {"ko", "ok", Mul(N(2.0), Expr::Param("up"))}};

  InlineBayes net;
  net.name = "coin";
  net.nodes = {{"c", {"H", "T"}, {}, {0.25, 0.75}},
               {"d", {"y", "n"}, {"c"}, {1.0, 0.0, 0.5, 0.5}}};

  Workflow wf;
  wf.name = "inline";
  wf.models = {chain, net};
  wf.instances = {{"b", {false, "coin"}, {}},
                  {"t", {false, "two"}, {{"up", N(3.0)}}}};
  wf.exports = {{"ko", Ref("t", "P_ko")}, {"dy", Ref("b", "P_d_y")}};
  auto r = RunWorkflow(ValidateWorkflow(wf));
  // pi(ko) = down / (down + 2 up)
  CHECK(r.Export("ko") == doctest::Approx(2.0 / 8.0).epsilon(1e-15));
  CHECK(r.Export("dy") == doctest::Approx(0.25 + 0.75 * 0.5).epsilon(1e-15));

  SUBCASE("undeclared parameter in a rate") {
    Workflow bad = wf;
    std::get<InlineCtmc>(bad.models[0]).rates[0].rate = Expr::Param("gamma");
    CHECK(Contains(ValidationMessage(bad), "gamma"));
  }
  SUBCASE("self-loop in an inline chain") {
    Workflow bad = wf;
    std::get<InlineCtmc>(bad.models[0]).rates[0].to = "ok";
    CHECK(Contains(ValidationMessage(bad), "self-loop"));
  }
  SUBCASE("a rate that evaluates to zero is a numeric error") {
    Workflow bad = wf;
    bad.instances[1].bindings[0].value = N(0.0);
    CHECK_THROWS_AS(RunWorkflow(ValidateWorkflow(bad)), Error);
  }
  SUBCASE("bad inline CPT") {
    Workflow bad = wf;
    std::get<InlineBayes>(bad.models[1]).nodes[0].cpt = {0.5, 0.6};
    CHECK(!ValidationMessage(bad).empty());
  }
  SUBCASE("net of a BAYES instance") {
    auto v = ValidateWorkflow(wf);
    CHECK(InstanceNet(v, "b").size() == 2);
    CHECK_THROWS_AS(InstanceNet(v, "t"), ValidationError);
    CHECK_THROWS_AS(InstanceNet(v, "zz"), ValidationError);
  }
}

TEST_CASE("sweeps") {
  auto v = ValidateWorkflow(CaseStudy(1.666e-5, 0.1));
  SUBCASE("factor one reproduces the plain run") {
    std::vector<double> f = {1.0};
    auto rows = Sweep(v, "phi.PAR_1", f);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].result == RunWorkflow(v));
  }
  SUBCASE("par1 scaled by 0.1") {
    std::vector<double> f = {1.0, 0.1};
    auto rows = Sweep(v, "phi.PAR_1", f);
    const double r4 = rows[0].result.Export("PAR_4") / rows[1].result.Export("PAR_4");
    const double r5 = rows[0].result.Export("PAR_5") / rows[1].result.Export("PAR_5");
    CHECK(std::fabs(r4 / 10.0 - 1.0) <= 0.05);
    CHECK(std::fabs(r5 / 100.0 - 1.0) <= 0.10);
  }
  SUBCASE("par3 scaled by 0.1 leaves par4 unchanged") {
    std::vector<double> f = {1.0, 0.1};
    auto rows = Sweep(v, "phi.PAR_3", f);
    CHECK(RelErr(rows[1].result.Export("PAR_4"), rows[0].result.Export("PAR_4")) <= 1e-4);
  }
  SUBCASE("rows keep the factor order") {
    std::vector<double> f = {0.5, 2.0, 0.25, 1.0, 3.0, 0.125};
    auto rows = Sweep(v, "mu.PAR_6", f);
    REQUIRE(rows.size() == f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      CHECK(rows[i].factor == f[i]);
      CHECK(rows[i].result == Sweep(v, "mu.PAR_6", std::span(&f[i], 1))[0].result);
    }
  }
  SUBCASE("an unbound input with a default can be swept") {
    std::vector<double> f = {1.0, 0.5};
    auto rows = Sweep(v, "phi.TRANSIENT_RATIO", f);
    CHECK(rows[0].result == RunWorkflow(v));
    CHECK(rows[1].result.Export("PAR_4") != rows[0].result.Export("PAR_4"));
  }
  SUBCASE("reference-bound and unknown targets are rejected") {
    std::vector<double> f = {1.0};
    CHECK_THROWS_AS(Sweep(v, "mu.PAR_4", f), ValidationError);
    CHECK_THROWS_AS(Sweep(v, "mu.PAR_77", f), ValidationError);
    CHECK_THROWS_AS(Sweep(v, "nu.PAR_6", f), ValidationError);
    CHECK_THROWS_AS(Sweep(v, "PAR_6", f), ValidationError);
  }
}

TEST_CASE("expressions") {
  Expr e = Expr::Binary('-', Mul(N(2.0), Ref("a", "x")), Ref("a", "y"));
  CHECK(!e.IsConstant());
  CHECK(Mul(N(2.0), N(3.0)).IsConstant());
  std::vector<const Expr*> leaves;
  e.CollectLeaves(leaves);
  REQUIRE(leaves.size() == 2);
  CHECK(leaves[0]->name() == "x");
  CHECK(leaves[1]->name() == "y");
  auto leaf = [](const Expr& l) { return l.name() == "x" ? 5.0 : 1.0; };
  CHECK(e.Evaluate(leaf) == 9.0);
  CHECK(e == Expr::Binary('-', Mul(N(2.0), Ref("a", "x")), Ref("a", "y")));
  CHECK(!(e == Expr::Binary('+', Mul(N(2.0), Ref("a", "x")), Ref("a", "y"))));
  CHECK_THROWS_AS(Expr::Binary('/', N(1.0), N(0.0)).Evaluate(leaf), NumericError);
  CHECK_THROWS_AS(Mul(N(1e300), N(1e300)).Evaluate(leaf), NumericError);
}

}  // namespace
}  // namespace redvote
