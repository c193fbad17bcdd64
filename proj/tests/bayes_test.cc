// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include <doctest.h>

#include <random>

#include "oracles.h"
#include "redvote/bayes/bayes_net.h"
#include "redvote/bayes/inference.h"
#include "redvote/error.h"

namespace redvote::bayes {
namespace {

using testing::EnumerateJoint;
using testing::RandomNet;

Variable Binary(std::string id) { return {std::move(id), "", {"T", "F"}}; }

// rain -> wet <- sprinkler
BayesNet Sprinkler() {
  return BayesNet::Build(
      {Binary("wet"), Binary("rain"), Binary("sprinkler")},
      {{"rain", {}, {0.2, 0.8}},
       {"sprinkler", {}, {0.4, 0.6}},
       {"wet", {"rain", "sprinkler"}, {0.99, 0.01, 0.8, 0.2, 0.9, 0.1, 0.0, 1.0}}});
}

TEST_CASE("variables are stored in id order") {
  BayesNet net = Sprinkler();
  CHECK(net.variable(0).id == "rain");
  CHECK(net.variable(1).id == "sprinkler");
  CHECK(net.variable(2).id == "wet");
  CHECK(net.Entry(2, std::vector<std::size_t>{1, 0}, 0) == doctest::Approx(0.9));
}

TEST_CASE("root with no evidence returns its prior") {
  auto d = Marginal(Sprinkler(), "rain");
  CHECK(d["T"] == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(d["F"] == doctest::Approx(0.8).epsilon(1e-14));
}

TEST_CASE("hand-computed posterior") {
  // P(wet=T) = .2*.4*.99 + .2*.6*.8 + .8*.4*.9 + 0 = 0.4632
  BayesNet net = Sprinkler();
  CHECK(Marginal(net, "wet")["T"] == doctest::Approx(0.4632).epsilon(1e-13));
  // P(rain=T | wet=T) = (.0792 + .096) / .4632
  auto d = Marginal(net, "rain", {{"wet", "T"}});
  CHECK(d["T"] == doctest::Approx(0.1752 / 0.4632).epsilon(1e-13));
  CHECK(EvidenceProbability(net, {{"wet", "T"}}) == doctest::Approx(0.4632).epsilon(1e-13));
}

TEST_CASE("evidence on the target is a point mass") {
  auto d = Marginal(Sprinkler(), "rain", {{"rain", "F"}});
  CHECK(d["T"] == 0.0);
  CHECK(d["F"] == 1.0);
}

TEST_CASE("zero-probability evidence raises") {
  // wet=T is impossible when neither cause is active.
  CHECK_THROWS_AS(Marginal(Sprinkler(), "rain", {{"wet", "T"}, {"rain", "F"}, {"sprinkler", "F"}}),
                  NumericError);
  CHECK(EvidenceProbability(Sprinkler(), {{"wet", "T"}, {"rain", "F"}, {"sprinkler", "F"}}) == 0.0);
}

TEST_CASE("posterior report covers all variables in id order") {
  auto rows = PosteriorReport(Sprinkler(), {{"wet", "T"}});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].variable == "rain");
  CHECK(rows[2].variable == "wet");
  CHECK(rows[2]["T"] == 1.0);
}

TEST_CASE("joint probability is the product of CPT entries") {
  CHECK(JointProbability(Sprinkler(), {{"rain", "T"}, {"sprinkler", "F"}, {"wet", "T"}}) ==
        doctest::Approx(0.2 * 0.6 * 0.8));
  CHECK_THROWS_AS(JointProbability(Sprinkler(), {{"rain", "T"}}), ValidationError);
}

TEST_CASE("elimination order excludes query and evidence and is deterministic") {
  BayesNet net = Sprinkler();
  std::vector<std::string> q = {"wet"};
  auto order = EliminationOrder(net, q, {});
  CHECK(order == std::vector<std::string>{"rain", "sprinkler"});
  CHECK(EliminationOrder(net, q, {{"rain", "T"}}) == std::vector<std::string>{"sprinkler"});
}

TEST_CASE("build rejects malformed networks") {
  SUBCASE("row sum off") {
    CHECK_THROWS_AS(BayesNet::Build({Binary("a")}, {{"a", {}, {0.5, 0.6}}}), ValidationError);
  }
  SUBCASE("row sum within tolerance is accepted") {
    CHECK_NOTHROW(BayesNet::Build({Binary("a")}, {{"a", {}, {0.5, 0.5 + 5e-10}}}));
  }
  SUBCASE("negative entry") {
    CHECK_THROWS_AS(BayesNet::Build({Binary("a")}, {{"a", {}, {1.5, -0.5}}}), ValidationError);
  }
  SUBCASE("wrong row count") {
    CHECK_THROWS_AS(BayesNet::Build({Binary("a"), Binary("b")},
                                    {{"a", {}, {0.5, 0.5}}, {"b", {"a"}, {0.5, 0.5}}}),
                    ValidationError);
  }
  SUBCASE("dangling parent") {
    CHECK_THROWS_AS(BayesNet::Build({Binary("a")}, {{"a", {"zz"}, {0.5, 0.5, 0.5, 0.5}}}),
                    ValidationError);
  }
  SUBCASE("duplicate id") {
    CHECK_THROWS_AS(BayesNet::Build({Binary("a"), Binary("a")}, {{"a", {}, {0.5, 0.5}}}),
                    ValidationError);
  }
  SUBCASE("missing CPT") {
    CHECK_THROWS_AS(BayesNet::Build({Binary("a"), Binary("b")}, {{"a", {}, {0.5, 0.5}}}),
                    ValidationError);
  }
  SUBCASE("cycle is reported with its path") {
    try {
      BayesNet::Build({Binary("a"), Binary("b")},
                      {{"a", {"b"}, {0.5, 0.5, 0.5, 0.5}}, {"b", {"a"}, {0.5, 0.5, 0.5, 0.5}}});
      FAIL("expected a cycle error");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("a -> b -> a") != std::string::npos);
    }
  }
  SUBCASE("unknown state and variable lookups") {
    BayesNet net = Sprinkler();
    CHECK_THROWS_AS(net.IndexOf("nope"), ValidationError);
    CHECK_THROWS_AS(net.StateIndex(0, "maybe"), ValidationError);
    CHECK_THROWS_AS(Marginal(net, "rain", {{"wet", "maybe"}}), ValidationError);
  }
}

TEST_CASE("variable elimination matches enumeration on random nets") {
  std::mt19937_64 rng(20261017);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    auto spec = RandomNet(rng, n, 2, trial % 4 == 0);
    BayesNet net = BayesNet::Build(spec.variables, spec.cpts);
    std::map<std::string, std::string> ev;
    Evidence evidence;
    const int k = static_cast<int>(rng() % 3);
    for (int e = 0; e < k && e < n; ++e) {
      const auto& v = spec.variables[rng() % n];
      const auto& s = v.states[rng() % v.states.size()];
      ev[v.id] = s;
      evidence[v.id] = s;
    }
    for (const auto& v : spec.variables) {
      auto joint = EnumerateJoint(spec, v.id, ev);
      double pe = 0.0;
      for (double x : joint) pe += x;
      if (pe == 0.0) {
        CHECK_THROWS_AS(Marginal(net, v.id, evidence), NumericError);
        continue;
      }
      auto d = Marginal(net, v.id, evidence);
      for (std::size_t s = 0; s < joint.size(); ++s) {
        CHECK(std::fabs(d.probabilities[s] - joint[s] / pe) <= 1e-10);
      }
      ++checked;
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("multi-state random nets match enumeration") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    auto spec = RandomNet(rng, 2 + static_cast<int>(rng() % 5), 4, false);
    BayesNet net = BayesNet::Build(spec.variables, spec.cpts);
    const auto& obs = spec.variables.back();
    std::map<std::string, std::string> ev{{obs.id, obs.states[0]}};
    Evidence evidence{{obs.id, obs.states[0]}};
    for (const auto& v : spec.variables) {
      auto joint = EnumerateJoint(spec, v.id, ev);
      double pe = 0.0;
      for (double x : joint) pe += x;
      auto d = Marginal(net, v.id, evidence);
      for (std::size_t s = 0; s < joint.size(); ++s) {
        CHECK(std::fabs(d.probabilities[s] - joint[s] / pe) <= 1e-10);
      }
    }
  }
}

TEST_CASE("marginals sum to one") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    auto spec = RandomNet(rng, 6, 3, false);
    BayesNet net = BayesNet::Build(spec.variables, spec.cpts);
    for (const auto& d : PosteriorReport(net, {})) {
      double sum = 0.0;
      for (double p : d.probabilities) sum += p;
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

}  // namespace
}  // namespace redvote::bayes
