/* Copyright 2026 The cliffsynth developers

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cliffsynth/cdcl.hpp"
#include "helpers.hpp"

using namespace cliffsynth;
using cliffsynth::testing::exhaustively_satisfiable;
using cliffsynth::testing::formula_satisfied;

namespace {

constexpr Duration kMinute{60.0};

// Hole variables p[i][j] = pigeon i sits in hole j; unsatisfiable for
// holes + 1 pigeons.
CnfFormula pigeonhole(std::size_t holes) {
  const std::size_t pigeons = holes + 1;
  CnfFormula f;
  std::vector<std::vector<Literal>> p(pigeons, std::vector<Literal>(holes));
  for (auto& row : p) {
    for (auto& lit : row) {
      lit = f.new_var();
    }
  }
  for (std::size_t i = 0; i < pigeons; ++i) {
    f.add_clause(p[i]);
  }
  for (std::size_t j = 0; j < holes; ++j) {
    for (std::size_t a = 0; a < pigeons; ++a) {
      for (std::size_t b = a + 1; b < pigeons; ++b) {
        f.add_clause({~p[a][j], ~p[b][j]});
      }
    }
  }
  return f;
}

CnfFormula random_3sat(std::size_t vars, std::size_t clause_count,
                       std::mt19937_64& rng) {
  CnfFormula f;
  std::vector<Literal> lits;
  for (std::size_t v = 0; v < vars; ++v) {
    lits.push_back(f.new_var());
  }
  for (std::size_t c = 0; c < clause_count; ++c) {
    std::vector<Literal> clause;
    for (int k = 0; k < 3; ++k) {
      Literal lit = lits[rng() % vars];
      if (rng() & 1U) {
        lit = ~lit;
      }
      clause.push_back(lit);
    }
    f.add_clause(clause);
  }
  return f;
}

}  // namespace

TEST_CASE("cdcl trivial formulas") {
  CdclSolver solver;

  SECTION("single positive unit") {
    CnfFormula f;
    const Literal a = f.new_var();
    f.add_clause({a});
    const auto out = solver.solve(f, {}, kMinute);
    REQUIRE(out.status == SolveStatus::Sat);
    CHECK(out.model.at(1) == true);
  }

  SECTION("contradictory units") {
    CnfFormula f;
    const Literal a = f.new_var();
    f.add_clause({a});
    f.add_clause({~a});
    CHECK(solver.solve(f, {}, kMinute).status == SolveStatus::Unsat);
  }

  SECTION("empty clause short-circuits") {
    CnfFormula f;
    f.new_var();
    f.add_empty_clause();
    CHECK(solver.solve(f, {}, kMinute).status == SolveStatus::Unsat);
  }

  SECTION("empty formula is satisfiable") {
    CnfFormula f;
    CHECK(solver.solve(f, {}, kMinute).status == SolveStatus::Sat);
  }

  SECTION("models assign every variable") {
    CnfFormula f;
    f.new_var();
    const Literal b = f.new_var();
    f.new_var();  // never mentioned in a clause
    f.add_clause({b});
    const auto out = solver.solve(f, {}, kMinute);
    REQUIRE(out.status == SolveStatus::Sat);
    CHECK(out.model.size() == 4);
  }
}

TEST_CASE("cdcl agrees with exhaustive enumeration") {
  CdclSolver solver;
  std::mt19937_64 rng(1234);
  int sat_seen = 0;
  int unsat_seen = 0;
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t vars = 6 + rng() % 10;  // up to 15 variables
    const std::size_t clauses = vars * 3 + rng() % (vars * 3);
    const CnfFormula f = random_3sat(vars, clauses, rng);
    const bool expected = exhaustively_satisfiable(f);
    const auto out = solver.solve(f, {}, kMinute);
    if (expected) {
      ++sat_seen;
      REQUIRE(out.status == SolveStatus::Sat);
      REQUIRE(formula_satisfied(f, out.model));
    } else {
      ++unsat_seen;
      REQUIRE(out.status == SolveStatus::Unsat);
    }
  }
  // The ratio sweep should exercise both outcomes.
  CHECK(sat_seen > 30);
  CHECK(unsat_seen > 30);
}

TEST_CASE("cdcl solves structured instances") {
  CdclSolver solver;

  SECTION("pigeonhole formulas are unsatisfiable") {
    for (std::size_t holes : {std::size_t{3}, std::size_t{4}, std::size_t{5}}) {
      const CnfFormula f = pigeonhole(holes);
      CHECK(solver.solve(f, {}, kMinute).status == SolveStatus::Unsat);
    }
  }

  SECTION("pigeonhole with 4 holes cross-checked by enumeration") {
    const CnfFormula f = pigeonhole(4);  // 20 variables
    REQUIRE(f.num_vars() == 20);
    CHECK_FALSE(exhaustively_satisfiable(f));
    CHECK(solver.solve(f, {}, kMinute).status == SolveStatus::Unsat);
  }

  SECTION("large satisfiable chain propagates quickly") {
    CnfFormula f;
    std::vector<Literal> vars;
    for (int i = 0; i < 2000; ++i) {
      vars.push_back(f.new_var());
    }
    f.add_clause({vars[0]});
    for (int i = 0; i + 1 < 2000; ++i) {
      f.add_clause({~vars[i], vars[i + 1]});
    }
    const auto out = solver.solve(f, {}, kMinute);
    REQUIRE(out.status == SolveStatus::Sat);
    for (int i = 1; i <= 2000; ++i) {
      REQUIRE(out.model[i] == true);
    }
  }
}

TEST_CASE("cdcl assumptions") {
  CdclSolver solver;
  CnfFormula f;
  const Literal a = f.new_var();
  const Literal b = f.new_var();
  f.add_clause({a, b});

  SECTION("assumptions steer the model") {
    const auto out = solver.solve(f, {~a}, kMinute);
    REQUIRE(out.status == SolveStatus::Sat);
    CHECK(out.model[1] == false);
    CHECK(out.model[2] == true);
  }

  SECTION("inconsistent assumptions yield unsat") {
    CHECK(solver.solve(f, {~a, ~b}, kMinute).status == SolveStatus::Unsat);
  }

  SECTION("assumption conflicting with a unit clause") {
    CnfFormula g;
    const Literal x = g.new_var();
    g.add_clause({x});
    CHECK(solver.solve(g, {~x}, kMinute).status == SolveStatus::Unsat);
    CHECK(solver.solve(g, {x}, kMinute).status == SolveStatus::Sat);
  }

  SECTION("assumptions interact with learned clauses") {
    std::mt19937_64 rng(77);
    for (int rep = 0; rep < 100; ++rep) {
      const std::size_t vars = 6 + rng() % 8;
      CnfFormula g = random_3sat(vars, vars * 4, rng);
      std::vector<Literal> assumptions;
      for (std::size_t v = 1; v <= 2; ++v) {
        assumptions.push_back(
            Literal{static_cast<int>(v), (rng() & 1U) != 0});
      }
      // Encode the assumptions as units in a copy for the oracle.
      CnfFormula with_units = g;
      for (const auto& lit : assumptions) {
        with_units.add_clause({lit});
      }
      const bool expected = exhaustively_satisfiable(with_units);
      const auto out = solver.solve(g, assumptions, kMinute);
      REQUIRE((out.status == SolveStatus::Sat) == expected);
      if (expected) {
        REQUIRE(formula_satisfied(g, out.model));
        for (const auto& lit : assumptions) {
          REQUIRE(out.model[lit.var] == !lit.neg);
        }
      }
    }
  }

  SECTION("out-of-range assumptions are rejected") {
    CHECK_THROWS_AS(solver.solve(f, {Literal{7, false}}, kMinute),
                    std::invalid_argument);
  }
}

TEST_CASE("cdcl timeout") {
  CdclSolver solver;
  const CnfFormula f = pigeonhole(9);
  const auto out = solver.solve(f, {}, Duration{0.001});
  CHECK(out.status == SolveStatus::TimedOut);
  CHECK(out.model.empty());
}

TEST_CASE("cdcl determinism and statistics") {
  CdclSolver solver;
  std::mt19937_64 rng(99);
  const CnfFormula f = random_3sat(30, 120, rng);
  const auto first = solver.solve(f, {}, kMinute);
  const auto second = solver.solve(f, {}, kMinute);
  CHECK(first.status == second.status);
  CHECK(first.model == second.model);
  CHECK(first.stats.decisions == second.stats.decisions);
  CHECK(first.stats.conflicts == second.stats.conflicts);
  CHECK(first.stats.seconds >= 0.0);

  const CnfFormula hard = pigeonhole(5);
  const auto out = solver.solve(hard, {}, kMinute);
  CHECK(out.stats.conflicts > 0);
  CHECK(out.stats.decisions > 0);
}
