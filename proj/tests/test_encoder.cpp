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
#include "cliffsynth/encoder.hpp"
#include "helpers.hpp"

using namespace cliffsynth;
using cliffsynth::testing::random_circuit;
using cliffsynth::testing::tableau_from_strings;

namespace {

constexpr Duration kMinute{60.0};

SolveOutcome solve_instance(const SynthesisInstance& inst,
                            const EncodedInstance& enc) {
  (void)inst;
  CdclSolver solver;
  return solver.solve(enc.formula, {}, kMinute);
}

bool is_satisfiable(const SynthesisInstance& inst) {
  const EncodedInstance enc = encode(inst);
  return solve_instance(inst, enc).status == SolveStatus::Sat;
}

}  // namespace

TEST_CASE("gate choice enumeration") {
  CHECK(enumerate_choices(1).size() == 3);
  CHECK(enumerate_choices(2).size() == 7);
  CHECK(enumerate_choices(3).size() == 13);
  for (std::size_t n = 1; n <= 10; ++n) {
    CHECK(enumerate_choices(n).size() == 1 + n + n * n);
  }

  SECTION("deterministic order") {
    const auto choices = enumerate_choices(2);
    CHECK(choices[0].is_none());
    CHECK(choices[1] == GateChoice{GateChoice::Kind::H, 0, 0});
    CHECK(choices[2] == GateChoice{GateChoice::Kind::H, 1, 0});
    CHECK(choices[3] == GateChoice{GateChoice::Kind::S, 0, 0});
    CHECK(choices[4] == GateChoice{GateChoice::Kind::S, 1, 0});
    CHECK(choices[5] == GateChoice{GateChoice::Kind::Cnot, 0, 1});
    CHECK(choices[6] == GateChoice{GateChoice::Kind::Cnot, 1, 0});
  }
}

TEST_CASE("encoding structure") {
  SECTION("variable groups per boundary and step") {
    for (std::size_t n = 1; n <= 6; ++n) {
      SynthesisInstance inst{random_tableau(n, 7 * n), std::nullopt, 2,
                             std::nullopt, MatchMode::Canonical, true};
      const EncodedInstance enc = encode(inst);
      CHECK(enc.tableau_vars_per_boundary == n * (2 * n + 1));
      CHECK(enc.choices.size() == 1 + n + n * n);
      CHECK(enc.tableau_vars.size() == 3);
      CHECK(enc.choice_vars.size() == 2);
    }
  }

  SECTION("two qubits: 10 tableau variables, 14 row-update groups") {
    SynthesisInstance inst{tableau_from_strings({"+XX", "+ZZ"}), std::nullopt,
                           3, std::nullopt, MatchMode::Canonical, true};
    const EncodedInstance enc = encode(inst);
    CHECK(enc.tableau_vars_per_boundary == 10);
    CHECK(enc.row_update_groups_per_step == 14);
  }

  SECTION("single qubit, one step, exact mode: frozen counts") {
    SynthesisInstance inst{Tableau::identity(1), std::nullopt, 1,
                           std::nullopt, MatchMode::Exact, true};
    const EncodedInstance enc = encode(inst);
    CHECK(enc.formula.num_vars() == 10);
    CHECK(enc.formula.num_clauses() == 35);
  }

  SECTION("encoding twice gives identical formulas") {
    SynthesisInstance inst{random_tableau(3, 11), std::nullopt, 4,
                           std::size_t{2}, MatchMode::Canonical, true};
    const EncodedInstance a = encode(inst);
    const EncodedInstance b = encode(inst);
    CHECK(a.formula.num_vars() == b.formula.num_vars());
    CHECK(a.formula.to_dimacs() == b.formula.to_dimacs());
  }

  SECTION("name map covers choices and tableau bits only") {
    SynthesisInstance inst{tableau_from_strings({"+XX", "+ZZ"}), std::nullopt,
                           2, std::nullopt, MatchMode::Canonical, true};
    const EncodedInstance enc = encode(inst);
    const auto& names = enc.formula.name_map();
    // 3 boundaries x 10 tableau bits + 2 steps x 7 choices.
    CHECK(names.size() == 3 * 10 + 2 * 7);
    CHECK(names.count("g_0_none") == 1);
    CHECK(names.count("g_1_cx_0_1") == 1);
    CHECK(names.count("x_0_0_0") == 1);
    CHECK(names.count("r_2_1") == 1);
    CHECK(enc.formula.num_vars() > names.size());  // auxiliaries exist
  }

  SECTION("cnot literals cover every step") {
    SynthesisInstance inst{tableau_from_strings({"+XX", "+ZZ"}), std::nullopt,
                           3, std::nullopt, MatchMode::Canonical, true};
    const EncodedInstance enc = encode(inst);
    CHECK(enc.cnot_literals.size() == 3 * 2);
  }
}

TEST_CASE("trivial instances") {
  SECTION("target equals initial at T = 0") {
    for (const auto mode : {MatchMode::Exact, MatchMode::Canonical}) {
      SynthesisInstance inst{Tableau::identity(2), std::nullopt, 0,
                             std::nullopt, mode, true};
      CHECK(is_satisfiable(inst));
    }
  }

  SECTION("equivalent generating set of |00> is accepted canonically") {
    // {+IZ, +ZI} generates the same state as the identity tableau.
    SynthesisInstance inst{tableau_from_strings({"+IZ", "+ZI"}), std::nullopt,
                           0, std::nullopt, MatchMode::Canonical, true};
    CHECK(is_satisfiable(inst));
  }

  SECTION("non-identity target is unsatisfiable at T = 0") {
    SynthesisInstance inst{tableau_from_strings({"+XX", "+ZZ"}), std::nullopt,
                           0, std::nullopt, MatchMode::Canonical, true};
    CHECK_FALSE(is_satisfiable(inst));
  }
}

TEST_CASE("bell target feasibility boundary") {
  const Tableau bell = tableau_from_strings({"+XX", "+ZZ"});
  for (const auto mode : {MatchMode::Exact, MatchMode::Canonical}) {
    SynthesisInstance at_one{bell, std::nullopt, 1, std::nullopt, mode, true};
    CHECK_FALSE(is_satisfiable(at_one));

    SynthesisInstance at_two{bell, std::nullopt, 2, std::nullopt, mode, true};
    const EncodedInstance enc = encode(at_two);
    const auto out = solve_instance(at_two, enc);
    REQUIRE(out.status == SolveStatus::Sat);

    const CliffordCircuit circuit = extract_circuit(enc, out.model);
    CHECK(gate_count(circuit) == 2);
    CHECK(two_qubit_count(circuit) == 1);
    CHECK(canonically_equal(simulate(circuit, Tableau::identity(2)), bell));
  }
}

TEST_CASE("extracted circuits simulate to the target") {
  std::mt19937_64 rng(404);
  int sat_cases = 0;
  for (int rep = 0; rep < 25; ++rep) {
    const std::size_t n = 1 + rng() % 3;
    const std::size_t length = rng() % 6;
    const auto witness = random_circuit(n, length, rng);
    const Tableau target = simulate(witness, Tableau::identity(n));

    SynthesisInstance inst{target, std::nullopt, length, std::nullopt,
                           MatchMode::Canonical, true};
    const EncodedInstance enc = encode(inst);
    const auto out = solve_instance(inst, enc);
    // The witness circuit itself fits in `length` steps.
    REQUIRE(out.status == SolveStatus::Sat);
    ++sat_cases;
    const CliffordCircuit circuit = extract_circuit(enc, out.model);
    CHECK(gate_count(circuit) <= length);
    CHECK(canonically_equal(simulate(circuit, Tableau::identity(n)), target));
  }
  CHECK(sat_cases == 25);
}

TEST_CASE("exact mode pins the rows bit for bit") {
  std::mt19937_64 rng(405);
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t n = 1 + rng() % 2;
    const auto witness = random_circuit(n, 3, rng);
    const Tableau target = simulate(witness, Tableau::identity(n));

    SynthesisInstance inst{target, std::nullopt, 3, std::nullopt,
                           MatchMode::Exact, true};
    const EncodedInstance enc = encode(inst);
    const auto out = solve_instance(inst, enc);
    REQUIRE(out.status == SolveStatus::Sat);
    const CliffordCircuit circuit = extract_circuit(enc, out.model);
    CHECK(simulate(circuit, Tableau::identity(n)) == target);
  }

  SECTION("custom initial tableaus are honored") {
    const Tableau bell = tableau_from_strings({"+XX", "+ZZ"});
    SynthesisInstance inst{bell, bell, 0, std::nullopt, MatchMode::Exact,
                           true};
    CHECK(is_satisfiable(inst));
  }
}

TEST_CASE("unitary tableau synthesis in exact mode") {
  Tableau cnot_unitary = Tableau::identity(2, TableauMode::Unitary);
  cnot_unitary.apply_cnot(0, 1);

  SynthesisInstance at_zero{cnot_unitary, std::nullopt, 0, std::nullopt,
                            MatchMode::Exact, true};
  CHECK_FALSE(is_satisfiable(at_zero));

  SynthesisInstance at_one{cnot_unitary, std::nullopt, 1, std::nullopt,
                           MatchMode::Exact, true};
  const EncodedInstance enc = encode(at_one);
  CHECK(enc.tableau_vars_per_boundary == 4 * 5);
  const auto out = solve_instance(at_one, enc);
  REQUIRE(out.status == SolveStatus::Sat);
  const CliffordCircuit circuit = extract_circuit(enc, out.model);
  REQUIRE(circuit.gates.size() == 1);
  CHECK(circuit.gates[0] == Gate::cnot(0, 1));
}

TEST_CASE("monotonicity in the time-step limit") {
  std::mt19937_64 rng(406);
  for (int rep = 0; rep < 8; ++rep) {
    const std::size_t n = 1 + rng() % 3;
    const Tableau target = random_tableau(n, rng());
    for (std::size_t steps = 0; steps <= 5; ++steps) {
      SynthesisInstance at{target, std::nullopt, steps, std::nullopt,
                           MatchMode::Canonical, true};
      if (is_satisfiable(at)) {
        SynthesisInstance next{target, std::nullopt, steps + 1, std::nullopt,
                               MatchMode::Canonical, true};
        CHECK(is_satisfiable(next));
        break;
      }
    }
  }
}

TEST_CASE("two-qubit bound") {
  const Tableau bell = tableau_from_strings({"+XX", "+ZZ"});

  SECTION("entangling the Bell state needs one CNOT") {
    SynthesisInstance no_cnots{bell, std::nullopt, 4, std::size_t{0},
                               MatchMode::Canonical, true};
    CHECK_FALSE(is_satisfiable(no_cnots));

    SynthesisInstance one_cnot{bell, std::nullopt, 4, std::size_t{1},
                               MatchMode::Canonical, true};
    CHECK(is_satisfiable(one_cnot));
  }

  SECTION("product states need none") {
    const Tableau plus = tableau_from_strings({"+XI", "+IX"});
    SynthesisInstance inst{plus, std::nullopt, 4, std::size_t{0},
                           MatchMode::Canonical, true};
    CHECK(is_satisfiable(inst));
  }
}

TEST_CASE("symmetry breaking preserves feasibility") {
  std::mt19937_64 rng(407);
  for (int rep = 0; rep < 12; ++rep) {
    const std::size_t n = 1 + rng() % 2;
    const Tableau target = random_tableau(n, rng());
    const std::size_t steps = rng() % 5;
    SynthesisInstance with{target, std::nullopt, steps, std::nullopt,
                           MatchMode::Canonical, true};
    SynthesisInstance without{target, std::nullopt, steps, std::nullopt,
                              MatchMode::Canonical, false};
    CHECK(is_satisfiable(with) == is_satisfiable(without));
  }
}

TEST_CASE("encoder argument validation") {
  const Tableau bell = tableau_from_strings({"+XX", "+ZZ"});

  SECTION("canonical mode needs the all-zero initial state") {
    SynthesisInstance inst{bell, bell, 2, std::nullopt, MatchMode::Canonical,
                           true};
    CHECK_THROWS_AS(encode(inst), std::invalid_argument);
  }

  SECTION("canonical mode rejects unitary tableaus") {
    SynthesisInstance inst{Tableau::identity(2, TableauMode::Unitary),
                           std::nullopt, 2, std::nullopt,
                           MatchMode::Canonical, true};
    CHECK_THROWS_AS(encode(inst), std::invalid_argument);
  }

  SECTION("initial and target shapes must agree") {
    SynthesisInstance inst{bell, Tableau::identity(3), 2, std::nullopt,
                           MatchMode::Exact, true};
    CHECK_THROWS_AS(encode(inst), std::invalid_argument);
  }

  SECTION("corrupt models are reported") {
    SynthesisInstance inst{bell, std::nullopt, 2, std::nullopt,
                           MatchMode::Canonical, true};
    const EncodedInstance enc = encode(inst);
    std::vector<bool> model(enc.formula.num_vars() + 1, false);
    CHECK_THROWS_AS(extract_circuit(enc, model), std::logic_error);
    for (const auto& lit : enc.choice_vars[0]) {
      model[static_cast<std::size_t>(lit.var)] = true;
    }
    CHECK_THROWS_AS(extract_circuit(enc, model), std::logic_error);
  }
}
