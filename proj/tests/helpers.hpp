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

#pragma once

#include <algorithm>
#include <cstdlib>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cliffsynth/circuit.hpp"
#include "cliffsynth/cnf.hpp"
#include "cliffsynth/pauli.hpp"
#include "cliffsynth/tableau.hpp"

namespace cliffsynth::testing {

inline bool clause_satisfied(const std::vector<int>& clause,
                             const std::vector<bool>& assignment) {
  for (int lit : clause) {
    const std::size_t v = static_cast<std::size_t>(std::abs(lit));
    if (assignment[v] == (lit > 0)) {
      return true;
    }
  }
  return false;
}

inline bool formula_satisfied(const CnfFormula& f,
                              const std::vector<bool>& assignment) {
  for (const auto& clause : f.clauses()) {
    if (!clause_satisfied(clause, assignment)) {
      return false;
    }
  }
  return true;
}

// Exhaustive satisfiability decision; only for formulas with few variables.
inline bool exhaustively_satisfiable(const CnfFormula& f) {
  const std::size_t n = f.num_vars();
  std::vector<bool> assignment(n + 1, false);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    for (std::size_t v = 0; v < n; ++v) {
      assignment[v + 1] = (mask >> v) & 1U;
    }
    if (formula_satisfied(f, assignment)) {
      return true;
    }
  }
  return false;
}

inline Tableau tableau_from_strings(const std::vector<std::string>& rows,
                                    TableauMode mode = TableauMode::State) {
  std::vector<PauliRow> parsed;
  for (const auto& s : rows) {
    parsed.push_back(PauliRow::from_string(s));
  }
  const std::size_t n = parsed.front().num_qubits();
  return Tableau(n, mode, std::move(parsed));
}

inline CliffordCircuit random_circuit(std::size_t n, std::size_t length,
                                      std::mt19937_64& rng) {
  CliffordCircuit c(n);
  std::uniform_int_distribution<int> kind(0, n > 1 ? 2 : 1);
  std::uniform_int_distribution<std::size_t> qubit(0, n - 1);
  for (std::size_t i = 0; i < length; ++i) {
    switch (kind(rng)) {
    case 0:
      c.append(Gate::h(qubit(rng)));
      break;
    case 1:
      c.append(Gate::s(qubit(rng)));
      break;
    default: {
      const std::size_t a = qubit(rng);
      std::size_t b = qubit(rng);
      while (b == a) {
        b = qubit(rng);
      }
      c.append(Gate::cnot(a, b));
      break;
    }
    }
  }
  return c;
}

// Every element of the signed Pauli group generated by the tableau rows,
// as serialized strings. Brute force; n <= 3 only.
inline std::set<std::string> expand_group(const Tableau& t) {
  std::set<std::string> elements;
  const std::size_t n = t.num_rows();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    PauliRow acc(t.num_qubits());
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) {
        acc.mul_left(t.row(i));
      }
    }
    elements.insert(acc.to_string());
  }
  return elements;
}

// All 2*4^n signed Pauli rows on n qubits.
inline std::vector<PauliRow> all_signed_rows(std::size_t n) {
  std::vector<PauliRow> rows;
  static constexpr char letters[] = {'I', 'X', 'Y', 'Z'};
  const std::size_t combos = std::size_t{1} << (2 * n);
  for (std::size_t combo = 0; combo < combos; ++combo) {
    std::string s;
    for (std::size_t j = 0; j < n; ++j) {
      s.push_back(letters[(combo >> (2 * j)) & 3U]);
    }
    rows.push_back(PauliRow::from_string("+" + s));
    rows.push_back(PauliRow::from_string("-" + s));
  }
  return rows;
}

// Every gate on n qubits, in a fixed order.
inline std::vector<Gate> all_gates(std::size_t n) {
  std::vector<Gate> gates;
  for (std::size_t q = 0; q < n; ++q) {
    gates.push_back(Gate::h(q));
  }
  for (std::size_t q = 0; q < n; ++q) {
    gates.push_back(Gate::s(q));
  }
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t t = 0; t < n; ++t) {
      if (c != t) {
        gates.push_back(Gate::cnot(c, t));
      }
    }
  }
  return gates;
}

}  // namespace cliffsynth::testing
