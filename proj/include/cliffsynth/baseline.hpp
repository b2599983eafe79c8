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

#include <stdexcept>
#include <vector>

#include "cliffsynth/circuit.hpp"
#include "cliffsynth/tableau.hpp"

namespace cliffsynth {

namespace detail {

enum class ReductionOp { H, Sdg, Cnot };

struct AppliedOp {
  ReductionOp op;
  std::size_t q0;
  std::size_t q1;
};

}  // namespace detail

// Deterministic polynomial-time synthesis of a State tableau: reduce the
// target's generators to the identity tableau with {H, S^dag, CNOT}
// conjugations plus generator rescaling (rowsum), then emit the inverse
// gate sequence. The output is correct by construction but makes no
// optimality claim; it serves as the guaranteed-feasible upper bound and
// as the heuristic comparison point.
//
// Reduction order per qubit q: pick an X pivot (through H if only a Z is
// available), clear the X column by rowsum, rewrite the pivot row to a
// plain X_q (S^dag for Y letters, CNOT fans out X letters, H+CNOT for Z
// letters), at which point commutation forces every other row to identity
// on q, and a final H turns the pivot into Z_q. Negative phases are fixed
// last by conjugating with X = H S^dag S^dag H on the affected qubit.
inline CliffordCircuit baseline_synthesize(const Tableau& target) {
  if (target.mode() != TableauMode::State) {
    throw std::invalid_argument("baseline synthesis takes a State tableau");
  }
  const std::size_t n = target.num_qubits();
  Tableau t = target.canonicalized();  // throws on rank deficiency

  std::vector<detail::AppliedOp> applied;
  const auto apply_h = [&](std::size_t q) {
    t.apply_h(q);
    applied.push_back({detail::ReductionOp::H, q, 0});
  };
  const auto apply_sdg = [&](std::size_t q) {
    t.apply_sdg(q);
    applied.push_back({detail::ReductionOp::Sdg, q, 0});
  };
  const auto apply_cnot = [&](std::size_t c, std::size_t tq) {
    t.apply_cnot(c, tq);
    applied.push_back({detail::ReductionOp::Cnot, c, tq});
  };

  for (std::size_t q = 0; q < n; ++q) {
    // Skip qubits that already look like the identity tableau (up to the
    // sign, which the final pass repairs).
    const auto column_done = [&] {
      if (t.row(q).x(q) || !t.row(q).z(q)) {
        return false;
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (j != q && (t.row(q).x(j) || t.row(q).z(j))) {
          return false;
        }
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (i != q && (t.row(i).x(q) || t.row(i).z(q))) {
          return false;
        }
      }
      return true;
    };
    if (column_done()) {
      continue;
    }

    // 1. X pivot on qubit q among rows q..n-1.
    std::size_t pivot = n;
    for (std::size_t i = q; i < n && pivot == n; ++i) {
      if (t.row(i).x(q)) {
        pivot = i;
      }
    }
    if (pivot == n) {
      for (std::size_t i = q; i < n; ++i) {
        if (t.row(i).z(q)) {
          apply_h(q);
          pivot = i;
          break;
        }
      }
    }
    if (pivot == n) {
      throw std::logic_error("tableau lost full rank during reduction");
    }
    t.swap_rows(q, pivot);

    // 2. Only the pivot row keeps an X on qubit q.
    for (std::size_t i = 0; i < n; ++i) {
      if (i != q && t.row(i).x(q)) {
        t.rowsum(i, q);
      }
    }

    // 3. Strip the pivot row down to a plain X_q.
    for (std::size_t j = 0; j < q; ++j) {
      if (t.row(q).z(j)) {
        t.rowsum(q, j);  // rows < q are +Z_j already
      }
    }
    for (std::size_t j = q; j < n; ++j) {
      if (t.row(q).x(j) && t.row(q).z(j)) {
        apply_sdg(j);
      }
    }
    for (std::size_t j = q + 1; j < n; ++j) {
      if (t.row(q).x(j)) {
        apply_cnot(q, j);
      }
    }
    for (std::size_t j = q + 1; j < n; ++j) {
      if (t.row(q).z(j)) {
        apply_h(j);
        apply_cnot(q, j);
      }
    }

    // 4. Commutation with X_q clears column q everywhere else; land on Z_q.
    apply_h(q);
  }

  // 5. Phase fixes: conjugate by X wherever a generator came out negative.
  for (std::size_t q = 0; q < n; ++q) {
    if (t.row(q).sign()) {
      apply_h(q);
      apply_sdg(q);
      apply_sdg(q);
      apply_h(q);
    }
  }

  // The reduction maps target -> identity; the circuit is its inverse.
  CliffordCircuit circuit(n);
  for (auto it = applied.rbegin(); it != applied.rend(); ++it) {
    switch (it->op) {
    case detail::ReductionOp::H:
      circuit.append(Gate::h(it->q0));
      break;
    case detail::ReductionOp::Sdg:
      circuit.append(Gate::s(it->q0));
      break;
    case detail::ReductionOp::Cnot:
      circuit.append(Gate::cnot(it->q0, it->q1));
      break;
    }
  }
  return circuit;
}

}  // namespace cliffsynth
