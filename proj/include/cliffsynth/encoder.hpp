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

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cliffsynth/circuit.hpp"
#include "cliffsynth/cnf.hpp"
#include "cliffsynth/tableau.hpp"

namespace cliffsynth {

// One entry of the per-time-step decision set {none, H(q), S(q), CNOT(c,t)}.
struct GateChoice {
  enum class Kind { None, H, S, Cnot };

  Kind kind = Kind::None;
  std::size_t q0 = 0;  // H/S qubit or CNOT control
  std::size_t q1 = 0;  // CNOT target

  bool is_none() const { return kind == Kind::None; }
  bool is_two_qubit() const { return kind == Kind::Cnot; }

  // Qubits the choice acts on; empty for none.
  std::vector<std::size_t> support() const {
    switch (kind) {
    case Kind::None:
      return {};
    case Kind::H:
    case Kind::S:
      return {q0};
    case Kind::Cnot:
      return {q0, q1};
    }
    return {};
  }

  std::string label() const {
    switch (kind) {
    case Kind::None:
      return "none";
    case Kind::H:
      return "h_" + std::to_string(q0);
    case Kind::S:
      return "s_" + std::to_string(q0);
    case Kind::Cnot:
      return "cx_" + std::to_string(q0) + "_" + std::to_string(q1);
    }
    return "?";
  }

  friend bool operator==(const GateChoice&, const GateChoice&) = default;
};

// Deterministic choice order: none, H(0..n-1), S(0..n-1), then CNOT over
// lexicographic ordered pairs. Size 1 + n + n^2.
inline std::vector<GateChoice> enumerate_choices(std::size_t n) {
  if (n == 0) {
    throw std::invalid_argument("choice set needs at least one qubit");
  }
  std::vector<GateChoice> choices;
  choices.reserve(1 + n + n * n);
  choices.push_back(GateChoice{});
  for (std::size_t q = 0; q < n; ++q) {
    choices.push_back(GateChoice{GateChoice::Kind::H, q, 0});
  }
  for (std::size_t q = 0; q < n; ++q) {
    choices.push_back(GateChoice{GateChoice::Kind::S, q, 0});
  }
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t t = 0; t < n; ++t) {
      if (c != t) {
        choices.push_back(GateChoice{GateChoice::Kind::Cnot, c, t});
      }
    }
  }
  return choices;
}

enum class MatchMode { Exact, Canonical };

struct SynthesisInstance {
  Tableau target;
  std::optional<Tableau> initial;  // defaults to the identity tableau
  std::size_t time_steps = 0;
  std::optional<std::size_t> two_qubit_bound;
  MatchMode match_mode = MatchMode::Canonical;
  bool symmetry_breaking = true;
};

// The SAT instance for "does some circuit with `time_steps` gate slots map
// the initial tableau to the target". Variables are grouped per time step:
// one exactly-one block of gate-choice variables, plus the tableau bits of
// the next step boundary.
//
// Exact mode pins both boundaries bit-for-bit, which is the right notion
// for Unitary tableaus. Canonical mode (State tableaus prepared from
// |0...0>) instead asks for the target *state*: the encoding runs from the
// canonicalized target rows through the inverse gate set {H, S^dag, CNOT}
// and requires the final rows to land in the stabilizer group of |0...0>,
// which is exactly "all x bits clear, all phase bits clear" with the z
// block left free. Extraction reverses the model back into a forward
// {H, S, CNOT} circuit, so any generating set of the target state is
// reachable and minimal gate counts match breadth-first search over states.
class EncodedInstance {
public:
  struct BoundaryVars {
    std::vector<std::vector<Literal>> x;  // [row][qubit]
    std::vector<std::vector<Literal>> z;
    std::vector<Literal> r;  // [row]
  };

  CnfFormula formula;
  std::vector<std::vector<Literal>> choice_vars;  // [step][choice index]
  std::vector<BoundaryVars> tableau_vars;         // [0 .. time_steps]
  std::vector<Literal> cnot_literals;             // all CNOT choices, all steps

  std::vector<GateChoice> choices;
  std::size_t num_qubits = 0;
  std::size_t num_rows = 0;
  std::size_t time_steps = 0;
  bool reversed = false;

  std::size_t tableau_vars_per_boundary = 0;
  std::size_t row_update_groups_per_step = 0;

  Literal choice_var(std::size_t step, const GateChoice& choice) const {
    for (std::size_t k = 0; k < choices.size(); ++k) {
      if (choices[k] == choice) {
        return choice_vars.at(step).at(k);
      }
    }
    throw std::invalid_argument("unknown gate choice");
  }
};

namespace detail {

class EncoderContext {
public:
  explicit EncoderContext(const SynthesisInstance& inst) : inst_(inst) {}

  EncodedInstance build() {
    const Tableau& target = inst_.target;
    const std::size_t n = target.num_qubits();
    Tableau initial = inst_.initial.value_or(
        Tableau::identity(n, target.mode()));
    if (initial.num_qubits() != n || initial.mode() != target.mode()) {
      throw std::invalid_argument(
          "initial and target tableau shapes differ");
    }

    enc_.choices = enumerate_choices(n);
    enc_.num_qubits = n;
    enc_.num_rows = target.num_rows();
    enc_.time_steps = inst_.time_steps;

    Tableau start = initial;
    if (inst_.match_mode == MatchMode::Canonical) {
      if (target.mode() != TableauMode::State) {
        throw std::invalid_argument(
            "canonical matching is defined for State tableaus");
      }
      if (!canonically_equal(initial, Tableau::identity(n))) {
        throw std::invalid_argument(
            "canonical matching requires the all-zero initial state");
      }
      enc_.reversed = true;
      start = target.canonicalized();
    }

    allocate_boundary(0);
    assert_boundary_equals(0, start);

    for (std::size_t t = 0; t < enc_.time_steps; ++t) {
      allocate_step(t);
      encode_step(t);
    }

    if (enc_.reversed) {
      assert_zero_state_membership(enc_.time_steps);
    } else {
      assert_boundary_equals(enc_.time_steps, target);
    }

    if (inst_.symmetry_breaking) {
      encode_symmetry_breaking();
    }
    if (inst_.two_qubit_bound) {
      if (*inst_.two_qubit_bound < enc_.cnot_literals.size()) {
        enc_.formula.add_at_most_k(enc_.cnot_literals,
                                   *inst_.two_qubit_bound);
      }
    }

    enc_.tableau_vars_per_boundary = enc_.num_rows * (2 * n + 1);
    enc_.row_update_groups_per_step = groups_emitted_per_step_;
    return std::move(enc_);
  }

private:
  void allocate_boundary(std::size_t t) {
    EncodedInstance::BoundaryVars vars;
    const std::size_t n = enc_.num_qubits;
    for (std::size_t i = 0; i < enc_.num_rows; ++i) {
      auto& xrow = vars.x.emplace_back();
      for (std::size_t j = 0; j < n; ++j) {
        xrow.push_back(enc_.formula.named_var(
            "x_" + std::to_string(t) + "_" + std::to_string(i) + "_" +
            std::to_string(j)));
      }
    }
    for (std::size_t i = 0; i < enc_.num_rows; ++i) {
      auto& zrow = vars.z.emplace_back();
      for (std::size_t j = 0; j < n; ++j) {
        zrow.push_back(enc_.formula.named_var(
            "z_" + std::to_string(t) + "_" + std::to_string(i) + "_" +
            std::to_string(j)));
      }
    }
    for (std::size_t i = 0; i < enc_.num_rows; ++i) {
      vars.r.push_back(enc_.formula.named_var(
          "r_" + std::to_string(t) + "_" + std::to_string(i)));
    }
    enc_.tableau_vars.push_back(std::move(vars));
  }

  void allocate_step(std::size_t t) {
    auto& step = enc_.choice_vars.emplace_back();
    for (const auto& choice : enc_.choices) {
      const Literal lit = enc_.formula.named_var(
          "g_" + std::to_string(t) + "_" + choice.label());
      step.push_back(lit);
      if (choice.is_two_qubit()) {
        enc_.cnot_literals.push_back(lit);
      }
    }
    auto& flips = flip_vars_.emplace_back();
    for (std::size_t i = 0; i < enc_.num_rows; ++i) {
      flips.push_back(enc_.formula.new_var());
    }
    allocate_boundary(t + 1);
  }

  void assert_boundary_equals(std::size_t t, const Tableau& tableau) {
    const auto& vars = enc_.tableau_vars[t];
    for (std::size_t i = 0; i < enc_.num_rows; ++i) {
      const PauliRow& row = tableau.row(i);
      for (std::size_t j = 0; j < enc_.num_qubits; ++j) {
        unit(vars.x[i][j], row.x(j));
        unit(vars.z[i][j], row.z(j));
      }
      unit(vars.r[i], row.sign());
    }
  }

  // Membership of every row in the stabilizer group of |0...0>, i.e. a
  // positive product of Z operators: x bits and phase bits clear, z free.
  void assert_zero_state_membership(std::size_t t) {
    const auto& vars = enc_.tableau_vars[t];
    for (std::size_t i = 0; i < enc_.num_rows; ++i) {
      for (std::size_t j = 0; j < enc_.num_qubits; ++j) {
        unit(vars.x[i][j], false);
      }
      unit(vars.r[i], false);
    }
  }

  void encode_step(std::size_t t) {
    auto& f = enc_.formula;
    f.add_exactly_one(enc_.choice_vars[t]);

    std::size_t groups = 0;
    for (std::size_t k = 0; k < enc_.choices.size(); ++k) {
      const GateChoice& choice = enc_.choices[k];
      const Literal g = enc_.choice_vars[t][k];
      for (std::size_t i = 0; i < enc_.num_rows; ++i) {
        encode_row_update(t, g, choice, i);
        ++groups;
      }
    }
    if (t == 0) {
      groups_emitted_per_step_ = groups;
    }

    // The phase update is shared: r' = r xor flip, with flip defined per
    // choice inside the row-update groups.
    for (std::size_t i = 0; i < enc_.num_rows; ++i) {
      xor_equal(enc_.tableau_vars[t + 1].r[i], enc_.tableau_vars[t].r[i],
                flip_vars_[t][i]);
    }
  }

  void encode_row_update(std::size_t t, Literal g, const GateChoice& choice,
                         std::size_t i) {
    const auto& prev = enc_.tableau_vars[t];
    const auto& next = enc_.tableau_vars[t + 1];
    const Literal flip = flip_vars_[t][i];
    const std::size_t n = enc_.num_qubits;

    const auto copy_column = [&](std::size_t j) {
      imp_equal(g, next.x[i][j], prev.x[i][j]);
      imp_equal(g, next.z[i][j], prev.z[i][j]);
    };

    switch (choice.kind) {
    case GateChoice::Kind::None: {
      for (std::size_t j = 0; j < n; ++j) {
        copy_column(j);
      }
      imp_false(g, flip);
      break;
    }
    case GateChoice::Kind::H: {
      const std::size_t q = choice.q0;
      imp_equal(g, next.x[i][q], prev.z[i][q]);
      imp_equal(g, next.z[i][q], prev.x[i][q]);
      imp_and2(g, flip, prev.x[i][q], prev.z[i][q]);
      for (std::size_t j = 0; j < n; ++j) {
        if (j != q) {
          copy_column(j);
        }
      }
      break;
    }
    case GateChoice::Kind::S: {
      // In the reversed (canonical) direction this slot applies S^dag,
      // which shares the bit update and only differs in the phase term.
      const std::size_t q = choice.q0;
      imp_equal(g, next.x[i][q], prev.x[i][q]);
      imp_xor2(g, next.z[i][q], prev.x[i][q], prev.z[i][q]);
      if (enc_.reversed) {
        imp_and2_negated(g, flip, prev.x[i][q], prev.z[i][q]);
      } else {
        imp_and2(g, flip, prev.x[i][q], prev.z[i][q]);
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (j != q) {
          copy_column(j);
        }
      }
      break;
    }
    case GateChoice::Kind::Cnot: {
      const std::size_t c = choice.q0;
      const std::size_t tq = choice.q1;
      imp_xor2(g, next.x[i][tq], prev.x[i][tq], prev.x[i][c]);
      imp_equal(g, next.x[i][c], prev.x[i][c]);
      imp_xor2(g, next.z[i][c], prev.z[i][c], prev.z[i][tq]);
      imp_equal(g, next.z[i][tq], prev.z[i][tq]);
      // flip = x_c z_t (x_t == z_c)
      imp_cnot_phase(g, flip, prev.x[i][c], prev.z[i][tq], prev.x[i][tq],
                     prev.z[i][c]);
      for (std::size_t j = 0; j < n; ++j) {
        if (j != c && j != tq) {
          copy_column(j);
        }
      }
      break;
    }
    }
  }

  void encode_symmetry_breaking() {
    auto& f = enc_.formula;
    const auto& choices = enc_.choices;
    for (std::size_t t = 0; t + 1 < enc_.time_steps; ++t) {
      const auto& here = enc_.choice_vars[t];
      const auto& after = enc_.choice_vars[t + 1];

      // Idle slots sink to the end of the sequence.
      f.add_clause({~here[0], after[0]});

      for (std::size_t a = 0; a < choices.size(); ++a) {
        if (choices[a].is_none()) {
          continue;
        }
        // Two adjacent copies of an involution cancel; a shorter circuit
        // padded with idle slots exists instead.
        if (choices[a].kind == GateChoice::Kind::H ||
            choices[a].kind == GateChoice::Kind::Cnot) {
          f.add_clause({~here[a], ~after[a]});
        }
        // Adjacent gates on disjoint qubits commute; force ascending
        // choice order.
        const auto sup_a = choices[a].support();
        for (std::size_t b = 0; b < a; ++b) {
          if (choices[b].is_none()) {
            continue;
          }
          bool disjoint = true;
          for (std::size_t qa : sup_a) {
            for (std::size_t qb : choices[b].support()) {
              if (qa == qb) {
                disjoint = false;
              }
            }
          }
          if (disjoint) {
            f.add_clause({~here[a], ~after[b]});
          }
        }
      }
    }
  }

  // ---- conditional clause helpers ----------------------------------------

  void unit(Literal lit, bool value) {
    enc_.formula.add_clause({value ? lit : ~lit});
  }

  void imp_equal(Literal g, Literal a, Literal b) {
    enc_.formula.add_clause({~g, ~a, b});
    enc_.formula.add_clause({~g, a, ~b});
  }

  void imp_false(Literal g, Literal a) {
    enc_.formula.add_clause({~g, ~a});
  }

  void imp_xor2(Literal g, Literal o, Literal a, Literal b) {
    enc_.formula.add_clause({~g, ~o, a, b});
    enc_.formula.add_clause({~g, ~o, ~a, ~b});
    enc_.formula.add_clause({~g, o, ~a, b});
    enc_.formula.add_clause({~g, o, a, ~b});
  }

  void imp_and2(Literal g, Literal o, Literal a, Literal b) {
    enc_.formula.add_clause({~g, ~o, a});
    enc_.formula.add_clause({~g, ~o, b});
    enc_.formula.add_clause({~g, o, ~a, ~b});
  }

  // o = a AND NOT b, under g.
  void imp_and2_negated(Literal g, Literal o, Literal a, Literal b) {
    enc_.formula.add_clause({~g, ~o, a});
    enc_.formula.add_clause({~g, ~o, ~b});
    enc_.formula.add_clause({~g, o, ~a, b});
  }

  // o = a AND b AND (c == d), under g.
  void imp_cnot_phase(Literal g, Literal o, Literal a, Literal b, Literal c,
                      Literal d) {
    enc_.formula.add_clause({~g, ~o, a});
    enc_.formula.add_clause({~g, ~o, b});
    enc_.formula.add_clause({~g, ~o, ~c, d});
    enc_.formula.add_clause({~g, ~o, c, ~d});
    enc_.formula.add_clause({~g, o, ~a, ~b, ~c, ~d});
    enc_.formula.add_clause({~g, o, ~a, ~b, c, d});
  }

  void xor_equal(Literal o, Literal a, Literal b) {
    enc_.formula.add_xor_equals(o, {a, b});
  }

  const SynthesisInstance& inst_;
  EncodedInstance enc_;
  std::vector<std::vector<Literal>> flip_vars_;  // [step][row]
  std::size_t groups_emitted_per_step_ = 0;
};

}  // namespace detail

inline EncodedInstance encode(const SynthesisInstance& inst) {
  return detail::EncoderContext(inst).build();
}

// Reads the unique true gate choice of every step out of a satisfying
// model. In canonical (reversed) mode the sequence is mapped back to the
// forward direction, so the returned circuit always runs initial -> target
// over {H, S, CNOT}.
inline CliffordCircuit extract_circuit(const EncodedInstance& enc,
                                       const std::vector<bool>& model) {
  CliffordCircuit circuit(enc.num_qubits);
  for (std::size_t t = 0; t < enc.time_steps; ++t) {
    const GateChoice* active = nullptr;
    for (std::size_t k = 0; k < enc.choices.size(); ++k) {
      const Literal lit = enc.choice_vars[t][k];
      if (model.at(static_cast<std::size_t>(lit.var))) {
        if (active != nullptr) {
          throw std::logic_error("model selects two gates in one step");
        }
        active = &enc.choices[k];
      }
    }
    if (active == nullptr) {
      throw std::logic_error("model selects no gate in a step");
    }
    switch (active->kind) {
    case GateChoice::Kind::None:
      break;
    case GateChoice::Kind::H:
      circuit.append(Gate::h(active->q0));
      break;
    case GateChoice::Kind::S:
      circuit.append(Gate::s(active->q0));
      break;
    case GateChoice::Kind::Cnot:
      circuit.append(Gate::cnot(active->q0, active->q1));
      break;
    }
  }
  if (enc.reversed) {
    std::reverse(circuit.gates.begin(), circuit.gates.end());
  }
  return circuit;
}

}  // namespace cliffsynth
