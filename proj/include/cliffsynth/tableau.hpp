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

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cliffsynth/circuit.hpp"
#include "cliffsynth/pauli.hpp"

namespace cliffsynth {

enum class TableauMode { State, Unitary };

// Per-row Clifford update rules (row <- g row g^dag), with every
// right-hand side read from the pre-update bits.
inline void row_apply_h(PauliRow& row, std::size_t q) {
  const bool xq = row.x(q);
  const bool zq = row.z(q);
  if (xq && zq) {
    row.flip_sign();
  }
  row.set_x(q, zq);
  row.set_z(q, xq);
}

inline void row_apply_s(PauliRow& row, std::size_t q) {
  const bool xq = row.x(q);
  const bool zq = row.z(q);
  if (xq && zq) {
    row.flip_sign();
  }
  row.set_z(q, zq != xq);
}

inline void row_apply_sdg(PauliRow& row, std::size_t q) {
  const bool xq = row.x(q);
  const bool zq = row.z(q);
  if (xq && !zq) {
    row.flip_sign();
  }
  row.set_z(q, zq != xq);
}

inline void row_apply_cnot(PauliRow& row, std::size_t control,
                           std::size_t target) {
  const bool xc = row.x(control);
  const bool zc = row.z(control);
  const bool xt = row.x(target);
  const bool zt = row.z(target);
  if (xc && zt && xt == zc) {
    row.flip_sign();
  }
  row.set_x(target, xt != xc);
  row.set_z(control, zc != zt);
}

inline void row_apply(PauliRow& row, const Gate& g) {
  switch (g.kind) {
  case GateKind::H:
    row_apply_h(row, g.q0);
    break;
  case GateKind::S:
    row_apply_s(row, g.q0);
    break;
  case GateKind::Cnot:
    row_apply_cnot(row, g.q0, g.q1);
    break;
  }
}

// Stabilizer tableau. In State mode it holds the n generator rows of a
// stabilizer state; in Unitary mode it holds 2n rows (destabilizers first,
// then stabilizers) and represents a full Clifford unitary.
//
// Gate application follows the standard update rules:
//   H(q):        x_q <-> z_q,            r ^= x_q z_q
//   S(q):        z_q ^= x_q,             r ^= x_q z_q
//   Sdg(q):      z_q ^= x_q,             r ^= x_q (x_q ^ z_q)
//   CNOT(c,t):   x_t ^= x_c, z_c ^= z_t, r ^= x_c z_t (x_t ^ z_c ^ 1)
class Tableau {
public:
  Tableau(std::size_t num_qubits, TableauMode mode, std::vector<PauliRow> rows)
      : num_qubits_(num_qubits), mode_(mode), rows_(std::move(rows)) {
    if (num_qubits_ == 0) {
      throw std::invalid_argument("tableau needs at least one qubit");
    }
    const std::size_t expected =
        mode_ == TableauMode::State ? num_qubits_ : 2 * num_qubits_;
    if (rows_.size() != expected) {
      throw std::invalid_argument("tableau row count does not match mode");
    }
    for (const auto& row : rows_) {
      if (row.num_qubits() != num_qubits_) {
        throw std::invalid_argument("tableau row width mismatch");
      }
    }
  }

  // Tableau of |0...0> (State) or of the identity unitary (Unitary).
  static Tableau identity(std::size_t n,
                          TableauMode mode = TableauMode::State) {
    std::vector<PauliRow> rows;
    if (mode == TableauMode::Unitary) {
      for (std::size_t i = 0; i < n; ++i) {
        PauliRow row(n);
        row.set_x(i, true);
        rows.push_back(row);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      PauliRow row(n);
      row.set_z(i, true);
      rows.push_back(row);
    }
    return Tableau(n, mode, std::move(rows));
  }

  std::size_t num_qubits() const { return num_qubits_; }
  TableauMode mode() const { return mode_; }
  std::size_t num_rows() const { return rows_.size(); }
  const PauliRow& row(std::size_t i) const { return rows_.at(i); }
  PauliRow& row(std::size_t i) { return rows_.at(i); }
  const std::vector<PauliRow>& rows() const { return rows_; }

  void apply_h(std::size_t q) {
    check_qubit(q);
    for (auto& row : rows_) {
      row_apply_h(row, q);
    }
  }

  void apply_s(std::size_t q) {
    check_qubit(q);
    for (auto& row : rows_) {
      row_apply_s(row, q);
    }
  }

  void apply_sdg(std::size_t q) {
    check_qubit(q);
    for (auto& row : rows_) {
      row_apply_sdg(row, q);
    }
  }

  void apply_cnot(std::size_t control, std::size_t target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) {
      throw std::invalid_argument("CNOT control equals target");
    }
    for (auto& row : rows_) {
      row_apply_cnot(row, control, target);
    }
  }

  void apply(const Gate& g) {
    switch (g.kind) {
    case GateKind::H:
      apply_h(g.q0);
      break;
    case GateKind::S:
      apply_s(g.q0);
      break;
    case GateKind::Cnot:
      apply_cnot(g.q0, g.q1);
      break;
    }
  }

  // row[target] <- row[source] * row[target] (Pauli product, exact phase).
  void rowsum(std::size_t target, std::size_t source) {
    if (target >= rows_.size() || source >= rows_.size()) {
      throw std::out_of_range("rowsum index out of range");
    }
    if (target == source) {
      throw std::invalid_argument("rowsum target equals source");
    }
    rows_[target].mul_left(rows_[source]);
  }

  void swap_rows(std::size_t a, std::size_t b) {
    std::swap(rows_.at(a), rows_.at(b));
  }

  // Unique phase-consistent reduced row echelon form over GF(2) of the
  // [X|Z] matrix (x columns first, pivots left to right, rows ordered by
  // pivot). Obtained purely by rowsum and row swaps, so it generates the
  // same signed stabilizer group: two State tableaus describe the same
  // state iff their canonical forms are bit-identical including signs.
  Tableau canonicalized() const {
    if (mode_ != TableauMode::State) {
      throw std::invalid_argument("canonicalize requires a State tableau");
    }
    Tableau t = *this;
    const std::size_t n = num_qubits_;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < 2 * n && rank < n; ++col) {
      const auto bit = [&](std::size_t i) {
        return col < n ? t.rows_[i].x(col) : t.rows_[i].z(col - n);
      };
      std::size_t pivot = rank;
      while (pivot < n && !bit(pivot)) {
        ++pivot;
      }
      if (pivot == n) {
        continue;
      }
      t.swap_rows(rank, pivot);
      for (std::size_t i = 0; i < n; ++i) {
        if (i != rank && bit(i)) {
          t.rowsum(i, rank);
        }
      }
      ++rank;
    }
    if (rank != n) {
      throw std::invalid_argument("tableau rows are not independent");
    }
    return t;
  }

  // Checks the mode invariants; on failure optionally reports why.
  bool validate(std::string* why = nullptr) const {
    const auto fail = [&](const std::string& message) {
      if (why != nullptr) {
        *why = message;
      }
      return false;
    };
    if (mode_ == TableauMode::State) {
      for (std::size_t a = 0; a < rows_.size(); ++a) {
        if (rows_[a].is_identity()) {
          return fail("generator " + std::to_string(a) + " is the identity");
        }
        for (std::size_t b = a + 1; b < rows_.size(); ++b) {
          if (!rows_[a].commutes_with(rows_[b])) {
            return fail("generators " + std::to_string(a) + " and " +
                        std::to_string(b) + " anticommute");
          }
        }
      }
      try {
        canonicalized();
      } catch (const std::invalid_argument&) {
        return fail("generator matrix is rank deficient");
      }
      return true;
    }
    const std::size_t n = num_qubits_;
    for (std::size_t a = 0; a < 2 * n; ++a) {
      for (std::size_t b = a + 1; b < 2 * n; ++b) {
        const bool commute = rows_[a].commutes_with(rows_[b]);
        const bool paired = (b == a + n);
        if (paired && commute) {
          return fail("destabilizer " + std::to_string(a) +
                      " commutes with its stabilizer");
        }
        if (!paired && !commute) {
          return fail("rows " + std::to_string(a) + " and " +
                      std::to_string(b) + " anticommute");
        }
      }
    }
    return true;
  }

  // State-mode payload: for each row x_0..x_{n-1}, z_0..z_{n-1}, r packed
  // LSB-first; exactly n(2n+1) bits.
  std::vector<std::uint8_t> pack_state_bits() const {
    if (mode_ != TableauMode::State) {
      throw std::invalid_argument("bit packing is defined for State mode");
    }
    const std::size_t n = num_qubits_;
    const std::size_t nbits = n * (2 * n + 1);
    std::vector<std::uint8_t> bytes((nbits + 7) / 8, 0);
    std::size_t k = 0;
    const auto push = [&](bool bit) {
      if (bit) {
        bytes[k / 8] |= static_cast<std::uint8_t>(1U << (k % 8));
      }
      ++k;
    };
    for (const auto& row : rows_) {
      for (std::size_t j = 0; j < n; ++j) {
        push(row.x(j));
      }
      for (std::size_t j = 0; j < n; ++j) {
        push(row.z(j));
      }
      push(row.sign());
    }
    return bytes;
  }

  static Tableau unpack_state_bits(std::size_t n,
                                   const std::vector<std::uint8_t>& bytes) {
    const std::size_t nbits = n * (2 * n + 1);
    if (bytes.size() != (nbits + 7) / 8) {
      throw std::invalid_argument("packed tableau has wrong length");
    }
    std::size_t k = 0;
    const auto pull = [&]() {
      const bool bit = (bytes[k / 8] >> (k % 8)) & 1U;
      ++k;
      return bit;
    };
    std::vector<PauliRow> rows;
    for (std::size_t i = 0; i < n; ++i) {
      PauliRow row(n);
      for (std::size_t j = 0; j < n; ++j) {
        row.set_x(j, pull());
      }
      for (std::size_t j = 0; j < n; ++j) {
        row.set_z(j, pull());
      }
      row.set_sign(pull());
      rows.push_back(row);
    }
    return Tableau(n, TableauMode::State, std::move(rows));
  }

  friend bool operator==(const Tableau&, const Tableau&) = default;

private:
  void check_qubit(std::size_t q) const {
    if (q >= num_qubits_) {
      throw std::out_of_range("qubit index out of range");
    }
  }

  std::size_t num_qubits_;
  TableauMode mode_;
  std::vector<PauliRow> rows_;
};

inline Tableau simulate(const CliffordCircuit& circuit, const Tableau& start) {
  if (circuit.num_qubits != start.num_qubits()) {
    throw std::invalid_argument("circuit and tableau qubit counts differ");
  }
  Tableau t = start;
  for (const auto& g : circuit.gates) {
    t.apply(g);
  }
  return t;
}

inline bool canonically_equal(const Tableau& a, const Tableau& b) {
  return a.canonicalized() == b.canonicalized();
}

// Deterministic pseudo-random tableau: applies 5n^2 gates drawn uniformly
// from the 2n + n(n-1) non-identity gate choices to the identity tableau.
inline Tableau random_tableau(std::size_t n, std::uint64_t seed,
                              TableauMode mode = TableauMode::State) {
  Tableau t = Tableau::identity(n, mode);
  std::mt19937_64 rng(seed);
  const auto bounded = [&rng](std::uint64_t range) {
    // Unbiased rejection sampling keeps the sequence platform-independent.
    const std::uint64_t threshold = (0 - range) % range;
    for (;;) {
      const std::uint64_t r = rng();
      if (r >= threshold) {
        return r % range;
      }
    }
  };
  const std::uint64_t choices = 2 * n + n * (n - 1);
  for (std::size_t step = 0; step < 5 * n * n; ++step) {
    const std::uint64_t c = bounded(choices);
    if (c < n) {
      t.apply_h(c);
    } else if (c < 2 * n) {
      t.apply_s(c - n);
    } else {
      const std::uint64_t pair = c - 2 * n;
      const std::size_t control = pair / (n - 1);
      std::size_t target = pair % (n - 1);
      if (target >= control) {
        ++target;
      }
      t.apply_cnot(control, target);
    }
  }
  return t;
}

// Tableau text format: one row per line, an optional '+'/'-' sign followed
// by one Pauli letter per qubit. The serializer always emits the sign and
// uppercase letters. n lines of width n parse as a State tableau, 2n lines
// as a Unitary tableau (destabilizers first).
inline Tableau parse_tableau(std::string_view text) {
  std::vector<PauliRow> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                       : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (const std::size_t hash = line.find('#');
        hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' ||
                             line.back() == '\r')) {
      line.remove_suffix(1);
    }
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) {
      line.remove_prefix(1);
    }
    if (line.empty()) {
      continue;
    }
    try {
      rows.push_back(PauliRow::from_string(line));
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, 1, e.what());
    }
    if (rows.back().num_qubits() != rows.front().num_qubits()) {
      throw ParseError(line_no, 1, "rows have inconsistent widths");
    }
  }
  if (rows.empty()) {
    throw ParseError(1, 1, "no tableau rows found");
  }
  const std::size_t width = rows.front().num_qubits();
  if (rows.size() == width) {
    return Tableau(width, TableauMode::State, std::move(rows));
  }
  if (rows.size() == 2 * width) {
    return Tableau(width, TableauMode::Unitary, std::move(rows));
  }
  throw ParseError(line_no, 1,
                   "expected n or 2n rows of width n, got " +
                       std::to_string(rows.size()) + " rows of width " +
                       std::to_string(width));
}

inline std::string serialize_tableau(const Tableau& t) {
  std::string out;
  for (std::size_t i = 0; i < t.num_rows(); ++i) {
    out += t.row(i).to_string();
    out += '\n';
  }
  return out;
}

}  // namespace cliffsynth
