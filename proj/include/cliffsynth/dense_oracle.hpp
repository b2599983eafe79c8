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

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "cliffsynth/circuit.hpp"
#include "cliffsynth/pauli.hpp"

// Dense 2^n x 2^n complex-matrix ground truth for the tableau update rules.
// Only intended for n <= 3; everything here is brute force on purpose so it
// shares no code path with the bitwise tableau implementation.

namespace cliffsynth::dense {

using Complex = std::complex<double>;

struct Matrix {
  std::size_t dim = 0;
  std::vector<Complex> a;  // row-major

  explicit Matrix(std::size_t d) : dim(d), a(d * d) {}

  Complex& at(std::size_t r, std::size_t c) { return a[r * dim + c]; }
  const Complex& at(std::size_t r, std::size_t c) const {
    return a[r * dim + c];
  }

  static Matrix identity(std::size_t d) {
    Matrix m(d);
    for (std::size_t i = 0; i < d; ++i) {
      m.at(i, i) = 1.0;
    }
    return m;
  }
};

inline Matrix multiply(const Matrix& lhs, const Matrix& rhs) {
  Matrix out(lhs.dim);
  for (std::size_t r = 0; r < lhs.dim; ++r) {
    for (std::size_t k = 0; k < lhs.dim; ++k) {
      const Complex v = lhs.at(r, k);
      if (v == Complex{}) {
        continue;
      }
      for (std::size_t c = 0; c < lhs.dim; ++c) {
        out.at(r, c) += v * rhs.at(k, c);
      }
    }
  }
  return out;
}

inline Matrix adjoint(const Matrix& m) {
  Matrix out(m.dim);
  for (std::size_t r = 0; r < m.dim; ++r) {
    for (std::size_t c = 0; c < m.dim; ++c) {
      out.at(r, c) = std::conj(m.at(c, r));
    }
  }
  return out;
}

inline Matrix kron(const Matrix& lhs, const Matrix& rhs) {
  Matrix out(lhs.dim * rhs.dim);
  for (std::size_t r1 = 0; r1 < lhs.dim; ++r1) {
    for (std::size_t c1 = 0; c1 < lhs.dim; ++c1) {
      for (std::size_t r2 = 0; r2 < rhs.dim; ++r2) {
        for (std::size_t c2 = 0; c2 < rhs.dim; ++c2) {
          out.at(r1 * rhs.dim + r2, c1 * rhs.dim + c2) =
              lhs.at(r1, c1) * rhs.at(r2, c2);
        }
      }
    }
  }
  return out;
}

inline Matrix pauli_letter_matrix(char letter) {
  Matrix m(2);
  const Complex i{0.0, 1.0};
  switch (letter) {
  case 'I': m.at(0, 0) = 1; m.at(1, 1) = 1; break;
  case 'X': m.at(0, 1) = 1; m.at(1, 0) = 1; break;
  case 'Y': m.at(0, 1) = -i; m.at(1, 0) = i; break;
  case 'Z': m.at(0, 0) = 1; m.at(1, 1) = -1; break;
  default: throw std::invalid_argument("bad Pauli letter");
  }
  return m;
}

// Qubit 0 is the leftmost tensor factor (most significant basis bit).
inline Matrix pauli_unitary(const PauliRow& row) {
  Matrix m = pauli_letter_matrix(row.letter(0));
  for (std::size_t j = 1; j < row.num_qubits(); ++j) {
    m = kron(m, pauli_letter_matrix(row.letter(j)));
  }
  if (row.sign()) {
    for (auto& v : m.a) {
      v = -v;
    }
  }
  return m;
}

inline Matrix gate_unitary(const Gate& g, std::size_t n) {
  const std::size_t dim = std::size_t{1} << n;
  if (g.kind == GateKind::Cnot) {
    Matrix m(dim);
    const std::size_t cbit = n - 1 - g.q0;
    const std::size_t tbit = n - 1 - g.q1;
    for (std::size_t b = 0; b < dim; ++b) {
      const std::size_t out =
          ((b >> cbit) & 1U) != 0U ? b ^ (std::size_t{1} << tbit) : b;
      m.at(out, b) = 1.0;
    }
    return m;
  }
  Matrix single(2);
  if (g.kind == GateKind::H) {
    const double s = 1.0 / std::sqrt(2.0);
    single.at(0, 0) = s;
    single.at(0, 1) = s;
    single.at(1, 0) = s;
    single.at(1, 1) = -s;
  } else {
    single.at(0, 0) = 1.0;
    single.at(1, 1) = Complex{0.0, 1.0};
  }
  Matrix m = g.q0 == 0 ? single : Matrix::identity(2);
  for (std::size_t j = 1; j < n; ++j) {
    m = kron(m, j == g.q0 ? single : Matrix::identity(2));
  }
  return m;
}

inline bool approx_equal(const Matrix& lhs, const Matrix& rhs,
                         double eps = 1e-9) {
  if (lhs.dim != rhs.dim) {
    return false;
  }
  for (std::size_t k = 0; k < lhs.a.size(); ++k) {
    if (std::abs(lhs.a[k] - rhs.a[k]) > eps) {
      return false;
    }
  }
  return true;
}

// Computes U P U^dag and matches the result against every signed Pauli
// string. Throws if no match exists, which cannot happen for a Clifford U.
inline PauliRow dense_conjugate(const Gate& g, const PauliRow& pauli) {
  const std::size_t n = pauli.num_qubits();
  if (n > 3) {
    throw std::invalid_argument("dense oracle is limited to n <= 3");
  }
  const Matrix u = gate_unitary(g, n);
  const Matrix conjugated = multiply(multiply(u, pauli_unitary(pauli)),
                                     adjoint(u));
  static constexpr char letters[] = {'I', 'X', 'Y', 'Z'};
  const std::size_t combos = std::size_t{1} << (2 * n);
  for (std::size_t combo = 0; combo < combos; ++combo) {
    std::string s;
    for (std::size_t j = 0; j < n; ++j) {
      s.push_back(letters[(combo >> (2 * j)) & 3U]);
    }
    for (bool sign : {false, true}) {
      PauliRow candidate = PauliRow::from_string((sign ? "-" : "+") + s);
      if (approx_equal(conjugated, pauli_unitary(candidate))) {
        return candidate;
      }
    }
  }
  throw std::logic_error("conjugated operator is not a signed Pauli string");
}

// Dense statevector of circuit applied to |0...0>.
inline std::vector<Complex> statevector(const CliffordCircuit& circuit) {
  if (circuit.num_qubits > 3) {
    throw std::invalid_argument("dense oracle is limited to n <= 3");
  }
  const std::size_t dim = std::size_t{1} << circuit.num_qubits;
  std::vector<Complex> state(dim);
  state[0] = 1.0;
  for (const auto& g : circuit.gates) {
    const Matrix u = gate_unitary(g, circuit.num_qubits);
    std::vector<Complex> next(dim);
    for (std::size_t r = 0; r < dim; ++r) {
      Complex acc{};
      for (std::size_t c = 0; c < dim; ++c) {
        acc += u.at(r, c) * state[c];
      }
      next[r] = acc;
    }
    state = std::move(next);
  }
  return state;
}

// True iff P|psi> = |psi> (sign included), the stabilizer condition.
inline bool stabilizes(const PauliRow& row, const std::vector<Complex>& state,
                       double eps = 1e-9) {
  const Matrix p = pauli_unitary(row);
  for (std::size_t r = 0; r < p.dim; ++r) {
    Complex acc{};
    for (std::size_t c = 0; c < p.dim; ++c) {
      acc += p.at(r, c) * state[c];
    }
    if (std::abs(acc - state[r]) > eps) {
      return false;
    }
  }
  return true;
}

}  // namespace cliffsynth::dense
