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

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cliffsynth {

// A signed Pauli string on num_qubits() qubits. Qubit j is encoded by the
// bit pair (x_j, z_j): (0,0)=I, (1,0)=X, (1,1)=Y, (0,1)=Z. `sign` is the
// negative-phase flag, so sign=true denotes -P.
class PauliRow {
public:
  explicit PauliRow(std::size_t num_qubits)
      : num_qubits_(num_qubits),
        x_((num_qubits + 63) / 64, 0),
        z_((num_qubits + 63) / 64, 0) {
    if (num_qubits == 0) {
      throw std::invalid_argument("PauliRow needs at least one qubit");
    }
  }

  // Parses e.g. "+XY", "-zz", "iz" (sign optional, letters case-insensitive).
  static PauliRow from_string(std::string_view s) {
    bool sign = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
      sign = s.front() == '-';
      s.remove_prefix(1);
    }
    if (s.empty()) {
      throw std::invalid_argument("empty Pauli string");
    }
    PauliRow row(s.size());
    row.set_sign(sign);
    for (std::size_t j = 0; j < s.size(); ++j) {
      switch (s[j]) {
      case 'I': case 'i': break;
      case 'X': case 'x': row.set_x(j, true); break;
      case 'Y': case 'y': row.set_x(j, true); row.set_z(j, true); break;
      case 'Z': case 'z': row.set_z(j, true); break;
      default:
        throw std::invalid_argument(std::string("invalid Pauli letter '") +
                                    s[j] + "'");
      }
    }
    return row;
  }

  std::size_t num_qubits() const { return num_qubits_; }

  bool x(std::size_t j) const { return (x_[j / 64] >> (j % 64)) & 1U; }
  bool z(std::size_t j) const { return (z_[j / 64] >> (j % 64)) & 1U; }
  bool sign() const { return sign_; }

  void set_x(std::size_t j, bool v) { set_bit(x_, j, v); }
  void set_z(std::size_t j, bool v) { set_bit(z_, j, v); }
  void set_sign(bool v) { sign_ = v; }
  void flip_sign() { sign_ = !sign_; }

  bool is_identity() const {
    for (std::size_t w = 0; w < x_.size(); ++w) {
      if (x_[w] != 0 || z_[w] != 0) {
        return false;
      }
    }
    return true;
  }

  // Symplectic inner product: 0 iff the two Pauli strings commute.
  bool commutes_with(const PauliRow& other) const {
    check_same_width(other);
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < x_.size(); ++w) {
      acc ^= (x_[w] & other.z_[w]) ^ (z_[w] & other.x_[w]);
    }
    return (std::popcount(acc) & 1) == 0;
  }

  // *this <- other * *this, with exact phase bookkeeping. The rows must
  // commute; otherwise the product carries a factor of +-i and cannot be
  // represented as a signed Pauli string.
  void mul_left(const PauliRow& other) {
    check_same_width(other);
    // Exponent of i in the product, accumulated per qubit. For single-qubit
    // factors P1*P2 = i^g P3 with g = x1 z1 + x2 z2 + 2 z1 x2 - x3 z3.
    int exponent = 2 * (sign_ ? 1 : 0) + 2 * (other.sign_ ? 1 : 0);
    for (std::size_t j = 0; j < num_qubits_; ++j) {
      const int x1 = other.x(j) ? 1 : 0;
      const int z1 = other.z(j) ? 1 : 0;
      const int x2 = x(j) ? 1 : 0;
      const int z2 = z(j) ? 1 : 0;
      const int x3 = x1 ^ x2;
      const int z3 = z1 ^ z2;
      exponent += x1 * z1 + x2 * z2 + 2 * z1 * x2 - x3 * z3;
    }
    exponent = ((exponent % 4) + 4) % 4;
    if (exponent % 2 != 0) {
      throw std::logic_error("Pauli product of anticommuting rows");
    }
    for (std::size_t w = 0; w < x_.size(); ++w) {
      x_[w] ^= other.x_[w];
      z_[w] ^= other.z_[w];
    }
    sign_ = exponent == 2;
  }

  char letter(std::size_t j) const {
    const bool xb = x(j);
    const bool zb = z(j);
    if (xb && zb) return 'Y';
    if (xb) return 'X';
    if (zb) return 'Z';
    return 'I';
  }

  std::string to_string() const {
    std::string out;
    out.reserve(num_qubits_ + 1);
    out.push_back(sign_ ? '-' : '+');
    for (std::size_t j = 0; j < num_qubits_; ++j) {
      out.push_back(letter(j));
    }
    return out;
  }

  friend bool operator==(const PauliRow&, const PauliRow&) = default;

private:
  void check_same_width(const PauliRow& other) const {
    if (other.num_qubits_ != num_qubits_) {
      throw std::invalid_argument("Pauli width mismatch");
    }
  }

  static void set_bit(std::vector<std::uint64_t>& words, std::size_t j,
                      bool v) {
    if (v) {
      words[j / 64] |= std::uint64_t{1} << (j % 64);
    } else {
      words[j / 64] &= ~(std::uint64_t{1} << (j % 64));
    }
  }

  std::size_t num_qubits_;
  std::vector<std::uint64_t> x_;
  std::vector<std::uint64_t> z_;
  bool sign_ = false;
};

}  // namespace cliffsynth
