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
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cliffsynth {

enum class GateKind { H, S, Cnot };

struct Gate {
  GateKind kind;
  std::size_t q0;  // target for H/S, control for CNOT
  std::size_t q1;  // CNOT target; unused otherwise

  static Gate h(std::size_t q) { return Gate{GateKind::H, q, 0}; }
  static Gate s(std::size_t q) { return Gate{GateKind::S, q, 0}; }
  static Gate cnot(std::size_t control, std::size_t target) {
    if (control == target) {
      throw std::invalid_argument("CNOT control equals target");
    }
    return Gate{GateKind::Cnot, control, target};
  }

  bool is_two_qubit() const { return kind == GateKind::Cnot; }

  friend bool operator==(const Gate& a, const Gate& b) {
    if (a.kind != b.kind || a.q0 != b.q0) {
      return false;
    }
    return a.kind != GateKind::Cnot || a.q1 == b.q1;
  }
};

struct CliffordCircuit {
  std::size_t num_qubits = 0;
  std::vector<Gate> gates;

  CliffordCircuit() = default;
  explicit CliffordCircuit(std::size_t n) : num_qubits(n) {}
  CliffordCircuit(std::size_t n, std::vector<Gate> g)
      : num_qubits(n), gates(std::move(g)) {
    for (const auto& gate : gates) {
      check_gate(gate);
    }
  }

  void append(const Gate& g) {
    check_gate(g);
    gates.push_back(g);
  }

  friend bool operator==(const CliffordCircuit&, const CliffordCircuit&) =
      default;

private:
  void check_gate(const Gate& g) const {
    const std::size_t hi = g.kind == GateKind::Cnot ? std::max(g.q0, g.q1)
                                                    : g.q0;
    if (hi >= num_qubits) {
      throw std::out_of_range("gate qubit index out of range");
    }
  }
};

inline std::size_t gate_count(const CliffordCircuit& c) {
  return c.gates.size();
}

inline std::size_t two_qubit_count(const CliffordCircuit& c) {
  std::size_t n = 0;
  for (const auto& g : c.gates) {
    if (g.is_two_qubit()) {
      ++n;
    }
  }
  return n;
}

// Thrown by the text parsers; line and column are 1-based.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

// Splits one line into whitespace-separated tokens, dropping '#' comments.
inline std::vector<Token> tokenize_line(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') {
      break;
    }
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r' && line[i] != '#') {
      ++i;
    }
    tokens.push_back(Token{std::string(line.substr(start, i - start)),
                           start + 1});
  }
  return tokens;
}

inline std::size_t parse_index(const Token& tok, std::size_t line_no) {
  std::size_t value = 0;
  if (tok.text.empty()) {
    throw ParseError(line_no, tok.column, "expected qubit index");
  }
  for (char c : tok.text) {
    if (c < '0' || c > '9') {
      throw ParseError(line_no, tok.column,
                       "invalid qubit index '" + tok.text + "'");
    }
    value = value * 10 + static_cast<std::size_t>(c - '0');
    if (value > 1000000) {
      throw ParseError(line_no, tok.column, "qubit index too large");
    }
  }
  return value;
}

}  // namespace detail

// Circuit text format: a "qubits N" header line followed by one gate per
// line ("h q", "s q", "cx c t"). '#' starts a comment, blank lines are
// ignored. serialize_circuit always emits the canonical lowercase form.
inline CliffordCircuit parse_circuit(std::string_view text) {
  std::size_t line_no = 0;
  bool have_header = false;
  CliffordCircuit circuit;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                       : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    const auto tokens = detail::tokenize_line(line);
    if (tokens.empty()) {
      continue;
    }
    if (!have_header) {
      if (tokens[0].text != "qubits") {
        throw ParseError(line_no, tokens[0].column,
                         "expected 'qubits N' header");
      }
      if (tokens.size() != 2) {
        throw ParseError(line_no, tokens[0].column,
                         "header takes exactly one argument");
      }
      const std::size_t n = detail::parse_index(tokens[1], line_no);
      if (n == 0) {
        throw ParseError(line_no, tokens[1].column,
                         "qubit count must be positive");
      }
      circuit.num_qubits = n;
      have_header = true;
      continue;
    }

    const std::string& mnemonic = tokens[0].text;
    const auto want_args = [&](std::size_t count) {
      if (tokens.size() != count + 1) {
        throw ParseError(line_no, tokens[0].column,
                         "'" + mnemonic + "' takes " + std::to_string(count) +
                             (count == 1 ? " argument" : " arguments"));
      }
    };
    const auto qubit_arg = [&](std::size_t k) {
      const std::size_t q = detail::parse_index(tokens[k], line_no);
      if (q >= circuit.num_qubits) {
        throw ParseError(line_no, tokens[k].column,
                         "qubit index " + std::to_string(q) +
                             " out of range for " +
                             std::to_string(circuit.num_qubits) + " qubits");
      }
      return q;
    };

    if (mnemonic == "h") {
      want_args(1);
      circuit.append(Gate::h(qubit_arg(1)));
    } else if (mnemonic == "s") {
      want_args(1);
      circuit.append(Gate::s(qubit_arg(1)));
    } else if (mnemonic == "cx") {
      want_args(2);
      const std::size_t c = qubit_arg(1);
      const std::size_t t = qubit_arg(2);
      if (c == t) {
        throw ParseError(line_no, tokens[1].column,
                         "cx control equals target");
      }
      circuit.append(Gate::cnot(c, t));
    } else {
      throw ParseError(line_no, tokens[0].column,
                       "unknown gate '" + mnemonic + "'");
    }
  }

  if (!have_header) {
    throw ParseError(1, 1, "missing 'qubits N' header");
  }
  return circuit;
}

inline std::string serialize_circuit(const CliffordCircuit& c) {
  std::ostringstream out;
  out << "qubits " << c.num_qubits << "\n";
  for (const auto& g : c.gates) {
    switch (g.kind) {
    case GateKind::H:
      out << "h " << g.q0 << "\n";
      break;
    case GateKind::S:
      out << "s " << g.q0 << "\n";
      break;
    case GateKind::Cnot:
      out << "cx " << g.q0 << " " << g.q1 << "\n";
      break;
    }
  }
  return out.str();
}

}  // namespace cliffsynth
