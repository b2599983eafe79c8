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

#include <cstddef>
#include <initializer_list>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cliffsynth {

struct Literal {
  int var = 0;  // positive variable id, allocated by the owning formula
  bool neg = false;

  Literal operator~() const { return Literal{var, !neg}; }
  int encoded() const { return neg ? -var : var; }

  friend bool operator==(const Literal&, const Literal&) = default;
};

// CNF formula builder. Clauses are stored as DIMACS-style signed variable
// ids. Semantic variables can be registered under a name; auxiliary
// variables introduced by the gadgets below stay anonymous.
class CnfFormula {
public:
  Literal new_var() { return Literal{++num_vars_, false}; }

  Literal named_var(const std::string& name) {
    const Literal lit = new_var();
    if (!name_map_.emplace(name, lit.var).second) {
      throw std::invalid_argument("duplicate variable name: " + name);
    }
    return lit;
  }

  void add_clause(const std::vector<Literal>& lits) {
    std::vector<int> clause;
    clause.reserve(lits.size());
    for (const auto& lit : lits) {
      check_literal(lit);
      clause.push_back(lit.encoded());
    }
    clauses_.push_back(std::move(clause));
  }

  void add_clause(std::initializer_list<Literal> lits) {
    add_clause(std::vector<Literal>(lits));
  }

  // Marks the formula as known-unsatisfiable.
  void add_empty_clause() { clauses_.emplace_back(); }

  // Constrains out = XOR of ins, chaining one auxiliary variable per
  // additional input beyond the second.
  void add_xor_equals(Literal out, const std::vector<Literal>& ins) {
    if (ins.empty()) {
      throw std::invalid_argument("XOR gadget needs at least one input");
    }
    if (ins.size() == 1) {
      add_clause({out, ~ins[0]});
      add_clause({~out, ins[0]});
      return;
    }
    Literal acc = ins[0];
    for (std::size_t k = 1; k + 1 < ins.size(); ++k) {
      const Literal aux = new_var();
      add_xor2(aux, acc, ins[k]);
      acc = aux;
    }
    add_xor2(out, acc, ins.back());
  }

  // Exactly one of lits is true. Pairwise at-most-one up to 8 literals,
  // sequential-counter at-most-one above that.
  void add_exactly_one(const std::vector<Literal>& lits) {
    if (lits.empty()) {
      throw std::invalid_argument("exactly-one gadget needs literals");
    }
    if (lits.size() == 1) {
      add_clause({lits[0]});
      return;
    }
    if (lits.size() <= 8) {
      for (std::size_t a = 0; a < lits.size(); ++a) {
        for (std::size_t b = a + 1; b < lits.size(); ++b) {
          add_clause({~lits[a], ~lits[b]});
        }
      }
    } else {
      add_sequential_amo(lits);
    }
    add_clause(lits);
  }

  // At most k of lits are true (sequential-counter encoding).
  void add_at_most_k(const std::vector<Literal>& lits, std::size_t k) {
    const std::size_t m = lits.size();
    if (k > m) {
      throw std::invalid_argument("cardinality bound exceeds literal count");
    }
    if (k == m) {
      return;
    }
    if (k == 0) {
      for (const auto& lit : lits) {
        add_clause({~lit});
      }
      return;
    }
    // s[i][j] <=> at least j+1 of the first i+1 literals are true,
    // for i in [0, m-2] and j in [0, k-1].
    std::vector<std::vector<Literal>> s(m - 1, std::vector<Literal>(k));
    for (auto& reg : s) {
      for (auto& v : reg) {
        v = new_var();
      }
    }
    add_clause({~lits[0], s[0][0]});
    for (std::size_t j = 1; j < k; ++j) {
      add_clause({~s[0][j]});
    }
    for (std::size_t i = 1; i < m; ++i) {
      if (i < m - 1) {
        add_clause({~lits[i], s[i][0]});
        add_clause({~s[i - 1][0], s[i][0]});
        for (std::size_t j = 1; j < k; ++j) {
          add_clause({~lits[i], ~s[i - 1][j - 1], s[i][j]});
          add_clause({~s[i - 1][j], s[i][j]});
        }
      }
      add_clause({~lits[i], ~s[i - 1][k - 1]});
    }
  }

  std::size_t num_vars() const { return static_cast<std::size_t>(num_vars_); }
  std::size_t num_clauses() const { return clauses_.size(); }
  const std::vector<std::vector<int>>& clauses() const { return clauses_; }
  const std::map<std::string, int>& name_map() const { return name_map_; }

  std::string to_dimacs() const {
    std::ostringstream out;
    out << "p cnf " << num_vars_ << " " << clauses_.size() << "\n";
    for (const auto& clause : clauses_) {
      for (int lit : clause) {
        out << lit << " ";
      }
      out << "0\n";
    }
    return out.str();
  }

  // Sidecar export of the semantic variable names, one "name<TAB>id" line
  // per entry, sorted by name.
  std::string name_map_text() const {
    std::ostringstream out;
    for (const auto& [name, id] : name_map_) {
      out << name << "\t" << id << "\n";
    }
    return out.str();
  }

private:
  void check_literal(const Literal& lit) const {
    if (lit.var <= 0 || lit.var > num_vars_) {
      throw std::invalid_argument("literal refers to an unallocated variable");
    }
  }

  void add_xor2(Literal o, Literal a, Literal b) {
    add_clause({~o, a, b});
    add_clause({~o, ~a, ~b});
    add_clause({o, ~a, b});
    add_clause({o, a, ~b});
  }

  void add_sequential_amo(const std::vector<Literal>& lits) {
    const std::size_t m = lits.size();
    std::vector<Literal> s(m - 1);
    for (auto& v : s) {
      v = new_var();
    }
    add_clause({~lits[0], s[0]});
    for (std::size_t i = 1; i < m - 1; ++i) {
      add_clause({~lits[i], s[i]});
      add_clause({~s[i - 1], s[i]});
      add_clause({~lits[i], ~s[i - 1]});
    }
    add_clause({~lits[m - 1], ~s[m - 2]});
  }

  int num_vars_ = 0;
  std::vector<std::vector<int>> clauses_;
  std::map<std::string, int> name_map_;
};

}  // namespace cliffsynth
