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
#include <cstdint>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cliffsynth/circuit.hpp"
#include "cliffsynth/tableau.hpp"

namespace cliffsynth {

// State identity for search deduplication: the packed bits of the
// canonical form.
inline std::string canonical_key(const Tableau& t) {
  const auto bytes = t.canonicalized().pack_state_bits();
  return std::string(bytes.begin(), bytes.end());
}

// Exhaustive breadth-first table of minimal gate counts over stabilizer
// states, with one predecessor edge per state for witness extraction.
// Only sensible at toy scale; guarded to n <= 3 and <= 12 gates.
struct BfsDatabase {
  struct Entry {
    std::uint16_t count = 0;
    std::int32_t via_gate = -1;     // index into gates; -1 for the root
    std::string parent;             // canonical key of the predecessor
  };

  std::size_t num_qubits = 0;
  std::size_t frontier_bound = 0;  // max gates explored
  std::vector<Gate> gates;         // expansion order used
  std::unordered_map<std::string, Entry> entries;

  std::optional<std::size_t> count_of(const std::string& key) const {
    const auto it = entries.find(key);
    if (it == entries.end()) {
      return std::nullopt;
    }
    return it->second.count;
  }
};

inline std::vector<Gate> bfs_gate_order(std::size_t n) {
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

inline BfsDatabase build_bfs_database(
    std::size_t n, std::size_t max_gates,
    const std::vector<Gate>* gate_order = nullptr) {
  if (n == 0 || n > 3) {
    throw std::invalid_argument("BFS oracle supports 1 to 3 qubits");
  }
  if (max_gates > 12) {
    throw std::invalid_argument("BFS oracle explores at most 12 gates");
  }
  BfsDatabase db;
  db.num_qubits = n;
  db.frontier_bound = max_gates;
  db.gates = gate_order != nullptr ? *gate_order : bfs_gate_order(n);

  const Tableau root = Tableau::identity(n);
  const std::string root_key = canonical_key(root);
  db.entries.emplace(root_key, BfsDatabase::Entry{0, -1, ""});

  std::vector<std::pair<std::string, Tableau>> frontier{{root_key, root}};
  for (std::size_t depth = 1; depth <= max_gates && !frontier.empty();
       ++depth) {
    std::vector<std::pair<std::string, Tableau>> next;
    for (const auto& [key, tableau] : frontier) {
      for (std::size_t g = 0; g < db.gates.size(); ++g) {
        Tableau child = tableau;
        child.apply(db.gates[g]);
        std::string child_key = canonical_key(child);
        const auto [it, fresh] = db.entries.emplace(
            child_key,
            BfsDatabase::Entry{static_cast<std::uint16_t>(depth),
                               static_cast<std::int32_t>(g), key});
        if (fresh) {
          next.emplace_back(std::move(child_key), std::move(child));
        }
      }
    }
    frontier = std::move(next);
  }
  return db;
}

inline CliffordCircuit bfs_witness(const BfsDatabase& db,
                                   const std::string& key) {
  std::vector<Gate> gates;
  std::string cursor = key;
  for (;;) {
    const auto it = db.entries.find(cursor);
    if (it == db.entries.end()) {
      throw std::invalid_argument("key not present in BFS database");
    }
    if (it->second.via_gate < 0) {
      break;
    }
    gates.push_back(db.gates[static_cast<std::size_t>(it->second.via_gate)]);
    cursor = it->second.parent;
  }
  std::reverse(gates.begin(), gates.end());
  return CliffordCircuit(db.num_qubits, std::move(gates));
}

// Ground-truth minimal gate count for a State tableau, with one witness
// circuit; absent if the state is not reachable within max_gates.
inline std::optional<std::pair<std::size_t, CliffordCircuit>> bfs_optimal(
    const Tableau& target, std::size_t max_gates) {
  if (target.mode() != TableauMode::State) {
    throw std::invalid_argument("BFS oracle takes a State tableau");
  }
  const BfsDatabase db = build_bfs_database(target.num_qubits(), max_gates);
  const std::string key = canonical_key(target);
  const auto count = db.count_of(key);
  if (!count) {
    return std::nullopt;
  }
  return std::pair{*count, bfs_witness(db, key)};
}

// ---- optional on-disk cache of (key, count) records ------------------------

inline constexpr char kBfsCacheMagic[8] = {'C', 'S', 'B', 'F',
                                           '0', '0', '0', '1'};

inline void save_bfs_database(const BfsDatabase& db, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write BFS cache: " + path);
  }
  out.write(kBfsCacheMagic, sizeof(kBfsCacheMagic));
  const auto write_u64 = [&](std::uint64_t v) {
    char buf[8];
    for (int i = 0; i < 8; ++i) {
      buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    }
    out.write(buf, 8);
  };
  write_u64(db.num_qubits);
  write_u64(db.frontier_bound);
  write_u64(db.entries.size());
  for (const auto& [key, entry] : db.entries) {
    write_u64(key.size());
    out.write(key.data(), static_cast<std::streamsize>(key.size()));
    write_u64(entry.count);
  }
  std::ofstream index(path + ".idx", std::ios::trunc);
  index << "qubits=" << db.num_qubits << " max_gates=" << db.frontier_bound
        << " entries=" << db.entries.size() << "\n";
}

// Loads the (key -> count) map only; witness edges are not cached.
inline BfsDatabase load_bfs_database(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read BFS cache: " + path);
  }
  char magic[sizeof(kBfsCacheMagic)];
  in.read(magic, sizeof(magic));
  if (!in || !std::equal(magic, magic + sizeof(magic), kBfsCacheMagic)) {
    throw std::runtime_error("BFS cache has a bad or foreign header");
  }
  const auto read_u64 = [&]() -> std::uint64_t {
    char buf[8];
    in.read(buf, 8);
    if (!in) {
      throw std::runtime_error("truncated BFS cache");
    }
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[i]))
           << (8 * i);
    }
    return v;
  };
  BfsDatabase db;
  db.num_qubits = read_u64();
  db.frontier_bound = read_u64();
  const std::uint64_t count = read_u64();
  for (std::uint64_t k = 0; k < count; ++k) {
    const std::uint64_t key_len = read_u64();
    std::string key(key_len, '\0');
    in.read(key.data(), static_cast<std::streamsize>(key_len));
    const std::uint64_t c = read_u64();
    if (!in) {
      throw std::runtime_error("truncated BFS cache");
    }
    db.entries.emplace(std::move(key),
                       BfsDatabase::Entry{static_cast<std::uint16_t>(c), -1,
                                          ""});
  }
  return db;
}

}  // namespace cliffsynth
