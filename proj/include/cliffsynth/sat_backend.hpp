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

#include <chrono>
#include <cstdint>
#include <vector>

#include "cliffsynth/cnf.hpp"

namespace cliffsynth {

enum class SolveStatus { Sat, Unsat, TimedOut };

struct SolverStats {
  std::uint64_t decisions = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t propagations = 0;
  std::uint64_t restarts = 0;
  double seconds = 0.0;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::TimedOut;
  // Variable values indexed 1..num_vars; present iff status == Sat, and
  // then it assigns every variable of the formula.
  std::vector<bool> model;
  SolverStats stats;
};

using Duration = std::chrono::duration<double>;

// Stateless solve-from-formula contract. Implementations must be safe to
// call concurrently on distinct formulas; each call owns its state.
class SatBackend {
public:
  virtual ~SatBackend() = default;
  virtual SolveOutcome solve(const CnfFormula& formula,
                             const std::vector<Literal>& assumptions,
                             Duration timeout) = 0;
};

}  // namespace cliffsynth
