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
#include <chrono>
#include <cstdint>
#include <limits>
#include <vector>

#include "cliffsynth/sat_backend.hpp"

namespace cliffsynth {

// Embedded conflict-driven clause-learning solver: two-watched-literal
// propagation, first-UIP learning with recursive clause minimization,
// VSIDS branching with phase saving, Luby restarts, and LBD-based clause
// database reduction. Fully deterministic: no randomized decisions.
class CdclSolver final : public SatBackend {
public:
  SolveOutcome solve(const CnfFormula& formula,
                     const std::vector<Literal>& assumptions,
                     Duration timeout) override {
    const auto start = Clock::now();
    Worker worker(formula);
    SolveOutcome outcome =
        worker.run(assumptions, start + std::chrono::duration_cast<
                                             Clock::duration>(timeout));
    outcome.stats.seconds = Duration(Clock::now() - start).count();
    return outcome;
  }

private:
  using Clock = std::chrono::steady_clock;

  // Internal literal encoding: lit = 2*var + sign, variables 0-based.
  static constexpr std::uint32_t kNoReason =
      std::numeric_limits<std::uint32_t>::max();

  struct Watcher {
    std::uint32_t clause;
    int blocker;
  };

  class Worker {
  public:
    explicit Worker(const CnfFormula& formula)
        : num_vars_(formula.num_vars()) {
      value_.assign(num_vars_, kUndef);
      level_.assign(num_vars_, 0);
      reason_.assign(num_vars_, kNoReason);
      activity_.assign(num_vars_, 0.0);
      polarity_.assign(num_vars_, 0);
      seen_.assign(num_vars_, 0);
      watches_.assign(2 * num_vars_, {});
      heap_index_.assign(num_vars_, -1);
      for (std::size_t v = 0; v < num_vars_; ++v) {
        heap_insert(static_cast<int>(v));
      }
      ok_ = load(formula);
    }

    SolveOutcome run(const std::vector<Literal>& assumptions,
                     Clock::time_point deadline) {
      SolveOutcome out;
      if (!ok_ || propagate() != kNoReason) {
        out.status = SolveStatus::Unsat;
        out.stats = stats_;
        return out;
      }
      for (const auto& a : assumptions) {
        const int v = a.var - 1;
        if (v < 0 || static_cast<std::size_t>(v) >= num_vars_) {
          throw std::invalid_argument(
              "assumption refers to a variable outside the formula");
        }
        assumptions_.push_back(2 * v + (a.neg ? 1 : 0));
      }

      std::uint64_t restart_index = 0;
      std::uint64_t conflict_budget = luby(restart_index) * kRestartUnit;
      std::uint64_t conflicts_here = 0;

      for (;;) {
        const std::uint32_t confl = propagate();
        if (confl != kNoReason) {
          ++stats_.conflicts;
          ++conflicts_here;
          if (decision_level() == 0) {
            out.status = SolveStatus::Unsat;
            out.stats = stats_;
            return out;
          }
          std::vector<int> learnt;
          int backtrack = 0;
          analyze(confl, learnt, backtrack);
          // Backjumping may land inside the assumption prefix; the pending
          // assumptions are simply re-established by the decision loop.
          cancel_until(backtrack);
          if (learnt.size() == 1) {
            enqueue(learnt[0], kNoReason);
          } else {
            const std::uint32_t ref = add_learnt(learnt);
            enqueue(learnt[0], ref);
          }
          decay_activities();
          if (learnts_.size() >= max_learnts_) {
            reduce_db();
          }
          if ((stats_.conflicts & 0x3FF) == 0 && Clock::now() > deadline) {
            out.status = SolveStatus::TimedOut;
            out.stats = stats_;
            return out;
          }
          continue;
        }

        if (conflicts_here >= conflict_budget) {
          conflicts_here = 0;
          conflict_budget = luby(++restart_index) * kRestartUnit;
          ++stats_.restarts;
          cancel_until(static_cast<int>(num_fixed_levels_));
          if (Clock::now() > deadline) {
            out.status = SolveStatus::TimedOut;
            out.stats = stats_;
            return out;
          }
          continue;
        }

        // Establish pending assumptions before free decisions.
        if (num_fixed_levels_ < assumptions_.size()) {
          const int a = assumptions_[num_fixed_levels_];
          if (value_of(a) == kTrue) {
            new_decision_level();
            ++num_fixed_levels_;
            continue;
          }
          if (value_of(a) == kFalse) {
            out.status = SolveStatus::Unsat;
            out.stats = stats_;
            return out;
          }
          new_decision_level();
          ++num_fixed_levels_;
          enqueue(a, kNoReason);
          continue;
        }

        const int next = pick_branch_var();
        if (next == -1) {
          out.status = SolveStatus::Sat;
          out.model.assign(num_vars_ + 1, false);
          for (std::size_t v = 0; v < num_vars_; ++v) {
            out.model[v + 1] = value_[v] == kTrue;
          }
          out.stats = stats_;
          return out;
        }
        ++stats_.decisions;
        new_decision_level();
        enqueue(2 * next + (polarity_[next] ? 0 : 1), kNoReason);
      }
    }

  private:
    static constexpr std::int8_t kUndef = -1;
    static constexpr std::int8_t kFalse = 0;
    static constexpr std::int8_t kTrue = 1;
    static constexpr std::uint64_t kRestartUnit = 128;

    // ---- clause arena ----------------------------------------------------
    // Layout per clause: [size, meta, lit...]; meta bit 0 marks learnt
    // clauses, the remaining bits hold the LBD score.

    std::uint32_t alloc_clause(const std::vector<int>& lits, bool learnt,
                               std::uint32_t lbd) {
      const std::uint32_t ref = static_cast<std::uint32_t>(arena_.size());
      arena_.push_back(static_cast<int>(lits.size()));
      arena_.push_back(static_cast<int>((lbd << 1) | (learnt ? 1U : 0U)));
      arena_.insert(arena_.end(), lits.begin(), lits.end());
      return ref;
    }

    int clause_size(std::uint32_t ref) const { return arena_[ref]; }
    bool clause_learnt(std::uint32_t ref) const { return arena_[ref + 1] & 1; }
    std::uint32_t clause_lbd(std::uint32_t ref) const {
      return static_cast<std::uint32_t>(arena_[ref + 1]) >> 1;
    }
    void set_clause_lbd(std::uint32_t ref, std::uint32_t lbd) {
      arena_[ref + 1] = static_cast<int>((lbd << 1) | (arena_[ref + 1] & 1));
    }
    int* clause_lits(std::uint32_t ref) { return arena_.data() + ref + 2; }
    const int* clause_lits(std::uint32_t ref) const {
      return arena_.data() + ref + 2;
    }

    void watch_clause(std::uint32_t ref) {
      const int* lits = clause_lits(ref);
      watches_[negate(lits[0])].push_back({ref, lits[1]});
      watches_[negate(lits[1])].push_back({ref, lits[0]});
    }

    // ---- loading ---------------------------------------------------------

    bool load(const CnfFormula& formula) {
      for (const auto& clause : formula.clauses()) {
        std::vector<int> lits;
        lits.reserve(clause.size());
        bool tautology = false;
        for (int ext : clause) {
          const int v = std::abs(ext) - 1;
          const int lit = 2 * v + (ext < 0 ? 1 : 0);
          bool duplicate = false;
          for (int other : lits) {
            if (other == lit) {
              duplicate = true;
            } else if (other == negate(lit)) {
              tautology = true;
            }
          }
          if (!duplicate) {
            lits.push_back(lit);
          }
        }
        if (tautology) {
          continue;
        }
        if (lits.empty()) {
          return false;
        }
        if (lits.size() == 1) {
          if (value_of(lits[0]) == kFalse) {
            return false;
          }
          if (value_of(lits[0]) == kUndef) {
            enqueue(lits[0], kNoReason);
          }
          continue;
        }
        watch_clause(alloc_clause(lits, false, 0));
      }
      max_learnts_ = 4000 + arena_.size() / 16;
      return true;
    }

    // ---- assignment ------------------------------------------------------

    static int negate(int lit) { return lit ^ 1; }
    static int var_of(int lit) { return lit >> 1; }

    std::int8_t value_of(int lit) const {
      const std::int8_t v = value_[var_of(lit)];
      if (v == kUndef) {
        return kUndef;
      }
      return (lit & 1) ? static_cast<std::int8_t>(1 - v) : v;
    }

    int decision_level() const { return static_cast<int>(trail_lim_.size()); }

    void new_decision_level() { trail_lim_.push_back(trail_.size()); }

    void enqueue(int lit, std::uint32_t reason) {
      const int v = var_of(lit);
      value_[v] = (lit & 1) ? kFalse : kTrue;
      level_[v] = decision_level();
      reason_[v] = reason;
      trail_.push_back(lit);
    }

    void cancel_until(int target_level) {
      if (decision_level() <= target_level) {
        return;
      }
      const std::size_t bound = trail_lim_[target_level];
      for (std::size_t i = trail_.size(); i-- > bound;) {
        const int v = var_of(trail_[i]);
        polarity_[v] = value_[v] == kTrue ? 1 : 0;
        value_[v] = kUndef;
        reason_[v] = kNoReason;
        if (heap_index_[v] == -1) {
          heap_insert(v);
        }
      }
      trail_.resize(bound);
      trail_lim_.resize(target_level);
      qhead_ = std::min(qhead_, trail_.size());
      if (num_fixed_levels_ > static_cast<std::size_t>(target_level)) {
        num_fixed_levels_ = static_cast<std::size_t>(target_level);
      }
    }

    // ---- propagation -----------------------------------------------------

    std::uint32_t propagate() {
      std::uint32_t conflict = kNoReason;
      while (qhead_ < trail_.size()) {
        const int p = trail_[qhead_++];
        ++stats_.propagations;
        auto& ws = watches_[p];
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < ws.size()) {
          const Watcher w = ws[i++];
          if (value_of(w.blocker) == kTrue) {
            ws[j++] = w;
            continue;
          }
          const std::uint32_t ref = w.clause;
          int* lits = clause_lits(ref);
          const int size = clause_size(ref);
          const int false_lit = negate(p);
          if (lits[0] == false_lit) {
            std::swap(lits[0], lits[1]);
          }
          const int first = lits[0];
          if (first != w.blocker && value_of(first) == kTrue) {
            ws[j++] = {ref, first};
            continue;
          }
          bool moved = false;
          for (int k = 2; k < size; ++k) {
            if (value_of(lits[k]) != kFalse) {
              std::swap(lits[1], lits[k]);
              watches_[negate(lits[1])].push_back({ref, first});
              moved = true;
              break;
            }
          }
          if (moved) {
            continue;
          }
          // No replacement: the clause is unit or falsified. Either way it
          // keeps watching false_lit.
          ws[j++] = {ref, first};
          if (value_of(first) == kFalse) {
            conflict = ref;
            while (i < ws.size()) {
              ws[j++] = ws[i++];
            }
            qhead_ = trail_.size();
            break;
          }
          enqueue(first, ref);
        }
        ws.resize(j);
        if (conflict != kNoReason) {
          break;
        }
      }
      return conflict;
    }

    // ---- conflict analysis -----------------------------------------------

    void analyze(std::uint32_t confl, std::vector<int>& learnt,
                 int& backtrack) {
      learnt.clear();
      learnt.push_back(0);  // placeholder for the asserting literal
      to_clear_.clear();
      int counter = 0;
      int p = -1;
      std::size_t index = trail_.size();

      for (;;) {
        const int* lits = clause_lits(confl);
        const int size = clause_size(confl);
        if (clause_learnt(confl)) {
          refresh_lbd(confl);
        }
        for (int k = (p == -1 ? 0 : 1); k < size; ++k) {
          const int q = lits[k];
          const int v = var_of(q);
          if (seen_[v] || level_[v] == 0) {
            continue;
          }
          seen_[v] = 1;
          to_clear_.push_back(v);
          bump_activity(v);
          if (level_[v] >= decision_level()) {
            ++counter;
          } else {
            learnt.push_back(q);
          }
        }
        while (!seen_[var_of(trail_[index - 1])]) {
          --index;
        }
        --index;
        p = trail_[index];
        seen_[var_of(p)] = 0;
        --counter;
        if (counter == 0) {
          break;
        }
        confl = reason_[var_of(p)];
      }
      learnt[0] = negate(p);

      minimize(learnt);

      if (learnt.size() == 1) {
        backtrack = 0;
      } else {
        std::size_t max_i = 1;
        for (std::size_t k = 2; k < learnt.size(); ++k) {
          if (level_[var_of(learnt[k])] > level_[var_of(learnt[max_i])]) {
            max_i = k;
          }
        }
        std::swap(learnt[1], learnt[max_i]);
        backtrack = level_[var_of(learnt[1])];
      }
      for (int v : to_clear_) {
        seen_[v] = 0;
      }
    }

    // Removes literals whose reasons are fully covered by the rest of the
    // learnt clause (recursive self-subsumption).
    void minimize(std::vector<int>& learnt) {
      std::size_t j = 1;
      for (std::size_t i = 1; i < learnt.size(); ++i) {
        const int v = var_of(learnt[i]);
        if (reason_[v] == kNoReason || !redundant(learnt[i])) {
          learnt[j++] = learnt[i];
        }
      }
      learnt.resize(j);
    }

    bool redundant(int lit) {
      scratch_.clear();
      scratch_.push_back(lit);
      const std::size_t undo_mark = undo_.size();
      const auto rollback = [&] {
        for (std::size_t k = undo_mark; k < undo_.size(); ++k) {
          seen_[undo_[k]] = 0;
        }
        undo_.resize(undo_mark);
      };
      while (!scratch_.empty()) {
        const int q = scratch_.back();
        scratch_.pop_back();
        const std::uint32_t ref = reason_[var_of(q)];
        if (ref == kNoReason) {
          rollback();
          return false;
        }
        const int* lits = clause_lits(ref);
        const int size = clause_size(ref);
        for (int k = 1; k < size; ++k) {
          const int r = lits[k];
          const int v = var_of(r);
          if (seen_[v] || level_[v] == 0) {
            continue;
          }
          if (reason_[v] == kNoReason) {
            rollback();
            return false;
          }
          seen_[v] = 1;
          undo_.push_back(v);
          scratch_.push_back(r);
        }
      }
      // Keep the covering marks; they memoize checks for the remaining
      // literals and are cleared with to_clear_ at the end of analyze.
      for (std::size_t k = undo_mark; k < undo_.size(); ++k) {
        to_clear_.push_back(undo_[k]);
      }
      undo_.resize(undo_mark);
      return true;
    }

    std::uint32_t add_learnt(std::vector<int>& learnt) {
      const std::uint32_t lbd =
          compute_lbd(learnt.data(), static_cast<int>(learnt.size()));
      const std::uint32_t ref = alloc_clause(learnt, true, lbd);
      learnts_.push_back(ref);
      watch_clause(ref);
      return ref;
    }

    std::uint32_t compute_lbd(const int* lits, int size) {
      ++lbd_stamp_;
      std::uint32_t lbd = 0;
      for (int k = 0; k < size; ++k) {
        const std::size_t lev =
            static_cast<std::size_t>(level_[var_of(lits[k])]);
        if (lev == 0) {
          continue;
        }
        if (lev >= lbd_seen_.size()) {
          lbd_seen_.resize(lev + 1, 0);
        }
        if (lbd_seen_[lev] != lbd_stamp_) {
          lbd_seen_[lev] = lbd_stamp_;
          ++lbd;
        }
      }
      return lbd;
    }

    void refresh_lbd(std::uint32_t ref) {
      // Useful learnt clauses keep a low LBD and survive reduction.
      const std::uint32_t lbd = compute_lbd(clause_lits(ref),
                                            clause_size(ref));
      if (lbd < clause_lbd(ref)) {
        set_clause_lbd(ref, lbd);
      }
    }

    // ---- clause database reduction ----------------------------------------

    bool locked(std::uint32_t ref) const {
      const int first = clause_lits(ref)[0];
      return reason_[var_of(first)] == ref && value_of(first) == kTrue;
    }

    void reduce_db() {
      std::vector<std::uint32_t> order = learnts_;
      std::sort(order.begin(), order.end(),
                [this](std::uint32_t a, std::uint32_t b) {
                  if (clause_lbd(a) != clause_lbd(b)) {
                    return clause_lbd(a) > clause_lbd(b);
                  }
                  return clause_size(a) > clause_size(b);
                });
      std::vector<std::uint32_t> drop;
      for (std::size_t i = 0; i < order.size() / 2; ++i) {
        const std::uint32_t ref = order[i];
        if (clause_lbd(ref) <= 2 || clause_size(ref) <= 2 || locked(ref)) {
          continue;
        }
        drop.push_back(ref);
      }
      if (drop.empty()) {
        max_learnts_ += max_learnts_ / 2;
        return;
      }
      std::sort(drop.begin(), drop.end());
      rebuild_arena(drop);
      max_learnts_ += 512;
    }

    void rebuild_arena(const std::vector<std::uint32_t>& drop) {
      std::vector<int> fresh;
      fresh.reserve(arena_.size());
      std::vector<std::uint32_t> remap_from;
      std::vector<std::uint32_t> remap_to;
      std::vector<std::uint32_t> new_learnts;

      std::size_t drop_i = 0;
      std::uint32_t ref = 0;
      while (ref < arena_.size()) {
        const std::uint32_t next =
            ref + 2 + static_cast<std::uint32_t>(clause_size(ref));
        if (drop_i < drop.size() && drop[drop_i] == ref) {
          ++drop_i;
          ref = next;
          continue;
        }
        const std::uint32_t moved = static_cast<std::uint32_t>(fresh.size());
        fresh.insert(fresh.end(), arena_.begin() + ref, arena_.begin() + next);
        remap_from.push_back(ref);
        remap_to.push_back(moved);
        if (clause_learnt(ref)) {
          new_learnts.push_back(moved);
        }
        ref = next;
      }
      arena_ = std::move(fresh);
      learnts_ = std::move(new_learnts);

      const auto remap = [&](std::uint32_t old) -> std::uint32_t {
        const auto it =
            std::lower_bound(remap_from.begin(), remap_from.end(), old);
        if (it == remap_from.end() || *it != old) {
          return kNoReason;
        }
        return remap_to[it - remap_from.begin()];
      };

      for (std::size_t v = 0; v < num_vars_; ++v) {
        if (reason_[v] != kNoReason) {
          reason_[v] = remap(reason_[v]);
        }
      }
      for (auto& ws : watches_) {
        ws.clear();
      }
      std::uint32_t scan = 0;
      while (scan < arena_.size()) {
        watch_clause(scan);
        scan += 2 + static_cast<std::uint32_t>(clause_size(scan));
      }
    }

    // ---- branching --------------------------------------------------------

    void bump_activity(int v) {
      activity_[v] += activity_inc_;
      if (activity_[v] > 1e100) {
        for (auto& a : activity_) {
          a *= 1e-100;
        }
        activity_inc_ *= 1e-100;
      }
      if (heap_index_[v] != -1) {
        heap_up(heap_index_[v]);
      }
    }

    void decay_activities() { activity_inc_ /= 0.95; }

    int pick_branch_var() {
      while (!heap_.empty()) {
        const int v = heap_[0];
        heap_remove_top();
        if (value_[v] == kUndef) {
          return v;
        }
      }
      return -1;
    }

    // Binary max-heap ordered by activity, ties by lower variable index.
    bool heap_less(int a, int b) const {
      if (activity_[a] != activity_[b]) {
        return activity_[a] > activity_[b];
      }
      return a < b;
    }

    void heap_insert(int v) {
      heap_index_[v] = static_cast<int>(heap_.size());
      heap_.push_back(v);
      heap_up(heap_index_[v]);
    }

    void heap_remove_top() {
      const int last = heap_.back();
      heap_index_[heap_[0]] = -1;
      heap_.pop_back();
      if (!heap_.empty()) {
        heap_[0] = last;
        heap_index_[last] = 0;
        heap_down(0);
      }
    }

    void heap_up(int i) {
      const int v = heap_[i];
      while (i > 0) {
        const int parent = (i - 1) / 2;
        if (!heap_less(v, heap_[parent])) {
          break;
        }
        heap_[i] = heap_[parent];
        heap_index_[heap_[i]] = i;
        i = parent;
      }
      heap_[i] = v;
      heap_index_[v] = i;
    }

    void heap_down(int i) {
      const int v = heap_[i];
      const int size = static_cast<int>(heap_.size());
      for (;;) {
        int child = 2 * i + 1;
        if (child >= size) {
          break;
        }
        if (child + 1 < size && heap_less(heap_[child + 1], heap_[child])) {
          ++child;
        }
        if (!heap_less(heap_[child], v)) {
          break;
        }
        heap_[i] = heap_[child];
        heap_index_[heap_[i]] = i;
        i = child;
      }
      heap_[i] = v;
      heap_index_[v] = i;
    }

    static std::uint64_t luby(std::uint64_t i) {
      // Sequence 1 1 2 1 1 2 4 1 1 2 1 1 2 4 8 ...
      std::uint64_t size = 1;
      std::uint64_t seq = 0;
      while (size < i + 1) {
        ++seq;
        size = 2 * size + 1;
      }
      while (size - 1 != i) {
        size = (size - 1) / 2;
        --seq;
        i %= size;
      }
      return std::uint64_t{1} << seq;
    }

    std::size_t num_vars_;
    bool ok_ = true;

    std::vector<int> arena_;
    std::vector<std::uint32_t> learnts_;
    std::vector<std::vector<Watcher>> watches_;

    std::vector<std::int8_t> value_;
    std::vector<int> level_;
    std::vector<std::uint32_t> reason_;
    std::vector<int> trail_;
    std::vector<std::size_t> trail_lim_;
    std::size_t qhead_ = 0;

    std::vector<int> assumptions_;  // internal literals, in order
    std::size_t num_fixed_levels_ = 0;

    std::vector<double> activity_;
    double activity_inc_ = 1.0;
    std::vector<int> heap_;
    std::vector<int> heap_index_;
    std::vector<std::uint8_t> polarity_;

    std::vector<std::uint8_t> seen_;
    std::vector<int> to_clear_;
    std::vector<int> scratch_;
    std::vector<int> undo_;
    std::vector<std::uint64_t> lbd_seen_;
    std::uint64_t lbd_stamp_ = 0;

    std::size_t max_learnts_ = 4000;
    SolverStats stats_;
  };
};

}  // namespace cliffsynth
