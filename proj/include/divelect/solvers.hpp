#pragma once

#include <functional>
#include <optional>

#include "divelect/indices.hpp"
#include "divelect/model.hpp"
#include "divelect/scoring.hpp"

namespace divelect {

enum class SolveStatus { Optimal, Infeasible };

/// Infeasible is an answer, not an error; size and resource caps throw.
struct SolverOutcome {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<Committee> committee;
  std::optional<DiversityValue> diversity;
  Rat score;  // under the solver's scoring function; 0 when infeasible
};

struct SolverCaps {
  std::int64_t dp_cells = 100'000'000;
  int dsat_max_candidates = 30;
  std::int64_t max_combinations = 5'000'000;
  int exhaustive_limit = 24;
  double shannon_tol = 1e-9;
};

/// Unconstrained diversity maximum: repeatedly add a candidate of a
/// least-occurring label that still has unselected candidates. Optimal for
/// every index satisfying Weak Occurrence Balancing, i.e. all four.
/// Ties fall to the lowest label index, then lowest candidate index.
Committee max_diversity_greedy(const Election& e, IndexKind kind);

/// Score-constrained LC maximization by iterated swaps from a score-maximal
/// committee. The result is also Ri-maximal among feasible committees.
/// beta is on the scaled integer score grid of `w`.
SolverOutcome dscr_exchange_lc(const Election& e, const SeparableWeights& w,
                               const BigInt& beta_scaled);

/// Score-constrained Si/Sh maximization by 0-1 knapsack (separable scores
/// with polynomially bounded weights; use AV, not scaled SAV).
/// Decodes are checked at runtime: a solution worth at least k*eta must have
/// exactly k items within capacity.
SolverOutcome dscr_knapsack_max(const Election& e, const SeparableWeights& w,
                                const BigInt& beta_scaled, IndexKind kind,
                                const SolverCaps& caps = {});

/// Decision variant with the score in item values, so SAV-scaled weights are
/// fine. Index is Simpson (weighted when `weighted`); delta is the bound on
/// the Si value itself. Returns a committee meeting both bounds or
/// Infeasible.
SolverOutcome dscr_knapsack_decision(const Election& e,
                                     const SeparableWeights& w,
                                     const BigInt& beta_scaled,
                                     const Rat& delta, bool weighted = false,
                                     const SolverCaps& caps = {});

/// Si maximization for scores that only fit the decision reduction (SAV):
/// binary search over the integer surrogate grid of Si values.
SolverOutcome dscr_max_si_via_decision(const Election& e,
                                       const SeparableWeights& w,
                                       const BigInt& beta_scaled,
                                       bool weighted = false,
                                       const SolverCaps& caps = {});

/// Weighted-Simpson maximization via the knapsack with per-label value
/// schedules. Requires label weights.
SolverOutcome dscr_weighted_si(const Election& e, const SeparableWeights& w,
                               const BigInt& beta_scaled,
                               const SolverCaps& caps = {});

/// Diversity maximization under per-agent satisfaction floors, by
/// label-grouped depth-first search with two conservative prunings
/// (greedy-completion diversity bound, per-agent residual demand).
SolverOutcome dsat_exact(const Election& e, IndexKind kind,
                         const Satisfaction& floors,
                         const SolverCaps& caps = {});

struct BruteForceConstraint {
  enum class Kind { None, MinScore, Floors } kind = Kind::None;
  const SeparableWeights* weights = nullptr;  // for MinScore
  BigInt beta_scaled;
  const Satisfaction* floors = nullptr;  // for Floors
};

/// Exhaustive oracle. Tie-break: diversity-maximal, then score-maximal when
/// a score constraint is present, then lexicographically smallest members.
SolverOutcome brute_force(const Election& e, IndexKind kind,
                          const BruteForceConstraint& constraint = {},
                          bool weighted = false, const SolverCaps& caps = {});

}  // namespace divelect
