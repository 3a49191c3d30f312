#include "divelect/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "combinatorics.hpp"
#include "divelect/knapsack.hpp"

namespace divelect {

namespace {

SolverOutcome infeasible() { return SolverOutcome{}; }

SolverOutcome optimal(Committee s, DiversityValue d, Rat score) {
  SolverOutcome out;
  out.status = SolveStatus::Optimal;
  out.committee = std::move(s);
  out.diversity = std::move(d);
  out.score = std::move(score);
  return out;
}

std::vector<long long> pool_counts(const Election& e) {
  std::vector<long long> counts(e.num_labels(), 0);
  for (int l : e.label_of) ++counts[l];
  return counts;
}

/// Position of each candidate in the descending-by-weight order within its
/// label, 1-based; weight ties keep input order.
std::vector<int> label_positions(const Election& e,
                                 const SeparableWeights& w) {
  std::vector<std::vector<int>> by_label(e.num_labels());
  for (int c = 0; c < e.num_candidates(); ++c) {
    by_label[e.label_of[c]].push_back(c);
  }
  std::vector<int> pi(e.num_candidates(), 0);
  for (auto& group : by_label) {
    std::stable_sort(group.begin(), group.end(), [&](int a, int b) {
      return w.weight[a] > w.weight[b];
    });
    for (std::size_t i = 0; i < group.size(); ++i) {
      pi[group[i]] = static_cast<int>(i) + 1;
    }
  }
  return pi;
}

}  // namespace

Committee max_diversity_greedy(const Election& e, IndexKind kind) {
  (void)kind;  // one committee is optimal for all four indices
  std::vector<std::vector<int>> by_label(e.num_labels());
  for (int c = 0; c < e.num_candidates(); ++c) {
    by_label[e.label_of[c]].push_back(c);
  }
  std::vector<std::size_t> next(e.num_labels(), 0);
  std::vector<long long> counts(e.num_labels(), 0);
  std::vector<int> chosen;
  chosen.reserve(e.k);
  for (int step = 0; step < e.k; ++step) {
    int pick = -1;
    for (int l = 0; l < e.num_labels(); ++l) {
      if (next[l] >= by_label[l].size()) continue;
      if (pick < 0 || counts[l] < counts[pick]) pick = l;
    }
    if (pick < 0) throw InvariantError("candidate pool exhausted before k");
    chosen.push_back(by_label[pick][next[pick]++]);
    ++counts[pick];
  }
  return Committee::of(std::move(chosen));
}

SolverOutcome dscr_exchange_lc(const Election& e, const SeparableWeights& w,
                               const BigInt& beta_scaled) {
  const Committee committee = max_separable_committee(e, w).first;
  BigInt scaled = separable_score_scaled(w, committee);
  if (scaled < beta_scaled) return infeasible();

  std::vector<char> in(e.num_candidates(), 0);
  for (int c : committee.members) in[c] = 1;
  std::vector<long long> counts = label_counts_of(e, committee.members);
  const std::vector<long long> pool = pool_counts(e);

  for (int level = 0; level < e.k; ++level) {
    // Best unchosen candidate per label stuck at `level` occurrences.
    std::vector<int> entrants;
    for (int l = 0; l < e.num_labels(); ++l) {
      if (counts[l] != level || pool[l] <= level) continue;
      int best = -1;
      for (int c = 0; c < e.num_candidates(); ++c) {
        if (in[c] || e.label_of[c] != l) continue;
        if (best < 0 || w.weight[c] > w.weight[best]) best = c;
      }
      if (best >= 0) entrants.push_back(best);
    }
    std::vector<char> used(entrants.size(), 0);
    while (true) {
      // Highest-weight entrant; weight ties fall to the lowest candidate
      // index, matching every other tie in the solvers.
      int add = -1;
      for (std::size_t i = 0; i < entrants.size(); ++i) {
        if (used[i]) continue;
        const int candidate = entrants[i];
        if (add < 0 || w.weight[candidate] > w.weight[add] ||
            (w.weight[candidate] == w.weight[add] && candidate < add)) {
          add = candidate;
        }
      }
      if (add < 0) break;
      // Cheapest member whose label occurs more than level+1 times.
      int remove = -1;
      for (int c = 0; c < e.num_candidates(); ++c) {
        if (!in[c] || counts[e.label_of[c]] <= level + 1) continue;
        if (remove < 0 || w.weight[c] < w.weight[remove]) remove = c;
      }
      if (remove < 0) break;
      const BigInt candidate_score =
          scaled - w.weight[remove] + w.weight[add];
      if (candidate_score < beta_scaled) break;
      in[remove] = 0;
      in[add] = 1;
      --counts[e.label_of[remove]];
      ++counts[e.label_of[add]];
      scaled = candidate_score;
      for (std::size_t i = 0; i < entrants.size(); ++i) {
        if (entrants[i] == add) used[i] = 1;
      }
    }
  }

  std::vector<int> members;
  for (int c = 0; c < e.num_candidates(); ++c) {
    if (in[c]) members.push_back(c);
  }
  Committee result = Committee::of(std::move(members));
  return optimal(result,
                 diversity_from_counts(label_counts_of(e, result.members), e.k,
                                       IndexKind::LexCount),
                 Rat(scaled, w.scale));
}

namespace {

struct SurrogateSchedule {
  // One strictly decreasing value list per label, entry i-1 giving the gain
  // of that label's i-th occurrence. Integral after scaling; positive on the
  // first k positions.
  std::vector<std::vector<long long>> per_label;
  long long max_first = 0;  // max over labels of the first entry
  long long weight_lcm = 1;
};

/// Simpson surrogate: sum over labels of the first n_l entries equals
/// lcm * (2k^2 + k^2 * Si'), so maximizing it maximizes (weighted) Simpson.
/// Schedules run to each label's full candidate count; entries past position
/// k can go negative, which only ever penalizes non-prefix selections.
SurrogateSchedule simpson_schedule(const Election& e, bool weighted) {
  SurrogateSchedule s;
  BigInt lcm_big = 1;
  if (weighted) {
    if (!e.label_weights) {
      throw ConfigError("weighted Simpson solver needs label weights");
    }
    for (long long weight : *e.label_weights) {
      lcm_big = boost::multiprecision::lcm(lcm_big, BigInt(weight));
    }
  }
  const int n = e.num_candidates();
  // Everything downstream (gains, eta, capacities, value sums) stays within
  // 64 bits when this extreme magnitude does.
  checked_int64(BigInt(e.k + 1) *
                    (BigInt(2) * e.k * lcm_big + (BigInt(2) * n + 1) * lcm_big),
                "label weight lcm");
  const long long lcm = lcm_big.convert_to<long long>();
  s.weight_lcm = lcm;
  const std::vector<long long> pool = pool_counts(e);
  s.per_label.resize(e.num_labels());
  for (int l = 0; l < e.num_labels(); ++l) {
    const long long omega = weighted ? (*e.label_weights)[l] : 1;
    auto& t = s.per_label[l];
    t.resize(std::max<long long>(pool[l], 1));
    for (std::size_t i = 1; i <= t.size(); ++i) {
      t[i - 1] =
          2LL * e.k * lcm + (1 - 2LL * static_cast<long long>(i)) *
                                (lcm / omega);
    }
    s.max_first = std::max(s.max_first, t[0]);
  }
  return s;
}

long long surrogate_of_counts(const SurrogateSchedule& s,
                              std::span<const long long> counts) {
  long long total = 0;
  for (std::size_t l = 0; l < counts.size(); ++l) {
    for (long long i = 0; i < counts[l]; ++i) total += s.per_label[l][i];
  }
  return total;
}

struct DecodedCommittee {
  Committee committee;
  BigInt score_scaled;
};

/// Shared decode and runtime checks for the maximization knapsacks: a
/// solution worth the threshold must hold exactly k items within capacity
/// and meet the score bound.
DecodedCommittee decode_checked(const Election& e, const SeparableWeights& w,
                                const std::vector<int>& chosen,
                                std::int64_t used_weight, std::int64_t capacity,
                                const BigInt& beta_scaled) {
  if (static_cast<int>(chosen.size()) != e.k) {
    throw InvariantError("knapsack solution above threshold has " +
                         std::to_string(chosen.size()) +
                         " items, expected k = " + std::to_string(e.k));
  }
  if (used_weight > capacity) {
    throw InvariantError("knapsack solution exceeds its capacity");
  }
  Committee s = Committee::of(chosen);
  DecodedCommittee out{s, separable_score_scaled(w, s)};
  if (out.score_scaled < beta_scaled) {
    throw InvariantError("knapsack decode violates the score bound");
  }
  return out;
}

}  // namespace

SolverOutcome dscr_knapsack_max(const Election& e, const SeparableWeights& w,
                                const BigInt& beta_scaled, IndexKind kind,
                                const SolverCaps& caps) {
  if (kind != IndexKind::Simpson && kind != IndexKind::Shannon) {
    throw ConfigError("the maximization knapsack covers Simpson and Shannon");
  }
  const int n = e.num_candidates();
  const int k = e.k;
  if (beta_scaled > BigInt(k) * w.alpha) return infeasible();

  const std::int64_t alpha = checked_int64(w.alpha, "score weight bound");
  const std::int64_t beta = checked_int64(beta_scaled, "score bound");
  const BigInt capacity_big =
      BigInt(k) * (BigInt(n) * alpha + 1) - beta;
  const std::int64_t capacity = checked_int64(capacity_big, "knapsack bound");
  const std::vector<int> pi = label_positions(e, w);

  Committee decoded;
  if (kind == IndexKind::Simpson) {
    const SurrogateSchedule sched = simpson_schedule(e, /*weighted=*/false);
    const long long eta = 1 + static_cast<long long>(k) * sched.max_first;
    std::vector<KnapsackItem<long long>> items(n);
    for (int c = 0; c < n; ++c) {
      items[c].weight = checked_int64(
          BigInt(n) * alpha + 1 - w.weight[c], "knapsack item weight");
      items[c].value = sched.per_label[e.label_of[c]][pi[c] - 1] + eta;
    }
    const auto result = knapsack_dp(items, capacity, caps.dp_cells);
    if (result.total < static_cast<long long>(k) * eta) return infeasible();
    std::int64_t used = 0;
    for (int c : result.chosen) used += items[c].weight;
    decoded =
        decode_checked(e, w, result.chosen, used, capacity, beta_scaled)
            .committee;
  } else {
    // Shannon gains: t(i) = -i ln i + (i-1) ln(i-1) + ln k + 2, positive and
    // strictly decreasing on [1, k]. Extended past k (where it may go
    // negative) so every candidate position has an item value; optimal
    // selections are per-label prefixes and never pay those entries.
    const double logk = std::log(double(k));
    auto xlogx = [](double v) { return v > 0.0 ? v * std::log(v) : 0.0; };
    std::vector<double> t(n);
    for (int i = 1; i <= n; ++i) {
      t[i - 1] = -xlogx(double(i)) + xlogx(double(i - 1)) + logk + 2.0;
    }
    const double eta = double(k) * t[0] + 1.0;
    std::vector<KnapsackItem<double>> items(n);
    for (int c = 0; c < n; ++c) {
      items[c].weight = checked_int64(
          BigInt(n) * alpha + 1 - w.weight[c], "knapsack item weight");
      items[c].value = t[pi[c] - 1] + eta;
    }
    const auto result = knapsack_dp(items, capacity, caps.dp_cells);
    // Solutions with fewer than k items fall short of k*eta by more than
    // t(1) + 1, so half a unit of slack absorbs float error.
    if (result.total < double(k) * eta - 0.5) return infeasible();
    std::int64_t used = 0;
    for (int c : result.chosen) used += items[c].weight;
    decoded =
        decode_checked(e, w, result.chosen, used, capacity, beta_scaled)
            .committee;

    // Float values only perturb value comparisons; verify no feasible swap
    // improves the entropy beyond tolerance.
    const auto counts = label_counts_of(e, decoded.members);
    const double base =
        diversity_from_counts(counts, k, IndexKind::Shannon).shannon_value();
    const BigInt base_score = separable_score_scaled(w, decoded);
    for (int out : decoded.members) {
      for (int in = 0; in < n; ++in) {
        if (decoded.contains(in)) continue;
        if (base_score - w.weight[out] + w.weight[in] < beta_scaled) continue;
        auto swapped = counts;
        --swapped[e.label_of[out]];
        ++swapped[e.label_of[in]];
        const double improved =
            diversity_from_counts(swapped, k, IndexKind::Shannon)
                .shannon_value();
        if (improved > base + caps.shannon_tol) {
          throw InvariantError(
              "entropy knapsack result admits an improving swap");
        }
      }
    }
  }

  return optimal(
      decoded,
      diversity_from_counts(label_counts_of(e, decoded.members), e.k, kind),
      Rat(separable_score_scaled(w, decoded), w.scale));
}

SolverOutcome dscr_knapsack_decision(const Election& e,
                                     const SeparableWeights& w,
                                     const BigInt& beta_scaled,
                                     const Rat& delta, bool weighted,
                                     const SolverCaps& caps) {
  const int n = e.num_candidates();
  const int k = e.k;
  if (beta_scaled > BigInt(k) * w.alpha) return infeasible();

  const SurrogateSchedule sched = simpson_schedule(e, weighted);
  const long long zeta = sched.max_first;
  // Simpson bound delta mapped onto the integer surrogate grid.
  const BigInt delta_sur = rat_ceil(Rat(sched.weight_lcm) * BigInt(k) * k *
                                    (Rat(2) + delta));
  if (delta_sur > BigInt(k) * zeta) return infeasible();

  const long long eta = static_cast<long long>(k) * zeta + zeta + 1;
  const BigInt capacity_big =
      BigInt(k) * eta - std::max(BigInt(0), delta_sur);
  const std::int64_t capacity = checked_int64(capacity_big, "knapsack bound");
  const std::vector<int> pi = label_positions(e, w);

  // Scores ride in the values here, so the running value sum must stay
  // within 64 bits even for heavily scaled weights.
  checked_int64(BigInt(n) * (w.alpha + BigInt(n) * w.alpha + 1),
                "aggregate knapsack value");
  std::vector<KnapsackItem<long long>> items(n);
  for (int c = 0; c < n; ++c) {
    items[c].weight = eta - sched.per_label[e.label_of[c]][pi[c] - 1];
    items[c].value = checked_int64(
        w.weight[c] + BigInt(n) * w.alpha + 1, "knapsack item value");
  }
  const auto result = knapsack_dp(items, capacity, caps.dp_cells);
  const BigInt threshold =
      beta_scaled + BigInt(k) * (BigInt(n) * w.alpha + 1);
  if (BigInt(result.total) < threshold) return infeasible();

  if (static_cast<int>(result.chosen.size()) != k) {
    throw InvariantError("decision knapsack solution is not a k-set");
  }
  Committee s = Committee::of(result.chosen);
  const auto counts = label_counts_of(e, s.members);
  if (separable_score_scaled(w, s) < beta_scaled ||
      surrogate_of_counts(sched, counts) < delta_sur) {
    throw InvariantError("decision knapsack decode violates its bounds");
  }
  const DiversityValue value =
      weighted
          ? weighted_diversity_from_counts(counts, *e.label_weights, k,
                                           IndexKind::Simpson)
          : diversity_from_counts(counts, k, IndexKind::Simpson);
  return optimal(s, value, Rat(separable_score_scaled(w, s), w.scale));
}

SolverOutcome dscr_max_si_via_decision(const Election& e,
                                       const SeparableWeights& w,
                                       const BigInt& beta_scaled,
                                       bool weighted, const SolverCaps& caps) {
  const SurrogateSchedule sched = simpson_schedule(e, weighted);
  // Surrogate delta = lcm * k^2 * (2 + si); invert to drive the decision
  // solver through a binary search over the integer surrogate grid.
  const Rat grid = Rat(sched.weight_lcm) * BigInt(e.k) * e.k;
  auto to_si = [&](const BigInt& surrogate) {
    return Rat(surrogate) / grid - 2;
  };
  BigInt lo = 0;
  BigInt hi = BigInt(e.k) * sched.max_first;
  SolverOutcome best =
      dscr_knapsack_decision(e, w, beta_scaled, to_si(lo), weighted, caps);
  if (best.status == SolveStatus::Infeasible) return best;
  while (lo < hi) {
    const BigInt mid = lo + (hi - lo + 1) / 2;
    SolverOutcome probe =
        dscr_knapsack_decision(e, w, beta_scaled, to_si(mid), weighted, caps);
    if (probe.status == SolveStatus::Optimal) {
      best = std::move(probe);
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return best;
}

SolverOutcome dscr_weighted_si(const Election& e, const SeparableWeights& w,
                               const BigInt& beta_scaled,
                               const SolverCaps& caps) {
  if (!e.label_weights) {
    throw ConfigError("weighted Simpson solver needs label weights");
  }
  const int n = e.num_candidates();
  const int k = e.k;
  if (beta_scaled > BigInt(k) * w.alpha) return infeasible();

  const SurrogateSchedule sched = simpson_schedule(e, /*weighted=*/true);
  const long long eta = 1 + static_cast<long long>(k) * sched.max_first;
  const std::int64_t alpha = checked_int64(w.alpha, "score weight bound");
  const std::int64_t beta = checked_int64(beta_scaled, "score bound");
  const BigInt capacity_big = BigInt(k) * (BigInt(n) * alpha + 1) - beta;
  const std::int64_t capacity = checked_int64(capacity_big, "knapsack bound");
  const std::vector<int> pi = label_positions(e, w);

  std::vector<KnapsackItem<long long>> items(n);
  for (int c = 0; c < n; ++c) {
    items[c].weight =
        checked_int64(BigInt(n) * alpha + 1 - w.weight[c],
                      "knapsack item weight");
    items[c].value = sched.per_label[e.label_of[c]][pi[c] - 1] + eta;
  }
  const auto result = knapsack_dp(items, capacity, caps.dp_cells);
  if (result.total < static_cast<long long>(k) * eta) return infeasible();
  std::int64_t used = 0;
  for (int c : result.chosen) used += items[c].weight;
  const Committee s =
      decode_checked(e, w, result.chosen, used, capacity, beta_scaled)
          .committee;
  return optimal(s,
                 weighted_diversity_from_counts(label_counts_of(e, s.members),
                                                *e.label_weights, k,
                                                IndexKind::Simpson),
                 Rat(separable_score_scaled(w, s), w.scale));
}

namespace {

/// Exact diversity comparison for search loops: Shannon falls back to the
/// integer fingerprint (lower product of n^n means higher entropy) except in
/// the weighted case, where plain doubles decide.
class ProfileOrder {
 public:
  ProfileOrder(const Election& e, IndexKind kind, bool weighted)
      : e_(e), kind_(kind), weighted_(weighted) {}

  DiversityValue eval(std::span<const long long> counts) const {
    return weighted_ ? weighted_diversity_from_counts(
                           counts, *e_.label_weights, e_.k, kind_)
                     : diversity_from_counts(counts, e_.k, kind_);
  }

  /// Ordering of a relative to b.
  Ordering cmp(const DiversityValue& a, const DiversityValue& b) const {
    if (kind_ == IndexKind::Shannon && !weighted_) {
      const BigInt& fa = a.shannon_fingerprint();
      const BigInt& fb = b.shannon_fingerprint();
      if (fa == fb) return Ordering::Equal;
      return fa > fb ? Ordering::Less : Ordering::More;
    }
    return a.compare(b, 0.0);
  }

 private:
  const Election& e_;
  IndexKind kind_;
  bool weighted_;
};

/// Water-filling completion of a partial label profile: add each remaining
/// slot to a least-occupied label that still has spare candidates. Yields
/// the least-majorized reachable profile, an upper bound for every index
/// satisfying Weak Occurrence Balancing.
std::vector<long long> waterfill(std::vector<long long> counts,
                                 std::vector<long long> available, int slots) {
  for (int s = 0; s < slots; ++s) {
    int pick = -1;
    for (std::size_t l = 0; l < counts.size(); ++l) {
      if (available[l] <= 0) continue;
      if (pick < 0 || counts[l] < counts[pick]) pick = static_cast<int>(l);
    }
    if (pick < 0) break;
    ++counts[pick];
    --available[pick];
  }
  return counts;
}

}  // namespace

SolverOutcome dsat_exact(const Election& e, IndexKind kind,
                         const Satisfaction& floors, const SolverCaps& caps) {
  if (static_cast<int>(floors.size()) != e.num_agents()) {
    throw ConfigError("need one satisfaction floor per agent");
  }
  if (e.num_candidates() > caps.dsat_max_candidates) {
    throw SizeLimitError(
        "satisfaction-constrained search limited to " +
        std::to_string(caps.dsat_max_candidates) + " candidates, got " +
        std::to_string(e.num_candidates()));
  }
  const int n = e.num_candidates();
  const int k = e.k;
  const int na = e.num_agents();

  // Candidates grouped by label keep sibling choices adjacent in the search.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return e.label_of[a] < e.label_of[b];
  });

  // approved_after[p][a]: how many of agent a's approvals sit at position
  // >= p in the search order.
  std::vector<std::vector<int>> approves(n);
  for (int a = 0; a < na; ++a) {
    for (int c : e.approvals[a]) approves[c].push_back(a);
  }
  std::vector<std::vector<long long>> approved_after(
      n + 1, std::vector<long long>(na, 0));
  for (int p = n - 1; p >= 0; --p) {
    approved_after[p] = approved_after[p + 1];
    for (int a : approves[order[p]]) ++approved_after[p][a];
  }
  std::vector<std::vector<long long>> label_after(
      n + 1, std::vector<long long>(e.num_labels(), 0));
  for (int p = n - 1; p >= 0; --p) {
    label_after[p] = label_after[p + 1];
    ++label_after[p][e.label_of[order[p]]];
  }

  const ProfileOrder profile(e, kind, /*weighted=*/false);
  std::optional<DiversityValue> best;
  std::vector<int> best_members;
  std::vector<int> chosen;
  std::vector<long long> counts(e.num_labels(), 0);
  std::vector<long long> sat(na, 0);

  auto feasible_here = [&](int pos, int picked) {
    const int remaining = k - picked;
    for (int a = 0; a < na; ++a) {
      const long long need = floors[a] - sat[a];
      if (need > remaining || need > approved_after[pos][a]) return false;
    }
    return true;
  };

  std::function<void(int, int)> dfs = [&](int pos, int picked) {
    if (picked == k) {
      for (int a = 0; a < na; ++a) {
        if (sat[a] < floors[a]) return;
      }
      DiversityValue value = profile.eval(counts);
      if (!best || profile.cmp(value, *best) == Ordering::More) {
        best = std::move(value);
        best_members = chosen;
      }
      return;
    }
    if (pos == n || n - pos < k - picked) return;
    if (!feasible_here(pos, picked)) return;
    if (best) {
      const auto bound =
          waterfill(counts, label_after[pos], k - picked);
      if (profile.cmp(profile.eval(bound), *best) != Ordering::More) return;
    }

    const int c = order[pos];
    // Include branch first: deeper committees sooner.
    chosen.push_back(c);
    ++counts[e.label_of[c]];
    for (int a : approves[c]) ++sat[a];
    dfs(pos + 1, picked + 1);
    for (int a : approves[c]) --sat[a];
    --counts[e.label_of[c]];
    chosen.pop_back();

    dfs(pos + 1, picked);
  };
  dfs(0, 0);

  if (!best) return infeasible();
  Committee s = Committee::of(best_members);
  return optimal(s, profile.eval(label_counts_of(e, s.members)), Rat(0));
}

SolverOutcome brute_force(const Election& e, IndexKind kind,
                          const BruteForceConstraint& constraint, bool weighted,
                          const SolverCaps& caps) {
  const int n = e.num_candidates();
  const BigInt combos = detail::n_choose_k(n, e.k);
  if (combos > caps.max_combinations) {
    throw SizeLimitError("brute force would enumerate " + combos.str() +
                         " committees, above the configured cap");
  }
  if (weighted && !e.label_weights) {
    throw ConfigError("weighted oracle needs label weights");
  }
  using CK = BruteForceConstraint::Kind;
  if (constraint.kind == CK::MinScore && constraint.weights == nullptr) {
    throw ConfigError("score-constrained oracle needs weights");
  }
  if (constraint.kind == CK::Floors &&
      (constraint.floors == nullptr ||
       static_cast<int>(constraint.floors->size()) != e.num_agents())) {
    throw ConfigError("floor-constrained oracle needs one floor per agent");
  }

  const ProfileOrder profile(e, kind, weighted);
  std::optional<DiversityValue> best;
  BigInt best_score = 0;
  std::vector<int> best_members;

  detail::for_each_combination(n, e.k, [&](const std::vector<int>& pick) {
    BigInt scaled = 0;
    if (constraint.kind == CK::MinScore) {
      for (int c : pick) scaled += constraint.weights->weight[c];
      if (scaled < constraint.beta_scaled) return;
    } else if (constraint.kind == CK::Floors) {
      std::vector<long long> sat(e.num_agents(), 0);
      for (int c : pick) {
        for (int a = 0; a < e.num_agents(); ++a) {
          if (std::binary_search(e.approvals[a].begin(), e.approvals[a].end(),
                                 c)) {
            ++sat[a];
          }
        }
      }
      for (int a = 0; a < e.num_agents(); ++a) {
        if (sat[a] < (*constraint.floors)[a]) return;
      }
    }
    const auto counts = label_counts_of(e, pick);
    DiversityValue value = profile.eval(counts);
    bool better = false;
    if (!best) {
      better = true;
    } else {
      const Ordering ord = profile.cmp(value, *best);
      better = ord == Ordering::More ||
               (ord == Ordering::Equal &&
                constraint.kind == CK::MinScore && scaled > best_score);
    }
    if (better) {
      best = std::move(value);
      best_score = scaled;
      best_members = pick;
    }
  });

  if (!best) return infeasible();
  Committee s = Committee::of(best_members);
  Rat score = constraint.kind == CK::MinScore
                  ? Rat(best_score, constraint.weights->scale)
                  : Rat(0);
  return optimal(s, *best, std::move(score));
}

}  // namespace divelect
