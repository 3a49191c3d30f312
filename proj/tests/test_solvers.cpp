#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "divelect/knapsack.hpp"
#include "divelect/solvers.hpp"
#include "support/test_util.hpp"

using namespace divelect;
using namespace divelect::testutil;

namespace {

constexpr IndexKind kAll[] = {IndexKind::Richness, IndexKind::Simpson,
                              IndexKind::Shannon, IndexKind::LexCount};

void check_same_diversity(IndexKind kind, const DiversityValue& a,
                          const DiversityValue& b) {
  if (kind == IndexKind::Shannon) {
    CHECK(std::abs(a.shannon_value() - b.shannon_value()) <= 1e-9);
  } else {
    CHECK(a.compare(b) == Ordering::Equal);
  }
}

}  // namespace

TEST_CASE("knapsack with nothing fitting picks nothing") {
  std::vector<KnapsackItem<long long>> items{{5, 10}, {7, 3}};
  const auto result = knapsack_dp(items, 4);
  CHECK(result.chosen.empty());
  CHECK(result.total == 0);
}

TEST_CASE("knapsack with one fitting item picks it") {
  std::vector<KnapsackItem<long long>> items{{3, 10}};
  const auto result = knapsack_dp(items, 4);
  CHECK(result.chosen == std::vector<int>{0});
  CHECK(result.total == 10);
}

TEST_CASE("knapsack equals subset enumeration on random instances") {
  std::mt19937 rng(42);
  for (int round = 0; round < 200; ++round) {
    const int n = 12;
    std::vector<KnapsackItem<long long>> items(n);
    for (auto& item : items) {
      item.weight = std::uniform_int_distribution<int>(0, 15)(rng);
      item.value = std::uniform_int_distribution<int>(0, 30)(rng);
    }
    const std::int64_t capacity =
        std::uniform_int_distribution<int>(0, 40)(rng);
    const auto result = knapsack_dp(items, capacity);
    long long best = 0;
    for (int mask = 0; mask < (1 << n); ++mask) {
      long long weight = 0, value = 0;
      for (int i = 0; i < n; ++i) {
        if (mask & (1 << i)) {
          weight += items[i].weight;
          value += items[i].value;
        }
      }
      if (weight <= capacity) best = std::max(best, value);
    }
    CHECK(result.total == best);
    // The reported set is consistent with the reported value.
    long long check_weight = 0, check_value = 0;
    for (int i : result.chosen) {
      check_weight += items[i].weight;
      check_value += items[i].value;
    }
    CHECK(check_weight <= capacity);
    CHECK(check_value == result.total);
  }
}

TEST_CASE("knapsack cell cap raises a resource error") {
  std::vector<KnapsackItem<long long>> items{{1, 1}, {2, 2}};
  CHECK_THROWS_AS(knapsack_dp(items, 1000, 100), ResourceError);
}

TEST_CASE("greedy picks all distinct labels when possible") {
  const Election e = make_election("abcdea", 5);
  const Committee s = max_diversity_greedy(e, IndexKind::LexCount);
  const auto counts = label_counts(e, s);
  CHECK(*std::max_element(counts.begin(), counts.end()) == 1);
}

TEST_CASE("greedy on a single-label pool takes any k") {
  const Election e = make_election("aaaa", 2);
  const Committee s = max_diversity_greedy(e, IndexKind::Simpson);
  CHECK(s.members.size() == 2);
}

TEST_CASE("greedy matches the oracle for every index") {
  std::mt19937 rng(1001);
  for (int round = 0; round < 60; ++round) {
    const Election e = random_election(rng);
    const Committee s = max_diversity_greedy(e, IndexKind::Richness);
    for (IndexKind kind : kAll) {
      const SolverOutcome oracle = brute_force(e, kind);
      REQUIRE(oracle.status == SolveStatus::Optimal);
      check_same_diversity(kind, diversity(e, s, kind), *oracle.diversity);
    }
  }
}

TEST_CASE("exchange with no slack keeps the maximal score") {
  std::mt19937 rng(2002);
  for (int round = 0; round < 40; ++round) {
    const Election e = random_election(rng);
    const SeparableWeights w = av_weights(e);
    const BigInt top =
        separable_score_scaled(w, max_separable_committee(e, w).first);
    const SolverOutcome out = dscr_exchange_lc(e, w, top);
    REQUIRE(out.status == SolveStatus::Optimal);
    CHECK(separable_score_scaled(w, *out.committee) == top);
    // Best lex diversity among score-maximal committees.
    BruteForceConstraint constraint;
    constraint.kind = BruteForceConstraint::Kind::MinScore;
    constraint.weights = &w;
    constraint.beta_scaled = top;
    const SolverOutcome oracle =
        brute_force(e, IndexKind::LexCount, constraint);
    CHECK(out.diversity->compare(*oracle.diversity) == Ordering::Equal);
  }
}

TEST_CASE("exchange with no score bound reaches the greedy diversity") {
  std::mt19937 rng(2003);
  for (int round = 0; round < 40; ++round) {
    const Election e = random_election(rng);
    const SeparableWeights w = av_weights(e);
    const SolverOutcome out = dscr_exchange_lc(e, w, 0);
    REQUIRE(out.status == SolveStatus::Optimal);
    const Committee greedy = max_diversity_greedy(e, IndexKind::LexCount);
    CHECK(out.diversity->compare(
              diversity(e, greedy, IndexKind::LexCount)) == Ordering::Equal);
  }
}

TEST_CASE("exchange is infeasible above the maximal score") {
  const Election e = make_election("ab", 1, {{0}});
  const SeparableWeights w = av_weights(e);
  CHECK(dscr_exchange_lc(e, w, 5).status == SolveStatus::Infeasible);
}

TEST_CASE("exchange matches the oracle at intermediate bounds") {
  std::mt19937 rng(2004);
  for (int round = 0; round < 60; ++round) {
    const Election e = random_election(rng);
    for (bool sav : {false, true}) {
      const SeparableWeights w = sav ? sav_weights(e) : av_weights(e);
      const BigInt top =
          separable_score_scaled(w, max_separable_committee(e, w).first);
      const BigInt beta = top / 2;
      const SolverOutcome out = dscr_exchange_lc(e, w, beta);
      REQUIRE(out.status == SolveStatus::Optimal);
      CHECK(separable_score_scaled(w, *out.committee) >= beta);
      BruteForceConstraint constraint;
      constraint.kind = BruteForceConstraint::Kind::MinScore;
      constraint.weights = &w;
      constraint.beta_scaled = beta;
      const SolverOutcome lex_oracle =
          brute_force(e, IndexKind::LexCount, constraint);
      CHECK(out.diversity->compare(*lex_oracle.diversity) == Ordering::Equal);
      // The same committee is optimal for richness.
      const SolverOutcome ri_oracle =
          brute_force(e, IndexKind::Richness, constraint);
      check_same_diversity(
          IndexKind::Richness,
          diversity(e, *out.committee, IndexKind::Richness),
          *ri_oracle.diversity);
    }
  }
}

TEST_CASE("exchange diversity is monotone in the score bound") {
  std::mt19937 rng(2005);
  for (int round = 0; round < 40; ++round) {
    const Election e = random_election(rng);
    const SeparableWeights w = av_weights(e);
    const BigInt top =
        separable_score_scaled(w, max_separable_committee(e, w).first);
    std::optional<DiversityValue> previous;  // from tighter bounds
    const std::vector<BigInt> betas{top, BigInt(top / 2), BigInt(0)};
    for (const BigInt& beta : betas) {
      const SolverOutcome out = dscr_exchange_lc(e, w, beta);
      REQUIRE(out.status == SolveStatus::Optimal);
      if (previous) {
        CHECK(out.diversity->compare(*previous) != Ordering::Less);
      }
      previous = out.diversity;
    }
  }
}

TEST_CASE("diversity knapsack equals greedy when unconstrained") {
  std::mt19937 rng(3001);
  for (int round = 0; round < 30; ++round) {
    const Election e = random_election(rng);
    const SeparableWeights w = av_weights(e);
    const Committee greedy = max_diversity_greedy(e, IndexKind::Simpson);
    const SolverOutcome out =
        dscr_knapsack_max(e, w, 0, IndexKind::Simpson);
    REQUIRE(out.status == SolveStatus::Optimal);
    CHECK(out.diversity->compare(diversity(e, greedy, IndexKind::Simpson)) ==
          Ordering::Equal);
  }
}

TEST_CASE("diversity knapsack matches the oracle") {
  std::mt19937 rng(3002);
  for (int round = 0; round < 60; ++round) {
    const Election e = random_election(rng);
    const SeparableWeights w = av_weights(e);
    const BigInt top =
        separable_score_scaled(w, max_separable_committee(e, w).first);
    const std::vector<BigInt> betas{BigInt(0), BigInt(top / 2), top};
    for (const BigInt& beta : betas) {
      BruteForceConstraint constraint;
      constraint.kind = BruteForceConstraint::Kind::MinScore;
      constraint.weights = &w;
      constraint.beta_scaled = beta;
      for (IndexKind kind : {IndexKind::Simpson, IndexKind::Shannon}) {
        const SolverOutcome out = dscr_knapsack_max(e, w, beta, kind);
        REQUIRE(out.status == SolveStatus::Optimal);
        CHECK(separable_score_scaled(w, *out.committee) >= beta);
        const SolverOutcome oracle = brute_force(e, kind, constraint);
        check_same_diversity(kind, *out.diversity, *oracle.diversity);
        if (kind == IndexKind::Shannon) {
          CHECK(distr(e, *out.committee) ==
                distr(e, *oracle.committee));
        }
      }
    }
  }
}

TEST_CASE("diversity knapsack is infeasible above the maximal score") {
  const Election e = make_election("ab", 1, {{0}});
  const SeparableWeights w = av_weights(e);
  CHECK(dscr_knapsack_max(e, w, 10, IndexKind::Simpson).status ==
        SolveStatus::Infeasible);
}

TEST_CASE("decision knapsack trivial and impossible bounds") {
  const Election e = make_election("aabb", 2, {{0, 2}});
  const SeparableWeights w = sav_weights(e);
  // Any committee has simpson at least -1, so delta = -1 with beta = 0 is
  // trivially satisfiable.
  CHECK(dscr_knapsack_decision(e, w, 0, Rat(-1)).status ==
        SolveStatus::Optimal);
  // No committee beats -1/2 here (two slots, best split 1/1).
  CHECK(dscr_knapsack_decision(e, w, 0, Rat(-1, 4)).status ==
        SolveStatus::Infeasible);
  // A bound above the whole surrogate range is rejected before any DP runs.
  CHECK(dscr_knapsack_decision(e, w, 0, Rat(0)).status ==
        SolveStatus::Infeasible);
}

TEST_CASE("decision knapsack matches the oracle on sav instances") {
  std::mt19937 rng(3003);
  for (int round = 0; round < 60; ++round) {
    const Election e = random_election(rng);
    const SeparableWeights w = sav_weights(e);
    const BigInt top =
        separable_score_scaled(w, max_separable_committee(e, w).first);
    const BigInt beta = top / 2;
    BruteForceConstraint constraint;
    constraint.kind = BruteForceConstraint::Kind::MinScore;
    constraint.weights = &w;
    constraint.beta_scaled = beta;
    const SolverOutcome oracle = brute_force(e, IndexKind::Simpson, constraint);
    REQUIRE(oracle.status == SolveStatus::Optimal);
    const Rat optimum = oracle.diversity->simpson_value();
    // Exactly achievable bound: feasible; anything strictly above: not.
    CHECK(dscr_knapsack_decision(e, w, beta, optimum).status ==
          SolveStatus::Optimal);
    const Rat epsilon(1, BigInt(4) * e.k * e.k);
    CHECK(dscr_knapsack_decision(e, w, beta, optimum + epsilon).status ==
          SolveStatus::Infeasible);
  }
}

TEST_CASE("simpson maximization through the decision solver") {
  std::mt19937 rng(3004);
  for (int round = 0; round < 60; ++round) {
    const Election e = random_election(rng);
    const SeparableWeights w = sav_weights(e);
    const BigInt top =
        separable_score_scaled(w, max_separable_committee(e, w).first);
    const std::vector<BigInt> betas{BigInt(0), BigInt(top / 2), top};
    for (const BigInt& beta : betas) {
      const SolverOutcome out = dscr_max_si_via_decision(e, w, beta);
      REQUIRE(out.status == SolveStatus::Optimal);
      CHECK(separable_score_scaled(w, *out.committee) >= beta);
      BruteForceConstraint constraint;
      constraint.kind = BruteForceConstraint::Kind::MinScore;
      constraint.weights = &w;
      constraint.beta_scaled = beta;
      const SolverOutcome oracle =
          brute_force(e, IndexKind::Simpson, constraint);
      CHECK(out.diversity->compare(*oracle.diversity) == Ordering::Equal);
    }
  }
}

TEST_CASE("weighted simpson knapsack reduces to unweighted under unit weights") {
  std::mt19937 rng(4001);
  for (int round = 0; round < 30; ++round) {
    Election e = random_election(rng);
    e.label_weights = std::vector<long long>(e.num_labels(), 1);
    const SeparableWeights w = av_weights(e);
    const BigInt top =
        separable_score_scaled(w, max_separable_committee(e, w).first);
    const BigInt beta = top / 2;
    const SolverOutcome weighted = dscr_weighted_si(e, w, beta);
    const SolverOutcome plain =
        dscr_knapsack_max(e, w, beta, IndexKind::Simpson);
    REQUIRE(weighted.status == SolveStatus::Optimal);
    REQUIRE(plain.status == SolveStatus::Optimal);
    CHECK(weighted.diversity->simpson_value() ==
          plain.diversity->simpson_value());
  }
}

TEST_CASE("weighted simpson knapsack matches the weighted oracle") {
  std::mt19937 rng(4002);
  RandomElectionParams params;
  params.max_candidates = 12;
  params.with_weights = true;
  for (int round = 0; round < 60; ++round) {
    const Election e = random_election(rng, params);
    const SeparableWeights w = av_weights(e);
    const BigInt top =
        separable_score_scaled(w, max_separable_committee(e, w).first);
    const std::vector<BigInt> betas{BigInt(0), BigInt(top / 2)};
    for (const BigInt& beta : betas) {
      const SolverOutcome out = dscr_weighted_si(e, w, beta);
      REQUIRE(out.status == SolveStatus::Optimal);
      CHECK(separable_score_scaled(w, *out.committee) >= beta);
      BruteForceConstraint constraint;
      constraint.kind = BruteForceConstraint::Kind::MinScore;
      constraint.weights = &w;
      constraint.beta_scaled = beta;
      const SolverOutcome oracle = brute_force(
          e, IndexKind::Simpson, constraint, /*weighted=*/true);
      CHECK(out.diversity->compare(*oracle.diversity) == Ordering::Equal);
    }
  }
}

TEST_CASE("weighted solver requires label weights") {
  const Election e = make_election("ab", 1, {{0}});
  CHECK_THROWS_AS(dscr_weighted_si(e, av_weights(e), 0), ConfigError);
}

TEST_CASE("satisfaction search without floors reaches the greedy optimum") {
  std::mt19937 rng(5001);
  for (int round = 0; round < 30; ++round) {
    const Election e = random_election(rng);
    const Satisfaction zero(e.num_agents(), 0);
    for (IndexKind kind : kAll) {
      const SolverOutcome out = dsat_exact(e, kind, zero);
      REQUIRE(out.status == SolveStatus::Optimal);
      const Committee greedy = max_diversity_greedy(e, kind);
      check_same_diversity(kind, *out.diversity, diversity(e, greedy, kind));
    }
  }
}

TEST_CASE("satisfaction search detects impossible floors") {
  const Election e = make_election("aabb", 2, {{0}});
  Satisfaction floors(1, 2);  // agent approves one candidate, demands two
  CHECK(dsat_exact(e, IndexKind::Richness, floors).status ==
        SolveStatus::Infeasible);
}

TEST_CASE("satisfaction search matches the floor oracle") {
  std::mt19937 rng(5002);
  for (int round = 0; round < 60; ++round) {
    const Election e = random_election(rng);
    const SeparableWeights w = av_weights(e);
    const Committee baseline = max_separable_committee(e, w).first;
    const Satisfaction base = satisfaction(e, baseline);
    Satisfaction floors(base.size(), 0);
    for (std::size_t a = 0; a < base.size(); ++a) {
      floors[a] = std::max<long long>(0, base[a] - 1);
    }
    for (IndexKind kind : kAll) {
      const SolverOutcome out = dsat_exact(e, kind, floors);
      // The baseline satisfies its own floors.
      REQUIRE(out.status == SolveStatus::Optimal);
      const Satisfaction achieved = satisfaction(e, *out.committee);
      for (std::size_t a = 0; a < floors.size(); ++a) {
        CHECK(achieved[a] >= floors[a]);
      }
      BruteForceConstraint constraint;
      constraint.kind = BruteForceConstraint::Kind::Floors;
      constraint.floors = &floors;
      const SolverOutcome oracle = brute_force(e, kind, constraint);
      check_same_diversity(kind, *out.diversity, *oracle.diversity);
    }
  }
}

TEST_CASE("satisfaction search enforces its candidate cap") {
  const Election e = make_election("aabb", 2, {{0}});
  SolverCaps caps;
  caps.dsat_max_candidates = 3;
  CHECK_THROWS_AS(
      dsat_exact(e, IndexKind::Richness, Satisfaction(1, 0), caps),
      SizeLimitError);
}

TEST_CASE("oracle trivial cases") {
  const Election full = make_election("aabb", 4);
  const SolverOutcome everything = brute_force(full, IndexKind::Richness);
  CHECK(everything.committee->members == std::vector<int>{0, 1, 2, 3});

  const Election single = make_election("abc", 1);
  const SolverOutcome one = brute_force(single, IndexKind::Simpson);
  CHECK(one.committee->members.size() == 1);
  CHECK(one.diversity->simpson_value() == Rat(-1));
}

TEST_CASE("oracle enforces the combination cap") {
  const Election e = make_election("aabbccdd", 4);
  SolverCaps caps;
  caps.max_combinations = 10;
  CHECK_THROWS_AS(brute_force(e, IndexKind::Richness, {}, false, caps),
                  SizeLimitError);
}

TEST_CASE("unconstrained solvers return all-distinct committees when m >= k") {
  const Election e = make_election("aabbccddee", 4, {{0, 2}, {1}});
  const SeparableWeights w = av_weights(e);
  auto all_distinct = [&](const Committee& s) {
    const auto counts = label_counts(e, s);
    return *std::max_element(counts.begin(), counts.end()) == 1;
  };
  CHECK(all_distinct(max_diversity_greedy(e, IndexKind::Richness)));
  CHECK(all_distinct(*dscr_exchange_lc(e, w, 0).committee));
  CHECK(all_distinct(
      *dscr_knapsack_max(e, w, 0, IndexKind::Simpson).committee));
  CHECK(all_distinct(
      *dsat_exact(e, IndexKind::Shannon, Satisfaction(2, 0)).committee));
}
