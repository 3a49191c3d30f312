#include "divelect/scoring.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "combinatorics.hpp"
#include "divelect/errors.hpp"

namespace divelect {

const char* score_name(ScoreKind kind) {
  switch (kind) {
    case ScoreKind::AV: return "av";
    case ScoreKind::SAV: return "sav";
    case ScoreKind::CC: return "cc";
    case ScoreKind::PAV: return "pav";
  }
  throw InvariantError("unreachable score kind");
}

ScoreKind score_from_name(const std::string& name) {
  if (name == "av") return ScoreKind::AV;
  if (name == "sav") return ScoreKind::SAV;
  if (name == "cc") return ScoreKind::CC;
  if (name == "pav") return ScoreKind::PAV;
  throw ConfigError("unknown scoring function '" + name + "'");
}

SeparableWeights av_weights(const Election& e) {
  SeparableWeights w;
  w.weight.assign(e.num_candidates(), 0);
  for (const auto& ballot : e.approvals) {
    for (int c : ballot) ++w.weight[c];
  }
  w.scale = 1;
  w.alpha = 0;
  for (const auto& v : w.weight) w.alpha = std::max(w.alpha, v);
  return w;
}

SeparableWeights sav_weights(const Election& e) {
  // Empty ballots contribute nothing and stay out of the lcm.
  BigInt ell = 1;
  for (const auto& ballot : e.approvals) {
    if (!ballot.empty()) {
      ell = boost::multiprecision::lcm(ell, BigInt(ballot.size()));
    }
  }
  SeparableWeights w;
  w.weight.assign(e.num_candidates(), 0);
  for (const auto& ballot : e.approvals) {
    if (ballot.empty()) continue;
    const BigInt share = ell / BigInt(ballot.size());
    for (int c : ballot) w.weight[c] += share;
  }
  w.scale = ell;
  w.alpha = 0;
  for (const auto& v : w.weight) w.alpha = std::max(w.alpha, v);
  return w;
}

BigInt separable_score_scaled(const SeparableWeights& w, const Committee& s) {
  BigInt total = 0;
  for (int c : s.members) total += w.weight[c];
  return total;
}

Rat separable_score(const SeparableWeights& w, const Committee& s) {
  return Rat(separable_score_scaled(w, s), w.scale);
}

long long cc_score(const Election& e, const Committee& s) {
  validate_committee(e, s);
  long long covered = 0;
  for (const auto& ballot : e.approvals) {
    for (int c : ballot) {
      if (s.contains(c)) {
        ++covered;
        break;
      }
    }
  }
  return covered;
}

Rat pav_score(const Election& e, const Committee& s) {
  const Satisfaction sat = satisfaction(e, s);
  // Harmonic prefix sums shared across agents.
  std::vector<Rat> harmonic(e.k + 1, Rat(0));
  for (int i = 1; i <= e.k; ++i) harmonic[i] = harmonic[i - 1] + Rat(1, i);
  Rat total = 0;
  for (long long v : sat) total += harmonic[v];
  return total;
}

std::pair<Committee, Rat> max_separable_committee(const Election& e,
                                                  const SeparableWeights& w) {
  std::vector<int> order(e.num_candidates());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return w.weight[a] > w.weight[b];
  });
  order.resize(e.k);
  Committee best = Committee::of(std::move(order));
  return {best, separable_score(w, best)};
}

std::pair<Committee, Rat> max_score_exact(const Election& e, ScoreKind kind,
                                          int exhaustive_limit) {
  if (kind != ScoreKind::CC && kind != ScoreKind::PAV) {
    throw ConfigError("max_score_exact handles the non-separable scores only");
  }
  if (e.num_candidates() > exhaustive_limit) {
    throw SizeLimitError("exhaustive score search limited to " +
                         std::to_string(exhaustive_limit) + " candidates, got " +
                         std::to_string(e.num_candidates()));
  }
  std::optional<Committee> best;
  Rat best_score = 0;
  detail::for_each_combination(
      e.num_candidates(), e.k, [&](const std::vector<int>& pick) {
        Committee s{pick};
        const Rat score =
            kind == ScoreKind::CC ? Rat(cc_score(e, s)) : pav_score(e, s);
        if (!best || score > best_score) {
          best = s;
          best_score = score;
        }
      });
  return {*best, best_score};
}

}  // namespace divelect
