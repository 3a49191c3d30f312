#pragma once

#include <string>
#include <utility>
#include <vector>

#include "divelect/model.hpp"
#include "divelect/numeric.hpp"

namespace divelect {

enum class ScoreKind { AV, SAV, CC, PAV };

const char* score_name(ScoreKind kind);
ScoreKind score_from_name(const std::string& name);

/// Separable scoring data: integer per-candidate weights after clearing
/// denominators by `scale` (1 for AV, the ballot-size lcm for SAV).
/// The exact rational weight of candidate c is weight[c] / scale.
struct SeparableWeights {
  std::vector<BigInt> weight;
  BigInt alpha;  // max integer weight
  BigInt scale;  // common denominator multiplier
};

SeparableWeights av_weights(const Election& e);
SeparableWeights sav_weights(const Election& e);

Rat separable_score(const SeparableWeights& w, const Committee& s);
BigInt separable_score_scaled(const SeparableWeights& w, const Committee& s);

/// Number of agents approving at least one member.
long long cc_score(const Election& e, const Committee& s);

/// Harmonic OWA: sum over agents of H_{sat(a)}.
Rat pav_score(const Election& e, const Committee& s);

/// Top-k by weight, ties broken by candidate input order.
std::pair<Committee, Rat> max_separable_committee(const Election& e,
                                                  const SeparableWeights& w);

/// Exhaustive optimum for the NP-hard committee scores, usable while
/// |C| <= `exhaustive_limit`; throws SizeLimitError beyond it.
std::pair<Committee, Rat> max_score_exact(const Election& e, ScoreKind kind,
                                          int exhaustive_limit = 24);

}  // namespace divelect
