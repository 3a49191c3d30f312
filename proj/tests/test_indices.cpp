#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <numeric>
#include <random>

#include "divelect/indices.hpp"
#include "support/test_util.hpp"

using namespace divelect;
using namespace divelect::testutil;

namespace {

const std::vector<long long> kBalanced{3, 3, 4};   // all labels, even
const std::vector<long long> kSkewed{1, 1, 8};     // all labels, one dominant
const std::vector<long long> kTwoLabels{0, 5, 5};  // one label missing

}  // namespace

TEST_CASE("richness golden values") {
  const Election e = three_label_election();
  CHECK(richness(e, committee_by_counts(e, kBalanced)).richness_value() == 3);
  CHECK(richness(e, committee_by_counts(e, kSkewed)).richness_value() == 3);
  CHECK(richness(e, committee_by_counts(e, kTwoLabels)).richness_value() == 2);
}

TEST_CASE("richness of an all-distinct committee is k") {
  const Election e = make_election("abcde", 4);
  CHECK(richness(e, Committee::of({0, 1, 2, 3})).richness_value() == 4);
}

TEST_CASE("richness equals labels minus the zero-occurrence entry") {
  std::mt19937 rng(4821);
  for (int round = 0; round < 100; ++round) {
    const Election e = random_election(rng);
    std::vector<int> all(e.num_candidates());
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(e.k);
    const Committee s = Committee::of(all);
    const DistrVector d = distr(e, s);
    CHECK(richness(e, s).richness_value() == e.num_labels() - d[0]);

    const Rat si = simpson(e, s).simpson_value();
    const long long denom = std::min(e.num_labels(), e.k);
    CHECK(si >= Rat(-1));
    CHECK(si <= Rat(-1, denom));

    const DiversityValue lex = lex_count(e, s);
    for (long long entry : lex.lex_value().sigma) {
      CHECK(entry >= 0);
      CHECK(entry <= denom);
    }
  }
}

TEST_CASE("simpson golden values as exact rationals") {
  const Election e = three_label_election();
  CHECK(simpson(e, committee_by_counts(e, kBalanced)).simpson_value() ==
        Rat(-34, 100));
  CHECK(simpson(e, committee_by_counts(e, kSkewed)).simpson_value() ==
        Rat(-66, 100));
  CHECK(simpson(e, committee_by_counts(e, kTwoLabels)).simpson_value() ==
        Rat(-1, 2));
}

TEST_CASE("simpson extremes") {
  const Election single = make_election("aaa", 3);
  CHECK(simpson(single, Committee::of({0, 1, 2})).simpson_value() == Rat(-1));
  const Election distinct = make_election("abcd", 3);
  CHECK(simpson(distinct, Committee::of({0, 1, 2})).simpson_value() ==
        Rat(-1, 3));
}

TEST_CASE("shannon golden values within rounding tolerance") {
  const Election e = three_label_election();
  CHECK(std::abs(shannon(e, committee_by_counts(e, kBalanced)).shannon_value() -
                 1.09) < 5e-3);
  CHECK(std::abs(shannon(e, committee_by_counts(e, kSkewed)).shannon_value() -
                 0.64) < 5e-3);
  CHECK(std::abs(
            shannon(e, committee_by_counts(e, kTwoLabels)).shannon_value() -
            0.69) < 5e-3);
}

TEST_CASE("shannon closed forms") {
  const Election single = make_election("aaa", 3);
  CHECK(shannon(single, Committee::of({0, 1, 2})).shannon_value() == 0.0);
  // Two labels five each: ln 2.
  const Election halves = make_election("aaaaabbbbb", 10);
  std::vector<int> all(10);
  std::iota(all.begin(), all.end(), 0);
  CHECK(std::abs(shannon(halves, Committee::of(all)).shannon_value() -
                 std::log(2.0)) < 1e-12);
}

TEST_CASE("lex count golden scalars") {
  const Election e = three_label_election();
  CHECK(lex_scalar(lex_count(e, committee_by_counts(e, kBalanced)).lex_value())
            .convert_to<long long>() == 4145152);
  CHECK(lex_scalar(lex_count(e, committee_by_counts(e, kSkewed)).lex_value())
            .convert_to<long long>() == 3495232);
  CHECK(
      lex_scalar(lex_count(e, committee_by_counts(e, kTwoLabels)).lex_value())
          .convert_to<long long>() == 2793472);
}

TEST_CASE("lex count of an all-distinct committee") {
  const Election e = make_election("abcde", 4);
  const auto value = lex_count(e, Committee::of({0, 1, 2, 3}));
  CHECK(value.lex_value().sigma == std::vector<long long>{4, 0, 0, 0});
}

TEST_CASE("lex vector order equals big-integer scalar order") {
  for (int k = 1; k <= 7; ++k) {
    const auto parts = partitions_of(k);
    for (const auto& a : parts) {
      for (const auto& b : parts) {
        const std::size_t m = std::max(a.size(), b.size());
        const auto va =
            diversity_from_counts(pad_to(a, m), k, IndexKind::LexCount);
        const auto vb =
            diversity_from_counts(pad_to(b, m), k, IndexKind::LexCount);
        const Ordering by_vector = va.compare(vb);
        const BigInt sa = lex_scalar(va.lex_value());
        const BigInt sb = lex_scalar(vb.lex_value());
        const Ordering by_scalar = sa < sb   ? Ordering::Less
                                   : sa > sb ? Ordering::More
                                             : Ordering::Equal;
        CHECK(by_vector == by_scalar);
      }
    }
  }
}

TEST_CASE("compare on the three-label committees") {
  const Election e = three_label_election();
  const Committee balanced = committee_by_counts(e, kBalanced);
  const Committee skewed = committee_by_counts(e, kSkewed);
  const Committee two = committee_by_counts(e, kTwoLabels);

  CHECK(compare(IndexKind::Simpson, e, balanced, two) == Ordering::More);
  CHECK(compare(IndexKind::Simpson, e, skewed, two) == Ordering::Less);
  CHECK(compare(IndexKind::Richness, e, balanced, skewed) == Ordering::Equal);
  CHECK(compare(IndexKind::Shannon, e, two, skewed) == Ordering::More);
  CHECK(compare(IndexKind::LexCount, e, skewed, two) == Ordering::More);
  for (IndexKind kind : {IndexKind::Richness, IndexKind::Simpson,
                         IndexKind::Shannon, IndexKind::LexCount}) {
    CHECK(compare(kind, e, balanced, balanced) == Ordering::Equal);
  }
}

TEST_CASE("compare agrees with value comparison over all profiles, k <= 5") {
  for (int k = 1; k <= 5; ++k) {
    const auto parts = partitions_of(k);
    for (const auto& a : parts) {
      for (const auto& b : parts) {
        const std::size_t m = std::max(a.size(), b.size());
        const auto pa = pad_to(a, m);
        const auto pb = pad_to(b, m);
        for (IndexKind kind : {IndexKind::Richness, IndexKind::Simpson,
                               IndexKind::Shannon, IndexKind::LexCount}) {
          const Ordering by_compare = compare_profiles(kind, pa, pb, k);
          const Ordering by_value = diversity_from_counts(pa, k, kind).compare(
              diversity_from_counts(pb, k, kind));
          CHECK(by_compare == by_value);
        }
      }
    }
  }
}

TEST_CASE("pairwise orderings coincide for small committees") {
  // Simpson, Shannon, and the lexicographic index agree up to k = 5;
  // Shannon and the lexicographic index agree up to k = 7.
  for (int k = 1; k <= 7; ++k) {
    const auto parts = partitions_of(k);
    for (const auto& a : parts) {
      for (const auto& b : parts) {
        const std::size_t m = std::max(a.size(), b.size());
        const auto pa = pad_to(a, m);
        const auto pb = pad_to(b, m);
        const Ordering sh = compare_profiles(IndexKind::Shannon, pa, pb, k);
        const Ordering lc = compare_profiles(IndexKind::LexCount, pa, pb, k);
        CHECK(sh == lc);
        if (k <= 5) {
          const Ordering si = compare_profiles(IndexKind::Simpson, pa, pb, k);
          CHECK(si == sh);
        }
      }
    }
  }
}

TEST_CASE("balancing a label pair never hurts any index") {
  // Moving one occurrence from a label ahead by two or more is weakly
  // improving everywhere and strictly improving except for richness.
  std::mt19937 rng(5150);
  std::uniform_int_distribution<int> label_count(2, 6);
  for (int round = 0; round < 2000; ++round) {
    const int m = label_count(rng);
    const int k = std::uniform_int_distribution<int>(3, 9)(rng);
    std::vector<long long> counts(m, 0);
    for (int slot = 0; slot < k; ++slot) {
      ++counts[std::uniform_int_distribution<int>(0, m - 1)(rng)];
    }
    int lo = -1, hi = -1;
    for (int i = 0; i < m && lo < 0; ++i) {
      for (int j = 0; j < m; ++j) {
        if (counts[i] + 2 <= counts[j]) {
          lo = i;
          hi = j;
          break;
        }
      }
    }
    if (lo < 0) continue;
    auto moved = counts;
    ++moved[lo];
    --moved[hi];
    CHECK(compare_profiles(IndexKind::Richness, moved, counts, k) !=
          Ordering::Less);
    CHECK(compare_profiles(IndexKind::Simpson, moved, counts, k) ==
          Ordering::More);
    CHECK(compare_profiles(IndexKind::LexCount, moved, counts, k) ==
          Ordering::More);
    // Exact strictness for entropy through the integer fingerprint.
    const auto before = diversity_from_counts(counts, k, IndexKind::Shannon);
    const auto after = diversity_from_counts(moved, k, IndexKind::Shannon);
    CHECK(after.shannon_fingerprint() < before.shannon_fingerprint());
  }
}

TEST_CASE("present label maximization holds for richness and lex only") {
  const Election e = three_label_election();
  const Committee more_labels = committee_by_counts(e, kSkewed);   // 3 labels
  const Committee fewer_labels = committee_by_counts(e, kTwoLabels);  // 2
  CHECK(compare(IndexKind::Richness, e, more_labels, fewer_labels) ==
        Ordering::More);
  CHECK(compare(IndexKind::LexCount, e, more_labels, fewer_labels) ==
        Ordering::More);
  CHECK(compare(IndexKind::Shannon, e, more_labels, fewer_labels) ==
        Ordering::Less);
  CHECK(compare(IndexKind::Simpson, e, more_labels, fewer_labels) ==
        Ordering::Less);
}

TEST_CASE("rare label balancing is preferred by shannon and lex only") {
  // Profile (1, 5, 3, 7) with d = 4 twice: balancing the (1,5) pair versus
  // the (3,7) pair.
  const int k = 16;
  const std::vector<long long> base{1, 5, 3, 7};
  std::vector<long long> rare{3, 3, 3, 7};
  std::vector<long long> dominant{1, 5, 5, 5};
  CHECK(compare_profiles(IndexKind::Shannon, rare, dominant, k) ==
        Ordering::More);
  CHECK(compare_profiles(IndexKind::LexCount, rare, dominant, k) ==
        Ordering::More);
  CHECK(compare_profiles(IndexKind::Simpson, rare, dominant, k) ==
        Ordering::Equal);
  CHECK(compare_profiles(IndexKind::Richness, rare, dominant, k) ==
        Ordering::Equal);
}

TEST_CASE("same-gap balance moves move simpson by the same amount") {
  std::mt19937 rng(777);
  for (int round = 0; round < 500; ++round) {
    const int d = std::uniform_int_distribution<int>(2, 4)(rng);
    const long long n1 = std::uniform_int_distribution<int>(0, 3)(rng);
    const long long n3 = n1 + 1 + std::uniform_int_distribution<int>(0, 2)(rng);
    std::vector<long long> counts{n1, n1 + d, n3, n3 + d};
    const int k =
        static_cast<int>(counts[0] + counts[1] + counts[2] + counts[3]);
    if (k == 0) continue;
    auto first = counts, second = counts;
    first[0] += d / 2;
    first[1] -= d / 2;
    second[2] += d / 2;
    second[3] -= d / 2;
    CHECK(compare_profiles(IndexKind::Simpson, first, second, k) ==
          Ordering::Equal);
    if (n1 >= 1) {
      CHECK(compare_profiles(IndexKind::Richness, first, second, k) ==
            Ordering::Equal);
    }
  }
}

TEST_CASE("uniqueness optimality for all indices on a small pool") {
  // m >= k: a committee is optimal iff all labels are distinct.
  const Election e = make_election("aabbccdd", 3);
  std::vector<std::vector<int>> distinct, repeated;
  for (int a = 0; a < 8; ++a) {
    for (int b = a + 1; b < 8; ++b) {
      for (int c = b + 1; c < 8; ++c) {
        std::vector<int> members{a, b, c};
        std::vector<long long> counts = label_counts_of(e, members);
        long long maximum = *std::max_element(counts.begin(), counts.end());
        (maximum == 1 ? distinct : repeated).push_back(members);
      }
    }
  }
  REQUIRE(!distinct.empty());
  REQUIRE(!repeated.empty());
  for (IndexKind kind : {IndexKind::Richness, IndexKind::Simpson,
                         IndexKind::Shannon, IndexKind::LexCount}) {
    const DiversityValue best = diversity(e, Committee::of(distinct[0]), kind);
    for (const auto& members : distinct) {
      CHECK(diversity(e, Committee::of(members), kind).compare(best) ==
            Ordering::Equal);
    }
    for (const auto& members : repeated) {
      CHECK(diversity(e, Committee::of(members), kind).compare(best) ==
            Ordering::Less);
    }
  }
}

TEST_CASE("weighted indices collapse to unweighted under all-one weights") {
  const Election unweighted = three_label_election();
  Election weighted = unweighted;
  weighted.label_weights = std::vector<long long>{1, 1, 1};
  const Committee s = committee_by_counts(weighted, kBalanced);
  CHECK(weighted_index(IndexKind::Richness, weighted, s).richness_value() ==
        richness(unweighted, s).richness_value());
  CHECK(weighted_index(IndexKind::Simpson, weighted, s).simpson_value() ==
        simpson(unweighted, s).simpson_value());
  CHECK(weighted_index(IndexKind::Shannon, weighted, s).shannon_value() ==
        doctest::Approx(shannon(unweighted, s).shannon_value()));
  CHECK(weighted_index(IndexKind::LexCount, weighted, s).lex_value().sigma ==
        lex_count(unweighted, s).lex_value().sigma);
}

TEST_CASE("weighted index without weights is a configuration error") {
  const Election e = three_label_election();
  CHECK_THROWS_AS(
      weighted_index(IndexKind::Simpson, e, committee_by_counts(e, kBalanced)),
      ConfigError);
}

TEST_CASE("weighted entropy can drop although counts move closer to target") {
  // k = 7, weights 6 and 1, counts 4/2 -> 5/1.
  const std::vector<long long> weights{6, 1};
  const auto before = weighted_diversity_from_counts(
      std::vector<long long>{4, 2}, weights, 7, IndexKind::Shannon);
  const auto after = weighted_diversity_from_counts(
      std::vector<long long>{5, 1}, weights, 7, IndexKind::Shannon);
  const double diff = after.shannon_value() - before.shannon_value();
  CHECK(std::abs(diff - (-0.09)) < 5e-3);
  CHECK(diff < 0);
}

TEST_CASE("weighted lex can drop although counts move closer to target") {
  // k = 9, weights (7, 2, 1), counts (4, 2, 3) -> (5, 1, 3).
  const std::vector<long long> weights{7, 2, 1};
  const auto before = weighted_diversity_from_counts(
      std::vector<long long>{4, 2, 3}, weights, 9, IndexKind::LexCount);
  const auto after = weighted_diversity_from_counts(
      std::vector<long long>{5, 1, 3}, weights, 9, IndexKind::LexCount);
  CHECK(after.compare(before) == Ordering::Less);
  // The move halves the proportionality gap of the touched pair.
  CHECK(std::abs(2 * 7 - 4 * 2) > std::abs(1 * 7 - 5 * 2));
}

TEST_CASE("weighted lex dimension is capped") {
  // Coprime six-digit weights push the lcm, and with it Z = lcm * k, far
  // beyond any usable vector dimension.
  const std::vector<long long> weights{1000003, 1000033};
  CHECK_THROWS_AS(
      weighted_diversity_from_counts(std::vector<long long>{2, 1}, weights, 3,
                                     IndexKind::LexCount),
      ResourceError);
}

TEST_CASE("weighted simpson tracks the proportionality gap exactly") {
  std::mt19937 rng(31337);
  for (int round = 0; round < 1000; ++round) {
    const int m = std::uniform_int_distribution<int>(2, 5)(rng);
    std::vector<long long> weights(m), counts(m, 0);
    for (auto& w : weights) w = std::uniform_int_distribution<int>(1, 4)(rng);
    const int k = std::uniform_int_distribution<int>(3, 9)(rng);
    for (int slot = 0; slot < k; ++slot) {
      ++counts[std::uniform_int_distribution<int>(0, m - 1)(rng)];
    }
    const int i = std::uniform_int_distribution<int>(0, m - 1)(rng);
    int j = std::uniform_int_distribution<int>(0, m - 1)(rng);
    if (j == i || counts[j] == 0) continue;
    auto moved = counts;
    ++moved[i];
    --moved[j];
    const auto before =
        weighted_diversity_from_counts(counts, weights, k, IndexKind::Simpson);
    const auto after =
        weighted_diversity_from_counts(moved, weights, k, IndexKind::Simpson);
    const long long gap_before =
        std::abs(counts[j] * weights[i] - counts[i] * weights[j]);
    const long long gap_after =
        std::abs(moved[j] * weights[i] - moved[i] * weights[j]);
    const Ordering move_effect = after.compare(before);
    if (gap_after < gap_before) {
      CHECK(move_effect == Ordering::More);
    } else if (gap_after > gap_before) {
      CHECK(move_effect == Ordering::Less);
    } else {
      CHECK(move_effect == Ordering::Equal);
    }
  }
}
