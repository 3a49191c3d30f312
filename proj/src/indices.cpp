#include "divelect/indices.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace divelect {

const char* index_name(IndexKind kind) {
  switch (kind) {
    case IndexKind::Richness: return "ri";
    case IndexKind::Simpson: return "si";
    case IndexKind::Shannon: return "sh";
    case IndexKind::LexCount: return "lc";
  }
  throw InvariantError("unreachable index kind");
}

IndexKind index_from_name(const std::string& name) {
  if (name == "ri" || name == "richness") return IndexKind::Richness;
  if (name == "si" || name == "simpson") return IndexKind::Simpson;
  if (name == "sh" || name == "shannon") return IndexKind::Shannon;
  if (name == "lc" || name == "lexcount") return IndexKind::LexCount;
  throw ConfigError("unknown diversity index '" + name + "'");
}

BigInt lex_scalar(const LexVector& v) {
  BigInt total = 0;
  for (long long s : v.sigma) {
    total = total * v.base + s;
  }
  // sigma[i-1] carries factor base^{dim+1-i}; the Horner pass above left
  // sigma[dim-1] with factor base^0, so shift once more.
  return total * v.base;
}

DiversityValue DiversityValue::richness(long long present) {
  DiversityValue v;
  v.payload_.emplace<0>(present);
  return v;
}

DiversityValue DiversityValue::simpson(Rat value) {
  DiversityValue v;
  v.payload_.emplace<1>(std::move(value));
  return v;
}

DiversityValue DiversityValue::shannon(double value, BigInt fingerprint) {
  DiversityValue v;
  v.payload_.emplace<2>(ShannonPayload{value, std::move(fingerprint)});
  return v;
}

DiversityValue DiversityValue::lex_count(LexVector vec) {
  DiversityValue v;
  v.payload_.emplace<3>(std::move(vec));
  return v;
}

long long DiversityValue::richness_value() const {
  return std::get<0>(payload_);
}
const Rat& DiversityValue::simpson_value() const {
  return std::get<1>(payload_);
}
double DiversityValue::shannon_value() const {
  return std::get<2>(payload_).value;
}
const BigInt& DiversityValue::shannon_fingerprint() const {
  return std::get<2>(payload_).fingerprint;
}
const LexVector& DiversityValue::lex_value() const {
  return std::get<3>(payload_);
}

namespace {

Ordering from_cmp(int cmp) {
  if (cmp < 0) return Ordering::Less;
  if (cmp > 0) return Ordering::More;
  return Ordering::Equal;
}

}  // namespace

Ordering DiversityValue::compare(const DiversityValue& other,
                                 double shannon_tol) const {
  if (kind() != other.kind()) {
    throw InvariantError("comparing diversity values of different kinds");
  }
  switch (kind()) {
    case IndexKind::Richness: {
      const long long a = richness_value();
      const long long b = other.richness_value();
      return from_cmp(a < b ? -1 : a > b ? 1 : 0);
    }
    case IndexKind::Simpson: {
      const Rat& a = simpson_value();
      const Rat& b = other.simpson_value();
      return from_cmp(a < b ? -1 : a > b ? 1 : 0);
    }
    case IndexKind::Shannon: {
      const double a = shannon_value();
      const double b = other.shannon_value();
      if (std::abs(a - b) <= shannon_tol) return Ordering::Equal;
      return from_cmp(a < b ? -1 : 1);
    }
    case IndexKind::LexCount: {
      const auto& a = lex_value().sigma;
      const auto& b = other.lex_value().sigma;
      if (a.size() != b.size()) {
        throw InvariantError("lexicographic vectors of different dimension");
      }
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return from_cmp(a[i] < b[i] ? -1 : 1);
      }
      return Ordering::Equal;
    }
  }
  throw InvariantError("unreachable index kind");
}

std::string DiversityValue::to_string() const {
  switch (kind()) {
    case IndexKind::Richness: return std::to_string(richness_value());
    case IndexKind::Simpson: return rat_to_string(simpson_value());
    case IndexKind::Shannon: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.9g", shannon_value());
      return buf;
    }
    case IndexKind::LexCount: return lex_scalar(lex_value()).str();
  }
  throw InvariantError("unreachable index kind");
}

namespace {

long long lex_base_for(int m, int k) { return std::min<long long>(m, k) + 1; }

/// sigma cardinalities from per-label counts: sigma[i-1] = #{l : n_l >= i}.
std::vector<long long> sigma_from_counts(std::span<const long long> counts,
                                         long long dim) {
  std::vector<long long> at_least(dim + 2, 0);
  for (long long n : counts) {
    if (n > 0) ++at_least[std::min(n, dim)];
  }
  std::vector<long long> sigma(dim, 0);
  long long running = 0;
  for (long long i = dim; i >= 1; --i) {
    running += at_least[i];
    sigma[i - 1] = running;
  }
  return sigma;
}

BigInt shannon_fingerprint_of(std::span<const long long> counts) {
  BigInt product = 1;
  for (long long n : counts) {
    if (n > 1) product *= boost::multiprecision::pow(BigInt(n), unsigned(n));
  }
  return product;
}

double shannon_of(std::span<const long long> counts, int k) {
  double total = 0.0;
  for (long long n : counts) {
    if (n > 0) {
      const double p = double(n) / double(k);
      total -= p * std::log(p);
    }
  }
  return total;
}

}  // namespace

DiversityValue diversity_from_counts(std::span<const long long> counts, int k,
                                     IndexKind kind) {
  const int m = static_cast<int>(counts.size());
  switch (kind) {
    case IndexKind::Richness: {
      long long present = 0;
      for (long long n : counts) {
        if (n > 0) ++present;
      }
      return DiversityValue::richness(present);
    }
    case IndexKind::Simpson: {
      BigInt sum_sq = 0;
      for (long long n : counts) sum_sq += BigInt(n) * n;
      return DiversityValue::simpson(Rat(-sum_sq, BigInt(k) * k));
    }
    case IndexKind::Shannon:
      return DiversityValue::shannon(shannon_of(counts, k),
                                     shannon_fingerprint_of(counts));
    case IndexKind::LexCount:
      return DiversityValue::lex_count(
          LexVector{sigma_from_counts(counts, k), lex_base_for(m, k)});
  }
  throw InvariantError("unreachable index kind");
}

DiversityValue weighted_diversity_from_counts(
    std::span<const long long> counts, std::span<const long long> weights,
    int k, IndexKind kind) {
  const int m = static_cast<int>(counts.size());
  if (weights.size() != counts.size()) {
    throw ConfigError("weighted index needs one weight per label");
  }
  switch (kind) {
    case IndexKind::Richness: {
      long long total = 0;
      for (int i = 0; i < m; ++i) {
        if (counts[i] > 0) total += weights[i];
      }
      return DiversityValue::richness(total);
    }
    case IndexKind::Simpson: {
      Rat total = 0;
      for (int i = 0; i < m; ++i) {
        total += Rat(BigInt(counts[i]) * counts[i], BigInt(weights[i]));
      }
      return DiversityValue::simpson(-total / (BigInt(k) * k));
    }
    case IndexKind::Shannon: {
      double total = 0.0;
      for (int i = 0; i < m; ++i) {
        if (counts[i] > 0) {
          const double p = double(counts[i]) / double(k);
          total -= p * std::log(p) / double(weights[i]);
        }
      }
      return DiversityValue::shannon(total, BigInt(0));
    }
    case IndexKind::LexCount: {
      // sigma'_i counts labels with c*n_l/w_l >= i, i = 1..Z, Z = c*k,
      // where c = lcm of the weights; all arithmetic stays integral.
      long long c = 1;
      for (long long w : weights) c = std::lcm(c, w);
      const long long z = c * k;
      if (z > 2'000'000) {
        throw ResourceError(
            "weighted lexicographic vector dimension " + std::to_string(z) +
            " is impractically large; reduce the label weight lcm");
      }
      std::vector<long long> scaled(m);
      for (int i = 0; i < m; ++i) scaled[i] = c * counts[i] / weights[i];
      return DiversityValue::lex_count(
          LexVector{sigma_from_counts(scaled, z), lex_base_for(m, k)});
    }
  }
  throw InvariantError("unreachable index kind");
}

DiversityValue richness(const Election& e, const Committee& s) {
  return diversity_from_counts(label_counts(e, s), e.k, IndexKind::Richness);
}

DiversityValue simpson(const Election& e, const Committee& s) {
  return diversity_from_counts(label_counts(e, s), e.k, IndexKind::Simpson);
}

DiversityValue shannon(const Election& e, const Committee& s) {
  return diversity_from_counts(label_counts(e, s), e.k, IndexKind::Shannon);
}

DiversityValue lex_count(const Election& e, const Committee& s) {
  return diversity_from_counts(label_counts(e, s), e.k, IndexKind::LexCount);
}

DiversityValue diversity(const Election& e, const Committee& s,
                         IndexKind kind) {
  return diversity_from_counts(label_counts(e, s), e.k, kind);
}

DiversityValue weighted_index(IndexKind kind, const Election& e,
                              const Committee& s) {
  if (!e.label_weights) {
    throw ConfigError("election carries no label weights");
  }
  return weighted_diversity_from_counts(label_counts(e, s), *e.label_weights,
                                        e.k, kind);
}

Ordering compare_profiles(IndexKind kind, std::span<const long long> counts_a,
                          std::span<const long long> counts_b, int k) {
  if (kind == IndexKind::Shannon) {
    // Distinct distr vectors could in principle collide in floats; identical
    // ones are equal by definition. Decide structurally first.
    if (distr_from_counts(counts_a, k) == distr_from_counts(counts_b, k)) {
      return Ordering::Equal;
    }
  }
  return diversity_from_counts(counts_a, k, kind)
      .compare(diversity_from_counts(counts_b, k, kind));
}

Ordering compare(IndexKind kind, const Election& e, const Committee& a,
                 const Committee& b) {
  return compare_profiles(kind, label_counts(e, a), label_counts(e, b), e.k);
}

}  // namespace divelect
