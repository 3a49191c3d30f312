#pragma once

#include <span>
#include <variant>
#include <vector>

#include "divelect/model.hpp"
#include "divelect/numeric.hpp"

namespace divelect {

enum class IndexKind { Richness, Simpson, Shannon, LexCount };

enum class Ordering { Less, Equal, More };

const char* index_name(IndexKind kind);
IndexKind index_from_name(const std::string& name);

struct ShannonPayload {
  double value = 0.0;
  /// Exact product of n_i^{n_i}; a documentation fingerprint of the value
  /// (lower fingerprint = higher entropy). Zero when not tracked.
  BigInt fingerprint;
};

struct LexVector {
  /// sigma[i-1] = number of labels occurring at least i times,
  /// i = 1..k (unweighted) or 1..Z (weighted).
  std::vector<long long> sigma;
  long long base = 0;  // min(m, k) + 1
};

/// Scalar encoding sum base^{dim+1-i} * sigma[i-1]; big because the base
/// power tower outgrows 64 bits quickly.
BigInt lex_scalar(const LexVector& v);

/// A diversity measurement with a total order per kind. The payload alone
/// decides comparisons except for Shannon, where committee-level compare()
/// first checks distr identity before falling back to the 1e-9 tolerance.
class DiversityValue {
 public:
  static DiversityValue richness(long long present);
  static DiversityValue simpson(Rat value);
  static DiversityValue shannon(double value, BigInt fingerprint);
  static DiversityValue lex_count(LexVector v);

  IndexKind kind() const { return static_cast<IndexKind>(payload_.index()); }

  long long richness_value() const;
  const Rat& simpson_value() const;
  double shannon_value() const;
  const BigInt& shannon_fingerprint() const;
  const LexVector& lex_value() const;

  /// Total order within one kind; throws InvariantError on kind mismatch.
  Ordering compare(const DiversityValue& other, double shannon_tol = 1e-9) const;

  std::string to_string() const;

 private:
  std::variant<long long, Rat, ShannonPayload, LexVector> payload_;
};

DiversityValue richness(const Election& e, const Committee& s);
DiversityValue simpson(const Election& e, const Committee& s);
DiversityValue shannon(const Election& e, const Committee& s);
DiversityValue lex_count(const Election& e, const Committee& s);

DiversityValue diversity(const Election& e, const Committee& s, IndexKind kind);

/// Weighted variants Ri', Si', Sh', LC'. Requires label weights on the
/// election; throws ConfigError otherwise.
DiversityValue weighted_index(IndexKind kind, const Election& e,
                              const Committee& s);

/// Core computations on label-count profiles; m = counts.size().
DiversityValue diversity_from_counts(std::span<const long long> counts, int k,
                                     IndexKind kind);
DiversityValue weighted_diversity_from_counts(
    std::span<const long long> counts, std::span<const long long> weights,
    int k, IndexKind kind);

/// Ordering of committee a relative to committee b under `kind`.
/// Shannon: Equal when the distr vectors are identical, otherwise the float
/// comparison with absolute tolerance 1e-9 decides.
Ordering compare(IndexKind kind, const Election& e, const Committee& a,
                 const Committee& b);

/// Same semantics on raw count profiles of a shared election shape.
Ordering compare_profiles(IndexKind kind, std::span<const long long> counts_a,
                          std::span<const long long> counts_b, int k);

}  // namespace divelect
