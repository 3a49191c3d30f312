#pragma once

#include <vector>

#include "divelect/indices.hpp"
#include "divelect/model.hpp"

namespace divelect {

/// The positions (1-based, into [k+1]) at which two distr vectors differ,
/// together with both vectors restricted to those positions. The minimal
/// data needed to decide any pairwise diversity comparison.
struct ComparisonTriple {
  std::vector<long long> rdistr_a;
  std::vector<long long> rdistr_b;
  std::vector<int> rho;

  std::size_t dim() const { return rho.size(); }
};

/// Throws InvariantError unless dims match, every position differs, and the
/// zeroth/first moments of both sides agree.
void validate_triple(const ComparisonTriple& t);

ComparisonTriple reduce_distr(const DistrVector& a, const DistrVector& b);
ComparisonTriple reduce(const Election& e, const Committee& a,
                        const Committee& b);

/// Verdicts are for the first committee: More means a is more diverse than b.
/// Each function validates the triple and then consults only the entries its
/// explainability bound allows:
///   explain_lc: rdistr index 1,
///   explain_ri: rho index 1 and rdistr index 1,
///   explain_si/sh: everything except the final entries, which are
///   reconstructed from the triple's two moment identities.
Ordering explain_lc(const ComparisonTriple& t);
Ordering explain_ri(const ComparisonTriple& t);
Ordering explain_si(const ComparisonTriple& t);
Ordering explain_sh(const ComparisonTriple& t, double tol = 1e-9);

/// The reconstructed final rho entry used internally by explain_si/sh;
/// exposed so tests can confirm it matches the withheld value.
long long reconstruct_final_rho(const ComparisonTriple& t);

}  // namespace divelect
