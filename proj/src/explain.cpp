#include "divelect/explain.hpp"

#include <cmath>

namespace divelect {

void validate_triple(const ComparisonTriple& t) {
  const std::size_t r = t.rho.size();
  if (t.rdistr_a.size() != r || t.rdistr_b.size() != r) {
    throw InvariantError("triple vectors have mismatched dimensions");
  }
  long long sum_a = 0, sum_b = 0, moment_a = 0, moment_b = 0;
  for (std::size_t i = 0; i < r; ++i) {
    if (t.rdistr_a[i] == t.rdistr_b[i]) {
      throw InvariantError("triple keeps a position where the sides agree");
    }
    if (i > 0 && t.rho[i] <= t.rho[i - 1]) {
      throw InvariantError("rho must be strictly increasing");
    }
    if (t.rho[i] < 1) throw InvariantError("rho positions are 1-based");
    sum_a += t.rdistr_a[i];
    sum_b += t.rdistr_b[i];
    moment_a += t.rho[i] * t.rdistr_a[i];
    moment_b += t.rho[i] * t.rdistr_b[i];
  }
  if (sum_a != sum_b || moment_a != moment_b) {
    throw InvariantError("triple moment identities do not hold");
  }
}

ComparisonTriple reduce_distr(const DistrVector& a, const DistrVector& b) {
  if (a.size() != b.size()) {
    throw InvariantError("distr vectors of different dimension");
  }
  ComparisonTriple t;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) {
      t.rho.push_back(static_cast<int>(i) + 1);
      t.rdistr_a.push_back(a[i]);
      t.rdistr_b.push_back(b[i]);
    }
  }
  return t;
}

ComparisonTriple reduce(const Election& e, const Committee& a,
                        const Committee& b) {
  return reduce_distr(distr(e, a), distr(e, b));
}

namespace {

// Decision kernels receive exactly the entries their explainability bound
// allows; the callers strip everything else.

Ordering lc_kernel(bool empty, long long a1, long long b1) {
  if (empty) return Ordering::Equal;
  return a1 < b1 ? Ordering::More : Ordering::Less;
}

Ordering ri_kernel(bool empty, int rho1, long long a1, long long b1) {
  if (empty || rho1 > 1) return Ordering::Equal;
  return a1 < b1 ? Ordering::More : Ordering::Less;
}

// Shared between the Simpson and Shannon kernels: the withheld last entries
// follow from the two moment identities. x is the zeroth-moment imbalance of
// the first r-1 positions (never zero on a valid triple of dimension >= 3),
// and y recovers rho_r.
struct Reconstruction {
  long long x = 0;
  Rat y;
};

Reconstruction reconstruct(std::span<const long long> a,
                           std::span<const long long> b,
                           std::span<const int> rho) {
  const std::size_t head = rho.size() - 1;
  long long x = 0;
  long long weighted = 0;
  for (std::size_t i = 0; i < head; ++i) {
    x += b[i] - a[i];
    weighted += rho[i] * (b[i] - a[i]);
  }
  if (x == 0) {
    throw InvariantError(
        "reconstruction divisor vanished; triple cannot stem from distr "
        "vectors");
  }
  return Reconstruction{x, Rat(weighted) / x};
}

}  // namespace

Ordering explain_lc(const ComparisonTriple& t) {
  validate_triple(t);
  const bool empty = t.dim() == 0;
  return lc_kernel(empty, empty ? 0 : t.rdistr_a[0],
                   empty ? 0 : t.rdistr_b[0]);
}

Ordering explain_ri(const ComparisonTriple& t) {
  validate_triple(t);
  const bool empty = t.dim() == 0;
  return ri_kernel(empty, empty ? 0 : t.rho[0], empty ? 0 : t.rdistr_a[0],
                   empty ? 0 : t.rdistr_b[0]);
}

long long reconstruct_final_rho(const ComparisonTriple& t) {
  validate_triple(t);
  if (t.dim() == 0) throw InvariantError("empty triple has no final entry");
  const auto rec = reconstruct(t.rdistr_a, t.rdistr_b, t.rho);
  if (rat_den(rec.y) != 1) {
    throw InvariantError("reconstructed rho entry is not integral");
  }
  return rat_num(rec.y).convert_to<long long>();
}

Ordering explain_si(const ComparisonTriple& t) {
  validate_triple(t);
  if (t.dim() == 0) return Ordering::Equal;
  const auto rec = reconstruct(t.rdistr_a, t.rdistr_b, t.rho);
  // Sign of Si(b-side) - Si(a-side), scaled by k^2 which drops out:
  //   -(sum over the head of (b_i - a_i) (rho_i - 1)^2) + x (y - 1)^2.
  Rat h = 0;
  for (std::size_t i = 0; i + 1 < t.dim(); ++i) {
    const long long d = t.rdistr_b[i] - t.rdistr_a[i];
    h -= Rat(d * (t.rho[i] - 1)) * (t.rho[i] - 1);
  }
  const Rat ym1 = rec.y - 1;
  h += Rat(rec.x) * ym1 * ym1;
  if (h > 0) return Ordering::Less;
  if (h < 0) return Ordering::More;
  return Ordering::Equal;
}

Ordering explain_sh(const ComparisonTriple& t, double tol) {
  validate_triple(t);
  if (t.dim() == 0) return Ordering::Equal;
  const auto rec = reconstruct(t.rdistr_a, t.rdistr_b, t.rho);
  // Sign of Sh(b-side) - Sh(a-side). The log(k) parts cancel through the
  // moment identities, so the committee size never enters:
  //   -(sum over the head of (b_i - a_i)(rho_i - 1) ln(rho_i - 1))
  //   + x (y - 1) ln(y - 1),  with 0 ln 0 = 0.
  auto xlogx = [](double v) { return v > 0.0 ? v * std::log(v) : 0.0; };
  double h = 0.0;
  for (std::size_t i = 0; i + 1 < t.dim(); ++i) {
    const double d = double(t.rdistr_b[i] - t.rdistr_a[i]);
    h -= d * xlogx(double(t.rho[i] - 1));
  }
  h += double(rec.x) * xlogx(to_double(rec.y) - 1.0);
  if (h > tol) return Ordering::Less;
  if (h < -tol) return Ordering::More;
  return Ordering::Equal;
}

}  // namespace divelect
