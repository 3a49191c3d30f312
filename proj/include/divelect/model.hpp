#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "divelect/errors.hpp"

namespace divelect {

/// An approval election over labelled candidates. Agent, candidate, and
/// label ids are opaque strings mapped once to dense indices at ingestion;
/// everything downstream works on the indices. Immutable after validate().
struct Election {
  std::vector<std::string> agents;
  std::vector<std::string> candidates;
  std::vector<std::string> labels;

  /// Per agent: sorted, unique candidate indices. Empty ballots are allowed.
  std::vector<std::vector<int>> approvals;
  /// Per candidate: label index.
  std::vector<int> label_of;
  int k = 0;
  /// Per label, strictly positive. Absent means all-ones.
  std::optional<std::vector<long long>> label_weights;

  int num_agents() const { return static_cast<int>(agents.size()); }
  int num_candidates() const { return static_cast<int>(candidates.size()); }
  int num_labels() const { return static_cast<int>(labels.size()); }

  /// Throws ConfigError if any structural invariant is broken.
  void validate() const;

  int candidate_index(const std::string& id) const;
};

/// A k-subset of candidates, stored as sorted unique indices.
struct Committee {
  std::vector<int> members;

  static Committee of(std::vector<int> members);
  bool contains(int candidate) const;
};

/// entries[j] = number of labels occurring exactly j times, j = 0..k.
using DistrVector = std::vector<long long>;

/// Per-agent |S ∩ U(a)|; reused as the floor function of satisfaction
/// constraints.
using Satisfaction = std::vector<long long>;

/// Throws InvalidCommitteeError unless members are a valid k-subset.
void validate_committee(const Election& e, const Committee& s);

/// Per-label occurrence counts over an arbitrary candidate subset
/// (no committee-size validation; used for partial committees).
std::vector<long long> label_counts_of(const Election& e,
                                       std::span<const int> members);

std::vector<long long> label_counts(const Election& e, const Committee& s);

DistrVector distr_from_counts(std::span<const long long> counts, int k);
DistrVector distr(const Election& e, const Committee& s);

Satisfaction satisfaction(const Election& e, const Committee& s);

}  // namespace divelect
