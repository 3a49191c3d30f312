#include "divelect/model.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace divelect {

void Election::validate() const {
  if (k <= 0 || k > num_candidates()) {
    throw ConfigError("committee size k must satisfy 0 < k <= |candidates|");
  }
  if (label_of.size() != candidates.size()) {
    throw ConfigError("every candidate needs a label");
  }
  for (std::size_t c = 0; c < label_of.size(); ++c) {
    if (label_of[c] < 0 || label_of[c] >= num_labels()) {
      throw ConfigError("candidate '" + candidates[c] +
                        "' has an unknown label");
    }
  }
  if (approvals.size() != agents.size()) {
    throw ConfigError("every agent needs an approval set");
  }
  for (std::size_t a = 0; a < approvals.size(); ++a) {
    const auto& ballot = approvals[a];
    for (int c : ballot) {
      if (c < 0 || c >= num_candidates()) {
        throw ConfigError("agent '" + agents[a] +
                          "' approves an unknown candidate");
      }
    }
    if (!std::is_sorted(ballot.begin(), ballot.end()) ||
        std::adjacent_find(ballot.begin(), ballot.end()) != ballot.end()) {
      throw ConfigError("agent '" + agents[a] +
                        "' has an unsorted or duplicated ballot");
    }
  }
  if (label_weights) {
    if (static_cast<int>(label_weights->size()) != num_labels()) {
      throw ConfigError("label weights must cover every label");
    }
    for (long long w : *label_weights) {
      if (w <= 0) throw ConfigError("label weights must be positive integers");
    }
  }
}

int Election::candidate_index(const std::string& id) const {
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i] == id) return static_cast<int>(i);
  }
  throw ConfigError("unknown candidate id '" + id + "'");
}

Committee Committee::of(std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return Committee{std::move(members)};
}

bool Committee::contains(int candidate) const {
  return std::binary_search(members.begin(), members.end(), candidate);
}

void validate_committee(const Election& e, const Committee& s) {
  if (static_cast<int>(s.members.size()) != e.k) {
    throw InvalidCommitteeError(
        "committee has " + std::to_string(s.members.size()) +
        " members, expected k = " + std::to_string(e.k));
  }
  for (int c : s.members) {
    if (c < 0 || c >= e.num_candidates()) {
      throw InvalidCommitteeError("committee member " + std::to_string(c) +
                                  " is not a candidate");
    }
  }
  if (std::adjacent_find(s.members.begin(), s.members.end()) !=
      s.members.end()) {
    throw InvalidCommitteeError("committee has duplicate members");
  }
}

std::vector<long long> label_counts_of(const Election& e,
                                       std::span<const int> members) {
  std::vector<long long> counts(e.num_labels(), 0);
  for (int c : members) ++counts[e.label_of[c]];
  return counts;
}

std::vector<long long> label_counts(const Election& e, const Committee& s) {
  validate_committee(e, s);
  return label_counts_of(e, s.members);
}

DistrVector distr_from_counts(std::span<const long long> counts, int k) {
  DistrVector d(k + 1, 0);
  for (long long n : counts) ++d[n];
  return d;
}

DistrVector distr(const Election& e, const Committee& s) {
  validate_committee(e, s);
  return distr_from_counts(label_counts_of(e, s.members), e.k);
}

Satisfaction satisfaction(const Election& e, const Committee& s) {
  validate_committee(e, s);
  Satisfaction sat(e.num_agents(), 0);
  for (int a = 0; a < e.num_agents(); ++a) {
    long long n = 0;
    for (int c : e.approvals[a]) {
      if (s.contains(c)) ++n;
    }
    sat[a] = n;
  }
  return sat;
}

}  // namespace divelect
