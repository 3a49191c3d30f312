#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "divelect/model.hpp"

namespace divelect {

/// A parsed participatory-budgeting file, structure preserved so that
/// serialize round-trips. Unknown columns ride along in the attribute maps.
struct RawInstance {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> project_columns;  // header order, incl. project_id
  struct Project {
    std::string id;
    std::vector<std::pair<std::string, std::string>> attributes;
  };
  std::vector<Project> projects;
  std::vector<std::string> vote_columns;
  struct Vote {
    std::string voter;
    std::vector<std::string> approved;
    std::vector<std::pair<std::string, std::string>> attributes;
  };
  std::vector<Vote> votes;
};

/// Sections META / PROJECTS / VOTES, each with a semicolon-separated header
/// line; multi-valued cells (category, target, vote) are comma-separated.
/// Parse errors carry 1-based line numbers.
RawInstance parse_pabulib(const std::string& text);
std::string write_pabulib(const RawInstance& raw);

enum class LabelMode { Categories, Targets, Union };
const char* label_mode_name(LabelMode mode);
LabelMode label_mode_from_name(const std::string& name);

/// Builds an election with labels derived from project attribute token sets
/// (order-insensitive, deduplicated; distinct sets are distinct labels).
/// Throws ParseError naming any project that lacks the needed attribute.
Election derive_labels(const RawInstance& raw, LabelMode mode, int k);

enum class FilterDecision { Keep, DropAllLabelsDistinct, DropTooFewCandidates };
const char* filter_name(FilterDecision d);

/// keep, drop(|C| = m), or drop(|C| <= k).
FilterDecision filter_instance(const Election& e, int k);

/// Canonical JSON serialization of an election (schema shipped under
/// data/schemas/election.schema.json).
std::string election_to_json(const Election& e);
Election election_from_json(const std::string& text);

/// Ballot-lines format: one ballot per line of comma-separated candidate
/// ids, plus a two-column CSV sidecar (candidate_id,label) fixing the
/// candidate universe and order.
Election parse_ballot_lines(const std::string& ballots_text,
                            const std::string& sidecar_csv, int k);

}  // namespace divelect
