#pragma once

#include <string>
#include <vector>

#include "divelect/ingest.hpp"
#include "divelect/solvers.hpp"

namespace divelect {

/// Committees reaching at least p% of the optimal score, diversity-maximal
/// among them. beta lands on the exact scaled score grid, so the run is
/// always feasible.
SolverOutcome rule_scr_p(const Election& e, IndexKind index, ScoreKind score,
                         int p, const SolverCaps& caps = {});

/// Diversity-maximal committees when no agent loses more than one point of
/// satisfaction relative to `baseline`. Never infeasible: the baseline
/// satisfies its own floors.
SolverOutcome rule_sat_minus1(const Election& e, IndexKind index,
                              const Committee& baseline,
                              const SolverCaps& caps = {});

/// Extremes of diversity across all score-maximal committees.
std::pair<DiversityValue, DiversityValue> all_winning_tiebreak(
    const Election& e, ScoreKind score, IndexKind index,
    const SolverCaps& caps = {});

struct ReportRow {
  std::string instance;
  int k = 0;
  IndexKind index = IndexKind::Richness;
  std::string rule;
  /// Rendered to 6 decimal places; Si proportions are of the shifted value
  /// Si + 1, LC proportions are exact big-integer ratios.
  std::string proportion;
  double proportion_value = 0.0;
  bool achieved_optimal = false;
  std::string score;
  std::string beta;  // empty for rows without a score constraint
};

struct SuiteConfig {
  std::vector<int> k_levels = {5};
  std::vector<IndexKind> indices = {IndexKind::Richness, IndexKind::Simpson,
                                    IndexKind::Shannon, IndexKind::LexCount};
  std::vector<ScoreKind> rules = {ScoreKind::AV, ScoreKind::SAV, ScoreKind::CC,
                                  ScoreKind::PAV};
  std::vector<int> p_levels = {100, 90, 80, 70, 60, 50};
  LabelMode label_mode = LabelMode::Categories;
  SolverCaps caps;
  int sample = 0;  // 0 = all instances
  unsigned seed = 0;
  int jobs = 1;
};

/// key=value lines; '#' starts a comment. Unknown keys are rejected.
SuiteConfig parse_suite_config(const std::string& text, SuiteConfig base = {});

struct SuiteResult {
  std::vector<ReportRow> rows;
  std::string csv;
  std::string summary_json;
  int skipped_instances = 0;
  std::vector<std::string> log;  // filter decisions and per-instance errors
};

/// Runs every (rule, index) cell per instance and k: baseline rules AV, SAV,
/// CC, PAV, their sat^-1 relaxations, and scr^p for the separable scores.
/// Instances are independent work units; output is byte-identical for any
/// worker count.
SuiteResult run_suite(const std::vector<std::pair<std::string, std::string>>&
                          corpus,  // (instance id, pabulib text), sorted by id
                      const SuiteConfig& config);

}  // namespace divelect
