#include "divelect/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "combinatorics.hpp"

namespace divelect {

SolverOutcome rule_scr_p(const Election& e, IndexKind index, ScoreKind score,
                         int p, const SolverCaps& caps) {
  if (p <= 0 || p > 100) throw ConfigError("p must lie in (0, 100]");
  if (score != ScoreKind::AV && score != ScoreKind::SAV) {
    throw ConfigError("score-relaxed rules need a separable score");
  }
  const SeparableWeights w =
      score == ScoreKind::AV ? av_weights(e) : sav_weights(e);
  const Committee top = max_separable_committee(e, w).first;
  const BigInt max_scaled = separable_score_scaled(w, top);
  const BigInt beta = rat_ceil(Rat(BigInt(p) * max_scaled, 100));

  SolverOutcome out;
  switch (index) {
    case IndexKind::Richness:
    case IndexKind::LexCount:
      out = dscr_exchange_lc(e, w, beta);
      break;
    case IndexKind::Simpson:
      out = score == ScoreKind::AV
                ? dscr_knapsack_max(e, w, beta, IndexKind::Simpson, caps)
                : dscr_max_si_via_decision(e, w, beta, /*weighted=*/false,
                                           caps);
      break;
    case IndexKind::Shannon:
      if (score == ScoreKind::AV) {
        out = dscr_knapsack_max(e, w, beta, IndexKind::Shannon, caps);
      } else {
        // Whether entropy maximization under the SAV score admits a
        // polynomial algorithm is unsettled; fall back to the oracle.
        BruteForceConstraint constraint;
        constraint.kind = BruteForceConstraint::Kind::MinScore;
        constraint.weights = &w;
        constraint.beta_scaled = beta;
        out = brute_force(e, IndexKind::Shannon, constraint, false, caps);
      }
      break;
  }
  if (out.status == SolveStatus::Infeasible) {
    throw InvariantError("score-relaxed rule infeasible although beta <= max");
  }
  out.diversity = diversity(e, *out.committee, index);
  return out;
}

SolverOutcome rule_sat_minus1(const Election& e, IndexKind index,
                              const Committee& baseline,
                              const SolverCaps& caps) {
  const Satisfaction base = satisfaction(e, baseline);
  Satisfaction floors(base.size(), 0);
  for (std::size_t a = 0; a < base.size(); ++a) {
    floors[a] = std::max<long long>(0, base[a] - 1);
  }
  SolverOutcome out = dsat_exact(e, index, floors, caps);
  if (out.status == SolveStatus::Infeasible) {
    throw InvariantError(
        "satisfaction relaxation infeasible although the baseline is "
        "feasible");
  }
  return out;
}

std::pair<DiversityValue, DiversityValue> all_winning_tiebreak(
    const Election& e, ScoreKind score, IndexKind index,
    const SolverCaps& caps) {
  const BigInt combos = detail::n_choose_k(e.num_candidates(), e.k);
  if (combos > caps.max_combinations) {
    throw SizeLimitError("winner enumeration would visit " + combos.str() +
                         " committees, above the configured cap");
  }
  std::optional<SeparableWeights> w;
  if (score == ScoreKind::AV) w = av_weights(e);
  if (score == ScoreKind::SAV) w = sav_weights(e);

  std::optional<Rat> best_score;
  std::optional<DiversityValue> best, worst;
  detail::for_each_combination(
      e.num_candidates(), e.k, [&](const std::vector<int>& pick) {
        Committee s{pick};
        Rat committee_score;
        if (w) {
          committee_score = separable_score(*w, s);
        } else if (score == ScoreKind::CC) {
          committee_score = Rat(cc_score(e, s));
        } else {
          committee_score = pav_score(e, s);
        }
        if (best_score && committee_score < *best_score) return;
        DiversityValue value = diversity(e, s, index);
        if (!best_score || committee_score > *best_score) {
          best_score = committee_score;
          best = value;
          worst = value;
          return;
        }
        if (best->compare(value) == Ordering::Less) best = value;
        if (worst->compare(value) == Ordering::More) worst = value;
      });
  return {*best, *worst};
}

namespace {

std::string render_double(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

struct Proportion {
  std::string rendered;
  double value = 0.0;
};

/// Proportion of the unconstrained optimum. Simpson is shifted by +1 so the
/// ratio is of a nonnegative quantity; entropy ratios are floats; the others
/// are exact rational divisions.
Proportion proportion_of(IndexKind kind, const DiversityValue& achieved,
                         const DiversityValue& opt) {
  Rat exact;
  bool have_exact = true;
  switch (kind) {
    case IndexKind::Richness:
      exact = Rat(achieved.richness_value(), opt.richness_value());
      break;
    case IndexKind::Simpson: {
      const Rat denom = opt.simpson_value() + 1;
      if (denom == 0) {
        exact = 1;
      } else {
        exact = (achieved.simpson_value() + 1) / denom;
      }
      break;
    }
    case IndexKind::LexCount:
      exact = Rat(lex_scalar(achieved.lex_value()), lex_scalar(opt.lex_value()));
      break;
    case IndexKind::Shannon: {
      have_exact = false;
      const double denom = opt.shannon_value();
      double ratio =
          denom == 0.0 ? 1.0 : achieved.shannon_value() / denom;
      ratio = std::min(ratio, 1.0);
      return Proportion{render_double(ratio, 6), ratio};
    }
  }
  if (have_exact && exact > 1) {
    throw InvariantError("proportion exceeded 1; solver beat the optimum?");
  }
  return Proportion{rat_to_decimal(exact, 6), to_double(exact)};
}

struct InstanceTask {
  std::string id;
  std::string text;
};

struct InstanceOutput {
  std::vector<ReportRow> rows;
  std::vector<std::string> log;
  bool skipped = false;
};

InstanceOutput evaluate_instance(const InstanceTask& task,
                                 const SuiteConfig& config) {
  InstanceOutput out;
  RawInstance raw;
  try {
    raw = parse_pabulib(task.text);
  } catch (const std::exception& ex) {
    out.log.push_back(task.id + ": parse error: " + ex.what());
    out.skipped = true;
    return out;
  }

  for (int k : config.k_levels) {
    Election e;
    try {
      e = derive_labels(raw, config.label_mode, k);
    } catch (const std::exception& ex) {
      out.log.push_back(task.id + ": label derivation failed: " + ex.what());
      out.skipped = true;
      continue;
    }
    const FilterDecision decision = filter_instance(e, k);
    if (decision != FilterDecision::Keep) {
      out.log.push_back(task.id + " (k=" + std::to_string(k) +
                        "): filtered: " + filter_name(decision));
      continue;
    }

    const Committee opt_committee = max_diversity_greedy(e, IndexKind::LexCount);

    auto emit = [&](IndexKind index, const std::string& rule,
                    const Committee& s, const Rat& rule_score,
                    const std::string& beta) {
      const DiversityValue achieved = diversity(e, s, index);
      const DiversityValue opt = diversity(e, opt_committee, index);
      const Proportion prop = proportion_of(index, achieved, opt);
      ReportRow row;
      row.instance = task.id;
      row.k = k;
      row.index = index;
      row.rule = rule;
      row.proportion = prop.rendered;
      row.proportion_value = prop.value;
      row.achieved_optimal =
          compare(index, e, s, opt_committee) == Ordering::Equal;
      row.score = rat_to_string(rule_score);
      row.beta = beta;
      out.rows.push_back(std::move(row));
    };

    for (IndexKind index : config.indices) {
      for (ScoreKind rule : config.rules) {
        const std::string rule_tag = [&] {
          std::string tag = score_name(rule);
          std::transform(tag.begin(), tag.end(), tag.begin(), ::toupper);
          return tag;
        }();
        try {
          Committee baseline{};
          Rat baseline_score;
          if (rule == ScoreKind::AV || rule == ScoreKind::SAV) {
            const SeparableWeights w =
                rule == ScoreKind::AV ? av_weights(e) : sav_weights(e);
            std::tie(baseline, baseline_score) = max_separable_committee(e, w);
          } else {
            std::tie(baseline, baseline_score) =
                max_score_exact(e, rule, config.caps.exhaustive_limit);
          }
          emit(index, rule_tag, baseline, baseline_score, "");

          const SolverOutcome relaxed =
              rule_sat_minus1(e, index, baseline, config.caps);
          const Rat relaxed_score = [&]() -> Rat {
            const Committee& s = *relaxed.committee;
            switch (rule) {
              case ScoreKind::AV: return separable_score(av_weights(e), s);
              case ScoreKind::SAV: return separable_score(sav_weights(e), s);
              case ScoreKind::CC: return Rat(cc_score(e, s));
              case ScoreKind::PAV: return pav_score(e, s);
            }
            throw InvariantError("unreachable score kind");
          }();
          emit(index, rule_tag + "_sat^-1", *relaxed.committee, relaxed_score,
               "");

          if (rule == ScoreKind::AV || rule == ScoreKind::SAV) {
            const SeparableWeights w =
                rule == ScoreKind::AV ? av_weights(e) : sav_weights(e);
            const BigInt max_scaled = separable_score_scaled(
                w, max_separable_committee(e, w).first);
            for (int p : config.p_levels) {
              const SolverOutcome scr = rule_scr_p(e, index, rule, p,
                                                   config.caps);
              const BigInt beta = rat_ceil(Rat(BigInt(p) * max_scaled, 100));
              emit(index, rule_tag + "_scr^" + std::to_string(p),
                   *scr.committee, scr.score, rat_to_string(Rat(beta, w.scale)));
            }
          }
        } catch (const std::exception& ex) {
          out.log.push_back(task.id + " (k=" + std::to_string(k) + ", " +
                            index_name(index) + ", " + score_name(rule) +
                            "): " + ex.what());
          out.skipped = true;
        }
      }
    }
  }
  return out;
}

}  // namespace

SuiteConfig parse_suite_config(const std::string& text, SuiteConfig base) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  auto parse_ints = [](const std::string& value) {
    std::vector<int> out;
    std::istringstream cells(value);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      if (!cell.empty()) out.push_back(std::stoi(cell));
    }
    return out;
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto strip = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    line = strip(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("config line " + std::to_string(line_no) +
                       ": expected key=value");
    }
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    if (key == "k_levels") {
      base.k_levels = parse_ints(value);
    } else if (key == "p_levels") {
      base.p_levels = parse_ints(value);
    } else if (key == "indices") {
      base.indices.clear();
      std::istringstream cells(value);
      std::string cell;
      while (std::getline(cells, cell, ',')) {
        base.indices.push_back(index_from_name(cell));
      }
    } else if (key == "rules") {
      base.rules.clear();
      std::istringstream cells(value);
      std::string cell;
      while (std::getline(cells, cell, ',')) {
        base.rules.push_back(score_from_name(cell));
      }
    } else if (key == "label_mode") {
      base.label_mode = label_mode_from_name(value);
    } else if (key == "dp_cells") {
      base.caps.dp_cells = std::stoll(value);
    } else if (key == "dsat_max_candidates") {
      base.caps.dsat_max_candidates = std::stoi(value);
    } else if (key == "max_combinations") {
      base.caps.max_combinations = std::stoll(value);
    } else if (key == "exhaustive_limit") {
      base.caps.exhaustive_limit = std::stoi(value);
    } else if (key == "tolerance") {
      base.caps.shannon_tol = std::stod(value);
    } else if (key == "sample") {
      base.sample = std::stoi(value);
    } else if (key == "seed") {
      base.seed = static_cast<unsigned>(std::stoul(value));
    } else if (key == "jobs") {
      base.jobs = std::stoi(value);
    } else {
      throw ParseError("config line " + std::to_string(line_no) +
                       ": unknown key '" + key + "'");
    }
  }
  return base;
}

SuiteResult run_suite(
    const std::vector<std::pair<std::string, std::string>>& corpus,
    const SuiteConfig& config) {
  std::vector<InstanceTask> tasks;
  tasks.reserve(corpus.size());
  for (const auto& [id, text] : corpus) tasks.push_back({id, text});
  std::sort(tasks.begin(), tasks.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });

  if (config.sample > 0 && config.sample < static_cast<int>(tasks.size())) {
    std::mt19937 rng(config.seed);
    std::shuffle(tasks.begin(), tasks.end(), rng);
    tasks.resize(config.sample);
    std::sort(tasks.begin(), tasks.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
  }

  std::vector<InstanceOutput> outputs(tasks.size());
  const int jobs = std::max(1, config.jobs);
  if (jobs == 1 || tasks.size() <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      outputs[i] = evaluate_instance(tasks[i], config);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    const int count = std::min<int>(jobs, static_cast<int>(tasks.size()));
    for (int t = 0; t < count; ++t) {
      workers.emplace_back([&] {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= tasks.size()) return;
          outputs[i] = evaluate_instance(tasks[i], config);
        }
      });
    }
    for (auto& worker : workers) worker.join();
  }

  SuiteResult result;
  for (auto& output : outputs) {
    result.rows.insert(result.rows.end(), output.rows.begin(),
                       output.rows.end());
    result.log.insert(result.log.end(), output.log.begin(), output.log.end());
    if (output.skipped) ++result.skipped_instances;
  }

  std::ostringstream csv;
  csv << "instance,k,index,rule,proportion,achieved_optimal,score,beta\n";
  for (const auto& row : result.rows) {
    csv << row.instance << ',' << row.k << ',' << index_name(row.index) << ','
        << row.rule << ',' << row.proportion << ','
        << (row.achieved_optimal ? "true" : "false") << ',' << row.score << ','
        << row.beta << '\n';
  }
  result.csv = csv.str();

  // Per-cell aggregates in the shape of the usual reporting tables: mean and
  // median proportion, plus the rate of instances hitting the optimum.
  nlohmann::ordered_json summary;
  summary["normalization"] = {
      {"si", "proportions use (si + 1) ratios so values lie in [0, 1]"},
      {"lc", "exact big-integer scalar ratio, rendered to 6 decimals"},
      {"sh", "float ratio of entropies"},
  };
  summary["skipped_instances"] = result.skipped_instances;
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (int k : config.k_levels) {
    for (IndexKind index : config.indices) {
      std::vector<std::string> rule_tags;
      for (ScoreKind rule : config.rules) {
        std::string tag = score_name(rule);
        std::transform(tag.begin(), tag.end(), tag.begin(), ::toupper);
        rule_tags.push_back(tag);
        rule_tags.push_back(tag + "_sat^-1");
        if (rule == ScoreKind::AV || rule == ScoreKind::SAV) {
          for (int p : config.p_levels) {
            rule_tags.push_back(tag + "_scr^" + std::to_string(p));
          }
        }
      }
      for (const auto& tag : rule_tags) {
        std::vector<double> proportions;
        int achieved = 0;
        for (const auto& row : result.rows) {
          if (row.k != k || row.index != index || row.rule != tag) continue;
          proportions.push_back(row.proportion_value);
          if (row.achieved_optimal) ++achieved;
        }
        if (proportions.empty()) continue;
        std::sort(proportions.begin(), proportions.end());
        double mean = 0;
        for (double p : proportions) mean += p;
        mean /= static_cast<double>(proportions.size());
        const std::size_t mid = proportions.size() / 2;
        const double median =
            proportions.size() % 2 == 1
                ? proportions[mid]
                : (proportions[mid - 1] + proportions[mid]) / 2.0;
        nlohmann::ordered_json cell;
        cell["k"] = k;
        cell["index"] = index_name(index);
        cell["rule"] = tag;
        cell["count"] = proportions.size();
        cell["mean_proportion"] = render_double(mean, 6);
        cell["median_proportion"] = render_double(median, 6);
        cell["achieved_optimal_rate"] = render_double(
            static_cast<double>(achieved) /
                static_cast<double>(proportions.size()),
            6);
        cells.push_back(std::move(cell));
      }
    }
  }
  summary["cells"] = std::move(cells);
  result.summary_json = summary.dump(2) + "\n";
  return result;
}

}  // namespace divelect
