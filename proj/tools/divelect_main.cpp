#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "divelect/experiments.hpp"
#include "divelect/explain.hpp"

namespace fs = std::filesystem;
using namespace divelect;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << content;
}

struct InputOptions {
  std::string pabulib_path;
  std::string election_json_path;
  std::string ballots_path;
  std::string labels_path;
  std::string mode = "categories";
  int k = 0;
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("--input", in.pabulib_path,
                  "participatory-budgeting file (.pb)");
  cmd->add_option("--election", in.election_json_path,
                  "election as canonical JSON");
  cmd->add_option("--ballots", in.ballots_path,
                  "ballot-lines file (one comma-separated ballot per line)");
  cmd->add_option("--labels", in.labels_path,
                  "candidate,label sidecar CSV for --ballots");
  cmd->add_option("--mode", in.mode,
                  "label derivation for .pb input: categories|targets|union");
  cmd->add_option("--k", in.k, "committee size for .pb or ballot input");
}

Election load_election(const InputOptions& in) {
  const int sources = int(!in.pabulib_path.empty()) +
                      int(!in.election_json_path.empty()) +
                      int(!in.ballots_path.empty());
  if (sources != 1) {
    throw ConfigError("exactly one of --input, --election, --ballots needed");
  }
  if (!in.election_json_path.empty()) {
    return election_from_json(read_file(in.election_json_path));
  }
  if (!in.ballots_path.empty()) {
    if (in.labels_path.empty()) {
      throw ConfigError("--ballots needs a --labels sidecar");
    }
    if (in.k <= 0) throw ConfigError("--ballots needs --k");
    return parse_ballot_lines(read_file(in.ballots_path),
                              read_file(in.labels_path), in.k);
  }
  if (in.k <= 0) throw ConfigError("--input needs --k");
  return derive_labels(parse_pabulib(read_file(in.pabulib_path)),
                       label_mode_from_name(in.mode), in.k);
}

Committee parse_committee(const Election& e, const std::string& ids) {
  std::vector<int> members;
  std::istringstream stream(ids);
  std::string id;
  while (std::getline(stream, id, ',')) {
    if (!id.empty()) members.push_back(e.candidate_index(id));
  }
  const Committee s = Committee::of(std::move(members));
  validate_committee(e, s);
  return s;
}

SolverCaps caps_from_env_and_flags(long long cap_cells, int dsat_limit,
                                   long long max_combinations,
                                   int exhaustive_limit, double tolerance) {
  SolverCaps caps;
  if (const char* env = std::getenv("DIVELECT_CAP_CELLS")) {
    caps.dp_cells = std::atoll(env);
  }
  if (cap_cells > 0) caps.dp_cells = cap_cells;
  if (dsat_limit > 0) caps.dsat_max_candidates = dsat_limit;
  if (max_combinations > 0) caps.max_combinations = max_combinations;
  if (exhaustive_limit > 0) caps.exhaustive_limit = exhaustive_limit;
  if (tolerance > 0) caps.shannon_tol = tolerance;
  return caps;
}

const char* ordering_name(Ordering o) {
  switch (o) {
    case Ordering::Less: return "Less";
    case Ordering::Equal: return "Equal";
    case Ordering::More: return "More";
  }
  return "?";
}

std::string committee_ids(const Election& e, const Committee& s) {
  std::string out;
  for (int c : s.members) {
    if (!out.empty()) out += ',';
    out += e.candidates[c];
  }
  return out;
}

nlohmann::ordered_json index_values_json(const Election& e,
                                         const Committee& s, bool weighted) {
  nlohmann::ordered_json values;
  auto value_of = [&](IndexKind kind) {
    return weighted ? weighted_index(kind, e, s) : diversity(e, s, kind);
  };
  values["ri"] = value_of(IndexKind::Richness).richness_value();
  values["si"] = rat_to_string(value_of(IndexKind::Simpson).simpson_value());
  values["sh"] = value_of(IndexKind::Shannon).shannon_value();
  values["lc"] = lex_scalar(value_of(IndexKind::LexCount).lex_value()).str();
  return values;
}

int run_index(const InputOptions& in, const std::string& committee_ids_arg,
              const std::string& format) {
  const Election e = load_election(in);
  const Committee s = parse_committee(e, committee_ids_arg);
  if (format == "json") {
    nlohmann::ordered_json out;
    out["committee"] = nlohmann::json::array();
    for (int c : s.members) out["committee"].push_back(e.candidates[c]);
    out["values"] = index_values_json(e, s, false);
    if (e.label_weights) {
      out["weighted_values"] = index_values_json(e, s, true);
    }
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  std::cout << "committee: " << committee_ids(e, s) << '\n';
  std::cout << "ri: " << diversity(e, s, IndexKind::Richness).to_string()
            << '\n';
  std::cout << "si: " << diversity(e, s, IndexKind::Simpson).to_string()
            << '\n';
  std::cout << "sh: " << diversity(e, s, IndexKind::Shannon).to_string()
            << '\n';
  std::cout << "lc: " << diversity(e, s, IndexKind::LexCount).to_string()
            << '\n';
  if (e.label_weights) {
    std::cout << "ri': "
              << weighted_index(IndexKind::Richness, e, s).to_string() << '\n';
    std::cout << "si': "
              << weighted_index(IndexKind::Simpson, e, s).to_string() << '\n';
    std::cout << "sh': "
              << weighted_index(IndexKind::Shannon, e, s).to_string() << '\n';
    std::cout << "lc': "
              << weighted_index(IndexKind::LexCount, e, s).to_string() << '\n';
  }
  return 0;
}

int run_compare(const InputOptions& in, const std::string& a_ids,
                const std::string& b_ids, const std::string& format) {
  const Election e = load_election(in);
  const Committee a = parse_committee(e, a_ids);
  const Committee b = parse_committee(e, b_ids);
  const ComparisonTriple t = reduce(e, a, b);

  struct Row {
    const char* index;
    Ordering verdict;
    const char* consulted;
  };
  const Row rows[] = {
      {"lc", explain_lc(t), "rdistr[1]"},
      {"ri", explain_ri(t), "rho[1], rdistr[1]"},
      {"si", explain_si(t), "all but the final entries (reconstructed)"},
      {"sh", explain_sh(t), "all but the final entries (reconstructed)"},
  };

  if (format == "json") {
    nlohmann::ordered_json out;
    out["rho"] = t.rho;
    out["rdistr_a"] = t.rdistr_a;
    out["rdistr_b"] = t.rdistr_b;
    nlohmann::ordered_json verdicts = nlohmann::ordered_json::object();
    for (const Row& row : rows) {
      verdicts[row.index] = ordering_name(row.verdict);
    }
    out["verdicts"] = std::move(verdicts);
    std::cout << out.dump(2) << '\n';
    return 0;
  }

  auto print_vector = [](const char* name, const auto& v) {
    std::cout << name << "=(";
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::cout << (i ? "," : "") << v[i];
    }
    std::cout << ")\n";
  };
  print_vector("rho", t.rho);
  print_vector("rdistr_a", t.rdistr_a);
  print_vector("rdistr_b", t.rdistr_b);
  for (const Row& row : rows) {
    std::cout << row.index << ": " << ordering_name(row.verdict)
              << "  (consulted: " << row.consulted << ")\n";
  }
  return 0;
}

int emit_outcome(const Election& e, const SolverOutcome& out,
                 const std::string& index, const std::string& format) {
  if (out.status == SolveStatus::Infeasible) {
    if (format == "json") {
      std::cout << nlohmann::ordered_json{{"status", "infeasible"}}.dump(2)
                << '\n';
    } else {
      std::cout << "status: infeasible\n";
    }
    return 1;
  }
  if (format == "json") {
    nlohmann::ordered_json j;
    j["status"] = "optimal";
    j["committee"] = nlohmann::json::array();
    for (int c : out.committee->members) {
      j["committee"].push_back(e.candidates[c]);
    }
    j["index"] = index;
    j["diversity"] = out.diversity->to_string();
    j["score"] = rat_to_string(out.score);
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "status: optimal\n";
    std::cout << "committee: " << committee_ids(e, *out.committee) << '\n';
    std::cout << "diversity(" << index << "): " << out.diversity->to_string()
              << '\n';
    std::cout << "score: " << rat_to_string(out.score) << '\n';
  }
  return 0;
}

Rat parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      const auto dot = text.find('.');
      if (dot != std::string::npos) {
        const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        BigInt den = 1;
        for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
        return Rat(BigInt(digits), den);
      }
      return Rat(BigInt(text));
    }
    return Rat(BigInt(text.substr(0, slash))) / BigInt(text.substr(slash + 1));
  } catch (const InvariantError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse rational '" + text + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "divelect: diversity indices and diversity-constrained committee "
      "selection for approval elections with labelled candidates"};
  app.require_subcommand(1);

  std::string format = "text";
  app.add_option("--format", format, "output format: text|json")
      ->check(CLI::IsMember({"text", "json"}));

  long long cap_cells = 0;
  int dsat_limit = 0;
  long long max_combinations = 0;
  int exhaustive_limit = 0;
  double tolerance = 0;
  app.add_option("--cap-cells", cap_cells, "knapsack DP cell cap");
  app.add_option("--dsat-limit", dsat_limit,
                 "candidate cap for satisfaction-constrained search");
  app.add_option("--max-combinations", max_combinations,
                 "committee cap for exhaustive search");
  app.add_option("--exhaustive-limit", exhaustive_limit,
                 "candidate cap for exact CC/PAV winners");
  app.add_option("--tolerance", tolerance, "entropy comparison tolerance");

  auto* index_cmd =
      app.add_subcommand("index", "compute all four indices for a committee");
  InputOptions index_in;
  add_input_options(index_cmd, index_in);
  std::string index_committee;
  index_cmd
      ->add_option("--committee", index_committee,
                   "comma-separated candidate ids")
      ->required();

  auto* compare_cmd = app.add_subcommand(
      "compare", "explain which of two committees is more diverse");
  compare_cmd->alias("explain");
  InputOptions compare_in;
  add_input_options(compare_cmd, compare_in);
  std::string committee_a, committee_b;
  compare_cmd->add_option("--committee-a", committee_a, "first committee")
      ->required();
  compare_cmd->add_option("--committee-b", committee_b, "second committee")
      ->required();

  auto* optimal_cmd =
      app.add_subcommand("optimal", "unconstrained diversity-maximal committee");
  InputOptions optimal_in;
  add_input_options(optimal_cmd, optimal_in);
  std::string optimal_index = "lc";
  optimal_cmd->add_option("--index", optimal_index, "diversity index");

  auto* dscr_cmd = app.add_subcommand(
      "solve-dscr", "maximize diversity subject to a minimum committee score");
  InputOptions dscr_in;
  add_input_options(dscr_cmd, dscr_in);
  std::string dscr_index = "lc";
  std::string dscr_score = "av";
  int dscr_p = -1;
  std::string dscr_beta, dscr_delta;
  bool dscr_weighted = false;
  dscr_cmd->add_option("--index", dscr_index, "diversity index");
  dscr_cmd->add_option("--score", dscr_score, "scoring function: av|sav");
  auto* p_opt =
      dscr_cmd->add_option("--p", dscr_p, "keep at least p% of the top score");
  auto* beta_opt = dscr_cmd->add_option("--beta", dscr_beta,
                                        "absolute score bound (exact rational)");
  dscr_cmd->add_option("--delta", dscr_delta,
                       "diversity bound for the decision variant (simpson)");
  dscr_cmd->add_flag("--weighted", dscr_weighted, "use weighted indices");
  p_opt->excludes(beta_opt);

  auto* dsat_cmd = app.add_subcommand(
      "solve-dsat",
      "maximize diversity subject to per-agent satisfaction floors");
  InputOptions dsat_in;
  add_input_options(dsat_cmd, dsat_in);
  std::string dsat_index = "lc";
  std::string floors_path, from_baseline;
  dsat_cmd->add_option("--index", dsat_index, "diversity index");
  dsat_cmd->add_option("--floors", floors_path, "agent,floor CSV");
  dsat_cmd->add_option(
      "--from-baseline", from_baseline,
      "derive floors as sat(rule committee) - 1: av|sav|cc|pav");

  auto* ingest_cmd =
      app.add_subcommand("ingest", "parse, filter, and serialize an election");
  InputOptions ingest_in;
  add_input_options(ingest_cmd, ingest_in);
  std::string ingest_out;
  ingest_cmd->add_option("--out", ingest_out, "write canonical election JSON");

  auto* experiment_cmd = app.add_subcommand(
      "experiment", "run the relaxation suite over a corpus directory");
  std::string corpus_dir, report_path, summary_path, config_path;
  SuiteConfig suite;
  std::string suite_mode, suite_indices, suite_rules, suite_k, suite_p;
  int suite_jobs = 0, suite_sample = 0;
  unsigned suite_seed = 0;
  experiment_cmd->add_option("--corpus", corpus_dir, ".pb directory")
      ->required();
  experiment_cmd->add_option("--out", report_path, "report CSV path")
      ->required();
  experiment_cmd->add_option("--summary", summary_path, "summary JSON path");
  experiment_cmd->add_option("--config", config_path, "key=value config file");
  experiment_cmd->add_option("--k", suite_k, "comma-separated committee sizes");
  experiment_cmd->add_option("--indices", suite_indices,
                             "comma-separated index list");
  experiment_cmd->add_option("--rules", suite_rules, "comma-separated rules");
  experiment_cmd->add_option("--p", suite_p, "comma-separated p levels");
  experiment_cmd->add_option("--mode", suite_mode, "label derivation mode");
  experiment_cmd->add_option("--jobs", suite_jobs, "parallel workers");
  experiment_cmd->add_option("--sample", suite_sample,
                             "subsample this many instances");
  experiment_cmd->add_option("--seed", suite_seed, "subsampling seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const SolverCaps caps = caps_from_env_and_flags(
        cap_cells, dsat_limit, max_combinations, exhaustive_limit, tolerance);

    if (*index_cmd) return run_index(index_in, index_committee, format);

    if (*compare_cmd) {
      return run_compare(compare_in, committee_a, committee_b, format);
    }

    if (*optimal_cmd) {
      const Election e = load_election(optimal_in);
      const IndexKind kind = index_from_name(optimal_index);
      const Committee s = max_diversity_greedy(e, kind);
      SolverOutcome out;
      out.status = SolveStatus::Optimal;
      out.committee = s;
      out.diversity = diversity(e, s, kind);
      out.score = 0;
      return emit_outcome(e, out, optimal_index, format);
    }

    if (*dscr_cmd) {
      const Election e = load_election(dscr_in);
      const IndexKind kind = index_from_name(dscr_index);
      const ScoreKind score = score_from_name(dscr_score);
      if (score != ScoreKind::AV && score != ScoreKind::SAV) {
        throw ConfigError("solve-dscr needs a separable score (av|sav)");
      }
      const SeparableWeights w =
          score == ScoreKind::AV ? av_weights(e) : sav_weights(e);
      SolverOutcome out;
      if (!dscr_delta.empty()) {
        if (kind != IndexKind::Simpson) {
          throw ConfigError("the decision variant supports simpson only");
        }
        BigInt beta_scaled = 0;
        if (!dscr_beta.empty()) {
          beta_scaled = rat_ceil(parse_rational(dscr_beta) * w.scale);
        }
        out = dscr_knapsack_decision(e, w, beta_scaled,
                                     parse_rational(dscr_delta), dscr_weighted,
                                     caps);
      } else if (dscr_p >= 0) {
        if (dscr_weighted) {
          throw ConfigError("--weighted solving takes --beta, not --p");
        }
        out = rule_scr_p(e, kind, score, dscr_p, caps);
      } else {
        BigInt beta_scaled = 0;
        if (!dscr_beta.empty()) {
          beta_scaled = rat_ceil(parse_rational(dscr_beta) * w.scale);
        }
        if (dscr_weighted) {
          if (kind != IndexKind::Simpson) {
            throw ConfigError(
                "weighted score-constrained solving supports simpson only");
          }
          out = dscr_weighted_si(e, w, beta_scaled, caps);
        } else {
          switch (kind) {
            case IndexKind::Richness:
            case IndexKind::LexCount:
              out = dscr_exchange_lc(e, w, beta_scaled);
              if (out.status == SolveStatus::Optimal) {
                out.diversity = diversity(e, *out.committee, kind);
              }
              break;
            case IndexKind::Simpson:
              out = score == ScoreKind::AV
                        ? dscr_knapsack_max(e, w, beta_scaled, kind, caps)
                        : dscr_max_si_via_decision(e, w, beta_scaled, false,
                                                   caps);
              break;
            case IndexKind::Shannon:
              if (score == ScoreKind::AV) {
                out = dscr_knapsack_max(e, w, beta_scaled, kind, caps);
              } else {
                BruteForceConstraint constraint;
                constraint.kind = BruteForceConstraint::Kind::MinScore;
                constraint.weights = &w;
                constraint.beta_scaled = beta_scaled;
                out = brute_force(e, kind, constraint, false, caps);
              }
              break;
          }
        }
      }
      return emit_outcome(e, out, dscr_index, format);
    }

    if (*dsat_cmd) {
      const Election e = load_election(dsat_in);
      const IndexKind kind = index_from_name(dsat_index);
      Satisfaction floors(e.num_agents(), 0);
      if (!from_baseline.empty()) {
        const ScoreKind score = score_from_name(from_baseline);
        Committee baseline;
        if (score == ScoreKind::AV || score == ScoreKind::SAV) {
          const SeparableWeights w =
              score == ScoreKind::AV ? av_weights(e) : sav_weights(e);
          baseline = max_separable_committee(e, w).first;
        } else {
          baseline = max_score_exact(e, score, caps.exhaustive_limit).first;
        }
        const Satisfaction sat = satisfaction(e, baseline);
        for (std::size_t a = 0; a < sat.size(); ++a) {
          floors[a] = std::max<long long>(0, sat[a] - 1);
        }
      } else if (!floors_path.empty()) {
        std::istringstream in(read_file(floors_path));
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
          ++line_no;
          while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
            line.pop_back();
          }
          if (line.empty() || line == "agent,floor") continue;
          const auto comma = line.find(',');
          if (comma == std::string::npos) {
            throw ParseError("floors line " + std::to_string(line_no) +
                             ": expected agent,floor");
          }
          const std::string agent = line.substr(0, comma);
          bool found = false;
          for (int a = 0; a < e.num_agents(); ++a) {
            if (e.agents[a] == agent) {
              floors[a] = std::stoll(line.substr(comma + 1));
              found = true;
            }
          }
          if (!found) {
            throw ParseError("floors line " + std::to_string(line_no) +
                             ": unknown agent '" + agent + "'");
          }
        }
      } else {
        throw ConfigError("solve-dsat needs --floors or --from-baseline");
      }
      const SolverOutcome out = dsat_exact(e, kind, floors, caps);
      return emit_outcome(e, out, dsat_index, format);
    }

    if (*ingest_cmd) {
      if (ingest_in.pabulib_path.empty() || ingest_in.k <= 0) {
        throw ConfigError("ingest needs --input and --k");
      }
      const RawInstance raw = parse_pabulib(read_file(ingest_in.pabulib_path));
      const Election e =
          derive_labels(raw, label_mode_from_name(ingest_in.mode), ingest_in.k);
      const FilterDecision decision = filter_instance(e, ingest_in.k);
      if (!ingest_out.empty()) write_file(ingest_out, election_to_json(e));
      if (format == "json") {
        nlohmann::ordered_json j;
        j["filter"] = filter_name(decision);
        j["candidates"] = e.num_candidates();
        j["agents"] = e.num_agents();
        j["labels"] = e.num_labels();
        j["k"] = e.k;
        std::cout << j.dump(2) << '\n';
      } else {
        std::cout << "filter: " << filter_name(decision) << '\n';
        std::cout << "candidates: " << e.num_candidates()
                  << ", agents: " << e.num_agents()
                  << ", labels: " << e.num_labels() << ", k: " << e.k << '\n';
      }
      return 0;
    }

    if (*experiment_cmd) {
      suite.caps = caps;
      if (!config_path.empty()) {
        suite = parse_suite_config(read_file(config_path), suite);
      }
      auto parse_int_list = [](const std::string& text) {
        std::vector<int> out;
        std::istringstream cells(text);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
          if (!cell.empty()) out.push_back(std::stoi(cell));
        }
        return out;
      };
      if (!suite_k.empty()) suite.k_levels = parse_int_list(suite_k);
      if (!suite_p.empty()) suite.p_levels = parse_int_list(suite_p);
      if (!suite_indices.empty()) {
        suite.indices.clear();
        std::istringstream cells(suite_indices);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
          suite.indices.push_back(index_from_name(cell));
        }
      }
      if (!suite_rules.empty()) {
        suite.rules.clear();
        std::istringstream cells(suite_rules);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
          suite.rules.push_back(score_from_name(cell));
        }
      }
      if (!suite_mode.empty()) {
        suite.label_mode = label_mode_from_name(suite_mode);
      }
      if (suite_jobs > 0) suite.jobs = suite_jobs;
      if (suite_sample > 0) suite.sample = suite_sample;
      if (suite_seed != 0) suite.seed = suite_seed;

      std::vector<std::pair<std::string, std::string>> corpus;
      for (const auto& entry : fs::directory_iterator(corpus_dir)) {
        if (entry.path().extension() == ".pb") {
          corpus.emplace_back(entry.path().stem().string(),
                              read_file(entry.path().string()));
        }
      }
      const SuiteResult result = run_suite(corpus, suite);
      write_file(report_path, result.csv);
      if (!summary_path.empty()) write_file(summary_path, result.summary_json);
      for (const auto& line : result.log) std::cerr << line << '\n';
      std::cerr << "instances with errors or skips: "
                << result.skipped_instances << '\n';
      return 0;
    }
  } catch (const SizeLimitError& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 3;
  } catch (const ResourceError& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 3;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 2;
  }
  return 2;
}
