#include "divelect/ingest.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace divelect {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> cells;
  std::string current;
  for (char ch : line) {
    if (ch == sep) {
      cells.push_back(current);
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  cells.push_back(current);
  return cells;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(std::size_t line_no, const std::string& message) {
  throw ParseError("line " + std::to_string(line_no) + ": " + message);
}

}  // namespace

RawInstance parse_pabulib(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::string current;
    for (char ch : text) {
      if (ch == '\n') {
        lines.push_back(current);
        current.clear();
      } else if (ch != '\r') {
        current.push_back(ch);
      }
    }
    if (!current.empty()) lines.push_back(current);
  }

  RawInstance raw;
  std::size_t i = 0;
  auto skip_blank = [&] {
    while (i < lines.size() && trim(lines[i]).empty()) ++i;
  };

  skip_blank();
  if (i >= lines.size() || trim(lines[i]) != "META") {
    fail(i + 1, "expected section header META");
  }
  ++i;
  if (i >= lines.size()) fail(i, "META section has no header row");
  {
    const auto header = split(lines[i], ';');
    if (header.size() < 2 || trim(header[0]) != "key" ||
        trim(header[1]) != "value") {
      fail(i + 1, "META header must be 'key;value'");
    }
  }
  ++i;
  for (; i < lines.size() && trim(lines[i]) != "PROJECTS"; ++i) {
    if (trim(lines[i]).empty()) continue;
    const auto cells = split(lines[i], ';');
    if (cells.size() != 2) fail(i + 1, "META rows need exactly key and value");
    raw.meta.emplace_back(trim(cells[0]), trim(cells[1]));
  }
  if (i >= lines.size()) fail(i, "expected section header PROJECTS");
  ++i;

  if (i >= lines.size()) fail(i, "PROJECTS section has no header row");
  raw.project_columns = split(lines[i], ';');
  for (auto& c : raw.project_columns) c = trim(c);
  const auto id_col =
      std::find(raw.project_columns.begin(), raw.project_columns.end(),
                "project_id");
  if (id_col == raw.project_columns.end()) {
    fail(i + 1, "PROJECTS header lacks a project_id column");
  }
  const std::size_t id_idx = id_col - raw.project_columns.begin();
  ++i;
  std::unordered_set<std::string> seen_projects;
  for (; i < lines.size() && trim(lines[i]) != "VOTES"; ++i) {
    if (trim(lines[i]).empty()) continue;
    const auto cells = split(lines[i], ';');
    if (cells.size() != raw.project_columns.size()) {
      fail(i + 1, "project row has " + std::to_string(cells.size()) +
                      " cells, header has " +
                      std::to_string(raw.project_columns.size()));
    }
    RawInstance::Project project;
    project.id = trim(cells[id_idx]);
    if (project.id.empty()) fail(i + 1, "empty project_id");
    if (!seen_projects.insert(project.id).second) {
      fail(i + 1, "duplicate project id '" + project.id + "'");
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c == id_idx) continue;
      project.attributes.emplace_back(raw.project_columns[c], trim(cells[c]));
    }
    raw.projects.push_back(std::move(project));
  }
  if (i >= lines.size()) fail(i, "expected section header VOTES");
  ++i;

  if (i >= lines.size()) fail(i, "VOTES section has no header row");
  raw.vote_columns = split(lines[i], ';');
  for (auto& c : raw.vote_columns) c = trim(c);
  const auto voter_col = std::find(raw.vote_columns.begin(),
                                   raw.vote_columns.end(), "voter_id");
  const auto vote_col =
      std::find(raw.vote_columns.begin(), raw.vote_columns.end(), "vote");
  if (voter_col == raw.vote_columns.end() ||
      vote_col == raw.vote_columns.end()) {
    fail(i + 1, "VOTES header needs voter_id and vote columns");
  }
  const std::size_t voter_idx = voter_col - raw.vote_columns.begin();
  const std::size_t vote_idx = vote_col - raw.vote_columns.begin();
  ++i;
  for (; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    const auto cells = split(lines[i], ';');
    if (cells.size() != raw.vote_columns.size()) {
      fail(i + 1, "vote row has " + std::to_string(cells.size()) +
                      " cells, header has " +
                      std::to_string(raw.vote_columns.size()));
    }
    RawInstance::Vote vote;
    vote.voter = trim(cells[voter_idx]);
    for (const auto& id : split(cells[vote_idx], ',')) {
      const std::string project = trim(id);
      if (project.empty()) continue;
      if (!seen_projects.count(project)) {
        fail(i + 1, "vote references unknown project '" + project + "'");
      }
      vote.approved.push_back(project);
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c == voter_idx || c == vote_idx) continue;
      vote.attributes.emplace_back(raw.vote_columns[c], trim(cells[c]));
    }
    raw.votes.push_back(std::move(vote));
  }
  return raw;
}

std::string write_pabulib(const RawInstance& raw) {
  std::ostringstream out;
  out << "META\nkey;value\n";
  for (const auto& [key, value] : raw.meta) out << key << ';' << value << '\n';
  out << "PROJECTS\n";
  for (std::size_t c = 0; c < raw.project_columns.size(); ++c) {
    out << (c ? ";" : "") << raw.project_columns[c];
  }
  out << '\n';
  for (const auto& project : raw.projects) {
    for (std::size_t c = 0; c < raw.project_columns.size(); ++c) {
      if (c) out << ';';
      if (raw.project_columns[c] == "project_id") {
        out << project.id;
      } else {
        for (const auto& [key, value] : project.attributes) {
          if (key == raw.project_columns[c]) {
            out << value;
            break;
          }
        }
      }
    }
    out << '\n';
  }
  out << "VOTES\n";
  for (std::size_t c = 0; c < raw.vote_columns.size(); ++c) {
    out << (c ? ";" : "") << raw.vote_columns[c];
  }
  out << '\n';
  for (const auto& vote : raw.votes) {
    for (std::size_t c = 0; c < raw.vote_columns.size(); ++c) {
      if (c) out << ';';
      const std::string& column = raw.vote_columns[c];
      if (column == "voter_id") {
        out << vote.voter;
      } else if (column == "vote") {
        for (std::size_t v = 0; v < vote.approved.size(); ++v) {
          out << (v ? "," : "") << vote.approved[v];
        }
      } else {
        for (const auto& [key, value] : vote.attributes) {
          if (key == column) {
            out << value;
            break;
          }
        }
      }
    }
    out << '\n';
  }
  return out.str();
}

const char* label_mode_name(LabelMode mode) {
  switch (mode) {
    case LabelMode::Categories: return "categories";
    case LabelMode::Targets: return "targets";
    case LabelMode::Union: return "union";
  }
  throw InvariantError("unreachable label mode");
}

LabelMode label_mode_from_name(const std::string& name) {
  if (name == "categories") return LabelMode::Categories;
  if (name == "targets") return LabelMode::Targets;
  if (name == "union") return LabelMode::Union;
  throw ConfigError("unknown label mode '" + name + "'");
}

namespace {

std::set<std::string> attribute_tokens(const RawInstance::Project& project,
                                       const std::string& column) {
  std::set<std::string> tokens;
  for (const auto& [key, value] : project.attributes) {
    if (key != column) continue;
    for (const auto& token : split(value, ',')) {
      const std::string t = trim(token);
      if (!t.empty()) tokens.insert(t);
    }
  }
  return tokens;
}

}  // namespace

Election derive_labels(const RawInstance& raw, LabelMode mode, int k) {
  Election e;
  e.k = k;
  std::unordered_map<std::string, int> label_index;
  std::unordered_map<std::string, int> candidate_index;
  for (const auto& project : raw.projects) {
    std::set<std::string> tokens;
    if (mode == LabelMode::Categories || mode == LabelMode::Union) {
      const auto cats = attribute_tokens(project, "category");
      tokens.insert(cats.begin(), cats.end());
    }
    if (mode == LabelMode::Targets || mode == LabelMode::Union) {
      const auto targets = attribute_tokens(project, "target");
      tokens.insert(targets.begin(), targets.end());
    }
    if (tokens.empty()) {
      throw ParseError("project '" + project.id + "' lacks the " +
                       label_mode_name(mode) + " attribute needed for labels");
    }
    std::string label;
    for (const auto& token : tokens) {
      if (!label.empty()) label += '|';
      label += token;
    }
    auto [it, inserted] =
        label_index.try_emplace(label, static_cast<int>(e.labels.size()));
    if (inserted) e.labels.push_back(label);
    candidate_index[project.id] = static_cast<int>(e.candidates.size());
    e.candidates.push_back(project.id);
    e.label_of.push_back(it->second);
  }
  for (const auto& vote : raw.votes) {
    e.agents.push_back(vote.voter);
    std::vector<int> ballot;
    for (const auto& id : vote.approved) {
      ballot.push_back(candidate_index.at(id));
    }
    std::sort(ballot.begin(), ballot.end());
    ballot.erase(std::unique(ballot.begin(), ballot.end()), ballot.end());
    e.approvals.push_back(std::move(ballot));
  }
  e.validate();
  return e;
}

const char* filter_name(FilterDecision d) {
  switch (d) {
    case FilterDecision::Keep: return "keep";
    case FilterDecision::DropAllLabelsDistinct: return "drop(|C|=m)";
    case FilterDecision::DropTooFewCandidates: return "drop(|C|<=k)";
  }
  throw InvariantError("unreachable filter decision");
}

FilterDecision filter_instance(const Election& e, int k) {
  if (e.num_candidates() == e.num_labels()) {
    return FilterDecision::DropAllLabelsDistinct;
  }
  if (e.num_candidates() <= k) return FilterDecision::DropTooFewCandidates;
  return FilterDecision::Keep;
}

std::string election_to_json(const Election& e) {
  nlohmann::ordered_json j;
  j["agents"] = e.agents;
  j["candidates"] = e.candidates;
  j["k"] = e.k;
  j["labels"] = e.labels;
  nlohmann::ordered_json label_of = nlohmann::ordered_json::object();
  for (int c = 0; c < e.num_candidates(); ++c) {
    label_of[e.candidates[c]] = e.labels[e.label_of[c]];
  }
  j["label_of"] = std::move(label_of);
  nlohmann::ordered_json approvals = nlohmann::ordered_json::object();
  for (int a = 0; a < e.num_agents(); ++a) {
    std::vector<std::string> ids;
    for (int c : e.approvals[a]) ids.push_back(e.candidates[c]);
    approvals[e.agents[a]] = ids;
  }
  j["approvals"] = std::move(approvals);
  if (e.label_weights) {
    nlohmann::ordered_json weights = nlohmann::ordered_json::object();
    for (int l = 0; l < e.num_labels(); ++l) {
      weights[e.labels[l]] = (*e.label_weights)[l];
    }
    j["label_weights"] = std::move(weights);
  }
  return j.dump(2) + "\n";
}

Election election_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("invalid election JSON: ") + ex.what());
  }
  Election e;
  try {
    e.agents = j.at("agents").get<std::vector<std::string>>();
    e.candidates = j.at("candidates").get<std::vector<std::string>>();
    e.labels = j.at("labels").get<std::vector<std::string>>();
    e.k = j.at("k").get<int>();
    std::unordered_map<std::string, int> candidate_index;
    for (int c = 0; c < e.num_candidates(); ++c) {
      candidate_index[e.candidates[c]] = c;
    }
    std::unordered_map<std::string, int> label_index;
    for (int l = 0; l < e.num_labels(); ++l) label_index[e.labels[l]] = l;
    e.label_of.resize(e.candidates.size());
    for (const auto& [candidate, label] : j.at("label_of").items()) {
      e.label_of.at(candidate_index.at(candidate)) =
          label_index.at(label.get<std::string>());
    }
    for (const auto& agent : e.agents) {
      std::vector<int> ballot;
      for (const auto& id : j.at("approvals").at(agent)) {
        ballot.push_back(candidate_index.at(id.get<std::string>()));
      }
      std::sort(ballot.begin(), ballot.end());
      e.approvals.push_back(std::move(ballot));
    }
    if (j.contains("label_weights")) {
      std::vector<long long> weights(e.num_labels(), 1);
      for (const auto& [label, weight] : j.at("label_weights").items()) {
        weights.at(label_index.at(label)) = weight.get<long long>();
      }
      e.label_weights = std::move(weights);
    }
  } catch (const std::out_of_range&) {
    throw ParseError("election JSON references unknown ids");
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("election JSON is malformed: ") + ex.what());
  }
  e.validate();
  return e;
}

Election parse_ballot_lines(const std::string& ballots_text,
                            const std::string& sidecar_csv, int k) {
  Election e;
  e.k = k;
  std::unordered_map<std::string, int> candidate_index;
  std::unordered_map<std::string, int> label_index;
  std::istringstream sidecar(sidecar_csv);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(sidecar, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 2) {
      fail(line_no, "label sidecar rows need candidate_id,label");
    }
    const std::string id = trim(cells[0]);
    const std::string label = trim(cells[1]);
    if (candidate_index.count(id)) {
      fail(line_no, "duplicate candidate '" + id + "' in label sidecar");
    }
    auto [it, inserted] =
        label_index.try_emplace(label, static_cast<int>(e.labels.size()));
    if (inserted) e.labels.push_back(label);
    candidate_index[id] = static_cast<int>(e.candidates.size());
    e.candidates.push_back(id);
    e.label_of.push_back(it->second);
  }
  std::istringstream ballots(ballots_text);
  line_no = 0;
  while (std::getline(ballots, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    e.agents.push_back("a" + std::to_string(e.agents.size() + 1));
    std::vector<int> ballot;
    for (const auto& id : split(line, ',')) {
      const std::string candidate = trim(id);
      if (candidate.empty()) continue;
      const auto it = candidate_index.find(candidate);
      if (it == candidate_index.end()) {
        fail(line_no, "ballot references unknown candidate '" + candidate +
                          "'");
      }
      ballot.push_back(it->second);
    }
    std::sort(ballot.begin(), ballot.end());
    ballot.erase(std::unique(ballot.begin(), ballot.end()), ballot.end());
    e.approvals.push_back(std::move(ballot));
  }
  e.validate();
  return e;
}

}  // namespace divelect
