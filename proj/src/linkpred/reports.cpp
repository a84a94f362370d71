#include "kgforge/linkpred/reports.hpp"

#include <cstdio>
#include <map>

#include "kgforge/common/error.hpp"
#include "kgforge/common/text.hpp"

namespace kgforge::linkpred {

void write_embeddings_tsv(std::ostream& out, const std::vector<std::string>& ids, const Embedding& emb) {
  for (std::size_t i = 0; i < emb.rows; ++i) {
    out << ids.at(i);
    for (float v : emb.row(i)) out << '\t' << text::format_float(v);
    out << '\n';
  }
}

Embedding read_embeddings_tsv(std::istream& in, std::vector<std::string>& ids) {
  Embedding e;
  std::string line;
  std::size_t lineno = 0;
  ids.clear();
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto cells = text::split(line, '\t');
    if (e.rows == 0) e.dim = cells.size() - 1;
    if (cells.size() < 2 || cells.size() - 1 != e.dim)
      throw Error(Errc::MalformedRow, "embeddings line " + std::to_string(lineno) + ": wrong column count");
    ids.push_back(cells[0]);
    for (std::size_t i = 1; i < cells.size(); ++i) {
      auto v = text::parse_double(cells[i]);
      if (!v) throw Error(Errc::MalformedRow, "embeddings line " + std::to_string(lineno) + ": bad number");
      e.data.push_back(static_cast<float>(*v));
    }
    ++e.rows;
  }
  return e;
}

std::string format_percent_cell(double mean, double stddev) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f%%\xC2\xB1%.2f%%", mean * 100, stddev * 100);
  return buf;
}

void write_eval_report(std::ostream& out, std::span<const EvalResult> results) {
  static constexpr Task columns[] = {Task::Hom, Task::MHom, Task::Het, Task::MHet};
  std::vector<std::pair<std::string, std::string>> rows;
  std::map<std::pair<std::string, std::string>, std::map<Task, const EvalResult*>> cells;
  for (const auto& r : results) {
    // Het rows name the predicate; group them with the plain category row.
    std::pair<std::string, std::string> key{r.model, r.edge};
    auto [it, added] = cells.try_emplace(key);
    if (added) rows.push_back(key);
    it->second[r.task] = &r;
  }
  out << "Model\tEdge\tHom\tMHom\tHet\tMHet\n";
  for (const auto& key : rows) {
    out << key.first << '\t' << key.second;
    for (auto t : columns) {
      auto it = cells[key].find(t);
      out << '\t' << (it == cells[key].end() ? std::string("-") : format_percent_cell(it->second->mean, it->second->stddev));
    }
    out << '\n';
  }
}

nlohmann::ordered_json to_json(const EvalResult& r) {
  nlohmann::ordered_json j;
  j["model"] = r.model;
  j["edge"] = r.edge;
  j["task"] = std::string(task_name(r.task));
  j["balanced_accuracy_mean"] = r.mean;
  j["balanced_accuracy_std"] = r.stddev;
  auto hs = nlohmann::ordered_json::array();
  for (const auto& h : r.holdouts) {
    nlohmann::ordered_json o;
    o["balanced_accuracy"] = h.balanced_accuracy;
    if (h.control_accuracy >= 0) o["control_accuracy"] = h.control_accuracy;
    o["tp"] = h.confusion.tp;
    o["fn"] = h.confusion.fn;
    o["tn"] = h.confusion.tn;
    o["fp"] = h.confusion.fp;
    o["train_positives"] = h.train_positives;
    o["train_negatives"] = h.train_negatives;
    o["test_positives"] = h.test_positives;
    o["test_negatives"] = h.test_negatives;
    hs.push_back(o);
  }
  j["holdouts"] = hs;
  if (r.control_mean >= 0) j["control_mean"] = r.control_mean;
  return j;
}

nlohmann::ordered_json to_json(const TimeSplitEvaluation& r, const LearningGraph& g) {
  nlohmann::ordered_json j;
  j["cutoff"] = r.split.cutoff;
  j["train_edges"] = r.split.train.size();
  j["test_edges"] = r.split.test.size();
  j["undated_edges"] = r.split.undated;
  j["scored_edges"] = r.scored.size();
  j["train_positives"] = r.train_positives;
  j["train_negatives"] = r.train_negatives;
  j["fraction_above_half"] = r.fraction_above_half;
  auto years = nlohmann::ordered_json::array(), counts = years, medians = years, q1 = years, q3 = years, frac = years;
  for (const auto& y : r.by_year) {
    years.push_back(y.year);
    counts.push_back(y.count);
    medians.push_back(y.median);
    q1.push_back(y.q1);
    q3.push_back(y.q3);
    frac.push_back(y.fraction_above_half);
  }
  j["by_year"] = {{"year", years}, {"count", counts}, {"median", medians},
                  {"q1", q1},     {"q3", q3},         {"fraction_above_half", frac}};
  auto scores = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < r.scored.size(); ++i)
    scores.push_back({{"source", g.ids()[r.scored[i].edge.src]},
                      {"target", g.ids()[r.scored[i].edge.dst]},
                      {"predicate", g.relations()[r.scored[i].edge.rel]},
                      {"year", r.scored[i].year},
                      {"score", r.scores[i]}});
  j["scores"] = scores;
  return j;
}

}  // namespace kgforge::linkpred
