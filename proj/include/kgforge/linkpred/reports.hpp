#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "kgforge/linkpred/evaluation.hpp"
#include "kgforge/linkpred/learning_graph.hpp"
#include "kgforge/linkpred/timesplit.hpp"

namespace kgforge::linkpred {

// curie<TAB>v1<TAB>...<TAB>vd, shortest round-trip floats.
void write_embeddings_tsv(std::ostream& out, const std::vector<std::string>& ids, const Embedding& emb);
// Inverse of the above; ids are returned in file order.
Embedding read_embeddings_tsv(std::istream& in, std::vector<std::string>& ids);

// Model, Edge, Hom, MHom, Het, MHet; cells "89.09%±1.20%", "-" when not run.
void write_eval_report(std::ostream& out, std::span<const EvalResult> results);
std::string format_percent_cell(double mean, double stddev);

nlohmann::ordered_json to_json(const EvalResult& r);
nlohmann::ordered_json to_json(const TimeSplitEvaluation& r, const LearningGraph& g);

}  // namespace kgforge::linkpred
