#include "kgforge/linkpred/config.hpp"

#include <cmath>

#include "kgforge/common/error.hpp"
#include "kgforge/common/text.hpp"

namespace kgforge::linkpred {

namespace {
void require(bool ok, const char* what) {
  if (!ok) throw Error(Errc::InvalidConfig, what);
}
}  // namespace

std::string_view method_name(EmbeddingMethod m) noexcept {
  switch (m) {
    case EmbeddingMethod::Node2Vec: return "node2vec";
    case EmbeddingMethod::Line: return "LINE";
    case EmbeddingMethod::TransE: return "TransE";
  }
  return "";
}

EmbeddingMethod parse_method(std::string_view text) {
  auto t = text::to_lower(text);
  if (t == "node2vec" || t == "deepwalk") return EmbeddingMethod::Node2Vec;
  if (t == "line") return EmbeddingMethod::Line;
  if (t == "transe") return EmbeddingMethod::TransE;
  throw Error(Errc::InvalidConfig, "unknown embedding method '" + std::string(text) + "'");
}

void EmbeddingConfig::validate() const {
  require(dimensions >= 2, "dimensions must be >= 2");
  require(p > 0 && q > 0 && !std::isnan(p) && !std::isnan(q), "p and q must be > 0");
  require(margin > 0, "margin must be > 0");
  require(line_order == 1 || line_order == 2, "LINE order must be 1 or 2");
  require(learning_rate > 0, "learning rate must be > 0");
  require(walk_length >= 1, "walk length must be >= 1");
  require(window >= 1, "window must be >= 1");
}

void SplitSpec::validate() const {
  require(train_size > 0 && train_size < 1, "train_size must be in (0, 1)");
  require(holdouts >= 1, "holdouts must be >= 1");
  require(unbalance_rate > 0, "unbalance rate must be > 0");
}

std::string_view task_name(Task t) noexcept {
  switch (t) {
    case Task::Hom: return "Hom";
    case Task::MHom: return "MHom";
    case Task::Het: return "Het";
    case Task::MHet: return "MHet";
  }
  return "";
}

Task parse_task(std::string_view text) {
  auto t = text::to_lower(text);
  if (t == "hom") return Task::Hom;
  if (t == "mhom") return Task::MHom;
  if (t == "het") return Task::Het;
  if (t == "mhet") return Task::MHet;
  throw Error(Errc::InvalidConfig, "unknown task '" + std::string(text) + "'");
}

void TaskSpec::validate() const {
  require(!source_label.empty() && !target_label.empty(), "edge category needs source and target labels");
  require(!typed() || (predicate && !predicate->empty()), "Het/MHet need a predicate");
}

void ForestConfig::validate() const {
  require(n_estimators >= 1, "n_estimators must be >= 1");
  require(max_depth >= 1, "max_depth must be >= 1");
  require(min_samples_split >= 2, "min_samples_split must be >= 2");
  require(!max_features || *max_features >= 1, "max_features must be >= 1");
}

}  // namespace kgforge::linkpred
