#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace kgforge::linkpred {

enum class EmbeddingMethod { Node2Vec, Line, TransE };
enum class Norm { L1, L2 };

std::string_view method_name(EmbeddingMethod m) noexcept;
EmbeddingMethod parse_method(std::string_view text);

struct EmbeddingConfig {
  EmbeddingMethod method = EmbeddingMethod::Node2Vec;
  double p = 1.0;  // return parameter
  double q = 1.0;  // in-out parameter; +inf forbids distance-2 hops
  int line_order = 2;
  double margin = 1.0;
  Norm norm = Norm::L2;
  std::size_t dimensions = 64;
  std::size_t epochs = 5;
  double learning_rate = 0.025;
  std::size_t walks_per_node = 10;
  std::size_t walk_length = 30;
  std::size_t window = 5;
  std::size_t negatives = 5;
  std::uint64_t seed = 42;
  unsigned jobs = 1;
  // Lock-free parallel SGD. Faster, not bitwise reproducible.
  bool hogwild = false;

  void validate() const;  // throws Error(InvalidConfig)
};

struct SplitSpec {
  double train_size = 0.7;
  std::size_t holdouts = 5;
  double unbalance_rate = 1.0;  // negatives per positive
  bool scale_free = true;

  void validate() const;
};

enum class Task { Hom, MHom, Het, MHet };
std::string_view task_name(Task t) noexcept;
Task parse_task(std::string_view text);

struct TaskSpec {
  Task task = Task::Hom;
  std::string source_label;
  std::string target_label;
  std::optional<std::string> predicate;  // required for Het/MHet
  bool shuffle_labels = false;           // permutation-null control

  bool multimodal() const noexcept { return task == Task::MHom || task == Task::MHet; }
  bool typed() const noexcept { return task == Task::Het || task == Task::MHet; }
  void validate() const;
};

struct ForestConfig {
  std::size_t n_estimators = 100;
  std::size_t max_depth = 100;
  bool bootstrap = true;
  std::size_t min_samples_split = 2;
  std::optional<std::size_t> max_features;  // default sqrt(d)
  std::uint64_t seed = 42;
  unsigned jobs = 1;

  void validate() const;
};

}  // namespace kgforge::linkpred
