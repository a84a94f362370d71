#include "kgforge/linkpred/features.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "kgforge/common/error.hpp"
#include "kgforge/common/text.hpp"

namespace kgforge::linkpred {

namespace {
int base_index(char c) {
  switch (c) {
    case 'A': return 0;
    case 'C': return 1;
    case 'G': return 2;
    case 'U': return 3;
    case 'N': return -1;
    default: return -2;
  }
}
}  // namespace

std::vector<float> kmer_features(std::string_view sequence, int k) {
  if (k < 1 || k > 4) throw Error(Errc::InvalidConfig, "k must be in [1, 4]");
  const auto uk = static_cast<std::size_t>(k);
  if (sequence.size() < uk) throw Error(Errc::SequenceTooShort, "sequence shorter than k");
  std::vector<int> codes(sequence.size());
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    codes[i] = base_index(sequence[i]);
    if (codes[i] == -2) throw Error(Errc::InvalidSequence, std::string(sequence));
  }
  std::vector<double> counts(std::size_t{1} << (2 * uk), 0.0);
  double total = 0;
  for (std::size_t i = 0; i + uk <= sequence.size(); ++i) {
    std::size_t idx = 0;
    bool ok = true;
    for (std::size_t j = 0; j < uk && ok; ++j) {
      if (codes[i + j] < 0) ok = false;
      idx = idx * 4 + static_cast<std::size_t>(codes[i + j]);
    }
    if (!ok) continue;
    counts[idx] += 1;
    total += 1;
  }
  std::vector<float> out(counts.size(), 0.0f);
  if (total > 0)
    for (std::size_t i = 0; i < counts.size(); ++i) out[i] = static_cast<float>(counts[i] / total);
  return out;
}

std::vector<float> text_hash_features(std::string_view text, std::size_t dim) {
  if (dim < 8) throw Error(Errc::InvalidConfig, "hash dimension must be >= 8");
  std::vector<double> acc(dim, 0.0);
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    const auto h = text::fnv1a64(token);
    acc[h % dim] += (h >> 63) ? -1.0 : 1.0;
    token.clear();
  };
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c)))
      token.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    else
      flush();
  }
  flush();
  double norm = 0;
  for (double x : acc) norm += x * x;
  std::vector<float> out(dim, 0.0f);
  if (norm > 0) {
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < dim; ++i) out[i] = static_cast<float>(acc[i] / norm);
  }
  return out;
}

}  // namespace kgforge::linkpred
