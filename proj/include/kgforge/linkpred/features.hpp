#pragma once

#include <string_view>
#include <vector>

namespace kgforge::linkpred {

// Normalized k-mer frequencies, k in [1, 4], index = base-4 digits over ACGU.
// Windows containing N are skipped; if none remain the vector is all zero.
std::vector<float> kmer_features(std::string_view sequence, int k);

// Signed feature hashing of lowercase word tokens, L2-normalized. dim >= 8.
std::vector<float> text_hash_features(std::string_view text, std::size_t dim);

}  // namespace kgforge::linkpred
