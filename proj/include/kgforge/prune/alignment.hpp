#pragma once

#include <cstddef>
#include <string_view>

namespace kgforge::prune {

// Linear-gap global alignment scores. Defaults are the textbook +1/-1/-1.
struct AlignmentParams {
  int match = 1;
  int mismatch = -1;
  int gap = -1;

  // Requires match > mismatch and gap < match; throws Error(InvalidParams).
  void validate() const;
};

struct AlignmentResult {
  long score = 0;                // optimal DP score
  std::size_t matches = 0;       // identical aligned positions
  std::size_t length = 0;        // alignment columns
  double percent_identity = 0;   // 100 * matches / length
};

// Needleman-Wunsch over {A,C,G,U,N}. Among score-optimal alignments the one
// with the most identical positions, then the shortest, is reported; any
// remaining tie is broken diagonal > up > left. This keeps percent identity
// symmetric in (a, b). Throws BothEmpty / InvalidSequence / InvalidParams.
AlignmentResult needleman_wunsch(std::string_view a, std::string_view b, const AlignmentParams& params = {});

}  // namespace kgforge::prune
