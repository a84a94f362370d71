#include "kgforge/prune/alignment.hpp"

#include <vector>

#include "kgforge/common/error.hpp"
#include "kgforge/graph/property_graph.hpp"

namespace kgforge::prune {

void AlignmentParams::validate() const {
  if (!(match > mismatch)) throw Error(Errc::InvalidParams, "match score must exceed mismatch score");
  if (!(gap < match)) throw Error(Errc::InvalidParams, "gap score must be below match score");
}

namespace {

struct Cell {
  long score;
  int matches;
  int length;
};

// true if candidate strictly improves on best
bool better(const Cell& cand, const Cell& best) {
  if (cand.score != best.score) return cand.score > best.score;
  if (cand.matches != best.matches) return cand.matches > best.matches;
  return cand.length < best.length;
}

}  // namespace

AlignmentResult needleman_wunsch(std::string_view a, std::string_view b, const AlignmentParams& params) {
  params.validate();
  if (a.empty() && b.empty()) throw Error(Errc::BothEmpty, "both sequences are empty");
  if (!graph::is_valid_sequence(a)) throw Error(Errc::InvalidSequence, std::string(a));
  if (!graph::is_valid_sequence(b)) throw Error(Errc::InvalidSequence, std::string(b));

  const std::size_t n = a.size(), m = b.size();
  std::vector<Cell> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = {static_cast<long>(j) * params.gap, 0, static_cast<int>(j)};
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = {static_cast<long>(i) * params.gap, 0, static_cast<int>(i)};
    for (std::size_t j = 1; j <= m; ++j) {
      const bool same = a[i - 1] == b[j - 1];
      // candidates in tie-break order: diagonal, up (gap in b), left (gap in a)
      Cell best{prev[j - 1].score + (same ? params.match : params.mismatch), prev[j - 1].matches + (same ? 1 : 0),
                prev[j - 1].length + 1};
      const Cell up{prev[j].score + params.gap, prev[j].matches, prev[j].length + 1};
      if (better(up, best)) best = up;
      const Cell left{cur[j - 1].score + params.gap, cur[j - 1].matches, cur[j - 1].length + 1};
      if (better(left, best)) best = left;
      cur[j] = best;
    }
    std::swap(prev, cur);
  }
  const Cell& end = prev[m];
  AlignmentResult r;
  r.score = end.score;
  r.matches = static_cast<std::size_t>(end.matches);
  r.length = static_cast<std::size_t>(end.length);
  r.percent_identity = 100.0 * static_cast<double>(r.matches) / static_cast<double>(r.length);
  return r;
}

}  // namespace kgforge::prune
