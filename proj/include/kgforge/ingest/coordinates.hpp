#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace kgforge::ingest {

struct GenomicInterval {
  std::string chromosome;
  std::uint64_t start = 0;
  std::uint64_t end = 0;
  char strand = '+';

  friend bool operator==(const GenomicInterval&, const GenomicInterval&) = default;
};

struct NormalizedCoordinate {
  GenomicInterval interval;
  std::string canonical;  // chrom:start-end{+|-}
};

// Parses `chrom:start-end strand`. Surrounding whitespace and leading zeros
// are dropped in the canonical form. Throws Error(InvalidCoordinate).
NormalizedCoordinate normalize_coordinates(std::string_view raw);

}  // namespace kgforge::ingest
