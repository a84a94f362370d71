#include "kgforge/ingest/coordinates.hpp"

#include <cctype>

#include "kgforge/common/error.hpp"
#include "kgforge/common/text.hpp"

namespace kgforge::ingest {

NormalizedCoordinate normalize_coordinates(std::string_view raw) {
  const std::string_view s = text::trim(raw);
  auto fail = [&](const char* why) -> NormalizedCoordinate {
    throw Error(Errc::InvalidCoordinate, "'" + std::string(raw) + "': " + why);
  };
  auto colon = s.find(':');
  if (colon == std::string_view::npos || colon == 0) return fail("missing chromosome");
  for (char c : s.substr(0, colon))
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.')) return fail("bad chromosome name");
  if (s.size() < colon + 5) return fail("truncated interval");
  const char strand = s.back();
  if (strand != '+' && strand != '-') return fail("missing strand");
  const std::string_view range = s.substr(colon + 1, s.size() - colon - 2);
  auto dash = range.find('-');
  if (dash == std::string_view::npos) return fail("missing '-' between start and end");
  auto start_digits = range.substr(0, dash), end_digits = range.substr(dash + 1);
  for (auto part : {start_digits, end_digits}) {
    if (part.empty() || part.size() > 19) return fail("bad position");
    for (char c : part)
      if (c < '0' || c > '9') return fail("bad position");
  }
  NormalizedCoordinate out;
  out.interval.chromosome = std::string(s.substr(0, colon));
  out.interval.start = static_cast<std::uint64_t>(*text::parse_int(start_digits));
  out.interval.end = static_cast<std::uint64_t>(*text::parse_int(end_digits));
  out.interval.strand = strand;
  if (out.interval.start > out.interval.end) return fail("start after end");
  out.canonical = out.interval.chromosome + ":" + std::to_string(out.interval.start) + "-" +
                  std::to_string(out.interval.end) + strand;
  return out;
}

}  // namespace kgforge::ingest
