#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kgforge::text {

std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);
bool contains_icase(std::string_view haystack, std::string_view needle);

std::optional<long long> parse_int(std::string_view s);
std::optional<double> parse_double(std::string_view s);

// Shortest round-trip decimal form.
std::string format_double(double v);
std::string format_float(float v);

// 64-bit FNV-1a; stable across platforms, used for feature hashing.
std::uint64_t fnv1a64(std::string_view s) noexcept;

// SplitMix64 finalizer, used to derive independent per-worker seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

std::string sha256_hex(std::string_view data);

}  // namespace kgforge::text
