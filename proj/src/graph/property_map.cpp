#include "kgforge/graph/property_map.hpp"

#include <algorithm>

namespace kgforge::graph {

PropertyMap::PropertyMap(std::initializer_list<Entry> entries) {
  for (const auto& [name, values] : entries) add(name, values);
}

const ValueList* PropertyMap::find(std::string_view name) const noexcept {
  for (const auto& e : entries_)
    if (e.first == name) return &e.second;
  return nullptr;
}

std::size_t PropertyMap::add(std::string_view name, std::span<const std::string> values) {
  if (values.empty()) return 0;
  auto it = std::find_if(entries_.begin(), entries_.end(), [&](const Entry& e) { return e.first == name; });
  if (it == entries_.end()) {
    entries_.emplace_back(std::string(name), ValueList{});
    it = std::prev(entries_.end());
  }
  std::size_t added = 0;
  for (const auto& v : values) {
    if (std::find(it->second.begin(), it->second.end(), v) == it->second.end()) {
      it->second.push_back(v);
      ++added;
    }
  }
  return added;
}

std::size_t PropertyMap::add(std::string_view name, std::string value) {
  const std::string one[] = {std::move(value)};
  return add(name, one);
}

std::size_t PropertyMap::merge(const PropertyMap& other) {
  std::size_t added = 0;
  for (const auto& [name, values] : other.entries_) added += add(name, values);
  return added;
}

bool PropertyMap::erase(std::string_view name) {
  auto it = std::find_if(entries_.begin(), entries_.end(), [&](const Entry& e) { return e.first == name; });
  if (it == entries_.end()) return false;
  entries_.erase(it);
  return true;
}

bool operator==(const PropertyMap& a, const PropertyMap& b) {
  if (a.entries_.size() != b.entries_.size()) return false;
  for (const auto& [name, values] : a.entries_) {
    const ValueList* other = b.find(name);
    if (!other || *other != values) return false;
  }
  return true;
}

bool is_scalar_property(std::string_view name) noexcept {
  return name == "Label" || name == "Sequence" || name == "Description" || name == "Species";
}

}  // namespace kgforge::graph
