#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kgforge::graph {

using ValueList = std::vector<std::string>;

// Name -> list-of-strings map. Names keep first-insertion order; every list is
// non-empty and duplicate-free, with values in first-insertion order.
class PropertyMap {
 public:
  using Entry = std::pair<std::string, ValueList>;

  PropertyMap() = default;
  PropertyMap(std::initializer_list<Entry> entries);

  const ValueList* find(std::string_view name) const noexcept;
  bool contains(std::string_view name) const noexcept { return find(name) != nullptr; }

  // Set-union of `values` into the list for `name`. Empty input is ignored.
  // Returns the number of values actually added.
  std::size_t add(std::string_view name, std::span<const std::string> values);
  std::size_t add(std::string_view name, std::string value);
  std::size_t merge(const PropertyMap& other);

  bool erase(std::string_view name);
  void clear() noexcept { entries_.clear(); }

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  // Order-insensitive over names, order-sensitive within each list.
  friend bool operator==(const PropertyMap& a, const PropertyMap& b);

 private:
  std::vector<Entry> entries_;
};

// Properties that carry one semantic value and render as a JSON string when
// their list has exactly one element (Label, Sequence, Description, Species).
bool is_scalar_property(std::string_view name) noexcept;

}  // namespace kgforge::graph
