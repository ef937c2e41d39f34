#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wiou/label_map.hpp"

namespace wiou {

struct PaletteEntry {
  ClassId id = 0;
  std::string name;
  std::array<std::uint8_t, 3> rgb{0, 0, 0};
  bool ignore = false;

  friend bool operator==(const PaletteEntry&, const PaletteEntry&) = default;
};

// Bijective class-id <-> color table. The JSON form is an array of
// {"id": <int>, "name": <string>, "rgb": [r, g, b]} objects; at most one entry
// may additionally carry "ignore": true.
class Palette {
 public:
  Palette() = default;

  static Palette from_entries(std::vector<PaletteEntry> entries);
  static Palette from_json(std::string_view text);
  static Palette load(const std::filesystem::path& file);

  std::string to_json() const;
  void save(const std::filesystem::path& file) const;

  const std::vector<PaletteEntry>& entries() const { return entries_; }
  std::optional<ClassId> id_for(std::array<std::uint8_t, 3> rgb) const;
  const PaletteEntry* entry_for(ClassId id) const;
  std::optional<ClassId> ignore_id() const { return ignore_id_; }
  // One past the largest class id; the class count a LabelMap decoded with
  // this palette carries.
  int num_classes() const { return num_classes_; }

  friend bool operator==(const Palette& a, const Palette& b) { return a.entries_ == b.entries_; }

 private:
  std::vector<PaletteEntry> entries_;
  std::unordered_map<std::uint32_t, ClassId> by_color_;
  std::unordered_map<ClassId, std::size_t> by_id_;
  std::optional<ClassId> ignore_id_;
  int num_classes_ = 0;
};

}  // namespace wiou
