#include "wiou/palette.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wiou/error.hpp"

namespace wiou {

namespace {

std::uint32_t color_key(std::array<std::uint8_t, 3> rgb) {
  return (static_cast<std::uint32_t>(rgb[0]) << 16) | (static_cast<std::uint32_t>(rgb[1]) << 8) |
         static_cast<std::uint32_t>(rgb[2]);
}

}  // namespace

Palette Palette::from_entries(std::vector<PaletteEntry> entries) {
  if (entries.empty()) {
    throw ValidationError("palette must contain at least one entry");
  }
  std::sort(entries.begin(), entries.end(),
            [](const PaletteEntry& a, const PaletteEntry& b) { return a.id < b.id; });
  Palette p;
  p.entries_ = std::move(entries);
  for (std::size_t i = 0; i < p.entries_.size(); ++i) {
    const PaletteEntry& e = p.entries_[i];
    if (!p.by_id_.emplace(e.id, i).second) {
      throw ValidationError("palette declares class id " + std::to_string(e.id) + " twice");
    }
    if (!p.by_color_.emplace(color_key(e.rgb), e.id).second) {
      throw ValidationError("palette maps color (" + std::to_string(e.rgb[0]) + ", " +
                            std::to_string(e.rgb[1]) + ", " + std::to_string(e.rgb[2]) +
                            ") to more than one class");
    }
    if (e.ignore) {
      if (p.ignore_id_) {
        throw ValidationError("palette marks more than one entry as ignore");
      }
      p.ignore_id_ = e.id;
    }
    p.num_classes_ = std::max(p.num_classes_, static_cast<int>(e.id) + 1);
  }
  return p;
}

Palette Palette::from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("palette is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) {
    throw ValidationError("palette JSON must be an array of class entries");
  }
  std::vector<PaletteEntry> entries;
  entries.reserve(doc.size());
  for (const auto& item : doc) {
    if (!item.is_object() || !item.contains("id") || !item.contains("name") ||
        !item.contains("rgb")) {
      throw ValidationError("palette entry must be an object with id, name and rgb");
    }
    PaletteEntry e;
    const auto id = item.at("id");
    if (!id.is_number_integer() || id.get<std::int64_t>() < 0 ||
        id.get<std::int64_t>() > 0xFFFF) {
      throw ValidationError("palette entry id must be an integer in [0, 65535]");
    }
    e.id = static_cast<ClassId>(id.get<std::int64_t>());
    e.name = item.at("name").get<std::string>();
    const auto& rgb = item.at("rgb");
    if (!rgb.is_array() || rgb.size() != 3) {
      throw ValidationError("palette entry rgb must be an array of three channel values");
    }
    for (std::size_t c = 0; c < 3; ++c) {
      if (!rgb[c].is_number_integer() || rgb[c].get<std::int64_t>() < 0 ||
          rgb[c].get<std::int64_t>() > 255) {
        throw ValidationError("palette rgb channels must be integers in [0, 255]");
      }
      e.rgb[c] = static_cast<std::uint8_t>(rgb[c].get<std::int64_t>());
    }
    if (item.contains("ignore")) {
      if (!item.at("ignore").is_boolean()) {
        throw ValidationError("palette entry ignore flag must be a boolean");
      }
      e.ignore = item.at("ignore").get<bool>();
    }
    entries.push_back(std::move(e));
  }
  return from_entries(std::move(entries));
}

Palette Palette::load(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw IoError("cannot open palette file " + file.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

std::string Palette::to_json() const {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const PaletteEntry& e : entries_) {
    nlohmann::ordered_json item;
    item["id"] = e.id;
    item["name"] = e.name;
    item["rgb"] = {e.rgb[0], e.rgb[1], e.rgb[2]};
    if (e.ignore) {
      item["ignore"] = true;
    }
    doc.push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

void Palette::save(const std::filesystem::path& file) const {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot write palette file " + file.string());
  }
  out << to_json();
  if (!out) {
    throw IoError("failed writing palette file " + file.string());
  }
}

std::optional<ClassId> Palette::id_for(std::array<std::uint8_t, 3> rgb) const {
  const auto it = by_color_.find(color_key(rgb));
  if (it == by_color_.end()) {
    return std::nullopt;
  }
  return it->second;
}

const PaletteEntry* Palette::entry_for(ClassId id) const {
  const auto it = by_id_.find(id);
  if (it == by_id_.end()) {
    return nullptr;
  }
  return &entries_[it->second];
}

}  // namespace wiou
