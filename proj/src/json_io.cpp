#include "stripack/json_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "stripack/error.hpp"

namespace stripack {

namespace {

void ExpectObject(const Json& j, std::initializer_list<std::string_view> allowed,
                  std::string_view what) {
  if (!j.is_object()) throw Error(ErrorCode::kParse, std::string(what) + " must be an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (std::string_view a : allowed) known = known || key == a;
    if (!known) {
      throw Error(ErrorCode::kParse,
                  "unknown field '" + key + "' in " + std::string(what));
    }
  }
}

const Json& Field(const Json& j, const char* key, std::string_view what) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw Error(ErrorCode::kParse,
                "missing field '" + std::string(key) + "' in " + std::string(what));
  }
  return *it;
}

std::int64_t Int(const Json& j, const char* key, std::string_view what) {
  const Json& v = Field(j, key, what);
  if (!v.is_number_integer()) {
    throw Error(ErrorCode::kParse,
                "field '" + std::string(key) + "' in " + std::string(what) + " must be an integer");
  }
  return v.get<std::int64_t>();
}

const Json& Array(const Json& j, const char* key, std::string_view what) {
  const Json& v = Field(j, key, what);
  if (!v.is_array()) {
    throw Error(ErrorCode::kParse,
                "field '" + std::string(key) + "' in " + std::string(what) + " must be an array");
  }
  return v;
}

}  // namespace

Json ParseJson(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

Json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidInput, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseJson(buffer.str());
}

void WriteTextFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidInput, "cannot write " + path.string());
  out << text;
}

void WriteJsonFile(const std::filesystem::path& path, const Json& json) {
  WriteTextFile(path, json.dump(2) + "\n");
}

Instance InstanceFromJson(const Json& j) {
  ExpectObject(j, {"W", "items"}, "instance");
  Instance instance;
  instance.W = Int(j, "W", "instance");
  for (const Json& item : Array(j, "items", "instance")) {
    ExpectObject(item, {"id", "w", "h"}, "item");
    instance.items.push_back({Int(item, "id", "item"), Int(item, "w", "item"),
                              Int(item, "h", "item")});
  }
  CheckInstance(instance);
  return instance;
}

Json InstanceToJson(const Instance& instance) {
  Json items = Json::array();
  for (const Item& item : instance.items) {
    items.push_back({{"id", item.id}, {"w", item.w}, {"h", item.h}});
  }
  return {{"W", instance.W}, {"items", items}};
}

Packing PackingFromJson(const Json& j) {
  ExpectObject(j, {"height", "placements"}, "packing");
  Packing packing;
  packing.height = Int(j, "height", "packing");
  for (const Json& p : Array(j, "placements", "packing")) {
    ExpectObject(p, {"id", "x", "y"}, "placement");
    packing.placements.push_back(
        {Int(p, "id", "placement"), Int(p, "x", "placement"), Int(p, "y", "placement")});
  }
  return packing;
}

Json PackingToJson(const Packing& packing) {
  Json placements = Json::array();
  for (const Placement& p : packing.placements) {
    placements.push_back({{"id", p.id}, {"x", p.x}, {"y", p.y}});
  }
  return {{"height", packing.height}, {"placements", placements}};
}

ThreePartitionInstance ThreePartitionFromJson(const Json& j) {
  ExpectObject(j, {"n", "s"}, "3-partition instance");
  ThreePartitionInstance tp;
  tp.n = static_cast<int>(Int(j, "n", "3-partition instance"));
  for (const Json& v : Array(j, "s", "3-partition instance")) {
    if (!v.is_number_integer()) throw Error(ErrorCode::kParse, "s must hold integers");
    tp.s.push_back(v.get<std::int64_t>());
  }
  return tp;
}

Json ThreePartitionToJson(const ThreePartitionInstance& tp) {
  return {{"n", tp.n}, {"s", tp.s}};
}

TripleCover CoverFromJson(const Json& j) {
  ExpectObject(j, {"triples"}, "cover");
  TripleCover cover;
  for (const Json& t : Array(j, "triples", "cover")) {
    if (!t.is_array() || t.size() != 3) {
      throw Error(ErrorCode::kParse, "each triple must be an array of three indices");
    }
    std::array<int, 3> triple{};
    for (std::size_t k = 0; k < 3; ++k) {
      if (!t[k].is_number_integer()) throw Error(ErrorCode::kParse, "indices must be integers");
      triple[k] = t[k].get<int>();
    }
    cover.triples.push_back(triple);
  }
  return cover;
}

Json CoverToJson(const TripleCover& cover) {
  Json triples = Json::array();
  for (const auto& t : cover.triples) triples.push_back({t[0], t[1], t[2]});
  return {{"triples", triples}};
}

ReductionParams ReductionParamsFromJson(const Json& j) {
  ExpectObject(j, {"n", "M", "a", "b", "W"}, "reduction params");
  return {Int(j, "n", "params"), Int(j, "M", "params"), Int(j, "a", "params"),
          Int(j, "b", "params"), Int(j, "W", "params")};
}

Json ReductionParamsToJson(const ReductionParams& p) {
  return {{"n", p.n}, {"M", p.M}, {"a", p.a}, {"b", p.b}, {"W", p.W}};
}

BoxPartition PartitionFromJson(const Json& j) {
  ExpectObject(j, {"area", "boxes"}, "partition");
  const Json& area = Array(j, "area", "partition");
  if (area.size() != 2 || !area[0].is_number_integer() || !area[1].is_number_integer()) {
    throw Error(ErrorCode::kParse, "area must be [width, height]");
  }
  BoxPartition partition;
  partition.width = area[0].get<Coord>();
  partition.height = area[1].get<Coord>();
  for (const Json& b : Array(j, "boxes", "partition")) {
    ExpectObject(b, {"x", "y", "w", "h", "tag"}, "box");
    const Json& tag = Field(b, "tag", "box");
    if (!tag.is_string()) throw Error(ErrorCode::kParse, "box tag must be a string");
    const auto parsed = ParseBoxTag(tag.get<std::string>());
    if (!parsed) throw Error(ErrorCode::kParse, "unknown box tag " + tag.get<std::string>());
    partition.boxes.push_back(
        {{Int(b, "x", "box"), Int(b, "y", "box"), Int(b, "w", "box"), Int(b, "h", "box")},
         *parsed});
  }
  return partition;
}

Json PartitionToJson(const BoxPartition& partition) {
  Json boxes = Json::array();
  for (const Box& b : partition.boxes) {
    boxes.push_back({{"x", b.rect.x},
                     {"y", b.rect.y},
                     {"w", b.rect.w},
                     {"h", b.rect.h},
                     {"tag", std::string(BoxTagName(b.tag))}});
  }
  return {{"area", {partition.width, partition.height}}, {"boxes", boxes}};
}

ItemClassification ClassificationFromJson(const Json& j) {
  ExpectObject(j, {"classes"}, "classification");
  ItemClassification c;
  for (const Json& e : Array(j, "classes", "classification")) {
    ExpectObject(e, {"id", "class"}, "class entry");
    const Json& name = Field(e, "class", "class entry");
    if (!name.is_string()) throw Error(ErrorCode::kParse, "class must be a string");
    const auto parsed = ParseItemClass(name.get<std::string>());
    if (!parsed) throw Error(ErrorCode::kParse, "unknown class " + name.get<std::string>());
    c.classes[Int(e, "id", "class entry")] = *parsed;
  }
  return c;
}

Json ClassificationToJson(const ItemClassification& classification) {
  Json classes = Json::array();
  for (const auto& [id, c] : classification.classes) {
    classes.push_back({{"id", id}, {"class", std::string(ItemClassName(c))}});
  }
  return {{"classes", classes}};
}

}  // namespace stripack
