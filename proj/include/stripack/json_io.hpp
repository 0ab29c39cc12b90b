#pragma once

// JSON file formats. Field order is free; unknown fields are rejected with
// Error(kParse).

#include <filesystem>
#include <string>

#include "json.hpp"
#include "stripack/geometry.hpp"
#include "stripack/reduction.hpp"
#include "stripack/structure.hpp"

namespace stripack {

using Json = nlohmann::json;

Json ReadJsonFile(const std::filesystem::path& path);
Json ParseJson(const std::string& text);
void WriteJsonFile(const std::filesystem::path& path, const Json& json);
void WriteTextFile(const std::filesystem::path& path, const std::string& text);

Instance InstanceFromJson(const Json& j);
Json InstanceToJson(const Instance& instance);

Packing PackingFromJson(const Json& j);
Json PackingToJson(const Packing& packing);

ThreePartitionInstance ThreePartitionFromJson(const Json& j);
Json ThreePartitionToJson(const ThreePartitionInstance& tp);

TripleCover CoverFromJson(const Json& j);
Json CoverToJson(const TripleCover& cover);

ReductionParams ReductionParamsFromJson(const Json& j);
Json ReductionParamsToJson(const ReductionParams& params);

BoxPartition PartitionFromJson(const Json& j);
Json PartitionToJson(const BoxPartition& partition);

/// {"classes": [{"id": 1, "class": "L"}, ...]}
ItemClassification ClassificationFromJson(const Json& j);
Json ClassificationToJson(const ItemClassification& classification);

}  // namespace stripack
