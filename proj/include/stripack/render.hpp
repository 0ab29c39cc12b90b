#pragma once

#include <string>

#include "stripack/geometry.hpp"
#include "stripack/structure.hpp"

namespace stripack {

/// Deterministic SVG of a packing: viewBox W x height, y = 0 at the bottom,
/// one rect per item. Fill is keyed by class when a classification is given.
std::string RenderSvg(const Instance& instance, const Packing& packing,
                      const ItemClassification* classification = nullptr);

}  // namespace stripack
