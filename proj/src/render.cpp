#include "stripack/render.hpp"

#include <array>

namespace stripack {

namespace {

constexpr std::array<const char*, 8> kPalette = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2",
                                                 "#59a14f", "#edc948", "#b07aa1", "#9c755f"};

const char* ClassColour(ItemClass c) {
  switch (c) {
    case ItemClass::kLarge: return "#4e79a7";
    case ItemClass::kTall: return "#e15759";
    case ItemClass::kVertical: return "#f28e2b";
    case ItemClass::kHorizontal: return "#59a14f";
    case ItemClass::kSmall: return "#bab0ac";
    case ItemClass::kMedium: return "#b07aa1";
  }
  return "#000000";
}

}  // namespace

std::string RenderSvg(const Instance& instance, const Packing& packing,
                      const ItemClassification* classification) {
  const Coord height = std::max<Coord>(packing.height, 1);
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " +
                    std::to_string(instance.W) + " " + std::to_string(height) +
                    "\" preserveAspectRatio=\"none\">\n";
  for (const PlacedItem& it : Resolve(instance, packing)) {
    const char* fill = kPalette[static_cast<std::size_t>(it.id % 8 + 8) % 8];
    if (classification && classification->classes.count(it.id)) {
      fill = ClassColour(classification->Of(it.id));
    }
    out += "  <rect data-id=\"" + std::to_string(it.id) + "\" x=\"" + std::to_string(it.rect.x) +
           "\" y=\"" + std::to_string(height - it.rect.top()) + "\" width=\"" +
           std::to_string(it.rect.w) + "\" height=\"" + std::to_string(it.rect.h) +
           "\" fill=\"" + fill +
           "\" stroke=\"#222\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace stripack
