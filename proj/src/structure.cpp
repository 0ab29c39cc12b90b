#include "stripack/structure.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "stripack/error.hpp"

namespace stripack {

namespace mp = boost::multiprecision;

namespace {

mp::cpp_int ParseInteger(std::string_view text) {
  if (text.empty()) throw Error(ErrorCode::kParse, "empty number");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw Error(ErrorCode::kParse, "bad number");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw Error(ErrorCode::kParse, "bad number '" + std::string(text) + "'");
    }
  }
  // Leading zeros would make cpp_int read the digits as octal.
  std::string_view digits = text.substr(start);
  while (digits.size() > 1 && digits[0] == '0') digits.remove_prefix(1);
  mp::cpp_int v{std::string(digits)};
  return text[0] == '-' ? mp::cpp_int(-v) : v;
}

}  // namespace

Rational ParseRational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const mp::cpp_int num = ParseInteger(text.substr(0, slash));
    const mp::cpp_int den = ParseInteger(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::kParse, "zero denominator");
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string digits(text.substr(0, dot));
    std::string frac(text.substr(dot + 1));
    if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    mp::cpp_int den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    return Rational(ParseInteger(digits + frac), den);
  }
  return Rational(ParseInteger(text));
}

std::string FormatRational(const Rational& r) {
  if (mp::denominator(r) == 1) return mp::numerator(r).str();
  return mp::numerator(r).str() + "/" + mp::denominator(r).str();
}

Coord FloorOf(const Rational& r) {
  mp::cpp_int q = mp::numerator(r) / mp::denominator(r);
  if (r < 0 && q * mp::denominator(r) != mp::numerator(r)) q -= 1;
  return q.convert_to<Coord>();
}

Coord CeilOf(const Rational& r) { return -FloorOf(-r); }

Rational FirstLevelBoxBound(const PartitionParams& p) {
  const Rational ed = p.epsilon * p.delta;
  return Rational(5) / (ed * ed);
}

Rational MuCeiling(const Rational& epsilon, const Rational& delta) {
  const Rational ed = epsilon * delta;
  return ed * ed * ed / 10;
}

void CheckPartitionParams(const PartitionParams& p) {
  if (!(p.epsilon > 0 && p.epsilon <= Rational(1, 3))) {
    throw Error(ErrorCode::kInvalidInput, "epsilon must lie in (0, 1/3]");
  }
  if (!(p.delta <= 1 && p.delta > p.mu && p.mu > 0)) {
    throw Error(ErrorCode::kInvalidInput, "need 1 >= delta > mu > 0");
  }
  if (p.mu > MuCeiling(p.epsilon, p.delta)) {
    throw Error(ErrorCode::kInvalidInput, "mu exceeds epsilon delta / (2K)");
  }
  if (p.opt < 1) throw Error(ErrorCode::kInvalidInput, "opt must be positive");
}

std::string_view ItemClassName(ItemClass c) {
  switch (c) {
    case ItemClass::kLarge: return "L";
    case ItemClass::kTall: return "T";
    case ItemClass::kVertical: return "V";
    case ItemClass::kHorizontal: return "H";
    case ItemClass::kSmall: return "S";
    case ItemClass::kMedium: return "M";
  }
  return "M";
}

std::optional<ItemClass> ParseItemClass(std::string_view name) {
  for (ItemClass c : {ItemClass::kLarge, ItemClass::kTall, ItemClass::kVertical,
                      ItemClass::kHorizontal, ItemClass::kSmall, ItemClass::kMedium}) {
    if (ItemClassName(c) == name) return c;
  }
  return std::nullopt;
}

ItemClass ItemClassification::Of(ItemId id) const {
  auto it = classes.find(id);
  if (it == classes.end()) {
    throw Error(ErrorCode::kInvalidInput, "item " + std::to_string(id) + " is unclassified");
  }
  return it->second;
}

bool ItemClassification::IsGridAligned(ItemId id) const {
  const ItemClass c = Of(id);
  return c == ItemClass::kLarge || c == ItemClass::kTall || c == ItemClass::kVertical;
}

std::vector<ItemId> ItemClassification::Members(ItemClass c) const {
  std::vector<ItemId> ids;
  for (const auto& [id, cls] : classes) {
    if (cls == c) ids.push_back(id);
  }
  return ids;
}

ItemClass ClassifyItem(const Item& item, Coord W, const PartitionParams& p) {
  const Rational w(item.w);
  const Rational h(item.h);
  const Rational dW = p.delta * W;
  const Rational dOpt = p.delta * p.opt;
  const Rational mW = p.mu * W;
  const Rational mOpt = p.mu * p.opt;
  const Rational third = Rational(p.opt, 3);
  if (w >= dW && h >= dOpt) return ItemClass::kLarge;
  if (w < dW && h > third) return ItemClass::kTall;
  if (w < mW && h >= dOpt && h <= third) return ItemClass::kVertical;
  if (w >= dW && h < mOpt) return ItemClass::kHorizontal;
  if (w < mW && h < mOpt) return ItemClass::kSmall;
  return ItemClass::kMedium;
}

ItemClassification ClassifyItems(const Instance& instance, const PartitionParams& p) {
  ItemClassification out;
  for (const Item& item : instance.items) {
    out.classes[item.id] = ClassifyItem(item, instance.W, p);
  }
  return out;
}

std::vector<Coord> OptCandidates(const Instance& instance, const Rational& epsilon) {
  if (!(epsilon > 0 && epsilon <= 1)) {
    throw Error(ErrorCode::kInvalidInput, "epsilon must lie in (0, 1]");
  }
  const Coord lb = AreaLowerBound(instance);
  if (lb == 0) return {0};
  std::vector<Coord> out;
  Rational v(lb);
  while (true) {
    const Coord c = CeilOf(v);
    if (c > 2 * lb) break;
    if (out.empty() || out.back() != c) out.push_back(c);
    v *= (1 + epsilon);
  }
  if (out.back() != 2 * lb) out.push_back(2 * lb);
  return out;
}

std::vector<Rational> DeltaLadder(const Rational& epsilon, std::size_t count) {
  const std::size_t full = static_cast<std::size_t>(CeilOf(Rational(2) / epsilon)) + 2;
  std::vector<Rational> ladder{epsilon};
  while (ladder.size() < std::min(count, full)) {
    const Rational e = epsilon * ladder.back();
    ladder.push_back(e * e * e / 10);
  }
  return ladder;
}

Rational MediumArea(const Instance& instance, const PartitionParams& p) {
  Rational area = 0;
  for (const Item& item : instance.items) {
    if (ClassifyItem(item, instance.W, p) == ItemClass::kMedium) {
      area += Rational(item.w) * item.h;
    }
  }
  return area;
}

PartitionParams ChooseDeltaMu(const Instance& instance, const Rational& epsilon, Coord opt) {
  if (opt < AreaLowerBound(instance)) {
    throw Error(ErrorCode::kInvalidInput, "opt guess is below the area lower bound");
  }
  // Rungs shrink triply exponentially, so they are generated one at a time
  // and the search stops at the first empty band: later rungs cannot win.
  const std::size_t rungs = static_cast<std::size_t>(CeilOf(Rational(2) / epsilon)) + 1;
  std::vector<Rational> ladder{epsilon};
  std::optional<std::size_t> best;
  Rational best_area;
  for (std::size_t j = 0; j < rungs; ++j) {
    const Rational e = epsilon * ladder.back();
    ladder.push_back(e * e * e / 10);
    const Rational& delta = ladder[j];
    const Rational& mu = ladder[j + 1];
    Rational band = 0;
    for (const Item& item : instance.items) {
      const Rational w(item.w);
      const Rational h(item.h);
      const bool in_w = w >= mu * instance.W && w < delta * instance.W;
      const bool in_h = h >= mu * opt && h < delta * opt;
      if (in_w || in_h) band += w * h;
    }
    if (!best || band < best_area) {
      best = j;
      best_area = band;
    }
    if (band == 0) break;
  }
  PartitionParams p{epsilon, ladder[*best], ladder[*best + 1], opt};
  CheckPartitionParams(p);
  if (MediumArea(instance, p) > epsilon * instance.W * opt) {
    throw Error(ErrorCode::kNoFeasiblePair,
                "medium items exceed epsilon W opt; opt guess too small");
  }
  return p;
}

Coord GridStep(const PartitionParams& p) {
  const Coord g = FloorOf(p.epsilon * p.delta * p.opt);
  if (g < 1) {
    throw Error(ErrorCode::kDegenerateGrid,
                "epsilon delta opt = " + FormatRational(p.epsilon * p.delta * p.opt) +
                    " is below 1");
  }
  return g;
}

Coord CellWidth(const PartitionParams& p, Coord W) {
  const Coord cw = FloorOf(p.epsilon * p.delta * W);
  if (cw < 1) {
    throw Error(ErrorCode::kDegenerateGrid,
                "epsilon delta W = " + FormatRational(p.epsilon * p.delta * W) +
                    " is below 1");
  }
  return cw;
}

RoundedInstance RoundHeights(const Instance& instance,
                             const ItemClassification& classification,
                             const PartitionParams& p) {
  RoundedInstance out;
  out.grid = GridStep(p);
  out.instance = instance;
  for (Item& item : out.instance.items) {
    if (classification.IsGridAligned(item.id)) {
      item.h = CheckedMul((item.h + out.grid - 1) / out.grid, out.grid);
    }
  }
  return out;
}

Packing SnapToGrid(const Instance& rounded, const ItemClassification& classification,
                   const Packing& reference, Coord grid) {
  const std::vector<PlacedItem> original = Resolve(rounded, reference);
  const auto index = IndexById(rounded);
  // With disjoint originals, a horizontally overlapping item with smaller y
  // lies wholly below.
  std::vector<std::size_t> order(original.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Rect& ra = original[a].rect;
    const Rect& rb = original[b].rect;
    if (ra.y != rb.y) return ra.y < rb.y;
    if (ra.x != rb.x) return ra.x < rb.x;
    return original[a].id < original[b].id;
  });
  std::vector<PlacedItem> snapped(original.size());
  std::vector<bool> done(original.size(), false);
  for (std::size_t i : order) {
    const Rect& r = original[i].rect;
    Coord y = 0;
    for (std::size_t j : order) {
      if (!done[j]) continue;
      const Rect& o = original[j].rect;
      if (o.x < r.right() && r.x < o.right() && o.y < r.y) {
        y = std::max(y, snapped[j].rect.top());
      }
    }
    if (classification.IsGridAligned(original[i].id)) {
      y = (y + grid - 1) / grid * grid;
    }
    snapped[i] = {original[i].id, {r.x, y, r.w, rounded.items[index.at(original[i].id)].h}};
    done[i] = true;
  }
  return ToPacking(snapped);
}

GridScaling GridScaleFactors(Coord W, Coord opt, const Rational& epsilon,
                             const Rational& delta) {
  const Rational ed = epsilon * delta;
  GridScaling s;
  s.kx = mp::denominator(Rational(ed * W)).convert_to<Coord>();
  const Rational g = ed * opt;
  const Rational stretched = g * (1 + 2 * epsilon);
  const mp::cpp_int ky = mp::lcm(mp::denominator(g), mp::denominator(stretched));
  s.ky = ky.convert_to<Coord>();
  return s;
}

Instance ScaleInstance(const Instance& instance, const GridScaling& s) {
  Instance out = instance;
  out.W = CheckedMul(out.W, s.kx);
  for (Item& item : out.items) {
    item.w = CheckedMul(item.w, s.kx);
    item.h = CheckedMul(item.h, s.ky);
  }
  return out;
}

Packing ScalePacking(const Packing& packing, const GridScaling& s) {
  Packing out = packing;
  for (Placement& p : out.placements) {
    p.x = CheckedMul(p.x, s.kx);
    p.y = CheckedMul(p.y, s.ky);
  }
  out.height = CheckedMul(out.height, s.ky);
  return out;
}

void PackedBox::Translate(Coord dx, Coord dy) {
  box.rect.x += dx;
  box.rect.y += dy;
  for (PlacedItem& it : items) {
    it.rect.x += dx;
    it.rect.y += dy;
  }
}

RelocatedItems RelocateCrossing(const Instance& rounded, const std::vector<ItemId>& h_prime,
                                const std::vector<ItemId>& v_prime,
                                const PartitionParams& p) {
  RelocatedItems out;
  if (!h_prime.empty()) {
    std::vector<Item> items;
    for (ItemId id : h_prime) items.push_back(FindItem(rounded, id));
    std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
      if (a.w != b.w) return a.w > b.w;
      return a.id < b.id;
    });
    PackedBox box;
    box.box = {{0, 0, rounded.W, FloorOf(p.epsilon * p.opt)}, BoxTag::kHorizontal};
    Coord y = 0;
    for (const Item& item : items) {
      box.items.push_back({item.id, {0, y, item.w, item.h}});
      y += item.h;
    }
    if (y > box.box.rect.h) {
      throw Error(ErrorCode::kCapacityExceeded,
                  "crossing horizontal items stack to " + std::to_string(y) +
                      " > epsilon opt = " + std::to_string(box.box.rect.h));
    }
    out.horizontal = std::move(box);
  }
  std::map<Coord, std::vector<Item>> by_height;
  for (ItemId id : v_prime) {
    const Item& item = FindItem(rounded, id);
    by_height[item.h].push_back(item);
  }
  Coord x = 0;
  for (auto& [h, items] : by_height) {
    std::sort(items.begin(), items.end(),
              [](const Item& a, const Item& b) { return a.id < b.id; });
    PackedBox box;
    Coord cursor = x;
    for (const Item& item : items) {
      box.items.push_back({item.id, {cursor, 0, item.w, h}});
      cursor += item.w;
    }
    box.box = {{x, 0, cursor - x, h}, BoxTag::kVertical};
    x = cursor;
    out.vertical.push_back(std::move(box));
  }
  const Coord limit = FloorOf(p.epsilon * rounded.W / 3);
  if (x > limit) {
    throw Error(ErrorCode::kCapacityExceeded,
                "crossing vertical items need width " + std::to_string(x) +
                    " > epsilon W / 3 = " + std::to_string(limit));
  }
  return out;
}

}  // namespace stripack
