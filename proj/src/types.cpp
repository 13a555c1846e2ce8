#include "riddlesmith/types.hpp"

#include <algorithm>
#include <cstdio>

namespace rsm {

std::optional<RuleCategory> parse_category(const std::string& name) {
    for (RuleCategory c : kAllCategories)
        if (name == category_name(c)) return c;
    return std::nullopt;
}

std::optional<RiddleId> parse_riddle_id(const std::string& text) {
    auto dash = text.find('-');
    if (dash == std::string::npos || dash + 1 >= text.size()) return std::nullopt;
    const std::string prefix = text.substr(0, dash);
    RuleCategory category{};
    bool found = false;
    for (RuleCategory c : kAllCategories)
        if (prefix == category_prefix(c)) {
            category = c;
            found = true;
        }
    if (!found) return std::nullopt;
    uint64_t ordinal = 0;
    for (size_t i = dash + 1; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') return std::nullopt;
        ordinal = ordinal * 10 + (text[i] - '0');
    }
    return RiddleId{category, ordinal};
}

const char* shape_family_name(ShapeFamily f) {
    switch (f) {
        case ShapeFamily::polygon: return "polygon";
        case ShapeFamily::star: return "star";
        case ShapeFamily::arrow: return "arrow";
        case ShapeFamily::curve_blob: return "curve_blob";
        case ShapeFamily::composite: return "composite";
    }
    return "?";
}

const char* symmetry_name(Symmetry s) {
    switch (s) {
        case Symmetry::axial: return "axial";
        case Symmetry::central: return "central";
        case Symmetry::none: return "none";
    }
    return "?";
}

const char* fill_name(Fill f) {
    switch (f) {
        case Fill::white: return "white";
        case Fill::black: return "black";
        case Fill::hatched: return "hatched";
        case Fill::gray33: return "gray33";
        case Fill::gray66: return "gray66";
    }
    return "?";
}

std::optional<ShapeFamily> parse_shape_family(const std::string& s) {
    for (auto f : {ShapeFamily::polygon, ShapeFamily::star, ShapeFamily::arrow,
                   ShapeFamily::curve_blob, ShapeFamily::composite})
        if (s == shape_family_name(f)) return f;
    return std::nullopt;
}

std::optional<Symmetry> parse_symmetry(const std::string& s) {
    for (auto v : {Symmetry::axial, Symmetry::central, Symmetry::none})
        if (s == symmetry_name(v)) return v;
    return std::nullopt;
}

std::optional<Fill> parse_fill(const std::string& s) {
    for (auto v : {Fill::white, Fill::black, Fill::hatched, Fill::gray33, Fill::gray66})
        if (s == fill_name(v)) return v;
    return std::nullopt;
}

namespace {

std::map<int, std::vector<AttrKey>> cell_multisets(const Panel& p) {
    std::map<int, std::vector<AttrKey>> by_cell;
    for (const Element& e : p.elements) by_cell[e.cell].push_back(element_attr_key(e));
    for (auto& [cell, keys] : by_cell) std::sort(keys.begin(), keys.end());
    return by_cell;
}

}  // namespace

bool panels_equivalent(const Panel& a, const Panel& b) {
    return cell_multisets(a) == cell_multisets(b);
}

int shared_attribute_count(const Panel& a, const Panel& b) {
    // Greedy per-cell pairing; each matched element pair contributes the
    // number of equal fields of its quantized 6-tuple.
    auto ma = cell_multisets(a);
    auto mb = cell_multisets(b);
    int shared = 0;
    for (auto& [cell, keys_a] : ma) {
        auto it = mb.find(cell);
        if (it == mb.end()) continue;
        auto& keys_b = it->second;
        std::vector<bool> used(keys_b.size(), false);
        for (const AttrKey& ka : keys_a) {
            int best = -1, best_score = -1;
            for (size_t j = 0; j < keys_b.size(); ++j) {
                if (used[j]) continue;
                const AttrKey& kb = keys_b[j];
                int score = (ka.family == kb.family) + (ka.fill == kb.fill) +
                            (ka.rot_q == kb.rot_q) + (ka.scale_q == kb.scale_q) +
                            (ka.strokes == kb.strokes) + (ka.regions == kb.regions) +
                            (ka.symmetry == kb.symmetry);
                if (score > best_score) {
                    best_score = score;
                    best = static_cast<int>(j);
                }
            }
            if (best >= 0) {
                used[best] = true;
                shared += best_score;
            }
        }
    }
    return shared;
}

}  // namespace rsm
