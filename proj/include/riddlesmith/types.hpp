#pragma once
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace rsm {

// ---------------------------------------------------------------- categories

enum class RuleCategory { numerical, stylistic, attribute, positional, spatial, sudoku, raven };

inline constexpr std::array<RuleCategory, 7> kAllCategories = {
    RuleCategory::numerical, RuleCategory::stylistic, RuleCategory::attribute,
    RuleCategory::positional, RuleCategory::spatial, RuleCategory::sudoku,
    RuleCategory::raven};

inline const char* category_name(RuleCategory c) {
    switch (c) {
        case RuleCategory::numerical: return "numerical";
        case RuleCategory::stylistic: return "stylistic";
        case RuleCategory::attribute: return "attribute";
        case RuleCategory::positional: return "positional";
        case RuleCategory::spatial: return "spatial";
        case RuleCategory::sudoku: return "sudoku";
        case RuleCategory::raven: return "raven";
    }
    return "?";
}

inline const char* category_prefix(RuleCategory c) {
    switch (c) {
        case RuleCategory::numerical: return "num";
        case RuleCategory::stylistic: return "sty";
        case RuleCategory::attribute: return "att";
        case RuleCategory::positional: return "pos";
        case RuleCategory::spatial: return "spa";
        case RuleCategory::sudoku: return "sud";
        case RuleCategory::raven: return "rav";
    }
    return "?";
}

std::optional<RuleCategory> parse_category(const std::string& name);

inline int category_ordinal(RuleCategory c) { return static_cast<int>(c); }

// ------------------------------------------------------------------ riddle id

struct RiddleId {
    RuleCategory category = RuleCategory::numerical;
    uint64_t ordinal = 0;

    std::string str() const {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%s-%05llu", category_prefix(category),
                      static_cast<unsigned long long>(ordinal));
        return buf;
    }
};

std::optional<RiddleId> parse_riddle_id(const std::string& text);

// ------------------------------------------------------------------ answers

struct AnswerKey {
    enum class Kind { choice4, choice8, grid };

    static AnswerKey choice4(char letter) {
        if (letter < 'A' || letter > 'D') throw std::invalid_argument("choice4 letter out of range");
        return AnswerKey{Kind::choice4, std::string(1, letter)};
    }
    static AnswerKey choice8(int index) {
        if (index < 1 || index > 8) throw std::invalid_argument("choice8 index out of range");
        return AnswerKey{Kind::choice8, std::to_string(index)};
    }
    static AnswerKey grid(std::string digits) {
        if (digits.size() != 81) throw std::invalid_argument("grid answer must be 81 chars");
        for (char ch : digits)
            if (ch < '1' || ch > '9') throw std::invalid_argument("grid answer digit out of 1..9");
        return AnswerKey{Kind::grid, std::move(digits)};
    }

    Kind kind = Kind::choice4;
    std::string value;  // "A".."D", "1".."8", or the 81-char grid

    char letter() const { return value[0]; }
    int index() const { return value[0] - '0'; }
    bool operator==(const AnswerKey&) const = default;
};

// ------------------------------------------------------------------- visuals

enum class ShapeFamily { polygon, star, arrow, curve_blob, composite };
enum class Symmetry { axial, central, none };

// Grayscale fills realize the raven color attribute as printable levels:
// level 0..3 maps to white, gray33, gray66, black.
enum class Fill { white, black, hatched, gray33, gray66 };

const char* shape_family_name(ShapeFamily f);
const char* symmetry_name(Symmetry s);
const char* fill_name(Fill f);
std::optional<ShapeFamily> parse_shape_family(const std::string&);
std::optional<Symmetry> parse_symmetry(const std::string&);
std::optional<Fill> parse_fill(const std::string&);

inline Fill gray_level_fill(int level) {
    switch (level) {
        case 0: return Fill::white;
        case 1: return Fill::gray33;
        case 2: return Fill::gray66;
        default: return Fill::black;
    }
}
inline int fill_gray_level(Fill f) {
    switch (f) {
        case Fill::white: return 0;
        case Fill::gray33: return 1;
        case Fill::gray66: return 2;
        case Fill::black: return 3;
        case Fill::hatched: return -1;
    }
    return -1;
}

// Icon attributes carried inline on every element so panels stay
// self-contained: the solver and the annotations never need the library.
struct IconAttrs {
    ShapeFamily family = ShapeFamily::polygon;
    int stroke_count = 1;
    int closed_regions = 1;
    Symmetry symmetry = Symmetry::none;
    bool operator==(const IconAttrs&) const = default;
};

struct Element {
    std::string icon_id;
    IconAttrs icon;
    int cell = 0;
    double dx = 0.0, dy = 0.0;  // offset within the cell, cell-normalized
    int rotation_deg = 0;       // multiple of 45 in [0, 360)
    double scale = 1.0;         // one of {0.5, 0.75, 1.0}
    Fill fill = Fill::white;
};

// Internal cell geometry of one panel.
struct CellGrid {
    int rows = 1;
    int cols = 1;
    bool ring = false;  // ring of 8 positions; rows/cols unused when set

    int cell_count() const { return ring ? 8 : rows * cols; }
    bool operator==(const CellGrid&) const = default;
};

struct Panel {
    CellGrid grid;
    std::vector<Element> elements;

    int element_count() const { return static_cast<int>(elements.size()); }
};

// ------------------------------------------------- quantized attribute space

// Quantized per-element key used by panel equivalence: rotation to 45 degree
// steps, scale to 0.25 steps. Icon identity is deliberately absent; the
// symmetry class is included so class-governed options stay distinguishable.
struct AttrKey {
    int family;
    int fill;
    int rot_q;
    int scale_q;
    int strokes;
    int regions;
    int symmetry;
    auto operator<=>(const AttrKey&) const = default;
};

inline int quantize_rotation(int deg) {
    int r = ((deg % 360) + 360) % 360;
    return ((r + 22) / 45) % 8;
}
inline int quantize_scale(double s) { return static_cast<int>(std::lround(s / 0.25)); }

inline AttrKey element_attr_key(const Element& e) {
    return AttrKey{static_cast<int>(e.icon.family), static_cast<int>(e.fill),
                   quantize_rotation(e.rotation_deg), quantize_scale(e.scale),
                   e.icon.stroke_count, e.icon.closed_regions,
                   static_cast<int>(e.icon.symmetry)};
}

// Attribute equivalence: per-cell multisets of quantized element keys match.
bool panels_equivalent(const Panel& a, const Panel& b);

// Count of agreeing attribute fields between best-matched elements, used by
// the distractor plausibility check.
int shared_attribute_count(const Panel& a, const Panel& b);

}  // namespace rsm
