#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "riddlesmith/rng.hpp"
#include "riddlesmith/types.hpp"

namespace rsm {

struct Vec2 {
    double x = 0, y = 0;
    bool operator==(const Vec2&) const = default;
};

// One polyline stroke in the unit square. Curved strokes are flattened and
// quantized to the 64x64 lattice at generation time.
struct Stroke {
    std::vector<Vec2> points;
    bool closed = false;
    bool chord = false;  // partition chord drawn inside a closed host stroke
};

struct Icon {
    std::string id;
    ShapeFamily family = ShapeFamily::polygon;
    std::vector<Stroke> strokes;
    int stroke_count = 1;
    int closed_regions = 1;
    Symmetry symmetry = Symmetry::none;
    uint64_t signature = 0;

    IconAttrs attrs() const { return {family, stroke_count, closed_regions, symmetry}; }
};

// --------------------------------------------------------------- generation

// Builds `count` icons with pairwise-distinct signatures, deterministic in the
// stream. Cycles a fixed bucket schedule so every (family, stroke, region,
// symmetry) class the rules need is populated even in small libraries.
// Throws std::runtime_error if uniqueness cannot be reached in 10x count draws.
std::vector<Icon> build_icon_library(int count, RngStream stream);

// ----------------------------------------------------------------- analysis

// Recomputed attributes from the stroke geometry; used to cross-check the
// declared fields (library invariant) and by tests.
int analyze_stroke_count(const Icon& icon);
int analyze_closed_regions(const Icon& icon);
Symmetry analyze_symmetry(const Icon& icon);
uint64_t icon_signature(const Icon& icon);

inline bool icon_metadata_consistent(const Icon& icon) {
    return analyze_stroke_count(icon) == icon.stroke_count &&
           analyze_closed_regions(icon) == icon.closed_regions &&
           analyze_symmetry(icon) == icon.symmetry;
}

// ------------------------------------------------------------ builtin glyphs

// Reserved glyphs outside the generated library; ids start with '#'.
//   #tile      unit square tile (stylistic bitmaps)
//   #cube      unit cube, rendered isometrically (spatial stacks)
//   #pcell     polyomino cell (spatial silhouettes/pieces)
//   #digit/1..9  seven-segment digits (sudoku)
//   #face/0..5   cube-face marks (spatial nets)
//   #qmark     question-mark placeholder
//   #label/A..D, #label/1..8  option tags
const Icon& builtin_icon(const std::string& id);
bool is_builtin_icon_id(const std::string& id);

// ------------------------------------------------------------------ library

// Deterministic per-category pool: core categories draw the first `pool`
// entries of a seeded shuffle of the full library; raven uses everything.
std::vector<int> category_pool_indices(RuleCategory category, int library_size, int pool_size,
                                       uint64_t master_seed);

class IconLibrary {
public:
    IconLibrary() = default;
    explicit IconLibrary(std::vector<Icon> icons);

    const std::vector<Icon>& all() const { return icons_; }
    const Icon& by_id(const std::string& id) const;
    bool empty() const { return icons_.empty(); }
    size_t size() const { return icons_.size(); }
    const Icon& at(size_t i) const { return icons_[i]; }

private:
    std::vector<Icon> icons_;
    std::map<std::string, size_t> index_;
};

}  // namespace rsm
