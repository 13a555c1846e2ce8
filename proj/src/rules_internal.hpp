#pragma once
// Shared helpers between the core rule set and the spatial rule set.
#include <algorithm>
#include <memory>

#include "riddlesmith/rules.hpp"

namespace rsm::detail {

inline Element elem(const Icon& icon, int cell, Fill fill = Fill::white, int rot = 0,
                    double scale = 1.0) {
    Element e;
    e.icon_id = icon.id;
    e.icon = icon.attrs();
    e.cell = cell;
    e.rotation_deg = rot;
    e.scale = scale;
    e.fill = fill;
    return e;
}

inline Panel make_panel(const CellGrid& grid) {
    Panel p;
    p.grid = grid;
    return p;
}

inline int total_elements(const Panel& p) { return p.element_count(); }
inline int total_strokes(const Panel& p) {
    int n = 0;
    for (const auto& e : p.elements) n += e.icon.stroke_count;
    return n;
}
inline int total_regions(const Panel& p) {
    int n = 0;
    for (const auto& e : p.elements) n += e.icon.closed_regions;
    return n;
}

// Deterministic element order so rendering and hashing are stable.
inline void canonicalize(Panel& p) {
    std::stable_sort(p.elements.begin(), p.elements.end(), [](const Element& a, const Element& b) {
        if (a.cell != b.cell) return a.cell < b.cell;
        return element_attr_key(a) < element_attr_key(b);
    });
}

inline std::vector<int> sample_distinct_cells(int count, int cell_count, RngStream& rng) {
    std::vector<int> cells(static_cast<size_t>(cell_count));
    for (int i = 0; i < cell_count; ++i) cells[static_cast<size_t>(i)] = i;
    rng.shuffle(cells);
    cells.resize(static_cast<size_t>(count));
    std::sort(cells.begin(), cells.end());
    return cells;
}

// --------------------------------------------------------------- bitmaps

inline bool is_binary_bitmap(const Panel& p) {
    if (static_cast<int>(p.elements.size()) != p.grid.cell_count()) return false;
    std::vector<bool> seen(static_cast<size_t>(p.grid.cell_count()), false);
    for (const auto& e : p.elements) {
        if (e.cell < 0 || e.cell >= p.grid.cell_count()) return false;
        if (seen[static_cast<size_t>(e.cell)]) return false;
        seen[static_cast<size_t>(e.cell)] = true;
        if (e.fill != Fill::white && e.fill != Fill::black) return false;
    }
    return true;
}

inline std::vector<bool> bitmap_bits(const Panel& p) {
    std::vector<bool> bits(static_cast<size_t>(p.grid.cell_count()), false);
    for (const auto& e : p.elements)
        if (e.fill == Fill::black) bits[static_cast<size_t>(e.cell)] = true;
    return bits;
}

inline Panel bitmap_panel(const CellGrid& grid, const std::vector<bool>& bits) {
    Panel p = make_panel(grid);
    const Icon& tile = builtin_icon("#tile");
    for (int c = 0; c < grid.cell_count(); ++c)
        p.elements.push_back(elem(tile, c, bits[static_cast<size_t>(c)] ? Fill::black : Fill::white));
    return p;
}

// ------------------------------------------------------------ rule factory

std::vector<std::unique_ptr<RuleLogic>> make_core_rules();
std::vector<std::unique_ptr<RuleLogic>> make_spatial_rules();

}  // namespace rsm::detail
