#pragma once
#include <string>
#include <vector>

#include "riddlesmith/assembly.hpp"
#include "riddlesmith/raven.hpp"
#include "riddlesmith/sudoku.hpp"

namespace rsm {

struct RenderStyle {
    int canvas_px = 512;
    double stroke_width_px = 2.0;
    // Everything else (palette, glyph geometry, 4-decimal coordinate
    // formatting) is fixed so output bytes depend only on the panel.
};

// One SVG document per panel: grid strokes plus one <g data-element-index>
// per element. Throws std::out_of_range when an element cell is outside the
// layout's internal grid (never clips silently).
std::string render_panel(const Panel& panel, const Layout& layout, const RenderStyle& style,
                         const IconLibrary& icons);

struct Asset {
    std::string name;  // file name relative to the images directory
    std::string bytes;
};

// Core riddle: one composed sheet (context + "?" + lettered option strip).
std::vector<Asset> render_riddle(const AssembledRiddle& riddle, const RenderStyle& style,
                               const IconLibrary& icons);
// Raven: matrix sheet + options strip (two assets).
std::vector<Asset> render_riddle(const raven::RavenMatrix& matrix, const RiddleId& id,
                                 const RenderStyle& style, const IconLibrary& icons);
// Sudoku: one dense 9x9 grid image.
std::vector<Asset> render_riddle(const sudoku::SudokuRiddle& riddle, const RiddleId& id,
                                 const RenderStyle& style);

std::string render_icon_svg(const Icon& icon, int canvas_px);

// Minimal reader for our own SVG output, used by the bijection checks:
// (element index, data-cell) pairs in document order.
std::vector<std::pair<int, int>> parse_element_cells(const std::string& svg);

}  // namespace rsm
