#include "riddlesmith/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace rsm {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

const char* fill_color(Fill f) {
    switch (f) {
        case Fill::white: return "#ffffff";
        case Fill::black: return "#000000";
        case Fill::gray33: return "#b0b0b0";
        case Fill::gray66: return "#606060";
        case Fill::hatched: return "url(#hatch)";
    }
    return "#ffffff";
}

struct Box {
    double x, y, w, h;
};

// Pixel-space box of a cell within a panel box.
Box cell_box(const CellGrid& grid, int cell, const Box& panel) {
    if (grid.ring) {
        const double radius = 0.36 * std::min(panel.w, panel.h);
        const double ang = cell * (kPi / 4.0);
        const double cx = panel.x + panel.w / 2 + radius * std::sin(ang);
        const double cy = panel.y + panel.h / 2 - radius * std::cos(ang);
        const double s = 0.24 * std::min(panel.w, panel.h);
        return {cx - s / 2, cy - s / 2, s, s};
    }
    const double cw = panel.w / grid.cols;
    const double ch = panel.h / grid.rows;
    const int r = cell / grid.cols, c = cell % grid.cols;
    return {panel.x + c * cw, panel.y + r * ch, cw, ch};
}

std::string path_data(const Stroke& s, double scale_x, double scale_y, double ox, double oy) {
    std::string d;
    for (size_t i = 0; i < s.points.size(); ++i) {
        d += (i == 0) ? "M" : "L";
        d += fmt(ox + s.points[i].x * scale_x);
        d += " ";
        d += fmt(oy + s.points[i].y * scale_y);
    }
    if (s.closed) d += "Z";
    return d;
}

class SvgWriter {
public:
    SvgWriter(int width, int height, double stroke_width)
        : stroke_width_(stroke_width) {
        out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " +
                std::to_string(width) + " " + std::to_string(height) + "\">\n";
        out_ +=
            "<defs><pattern id=\"hatch\" width=\"6\" height=\"6\" "
            "patternUnits=\"userSpaceOnUse\"><path d=\"M0 6L6 0\" stroke=\"#000000\" "
            "stroke-width=\"1\" fill=\"none\"/></pattern></defs>\n";
        out_ += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(width) + "\" height=\"" +
                std::to_string(height) + "\" fill=\"#ffffff\"/>\n";
    }

    void line(double x1, double y1, double x2, double y2, const char* color = "#000000",
              double width = -1) {
        out_ += "<path d=\"M" + fmt(x1) + " " + fmt(y1) + "L" + fmt(x2) + " " + fmt(y2) +
                "\" stroke=\"" + color + "\" stroke-width=\"" +
                fmt(width < 0 ? stroke_width_ : width) + "\" fill=\"none\"/>\n";
    }

    void rect(const Box& b, const char* stroke, double width, const char* fill = "none") {
        out_ += "<rect x=\"" + fmt(b.x) + "\" y=\"" + fmt(b.y) + "\" width=\"" + fmt(b.w) +
                "\" height=\"" + fmt(b.h) + "\" stroke=\"" + stroke + "\" stroke-width=\"" +
                fmt(width) + "\" fill=\"" + fill + "\"/>\n";
    }

    void raw(const std::string& s) { out_ += s; }

    // Icon strokes fitted into `box`, optionally rotated about the box center.
    void glyph(const Icon& icon, const Box& box, Fill fill, int rotation_deg, double scale,
               int element_index = -1, int cell = -1) {
        const double s = std::min(box.w, box.h) * 0.86 * scale;
        const double cx = box.x + box.w / 2, cy = box.y + box.h / 2;
        out_ += "<g";
        if (element_index >= 0)
            out_ += " data-element-index=\"" + std::to_string(element_index) + "\"";
        if (cell >= 0) out_ += " data-cell=\"" + std::to_string(cell) + "\"";
        out_ += " transform=\"translate(" + fmt(cx) + " " + fmt(cy) + ")";
        if (rotation_deg != 0) out_ += " rotate(" + std::to_string(rotation_deg) + ")";
        out_ += "\">\n";
        for (const Stroke& stroke : icon.strokes) {
            const bool solid = stroke.closed && fill != Fill::white;
            out_ += "<path d=\"" + path_data(stroke, s, s, -s / 2, -s / 2) + "\" stroke=\"#000000\"";
            out_ += " stroke-width=\"" + fmt(stroke_width_) + "\"";
            out_ += std::string(" fill=\"") + (stroke.closed ? fill_color(solid ? fill : Fill::white) : "none") +
                    "\"/>\n";
        }
        out_ += "</g>\n";
    }

    std::string finish() {
        out_ += "</svg>\n";
        return std::move(out_);
    }

private:
    std::string out_;
    double stroke_width_;
};

// Isometric screen position for a cube at (row, col, level).
Box iso_cube_box(const CellGrid& grid, int cell, int level, const Box& panel) {
    const int r = cell / grid.cols, c = cell % grid.cols;
    const double unit = std::min(panel.w, panel.h) / (grid.cols + grid.rows + 2);
    const double ox = panel.x + panel.w / 2;
    const double oy = panel.y + panel.h * 0.30;
    const double x = ox + (c - r) * unit;
    const double y = oy + (c + r) * unit * 0.5 - level * unit * 0.9 + grid.rows * unit * 0.35;
    return {x, y, unit, unit};
}

void draw_iso_cube(SvgWriter& w, const Box& at, double sw, int element_index, int cell) {
    // three faces of a unit cube seen from the standard isometric viewpoint
    const double ux = at.w, uy = at.w * 0.5, uz = at.w * 0.9;
    const double x = at.x, y = at.y;
    auto face = [&](std::initializer_list<std::pair<double, double>> pts, const char* fill) {
        std::string d;
        bool first = true;
        for (auto [px, py] : pts) {
            d += first ? "M" : "L";
            first = false;
            d += fmt(px) + " " + fmt(py);
        }
        d += "Z";
        return "<path d=\"" + d + "\" stroke=\"#000000\" stroke-width=\"" + fmt(sw) +
               "\" fill=\"" + fill + "\"/>\n";
    };
    std::string g = "<g data-element-index=\"" + std::to_string(element_index) +
                    "\" data-cell=\"" + std::to_string(cell) + "\">\n";
    g += face({{x, y}, {x + ux, y - uy}, {x + 2 * ux, y}, {x + ux, y + uy}}, "#ffffff");      // top
    g += face({{x, y}, {x + ux, y + uy}, {x + ux, y + uy + uz}, {x, y + uz}}, "#c8c8c8");     // left
    g += face({{x + ux, y + uy}, {x + 2 * ux, y}, {x + 2 * ux, y + uz}, {x + ux, y + uy + uz}},
              "#8c8c8c");                                                                      // right
    g += "</g>\n";
    w.raw(g);
}

bool is_cube_panel(const Panel& p) {
    if (p.elements.empty()) return false;
    for (const Element& e : p.elements)
        if (e.icon_id != "#cube") return false;
    return true;
}

void emit_panel(SvgWriter& w, const Panel& panel, const Layout& layout, const Box& box,
                const RenderStyle& style, const IconLibrary& icons, bool with_grid) {
    const CellGrid& grid = panel.grid.cell_count() > 0 ? panel.grid : layout.cell_grid;
    for (const Element& e : panel.elements)
        if (e.cell < 0 || e.cell >= grid.cell_count())
            throw std::out_of_range("render: element cell " + std::to_string(e.cell) +
                                    " outside the panel grid");
    w.rect(box, "#000000", style.stroke_width_px);
    if (with_grid && !grid.ring && grid.cell_count() > 1) {
        for (int c = 1; c < grid.cols; ++c)
            w.line(box.x + box.w * c / grid.cols, box.y, box.x + box.w * c / grid.cols,
                   box.y + box.h, "#b8b8b8", style.stroke_width_px * 0.5);
        for (int r = 1; r < grid.rows; ++r)
            w.line(box.x, box.y + box.h * r / grid.rows, box.x + box.w,
                   box.y + box.h * r / grid.rows, "#b8b8b8", style.stroke_width_px * 0.5);
    }
    if (grid.ring) {
        // faint ring guide
        for (int k = 0; k < 8; ++k) {
            const Box a = cell_box(grid, k, box);
            const Box b = cell_box(grid, (k + 1) % 8, box);
            w.line(a.x + a.w / 2, a.y + a.h / 2, b.x + b.w / 2, b.y + b.h / 2, "#d8d8d8",
                   style.stroke_width_px * 0.5);
        }
    }

    if (is_cube_panel(panel)) {
        // painter's order: far cells first, low levels first
        std::vector<int> level(static_cast<size_t>(grid.cell_count()), 0);
        std::vector<std::tuple<int, int, int>> draw;  // (r+c, level, element index)
        for (size_t i = 0; i < panel.elements.size(); ++i) {
            const int cell = panel.elements[i].cell;
            const int z = level[static_cast<size_t>(cell)]++;
            draw.emplace_back(cell / grid.cols + cell % grid.cols, z, static_cast<int>(i));
        }
        std::sort(draw.begin(), draw.end());
        for (const auto& [depth, z, idx] : draw) {
            const Element& e = panel.elements[static_cast<size_t>(idx)];
            draw_iso_cube(w, iso_cube_box(grid, e.cell, z, box), style.stroke_width_px, idx,
                          e.cell);
        }
        return;
    }

    for (size_t i = 0; i < panel.elements.size(); ++i) {
        const Element& e = panel.elements[i];
        Box cb = cell_box(grid, e.cell, box);
        cb.x += e.dx * cb.w;
        cb.y += e.dy * cb.h;
        w.glyph(icons.by_id(e.icon_id), cb, e.fill, e.rotation_deg, e.scale, static_cast<int>(i),
                e.cell);
    }
}

}  // namespace

std::string render_panel(const Panel& panel, const Layout& layout, const RenderStyle& style,
                         const IconLibrary& icons) {
    SvgWriter w(style.canvas_px, style.canvas_px, style.stroke_width_px);
    const double m = style.canvas_px * 0.04;
    emit_panel(w, panel, layout, {m, m, style.canvas_px - 2 * m, style.canvas_px - 2 * m}, style,
               icons, true);
    return w.finish();
}

namespace {

void emit_qmark(SvgWriter& w, const Box& box, const RenderStyle& style) {
    w.rect(box, "#000000", style.stroke_width_px);
    w.glyph(builtin_icon("#qmark"), box, Fill::white, 0, 0.7);
}

void emit_label(SvgWriter& w, const Box& option_box, const std::string& label_id,
                const RenderStyle& style) {
    const double s = option_box.w * 0.17;
    w.glyph(builtin_icon(label_id), {option_box.x + 2, option_box.y + 2, s, s}, Fill::white, 0,
            1.0);
    (void)style;
}

}  // namespace

std::vector<Asset> render_riddle(const AssembledRiddle& riddle, const RenderStyle& style,
                               const IconLibrary& icons) {
    const Layout& layout = layout_by_id(riddle.symbolic.layout_id);
    const double W = style.canvas_px;
    const double gap = W * 0.02;
    const double ctx_cell = (W - gap * (layout.panel_cols + 1)) / layout.panel_cols;
    const double opt_cell = (W - gap * 5) / 4;
    const double ctx_h = gap + (ctx_cell + gap) * layout.panel_rows;
    const double H = ctx_h + gap + opt_cell + gap * 2;

    SvgWriter w(static_cast<int>(W), static_cast<int>(std::ceil(H)), style.stroke_width_px);
    for (int pos = 0; pos < layout.panel_count(); ++pos) {
        const int r = pos / layout.panel_cols, c = pos % layout.panel_cols;
        const Box box{gap + c * (ctx_cell + gap), gap + r * (ctx_cell + gap), ctx_cell, ctx_cell};
        if (pos == layout.missing_slot) {
            emit_qmark(w, box, style);
        } else {
            const int ctx_index = pos;  // missing slot is always last
            emit_panel(w, riddle.symbolic.context[static_cast<size_t>(ctx_index)], layout, box,
                       style, icons, layout.cell_grid.cell_count() > 1);
        }
    }
    w.line(gap, ctx_h + gap * 0.5, W - gap, ctx_h + gap * 0.5, "#000000",
           style.stroke_width_px * 0.75);
    for (int i = 0; i < 4; ++i) {
        const Box box{gap + i * (opt_cell + gap), ctx_h + gap, opt_cell, opt_cell};
        emit_panel(w, riddle.symbolic.options[static_cast<size_t>(i)], layout, box, style,
                   icons, layout.cell_grid.cell_count() > 1);
        emit_label(w, box, std::string("#label/") + static_cast<char>('A' + i), style);
    }
    return {{riddle.id.str() + ".svg", w.finish()}};
}

std::vector<Asset> render_riddle(const raven::RavenMatrix& matrix, const RiddleId& id,
                                 const RenderStyle& style, const IconLibrary& icons) {
    const Layout& layout = layout_by_id(matrix.layout_id);
    const double W = style.canvas_px;
    const double gap = W * 0.02;
    const double cell = (W - gap * 4) / 3;

    SvgWriter sheet(static_cast<int>(W), static_cast<int>(W), style.stroke_width_px);
    for (int pos = 0; pos < 9; ++pos) {
        const int r = pos / 3, c = pos % 3;
        const Box box{gap + c * (cell + gap), gap + r * (cell + gap), cell, cell};
        if (pos == 8)
            emit_qmark(sheet, box, style);
        else
            emit_panel(sheet, matrix.panels[static_cast<size_t>(pos)], layout, box, style,
                       icons, layout.cell_grid.cell_count() > 1);
    }

    const double opt_cell = (W - gap * 5) / 4;
    const double H = gap + (opt_cell + gap) * 2;
    SvgWriter strip(static_cast<int>(W), static_cast<int>(std::ceil(H)), style.stroke_width_px);
    for (int i = 0; i < 8; ++i) {
        const int r = i / 4, c = i % 4;
        const Box box{gap + c * (opt_cell + gap), gap + r * (opt_cell + gap), opt_cell, opt_cell};
        emit_panel(strip, matrix.options[static_cast<size_t>(i)], layout, box, style,
                   icons, layout.cell_grid.cell_count() > 1);
        emit_label(strip, box, "#label/" + std::to_string(i + 1), style);
    }
    return {{id.str() + ".svg", sheet.finish()}, {id.str() + "_opts.svg", strip.finish()}};
}

std::vector<Asset> render_riddle(const sudoku::SudokuRiddle& riddle, const RiddleId& id,
                                 const RenderStyle& style) {
    const double W = style.canvas_px;
    const double m = W * 0.04;
    const double cell = (W - 2 * m) / 9;
    SvgWriter w(static_cast<int>(W), static_cast<int>(W), style.stroke_width_px);
    // light cell lines, heavy box lines
    for (int i = 0; i <= 9; ++i) {
        const double width = (i % 3 == 0) ? style.stroke_width_px * 1.6 : style.stroke_width_px * 0.5;
        const char* color = (i % 3 == 0) ? "#000000" : "#909090";
        w.line(m + i * cell, m, m + i * cell, W - m, color, width);
        w.line(m, m + i * cell, W - m, m + i * cell, color, width);
    }
    const Panel panel = sudoku::puzzle_panel(riddle.puzzle);
    for (size_t i = 0; i < panel.elements.size(); ++i) {
        const Element& e = panel.elements[i];
        const int r = e.cell / 9, c = e.cell % 9;
        const Box box{m + c * cell, m + r * cell, cell, cell};
        w.glyph(builtin_icon(e.icon_id), box, Fill::white, 0, 0.62, static_cast<int>(i), e.cell);
    }
    return {{id.str() + ".svg", w.finish()}};
}

std::string render_icon_svg(const Icon& icon, int canvas_px) {
    SvgWriter w(canvas_px, canvas_px, 2.0);
    const double m = canvas_px * 0.05;
    w.glyph(icon, {m, m, canvas_px - 2 * m, canvas_px - 2 * m}, Fill::white, 0, 1.0);
    return w.finish();
}

std::vector<std::pair<int, int>> parse_element_cells(const std::string& svg) {
    std::vector<std::pair<int, int>> out;
    size_t at = 0;
    while ((at = svg.find("data-element-index=\"", at)) != std::string::npos) {
        at += 20;
        const int index = std::atoi(svg.c_str() + at);
        const size_t cell_at = svg.find("data-cell=\"", at);
        if (cell_at == std::string::npos) break;
        out.emplace_back(index, std::atoi(svg.c_str() + cell_at + 11));
        at = cell_at + 11;
    }
    return out;
}

}  // namespace rsm
