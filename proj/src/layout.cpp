#include "riddlesmith/layout.hpp"

#include <stdexcept>

namespace rsm {

const char* layout_kind_name(LayoutKind k) {
    switch (k) {
        case LayoutKind::matrix_3x3: return "matrix_3x3";
        case LayoutKind::row_1x5: return "row_1x5";
        case LayoutKind::row_1x4_plus_options: return "row_1x4_plus_options";
        case LayoutKind::two_group_2x3: return "two_group_2x3";
        case LayoutKind::ring_8: return "ring_8";
        case LayoutKind::sudoku_9x9: return "sudoku_9x9";
        case LayoutKind::raven_center: return "raven_center";
        case LayoutKind::raven_2x2: return "raven_2x2";
        case LayoutKind::raven_3x3: return "raven_3x3";
        case LayoutKind::raven_lr: return "raven_lr";
        case LayoutKind::raven_ud: return "raven_ud";
    }
    return "?";
}

namespace {

Layout make(std::string id, LayoutKind kind, int prow, int pcol, CellGrid grid, int options) {
    Layout l;
    l.id = std::move(id);
    l.kind = kind;
    l.panel_rows = prow;
    l.panel_cols = pcol;
    l.cell_grid = grid;
    l.missing_slot = prow * pcol - 1;
    l.option_count = options;
    return l;
}

std::vector<Layout> build_all() {
    std::vector<Layout> v;
    // the eight core layouts
    v.push_back(make("m3x3_icon", LayoutKind::matrix_3x3, 3, 3, {1, 1, false}, 4));
    v.push_back(make("m3x3_cells", LayoutKind::matrix_3x3, 3, 3, {3, 3, false}, 4));
    v.push_back(make("row5_icon", LayoutKind::row_1x5, 1, 5, {1, 1, false}, 4));
    v.push_back(make("row5_cells", LayoutKind::row_1x5, 1, 5, {3, 3, false}, 4));
    v.push_back(make("row4_icon", LayoutKind::row_1x4_plus_options, 1, 4, {1, 1, false}, 4));
    v.push_back(make("row4_cells", LayoutKind::row_1x4_plus_options, 1, 4, {4, 3, false}, 4));
    v.push_back(make("grp2x3_cells", LayoutKind::two_group_2x3, 2, 3, {3, 3, false}, 4));
    v.push_back(make("row5_ring", LayoutKind::ring_8, 1, 5, {0, 0, true}, 4));
    // sudoku
    v.push_back(make("sudoku_9x9", LayoutKind::sudoku_9x9, 1, 1, {9, 9, false}, 0));
    // the five raven layouts
    v.push_back(make("raven_center", LayoutKind::raven_center, 3, 3, {1, 1, false}, 8));
    v.push_back(make("raven_2x2", LayoutKind::raven_2x2, 3, 3, {2, 2, false}, 8));
    v.push_back(make("raven_3x3", LayoutKind::raven_3x3, 3, 3, {3, 3, false}, 8));
    v.push_back(make("raven_lr", LayoutKind::raven_lr, 3, 3, {1, 2, false}, 8));
    v.push_back(make("raven_ud", LayoutKind::raven_ud, 3, 3, {2, 1, false}, 8));
    return v;
}

const std::vector<Layout>& all_layouts() {
    static const std::vector<Layout> layouts = build_all();
    return layouts;
}

std::vector<Layout> pick(std::initializer_list<const char*> ids) {
    std::vector<Layout> v;
    for (const char* id : ids) v.push_back(layout_by_id(id));
    return v;
}

}  // namespace

std::vector<std::vector<int>> Layout::chain_groups() const {
    // matrix layouts chain row-wise; row layouts are one chain
    std::vector<std::vector<int>> groups;
    if (kind == LayoutKind::matrix_3x3) {
        for (int r = 0; r < 3; ++r) groups.push_back({r * 3, r * 3 + 1, r * 3 + 2});
    } else {
        std::vector<int> all(static_cast<size_t>(panel_count()));
        for (int i = 0; i < panel_count(); ++i) all[static_cast<size_t>(i)] = i;
        groups.push_back(std::move(all));
    }
    return groups;
}

std::vector<std::vector<int>> Layout::triplet_groups() const {
    if (kind != LayoutKind::matrix_3x3 && kind != LayoutKind::two_group_2x3)
        throw std::logic_error("triplet rules unsupported on layout " + id);
    std::vector<std::vector<int>> groups;
    for (int r = 0; r < panel_rows; ++r) groups.push_back({r * 3, r * 3 + 1, r * 3 + 2});
    return groups;
}

std::vector<std::vector<int>> Layout::pair_groups() const {
    if (panel_count() % 2 != 0) throw std::logic_error("pair rules unsupported on layout " + id);
    std::vector<std::vector<int>> groups;
    for (int i = 0; i < panel_count(); i += 2) groups.push_back({i, i + 1});
    return groups;
}

const std::vector<Layout>& core_layouts() {
    static const std::vector<Layout> core = pick({"m3x3_icon", "m3x3_cells", "row5_icon",
                                                  "row5_cells", "row4_icon", "row4_cells",
                                                  "grp2x3_cells", "row5_ring"});
    return core;
}

std::vector<Layout> layouts(RuleCategory category) {
    switch (category) {
        case RuleCategory::numerical: return pick({"m3x3_cells", "row5_cells"});
        case RuleCategory::stylistic: return pick({"m3x3_cells", "grp2x3_cells", "row5_icon"});
        case RuleCategory::attribute: return pick({"row5_icon", "row4_icon"});
        case RuleCategory::positional:
            return pick({"m3x3_icon", "m3x3_cells", "row5_cells", "row5_ring"});
        case RuleCategory::spatial: return pick({"row5_cells", "row4_cells"});
        case RuleCategory::sudoku: return pick({"sudoku_9x9"});
        case RuleCategory::raven:
            return pick({"raven_center", "raven_2x2", "raven_3x3", "raven_lr", "raven_ud"});
    }
    return {};
}

const Layout& layout_by_id(const std::string& id) {
    for (const Layout& l : all_layouts())
        if (l.id == id) return l;
    throw std::out_of_range("unknown layout id: " + id);
}

}  // namespace rsm
