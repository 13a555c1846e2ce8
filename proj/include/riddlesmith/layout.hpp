#pragma once
#include <string>
#include <vector>

#include "riddlesmith/types.hpp"

namespace rsm {

enum class LayoutKind {
    matrix_3x3,
    row_1x5,
    row_1x4_plus_options,
    two_group_2x3,
    ring_8,
    sudoku_9x9,
    raven_center,
    raven_2x2,
    raven_3x3,
    raven_lr,
    raven_ud,
};

const char* layout_kind_name(LayoutKind k);

struct Layout {
    std::string id;
    LayoutKind kind;
    int panel_rows = 1;       // arrangement of panels on the question sheet
    int panel_cols = 1;
    CellGrid cell_grid;       // internal geometry shared by every panel
    int missing_slot = 0;     // always the last panel position
    int option_count = 4;

    int panel_count() const { return panel_rows * panel_cols; }
    int context_count() const { return panel_count() - 1; }

    // Panel index groups a rule is applied over (matrix rows, a whole row
    // strip, or net/view pairs). Group size is uniform per layout.
    std::vector<std::vector<int>> chain_groups() const;
    std::vector<std::vector<int>> triplet_groups() const;
    std::vector<std::vector<int>> pair_groups() const;
};

// The eight layouts shared by the five core categories.
const std::vector<Layout>& core_layouts();

// Per-category layout sets; sizes are 2/3/2/4/2/1/5.
std::vector<Layout> layouts(RuleCategory category);

const Layout& layout_by_id(const std::string& id);

}  // namespace rsm
