#pragma once
#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "riddlesmith/assembly.hpp"
#include "riddlesmith/raven.hpp"
#include "riddlesmith/sudoku.hpp"

namespace rsm {

struct TraceStep {
    int step = 1;
    std::string description;
    std::vector<std::string> touched_attributes;
};

struct SudokuGiven {
    int row = 0, col = 0, digit = 0;
};

// The perceptual description: layout metadata, element-level properties for
// every panel and option, the governing rule, and the reasoning trace.
// Lossless for solving: reconstruct_symbolic() + the oracle recovers the
// keyed answer without touching pixels or the icon library.
struct PerceptualAnnotation {
    int schema_version = 1;
    std::string id;
    std::string category;
    std::string layout_id;
    LayoutKind layout_kind = LayoutKind::matrix_3x3;
    int panel_rows = 1, panel_cols = 1;
    CellGrid cell_grid;
    int missing_slot = 0;
    std::string sub_rule;
    Params rule_params;
    std::map<std::string, std::string> attribute_rules;  // raven only
    std::vector<std::string> constant_attributes;        // raven only
    std::vector<Panel> panels;                           // context, display order
    std::vector<Panel> options;                          // display order
    std::string answer;                                  // letter, index, or grid
    std::vector<TraceStep> trace;
    std::vector<SudokuGiven> sudoku_givens;              // sudoku only
};

PerceptualAnnotation annotate(const AssembledRiddle& riddle);
PerceptualAnnotation annotate(const raven::RavenMatrix& matrix, const RiddleId& id);
PerceptualAnnotation annotate(const sudoku::SudokuRiddle& riddle, const RiddleId& id);

nlohmann::json annotation_to_json(const PerceptualAnnotation& a);
PerceptualAnnotation annotation_from_json(const nlohmann::json& j);

// Symbolic riddle rebuilt from annotation data alone (core + raven).
SymbolicRiddle reconstruct_symbolic(const PerceptualAnnotation& a);
// Raven matrix rebuilt for check_raven.
raven::RavenMatrix reconstruct_raven(const PerceptualAnnotation& a);
// Sudoku puzzle grid rebuilt from the givens list.
sudoku::SudokuGrid reconstruct_sudoku(const PerceptualAnnotation& a);

// Templated English description: one sentence per panel plus the trace.
std::string render_trace_text(const PerceptualAnnotation& a);

}  // namespace rsm
