#include "riddlesmith/annotate.hpp"

#include <nlohmann/json.hpp>

namespace rsm {

using nlohmann::json;

namespace {

json element_to_json(const Element& e) {
    return json{{"icon_id", e.icon_id},
                {"shape_family", shape_family_name(e.icon.family)},
                {"stroke_count", e.icon.stroke_count},
                {"closed_regions", e.icon.closed_regions},
                {"symmetry", symmetry_name(e.icon.symmetry)},
                {"cell", e.cell},
                {"offset", {e.dx, e.dy}},
                {"rotation_deg", e.rotation_deg},
                {"scale", e.scale},
                {"fill", fill_name(e.fill)}};
}

Element element_from_json(const json& j) {
    Element e;
    e.icon_id = j.at("icon_id").get<std::string>();
    e.icon.family = parse_shape_family(j.at("shape_family").get<std::string>())
                        .value_or(ShapeFamily::polygon);
    e.icon.stroke_count = j.at("stroke_count").get<int>();
    e.icon.closed_regions = j.at("closed_regions").get<int>();
    e.icon.symmetry = parse_symmetry(j.at("symmetry").get<std::string>()).value_or(Symmetry::none);
    e.cell = j.at("cell").get<int>();
    e.dx = j.at("offset").at(0).get<double>();
    e.dy = j.at("offset").at(1).get<double>();
    e.rotation_deg = j.at("rotation_deg").get<int>();
    e.scale = j.at("scale").get<double>();
    e.fill = parse_fill(j.at("fill").get<std::string>()).value_or(Fill::white);
    return e;
}

json panel_to_json(const Panel& p) {
    json elements = json::array();
    for (const Element& e : p.elements) elements.push_back(element_to_json(e));
    return json{{"grid", {{"rows", p.grid.rows}, {"cols", p.grid.cols}, {"ring", p.grid.ring}}},
                {"elements", std::move(elements)}};
}

Panel panel_from_json(const json& j) {
    Panel p;
    p.grid.rows = j.at("grid").at("rows").get<int>();
    p.grid.cols = j.at("grid").at("cols").get<int>();
    p.grid.ring = j.at("grid").at("ring").get<bool>();
    for (const json& e : j.at("elements")) p.elements.push_back(element_from_json(e));
    return p;
}

// Attributes a sub-rule transforms, for trace metadata.
std::vector<std::string> touched_attributes_of(const std::string& sub_rule) {
    if (sub_rule == "count_progression" || sub_rule == "count_constant" ||
        sub_rule == "row_arithmetic" || sub_rule == "isometric_block_count" ||
        sub_rule == "hidden_block_inference")
        return {"count"};
    if (sub_rule == "stroke_count_progression") return {"stroke_count"};
    if (sub_rule == "closed_region_progression") return {"closed_regions"};
    if (sub_rule == "xor_fill" || sub_rule == "and_fill" || sub_rule == "or_fill" ||
        sub_rule == "fill_inversion" || sub_rule == "outline_fill_alternation")
        return {"fill"};
    if (sub_rule == "overlay_union") return {"cell", "fill"};
    if (sub_rule == "symmetry_class") return {"symmetry"};
    if (sub_rule == "open_closed_class") return {"closed_regions"};
    if (sub_rule == "self_rotate") return {"rotation_deg"};
    if (sub_rule == "rotation_and_revolution") return {"cell", "rotation_deg"};
    if (sub_rule == "reflect_axis") return {"cell", "rotation_deg"};
    if (sub_rule == "stack_rotation_90" || sub_rule == "net_to_cube_face_adjacency" ||
        sub_rule == "piece_assembly")
        return {"cell"};
    return {"cell"};
}

std::string describe_rule(const RuleInstance& rule) {
    const std::string& id = rule.sub_rule_id;
    auto param = [&](const char* name) { return rule.params.count(name) ? rule.params.at(name) : ""; };
    if (id == "count_progression")
        return "The number of elements changes by " + param("step") + " from panel to panel.";
    if (id == "stroke_count_progression")
        return "The total stroke count changes by " + param("step") + " from panel to panel.";
    if (id == "closed_region_progression")
        return "The number of enclosed regions changes by " + param("step") +
               " from panel to panel.";
    if (id == "count_constant")
        return "Every panel contains exactly " + param("k") + " elements.";
    if (id == "row_arithmetic")
        return std::string("In each group of three, the third count is the ") +
               (param("op") == "plus" ? "sum" : "difference") + " of the first two.";
    if (id == "xor_fill")
        return "A cell in the third panel is black when exactly one of the first two panels has "
               "it black.";
    if (id == "and_fill")
        return "A cell in the third panel is black when both of the first two panels have it "
               "black.";
    if (id == "or_fill")
        return "A cell in the third panel is black when at least one of the first two panels has "
               "it black.";
    if (id == "fill_inversion") return "Black and white fills swap from panel to panel.";
    if (id == "overlay_union")
        return "The third panel overlays every element of the first two panels.";
    if (id == "outline_fill_alternation")
        return "The fill cycles through white, black and hatched from panel to panel.";
    if (id == "symmetry_class")
        return "The symmetry class of the shapes follows the pattern " + param("pattern") + ".";
    if (id == "open_closed_class")
        return "Open and closed shapes follow the pattern " + param("pattern") + ".";
    if (id == "translate_row")
        return "All elements shift " + param("step") + " column(s) to the right, wrapping around.";
    if (id == "translate_column")
        return "All elements shift " + param("step") + " row(s) downward, wrapping around.";
    if (id == "revolve_ring")
        return "Elements advance " + param("step") + " position(s) around the ring.";
    if (id == "self_rotate")
        return "The shape rotates by " + param("delta") + " degrees each panel.";
    if (id == "rotation_and_revolution")
        return "The element advances " + param("revolve") + " ring position(s) while rotating by " +
               param("spin") + " degrees.";
    if (id == "reflect_axis")
        return "Each panel mirrors the previous one across the " + param("axis") + " axis.";
    if (id == "swap_pair") return "Two elements exchange cells on every step.";
    if (id == "cyclic_permutation_cells")
        return "The contents of the occupied cells rotate one slot per panel.";
    if (id == "isometric_block_count")
        return "The number of cubes in the stack changes by " + param("step") +
               " from panel to panel.";
    if (id == "hidden_block_inference")
        return "Counting hidden cubes too, the stack grows by " + param("step") +
               " from panel to panel.";
    if (id == "net_to_cube_face_adjacency")
        return "Each unfolded net is followed by the corner view of its folded cube; the marks "
               "must sit on mutually adjacent faces.";
    if (id == "stack_rotation_90")
        return "The cube stack rotates a quarter turn " +
               (param("dir") == std::string("cw") ? std::string("clockwise")
                                                  : std::string("counter-clockwise")) +
               " each panel.";
    if (id == "piece_assembly")
        return "Each silhouette is followed by a pair of pieces that tile it exactly.";
    return "The panels follow the " + id + " rule.";
}

std::string option_name(const AnswerKey& a) {
    if (a.kind == AnswerKey::Kind::choice4) return std::string("option ") + a.letter();
    if (a.kind == AnswerKey::Kind::choice8) return "option " + a.value;
    return "the completed grid";
}

int measure_count(const Panel& p) { return p.element_count(); }

}  // namespace

PerceptualAnnotation annotate(const AssembledRiddle& riddle) {
    const Layout& layout = layout_by_id(riddle.symbolic.layout_id);
    PerceptualAnnotation a;
    a.id = riddle.id.str();
    a.category = category_name(riddle.category);
    a.layout_id = layout.id;
    a.layout_kind = layout.kind;
    a.panel_rows = layout.panel_rows;
    a.panel_cols = layout.panel_cols;
    a.cell_grid = layout.cell_grid;
    a.missing_slot = layout.missing_slot;
    a.sub_rule = riddle.rule.sub_rule_id;
    a.rule_params = riddle.rule.params;
    a.panels = riddle.symbolic.context;
    a.options = riddle.symbolic.options;
    a.answer = riddle.answer.value;

    const auto touched = touched_attributes_of(riddle.rule.sub_rule_id);
    int step = 1;
    a.trace.push_back({step++, describe_rule(riddle.rule), touched});
    // one concrete step per transition of the final group
    const RuleLogic& logic = rule_logic(riddle.rule.sub_rule_id);
    const auto groups = rule_groups(logic.shape(), layout);
    const auto& last = groups.back();
    for (size_t k = 1; k + 1 < last.size(); ++k) {
        const Panel& prev = riddle.symbolic.context[static_cast<size_t>(last[k - 1])];
        const Panel& cur = riddle.symbolic.context[static_cast<size_t>(last[k])];
        a.trace.push_back(
            {step++,
             "From panel " + std::to_string(last[k - 1] + 1) + " to panel " +
                 std::to_string(last[k] + 1) + " the rule holds (" +
                 std::to_string(measure_count(prev)) + " and " +
                 std::to_string(measure_count(cur)) + " elements).",
             touched});
    }
    a.trace.push_back({step, "Applying the rule once more selects " + option_name(riddle.answer) +
                                 ".",
                       touched});
    return a;
}

PerceptualAnnotation annotate(const raven::RavenMatrix& matrix, const RiddleId& id) {
    const Layout& layout = layout_by_id(matrix.layout_id);
    PerceptualAnnotation a;
    a.id = id.str();
    a.category = "raven";
    a.layout_id = layout.id;
    a.layout_kind = layout.kind;
    a.panel_rows = 3;
    a.panel_cols = 3;
    a.cell_grid = layout.cell_grid;
    a.missing_slot = 8;
    a.sub_rule = raven::primary_sub_rule(matrix);
    for (const auto& [attr, rule] : matrix.attribute_rules)
        a.attribute_rules[raven::attribute_name(attr)] = rule;
    for (raven::RavenAttribute attr : matrix.constant_attrs)
        a.constant_attributes.push_back(raven::attribute_name(attr));
    a.panels = matrix.panels;
    a.options = matrix.options;
    a.answer = std::to_string(matrix.keyed_index);

    int step = 1;
    for (const auto& [attr, rule] : matrix.attribute_rules)
        a.trace.push_back({step++,
                           std::string("The ") + raven::attribute_name(attr) +
                               " attribute follows the " + raven_rule_base(rule) +
                               " rule along each row.",
                           {raven::attribute_name(attr)}});
    for (const std::string& attr : a.constant_attributes)
        a.trace.push_back(
            {step++, "The " + attr + " attribute is constant across the matrix.", {attr}});
    a.trace.push_back({step, "Only option " + a.answer + " satisfies every rule.", {"all"}});
    return a;
}

PerceptualAnnotation annotate(const sudoku::SudokuRiddle& riddle, const RiddleId& id) {
    PerceptualAnnotation a;
    a.id = id.str();
    a.category = "sudoku";
    a.layout_id = "sudoku_9x9";
    a.layout_kind = LayoutKind::sudoku_9x9;
    a.panel_rows = 1;
    a.panel_cols = 1;
    a.cell_grid = CellGrid{9, 9, false};
    a.missing_slot = 0;
    a.sub_rule = "sudoku_standard";
    a.rule_params = {{"givens", std::to_string(riddle.givens)}};
    a.panels.push_back(sudoku::puzzle_panel(riddle.puzzle));
    a.answer = sudoku::to_answer(riddle.solution).value;
    for (int r = 0; r < 9; ++r)
        for (int c = 0; c < 9; ++c)
            if (riddle.puzzle.at(r, c) != 0)
                a.sudoku_givens.push_back({r, c, riddle.puzzle.at(r, c)});

    int step = 1;
    a.trace.push_back({step++,
                       "Each row, column and 3x3 box must contain the digits 1 through 9 exactly "
                       "once.",
                       {"digit"}});
    // narrate a few forced cells in deterministic scan order
    sudoku::SudokuGrid work = riddle.puzzle;
    int narrated = 0;
    bool progress = true;
    while (progress && narrated < 4) {
        progress = false;
        for (int cell = 0; cell < 81 && narrated < 4; ++cell) {
            if (work.cells[static_cast<size_t>(cell)] != 0) continue;
            int candidate = 0, n = 0;
            for (int d = 1; d <= 9; ++d) {
                sudoku::SudokuGrid probe = work;
                probe.cells[static_cast<size_t>(cell)] = static_cast<uint8_t>(d);
                bool clash = false;
                const int r = cell / 9, c = cell % 9;
                for (int i = 0; i < 9 && !clash; ++i) {
                    if (i != c && probe.at(r, i) == d) clash = true;
                    if (i != r && probe.at(i, c) == d) clash = true;
                }
                const int br = (r / 3) * 3, bc = (c / 3) * 3;
                for (int rr = br; rr < br + 3 && !clash; ++rr)
                    for (int cc = bc; cc < bc + 3; ++cc)
                        if ((rr != r || cc != c) && probe.at(rr, cc) == d) clash = true;
                if (!clash) {
                    candidate = d;
                    ++n;
                }
            }
            if (n == 1) {
                work.cells[static_cast<size_t>(cell)] = static_cast<uint8_t>(candidate);
                a.trace.push_back({step++,
                                   "Row " + std::to_string(cell / 9 + 1) + ", column " +
                                       std::to_string(cell % 9 + 1) + " must be " +
                                       std::to_string(candidate) +
                                       "; every other digit already appears in its row, column "
                                       "or box.",
                                   {"digit"}});
                ++narrated;
                progress = true;
            }
        }
    }
    a.trace.push_back(
        {step, "Propagating the constraints fills every remaining cell uniquely.", {"digit"}});
    return a;
}

// ------------------------------------------------------------------- JSON

json annotation_to_json(const PerceptualAnnotation& a) {
    json panels = json::array();
    for (const Panel& p : a.panels) panels.push_back(panel_to_json(p));
    json options = json::array();
    for (const Panel& p : a.options) options.push_back(panel_to_json(p));
    json trace = json::array();
    for (const TraceStep& t : a.trace)
        trace.push_back(json{{"step", t.step},
                             {"description", t.description},
                             {"touched_attributes", t.touched_attributes}});
    json j{{"schema_version", a.schema_version},
           {"id", a.id},
           {"category", a.category},
           {"layout",
            {{"id", a.layout_id},
             {"kind", layout_kind_name(a.layout_kind)},
             {"panel_rows", a.panel_rows},
             {"panel_cols", a.panel_cols},
             {"cell_grid",
              {{"rows", a.cell_grid.rows}, {"cols", a.cell_grid.cols}, {"ring", a.cell_grid.ring}}},
             {"missing_slot", a.missing_slot}}},
           {"rule", {{"category", a.category}, {"sub_rule", a.sub_rule}, {"params", a.rule_params}}},
           {"panels", std::move(panels)},
           {"options", std::move(options)},
           {"answer", a.answer},
           {"trace", std::move(trace)}};
    if (!a.attribute_rules.empty()) j["rule"]["attribute_rules"] = a.attribute_rules;
    if (!a.constant_attributes.empty()) j["rule"]["constant_attributes"] = a.constant_attributes;
    if (!a.sudoku_givens.empty()) {
        json givens = json::array();
        for (const SudokuGiven& g : a.sudoku_givens) givens.push_back({g.row, g.col, g.digit});
        j["givens"] = std::move(givens);
    }
    return j;
}

PerceptualAnnotation annotation_from_json(const json& j) {
    PerceptualAnnotation a;
    a.schema_version = j.at("schema_version").get<int>();
    a.id = j.at("id").get<std::string>();
    a.category = j.at("category").get<std::string>();
    const json& layout = j.at("layout");
    a.layout_id = layout.at("id").get<std::string>();
    a.layout_kind = layout_by_id(a.layout_id).kind;
    a.panel_rows = layout.at("panel_rows").get<int>();
    a.panel_cols = layout.at("panel_cols").get<int>();
    a.cell_grid.rows = layout.at("cell_grid").at("rows").get<int>();
    a.cell_grid.cols = layout.at("cell_grid").at("cols").get<int>();
    a.cell_grid.ring = layout.at("cell_grid").at("ring").get<bool>();
    a.missing_slot = layout.at("missing_slot").get<int>();
    const json& rule = j.at("rule");
    a.sub_rule = rule.at("sub_rule").get<std::string>();
    if (rule.contains("params"))
        a.rule_params = rule.at("params").get<std::map<std::string, std::string>>();
    if (rule.contains("attribute_rules"))
        a.attribute_rules = rule.at("attribute_rules").get<std::map<std::string, std::string>>();
    if (rule.contains("constant_attributes"))
        a.constant_attributes = rule.at("constant_attributes").get<std::vector<std::string>>();
    for (const json& p : j.at("panels")) a.panels.push_back(panel_from_json(p));
    for (const json& p : j.at("options")) a.options.push_back(panel_from_json(p));
    a.answer = j.at("answer").get<std::string>();
    for (const json& t : j.at("trace"))
        a.trace.push_back(TraceStep{t.at("step").get<int>(),
                                    t.at("description").get<std::string>(),
                                    t.at("touched_attributes").get<std::vector<std::string>>()});
    if (j.contains("givens"))
        for (const json& g : j.at("givens"))
            a.sudoku_givens.push_back(
                SudokuGiven{g.at(0).get<int>(), g.at(1).get<int>(), g.at(2).get<int>()});
    return a;
}

// ---------------------------------------------------------- reconstruction

SymbolicRiddle reconstruct_symbolic(const PerceptualAnnotation& a) {
    SymbolicRiddle riddle;
    riddle.layout_id = a.layout_id;
    riddle.context = a.panels;
    riddle.options = a.options;
    if (a.answer.size() == 1 && a.answer[0] >= 'A' && a.answer[0] <= 'D')
        riddle.keyed_option = a.answer[0] - 'A';
    else
        riddle.keyed_option = std::stoi(a.answer) - 1;
    return riddle;
}

raven::RavenMatrix reconstruct_raven(const PerceptualAnnotation& a) {
    raven::RavenMatrix m;
    m.layout_id = a.layout_id;
    m.panels = a.panels;
    m.options = a.options;
    m.keyed_index = std::stoi(a.answer);
    for (const auto& [attr, rule] : a.attribute_rules)
        m.attribute_rules[*raven::parse_attribute(attr)] = rule;
    for (const std::string& attr : a.constant_attributes)
        m.constant_attrs.push_back(*raven::parse_attribute(attr));
    return m;
}

sudoku::SudokuGrid reconstruct_sudoku(const PerceptualAnnotation& a) {
    sudoku::SudokuGrid g{};
    g.role = sudoku::SudokuGrid::Role::puzzle;
    for (const SudokuGiven& given : a.sudoku_givens)
        g.set(given.row, given.col, static_cast<uint8_t>(given.digit));
    return g;
}

// -------------------------------------------------------------- trace text

namespace {

std::string describe_element(const Element& e) {
    std::string s = std::string(fill_name(e.fill)) + " " + shape_family_name(e.icon.family);
    s += " at cell " + std::to_string(e.cell);
    if (e.rotation_deg != 0) s += " rotated " + std::to_string(e.rotation_deg) + " degrees";
    if (e.scale == 0.5)
        s += " at half size";
    else if (e.scale == 0.75)
        s += " at three-quarter size";
    return s;
}

}  // namespace

std::string render_trace_text(const PerceptualAnnotation& a) {
    std::string out;
    for (size_t i = 0; i < a.panels.size(); ++i) {
        const Panel& p = a.panels[i];
        out += "Panel " + std::to_string(i + 1);
        if (p.elements.empty()) {
            out += " is empty.\n";
            continue;
        }
        out += " contains " + std::to_string(p.element_count()) + " element" +
               (p.element_count() == 1 ? "" : "s") + ": ";
        for (size_t k = 0; k < p.elements.size(); ++k) {
            if (k) out += "; ";
            out += describe_element(p.elements[k]);
        }
        out += ".\n";
    }
    for (size_t i = 0; i < a.options.size(); ++i) {
        const Panel& p = a.options[i];
        out += "Option " + std::to_string(i + 1) + " shows " +
               std::to_string(p.element_count()) + " element" +
               (p.element_count() == 1 ? "" : "s") + ".\n";
    }
    for (const TraceStep& t : a.trace) out += "Step " + std::to_string(t.step) + ": " +
                                              t.description + "\n";
    return out;
}

}  // namespace rsm
