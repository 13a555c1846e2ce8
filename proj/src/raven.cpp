#include "riddlesmith/raven.hpp"

#include <algorithm>
#include <set>

#include "rules_internal.hpp"

namespace rsm::raven {

using detail::elem;
using detail::make_panel;

const char* attribute_name(RavenAttribute a) {
    switch (a) {
        case RavenAttribute::number: return "number";
        case RavenAttribute::position: return "position";
        case RavenAttribute::type: return "type";
        case RavenAttribute::size: return "size";
        case RavenAttribute::color: return "color";
    }
    return "?";
}

std::optional<RavenAttribute> parse_attribute(const std::string& s) {
    for (RavenAttribute a : kAllAttributes)
        if (s == attribute_name(a)) return a;
    return std::nullopt;
}

AttrVector extract_attrs(const Panel& panel) {
    AttrVector v;
    v.number = panel.element_count();
    for (const Element& e : panel.elements) v.position.push_back(e.cell);
    std::sort(v.position.begin(), v.position.end());
    v.position.erase(std::unique(v.position.begin(), v.position.end()), v.position.end());
    if (!panel.elements.empty()) {
        const Element& e = panel.elements.front();
        v.type = static_cast<int>(e.icon.family);
        v.size = quantize_scale(e.scale) - 1;  // 1..3
        v.color = std::max(0, fill_gray_level(e.fill));
    }
    return v;
}

namespace {

double scale_of_level(int level) {
    switch (level) {
        case 1: return 0.5;
        case 2: return 0.75;
        default: return 1.0;
    }
}

struct ValueDomain {
    int lo, hi;
};

// Scalar domain per attribute and layout.
ValueDomain domain_of(RavenAttribute attr, const Layout& layout) {
    switch (attr) {
        case RavenAttribute::number: return {1, std::min(9, layout.cell_grid.cell_count())};
        case RavenAttribute::type: return {0, 4};
        case RavenAttribute::size: return {1, 3};
        case RavenAttribute::color: return {0, 3};
        default: return {0, 0};
    }
}

// 3x3 matrix of scalar values satisfying the rule row-wise; empty on failure.
std::vector<std::array<int, 3>> sample_scalar_rows(const std::string& rule, ValueDomain dom,
                                                   RngStream& rng) {
    std::vector<std::array<int, 3>> rows;
    const std::string base = raven_rule_base(rule);
    auto in_dom = [&](int v) { return v >= dom.lo && v <= dom.hi; };
    if (base == "distribute_three" || base == "distribute_three_permuted") {
        if (dom.hi - dom.lo + 1 < 3) return {};
        std::vector<int> pool;
        for (int v = dom.lo; v <= dom.hi; ++v) pool.push_back(v);
        rng.shuffle(pool);
        const std::array<int, 3> vals{pool[0], pool[1], pool[2]};
        for (int i = 0; i < 3; ++i) {
            std::array<int, 3> row{};
            for (int j = 0; j < 3; ++j)
                row[static_cast<size_t>(j)] =
                    vals[static_cast<size_t>(raven_distribute_index(rule, i, j))];
            rows.push_back(row);
        }
        return rows;
    }
    for (int attempt = 0; attempt < 64; ++attempt) {
        rows.clear();
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i) {
            int a = static_cast<int>(rng.range(dom.lo, dom.hi));
            int b;
            if (base == "const_all") {
                b = a;
            } else if (base == "arithmetic_plus" || base == "arithmetic_minus") {
                b = static_cast<int>(rng.range(dom.lo, dom.hi));
            } else {
                b = raven_next_value(rule, a, a);
            }
            if (!in_dom(b)) {
                ok = false;
                break;
            }
            const int c = raven_next_value(rule, a, b);
            if (!in_dom(c)) {
                ok = false;
                break;
            }
            rows.push_back({a, b, c});
        }
        if (ok) {
            // avoid matrices that degenerate to a single repeated value under
            // non-constant rules
            if (base != "const_all") return rows;
            if (rows[0][0] != rows[1][0] || rows[1][0] != rows[2][0]) return rows;
        }
    }
    return {};
}

using CellSet = std::vector<int>;

CellSet sample_cell_set(int cell_count, int size, RngStream& rng) {
    return detail::sample_distinct_cells(size, cell_count, rng);
}

// 3x3 matrix of position sets under the rule; empty on failure.
std::vector<std::array<CellSet, 3>> sample_position_rows(const std::string& rule,
                                                         const Layout& layout, RngStream& rng) {
    const int cells = layout.cell_grid.cell_count();
    std::vector<std::array<CellSet, 3>> rows;
    if (rule == "distribute_three" || rule == "distribute_three_permuted") {
        for (int attempt = 0; attempt < 64; ++attempt) {
            const int size = static_cast<int>(rng.range(1, std::max(1, cells - 1)));
            std::array<CellSet, 3> vals;
            std::set<CellSet> seen;
            bool distinct = true;
            for (auto& v : vals) {
                v = sample_cell_set(cells, size, rng);
                if (!seen.insert(v).second) distinct = false;
            }
            if (!distinct) continue;
            rows.clear();
            for (int i = 0; i < 3; ++i) {
                std::array<CellSet, 3> row;
                for (int j = 0; j < 3; ++j)
                    row[static_cast<size_t>(j)] =
                        vals[static_cast<size_t>(raven_distribute_index(rule, i, j))];
                rows.push_back(row);
            }
            return rows;
        }
        return {};
    }
    if (rule == "const_all") {
        for (int i = 0; i < 3; ++i) {
            const CellSet s =
                sample_cell_set(cells, static_cast<int>(rng.range(1, cells - 1)), rng);
            rows.push_back({s, s, s});
        }
        return rows;
    }
    for (int attempt = 0; attempt < 128; ++attempt) {
        rows.clear();
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i) {
            CellSet a = sample_cell_set(cells, static_cast<int>(rng.range(1, cells - 1)), rng);
            CellSet b = sample_cell_set(cells, static_cast<int>(rng.range(1, cells - 1)), rng);
            CellSet c = raven_next_position(rule, a, b);
            if (c.empty() || static_cast<int>(c.size()) > cells || c == a || c == b) {
                ok = false;
                break;
            }
            rows.push_back({std::move(a), std::move(b), std::move(c)});
        }
        if (ok) return rows;
    }
    return {};
}

std::vector<std::string> applicable_rules(RavenAttribute attr, const Layout& layout) {
    const ValueDomain dom = domain_of(attr, layout);
    std::vector<std::string> rules;
    if (attr == RavenAttribute::position) {
        if (layout.cell_grid.cell_count() < 3) return {"const_all"};
        return {"const_all", "arithmetic_plus", "arithmetic_minus", "distribute_three",
                "distribute_three_permuted"};
    }
    rules.push_back("const_all");
    const int span = dom.hi - dom.lo;
    if (span >= 2) {
        rules.push_back("progression_plus:1");
        rules.push_back("progression_minus:1");
        rules.push_back("distribute_three");
        rules.push_back("distribute_three_permuted");
    }
    if (span >= 4) {
        rules.push_back("progression_plus:2");
        rules.push_back("progression_minus:2");
    }
    if (attr == RavenAttribute::number || attr == RavenAttribute::color) {
        rules.push_back("arithmetic_plus");
        rules.push_back("arithmetic_minus");
    }
    if (attr == RavenAttribute::size) rules.push_back("arithmetic_plus");
    return rules;
}

struct MatrixPlan {
    std::map<RavenAttribute, std::string> governed;
    std::vector<RavenAttribute> constants;
    bool position_slaved = false;  // number governed: positions free per panel
    std::vector<std::array<int, 3>> numbers, types, sizes, colors;
    std::vector<std::array<CellSet, 3>> positions;
};

Panel panel_from_attrs(const Layout& layout, const CellSet& cells, int type_value, int size_level,
                       int color_level, const std::array<const Icon*, 5>& type_icons) {
    Panel p = make_panel(layout.cell_grid);
    for (int cell : cells)
        p.elements.push_back(elem(*type_icons[static_cast<size_t>(type_value)], cell,
                                  gray_level_fill(color_level), 0, scale_of_level(size_level)));
    return p;
}

}  // namespace

RavenMatrix generate_raven(RngStream& rng, const IconPool& pool) {
    const auto raven_layouts = layouts(RuleCategory::raven);
    for (int attempt = 0; attempt < 64; ++attempt) {
        const Layout layout = raven_layouts[rng.below(raven_layouts.size())];
        const int cells = layout.cell_grid.cell_count();

        MatrixPlan plan;
        // one representative icon per shape family, fixed across the matrix
        std::array<const Icon*, 5> type_icons{};
        bool families_ok = true;
        for (int f = 0; f < 5 && families_ok; ++f) {
            try {
                type_icons[static_cast<size_t>(f)] = &pool.pick_if(rng, [f](const Icon& icon) {
                    return static_cast<int>(icon.family) == f;
                });
            } catch (const NoViableIconError&) {
                families_ok = false;
            }
        }
        if (!families_ok) throw NoViableIconError("raven: pool lacks a shape family");

        // governed attribute selection: a number/position axis choice plus
        // independent coin flips on type/size/color, at least one governed
        const int axis = cells >= 2 ? static_cast<int>(rng.below(3)) : 2;  // 0 num, 1 pos, 2 none
        std::vector<RavenAttribute> governed_list;
        if (axis == 0) governed_list.push_back(RavenAttribute::number);
        if (axis == 1) governed_list.push_back(RavenAttribute::position);
        for (RavenAttribute a :
             {RavenAttribute::type, RavenAttribute::size, RavenAttribute::color})
            if (rng.chance(0.4)) governed_list.push_back(a);
        if (governed_list.empty()) governed_list.push_back(RavenAttribute::type);
        while (governed_list.size() > 3) governed_list.pop_back();

        // sample rules + value matrices
        bool ok = true;
        for (RavenAttribute attr : governed_list) {
            auto rules = applicable_rules(attr, layout);
            const std::string rule = rules[rng.below(rules.size())];
            if (attr == RavenAttribute::position) {
                plan.positions = sample_position_rows(rule, layout, rng);
                ok = ok && !plan.positions.empty();
            } else {
                auto rows = sample_scalar_rows(rule, domain_of(attr, layout), rng);
                ok = ok && !rows.empty();
                if (attr == RavenAttribute::number) plan.numbers = rows;
                if (attr == RavenAttribute::type) plan.types = rows;
                if (attr == RavenAttribute::size) plan.sizes = rows;
                if (attr == RavenAttribute::color) plan.colors = rows;
            }
            if (!ok) break;
            plan.governed[attr] = rule;
        }
        if (!ok) continue;

        // constants for ungoverned attributes
        const bool number_governed = plan.governed.count(RavenAttribute::number) > 0;
        const bool position_governed = plan.governed.count(RavenAttribute::position) > 0;
        plan.position_slaved = number_governed;
        int const_number = 0;
        CellSet const_position;
        if (!number_governed && !position_governed) {
            const_number = static_cast<int>(rng.range(1, std::min(4, cells)));
            const_position = sample_cell_set(cells, const_number, rng);
            plan.constants.push_back(RavenAttribute::position);
        }
        std::map<RavenAttribute, int> const_scalar;
        for (RavenAttribute a :
             {RavenAttribute::type, RavenAttribute::size, RavenAttribute::color})
            if (!plan.governed.count(a)) {
                const ValueDomain dom = domain_of(a, layout);
                const_scalar[a] = static_cast<int>(rng.range(dom.lo, dom.hi));
                plan.constants.push_back(a);
            }

        // build the 9 panels
        auto scalar_at = [&](RavenAttribute a, int i, int j) -> int {
            if (plan.governed.count(a)) {
                const auto& rows = a == RavenAttribute::number ? plan.numbers
                                   : a == RavenAttribute::type ? plan.types
                                   : a == RavenAttribute::size ? plan.sizes
                                                               : plan.colors;
                return rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
            }
            return const_scalar.count(a) ? const_scalar[a] : 0;
        };
        std::vector<Panel> all(9);
        bool built = true;
        for (int i = 0; i < 3 && built; ++i)
            for (int j = 0; j < 3 && built; ++j) {
                CellSet cell_set;
                if (position_governed) {
                    cell_set = plan.positions[static_cast<size_t>(i)][static_cast<size_t>(j)];
                } else if (number_governed) {
                    const int n = scalar_at(RavenAttribute::number, i, j);
                    if (n < 1 || n > cells) {
                        built = false;
                        break;
                    }
                    cell_set = sample_cell_set(cells, n, rng);
                } else {
                    cell_set = const_position;
                }
                all[static_cast<size_t>(i * 3 + j)] = panel_from_attrs(
                    layout, cell_set, scalar_at(RavenAttribute::type, i, j),
                    const_scalar.count(RavenAttribute::size) ? const_scalar[RavenAttribute::size]
                    : plan.governed.count(RavenAttribute::size)
                        ? scalar_at(RavenAttribute::size, i, j)
                        : 3,
                    scalar_at(RavenAttribute::color, i, j), type_icons);
            }
        if (!built) continue;

        RavenMatrix m;
        m.layout_id = layout.id;
        m.attribute_rules = plan.governed;
        m.constant_attrs = plan.constants;
        m.panels.assign(all.begin(), all.begin() + 8);
        const Panel keyed = all[8];

        // distractors: single-attribute perturbations of the keyed panel
        std::vector<RavenAttribute> perturbable;
        for (const auto& [a, rule] : plan.governed) perturbable.push_back(a);
        for (RavenAttribute a : plan.constants) perturbable.push_back(a);
        std::vector<Panel> options{keyed};
        int guard = 0;
        while (options.size() < 8 && ++guard < 256) {
            const RavenAttribute a = perturbable[rng.below(perturbable.size())];
            Panel d = keyed;
            const AttrVector kv = extract_attrs(keyed);
            switch (a) {
                case RavenAttribute::number: {
                    int n = kv.number;
                    while (n == kv.number) n = static_cast<int>(rng.range(1, std::min(9, cells)));
                    const CellSet cs = sample_cell_set(cells, n, rng);
                    d = panel_from_attrs(layout, cs, kv.type, kv.size, kv.color, type_icons);
                    break;
                }
                case RavenAttribute::position: {
                    CellSet cs = kv.position;
                    int inner = 0;
                    while (cs == kv.position && ++inner < 64)
                        cs = sample_cell_set(cells, static_cast<int>(kv.position.size()), rng);
                    if (cs == kv.position) continue;
                    d = panel_from_attrs(layout, cs, kv.type, kv.size, kv.color, type_icons);
                    break;
                }
                case RavenAttribute::type: {
                    int t = kv.type;
                    while (t == kv.type) t = static_cast<int>(rng.below(5));
                    d = panel_from_attrs(layout, kv.position, t, kv.size, kv.color, type_icons);
                    break;
                }
                case RavenAttribute::size: {
                    int s = kv.size;
                    while (s == kv.size) s = static_cast<int>(rng.range(1, 3));
                    d = panel_from_attrs(layout, kv.position, kv.type, s, kv.color, type_icons);
                    break;
                }
                case RavenAttribute::color: {
                    int c = kv.color;
                    while (c == kv.color) c = static_cast<int>(rng.range(0, 3));
                    d = panel_from_attrs(layout, kv.position, kv.type, kv.size, c, type_icons);
                    break;
                }
            }
            bool dup = false;
            for (const Panel& existing : options)
                if (panels_equivalent(existing, d)) dup = true;
            if (!dup) options.push_back(std::move(d));
        }
        if (options.size() < 8) continue;

        // shuffle; keyed index = position of the original option 0
        std::vector<int> perm{0, 1, 2, 3, 4, 5, 6, 7};
        rng.shuffle(perm);
        m.options.resize(8);
        for (int pos = 0; pos < 8; ++pos) {
            m.options[static_cast<size_t>(pos)] = options[static_cast<size_t>(perm[static_cast<size_t>(pos)])];
            if (perm[static_cast<size_t>(pos)] == 0) m.keyed_index = pos + 1;
        }

        // exclusivity gate: exactly one option checks out
        int consistent_count = 0;
        for (int idx = 1; idx <= 8; ++idx)
            if (check_raven(m, idx)) ++consistent_count;
        if (consistent_count != 1 || !check_raven(m, m.keyed_index)) continue;
        return m;
    }
    throw NoViableIconError("raven generation: retry budget exhausted");
}

bool check_raven(const RavenMatrix& matrix, int candidate_index) {
    if (candidate_index < 1 || candidate_index > 8)
        throw std::out_of_range("check_raven: index out of 1..8");
    const Panel& cand = matrix.options[static_cast<size_t>(candidate_index - 1)];
    const AttrVector cv = extract_attrs(cand);
    auto attrs_of = [&](int i) { return extract_attrs(matrix.panels[static_cast<size_t>(i)]); };

    auto scalar_value = [](const AttrVector& v, RavenAttribute a) {
        switch (a) {
            case RavenAttribute::number: return v.number;
            case RavenAttribute::type: return v.type;
            case RavenAttribute::size: return v.size;
            default: return v.color;
        }
    };

    for (const auto& [attr, rule] : matrix.attribute_rules) {
        const std::string base = raven_rule_base(rule);
        if (attr == RavenAttribute::position) {
            std::vector<int> expected;
            if (base == "distribute_three" || base == "distribute_three_permuted") {
                const int idx = raven_distribute_index(rule, 2, 2);
                expected = attrs_of(idx).position;  // row 0 carries the value triple
            } else {
                expected = raven_next_position(rule, attrs_of(6).position, attrs_of(7).position);
            }
            if (cv.position != expected) return false;
        } else {
            int expected;
            if (base == "distribute_three" || base == "distribute_three_permuted") {
                expected = scalar_value(attrs_of(raven_distribute_index(rule, 2, 2)), attr);
            } else if (base == "arithmetic_plus" || base == "arithmetic_minus") {
                expected =
                    raven_next_value(rule, scalar_value(attrs_of(6), attr),
                                     scalar_value(attrs_of(7), attr));
            } else {
                expected = raven_next_value(rule, scalar_value(attrs_of(7), attr),
                                            scalar_value(attrs_of(7), attr));
            }
            if (scalar_value(cv, attr) != expected) return false;
        }
    }
    for (RavenAttribute attr : matrix.constant_attrs) {
        if (attr == RavenAttribute::position) {
            if (cv.position != attrs_of(0).position) return false;
        } else if (scalar_value(cv, attr) != scalar_value(attrs_of(0), attr)) {
            return false;
        }
    }
    return true;
}

std::string primary_sub_rule(const RavenMatrix& matrix) {
    if (matrix.attribute_rules.empty()) return "const_all";
    return raven_rule_base(matrix.attribute_rules.begin()->second);
}

}  // namespace rsm::raven
