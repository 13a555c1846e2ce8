#include "riddlesmith/rules.hpp"

#include <algorithm>
#include <set>

#include "rules_internal.hpp"

namespace rsm {

using namespace detail;

int param_int(const Params& p, const std::string& name) { return std::stoi(p.at(name)); }
const std::string& param_str(const Params& p, const std::string& name) { return p.at(name); }

// ------------------------------------------------------------------ IconPool

IconPool::IconPool(const IconLibrary& lib, const std::vector<int>& indices) {
    icons_.reserve(indices.size());
    for (int i : indices) icons_.push_back(&lib.at(static_cast<size_t>(i)));
}

const Icon& IconPool::pick(RngStream& rng) const {
    if (icons_.empty()) throw_no_viable();
    return *icons_[rng.below(icons_.size())];
}

const Icon& IconPool::pick_strokes(RngStream& rng, int strokes) const {
    return pick_if(rng, [strokes](const Icon& i) { return i.stroke_count == strokes; });
}
const Icon& IconPool::pick_regions(RngStream& rng, int regions) const {
    return pick_if(rng, [regions](const Icon& i) { return i.closed_regions == regions; });
}
const Icon& IconPool::pick_symmetry(RngStream& rng, Symmetry s) const {
    return pick_if(rng, [s](const Icon& i) { return i.symmetry == s; });
}

void IconPool::throw_no_viable() {
    throw NoViableIconError("no icon in the pool satisfies the rule's constraints");
}

// ----------------------------------------------------------- RuleLogic base

bool RuleLogic::matches(const RuleInstance& inst, const Layout& layout,
                        std::span<const Panel> group_prefix, const Panel& candidate) const {
    return panels_equivalent(candidate, continue_group(inst, layout, group_prefix));
}

bool RuleLogic::group_valid(const RuleInstance&, const Layout&, std::span<const Panel>) const {
    return true;
}

std::vector<Params> RuleLogic::all_params() const {
    std::vector<Params> out{Params{}};
    for (const ParamSpec& spec : meta_.param_schema) {
        std::vector<Params> next;
        for (const Params& base : out)
            for (const std::string& choice : spec.choices) {
                Params p = base;
                p[spec.name] = choice;
                next.push_back(std::move(p));
            }
        out = std::move(next);
    }
    return out;
}

Params RuleLogic::sample_params(RngStream& rng) const {
    Params p;
    for (const ParamSpec& spec : meta_.param_schema)
        p[spec.name] = spec.choices[rng.below(spec.choices.size())];
    return p;
}

Panel RuleLogic::make_correct(const RuleInstance& inst, const Layout& layout,
                              std::span<const Panel> context, const IconPool&, RngStream&) const {
    return apply(inst, layout, context);
}

Panel RuleLogic::perturb(const RuleInstance&, const Layout&, const Panel& correct,
                         const IconPool&, RngStream& rng) const {
    // Generic attribute perturbation: mutate one or two element attributes.
    Panel p = correct;
    if (p.elements.empty()) return p;
    const int edits = 1 + static_cast<int>(rng.below(2));
    for (int k = 0; k < edits; ++k) {
        Element& e = p.elements[rng.below(p.elements.size())];
        switch (rng.below(4)) {
            case 0:
                e.fill = (e.fill == Fill::black) ? Fill::white : Fill::black;
                break;
            case 1:
                if (e.icon.symmetry == Symmetry::none)
                    e.rotation_deg = (e.rotation_deg + 45 * static_cast<int>(rng.range(1, 7))) % 360;
                else
                    e.fill = (e.fill == Fill::black) ? Fill::white : Fill::black;
                break;
            case 2:
                e.scale = (e.scale == 1.0) ? 0.5 : 1.0;
                break;
            default: {
                std::vector<bool> used(static_cast<size_t>(p.grid.cell_count()), false);
                for (const auto& other : p.elements) used[static_cast<size_t>(other.cell)] = true;
                std::vector<int> free;
                for (int c = 0; c < p.grid.cell_count(); ++c)
                    if (!used[static_cast<size_t>(c)]) free.push_back(c);
                if (!free.empty()) e.cell = free[rng.below(free.size())];
                break;
            }
        }
    }
    canonicalize(p);
    return p;
}

Panel RuleLogic::resample(const RuleInstance&, const Layout&, std::span<const Panel>,
                          const Panel& correct, const IconPool&, RngStream& rng) const {
    // Same visual vocabulary, rearranged.
    Panel p = correct;
    if (p.elements.empty()) return p;
    auto cells = sample_distinct_cells(std::min<int>(p.element_count(), p.grid.cell_count()),
                                       p.grid.cell_count(), rng);
    for (size_t i = 0; i < p.elements.size(); ++i) {
        p.elements[i].cell = cells[i % cells.size()];
        if (p.elements[i].icon.symmetry == Symmetry::none && rng.below(2))
            p.elements[i].rotation_deg = 45 * static_cast<int>(rng.below(8));
    }
    canonicalize(p);
    return p;
}

int RuleLogic::seeds_count(const Layout&) const {
    const int by_shape = (shape_ == RuleShape::triplet) ? 2 : 1;
    return std::max(by_shape, min_prefix());
}

// -------------------------------------------------------------- group logic

std::vector<std::vector<int>> rule_groups(RuleShape shape, const Layout& layout) {
    switch (shape) {
        case RuleShape::chain: return layout.chain_groups();
        case RuleShape::triplet: return layout.triplet_groups();
        case RuleShape::pair: return layout.pair_groups();
    }
    return {};
}

namespace {

std::vector<std::vector<Panel>> visible_group_panels(const std::vector<std::vector<int>>& groups,
                                                     std::span<const Panel> visible) {
    std::vector<std::vector<Panel>> out;
    for (const auto& g : groups) {
        std::vector<Panel> panels;
        for (int idx : g)
            if (idx < static_cast<int>(visible.size()))
                panels.push_back(visible[static_cast<size_t>(idx)]);
        out.push_back(std::move(panels));
    }
    return out;
}

}  // namespace

std::vector<Panel> expand_sequence(const RuleInstance& inst, const Layout& layout,
                                   std::span<const Panel> seeds) {
    const RuleLogic& logic = rule_logic(inst.sub_rule_id);
    auto groups = rule_groups(logic.shape(), layout);
    const int spg = logic.seeds_count(layout);
    if (seeds.size() != groups.size() * static_cast<size_t>(spg))
        throw std::invalid_argument("expand_sequence: seed count does not match group structure");
    std::vector<Panel> sequence(static_cast<size_t>(layout.panel_count()));
    size_t seed_at = 0;
    for (const auto& g : groups) {
        std::vector<Panel> built;
        for (size_t k = 0; k < g.size(); ++k) {
            Panel p = (k < static_cast<size_t>(spg)) ? seeds[seed_at + k]
                                                     : logic.continue_group(inst, layout, built);
            built.push_back(p);
            sequence[static_cast<size_t>(g[k])] = std::move(p);
        }
        seed_at += static_cast<size_t>(spg);
    }
    return sequence;
}

namespace {

// Prefix of the group containing the next position to fill.
std::vector<Panel> prefix_at(const RuleLogic& logic, const Layout& layout,
                             std::span<const Panel> context) {
    auto groups = rule_groups(logic.shape(), layout);
    const int next_pos = static_cast<int>(context.size());
    for (const auto& g : groups) {
        if (std::find(g.begin(), g.end(), next_pos) == g.end()) continue;
        std::vector<Panel> prefix;
        for (int idx : g)
            if (idx < next_pos) prefix.push_back(context[static_cast<size_t>(idx)]);
        return prefix;
    }
    throw std::invalid_argument("context does not leave a position to fill on this layout");
}

}  // namespace

Panel apply(const RuleInstance& inst, const Layout& layout, std::span<const Panel> context) {
    const RuleLogic& logic = rule_logic(inst.sub_rule_id);
    auto prefix = prefix_at(logic, layout, context);
    if (static_cast<int>(prefix.size()) < logic.min_prefix())
        throw std::invalid_argument("apply: context shorter than rule arity");
    return logic.continue_group(inst, layout, prefix);
}

bool consistent(const RuleInstance& inst, const Layout& layout, std::span<const Panel> context,
                const Panel& candidate) {
    const RuleLogic& logic = rule_logic(inst.sub_rule_id);
    auto prefix = prefix_at(logic, layout, context);
    if (static_cast<int>(prefix.size()) < logic.min_prefix()) return false;
    return logic.matches(inst, layout, prefix, candidate);
}

bool fits_context(const RuleInstance& inst, const Layout& layout,
                  std::span<const Panel> context) {
    const RuleLogic& logic = rule_logic(inst.sub_rule_id);
    const auto& ids = logic.meta().layout_ids;
    if (std::find(ids.begin(), ids.end(), layout.id) == ids.end()) return false;
    auto groups = rule_groups(logic.shape(), layout);
    auto panels = visible_group_panels(groups, context);
    for (const auto& visible : panels) {
        if (visible.empty()) continue;
        if (!logic.group_valid(inst, layout, visible)) return false;
        for (size_t i = static_cast<size_t>(logic.min_prefix()); i < visible.size(); ++i) {
            std::span<const Panel> prefix(visible.data(), i);
            if (!logic.matches(inst, layout, prefix, visible[i])) return false;
        }
    }
    return !panels.empty() && static_cast<int>(panels.back().size()) >= logic.min_prefix();
}

std::vector<RuleInstance> enumerate_instances(RuleCategory category,
                                              const std::string& layout_id) {
    std::vector<RuleInstance> out;
    for (const SubRule* rule : catalog_for(category)) {
        const auto& ids = rule->layout_ids;
        if (std::find(ids.begin(), ids.end(), layout_id) == ids.end()) continue;
        if (category == RuleCategory::sudoku || category == RuleCategory::raven) continue;
        for (Params& p : rule_logic(rule->id).all_params())
            out.push_back(RuleInstance{rule->id, std::move(p)});
    }
    return out;
}

// ======================================================================
// numerical rules
// ======================================================================

namespace {

using Measure = int (*)(const Panel&);

// Rules governed by a per-panel integer measure (element count, total
// strokes, total closed regions). Matching is by measure, not placement.
class QuantityProgressionRule : public RuleLogic {
public:
    QuantityProgressionRule(SubRule meta, Measure measure, int lo, int hi)
        : RuleLogic(std::move(meta), RuleShape::chain), measure_(measure), lo_(lo), hi_(hi) {}

    bool matches(const RuleInstance& inst, const Layout&, std::span<const Panel> prefix,
                 const Panel& candidate) const override {
        const int target = measure_(prefix.back()) + param_int(inst.params, "step");
        if (target < lo_ || target > hi_) return false;
        return measure_(candidate) == target && panel_in_domain(candidate);
    }

    bool group_valid(const RuleInstance&, const Layout&,
                     std::span<const Panel> group) const override {
        for (const Panel& p : group) {
            const int v = measure_(p);
            if (v < lo_ || v > hi_ || !panel_in_domain(p)) return false;
        }
        return true;
    }

    std::vector<Panel> sample_seeds(const RuleInstance& inst, const Layout& layout,
                                    const IconPool& pool, RngStream& rng) const override {
        const int step = param_int(inst.params, "step");
        const Element style = sample_style(pool, rng);
        std::vector<Panel> seeds;
        for (const auto& g : rule_groups(shape(), layout)) {
            const int span = (static_cast<int>(g.size()) - 1) * std::abs(step);
            const int s_lo = (step > 0) ? lo_ : lo_ + span;
            const int s_hi = (step > 0) ? hi_ - span : hi_;
            const int start = static_cast<int>(rng.range(std::max(s_lo, lo_), std::min(s_hi, hi_)));
            seeds.push_back(sample_with_measure(layout, start, &style, pool, rng));
        }
        return seeds;
    }

    Panel make_correct(const RuleInstance& inst, const Layout& layout,
                       std::span<const Panel> context, const IconPool& pool,
                       RngStream& rng) const override {
        auto prefix = context_prefix(layout, context);
        const int target = measure_(prefix.back()) + param_int(inst.params, "step");
        const Element* style = prefix.back().elements.empty() ? nullptr : &prefix.back().elements[0];
        return sample_with_measure(layout, target, style, pool, rng);
    }

    Panel perturb(const RuleInstance&, const Layout& layout, const Panel& correct,
                  const IconPool& pool, RngStream& rng) const override {
        const int v = measure_(correct);
        int other = v;
        while (other == v) other = static_cast<int>(rng.range(lo_, hi_));
        const Element* style = correct.elements.empty() ? nullptr : &correct.elements[0];
        return sample_with_measure(layout, other, style, pool, rng);
    }

    Panel resample(const RuleInstance& inst, const Layout& layout, std::span<const Panel>,
                   const Panel& correct, const IconPool& pool, RngStream& rng) const override {
        return perturb(inst, layout, correct, pool, rng);
    }

protected:
    std::vector<Panel> context_prefix(const Layout& layout, std::span<const Panel> context) const {
        auto groups = rule_groups(shape(), layout);
        std::vector<Panel> prefix;
        for (int idx : groups.back())
            if (idx < static_cast<int>(context.size()))
                prefix.push_back(context[static_cast<size_t>(idx)]);
        return prefix;
    }

    virtual bool panel_in_domain(const Panel&) const { return true; }
    virtual Element sample_style(const IconPool& pool, RngStream& rng) const {
        Element e = elem(pool.pick(rng), 0, rng.below(2) ? Fill::black : Fill::white, 0, 0.75);
        return e;
    }
    virtual Panel sample_with_measure(const Layout&, int value, const Element* style,
                                      const IconPool&, RngStream&) const = 0;

    Measure measure_;
    int lo_, hi_;
};

Panel styled_count_panel(const CellGrid& grid, int count, const Element& style, RngStream& rng) {
    Panel p = make_panel(grid);
    for (int cell : sample_distinct_cells(count, grid.cell_count(), rng)) {
        Element e = style;
        e.cell = cell;
        p.elements.push_back(e);
    }
    return p;
}

class CountProgressionRule : public QuantityProgressionRule {
public:
    CountProgressionRule()
        : QuantityProgressionRule(SubRule{"count_progression",
                                          RuleCategory::numerical,
                                          {{"step", {"-2", "-1", "1", "2"}}},
                                          1,
                                          {"m3x3_cells", "row5_cells"}},
                                  total_elements, 1, 9) {}

    Panel continue_group(const RuleInstance& inst, const Layout& layout,
                         std::span<const Panel> prefix) const override {
        const int target =
            std::clamp(total_elements(prefix.back()) + param_int(inst.params, "step"), 1, 9);
        Panel p = make_panel(layout.cell_grid);
        const Element style = prefix.back().elements.front();
        for (int cell = 0; cell < target; ++cell) {
            Element e = style;
            e.cell = cell;
            p.elements.push_back(e);
        }
        return p;
    }

protected:
    Panel sample_with_measure(const Layout& layout, int value, const Element* style,
                              const IconPool& pool, RngStream& rng) const override {
        Element s = style ? *style : elem(pool.pick(rng), 0, Fill::black, 0, 0.75);
        return styled_count_panel(layout.cell_grid, value, s, rng);
    }
};

// Single centered element whose icon carries the governed measure.
class IconMeasureProgressionRule : public QuantityProgressionRule {
public:
    IconMeasureProgressionRule(SubRule meta, Measure measure, int lo, int hi,
                               const char* synth_prefix, bool by_strokes)
        : QuantityProgressionRule(std::move(meta), measure, lo, hi),
          synth_prefix_(synth_prefix),
          by_strokes_(by_strokes) {}

    Panel continue_group(const RuleInstance& inst, const Layout& layout,
                         std::span<const Panel> prefix) const override {
        const int target =
            std::clamp(measure_(prefix.back()) + param_int(inst.params, "step"), lo_, hi_);
        Panel p = make_panel(layout.cell_grid);
        p.elements.push_back(elem(builtin_icon(synth_prefix_ + std::to_string(target)),
                                  layout.cell_grid.cell_count() / 2));
        return p;
    }

protected:
    bool panel_in_domain(const Panel& p) const override { return p.element_count() == 1; }

    Element sample_style(const IconPool&, RngStream&) const override { return Element{}; }

    Panel sample_with_measure(const Layout& layout, int value, const Element*,
                              const IconPool& pool, RngStream& rng) const override {
        const Icon& icon =
            by_strokes_ ? pool.pick_strokes(rng, value) : pool.pick_regions(rng, value);
        Panel p = make_panel(layout.cell_grid);
        p.elements.push_back(elem(icon, layout.cell_grid.cell_count() / 2));
        return p;
    }

    std::string synth_prefix_;
    bool by_strokes_;
};

class StrokeProgressionRule : public IconMeasureProgressionRule {
public:
    StrokeProgressionRule()
        : IconMeasureProgressionRule(SubRule{"stroke_count_progression",
                                             RuleCategory::numerical,
                                             {{"step", {"-1", "1"}}},
                                             1,
                                             {"m3x3_cells", "row5_cells"}},
                                     total_strokes, 1, 5, "#strokes/", true) {}
};

class RegionProgressionRule : public IconMeasureProgressionRule {
public:
    RegionProgressionRule()
        : IconMeasureProgressionRule(SubRule{"closed_region_progression",
                                             RuleCategory::numerical,
                                             {{"step", {"-1", "1"}}},
                                             1,
                                             {"m3x3_cells", "row5_cells"}},
                                     total_regions, 0, 5, "#regions/", false) {}
};

class CountConstantRule : public RuleLogic {
public:
    CountConstantRule()
        : RuleLogic(SubRule{"count_constant",
                            RuleCategory::numerical,
                            {{"k", {"1", "2", "3", "4", "5", "6", "7", "8", "9"}}},
                            1,
                            {"m3x3_cells", "row5_cells"}},
                    RuleShape::chain) {}

    Panel continue_group(const RuleInstance& inst, const Layout& layout,
                         std::span<const Panel> prefix) const override {
        Panel p = make_panel(layout.cell_grid);
        const int k = param_int(inst.params, "k");
        const Element style = prefix.back().elements.front();
        for (int c = 0; c < k; ++c) {
            Element e = style;
            e.cell = c;
            p.elements.push_back(e);
        }
        return p;
    }

    bool matches(const RuleInstance& inst, const Layout&, std::span<const Panel>,
                 const Panel& candidate) const override {
        return candidate.element_count() == param_int(inst.params, "k");
    }

    bool group_valid(const RuleInstance& inst, const Layout&,
                     std::span<const Panel> group) const override {
        const int k = param_int(inst.params, "k");
        for (const Panel& p : group)
            if (p.element_count() != k) return false;
        return true;
    }

    Params sample_params(RngStream& rng) const override {
        return {{"k", std::to_string(rng.range(2, 7))}};
    }

    std::vector<Panel> sample_seeds(const RuleInstance& inst, const Layout& layout,
                                    const IconPool& pool, RngStream& rng) const override {
        const int k = param_int(inst.params, "k");
        std::vector<Panel> seeds;
        for (size_t g = 0; g < rule_groups(shape(), layout).size(); ++g) {
            Element style =
                elem(pool.pick(rng), 0, rng.below(2) ? Fill::black : Fill::white, 0, 0.75);
            seeds.push_back(styled_count_panel(layout.cell_grid, k, style, rng));
        }
        return seeds;
    }

    Panel make_correct(const RuleInstance& inst, const Layout& layout,
                       std::span<const Panel> context, const IconPool&,
                       RngStream& rng) const override {
        return styled_count_panel(layout.cell_grid, param_int(inst.params, "k"),
                                  context.back().elements.front(), rng);
    }

    Panel perturb(const RuleInstance& inst, const Layout& layout, const Panel& correct,
                  const IconPool&, RngStream& rng) const override {
        const int k = param_int(inst.params, "k");
        int other = k;
        while (other == k) other = static_cast<int>(rng.range(1, layout.cell_grid.cell_count()));
        return styled_count_panel(layout.cell_grid, other, correct.elements.front(), rng);
    }
};

class RowArithmeticRule : public RuleLogic {
public:
    RowArithmeticRule()
        : RuleLogic(SubRule{"row_arithmetic",
                            RuleCategory::numerical,
                            {{"op", {"plus", "minus"}}},
                            2,
                            {"m3x3_cells"}},
                    RuleShape::triplet) {}

    Panel continue_group(const RuleInstance& inst, const Layout& layout,
                         std::span<const Panel> prefix) const override {
        const int c = std::clamp(result_count(inst, prefix), 1, 9);
        Panel p = make_panel(layout.cell_grid);
        const Element style = prefix.front().elements.front();
        for (int cell = 0; cell < c; ++cell) {
            Element e = style;
            e.cell = cell;
            p.elements.push_back(e);
        }
        return p;
    }

    bool matches(const RuleInstance& inst, const Layout&, std::span<const Panel> prefix,
                 const Panel& candidate) const override {
        const int c = result_count(inst, prefix);
        return c >= 1 && c <= 9 && candidate.element_count() == c;
    }

    bool group_valid(const RuleInstance&, const Layout&,
                     std::span<const Panel> group) const override {
        for (const Panel& p : group)
            if (p.element_count() < 1 || p.element_count() > 9) return false;
        return true;
    }

    std::vector<Panel> sample_seeds(const RuleInstance& inst, const Layout& layout,
                                    const IconPool& pool, RngStream& rng) const override {
        const bool plus = param_str(inst.params, "op") == "plus";
        Element style = elem(pool.pick(rng), 0, rng.below(2) ? Fill::black : Fill::white, 0, 0.75);
        std::vector<Panel> seeds;
        for (size_t g = 0; g < rule_groups(shape(), layout).size(); ++g) {
            int a, b;
            if (plus) {
                a = static_cast<int>(rng.range(1, 8));
                b = static_cast<int>(rng.range(1, 9 - a));
            } else {
                a = static_cast<int>(rng.range(2, 9));
                b = static_cast<int>(rng.range(1, a - 1));
            }
            seeds.push_back(styled_count_panel(layout.cell_grid, a, style, rng));
            seeds.push_back(styled_count_panel(layout.cell_grid, b, style, rng));
        }
        return seeds;
    }

    Panel make_correct(const RuleInstance& inst, const Layout& layout,
                       std::span<const Panel> context, const IconPool&,
                       RngStream& rng) const override {
        auto groups = rule_groups(shape(), layout);
        std::vector<Panel> prefix;
        for (int idx : groups.back())
            if (idx < static_cast<int>(context.size()))
                prefix.push_back(context[static_cast<size_t>(idx)]);
        return styled_count_panel(layout.cell_grid, result_count(inst, prefix),
                                  prefix.front().elements.front(), rng);
    }

    Panel perturb(const RuleInstance&, const Layout& layout, const Panel& correct,
                  const IconPool&, RngStream& rng) const override {
        const int c = correct.element_count();
        int other = c;
        while (other == c) other = static_cast<int>(rng.range(1, 9));
        return styled_count_panel(layout.cell_grid, other, correct.elements.front(), rng);
    }

private:
    static int result_count(const RuleInstance& inst, std::span<const Panel> prefix) {
        const int a = prefix[0].element_count();
        const int b = prefix[1].element_count();
        return param_str(inst.params, "op") == "plus" ? a + b : a - b;
    }
};

// ======================================================================
// stylistic rules
// ======================================================================

class BitwiseFillRule : public RuleLogic {
public:
    BitwiseFillRule(const char* id, bool (*op)(bool, bool))
        : RuleLogic(SubRule{id, RuleCategory::stylistic, {}, 2, {"m3x3_cells", "grp2x3_cells"}},
                    RuleShape::triplet),
          op_(op) {}

    Panel continue_group(const RuleInstance&, const Layout&,
                         std::span<const Panel> prefix) const override {
        auto a = bitmap_bits(prefix[0]);
        auto b = bitmap_bits(prefix[1]);
        std::vector<bool> c(a.size());
        for (size_t i = 0; i < a.size(); ++i) c[i] = op_(a[i], b[i]);
        return bitmap_panel(prefix[0].grid, c);
    }

    bool matches(const RuleInstance& inst, const Layout& layout, std::span<const Panel> prefix,
                 const Panel& candidate) const override {
        if (!is_binary_bitmap(candidate)) return false;
        return panels_equivalent(candidate, continue_group(inst, layout, prefix));
    }

    bool group_valid(const RuleInstance&, const Layout&,
                     std::span<const Panel> group) const override {
        for (const Panel& p : group)
            if (!is_binary_bitmap(p)) return false;
        return true;
    }

    std::vector<Panel> sample_seeds(const RuleInstance&, const Layout& layout, const IconPool&,
                                    RngStream& rng) const override {
        std::vector<Panel> seeds;
        for (size_t g = 0; g < rule_groups(shape(), layout).size(); ++g)
            for (int k = 0; k < 2; ++k) {
                const int n = layout.cell_grid.cell_count();
                std::vector<bool> bits(static_cast<size_t>(n), false);
                for (int cell :
                     sample_distinct_cells(static_cast<int>(rng.range(2, n - 2)), n, rng))
                    bits[static_cast<size_t>(cell)] = true;
                seeds.push_back(bitmap_panel(layout.cell_grid, bits));
            }
        return seeds;
    }

    Panel perturb(const RuleInstance&, const Layout&, const Panel& correct, const IconPool&,
                  RngStream& rng) const override {
        Panel p = correct;
        for (int cell :
             sample_distinct_cells(1 + static_cast<int>(rng.below(2)), p.grid.cell_count(), rng))
            for (Element& e : p.elements)
                if (e.cell == cell) e.fill = (e.fill == Fill::black) ? Fill::white : Fill::black;
        return p;
    }

    Panel resample(const RuleInstance&, const Layout& layout, std::span<const Panel>,
                   const Panel&, const IconPool&, RngStream& rng) const override {
        const int n = layout.cell_grid.cell_count();
        std::vector<bool> bits(static_cast<size_t>(n), false);
        for (int cell : sample_distinct_cells(static_cast<int>(rng.range(1, n - 1)), n, rng))
            bits[static_cast<size_t>(cell)] = true;
        return bitmap_panel(layout.cell_grid, bits);
    }

private:
    bool (*op_)(bool, bool);
};

bool op_xor(bool a, bool b) { return a != b; }
bool op_and(bool a, bool b) { return a && b; }
bool op_or(bool a, bool b) { return a || b; }

class FillInversionRule : public RuleLogic {
public:
    FillInversionRule()
        : RuleLogic(SubRule{"fill_inversion",
                            RuleCategory::stylistic,
                            {},
                            1,
                            {"m3x3_cells", "row5_icon"}},
                    RuleShape::chain) {}

    Panel continue_group(const RuleInstance&, const Layout&,
                         std::span<const Panel> prefix) const override {
        Panel p = prefix.back();
        for (Element& e : p.elements) e.fill = (e.fill == Fill::black) ? Fill::white : Fill::black;
        return p;
    }

    bool group_valid(const RuleInstance&, const Layout&,
                     std::span<const Panel> group) const override {
        for (const Panel& p : group) {
            if (p.elements.empty()) return false;
            for (const Element& e : p.elements)
                if (e.fill != Fill::white && e.fill != Fill::black) return false;
        }
        return true;
    }

    std::vector<Panel> sample_seeds(const RuleInstance&, const Layout& layout,
                                    const IconPool& pool, RngStream& rng) const override {
        std::vector<Panel> seeds;
        for (size_t g = 0; g < rule_groups(shape(), layout).size(); ++g) {
            if (layout.cell_grid.cell_count() == 1) {
                Panel p = make_panel(layout.cell_grid);
                p.elements.push_back(
                    elem(pool.pick_if(rng, [](const Icon& i) { return i.closed_regions >= 1; }), 0,
                         rng.below(2) ? Fill::black : Fill::white));
                seeds.push_back(std::move(p));
            } else {
                const int n = layout.cell_grid.cell_count();
                std::vector<bool> bits(static_cast<size_t>(n), false);
                for (int cell :
                     sample_distinct_cells(static_cast<int>(rng.range(2, n - 2)), n, rng))
                    bits[static_cast<size_t>(cell)] = true;
                seeds.push_back(bitmap_panel(layout.cell_grid, bits));
            }
        }
        return seeds;
    }
};

class OutlineFillAlternationRule : public RuleLogic {
public:
    OutlineFillAlternationRule()
        : RuleLogic(SubRule{"outline_fill_alternation",
                            RuleCategory::stylistic,
                            {{"dir", {"1", "-1"}}},
                            1,
                            {"row5_icon"}},
                    RuleShape::chain) {}

    Panel continue_group(const RuleInstance& inst, const Layout&,
                         std::span<const Panel> prefix) const override {
        Panel p = prefix.back();
        const int dir = param_int(inst.params, "dir");
        for (Element& e : p.elements) e.fill = cycle(e.fill, dir);
        return p;
    }

    bool group_valid(const RuleInstance&, const Layout&,
                     std::span<const Panel> group) const override {
        for (const Panel& p : group) {
            if (p.element_count() != 1) return false;
            const Fill f = p.elements.front().fill;
            if (f != Fill::white && f != Fill::black && f != Fill::hatched) return false;
        }
        return true;
    }

    std::vector<Panel> sample_seeds(const RuleInstance&, const Layout& layout,
                                    const IconPool& pool, RngStream& rng) const override {
        std::vector<Panel> seeds;
        const Icon& icon = pool.pick_if(rng, [](const Icon& i) { return i.closed_regions >= 1; });
        static constexpr Fill starts[3] = {Fill::white, Fill::black, Fill::hatched};
        for (size_t g = 0; g < rule_groups(shape(), layout).size(); ++g) {
            Panel p = make_panel(layout.cell_grid);
            p.elements.push_back(elem(icon, 0, starts[rng.below(3)]));
            seeds.push_back(std::move(p));
        }
        return seeds;
    }

private:
    static Fill cycle(Fill f, int dir) {
        static constexpr Fill order[3] = {Fill::white, Fill::black, Fill::hatched};
        int at = 0;
        for (int i = 0; i < 3; ++i)
            if (order[i] == f) at = i;
        return order[((at + dir) % 3 + 3) % 3];
    }
};

class OverlayUnionRule : public RuleLogic {
public:
    OverlayUnionRule()
        : RuleLogic(SubRule{"overlay_union",
                            RuleCategory::stylistic,
                            {},
                            2,
                            {"m3x3_cells", "grp2x3_cells"}},
                    RuleShape::triplet) {}

    Panel continue_group(const RuleInstance&, const Layout&,
                         std::span<const Panel> prefix) const override {
        Panel p = prefix[0];
        for (const Element& e : prefix[1].elements) {
            bool dup = false;
            for (const Element& mine : p.elements)
                if (mine.cell == e.cell && element_attr_key(mine) == element_attr_key(e)) dup = true;
            if (!dup) p.elements.push_back(e);
        }
        canonicalize(p);
        return p;
    }

    std::vector<Panel> sample_seeds(const RuleInstance&, const Layout& layout,
                                    const IconPool& pool, RngStream& rng) const override {
        std::vector<Panel> seeds;
        for (size_t g = 0; g < rule_groups(shape(), layout).size(); ++g) {
            const int n = layout.cell_grid.cell_count();
            auto cells =
                sample_distinct_cells(static_cast<int>(rng.range(3, std::min(6, n - 1))), n, rng);
            const size_t cut = 1 + rng.below(cells.size() - 1);
            Panel a = make_panel(layout.cell_grid);
            Panel b = make_panel(layout.cell_grid);
            const Icon& ia = pool.pick(rng);
            const Icon& ib = pool.pick(rng);
            for (size_t i = 0; i < cells.size(); ++i) {
                Panel& dst = (i < cut) ? a : b;
                dst.elements.push_back(elem((i < cut) ? ia : ib, cells[i], Fill::black, 0, 0.75));
            }
            seeds.push_back(std::move(a));
            seeds.push_back(std::move(b));
        }
        return seeds;
    }
};

// ======================================================================
// attribute rules
// ======================================================================

// Pattern strings: "const:<v>" or "alt:<v0>:<v1>"; class at position i.
std::string pattern_class_at(const std::string& pattern, size_t index) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        const size_t colon = pattern.find(':', start);
        parts.push_back(pattern.substr(start, colon - start));
        if (colon == std::string::npos) break;
        start = colon + 1;
    }
    if (parts[0] == "const") return parts[1];
    return parts[1 + index % 2];
}

class ClassChainRule : public RuleLogic {
public:
    explicit ClassChainRule(SubRule meta) : RuleLogic(std::move(meta), RuleShape::chain) {}

    virtual std::string element_class(const Element& e) const = 0;
    virtual const Icon& sample_class_icon(const std::string& cls, const IconPool& pool,
                                          RngStream& rng) const = 0;
    virtual const Icon& canonical_class_icon(const std::string& cls) const = 0;

    // Every panel is seeded with a fresh icon of the pattern's class; the
    // canonical glyphs only back the pure continuation function.
    int seeds_count(const Layout& layout) const override {
        return static_cast<int>(rule_groups(shape(), layout).front().size());
    }

    Panel continue_group(const RuleInstance& inst, const Layout& layout,
                         std::span<const Panel> prefix) const override {
        const std::string cls = pattern_class_at(param_str(inst.params, "pattern"), prefix.size());
        Panel p = make_panel(layout.cell_grid);
        p.elements.push_back(elem(canonical_class_icon(cls), 0));
        return p;
    }

    bool matches(const RuleInstance& inst, const Layout&, std::span<const Panel> prefix,
                 const Panel& candidate) const override {
        if (candidate.element_count() != 1) return false;
        return element_class(candidate.elements.front()) ==
               pattern_class_at(param_str(inst.params, "pattern"), prefix.size());
    }

    bool group_valid(const RuleInstance& inst, const Layout&,
                     std::span<const Panel> group) const override {
        const std::string& pattern = param_str(inst.params, "pattern");
        for (size_t i = 0; i < group.size(); ++i) {
            if (group[i].element_count() != 1) return false;
            if (element_class(group[i].elements.front()) != pattern_class_at(pattern, i))
                return false;
        }
        return true;
    }

    std::vector<Panel> sample_seeds(const RuleInstance& inst, const Layout& layout,
                                    const IconPool& pool, RngStream& rng) const override {
        const std::string& pattern = param_str(inst.params, "pattern");
        const int per_group = seeds_count(layout);
        for (int attempt = 0; attempt < 64; ++attempt) {
            std::vector<Panel> seeds;
            for (size_t g = 0; g < rule_groups(shape(), layout).size(); ++g)
                for (int i = 0; i < per_group; ++i) {
                    Panel p = make_panel(layout.cell_grid);
                    p.elements.push_back(elem(
                        sample_class_icon(pattern_class_at(pattern, static_cast<size_t>(i)), pool,
                                          rng),
                        0));
                    seeds.push_back(std::move(p));
                }
            // reject draws that a sibling rule of the category also explains
            std::vector<Panel> context(seeds.begin(), seeds.end() - 1);
            bool clean = true;
            for (const RuleInstance& other :
                 enumerate_instances(meta().category, layout.id)) {
                if (other.sub_rule_id == meta().id) continue;
                if (fits_context(other, layout, context)) clean = false;
            }
            if (clean) return seeds;
        }
        throw NoViableIconError("class rule: could not draw icons that no sibling rule explains");
    }

    Panel make_correct(const RuleInstance& inst, const Layout& layout,
                       std::span<const Panel> context, const IconPool& pool,
                       RngStream& rng) const override {
        const std::string cls =
            pattern_class_at(param_str(inst.params, "pattern"), context.size());
        Panel p = make_panel(layout.cell_grid);
        p.elements.push_back(elem(sample_class_icon(cls, pool, rng), 0));
        return p;
    }

    Panel perturb(const RuleInstance&, const Layout& layout, const Panel& correct,
                  const IconPool& pool, RngStream& rng) const override {
        const std::string correct_cls = element_class(correct.elements.front());
        for (int attempt = 0; attempt < 32; ++attempt) {
            Panel p = make_panel(layout.cell_grid);
            p.elements.push_back(elem(pool.pick(rng), 0));
            if (element_class(p.elements.front()) != correct_cls) return p;
        }
        return correct;
    }
};

class SymmetryClassRule : public ClassChainRule {
public:
    SymmetryClassRule()
        : ClassChainRule(SubRule{
              "symmetry_class",
              RuleCategory::attribute,
              {{"pattern",
                {"const:axial", "const:central", "alt:axial:central", "alt:central:axial",
                 "alt:axial:none", "alt:none:axial", "alt:central:none", "alt:none:central"}}},
              2,
              {"row5_icon", "row4_icon"}}) {}

    std::string element_class(const Element& e) const override {
        return symmetry_name(e.icon.symmetry);
    }
    const Icon& sample_class_icon(const std::string& cls, const IconPool& pool,
                                  RngStream& rng) const override {
        return pool.pick_symmetry(rng, *parse_symmetry(cls));
    }
    const Icon& canonical_class_icon(const std::string& cls) const override {
        return builtin_icon("#sym/" + cls);
    }
};

class OpenClosedClassRule : public ClassChainRule {
public:
    OpenClosedClassRule()
        : ClassChainRule(SubRule{"open_closed_class",
                                 RuleCategory::attribute,
                                 {{"pattern",
                                   {"const:closed", "const:open", "alt:closed:open",
                                    "alt:open:closed"}}},
                                 2,
                                 {"row5_icon", "row4_icon"}}) {}

    std::string element_class(const Element& e) const override {
        return e.icon.closed_regions >= 1 ? "closed" : "open";
    }
    const Icon& sample_class_icon(const std::string& cls, const IconPool& pool,
                                  RngStream& rng) const override {
        const bool closed = cls == "closed";
        return pool.pick_if(rng,
                            [closed](const Icon& i) { return (i.closed_regions >= 1) == closed; });
    }
    const Icon& canonical_class_icon(const std::string& cls) const override {
        return builtin_icon("#class/" + cls);
    }
};

// ======================================================================
// positional rules
// ======================================================================

class CellMapChainRule : public RuleLogic {
public:
    using RuleLogic::RuleLogic;

    virtual int map_cell(const RuleInstance&, const CellGrid&, int cell) const = 0;
    virtual int map_rotation(const RuleInstance&, int rot) const { return rot; }

    Panel continue_group(const RuleInstance& inst, const Layout&,
                         std::span<const Panel> prefix) const override {
        Panel p = prefix.back();
        for (Element& e : p.elements) {
            e.cell = map_cell(inst, p.grid, e.cell);
            e.rotation_deg = ((map_rotation(inst, e.rotation_deg) % 360) + 360) % 360;
        }
        canonicalize(p);
        return p;
    }

protected:
    // Panel of 2..4 mixed elements that this instance's map actually moves.
    Panel sample_moving_panel(const RuleInstance& inst, const Layout& layout,
                              const IconPool& pool, RngStream& rng) const {
        for (int attempt = 0; attempt < 64; ++attempt) {
            Panel p = make_panel(layout.cell_grid);
            const int n = layout.cell_grid.cell_count();
            const int k = static_cast<int>(rng.range(2, std::min(4, n - 1)));
            const Icon& ia = pool.pick(rng);
            const Icon& ib = pool.pick(rng);
            auto cells = sample_distinct_cells(k, n, rng);
            for (size_t i = 0; i < cells.size(); ++i)
                p.elements.push_back(elem(i % 2 == 0 ? ia : ib, cells[i],
                                          i % 2 == 0 ? Fill::black : Fill::white, 0, 0.75));
            canonicalize(p);
            std::vector<Panel> prefix{p};
            if (!panels_equivalent(p, continue_group(inst, layout, prefix))) return p;
        }
        throw NoViableIconError("positional rule: no non-invariant panel found");
    }
};

class TranslateRule : public CellMapChainRule {
public:
    TranslateRule(const char* id, bool rows)
        : CellMapChainRule(SubRule{id,
                                   RuleCategory::positional,
                                   {{"step", {"1", "2"}}},
                                   1,
                                   {"m3x3_cells", "row5_cells"}},
                           RuleShape::chain),
          rows_(rows) {}

    int map_cell(const RuleInstance& inst, const CellGrid& grid, int cell) const override {
        const int step = param_int(inst.params, "step");
        int r = cell / grid.cols, c = cell % grid.cols;
        if (rows_)
            c = (c + step) % grid.cols;
        else
            r = (r + step) % grid.rows;
        return r * grid.cols + c;
    }

    std::vector<Panel> sample_seeds(const RuleInstance& inst, const Layout& layout,
                                    const IconPool& pool, RngStream& rng) const override {
        std::vector<Panel> seeds;
        for (size_t g = 0; g < rule_groups(shape(), layout).size(); ++g)
            seeds.push_back(sample_moving_panel(inst, layout, pool, rng));
        return seeds;
    }

private:
    bool rows_;
};

class RevolveRingRule : public CellMapChainRule {
public:
    RevolveRingRule()
        : CellMapChainRule(SubRule{"revolve_ring",
                                   RuleCategory::positional,
                                   {{"step", {"1", "2", "-1", "-2"}}},
                                   1,
                                   {"row5_ring"}},
                           RuleShape::chain) {}

    int map_cell(const RuleInstance& inst, const CellGrid&, int cell) const override {
        return ((cell + param_int(inst.params, "step")) % 8 + 8) % 8;
    }

    std::vector<Panel> sample_seeds(const RuleInstance& inst, const Layout& layout,
                                    const IconPool& pool, RngStream& rng) const override {
        std::vector<Panel> seeds;
        for (size_t g = 0; g < rule_groups(shape(), layout).size(); ++g)
            seeds.push_back(sample_moving_panel(inst, layout, pool, rng));
        return seeds;
    }
};

class SelfRotateRule : public CellMapChainRule {
public:
    SelfRotateRule()
        : CellMapChainRule(SubRule{"self_rotate",
                                   RuleCategory::positional,
                                   {{"delta", {"45", "90", "135", "180", "225", "270", "315"}}},
                                   1,
                                   {"m3x3_icon"}},
                           RuleShape::chain) {}

    int map_cell(const RuleInstance&, const CellGrid&, int cell) const override { return cell; }
    int map_rotation(const RuleInstance& inst, int rot) const override {
        return rot + param_int(inst.params, "delta");
    }

    std::vector<Panel> sample_seeds(const RuleInstance&, const Layout& layout,
                                    const IconPool& pool, RngStream& rng) const override {
        std::vector<Panel> seeds;
        for (size_t g = 0; g < rule_groups(shape(), layout).size(); ++g) {
            Panel p = make_panel(layout.cell_grid);
            p.elements.push_back(elem(pool.pick_symmetry(rng, Symmetry::none), 0,
                                      rng.below(2) ? Fill::black : Fill::white,
                                      45 * static_cast<int>(rng.below(8))));
            seeds.push_back(std::move(p));
        }
        return seeds;
    }
};

class RotationRevolutionRule : public CellMapChainRule {
public:
    RotationRevolutionRule()
        : CellMapChainRule(SubRule{"rotation_and_revolution",
                                   RuleCategory::positional,
                                   {{"revolve", {"1", "-1", "2"}},
                                    {"spin", {"45", "90", "-90", "180"}}},
                                   1,
                                   {"row5_ring"}},
                           RuleShape::chain) {}

    int map_cell(const RuleInstance& inst, const CellGrid&, int cell) const override {
        return ((cell + param_int(inst.params, "revolve")) % 8 + 8) % 8;
    }
    int map_rotation(const RuleInstance& inst, int rot) const override {
        return rot + param_int(inst.params, "spin");
    }

    std::vector<Panel> sample_seeds(const RuleInstance&, const Layout& layout,
                                    const IconPool& pool, RngStream& rng) const override {
        std::vector<Panel> seeds;
        for (size_t g = 0; g < rule_groups(shape(), layout).size(); ++g) {
            Panel p = make_panel(layout.cell_grid);
            p.elements.push_back(elem(pool.pick_symmetry(rng, Symmetry::none),
                                      static_cast<int>(rng.below(8)), Fill::black,
                                      45 * static_cast<int>(rng.below(8))));
            seeds.push_back(std::move(p));
        }
        return seeds;
    }
};

class ReflectAxisRule : public CellMapChainRule {
public:
    ReflectAxisRule()
        : CellMapChainRule(SubRule{"reflect_axis",
                                   RuleCategory::positional,
                                   {{"axis", {"vertical", "horizontal"}}},
                                   1,
                                   {"m3x3_cells", "row5_cells"}},
                           RuleShape::chain) {}

    int map_cell(const RuleInstance& inst, const CellGrid& grid, int cell) const override {
        int r = cell / grid.cols, c = cell % grid.cols;
        if (param_str(inst.params, "axis") == "vertical")
            c = grid.cols - 1 - c;
        else
            r = grid.rows - 1 - r;
        return r * grid.cols + c;
    }
    int map_rotation(const RuleInstance& inst, int rot) const override {
        return param_str(inst.params, "axis") == "vertical" ? (360 - rot) : (180 - rot);
    }

    std::vector<Panel> sample_seeds(const RuleInstance& inst, const Layout& layout,
                                    const IconPool& pool, RngStream& rng) const override {
        std::vector<Panel> seeds;
        for (size_t g = 0; g < rule_groups(shape(), layout).size(); ++g)
            seeds.push_back(sample_moving_panel(inst, layout, pool, rng));
        return seeds;
    }
};

class SwapPairRule : public RuleLogic {
public:
    SwapPairRule()
        : RuleLogic(SubRule{"swap_pair",
                            RuleCategory::positional,
                            {},
                            2,
                            {"m3x3_cells", "row5_cells"}},
                    RuleShape::chain) {}

    int min_prefix() const override { return 2; }

    Panel continue_group(const RuleInstance&, const Layout&,
                         std::span<const Panel> prefix) const override {
        return prefix[prefix.size() - 2];  // period two
    }

    bool group_valid(const RuleInstance&, const Layout&,
                     std::span<const Panel> group) const override {
        if (group.size() < 2) return true;
        return is_pair_swap(group[0], group[1]);
    }

    std::vector<Panel> sample_seeds(const RuleInstance&, const Layout& layout,
                                    const IconPool& pool, RngStream& rng) const override {
        std::vector<Panel> seeds;
        for (size_t g = 0; g < rule_groups(shape(), layout).size(); ++g) {
            const int n = layout.cell_grid.cell_count();
            const int k = static_cast<int>(rng.range(2, std::min(4, n)));
            Panel p0 = make_panel(layout.cell_grid);
            const Icon& ia = pool.pick(rng);
            const Icon& ib =
                pool.pick_if(rng, [&](const Icon& i) { return i.attrs() != ia.attrs(); });
            auto cells = sample_distinct_cells(k, n, rng);
            for (size_t i = 0; i < cells.size(); ++i)
                p0.elements.push_back(
                    elem(i == 0 ? ia : ib, cells[i], i == 0 ? Fill::black : Fill::white, 0, 0.75));
            canonicalize(p0);
            const int c0 = cells[0];
            const int c1 = cells[1];
            Panel p1 = p0;
            for (Element& e : p1.elements) {
                if (e.cell == c0)
                    e.cell = c1;
                else if (e.cell == c1)
                    e.cell = c0;
            }
            canonicalize(p1);
            seeds.push_back(std::move(p0));
            seeds.push_back(std::move(p1));
        }
        return seeds;
    }

private:
    static bool is_pair_swap(const Panel& a, const Panel& b) {
        if (panels_equivalent(a, b)) return false;
        auto key_of = [](const Panel& p, int cell) {
            std::vector<AttrKey> keys;
            for (const Element& e : p.elements)
                if (e.cell == cell) keys.push_back(element_attr_key(e));
            std::sort(keys.begin(), keys.end());
            return keys;
        };
        std::set<int> cells;
        for (const Element& e : a.elements) cells.insert(e.cell);
        for (const Element& e : b.elements) cells.insert(e.cell);
        std::vector<int> diff;
        for (int cell : cells)
            if (key_of(a, cell) != key_of(b, cell)) diff.push_back(cell);
        if (diff.size() != 2) return false;
        return key_of(a, diff[0]) == key_of(b, diff[1]) &&
               key_of(a, diff[1]) == key_of(b, diff[0]);
    }
};

class CyclicPermutationRule : public RuleLogic {
public:
    CyclicPermutationRule()
        : RuleLogic(SubRule{"cyclic_permutation_cells",
                            RuleCategory::positional,
                            {{"dir", {"1", "-1"}}},
                            1,
                            {"m3x3_cells", "row5_cells"}},
                    RuleShape::chain) {}

    Panel continue_group(const RuleInstance& inst, const Layout&,
                         std::span<const Panel> prefix) const override {
        Panel p = prefix.back();
        std::vector<int> occ;
        for (const Element& e : p.elements) occ.push_back(e.cell);
        std::sort(occ.begin(), occ.end());
        occ.erase(std::unique(occ.begin(), occ.end()), occ.end());
        const int k = static_cast<int>(occ.size());
        if (k == 0) return p;
        const int dir = param_int(inst.params, "dir");
        for (Element& e : p.elements) {
            const int at =
                static_cast<int>(std::find(occ.begin(), occ.end(), e.cell) - occ.begin());
            e.cell = occ[static_cast<size_t>(((at + dir) % k + k) % k)];
        }
        canonicalize(p);
        return p;
    }

    std::vector<Panel> sample_seeds(const RuleInstance& inst, const Layout& layout,
                                    const IconPool& pool, RngStream& rng) const override {
        std::vector<Panel> seeds;
        for (size_t g = 0; g < rule_groups(shape(), layout).size(); ++g) {
            bool done = false;
            for (int attempt = 0; attempt < 64 && !done; ++attempt) {
                const int n = layout.cell_grid.cell_count();
                const int k = static_cast<int>(rng.range(3, std::min(4, n)));
                Panel p = make_panel(layout.cell_grid);
                const Icon& ia = pool.pick(rng);
                const Icon& ib =
                    pool.pick_if(rng, [&](const Icon& i) { return i.attrs() != ia.attrs(); });
                auto cells = sample_distinct_cells(k, n, rng);
                for (size_t i = 0; i < cells.size(); ++i)
                    p.elements.push_back(elem(i == 0 ? ia : ib, cells[i],
                                              i == 0 ? Fill::black : Fill::white, 0, 0.75));
                canonicalize(p);
                std::vector<Panel> prefix{p};
                if (!panels_equivalent(p, continue_group(inst, layout, prefix))) {
                    seeds.push_back(std::move(p));
                    done = true;
                }
            }
            if (!done) throw NoViableIconError("cyclic_permutation: no varied panel found");
        }
        return seeds;
    }
};

}  // namespace

namespace detail {

std::vector<std::unique_ptr<RuleLogic>> make_core_rules() {
    std::vector<std::unique_ptr<RuleLogic>> rules;
    // numerical
    rules.push_back(std::make_unique<CountProgressionRule>());
    rules.push_back(std::make_unique<StrokeProgressionRule>());
    rules.push_back(std::make_unique<RegionProgressionRule>());
    rules.push_back(std::make_unique<CountConstantRule>());
    rules.push_back(std::make_unique<RowArithmeticRule>());
    // stylistic
    rules.push_back(std::make_unique<BitwiseFillRule>("xor_fill", op_xor));
    rules.push_back(std::make_unique<BitwiseFillRule>("and_fill", op_and));
    rules.push_back(std::make_unique<BitwiseFillRule>("or_fill", op_or));
    rules.push_back(std::make_unique<FillInversionRule>());
    rules.push_back(std::make_unique<OverlayUnionRule>());
    rules.push_back(std::make_unique<OutlineFillAlternationRule>());
    // attribute
    rules.push_back(std::make_unique<SymmetryClassRule>());
    rules.push_back(std::make_unique<OpenClosedClassRule>());
    // positional
    rules.push_back(std::make_unique<TranslateRule>("translate_row", true));
    rules.push_back(std::make_unique<TranslateRule>("translate_column", false));
    rules.push_back(std::make_unique<RevolveRingRule>());
    rules.push_back(std::make_unique<SelfRotateRule>());
    rules.push_back(std::make_unique<RotationRevolutionRule>());
    rules.push_back(std::make_unique<ReflectAxisRule>());
    rules.push_back(std::make_unique<SwapPairRule>());
    rules.push_back(std::make_unique<CyclicPermutationRule>());
    return rules;
}

}  // namespace detail

// ------------------------------------------------------- registry + catalog

namespace {

// Sudoku and raven sub-rules live in the catalog but are executed by their
// own modules, not the panel-sequence engine.
std::vector<SubRule> module_rules() {
    std::vector<SubRule> v;
    v.push_back(SubRule{
        "sudoku_standard",
        RuleCategory::sudoku,
        {{"givens",
          {"30", "31", "32", "33", "34", "35", "36", "37", "38", "39", "40"}}},
        0,
        {"sudoku_9x9"}});
    const std::vector<std::string> raven_layouts = {"raven_center", "raven_2x2", "raven_3x3",
                                                    "raven_lr", "raven_ud"};
    const ParamSpec attr{"attribute", {"number", "position", "type", "size", "color"}};
    auto raven_rule = [&](const char* id, std::vector<ParamSpec> extra) {
        std::vector<ParamSpec> schema{attr};
        for (auto& e : extra) schema.push_back(std::move(e));
        return SubRule{id, RuleCategory::raven, std::move(schema), 2, raven_layouts};
    };
    v.push_back(raven_rule("const_all", {}));
    v.push_back(raven_rule("progression_plus", {{"step", {"1", "2"}}}));
    v.push_back(raven_rule("progression_minus", {{"step", {"1", "2"}}}));
    v.push_back(raven_rule("arithmetic_plus", {}));
    v.push_back(raven_rule("arithmetic_minus", {}));
    v.push_back(raven_rule("distribute_three", {}));
    v.push_back(raven_rule("distribute_three_permuted", {}));
    return v;
}

struct Registry {
    std::vector<std::unique_ptr<RuleLogic>> logics;
    std::map<std::string, const RuleLogic*> by_id;
    std::vector<SubRule> ordered;

    Registry() {
        for (auto& r : detail::make_core_rules()) logics.push_back(std::move(r));
        for (auto& r : detail::make_spatial_rules()) logics.push_back(std::move(r));
        for (const auto& logic : logics) by_id[logic->meta().id] = logic.get();
        std::vector<SubRule> all;
        for (const auto& logic : logics) all.push_back(logic->meta());
        for (SubRule& r : module_rules()) all.push_back(std::move(r));
        for (RuleCategory c : kAllCategories)
            for (const SubRule& r : all)
                if (r.category == c) ordered.push_back(r);
    }
};

const Registry& registry() {
    static const Registry r;
    return r;
}

}  // namespace

const std::vector<SubRule>& catalog() { return registry().ordered; }

const SubRule& sub_rule(const std::string& id) {
    for (const SubRule& r : catalog())
        if (r.id == id) return r;
    throw std::out_of_range("unknown sub-rule id: " + id);
}

bool sub_rule_exists(const std::string& id) {
    for (const SubRule& r : catalog())
        if (r.id == id) return true;
    return false;
}

std::vector<const SubRule*> catalog_for(RuleCategory category) {
    std::vector<const SubRule*> out;
    for (const SubRule& r : catalog())
        if (r.category == category) out.push_back(&r);
    return out;
}

const RuleLogic& rule_logic(const std::string& sub_rule_id) {
    auto it = registry().by_id.find(sub_rule_id);
    if (it == registry().by_id.end())
        throw std::out_of_range("no rule logic for sub-rule: " + sub_rule_id);
    return *it->second;
}

// ------------------------------------------------------- raven rule algebra

std::string raven_rule_base(const std::string& rule_id) {
    const auto colon = rule_id.find(':');
    return colon == std::string::npos ? rule_id : rule_id.substr(0, colon);
}

int raven_rule_step(const std::string& rule_id) {
    const auto colon = rule_id.find(':');
    return colon == std::string::npos ? 1 : std::stoi(rule_id.substr(colon + 1));
}

int raven_next_value(const std::string& rule_id, int a, int b) {
    const std::string base = raven_rule_base(rule_id);
    if (base == "const_all") return b;
    if (base == "progression_plus") return b + raven_rule_step(rule_id);
    if (base == "progression_minus") return b - raven_rule_step(rule_id);
    if (base == "arithmetic_plus") return a + b;
    if (base == "arithmetic_minus") return a - b;
    throw std::invalid_argument("raven_next_value: unsupported rule " + rule_id);
}

std::vector<int> raven_next_position(const std::string& rule_id, const std::vector<int>& a,
                                     const std::vector<int>& b) {
    const std::string base = raven_rule_base(rule_id);
    std::vector<int> out;
    if (base == "const_all") return b;
    if (base == "arithmetic_plus") {
        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
        return out;
    }
    if (base == "arithmetic_minus") {
        std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
        return out;
    }
    throw std::invalid_argument("raven_next_position: unsupported rule " + rule_id);
}

int raven_distribute_index(const std::string& rule_id, int row, int col) {
    // distribute_three: L(i,j) = v[(j - i) mod 3]; permuted: v[(j + i) mod 3]
    return raven_rule_base(rule_id) == "distribute_three_permuted"
               ? (row + col) % 3
               : ((col - row) % 3 + 3) % 3;
}

// ------------------------------------------------------------------- solver

namespace {

// Conjunctive raven solve: per attribute, infer which rules fit rows 1-2 and
// the visible prefix of row 3; an option is consistent when every constrained
// attribute has a fitting rule it satisfies.
SolveResult solve_raven_conjunctive(const SymbolicRiddle& riddle) {
    if (riddle.context.size() != 8) return {SolveStatus::unsolvable, -1, {}};

    auto scalar_of = [](const Panel& p, int which) {
        const bool filled = !p.elements.empty();
        switch (which) {
            case 0: return p.element_count();
            case 1: return filled ? static_cast<int>(p.elements.front().icon.family) : 0;
            case 2: return filled ? quantize_scale(p.elements.front().scale) - 1 : 0;
            default: return filled ? std::max(0, fill_gray_level(p.elements.front().fill)) : 0;
        }
    };
    auto position_of = [](const Panel& p) {
        std::vector<int> cells;
        for (const Element& e : p.elements) cells.push_back(e.cell);
        std::sort(cells.begin(), cells.end());
        cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
        return cells;
    };

    static const std::vector<std::string> scalar_rules = {
        "const_all",           "progression_plus:1",  "progression_plus:2",
        "progression_minus:1", "progression_minus:2", "arithmetic_plus",
        "arithmetic_minus",    "distribute_three",    "distribute_three_permuted"};
    static const std::vector<std::string> position_rules = {
        "const_all", "arithmetic_plus", "arithmetic_minus", "distribute_three",
        "distribute_three_permuted"};

    auto scalar_fit = [&](const std::string& rule, int which) {
        auto v = [&](int i) { return scalar_of(riddle.context[static_cast<size_t>(i)], which); };
        const std::string base = raven_rule_base(rule);
        if (base == "distribute_three" || base == "distribute_three_permuted") {
            const std::array<int, 3> row0{v(0), v(1), v(2)};
            for (int i = 1; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    if (i * 3 + j >= 8) continue;
                    if (v(i * 3 + j) != row0[static_cast<size_t>(raven_distribute_index(rule, i, j))])
                        return false;
                }
            return true;
        }
        if (base == "const_all" || base.rfind("progression", 0) == 0) {
            for (int row = 0; row < 3; ++row)
                for (int j = 1; j < 3; ++j) {
                    const int pos = row * 3 + j;
                    if (pos >= 8) continue;
                    if (v(pos) != raven_next_value(rule, v(pos - 1), v(pos - 1))) return false;
                }
            return true;
        }
        // arithmetic: third column from the first two
        for (int row = 0; row < 2; ++row)
            if (v(row * 3 + 2) != raven_next_value(rule, v(row * 3), v(row * 3 + 1))) return false;
        return true;
    };
    auto scalar_accept = [&](const std::string& rule, int which, const Panel& cand) {
        auto v = [&](int i) { return scalar_of(riddle.context[static_cast<size_t>(i)], which); };
        const std::string base = raven_rule_base(rule);
        int expected;
        if (base == "distribute_three" || base == "distribute_three_permuted")
            expected = v(raven_distribute_index(rule, 2, 2));
        else if (base == "arithmetic_plus" || base == "arithmetic_minus")
            expected = raven_next_value(rule, v(6), v(7));
        else
            expected = raven_next_value(rule, v(7), v(7));
        return scalar_of(cand, which) == expected;
    };
    auto position_fit = [&](const std::string& rule) {
        auto v = [&](int i) { return position_of(riddle.context[static_cast<size_t>(i)]); };
        if (rule == "distribute_three" || rule == "distribute_three_permuted") {
            const std::array<std::vector<int>, 3> row0{v(0), v(1), v(2)};
            for (int i = 1; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    if (i * 3 + j >= 8) continue;
                    if (v(i * 3 + j) != row0[static_cast<size_t>(raven_distribute_index(rule, i, j))])
                        return false;
                }
            return true;
        }
        if (rule == "const_all") {
            for (int pos = 1; pos < 8; ++pos)
                if (pos % 3 != 0 && v(pos) != v(pos - 1)) return false;
            return v(3) == v(0) || true;
        }
        for (int row = 0; row < 2; ++row)
            if (v(row * 3 + 2) != raven_next_position(rule, v(row * 3), v(row * 3 + 1)))
                return false;
        return true;
    };
    auto position_accept = [&](const std::string& rule, const Panel& cand) {
        auto v = [&](int i) { return position_of(riddle.context[static_cast<size_t>(i)]); };
        std::vector<int> expected;
        if (rule == "distribute_three" || rule == "distribute_three_permuted")
            expected = v(raven_distribute_index(rule, 2, 2));
        else if (rule == "const_all")
            expected = v(7);
        else
            expected = raven_next_position(rule, v(6), v(7));
        return position_of(cand) == expected;
    };

    std::array<std::vector<std::string>, 4> scalar_fits;
    for (int which = 0; which < 4; ++which)
        for (const std::string& rule : scalar_rules)
            if (scalar_fit(rule, which)) scalar_fits[static_cast<size_t>(which)].push_back(rule);
    std::vector<std::string> pos_fits;
    for (const std::string& rule : position_rules)
        if (position_fit(rule)) pos_fits.push_back(rule);

    std::vector<int> matched;
    for (size_t i = 0; i < riddle.options.size(); ++i) {
        const Panel& cand = riddle.options[i];
        bool ok = true;
        for (int which = 0; which < 4 && ok; ++which) {
            const auto& fits = scalar_fits[static_cast<size_t>(which)];
            if (fits.empty()) continue;
            bool any = false;
            for (const std::string& rule : fits)
                if (scalar_accept(rule, which, cand)) any = true;
            ok = any;
        }
        if (ok && !pos_fits.empty()) {
            bool any = false;
            for (const std::string& rule : pos_fits)
                if (position_accept(rule, cand)) any = true;
            ok = any;
        }
        if (ok) matched.push_back(static_cast<int>(i));
    }
    if (matched.empty()) return {SolveStatus::unsolvable, -1, {}};
    if (matched.size() > 1) return {SolveStatus::ambiguous, -1, {}};
    return {SolveStatus::solved, matched[0], RuleInstance{"const_all", {}}};
}

}  // namespace

SolveResult solve_symbolic(const SymbolicRiddle& riddle, RuleCategory category) {
    if (category == RuleCategory::sudoku)
        throw std::invalid_argument("solve_symbolic: sudoku riddles use the counting solver");
    if (category == RuleCategory::raven) return solve_raven_conjunctive(riddle);

    const Layout& layout = layout_by_id(riddle.layout_id);
    std::map<int, RuleInstance> selected;
    for (const RuleInstance& inst : enumerate_instances(category, layout.id)) {
        if (!fits_context(inst, layout, riddle.context)) continue;
        std::vector<int> matched;
        for (size_t i = 0; i < riddle.options.size(); ++i)
            if (consistent(inst, layout, riddle.context, riddle.options[i]))
                matched.push_back(static_cast<int>(i));
        if (matched.empty()) continue;
        if (matched.size() > 1) return {SolveStatus::ambiguous, -1, inst};
        selected.emplace(matched[0], inst);
    }
    if (selected.empty()) return {SolveStatus::unsolvable, -1, {}};
    if (selected.size() > 1) return {SolveStatus::ambiguous, -1, {}};
    return {SolveStatus::solved, selected.begin()->first, selected.begin()->second};
}

}  // namespace rsm
