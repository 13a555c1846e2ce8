#include <algorithm>
#include <array>
#include <optional>
#include <set>

#include "rules_internal.hpp"

namespace rsm::detail {

namespace {

// ---------------------------------------------------------------- stacks

bool is_stack_panel(const Panel& p) {
    if (p.elements.empty()) return false;
    for (const Element& e : p.elements)
        if (e.icon_id != "#cube") return false;
    return true;
}

std::vector<int> heights_of(const Panel& p) {
    std::vector<int> h(static_cast<size_t>(p.grid.cell_count()), 0);
    for (const Element& e : p.elements) ++h[static_cast<size_t>(e.cell)];
    return h;
}

Panel stack_panel(const CellGrid& grid, const std::vector<int>& heights) {
    Panel p = make_panel(grid);
    const Icon& cube = builtin_icon("#cube");
    for (int cell = 0; cell < grid.cell_count(); ++cell)
        for (int z = 0; z < heights[static_cast<size_t>(cell)]; ++z)
            p.elements.push_back(elem(cube, cell, Fill::white));
    return p;
}

int stack_total(const Panel& p) { return p.element_count(); }

// Cubes the isometric view cannot show: buried under the top of their own
// stack and walled off by both viewer-side neighbors.
int hidden_cubes(const std::vector<int>& h, int rows, int cols) {
    int hidden = 0;
    for (int r = 0; r + 1 < rows; ++r)
        for (int c = 0; c + 1 < cols; ++c) {
            const int hh = h[static_cast<size_t>(r * cols + c)];
            for (int z = 0; z + 1 < hh; ++z)
                if (h[static_cast<size_t>((r + 1) * cols + c)] >= z + 1 &&
                    h[static_cast<size_t>(r * cols + c + 1)] >= z + 1)
                    ++hidden;
        }
    return hidden;
}

int hidden_in_panel(const Panel& p) {
    return hidden_cubes(heights_of(p), p.grid.rows, p.grid.cols);
}

// All-visible stack with the exact total: tall stacks only on the viewer-side
// border, interior capped at one cube.
std::vector<int> sample_visible_heights(const CellGrid& grid, int total, RngStream& rng) {
    for (int attempt = 0; attempt < 256; ++attempt) {
        std::vector<int> h(static_cast<size_t>(grid.cell_count()), 0);
        int placed = 0;
        int guard = 0;
        while (placed < total && ++guard < 1024) {
            const int cell = static_cast<int>(rng.below(static_cast<uint64_t>(grid.cell_count())));
            const int r = cell / grid.cols, c = cell % grid.cols;
            const bool border = (r == grid.rows - 1) || (c == grid.cols - 1);
            const int cap = border ? 3 : 1;
            if (h[static_cast<size_t>(cell)] < cap) {
                ++h[static_cast<size_t>(cell)];
                ++placed;
            }
        }
        if (placed == total && hidden_cubes(h, grid.rows, grid.cols) == 0) return h;
    }
    throw NoViableIconError("stack sampler: could not build an all-visible stack");
}

// Stack with the exact total and at least one hidden cube.
std::vector<int> sample_hidden_heights(const CellGrid& grid, int total, RngStream& rng) {
    for (int attempt = 0; attempt < 256; ++attempt) {
        std::vector<int> h(static_cast<size_t>(grid.cell_count()), 0);
        const int r = static_cast<int>(rng.below(static_cast<uint64_t>(grid.rows - 1)));
        const int c = static_cast<int>(rng.below(static_cast<uint64_t>(grid.cols - 1)));
        h[static_cast<size_t>(r * grid.cols + c)] = 2;
        h[static_cast<size_t>((r + 1) * grid.cols + c)] = 1;
        h[static_cast<size_t>(r * grid.cols + c + 1)] = 1;
        int placed = 4;
        int guard = 0;
        while (placed < total && ++guard < 1024) {
            const int cell = static_cast<int>(rng.below(static_cast<uint64_t>(grid.cell_count())));
            if (h[static_cast<size_t>(cell)] < 3) {
                ++h[static_cast<size_t>(cell)];
                ++placed;
            }
        }
        if (placed == total && hidden_cubes(h, grid.rows, grid.cols) >= 1) return h;
    }
    throw NoViableIconError("stack sampler: could not build a stack with hidden cubes");
}

// Deterministic cube additions/removals for the pure continuation.
std::vector<int> adjust_heights(std::vector<int> h, const CellGrid& grid, int delta) {
    while (delta > 0) {
        bool done = false;
        for (int cell = 0; cell < grid.cell_count() && !done; ++cell)
            if (h[static_cast<size_t>(cell)] > 0 && h[static_cast<size_t>(cell)] < 3) {
                ++h[static_cast<size_t>(cell)];
                done = true;
            }
        if (!done)
            for (int cell = 0; cell < grid.cell_count() && !done; ++cell)
                if (h[static_cast<size_t>(cell)] == 0) {
                    h[static_cast<size_t>(cell)] = 1;
                    done = true;
                }
        if (!done) break;
        --delta;
    }
    while (delta < 0) {
        bool done = false;
        for (int cell = grid.cell_count() - 1; cell >= 0 && !done; --cell)
            if (h[static_cast<size_t>(cell)] > 0) {
                --h[static_cast<size_t>(cell)];
                done = true;
            }
        if (!done) break;
        ++delta;
    }
    return h;
}

class StackCountRule : public RuleLogic {
public:
    StackCountRule(SubRule meta, bool require_hidden, int lo, int hi)
        : RuleLogic(std::move(meta), RuleShape::chain),
          require_hidden_(require_hidden),
          lo_(lo),
          hi_(hi) {}

    Panel continue_group(const RuleInstance& inst, const Layout& layout,
                         std::span<const Panel> prefix) const override {
        const int step = param_int(inst.params, "step");
        auto h = adjust_heights(heights_of(prefix.back()), layout.cell_grid, step);
        return stack_panel(layout.cell_grid, h);
    }

    bool matches(const RuleInstance& inst, const Layout&, std::span<const Panel> prefix,
                 const Panel& candidate) const override {
        const int target = stack_total(prefix.back()) + param_int(inst.params, "step");
        if (target < lo_ || target > hi_) return false;
        return panel_in_domain(candidate) && stack_total(candidate) == target;
    }

    bool group_valid(const RuleInstance&, const Layout&,
                     std::span<const Panel> group) const override {
        for (const Panel& p : group) {
            if (!panel_in_domain(p)) return false;
            const int v = stack_total(p);
            if (v < lo_ || v > hi_) return false;
        }
        return true;
    }

    std::vector<Panel> sample_seeds(const RuleInstance& inst, const Layout& layout,
                                    const IconPool&, RngStream& rng) const override {
        const int step = param_int(inst.params, "step");
        std::vector<Panel> seeds;
        for (const auto& g : rule_groups(shape(), layout)) {
            const int span = (static_cast<int>(g.size()) - 1) * std::abs(step);
            const int start = static_cast<int>(
                rng.range(step > 0 ? lo_ : lo_ + span, step > 0 ? hi_ - span : hi_));
            seeds.push_back(sample_total(layout, start, rng));
        }
        return seeds;
    }

    Panel make_correct(const RuleInstance& inst, const Layout& layout,
                       std::span<const Panel> context, const IconPool&,
                       RngStream& rng) const override {
        const int target = stack_total(context.back()) + param_int(inst.params, "step");
        return sample_total(layout, target, rng);
    }

    Panel perturb(const RuleInstance&, const Layout& layout, const Panel& correct,
                  const IconPool&, RngStream& rng) const override {
        const int v = stack_total(correct);
        int other = v;
        while (other == v) other = static_cast<int>(rng.range(lo_, hi_));
        return sample_total(layout, other, rng);
    }

    Panel resample(const RuleInstance& inst, const Layout& layout, std::span<const Panel>,
                   const Panel& correct, const IconPool& pool, RngStream& rng) const override {
        return perturb(inst, layout, correct, pool, rng);
    }

private:
    bool panel_in_domain(const Panel& p) const {
        if (!is_stack_panel(p)) return false;
        return require_hidden_ ? hidden_in_panel(p) >= 1 : hidden_in_panel(p) == 0;
    }
    Panel sample_total(const Layout& layout, int total, RngStream& rng) const {
        return stack_panel(layout.cell_grid,
                           require_hidden_ ? sample_hidden_heights(layout.cell_grid, total, rng)
                                           : sample_visible_heights(layout.cell_grid, total, rng));
    }

    bool require_hidden_;
    int lo_, hi_;
};

class StackRotationRule : public RuleLogic {
public:
    StackRotationRule()
        : RuleLogic(SubRule{"stack_rotation_90",
                            RuleCategory::spatial,
                            {{"dir", {"cw", "ccw"}}},
                            1,
                            {"row5_cells"}},
                    RuleShape::chain) {}

    Panel continue_group(const RuleInstance& inst, const Layout& layout,
                         std::span<const Panel> prefix) const override {
        const auto h = heights_of(prefix.back());
        const int n = layout.cell_grid.rows;  // square grid
        std::vector<int> out(h.size());
        const bool cw = param_str(inst.params, "dir") == "cw";
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                out[static_cast<size_t>(r * n + c)] =
                    cw ? h[static_cast<size_t>((n - 1 - c) * n + r)]
                       : h[static_cast<size_t>(c * n + (n - 1 - r))];
        return stack_panel(layout.cell_grid, out);
    }

    bool group_valid(const RuleInstance&, const Layout&,
                     std::span<const Panel> group) const override {
        for (const Panel& p : group)
            if (!is_stack_panel(p)) return false;
        return true;
    }

    std::vector<Panel> sample_seeds(const RuleInstance& inst, const Layout& layout,
                                    const IconPool&, RngStream& rng) const override {
        std::vector<Panel> seeds;
        for (size_t g = 0; g < rule_groups(shape(), layout).size(); ++g) {
            for (int attempt = 0;; ++attempt) {
                if (attempt >= 128)
                    throw NoViableIconError("stack_rotation: no asymmetric stack found");
                std::vector<int> h(static_cast<size_t>(layout.cell_grid.cell_count()), 0);
                for (int cell :
                     sample_distinct_cells(static_cast<int>(rng.range(3, 6)),
                                           layout.cell_grid.cell_count(), rng))
                    h[static_cast<size_t>(cell)] = static_cast<int>(rng.range(1, 3));
                Panel p = stack_panel(layout.cell_grid, h);
                std::vector<Panel> prefix{p};
                if (!panels_equivalent(p, continue_group(inst, layout, prefix))) {
                    seeds.push_back(std::move(p));
                    break;
                }
            }
        }
        return seeds;
    }
};

// ------------------------------------------------------------------ nets

struct NetShape {
    const char* name;
    std::array<int, 6> cells;  // indices into the 4x3 grid, ascending
};

constexpr NetShape kNetShapes[3] = {
    {"cross", {1, 3, 4, 5, 7, 10}},
    {"tee", {0, 1, 2, 4, 7, 10}},
    {"zig", {0, 3, 4, 7, 8, 11}},
};

struct Vec3 {
    int x, y, z;
    bool operator==(const Vec3&) const = default;
};

// Die state: direction vector of each logical face. Axes pair opposite faces:
// (0,1), (2,3), (4,5).
using DieState = std::array<Vec3, 6>;

DieState initial_die() {
    return {Vec3{0, 0, 1}, Vec3{0, 0, -1}, Vec3{0, 1, 0},
            Vec3{0, -1, 0}, Vec3{1, 0, 0},  Vec3{-1, 0, 0}};
}

Vec3 roll_map(const Vec3& v, int dr, int dc) {
    if (dc == 1) return {v.z, v.y, -v.x};   // east
    if (dc == -1) return {-v.z, v.y, v.x};  // west
    if (dr == 1) return {v.x, v.z, -v.y};   // south
    return {v.x, -v.z, v.y};                // north
}

// Rolls a die over the net; face of a cell = the face touching it.
std::array<int, 12> fold_net(const NetShape& shape) {
    std::array<int, 12> face_at{};
    face_at.fill(-1);
    std::array<bool, 12> in_net{};
    for (int cell : shape.cells) in_net[static_cast<size_t>(cell)] = true;

    std::vector<std::pair<int, DieState>> frontier;
    frontier.emplace_back(shape.cells[0], initial_die());
    auto down_face = [](const DieState& die) {
        for (int f = 0; f < 6; ++f)
            if (die[static_cast<size_t>(f)] == Vec3{0, 0, -1}) return f;
        return -1;
    };
    face_at[static_cast<size_t>(shape.cells[0])] = down_face(frontier[0].second);
    size_t at = 0;
    while (at < frontier.size()) {
        auto [cell, die] = frontier[at++];
        const int r = cell / 3, c = cell % 3;
        static constexpr int dirs[4][2] = {{0, 1}, {1, 0}, {0, -1}, {-1, 0}};
        for (auto [dr, dc] : dirs) {
            const int nr = r + dr, nc = c + dc;
            if (nr < 0 || nr >= 4 || nc < 0 || nc >= 3) continue;
            const int next = nr * 3 + nc;
            if (!in_net[static_cast<size_t>(next)] || face_at[static_cast<size_t>(next)] >= 0)
                continue;
            DieState rolled;
            for (int f = 0; f < 6; ++f)
                rolled[static_cast<size_t>(f)] = roll_map(die[static_cast<size_t>(f)], dr, dc);
            face_at[static_cast<size_t>(next)] = down_face(rolled);
            frontier.emplace_back(next, rolled);
        }
    }
    return face_at;
}

const std::array<int, 12>& folded(const NetShape& shape) {
    static const std::array<std::array<int, 12>, 3> all = {
        fold_net(kNetShapes[0]), fold_net(kNetShapes[1]), fold_net(kNetShapes[2])};
    for (int i = 0; i < 3; ++i)
        if (&kNetShapes[i] == &shape) return all[static_cast<size_t>(i)];
    return all[0];
}

// Attr key -> glyph index for the six face marks.
int glyph_index(const Element& e) {
    for (int k = 0; k < 6; ++k)
        if (element_attr_key(e) ==
            element_attr_key(elem(builtin_icon("#face/" + std::to_string(k)), e.cell)))
            return k;
    return -1;
}

constexpr int kViewCells[3] = {1, 3, 5};  // top, left, right slots

// face glyphs of a net panel, or empty when the panel is not a valid net
std::pair<const NetShape*, std::array<int, 6>> parse_net(const Panel& p) {
    std::vector<int> cells;
    for (const Element& e : p.elements) cells.push_back(e.cell);
    std::sort(cells.begin(), cells.end());
    const NetShape* shape = nullptr;
    for (const NetShape& s : kNetShapes)
        if (cells.size() == 6 && std::equal(cells.begin(), cells.end(), s.cells.begin()))
            shape = &s;
    std::array<int, 6> glyph_of_face{};
    glyph_of_face.fill(-1);
    if (!shape || p.element_count() != 6) return {nullptr, glyph_of_face};
    const auto& faces = folded(*shape);
    for (const Element& e : p.elements) {
        const int g = glyph_index(e);
        const int f = faces[static_cast<size_t>(e.cell)];
        if (g < 0 || f < 0) return {nullptr, glyph_of_face};
        glyph_of_face[static_cast<size_t>(f)] = g;
    }
    for (int g : glyph_of_face)
        if (g < 0) return {nullptr, glyph_of_face};
    return {shape, glyph_of_face};
}

Panel view_panel(const CellGrid& grid, const std::array<int, 6>& glyph_of_face, int corner) {
    // corner bits select one face per axis; slots: axis0 top, axis1 left, axis2 right
    const int faces[3] = {(corner & 1), 2 + ((corner >> 1) & 1), 4 + ((corner >> 2) & 1)};
    Panel p = make_panel(grid);
    for (int slot = 0; slot < 3; ++slot)
        p.elements.push_back(
            elem(builtin_icon("#face/" +
                              std::to_string(glyph_of_face[static_cast<size_t>(faces[slot])])),
                 kViewCells[slot]));
    return p;
}

class NetToCubeRule : public RuleLogic {
public:
    NetToCubeRule()
        : RuleLogic(SubRule{"net_to_cube_face_adjacency",
                            RuleCategory::spatial,
                            {{"corner", {"0", "1", "2", "3", "4", "5", "6", "7"}}},
                            3,
                            {"row4_cells"}},
                    RuleShape::pair) {}

    Panel continue_group(const RuleInstance& inst, const Layout& layout,
                         std::span<const Panel> prefix) const override {
        auto [shape, glyphs] = parse_net(prefix.front());
        if (!shape) throw std::invalid_argument("net rule: context panel is not a valid net");
        return view_panel(layout.cell_grid, glyphs, param_int(inst.params, "corner"));
    }

    bool group_valid(const RuleInstance&, const Layout&,
                     std::span<const Panel> group) const override {
        return parse_net(group.front()).first != nullptr;
    }

    std::vector<Panel> sample_seeds(const RuleInstance&, const Layout& layout,
                                    const IconPool&, RngStream& rng) const override {
        const NetShape& shape = kNetShapes[rng.below(3)];
        std::vector<int> perm1{0, 1, 2, 3, 4, 5};
        rng.shuffle(perm1);
        std::vector<int> perm2 = perm1;
        while (perm2 == perm1) rng.shuffle(perm2);
        std::vector<Panel> seeds;
        for (const auto& perm : {perm1, perm2}) {
            Panel p = make_panel(layout.cell_grid);
            const auto& faces = folded(shape);
            for (int cell : shape.cells)
                p.elements.push_back(elem(
                    builtin_icon("#face/" +
                                 std::to_string(
                                     perm[static_cast<size_t>(faces[static_cast<size_t>(cell)])])),
                    cell));
            seeds.push_back(std::move(p));
        }
        return seeds;
    }

    Panel perturb(const RuleInstance&, const Layout&, const Panel& correct, const IconPool&,
                  RngStream& rng) const override {
        Panel p = correct;
        Element& e = p.elements[rng.below(p.elements.size())];
        const int current = glyph_index(e);
        int next = current;
        while (next == current) next = static_cast<int>(rng.below(6));
        const Element fresh = elem(builtin_icon("#face/" + std::to_string(next)), e.cell);
        e = fresh;
        return p;
    }

    Panel resample(const RuleInstance&, const Layout& layout, std::span<const Panel>,
                   const Panel&, const IconPool&, RngStream& rng) const override {
        std::vector<int> glyphs{0, 1, 2, 3, 4, 5};
        rng.shuffle(glyphs);
        Panel p = make_panel(layout.cell_grid);
        for (int slot = 0; slot < 3; ++slot)
            p.elements.push_back(
                elem(builtin_icon("#face/" + std::to_string(glyphs[static_cast<size_t>(slot)])),
                     kViewCells[slot]));
        return p;
    }
};

// ------------------------------------------------------------- polyominoes

using Cells = std::vector<std::pair<int, int>>;  // (row, col), sorted

Cells normalize(Cells cells) {
    int min_r = 1 << 20, min_c = 1 << 20;
    for (auto& [r, c] : cells) {
        min_r = std::min(min_r, r);
        min_c = std::min(min_c, c);
    }
    for (auto& [r, c] : cells) {
        r -= min_r;
        c -= min_c;
    }
    std::sort(cells.begin(), cells.end());
    return cells;
}

Cells rotate_cw(const Cells& cells) {
    int max_r = 0;
    for (auto& [r, c] : cells) max_r = std::max(max_r, r);
    Cells out;
    for (auto& [r, c] : cells) out.emplace_back(c, max_r - r);
    return normalize(std::move(out));
}

bool cells_connected(const Cells& cells) {
    if (cells.empty()) return false;
    std::set<std::pair<int, int>> todo(cells.begin(), cells.end());
    std::vector<std::pair<int, int>> frontier{*todo.begin()};
    todo.erase(todo.begin());
    while (!frontier.empty()) {
        auto [r, c] = frontier.back();
        frontier.pop_back();
        for (auto [dr, dc] : {std::pair{0, 1}, {0, -1}, {1, 0}, {-1, 0}}) {
            auto it = todo.find({r + dr, c + dc});
            if (it != todo.end()) {
                frontier.push_back(*it);
                todo.erase(it);
            }
        }
    }
    return todo.empty();
}

// Can pieces a and b (rotations + translations, no flips) tile the target?
bool pieces_tile(const Cells& target, const Cells& a, const Cells& b) {
    if (a.size() + b.size() != target.size()) return false;
    std::set<std::pair<int, int>> target_set(target.begin(), target.end());
    std::vector<Cells> b_forms;
    Cells bf = normalize(b);
    for (int k = 0; k < 4; ++k) {
        if (std::find(b_forms.begin(), b_forms.end(), bf) == b_forms.end()) b_forms.push_back(bf);
        bf = rotate_cw(bf);
    }
    Cells af = normalize(a);
    for (int rot = 0; rot < 4; ++rot, af = rotate_cw(af)) {
        for (const auto& [ar, ac] : target) {
            // anchor af's first cell at each target cell
            const int dr = ar - af[0].first, dc = ac - af[0].second;
            bool inside = true;
            for (const auto& [r, c] : af)
                if (!target_set.count({r + dr, c + dc})) {
                    inside = false;
                    break;
                }
            if (!inside) continue;
            Cells rest;
            std::set<std::pair<int, int>> placed;
            for (const auto& [r, c] : af) placed.insert({r + dr, c + dc});
            for (const auto& cell : target)
                if (!placed.count(cell)) rest.push_back(cell);
            const Cells rest_norm = normalize(std::move(rest));
            for (const Cells& form : b_forms)
                if (form == rest_norm) return true;
        }
    }
    return false;
}

Cells cells_of(const Panel& p, Fill fill) {
    Cells out;
    for (const Element& e : p.elements)
        if (e.fill == fill) out.emplace_back(e.cell / p.grid.cols, e.cell % p.grid.cols);
    std::sort(out.begin(), out.end());
    return out;
}

Panel cells_panel(const CellGrid& grid, const Cells& black, const Cells& hatched) {
    Panel p = make_panel(grid);
    const Icon& sq = builtin_icon("#pcell");
    for (const auto& [r, c] : black) p.elements.push_back(elem(sq, r * grid.cols + c, Fill::black));
    for (const auto& [r, c] : hatched)
        p.elements.push_back(elem(sq, r * grid.cols + c, Fill::hatched));
    canonicalize(p);
    return p;
}

// Deterministic connected bipartition: BFS growth from the first cell with a
// lowest-index frontier; target sizes fan out from the half split until both
// halves come out connected.
std::pair<Cells, Cells> canonical_split(const Cells& target) {
    const int n = static_cast<int>(target.size());
    std::set<std::pair<int, int>> target_set(target.begin(), target.end());
    auto try_size = [&](int ka) -> std::optional<std::pair<Cells, Cells>> {
        if (ka < 1 || ka >= n) return std::nullopt;
        Cells a;
        std::set<std::pair<int, int>> in_a;
        std::set<std::pair<int, int>> frontier{target[0]};
        while (static_cast<int>(a.size()) < ka && !frontier.empty()) {
            auto cell = *frontier.begin();
            frontier.erase(frontier.begin());
            in_a.insert(cell);
            a.push_back(cell);
            for (auto [dr, dc] : {std::pair{0, 1}, {0, -1}, {1, 0}, {-1, 0}}) {
                const std::pair<int, int> next{cell.first + dr, cell.second + dc};
                if (target_set.count(next) && !in_a.count(next)) frontier.insert(next);
            }
        }
        if (static_cast<int>(a.size()) != ka) return std::nullopt;
        Cells b;
        for (const auto& cell : target)
            if (!in_a.count(cell)) b.push_back(cell);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (cells_connected(a) && cells_connected(b)) return std::make_pair(a, b);
        return std::nullopt;
    };
    for (int off = 0; off <= n; ++off)
        for (int ka : {n / 2 + off, n / 2 - off}) {
            if (auto split = try_size(ka)) return *split;
            if (off == 0) break;
        }
    Cells a{target.back()};
    Cells b(target.begin(), target.end() - 1);
    return {a, b};
}

Cells random_polyomino(const CellGrid& grid, int size, RngStream& rng) {
    while (true) {
        std::set<std::pair<int, int>> cells;
        std::pair<int, int> at{static_cast<int>(rng.below(static_cast<uint64_t>(grid.rows))),
                               static_cast<int>(rng.below(static_cast<uint64_t>(grid.cols)))};
        cells.insert(at);
        int guard = 0;
        while (static_cast<int>(cells.size()) < size && ++guard < 256) {
            std::vector<std::pair<int, int>> frontier;
            for (const auto& [r, c] : cells)
                for (auto [dr, dc] : {std::pair{0, 1}, {0, -1}, {1, 0}, {-1, 0}}) {
                    const int nr = r + dr, nc = c + dc;
                    if (nr >= 0 && nr < grid.rows && nc >= 0 && nc < grid.cols &&
                        !cells.count({nr, nc}))
                        frontier.emplace_back(nr, nc);
                }
            if (frontier.empty()) break;
            cells.insert(frontier[rng.below(frontier.size())]);
        }
        if (static_cast<int>(cells.size()) == size) return Cells(cells.begin(), cells.end());
    }
}

class PieceAssemblyRule : public RuleLogic {
public:
    PieceAssemblyRule()
        : RuleLogic(SubRule{"piece_assembly",
                            RuleCategory::spatial,
                            {},
                            3,
                            {"row4_cells"}},
                    RuleShape::pair) {}

    Panel continue_group(const RuleInstance&, const Layout& layout,
                         std::span<const Panel> prefix) const override {
        const Cells target = cells_of(prefix.front(), Fill::black);
        auto [a, b] = canonical_split(target);
        return cells_panel(layout.cell_grid, a, b);
    }

    bool matches(const RuleInstance&, const Layout&, std::span<const Panel> prefix,
                 const Panel& candidate) const override {
        const Cells target = cells_of(prefix.front(), Fill::black);
        const Cells a = cells_of(candidate, Fill::black);
        const Cells b = cells_of(candidate, Fill::hatched);
        if (a.empty() || b.empty()) return false;
        if (a.size() + b.size() != candidate.elements.size()) return false;
        if (!cells_connected(a) || !cells_connected(b)) return false;
        return pieces_tile(target, a, b);
    }

    bool group_valid(const RuleInstance&, const Layout&,
                     std::span<const Panel> group) const override {
        const Cells target = cells_of(group.front(), Fill::black);
        return target.size() >= 4 &&
               target.size() == group.front().elements.size() && cells_connected(target);
    }

    std::vector<Panel> sample_seeds(const RuleInstance&, const Layout& layout,
                                    const IconPool&, RngStream& rng) const override {
        std::vector<Panel> seeds;
        for (size_t g = 0; g < rule_groups(shape(), layout).size(); ++g) {
            const Cells target =
                random_polyomino(layout.cell_grid, static_cast<int>(rng.range(6, 9)), rng);
            seeds.push_back(cells_panel(layout.cell_grid, target, {}));
        }
        return seeds;
    }

    Panel perturb(const RuleInstance&, const Layout& layout, const Panel& correct,
                  const IconPool&, RngStream& rng) const override {
        // move one piece cell to a free spot
        Panel p = correct;
        std::set<int> used;
        for (const Element& e : p.elements) used.insert(e.cell);
        std::vector<int> free;
        for (int cell = 0; cell < layout.cell_grid.cell_count(); ++cell)
            if (!used.count(cell)) free.push_back(cell);
        if (!free.empty()) {
            Element& e = p.elements[rng.below(p.elements.size())];
            e.cell = free[rng.below(free.size())];
        }
        canonicalize(p);
        return p;
    }

    Panel resample(const RuleInstance&, const Layout& layout, std::span<const Panel>,
                   const Panel& correct, const IconPool&, RngStream& rng) const override {
        const int total = static_cast<int>(correct.elements.size());
        const int ka = std::max(2, static_cast<int>(rng.range(2, total - 2)));
        const Cells a = random_polyomino(layout.cell_grid, ka, rng);
        Cells b;
        std::set<std::pair<int, int>> taken(a.begin(), a.end());
        for (int attempt = 0; attempt < 64 && b.empty(); ++attempt) {
            Cells cand = random_polyomino(layout.cell_grid, total - ka, rng);
            bool overlap = false;
            for (const auto& cell : cand)
                if (taken.count(cell)) overlap = true;
            if (!overlap) b = cand;
        }
        if (b.empty()) return perturb({}, layout, correct, IconPool{}, rng);
        return cells_panel(layout.cell_grid, a, b);
    }
};

}  // namespace

std::vector<std::unique_ptr<RuleLogic>> make_spatial_rules() {
    std::vector<std::unique_ptr<RuleLogic>> rules;
    rules.push_back(std::make_unique<StackCountRule>(
        SubRule{"isometric_block_count",
                RuleCategory::spatial,
                {{"step", {"-1", "1", "2"}}},
                1,
                {"row5_cells"}},
        false, 3, 14));
    rules.push_back(std::make_unique<StackCountRule>(
        SubRule{"hidden_block_inference",
                RuleCategory::spatial,
                {{"step", {"1", "2"}}},
                1,
                {"row5_cells"}},
        true, 6, 16));
    rules.push_back(std::make_unique<NetToCubeRule>());
    rules.push_back(std::make_unique<StackRotationRule>());
    rules.push_back(std::make_unique<PieceAssemblyRule>());
    return rules;
}

}  // namespace rsm::detail
