#include "riddlesmith/sudoku.hpp"

#include <algorithm>

#include "riddlesmith/icon.hpp"

namespace rsm::sudoku {

namespace {

constexpr int kBox[81] = {
    0, 0, 0, 1, 1, 1, 2, 2, 2, 0, 0, 0, 1, 1, 1, 2, 2, 2, 0, 0, 0, 1, 1, 1, 2, 2, 2,
    3, 3, 3, 4, 4, 4, 5, 5, 5, 3, 3, 3, 4, 4, 4, 5, 5, 5, 3, 3, 3, 4, 4, 4, 5, 5, 5,
    6, 6, 6, 7, 7, 7, 8, 8, 8, 6, 6, 6, 7, 7, 7, 8, 8, 8, 6, 6, 6, 7, 7, 7, 8, 8, 8};

struct Masks {
    std::array<uint16_t, 9> row{}, col{}, box{};
    bool ok = true;

    explicit Masks(const SudokuGrid& g) {
        for (int i = 0; i < 81; ++i) {
            const int d = g.cells[static_cast<size_t>(i)];
            if (d == 0) continue;
            const uint16_t bit = static_cast<uint16_t>(1u << (d - 1));
            const int r = i / 9, c = i % 9, b = kBox[i];
            if ((row[static_cast<size_t>(r)] | col[static_cast<size_t>(c)] |
                 box[static_cast<size_t>(b)]) &
                bit) {
                // duplicate in a house: contradictory grid
                if (row[static_cast<size_t>(r)] & bit) ok = false;
                if (col[static_cast<size_t>(c)] & bit) ok = false;
                if (box[static_cast<size_t>(b)] & bit) ok = false;
            }
            row[static_cast<size_t>(r)] |= bit;
            col[static_cast<size_t>(c)] |= bit;
            box[static_cast<size_t>(b)] |= bit;
        }
    }

    uint16_t candidates(int cell) const {
        const int r = cell / 9, c = cell % 9, b = kBox[cell];
        return static_cast<uint16_t>(
            0x1FF & ~(row[static_cast<size_t>(r)] | col[static_cast<size_t>(c)] |
                      box[static_cast<size_t>(b)]));
    }
    void place(int cell, int d) {
        const uint16_t bit = static_cast<uint16_t>(1u << (d - 1));
        row[static_cast<size_t>(cell / 9)] |= bit;
        col[static_cast<size_t>(cell % 9)] |= bit;
        box[static_cast<size_t>(kBox[cell])] |= bit;
    }
    void unplace(int cell, int d) {
        const uint16_t bit = static_cast<uint16_t>(1u << (d - 1));
        row[static_cast<size_t>(cell / 9)] ^= bit;
        col[static_cast<size_t>(cell % 9)] ^= bit;
        box[static_cast<size_t>(kBox[cell])] ^= bit;
    }
};

// MRV cell, ascending digits; counts solutions up to cap.
void search(SudokuGrid& g, Masks& m, int cap, int& count, std::optional<SudokuGrid>& first) {
    if (count >= cap) return;
    int best = -1, best_n = 10;
    for (int i = 0; i < 81; ++i) {
        if (g.cells[static_cast<size_t>(i)] != 0) continue;
        const int n = std::popcount(static_cast<unsigned>(m.candidates(i)));
        if (n == 0) return;
        if (n < best_n) {
            best_n = n;
            best = i;
            if (n == 1) break;
        }
    }
    if (best < 0) {
        ++count;
        if (!first) {
            SudokuGrid solved = g;
            solved.role = SudokuGrid::Role::solution;
            first = solved;
        }
        return;
    }
    const uint16_t cands = m.candidates(best);
    for (int d = 1; d <= 9; ++d) {
        if (!(cands & (1u << (d - 1)))) continue;
        g.cells[static_cast<size_t>(best)] = static_cast<uint8_t>(d);
        m.place(best, d);
        search(g, m, cap, count, first);
        m.unplace(best, d);
        g.cells[static_cast<size_t>(best)] = 0;
        if (count >= cap) return;
    }
}

// Random complete grid: backtracking fill with stream-shuffled digit order.
bool fill_full(SudokuGrid& g, Masks& m, int cell, RngStream& rng) {
    if (cell == 81) return true;
    if (g.cells[static_cast<size_t>(cell)] != 0) return fill_full(g, m, cell + 1, rng);
    const uint16_t cands = m.candidates(cell);
    std::vector<int> digits;
    for (int d = 1; d <= 9; ++d)
        if (cands & (1u << (d - 1))) digits.push_back(d);
    rng.shuffle(digits);
    for (int d : digits) {
        g.cells[static_cast<size_t>(cell)] = static_cast<uint8_t>(d);
        m.place(cell, d);
        if (fill_full(g, m, cell + 1, rng)) return true;
        m.unplace(cell, d);
        g.cells[static_cast<size_t>(cell)] = 0;
    }
    return false;
}

}  // namespace

int SudokuGrid::given_count() const {
    int n = 0;
    for (uint8_t d : cells)
        if (d != 0) ++n;
    return n;
}

SolveOutcome solve_count(const SudokuGrid& grid, int cap) {
    if (cap < 1) throw std::invalid_argument("solve_count: cap must be >= 1");
    Masks m(grid);
    if (!m.ok) return {std::nullopt, 0};
    SudokuGrid work = grid;
    SolveOutcome out;
    search(work, m, cap, out.count, out.solution);
    return out;
}

SudokuRiddle generate_puzzle(RngStream& rng, int givens) {
    if (givens < 17 || givens > 81)
        throw std::invalid_argument("generate_puzzle: givens must be within 17..81");
    for (int restart = 0; restart < 100; ++restart) {
        SudokuGrid full{};
        full.role = SudokuGrid::Role::solution;
        Masks m(full);
        if (!fill_full(full, m, 0, rng)) continue;

        SudokuGrid puzzle = full;
        puzzle.role = SudokuGrid::Role::puzzle;
        std::vector<int> order(81);
        for (int i = 0; i < 81; ++i) order[static_cast<size_t>(i)] = i;
        rng.shuffle(order);
        int remaining = 81;
        for (int cell : order) {
            if (remaining <= givens) break;
            const uint8_t digit = puzzle.cells[static_cast<size_t>(cell)];
            puzzle.cells[static_cast<size_t>(cell)] = 0;
            if (solve_count(puzzle, 2).count == 1)
                --remaining;
            else
                puzzle.cells[static_cast<size_t>(cell)] = digit;  // dig broke uniqueness
        }
        if (remaining == givens) return {puzzle, full, givens};
    }
    throw GenerationExhausted("sudoku generation: retry budget exhausted at givens=" +
                              std::to_string(givens));
}

AnswerKey to_answer(const SudokuGrid& solution) {
    if (solution.role != SudokuGrid::Role::solution)
        throw std::invalid_argument("to_answer: grid is not a solution");
    std::string digits;
    digits.reserve(81);
    for (uint8_t d : solution.cells) {
        if (d == 0) throw std::invalid_argument("to_answer: solution contains blanks");
        digits.push_back(static_cast<char>('0' + d));
    }
    return AnswerKey::grid(std::move(digits));
}

SudokuGrid grid_from_answer(const std::string& digits81) {
    if (digits81.size() != 81) throw std::invalid_argument("grid answer must be 81 chars");
    SudokuGrid g{};
    g.role = SudokuGrid::Role::solution;
    for (size_t i = 0; i < 81; ++i) {
        if (digits81[i] < '1' || digits81[i] > '9')
            throw std::invalid_argument("grid answer digit out of 1..9");
        g.cells[i] = static_cast<uint8_t>(digits81[i] - '0');
    }
    return g;
}

bool valid_solution(const SudokuGrid& grid) {
    for (uint8_t d : grid.cells)
        if (d < 1 || d > 9) return false;
    auto house_ok = [&](const std::array<int, 9>& cells) {
        uint16_t mask = 0;
        for (int i : cells) mask |= static_cast<uint16_t>(1u << (grid.cells[static_cast<size_t>(i)] - 1));
        return mask == 0x1FF;
    };
    for (int r = 0; r < 9; ++r) {
        std::array<int, 9> row{}, col{};
        for (int i = 0; i < 9; ++i) {
            row[static_cast<size_t>(i)] = r * 9 + i;
            col[static_cast<size_t>(i)] = i * 9 + r;
        }
        if (!house_ok(row) || !house_ok(col)) return false;
    }
    for (int b = 0; b < 9; ++b) {
        std::array<int, 9> box{};
        int at = 0;
        for (int i = 0; i < 81; ++i)
            if (kBox[i] == b) box[static_cast<size_t>(at++)] = i;
        if (!house_ok(box)) return false;
    }
    return true;
}

Panel puzzle_panel(const SudokuGrid& puzzle) {
    Panel p;
    p.grid = CellGrid{9, 9, false};
    for (int i = 0; i < 81; ++i) {
        const uint8_t d = puzzle.cells[static_cast<size_t>(i)];
        if (d == 0) continue;
        const Icon& glyph = builtin_icon("#digit/" + std::to_string(d));
        Element e;
        e.icon_id = glyph.id;
        e.icon = glyph.attrs();
        e.cell = i;
        e.fill = Fill::black;
        p.elements.push_back(e);
    }
    return p;
}

}  // namespace rsm::sudoku
