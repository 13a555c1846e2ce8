#pragma once
#include <array>
#include <optional>

#include "riddlesmith/rng.hpp"
#include "riddlesmith/types.hpp"

namespace rsm::sudoku {

struct SudokuGrid {
    enum class Role { puzzle, solution };
    std::array<uint8_t, 81> cells{};  // 0 = blank, 1..9 otherwise
    Role role = Role::puzzle;

    uint8_t at(int row, int col) const { return cells[row * 9 + col]; }
    void set(int row, int col, uint8_t digit) { cells[row * 9 + col] = digit; }
    int given_count() const;
    bool operator==(const SudokuGrid&) const = default;
};

struct SolveOutcome {
    std::optional<SudokuGrid> solution;  // first solution in deterministic order
    int count = 0;                       // solutions found, capped
};

// Backtracking with bitmask constraint propagation; minimum-remaining-values
// cell order, ascending digit order, so the first solution is reproducible.
SolveOutcome solve_count(const SudokuGrid& grid, int cap);

struct SudokuRiddle {
    SudokuGrid puzzle;
    SudokuGrid solution;
    int givens = 0;
};

struct GenerationExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Digs holes from a random complete grid, keeping only digs that preserve
// uniqueness; restarts from a fresh grid when digging stalls.
SudokuRiddle generate_puzzle(RngStream& rng, int givens);

AnswerKey to_answer(const SudokuGrid& solution);
SudokuGrid grid_from_answer(const std::string& digits81);

// True iff all 27 houses are permutations of 1..9.
bool valid_solution(const SudokuGrid& grid);

// 9x9 panel with #digit glyph elements at the given cells.
Panel puzzle_panel(const SudokuGrid& puzzle);

}  // namespace rsm::sudoku
