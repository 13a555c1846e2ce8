#pragma once
#include <filesystem>

#include "riddlesmith/configurator.hpp"
#include "riddlesmith/manifest.hpp"
#include "riddlesmith/rules.hpp"

namespace rsm {

struct DistractorSpec {
    enum class Strategy {
        mixed,  // default 50/30/20 perturb / wrong-rule / resample mix
        attribute_perturb,
        wrong_rule_continuation,
        context_copy,
        random_resample,
    };
    Strategy strategy = Strategy::mixed;
    int min_shared_attributes = 2;
};

struct AssembledRiddle {
    RiddleId id;
    RuleCategory category = RuleCategory::numerical;
    SymbolicRiddle symbolic;  // options already in display order
    RuleInstance rule;
    std::vector<int> option_permutation;  // display position -> construction index (0 = correct)
    AnswerKey answer;
};

struct AssemblyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AmbiguityExhausted : AssemblyError {
    using AssemblyError::AssemblyError;
};
struct DistractorCollision : AssemblyError {
    using AssemblyError::AssemblyError;
};

// Builds the panel sequence, the keyed option and the distractors, rejects
// ambiguity against the whole category catalog, and shuffles the options.
AssembledRiddle assemble(RuleCategory category, const RuleInstance& rule,
                         const ElementConfiguration& config, const DistractorSpec& spec,
                         RngStream& rng);

// Assembly with configuration resampling: up to 10 fresh configurations, 50
// ambiguity retries each (the budgets the generator runs with).
AssembledRiddle assemble_with_retries(RuleCategory category, const IconPool& pool,
                                      const DistractorSpec& spec, RngStream& rng);

struct GenerationPlan {
    std::map<RuleCategory, int> counts;
    uint64_t master_seed = 0;
    std::filesystem::path out_dir;
    DistractorSpec distractors;
    int givens_min = 30;
    int givens_max = 40;
    int jobs = 0;  // 0 = logical CPU count
    int icon_library_size = 10000;
    int core_pool_size = 5000;
    bool write_assets = true;  // manifest-only runs for statistics when false
};

// Emits manifest + SVG assets + annotations under plan.out_dir. Riddle i of
// category c always uses stream riddle_stream_index(c, i), so output is a
// pure function of (plan, master_seed) regardless of job count.
Manifest generate_dataset(const GenerationPlan& plan);

struct ValidationIssue {
    std::string id;
    std::string message;
};
struct ValidationReport {
    int checked = 0;
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

// Re-runs the answer oracle over every record of a generated dataset:
// core riddles are re-solved from their annotations, raven options are
// exhaustively checked, sudoku puzzles are re-counted for uniqueness.
ValidationReport validate_dataset(const std::filesystem::path& manifest_path);

}  // namespace rsm
