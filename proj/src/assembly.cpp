#include "riddlesmith/assembly.hpp"

#include <algorithm>

namespace rsm {

namespace {

enum class Strategy { perturb, wrong_rule, context_copy, resample };

Strategy draw_strategy(const DistractorSpec& spec, RuleCategory category, RngStream& rng,
                       bool copy_used) {
    switch (spec.strategy) {
        case DistractorSpec::Strategy::attribute_perturb: return Strategy::perturb;
        case DistractorSpec::Strategy::wrong_rule_continuation: return Strategy::wrong_rule;
        case DistractorSpec::Strategy::random_resample: return Strategy::resample;
        case DistractorSpec::Strategy::context_copy:
            if (!copy_used) return Strategy::context_copy;
            return Strategy::perturb;
        case DistractorSpec::Strategy::mixed: break;
    }
    const double u = rng.unit();
    if (category == RuleCategory::stylistic && !copy_used && u >= 0.8)
        return Strategy::context_copy;
    if (u < 0.5) return Strategy::perturb;
    if (u < 0.8) return Strategy::wrong_rule;
    return Strategy::resample;
}

// A continuation proposed by a different rule instance of the same category.
std::optional<Panel> wrong_rule_panel(RuleCategory category, const RuleInstance& actual,
                                      const Layout& layout, std::span<const Panel> context,
                                      const IconPool& pool, RngStream& rng) {
    auto instances = enumerate_instances(category, layout.id);
    std::vector<const RuleInstance*> others;
    for (const RuleInstance& inst : instances)
        if (!(inst.sub_rule_id == actual.sub_rule_id && inst.params == actual.params))
            others.push_back(&inst);
    if (others.empty()) return std::nullopt;
    const RuleInstance& pick = *others[rng.below(others.size())];
    try {
        return rule_logic(pick.sub_rule_id).make_correct(pick, layout, context, pool, rng);
    } catch (const std::exception&) {
        return std::nullopt;  // incompatible panel shapes; caller falls back
    }
}

}  // namespace

AssembledRiddle assemble(RuleCategory category, const RuleInstance& rule,
                         const ElementConfiguration& config, const DistractorSpec& spec,
                         RngStream& rng) {
    const Layout& layout = config.layout;
    const RuleLogic& logic = rule_logic(rule.sub_rule_id);
    const int option_total = layout.option_count;
    const int distractor_total = option_total - 1;

    static const IconPool empty_pool;
    const IconPool& pool = config.pool ? *config.pool : empty_pool;

    std::vector<Panel> sequence = expand_sequence(rule, layout, config.initial_panels);
    std::vector<Panel> context(sequence.begin(), sequence.end() - 1);

    // Build options with the ambiguity-retry budget.
    for (int attempt = 0; attempt < 50; ++attempt) {
        const Panel correct = logic.make_correct(rule, layout, context, pool, rng);
        if (!consistent(rule, layout, context, correct))
            throw AssemblyError("assemble: make_correct produced an inconsistent panel for " +
                                rule.sub_rule_id);

        std::vector<Panel> distractors;
        bool copy_used = false;
        int guard = 0;
        while (static_cast<int>(distractors.size()) < distractor_total && ++guard < 200) {
            const Strategy strat = draw_strategy(spec, category, rng, copy_used);
            std::optional<Panel> cand;
            switch (strat) {
                case Strategy::perturb:
                    cand = logic.perturb(rule, layout, correct, pool, rng);
                    break;
                case Strategy::wrong_rule:
                    cand = wrong_rule_panel(category, rule, layout, context, pool, rng);
                    break;
                case Strategy::context_copy:
                    cand = context[rng.below(context.size())];
                    break;
                case Strategy::resample:
                    cand = logic.resample(rule, layout, context, correct, pool, rng);
                    break;
            }
            if (!cand) continue;
            if (consistent(rule, layout, context, *cand)) continue;  // must be rejected
            if (panels_equivalent(*cand, correct)) continue;
            bool dup = false;
            for (const Panel& d : distractors)
                if (panels_equivalent(d, *cand)) dup = true;
            if (dup) continue;
            if (strat == Strategy::perturb &&
                shared_attribute_count(*cand, correct) < spec.min_shared_attributes)
                continue;
            if (strat == Strategy::context_copy) copy_used = true;
            distractors.push_back(std::move(*cand));
        }
        if (static_cast<int>(distractors.size()) < distractor_total)
            throw DistractorCollision("assemble: could not build " +
                                      std::to_string(distractor_total) +
                                      " distinct distractors for " + rule.sub_rule_id);

        // whole-catalog ambiguity check on the unshuffled option set
        std::vector<Panel> options{correct};
        for (Panel& d : distractors) options.push_back(std::move(d));
        SymbolicRiddle probe{layout.id, context, options, 0};
        const SolveResult solved = solve_symbolic(probe, category);
        if (solved.status != SolveStatus::solved || solved.option != 0) continue;

        // shuffle into display order
        std::vector<int> perm(static_cast<size_t>(option_total));
        for (int i = 0; i < option_total; ++i) perm[static_cast<size_t>(i)] = i;
        rng.shuffle(perm);
        AssembledRiddle out;
        out.category = category;
        out.rule = rule;
        out.option_permutation = perm;
        out.symbolic.layout_id = layout.id;
        out.symbolic.context = context;
        out.symbolic.options.resize(static_cast<size_t>(option_total));
        for (int pos = 0; pos < option_total; ++pos) {
            out.symbolic.options[static_cast<size_t>(pos)] =
                options[static_cast<size_t>(perm[static_cast<size_t>(pos)])];
            if (perm[static_cast<size_t>(pos)] == 0) out.symbolic.keyed_option = pos;
        }
        out.answer = option_total == 4
                         ? AnswerKey::choice4(static_cast<char>('A' + out.symbolic.keyed_option))
                         : AnswerKey::choice8(out.symbolic.keyed_option + 1);
        return out;
    }
    throw AmbiguityExhausted("assemble: 50 attempts failed the ambiguity check for " +
                             rule.sub_rule_id);
}

AssembledRiddle assemble_with_retries(RuleCategory category, const IconPool& pool,
                                      const DistractorSpec& spec, RngStream& rng) {
    std::string last_error = "no attempt made";
    for (int config_attempt = 0; config_attempt < 10; ++config_attempt) {
        try {
            const RuleInstance rule = sample_rule(category, rng);
            const ElementConfiguration config = sample_configuration(category, rule, pool, rng);
            return assemble(category, rule, config, spec, rng);
        } catch (const AssemblyError& e) {
            last_error = e.what();
        } catch (const NoViableIconError& e) {
            last_error = e.what();
        }
    }
    throw AssemblyError("assembly retries exhausted: " + last_error);
}

}  // namespace rsm
