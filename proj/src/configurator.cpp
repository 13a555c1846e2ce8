#include "riddlesmith/configurator.hpp"

#include <algorithm>

namespace rsm {

RuleInstance sample_rule(RuleCategory category, RngStream& rng) {
    auto rules = catalog_for(category);
    const SubRule* rule = rules[rng.below(rules.size())];
    if (category == RuleCategory::sudoku || category == RuleCategory::raven)
        return RuleInstance{rule->id, {}};
    return RuleInstance{rule->id, rule_logic(rule->id).sample_params(rng)};
}

ElementConfiguration sample_configuration(RuleCategory category, const RuleInstance& rule,
                                          const IconPool& pool, RngStream& rng) {
    if (pool.empty()) throw NoViableIconError("sample_configuration: empty icon pool");
    const SubRule& meta = sub_rule(rule.sub_rule_id);
    if (meta.category != category)
        throw std::invalid_argument("sample_configuration: rule does not belong to category");
    // layouts usable by this rule, restricted to the category's layout set
    std::vector<Layout> usable;
    for (const Layout& l : layouts(category))
        if (std::find(meta.layout_ids.begin(), meta.layout_ids.end(), l.id) !=
            meta.layout_ids.end())
            usable.push_back(l);
    if (usable.empty())
        throw std::logic_error("sample_configuration: rule has no layout in its category");
    const Layout layout = usable[rng.below(usable.size())];
    const RuleLogic& logic = rule_logic(rule.sub_rule_id);
    ElementConfiguration config;
    config.layout = layout;
    config.rule = rule;
    config.pool = &pool;
    config.initial_panels = logic.sample_seeds(rule, layout, pool, rng);
    return config;
}

}  // namespace rsm
