#pragma once
#include "riddlesmith/layout.hpp"
#include "riddlesmith/rules.hpp"

namespace rsm {

struct ElementConfiguration {
    Layout layout;
    std::vector<Panel> initial_panels;  // seed panels in group order
    RuleInstance rule;
    const IconPool* pool = nullptr;  // icon source the seeds were drawn from
};

// Samples a layout supported by the rule and rule-consistent seed panels.
// Icons are drawn from `pool` subject to the rule's constraints; throws
// NoViableIconError when the pool cannot satisfy them.
ElementConfiguration sample_configuration(RuleCategory category, const RuleInstance& rule,
                                          const IconPool& pool, RngStream& rng);

// Uniform rule + parameter draw from the category catalog.
RuleInstance sample_rule(RuleCategory category, RngStream& rng);

}  // namespace rsm
