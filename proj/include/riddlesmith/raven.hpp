#pragma once
#include <map>

#include "riddlesmith/rules.hpp"

namespace rsm::raven {

enum class RavenAttribute { number, position, type, size, color };

const char* attribute_name(RavenAttribute a);
std::optional<RavenAttribute> parse_attribute(const std::string&);

inline constexpr std::array<RavenAttribute, 5> kAllAttributes = {
    RavenAttribute::number, RavenAttribute::position, RavenAttribute::type,
    RavenAttribute::size, RavenAttribute::color};

// Attribute values read off a panel. Elements of a raven panel share type,
// size and color; number/position are the count and the occupied cell set.
struct AttrVector {
    int number = 1;
    std::vector<int> position;  // sorted occupied cells
    int type = 0;               // shape family ordinal
    int size = 3;               // scale level 1..3
    int color = 0;              // gray level 0..3
};
AttrVector extract_attrs(const Panel& panel);

struct RavenMatrix {
    std::string layout_id;
    std::vector<Panel> panels;  // 8 context panels, row-major, slot 8 missing
    std::map<RavenAttribute, std::string> attribute_rules;  // governed only
    std::vector<RavenAttribute> constant_attrs;             // held constant matrix-wide
    std::vector<Panel> options;                             // 8, display order
    int keyed_index = 1;                                    // 1..8
};

// Generates a matrix on one of the 5 raven layouts: per-attribute rule
// assignment, single-attribute-perturbation distractors, shuffled options.
RavenMatrix generate_raven(RngStream& rng, const IconPool& pool);

// True iff option `candidate_index` (1..8) satisfies every governed rule and
// every constant attribute.
bool check_raven(const RavenMatrix& matrix, int candidate_index);

// Canonical manifest sub_rule id: the first governed attribute's rule.
std::string primary_sub_rule(const RavenMatrix& matrix);

}  // namespace rsm::raven
