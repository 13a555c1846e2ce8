#pragma once
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "riddlesmith/icon.hpp"
#include "riddlesmith/layout.hpp"
#include "riddlesmith/rng.hpp"
#include "riddlesmith/types.hpp"

namespace rsm {

// Parameters are small enumerated domains; integer values are encoded as
// decimal strings so the catalog dumps as plain JSON.
using Params = std::map<std::string, std::string>;

struct ParamSpec {
    std::string name;
    std::vector<std::string> choices;
};

struct SubRule {
    std::string id;
    RuleCategory category;
    std::vector<ParamSpec> param_schema;
    int arity = 1;  // context panels needed to pin the continuation
    std::vector<std::string> layout_ids;
};

struct RuleInstance {
    std::string sub_rule_id;
    Params params;
};

int param_int(const Params& p, const std::string& name);
const std::string& param_str(const Params& p, const std::string& name);

struct SymbolicRiddle {
    std::string layout_id;
    std::vector<Panel> context;  // panel_count - 1 panels, missing slot last
    std::vector<Panel> options;  // 4 for core categories, 8 for raven
    int keyed_option = 0;        // index into options
};

// ----------------------------------------------------------------- catalog

const std::vector<SubRule>& catalog();
const SubRule& sub_rule(const std::string& id);
bool sub_rule_exists(const std::string& id);
std::vector<const SubRule*> catalog_for(RuleCategory category);

// Filtered icon pool a rule samples from.
class IconPool {
public:
    IconPool() = default;
    explicit IconPool(std::vector<const Icon*> icons) : icons_(std::move(icons)) {}
    IconPool(const IconLibrary& lib, const std::vector<int>& indices);

    bool empty() const { return icons_.empty(); }
    size_t size() const { return icons_.size(); }
    const Icon& pick(RngStream& rng) const;

    // Uniform pick among icons satisfying pred; throws NoViableIconError when
    // none qualifies.
    template <typename Pred>
    const Icon& pick_if(RngStream& rng, Pred pred) const {
        std::vector<const Icon*> hits;
        for (const Icon* icon : icons_)
            if (pred(*icon)) hits.push_back(icon);
        if (hits.empty()) throw_no_viable();
        return *hits[rng.below(hits.size())];
    }
    const Icon& pick_strokes(RngStream& rng, int strokes) const;
    const Icon& pick_regions(RngStream& rng, int regions) const;
    const Icon& pick_symmetry(RngStream& rng, Symmetry s) const;

private:
    [[noreturn]] static void throw_no_viable();
    std::vector<const Icon*> icons_;
};

struct NoViableIconError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ------------------------------------------------------------- rule engine

// How a rule traverses a layout's panels.
enum class RuleShape { chain, triplet, pair };

// Per-rule behavior. `continue_group` must be a pure function of
// (instance, prefix); `matches` defaults to attribute equivalence with the
// continuation and is overridden where a quantity (not a placement) is the
// governed property.
class RuleLogic {
public:
    virtual ~RuleLogic() = default;
    const SubRule& meta() const { return meta_; }
    RuleShape shape() const { return shape_; }
    virtual int min_prefix() const { return shape_ == RuleShape::triplet ? 2 : 1; }

    virtual Panel continue_group(const RuleInstance&, const Layout&,
                                 std::span<const Panel> group_prefix) const = 0;
    virtual bool matches(const RuleInstance&, const Layout&, std::span<const Panel> group_prefix,
                         const Panel& candidate) const;
    // Structural constraint on a group's visible panels beyond step checks
    // (e.g. swap_pair requires panel 1 to be panel 0 with one pair exchanged).
    virtual bool group_valid(const RuleInstance&, const Layout&,
                             std::span<const Panel> group) const;

    // Generation hooks.
    virtual Params sample_params(RngStream& rng) const;
    virtual std::vector<Params> all_params() const;
    virtual std::vector<Panel> sample_seeds(const RuleInstance&, const Layout&, const IconPool&,
                                            RngStream&) const = 0;
    // The keyed option. Defaults to the pure continuation; quantity rules
    // sample a fresh icon with the required measure instead.
    virtual Panel make_correct(const RuleInstance&, const Layout&, std::span<const Panel> context,
                               const IconPool&, RngStream&) const;
    // Distractor builders. Both must return panels the rule rejects.
    virtual Panel perturb(const RuleInstance&, const Layout&, const Panel& correct,
                          const IconPool&, RngStream&) const;
    virtual Panel resample(const RuleInstance&, const Layout&, std::span<const Panel> context,
                           const Panel& correct, const IconPool&, RngStream&) const;
    // Seed panels consumed per group by expand_sequence.
    virtual int seeds_count(const Layout&) const;

protected:
    RuleLogic(SubRule meta, RuleShape shape) : meta_(std::move(meta)), shape_(shape) {}
    SubRule meta_;
    RuleShape shape_;
};

const RuleLogic& rule_logic(const std::string& sub_rule_id);

// Panel groups for a rule shape on a layout.
std::vector<std::vector<int>> rule_groups(RuleShape shape, const Layout& layout);

// Expands seed panels into the full panel sequence (context plus answer).
// Seeds are ordered group by group: chain/pair rules take one seed per group,
// triplet rules take two.
std::vector<Panel> expand_sequence(const RuleInstance&, const Layout&,
                                   std::span<const Panel> seeds);

// The unique panel continuing `context` under the rule; pure.
Panel apply(const RuleInstance&, const Layout&, std::span<const Panel> context);

// True iff `candidate` is a valid continuation of `context` under the rule.
bool consistent(const RuleInstance&, const Layout&, std::span<const Panel> context,
                const Panel& candidate);

// True iff the instance explains every determined transition of the visible
// context.
bool fits_context(const RuleInstance&, const Layout&, std::span<const Panel> context);

// All concrete instances of a category applicable to a layout.
std::vector<RuleInstance> enumerate_instances(RuleCategory category, const std::string& layout_id);

// --------------------------------------------------------------- the oracle

enum class SolveStatus { solved, ambiguous, unsolvable };

struct SolveResult {
    SolveStatus status = SolveStatus::unsolvable;
    int option = -1;
    RuleInstance rule;
};

// Searches every rule instance of the category; an option is selected when
// some context-fitting instance accepts it. Distinct selected options mean
// Ambiguous; a single instance accepting two options does too.
SolveResult solve_symbolic(const SymbolicRiddle& riddle, RuleCategory category);

// ------------------------------------------------------- raven rule algebra

// Shared by the raven generator and the solver. Rule ids may carry a step
// suffix ("progression_plus:2"); values are small ints except position, which
// is a sorted cell set.
std::string raven_rule_base(const std::string& rule_id);
int raven_rule_step(const std::string& rule_id);
int raven_next_value(const std::string& rule_id, int a, int b);
std::vector<int> raven_next_position(const std::string& rule_id, const std::vector<int>& a,
                                     const std::vector<int>& b);
// Index into a distribute-three value triple for matrix cell (row, col).
int raven_distribute_index(const std::string& rule_id, int row, int col);

}  // namespace rsm
