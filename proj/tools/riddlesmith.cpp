// riddlesmith: generate, validate and score abstract visual reasoning riddles.
#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "riddlesmith/annotate.hpp"
#include "riddlesmith/evalharness.hpp"
#include "riddlesmith/render.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitUsage = 2;

uint64_t resolve_seed(const std::optional<uint64_t>& flag_seed) {
    if (flag_seed) return *flag_seed;
    if (const char* env = std::getenv("RIDDLESMITH_SEED")) return std::strtoull(env, nullptr, 10);
    throw CLI::ValidationError("--seed is required (or set RIDDLESMITH_SEED)");
}

int cmd_rules_list() {
    json out = json::array();
    for (const rsm::SubRule& rule : rsm::catalog()) {
        json schema = json::object();
        for (const rsm::ParamSpec& p : rule.param_schema) schema[p.name] = p.choices;
        out.push_back(json{{"id", rule.id},
                           {"category", rsm::category_name(rule.category)},
                           {"param_schema", schema},
                           {"arity", rule.arity},
                           {"layouts", rule.layout_ids}});
    }
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int cmd_icons(int count, uint64_t seed, const std::filesystem::path& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const auto icons =
        rsm::build_icon_library(count, rsm::derive_stream(seed, rsm::kIconLibraryStream));
    std::ofstream meta(out_dir / "icons.jsonl", std::ios::binary);
    for (const rsm::Icon& icon : icons) {
        std::ofstream svg(out_dir / (icon.id + ".svg"), std::ios::binary);
        svg << rsm::render_icon_svg(icon, 128);
        meta << json{{"icon_id", icon.id},
                     {"shape_family", rsm::shape_family_name(icon.family)},
                     {"stroke_count", icon.stroke_count},
                     {"closed_regions", icon.closed_regions},
                     {"symmetry", rsm::symmetry_name(icon.symmetry)},
                     {"signature", icon.signature}}
                    .dump()
             << "\n";
    }
    std::cerr << "wrote " << icons.size() << " icons to " << out_dir << "\n";
    return kExitOk;
}

rsm::GenerationPlan plan_from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("cannot open plan file: " + path.string());
    json j;
    in >> j;
    rsm::GenerationPlan plan;
    for (const auto& [name, count] : j.at("counts").items()) {
        const auto category = rsm::parse_category(name);
        if (!category) throw CLI::ValidationError("plan file: unknown category " + name);
        plan.counts[*category] = count.get<int>();
    }
    if (j.contains("master_seed")) plan.master_seed = j.at("master_seed").get<uint64_t>();
    if (j.contains("givens_min")) plan.givens_min = j.at("givens_min").get<int>();
    if (j.contains("givens_max")) plan.givens_max = j.at("givens_max").get<int>();
    if (j.contains("icon_library_size"))
        plan.icon_library_size = j.at("icon_library_size").get<int>();
    return plan;
}

int cmd_stats(const std::filesystem::path& manifest_path) {
    const rsm::Manifest manifest = rsm::read_manifest(manifest_path);
    std::map<std::string, int> letters;
    std::map<int, int> indices;
    std::map<std::string, int> per_category;
    for (const rsm::RiddleRecord& r : manifest.records) {
        ++per_category[r.category];
        if (r.answer.kind == rsm::AnswerKey::Kind::choice4) ++letters[r.answer.value];
        if (r.answer.kind == rsm::AnswerKey::Kind::choice8) ++indices[r.answer.index()];
    }
    std::cout << "records: " << manifest.records.size() << "\n";
    for (const auto& [cat, n] : per_category) std::cout << "  " << cat << ": " << n << "\n";
    int core_total = 0;
    for (const auto& [l, n] : letters) core_total += n;
    if (core_total > 0) {
        std::cout << "answer letters (n=" << core_total << "):\n";
        for (const auto& [l, n] : letters) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "  %s: %5d (%.2f%%)", l.c_str(), n,
                          100.0 * n / core_total);
            std::cout << buf << "\n";
        }
    }
    int raven_total = 0;
    for (const auto& [i, n] : indices) raven_total += n;
    if (raven_total > 0) {
        std::cout << "raven keyed indices (n=" << raven_total << "):\n";
        for (const auto& [i, n] : indices) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "  %d: %5d (%.2f%%)", i, n, 100.0 * n / raven_total);
            std::cout << buf << "\n";
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"riddlesmith: abstract visual reasoning riddle generator and scorer"};
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "generate a riddle dataset");
    std::string category_flag = "all";
    int count = 10;
    std::optional<uint64_t> seed_flag;
    std::filesystem::path out_dir = "dataset";
    std::filesystem::path plan_path;
    int jobs = 0;
    int givens_min = 30, givens_max = 40;
    int icon_count = 10000;
    bool all_categories = false;
    generate->add_option("--category", category_flag,
                         "category to generate (numerical, stylistic, attribute, positional, "
                         "spatial, sudoku, raven)");
    generate->add_flag("--all", all_categories, "generate every category");
    generate->add_option("--count", count, "riddles per selected category");
    generate->add_option("--seed", seed_flag, "master seed");
    generate->add_option("--out", out_dir, "output directory");
    generate->add_option("--plan", plan_path, "JSON plan file (flags override)");
    generate->add_option("--jobs", jobs, "worker threads (default: logical CPUs)");
    generate->add_option("--givens-min", givens_min, "sudoku minimum givens");
    generate->add_option("--givens-max", givens_max, "sudoku maximum givens");
    generate->add_option("--icons", icon_count, "icon library size");

    // validate
    auto* validate = app.add_subcommand("validate", "re-run the oracle over a dataset");
    std::filesystem::path manifest_path;
    validate->add_option("--manifest", manifest_path, "manifest path")->required();

    // score
    auto* score_cmd = app.add_subcommand("score", "score predictions against a manifest");
    std::filesystem::path score_manifest, predictions_path, report_path;
    bool print_table = false;
    score_cmd->add_option("--manifest", score_manifest, "manifest path")->required();
    score_cmd->add_option("--predictions", predictions_path, "predictions JSONL")->required();
    score_cmd->add_option("--report", report_path, "write the JSON report here");
    score_cmd->add_flag("--table", print_table, "print the text table");

    // stats
    auto* stats = app.add_subcommand("stats", "answer distribution of a manifest");
    std::filesystem::path stats_manifest;
    stats->add_option("--manifest", stats_manifest, "manifest path")->required();

    // icons
    auto* icons_cmd = app.add_subcommand("icons", "emit the icon library as SVG + metadata");
    int icons_n = 100;
    std::optional<uint64_t> icons_seed;
    std::filesystem::path icons_out = "icons";
    icons_cmd->add_option("--count", icons_n, "number of icons");
    icons_cmd->add_option("--seed", icons_seed, "master seed");
    icons_cmd->add_option("--out", icons_out, "output directory");

    // rules
    auto* rules_cmd = app.add_subcommand("rules", "sub-rule catalog operations");
    bool list_rules = false;
    rules_cmd->add_flag("--list", list_rules, "dump the catalog as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (generate->parsed()) {
            rsm::GenerationPlan plan;
            bool plan_has_seed = false;
            if (!plan_path.empty()) {
                plan = plan_from_file(plan_path);
                plan_has_seed = true;  // plan_from_file defaults master_seed to 0 when absent
            }
            if (seed_flag)
                plan.master_seed = *seed_flag;
            else if (!plan_has_seed)
                plan.master_seed = resolve_seed(std::nullopt);
            plan.out_dir = out_dir;
            plan.jobs = jobs;
            plan.givens_min = givens_min;
            plan.givens_max = givens_max;
            plan.icon_library_size = icon_count;
            if (plan.counts.empty()) {
                if (all_categories) {
                    for (rsm::RuleCategory c : rsm::kAllCategories) plan.counts[c] = count;
                } else {
                    const auto category = rsm::parse_category(category_flag);
                    if (!category)
                        throw CLI::ValidationError("unknown category: " + category_flag);
                    plan.counts[*category] = count;
                }
            }
            const rsm::Manifest manifest = rsm::generate_dataset(plan);
            std::cerr << "generated " << manifest.records.size() << " riddles into " << out_dir
                      << "\n";
            return kExitOk;
        }
        if (validate->parsed()) {
            const rsm::ValidationReport report = rsm::validate_dataset(manifest_path);
            if (report.ok()) {
                std::cerr << "validated " << report.checked << " records: all pass\n";
                return kExitOk;
            }
            for (const rsm::ValidationIssue& issue : report.issues)
                std::cerr << issue.id << ": " << issue.message << "\n";
            std::cerr << report.issues.size() << " of " << report.checked
                      << " records failed validation\n";
            return kExitValidationFailure;
        }
        if (score_cmd->parsed()) {
            const rsm::Manifest manifest = rsm::read_manifest(score_manifest);
            const auto predictions = rsm::read_predictions(predictions_path);
            const rsm::ScoreReport report = rsm::score(manifest, predictions);
            const json j = rsm::report_to_json(report);
            if (!report_path.empty()) {
                std::ofstream out(report_path, std::ios::binary);
                out << j.dump(2) << "\n";
            } else {
                std::cout << j.dump(2) << "\n";
            }
            if (print_table) std::cout << rsm::report_table(report);
            return kExitOk;
        }
        if (stats->parsed()) return cmd_stats(stats_manifest);
        if (icons_cmd->parsed()) return cmd_icons(icons_n, resolve_seed(icons_seed), icons_out);
        if (rules_cmd->parsed()) {
            if (list_rules) return cmd_rules_list();
            std::cerr << "rules: nothing to do (try --list)\n";
            return kExitUsage;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidationFailure;
    }
    return kExitUsage;
}
