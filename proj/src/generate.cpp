#include <atomic>
#include <fstream>
#include <mutex>
#include <nlohmann/json.hpp>
#include <thread>

#include "riddlesmith/annotate.hpp"
#include "riddlesmith/render.hpp"

namespace rsm {

using nlohmann::json;

namespace {

struct BuiltRiddle {
    RiddleRecord record;
    std::vector<Asset> assets;
    std::string annotation_bytes;
};

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

BuiltRiddle build_one(RuleCategory category, uint64_t index, const GenerationPlan& plan,
                      const IconPool& pool, const IconLibrary& library) {
    RngStream rng = derive_stream(plan.master_seed,
                                  riddle_stream_index(category_ordinal(category), index));
    const RiddleId id{category, index};
    const RenderStyle style;
    BuiltRiddle built;
    built.record.id = id.str();
    built.record.category = category_name(category);

    if (category == RuleCategory::sudoku) {
        const int givens = static_cast<int>(rng.range(plan.givens_min, plan.givens_max));
        const sudoku::SudokuRiddle riddle = sudoku::generate_puzzle(rng, givens);
        built.record.sub_rule = "sudoku_standard";
        built.record.layout = "sudoku_9x9";
        built.record.answer = sudoku::to_answer(riddle.solution);
        if (plan.write_assets) built.assets = render_riddle(riddle, id, style, library);
        built.annotation_bytes = annotation_to_json(annotate(riddle, id)).dump();
    } else if (category == RuleCategory::raven) {
        const raven::RavenMatrix matrix = raven::generate_raven(rng, pool);
        built.record.sub_rule = raven::primary_sub_rule(matrix);
        built.record.layout = matrix.layout_id;
        built.record.answer = AnswerKey::choice8(matrix.keyed_index);
        if (plan.write_assets) built.assets = render_riddle(matrix, id, style, library);
        built.annotation_bytes = annotation_to_json(annotate(matrix, id)).dump();
    } else {
        AssembledRiddle riddle = assemble_with_retries(category, pool, plan.distractors, rng);
        riddle.id = id;
        built.record.sub_rule = riddle.rule.sub_rule_id;
        built.record.layout = riddle.symbolic.layout_id;
        built.record.answer = riddle.answer;
        if (plan.write_assets) built.assets = render_riddle(riddle, style, library);
        built.annotation_bytes = annotation_to_json(annotate(riddle)).dump();
    }

    for (const Asset& asset : built.assets) {
        if (asset.name.find("_opts") != std::string::npos)
            built.record.option_images.push_back("images/" + asset.name);
        else
            built.record.question_images.push_back("images/" + asset.name);
    }
    built.record.annotation_path = "annotations/" + id.str() + ".json";
    return built;
}

}  // namespace

Manifest generate_dataset(const GenerationPlan& plan) {
    namespace fs = std::filesystem;
    for (const auto& [category, count] : plan.counts)
        if (count < 0) throw std::invalid_argument("generate_dataset: negative count");
    fs::create_directories(plan.out_dir);
    if (plan.write_assets) {
        fs::create_directories(plan.out_dir / "images");
    }
    fs::create_directories(plan.out_dir / "annotations");

    // shared icon library + per-category pools, all derived from the master seed
    const IconLibrary library(
        build_icon_library(plan.icon_library_size,
                           derive_stream(plan.master_seed, kIconLibraryStream)));
    std::map<RuleCategory, IconPool> pools;
    for (RuleCategory c : kAllCategories) {
        const int pool_size = (c == RuleCategory::raven)
                                  ? plan.icon_library_size
                                  : std::min(plan.core_pool_size, plan.icon_library_size);
        pools.emplace(c, IconPool(library, category_pool_indices(c, plan.icon_library_size,
                                                                 pool_size, plan.master_seed)));
    }

    // job list in manifest order
    std::vector<std::pair<RuleCategory, uint64_t>> jobs;
    for (RuleCategory c : kAllCategories) {
        auto it = plan.counts.find(c);
        if (it == plan.counts.end()) continue;
        for (int i = 0; i < it->second; ++i) jobs.emplace_back(c, static_cast<uint64_t>(i));
    }

    std::vector<BuiltRiddle> built(jobs.size());
    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::string first_error;
    const unsigned jobs_n = plan.jobs > 0 ? static_cast<unsigned>(plan.jobs)
                                          : std::max(1u, std::thread::hardware_concurrency());
    auto worker = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const size_t at = next.fetch_add(1);
            if (at >= jobs.size()) return;
            const auto& [category, index] = jobs[at];
            try {
                built[at] = build_one(category, index, plan, pools.at(category), library);
            } catch (const std::exception& e) {
                std::lock_guard lock(error_mutex);
                if (first_error.empty())
                    first_error = std::string(category_name(category)) + "-" +
                                  std::to_string(index) + " (seed " +
                                  std::to_string(plan.master_seed) + "): " + e.what();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < std::min<size_t>(jobs_n, std::max<size_t>(jobs.size(), 1)); ++t)
        threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (failed.load()) throw std::runtime_error("generation failed at " + first_error);

    Manifest manifest;
    manifest.master_seed = plan.master_seed;
    for (BuiltRiddle& b : built) {
        for (const Asset& asset : b.assets)
            write_file(plan.out_dir / "images" / asset.name, asset.bytes);
        write_file(plan.out_dir / b.record.annotation_path, b.annotation_bytes);
        ++manifest.counts[b.record.category];
        manifest.records.push_back(std::move(b.record));
    }
    write_manifest(manifest, plan.out_dir / "manifest.jsonl");
    return manifest;
}

ValidationReport validate_dataset(const std::filesystem::path& manifest_path) {
    namespace fs = std::filesystem;
    ValidationReport report;
    const Manifest manifest = read_manifest(manifest_path);
    const fs::path root = manifest_path.parent_path();

    for (const RiddleRecord& record : manifest.records) {
        ++report.checked;
        auto issue = [&](const std::string& msg) {
            report.issues.push_back({record.id, msg});
        };
        if (!sub_rule_exists(record.sub_rule)) {
            issue("unknown sub_rule: " + record.sub_rule);
            continue;
        }
        for (const std::string& rel : record.question_images)
            if (!fs::exists(root / rel)) issue("missing asset: " + rel);
        for (const std::string& rel : record.option_images)
            if (!fs::exists(root / rel)) issue("missing asset: " + rel);

        const fs::path annotation_path = root / record.annotation_path;
        if (!fs::exists(annotation_path)) {
            issue("missing annotation: " + record.annotation_path);
            continue;
        }
        PerceptualAnnotation annotation;
        try {
            std::ifstream in(annotation_path, std::ios::binary);
            json j;
            in >> j;
            annotation = annotation_from_json(j);
        } catch (const std::exception& e) {
            issue(std::string("annotation unreadable: ") + e.what());
            continue;
        }
        if (annotation.answer != record.answer.value) {
            issue("annotation answer disagrees with manifest");
            continue;
        }

        try {
            if (record.category == "sudoku") {
                const sudoku::SudokuGrid puzzle = reconstruct_sudoku(annotation);
                const auto outcome = sudoku::solve_count(puzzle, 2);
                if (outcome.count != 1) {
                    issue("puzzle does not have exactly one solution (count=" +
                          std::to_string(outcome.count) + ")");
                    continue;
                }
                if (sudoku::to_answer(*outcome.solution) != record.answer)
                    issue("solver disagrees with the keyed grid");
            } else if (record.category == "raven") {
                const raven::RavenMatrix matrix = reconstruct_raven(annotation);
                int hits = 0;
                for (int idx = 1; idx <= 8; ++idx)
                    if (raven::check_raven(matrix, idx)) ++hits;
                if (hits != 1)
                    issue("option exclusivity violated: " + std::to_string(hits) +
                          " options check out");
                else if (!raven::check_raven(matrix, record.answer.index()))
                    issue("keyed option fails the attribute rules");
            } else {
                const auto category = parse_category(record.category);
                if (!category) {
                    issue("unknown category: " + record.category);
                    continue;
                }
                const SymbolicRiddle riddle = reconstruct_symbolic(annotation);
                const SolveResult solved = solve_symbolic(riddle, *category);
                if (solved.status == SolveStatus::ambiguous)
                    issue("oracle verdict: ambiguous");
                else if (solved.status == SolveStatus::unsolvable)
                    issue("oracle verdict: unsolvable");
                else if (solved.option != riddle.keyed_option)
                    issue("oracle selects option " + std::to_string(solved.option) +
                          ", keyed is " + std::to_string(riddle.keyed_option));
            }
        } catch (const std::exception& e) {
            issue(std::string("validation error: ") + e.what());
        }
    }
    return report;
}

}  // namespace rsm
