#pragma once
#include <nlohmann/json_fwd.hpp>
#include <optional>

#include "riddlesmith/manifest.hpp"

namespace rsm {

struct Prediction {
    std::string id;
    std::string response;
};

struct CategoryScore {
    int n = 0;
    int correct = 0;
    double accuracy() const { return n == 0 ? 0.0 : 100.0 * correct / n; }
};

struct ScoreReport {
    std::map<std::string, CategoryScore> per_category;
    int total_n = 0;
    int total_correct = 0;
    int unanswered = 0;  // missing predictions + extraction failures
    double micro_avg = 0.0;
    double macro_avg = 0.0;
};

// Answer extraction from free-form model output:
//   choice4  last standalone letter A-D (case-insensitive)
//   choice8  last standalone digit 1-8
//   grid     first 81-digit run after stripping whitespace and separators
// nullopt = unparseable (scored incorrect, counted unanswered).
std::optional<AnswerKey> extract_answer(const std::string& response, AnswerKey::Kind kind);

struct ScoringError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact-match scoring; prediction ids must exist in the manifest and be
// unique. Manifest records without predictions count as unanswered.
ScoreReport score(const Manifest& manifest, const std::vector<Prediction>& predictions);

std::vector<Prediction> read_predictions(const std::filesystem::path& path);
nlohmann::json report_to_json(const ScoreReport& r);
std::string report_table(const ScoreReport& r);

}  // namespace rsm
