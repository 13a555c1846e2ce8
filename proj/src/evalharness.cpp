#include "riddlesmith/evalharness.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>

namespace rsm {

using nlohmann::json;

namespace {

bool is_letter(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

// Last standalone occurrence of any of `targets` (no letter/digit neighbors).
std::optional<char> last_standalone(const std::string& text, bool (*is_kind)(char),
                                    bool (*is_target)(char)) {
    std::optional<char> found;
    for (size_t i = 0; i < text.size(); ++i) {
        if (!is_target(text[i])) continue;
        const bool left_ok = i == 0 || !is_kind(text[i - 1]);
        const bool right_ok = i + 1 == text.size() || !is_kind(text[i + 1]);
        if (left_ok && right_ok) found = text[i];
    }
    return found;
}

bool is_choice_letter(char c) {
    const char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return u >= 'A' && u <= 'D';
}
bool is_choice_digit(char c) { return c >= '1' && c <= '8'; }

bool is_separator(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == ';' || c == '|' ||
           c == '/' || c == '\\' || c == '-' || c == '_' || c == '*' || c == '`' || c == '\'' ||
           c == '"' || c == '[' || c == ']' || c == '(' || c == ')' || c == '.' || c == ':';
}

}  // namespace

std::optional<AnswerKey> extract_answer(const std::string& response, AnswerKey::Kind kind) {
    switch (kind) {
        case AnswerKey::Kind::choice4: {
            auto c = last_standalone(response, is_letter, is_choice_letter);
            if (!c) return std::nullopt;
            return AnswerKey::choice4(
                static_cast<char>(std::toupper(static_cast<unsigned char>(*c))));
        }
        case AnswerKey::Kind::choice8: {
            auto c = last_standalone(response, is_digit, is_choice_digit);
            if (!c) return std::nullopt;
            return AnswerKey::choice8(*c - '0');
        }
        case AnswerKey::Kind::grid: {
            std::string stripped;
            stripped.reserve(response.size());
            for (char c : response)
                if (!is_separator(c)) stripped.push_back(c);
            // first run of >= 81 digits
            size_t run_start = 0, run_len = 0;
            for (size_t i = 0; i <= stripped.size(); ++i) {
                if (i < stripped.size() && is_digit(stripped[i])) {
                    if (run_len == 0) run_start = i;
                    ++run_len;
                } else {
                    if (run_len >= 81) {
                        const std::string digits = stripped.substr(run_start, 81);
                        if (digits.find('0') != std::string::npos) return std::nullopt;
                        return AnswerKey::grid(digits);
                    }
                    run_len = 0;
                }
            }
            return std::nullopt;
        }
    }
    return std::nullopt;
}

ScoreReport score(const Manifest& manifest, const std::vector<Prediction>& predictions) {
    if (predictions.empty()) throw ScoringError("empty prediction set");
    std::map<std::string, const RiddleRecord*> by_id;
    for (const RiddleRecord& r : manifest.records) by_id[r.id] = &r;

    std::map<std::string, const Prediction*> pred_by_id;
    for (const Prediction& p : predictions) {
        if (!by_id.count(p.id)) throw ScoringError("prediction id not in manifest: " + p.id);
        if (!pred_by_id.emplace(p.id, &p).second)
            throw ScoringError("duplicate prediction id: " + p.id);
    }

    ScoreReport report;
    for (const RiddleRecord& r : manifest.records) {
        CategoryScore& cat = report.per_category[r.category];
        ++cat.n;
        ++report.total_n;
        auto it = pred_by_id.find(r.id);
        if (it == pred_by_id.end()) {
            ++report.unanswered;
            continue;
        }
        auto extracted = extract_answer(it->second->response, r.answer.kind);
        if (!extracted) {
            ++report.unanswered;
            continue;
        }
        if (*extracted == r.answer) {
            ++cat.correct;
            ++report.total_correct;
        }
    }
    report.micro_avg =
        report.total_n == 0 ? 0.0 : 100.0 * report.total_correct / report.total_n;
    double macro_sum = 0.0;
    for (const auto& [name, cat] : report.per_category) macro_sum += cat.accuracy();
    report.macro_avg =
        report.per_category.empty() ? 0.0 : macro_sum / static_cast<double>(report.per_category.size());
    return report;
}

std::vector<Prediction> read_predictions(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ScoringError("cannot open predictions file: " + path.string());
    std::vector<Prediction> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ScoringError("predictions line " + std::to_string(line_no) + ": " + e.what());
        }
        try {
            out.push_back(
                Prediction{j.at("id").get<std::string>(), j.at("response").get<std::string>()});
        } catch (const json::exception& e) {
            throw ScoringError("predictions line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

json report_to_json(const ScoreReport& r) {
    json per = json::object();
    for (const auto& [name, cat] : r.per_category)
        per[name] = {{"n", cat.n}, {"correct", cat.correct}, {"accuracy", cat.accuracy()}};
    return json{{"report_version", 1},
                {"per_category", per},
                {"total_n", r.total_n},
                {"total_correct", r.total_correct},
                {"unanswered", r.unanswered},
                {"micro_avg", r.micro_avg},
                {"macro_avg", r.macro_avg}};
}

std::string report_table(const ScoreReport& r) {
    std::string out;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%-12s %8s %8s %9s\n", "category", "n", "correct", "acc%");
    out += buf;
    out += std::string(40, '-') + "\n";
    for (const auto& [name, cat] : r.per_category) {
        std::snprintf(buf, sizeof(buf), "%-12s %8d %8d %9.1f\n", name.c_str(), cat.n, cat.correct,
                      cat.accuracy());
        out += buf;
    }
    out += std::string(40, '-') + "\n";
    std::snprintf(buf, sizeof(buf), "%-12s %8d %8d %9.1f (micro)\n", "total", r.total_n,
                  r.total_correct, r.micro_avg);
    out += buf;
    std::snprintf(buf, sizeof(buf), "%-12s %27.1f (macro)\n", "", r.macro_avg);
    out += buf;
    std::snprintf(buf, sizeof(buf), "unanswered: %d\n", r.unanswered);
    out += buf;
    return out;
}

}  // namespace rsm
