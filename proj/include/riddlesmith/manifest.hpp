#pragma once
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "riddlesmith/types.hpp"

namespace rsm {

struct RiddleRecord {
    std::string id;
    std::string category;
    std::string sub_rule;
    std::string layout;
    std::vector<std::string> question_images;
    std::vector<std::string> option_images;
    AnswerKey answer;
    std::string annotation_path;
    bool operator==(const RiddleRecord&) const = default;
};

struct Manifest {
    int version = 1;
    uint64_t master_seed = 0;
    std::map<std::string, int> counts;  // category -> record count
    std::vector<RiddleRecord> records;
};

struct ManifestError : std::runtime_error {
    ManifestError(int line, const std::string& msg);
    int line;  // 1-based; 0 when not line-specific
};

// JSONL: header object on line 1, one record per following line.
void write_manifest(const Manifest& m, const std::filesystem::path& path);
Manifest read_manifest(const std::filesystem::path& path);

// Duplicate-id / header-count verification (write/read both run it).
void validate_manifest_structure(const Manifest& m);

std::string record_to_json_line(const RiddleRecord& r);
RiddleRecord record_from_json_line(const std::string& line, int line_no);

}  // namespace rsm
