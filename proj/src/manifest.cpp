#include "riddlesmith/manifest.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <set>

namespace rsm {

using nlohmann::json;

ManifestError::ManifestError(int line_no, const std::string& msg)
    : std::runtime_error("manifest line " + std::to_string(line_no) + ": " + msg),
      line(line_no) {}

namespace {

json answer_to_json(const AnswerKey& a) {
    if (a.kind == AnswerKey::Kind::choice8) return a.index();
    return a.value;
}

AnswerKey answer_from_json(const json& j, int line_no) {
    if (j.is_number_integer()) {
        const int idx = j.get<int>();
        if (idx < 1 || idx > 8) throw ManifestError(line_no, "choice8 answer out of 1..8");
        return AnswerKey::choice8(idx);
    }
    if (!j.is_string()) throw ManifestError(line_no, "answer must be a string or integer");
    const std::string s = j.get<std::string>();
    if (s.size() == 1 && s[0] >= 'A' && s[0] <= 'D') return AnswerKey::choice4(s[0]);
    if (s.size() == 81) {
        try {
            return AnswerKey::grid(s);
        } catch (const std::invalid_argument& e) {
            throw ManifestError(line_no, e.what());
        }
    }
    throw ManifestError(line_no, "answer is neither a letter A-D nor an 81-digit grid");
}

}  // namespace

std::string record_to_json_line(const RiddleRecord& r) {
    json j{{"id", r.id},
           {"category", r.category},
           {"sub_rule", r.sub_rule},
           {"layout", r.layout},
           {"question_images", r.question_images},
           {"option_images", r.option_images},
           {"answer", answer_to_json(r.answer)},
           {"annotation_path", r.annotation_path}};
    return j.dump();
}

RiddleRecord record_from_json_line(const std::string& line, int line_no) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error& e) {
        throw ManifestError(line_no, std::string("parse error: ") + e.what());
    }
    RiddleRecord r;
    try {
        r.id = j.at("id").get<std::string>();
        r.category = j.at("category").get<std::string>();
        r.sub_rule = j.at("sub_rule").get<std::string>();
        r.layout = j.at("layout").get<std::string>();
        r.question_images = j.at("question_images").get<std::vector<std::string>>();
        r.option_images = j.at("option_images").get<std::vector<std::string>>();
        r.annotation_path = j.at("annotation_path").get<std::string>();
    } catch (const json::exception& e) {
        throw ManifestError(line_no, std::string("missing or mistyped field: ") + e.what());
    }
    r.answer = answer_from_json(j.at("answer"), line_no);
    if (!parse_riddle_id(r.id)) throw ManifestError(line_no, "malformed riddle id: " + r.id);
    return r;
}

void validate_manifest_structure(const Manifest& m) {
    std::set<std::string> ids;
    std::map<std::string, int> tally;
    for (const RiddleRecord& r : m.records) {
        if (!ids.insert(r.id).second)
            throw ManifestError(0, "duplicate riddle id: " + r.id);
        ++tally[r.category];
    }
    if (tally != m.counts) throw ManifestError(0, "header counts do not match record tallies");
}

void write_manifest(const Manifest& m, const std::filesystem::path& path) {
    if (m.records.empty()) throw std::invalid_argument("write_manifest: no records");
    validate_manifest_structure(m);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_manifest: cannot open " + path.string());
    json header{{"manifest_version", m.version},
                {"master_seed", m.master_seed},
                {"counts", m.counts}};
    out << header.dump() << '\n';
    for (const RiddleRecord& r : m.records) out << record_to_json_line(r) << '\n';
    if (!out) throw std::runtime_error("write_manifest: write failed for " + path.string());
}

Manifest read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_manifest: cannot open " + path.string());
    Manifest m;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            if (in.eof()) break;
            throw ManifestError(line_no, "empty line");
        }
        if (line_no == 1) {
            json header;
            try {
                header = json::parse(line);
            } catch (const json::parse_error& e) {
                throw ManifestError(1, std::string("header parse error: ") + e.what());
            }
            try {
                m.version = header.at("manifest_version").get<int>();
                m.master_seed = header.at("master_seed").get<uint64_t>();
                m.counts = header.at("counts").get<std::map<std::string, int>>();
            } catch (const json::exception& e) {
                throw ManifestError(1, std::string("bad header: ") + e.what());
            }
            continue;
        }
        m.records.push_back(record_from_json_line(line, line_no));
    }
    validate_manifest_structure(m);
    return m;
}

}  // namespace rsm
