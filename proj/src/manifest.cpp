#include "harmatte/manifest.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace harmatte {

namespace {

using nlohmann::json;

json adjustment_to_json(const AdjustmentSpec& spec) {
    json j;
    j["kind"] = to_string(spec.kind);
    if (spec.target_id) j["target_id"] = *spec.target_id;
    if (spec.factor) j["factor"] = *spec.factor;
    j["seed"] = spec.seed;
    return j;
}

AdjustmentSpec adjustment_from_json(const json& j) {
    AdjustmentSpec spec;
    auto kind = adjustment_kind_from_string(j.at("kind").get<std::string>());
    if (!kind) throw std::invalid_argument("manifest: unknown adjustment kind");
    spec.kind = *kind;
    if (j.contains("target_id")) spec.target_id = j.at("target_id").get<std::string>();
    if (j.contains("factor")) spec.factor = j.at("factor").get<double>();
    spec.seed = j.at("seed").get<std::uint64_t>();
    spec.validate();
    return spec;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open manifest: " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

void write_lines(const std::filesystem::path& path, const std::vector<std::string>& lines) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open manifest for writing: " + path.string());
    for (const std::string& line : lines) out << line << '\n';
    if (!out) throw std::runtime_error("failed writing manifest: " + path.string());
}

}  // namespace

std::string serialize(const CorpusRecord& rec) {
    json j;
    j["image_id"] = rec.image_id;
    j["image"] = rec.image;
    j["alpha"] = rec.alpha;
    j["fg"] = rec.fg;
    j["bg"] = rec.bg;
    j["width"] = rec.width;
    j["height"] = rec.height;
    if (rec.split) j["split"] = *rec.split;
    return j.dump();
}

std::string serialize(const TripletRecord& rec) {
    json j;
    j["image_id"] = rec.image_id;
    j["image"] = rec.image;
    j["alpha"] = rec.alpha;
    j["bg"] = rec.bg;
    j["composite"] = rec.composite;
    j["trimap"] = rec.trimap;
    j["adjustment"] = adjustment_to_json(rec.adjustment);
    if (rec.composite_alpha) j["composite_alpha"] = *rec.composite_alpha;
    if (rec.split) j["split"] = *rec.split;
    return j.dump();
}

CorpusRecord parse_corpus_record(const std::string& line) {
    json j = json::parse(line);
    CorpusRecord rec;
    rec.image_id = j.at("image_id").get<std::string>();
    rec.image = j.at("image").get<std::string>();
    rec.alpha = j.at("alpha").get<std::string>();
    rec.fg = j.at("fg").get<std::string>();
    rec.bg = j.at("bg").get<std::string>();
    rec.width = j.at("width").get<int>();
    rec.height = j.at("height").get<int>();
    if (j.contains("split")) rec.split = j.at("split").get<std::string>();
    return rec;
}

TripletRecord parse_triplet_record(const std::string& line) {
    json j = json::parse(line);
    TripletRecord rec;
    rec.image_id = j.at("image_id").get<std::string>();
    rec.image = j.at("image").get<std::string>();
    rec.alpha = j.at("alpha").get<std::string>();
    rec.bg = j.at("bg").get<std::string>();
    rec.composite = j.at("composite").get<std::string>();
    rec.trimap = j.at("trimap").get<std::string>();
    rec.adjustment = adjustment_from_json(j.at("adjustment"));
    if (j.contains("composite_alpha")) rec.composite_alpha = j.at("composite_alpha").get<std::string>();
    if (j.contains("split")) rec.split = j.at("split").get<std::string>();
    return rec;
}

std::vector<CorpusRecord> read_corpus_manifest(const std::filesystem::path& path) {
    std::vector<CorpusRecord> recs;
    for (const std::string& line : read_lines(path)) recs.push_back(parse_corpus_record(line));
    return recs;
}

std::vector<TripletRecord> read_triplet_manifest(const std::filesystem::path& path) {
    std::vector<TripletRecord> recs;
    for (const std::string& line : read_lines(path)) recs.push_back(parse_triplet_record(line));
    return recs;
}

void write_corpus_manifest(const std::filesystem::path& path, const std::vector<CorpusRecord>& recs) {
    std::vector<std::string> lines;
    lines.reserve(recs.size());
    for (const CorpusRecord& rec : recs) lines.push_back(serialize(rec));
    write_lines(path, lines);
}

void write_triplet_manifest(const std::filesystem::path& path, const std::vector<TripletRecord>& recs) {
    std::vector<std::string> lines;
    lines.reserve(recs.size());
    for (const TripletRecord& rec : recs) lines.push_back(serialize(rec));
    write_lines(path, lines);
}

}  // namespace harmatte
