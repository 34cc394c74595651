#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "harmatte/adjust.hpp"

namespace harmatte {

/// One prepared corpus entry. Paths are relative to the manifest's directory,
/// with forward slashes.
struct CorpusRecord {
    std::string image_id;
    std::string image;
    std::string alpha;
    std::string fg;
    std::string bg;
    int width = 0;
    int height = 0;
    std::optional<std::string> split;  // "train" | "test"

    bool operator==(const CorpusRecord&) const = default;
};

/// One synthesized training triplet. The composite is regenerable bit-exactly
/// from the referenced inputs plus the adjustment spec.
struct TripletRecord {
    std::string image_id;
    std::string image;
    std::string alpha;
    std::string bg;
    std::string composite;
    std::string trimap;
    AdjustmentSpec adjustment;
    /// Set only when a predicted matte was substituted for compositing.
    std::optional<std::string> composite_alpha;
    std::optional<std::string> split;

    bool operator==(const TripletRecord&) const = default;
};

/// Manifests are UTF-8 text, one JSON object per line, streamable and
/// diff-friendly at corpus scale.

std::string serialize(const CorpusRecord& rec);
std::string serialize(const TripletRecord& rec);
CorpusRecord parse_corpus_record(const std::string& line);
TripletRecord parse_triplet_record(const std::string& line);

std::vector<CorpusRecord> read_corpus_manifest(const std::filesystem::path& path);
std::vector<TripletRecord> read_triplet_manifest(const std::filesystem::path& path);
void write_corpus_manifest(const std::filesystem::path& path, const std::vector<CorpusRecord>& recs);
void write_triplet_manifest(const std::filesystem::path& path, const std::vector<TripletRecord>& recs);

}  // namespace harmatte
