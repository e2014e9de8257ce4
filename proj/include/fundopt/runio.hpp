#pragma once

#include "fundopt/agbo.hpp"
#include "fundopt/features.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <vector>

namespace fundopt {

/// Configuration or data-file problem, with the offending key path in the
/// message (e.g. "ga.pc").
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Strictly parses a run configuration: unknown keys are rejected,
/// out-of-range values name their key path, defaults are filled in.
AgboConfig load_config(const std::filesystem::path& path);
AgboConfig config_from_json(const nlohmann::ordered_json& j);

/// Full echo of a config including applied defaults; load(serialize(cfg))
/// reproduces cfg exactly.
nlohmann::ordered_json config_to_json(const AgboConfig& cfg);

/// One history record as a JSON object with fields iter, x, f, best, acq,
/// ms. Gene values resolve through the space: integers emit as integers,
/// categorical genes as their choice label.
nlohmann::ordered_json history_record_to_json(const HistoryRecord& rec,
                                              const SearchSpace& space);

/// Streams history records as JSONL, one object per line, flushing each
/// line so an interrupted run leaves a parseable prefix.
class HistoryWriter {
public:
    HistoryWriter(const std::filesystem::path& path, SearchSpace space);

    /// Throws std::runtime_error on write failure.
    void append(const HistoryRecord& rec);

private:
    std::ofstream out_;
    SearchSpace space_;
    std::filesystem::path path_;
};

nlohmann::ordered_json feature_record_to_json(const FeatureRecord& rec);

/// Fixed 19-column CSV export (header plus one row per record). Throws on
/// an empty list or write failure.
void export_features_csv(const std::vector<FeatureRecord>& records,
                         const std::filesystem::path& path);

/// Benchmark comparison table as CSV: objective,method,seed,best_fitness.
void export_comparison_csv(const std::vector<ComparisonRow>& rows,
                           const std::filesystem::path& path);

} // namespace fundopt
