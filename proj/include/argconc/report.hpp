#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "argconc/ingestion.hpp"
#include "argconc/metrics.hpp"

namespace argconc::report {

std::string stats_json(const ingestion::CorpusStats& stats);

inline const std::vector<std::string> kAllMetrics = {"rouge1", "rouge2", "rougeL",
                                                     "bertscore", "novelty", "jaccard"};

/// {"rows": [...], "aggregate": {...}}. Rows carry the selected metrics
/// (names from kAllMetrics) plus word lengths; the aggregate holds the mean
/// of each selected metric over the rows that have it.
std::string evaluation_json(std::span<const metrics::MetricReport> rows,
                            const std::vector<std::string>& selected = kAllMetrics);

std::string agreement_json(std::span<const metrics::AgreementRow> rows);

/// Rejection report: one {"id","rule"} object per line.
std::string rejections_jsonl(std::span<const ingestion::Rejection> rejected);

// Provenance written next to every CLI output artifact.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> config;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::optional<std::uint64_t> seed;
  std::string started_at;
  std::string finished_at;
};

/// Current UTC time as ISO-8601 with a trailing Z.
std::string utc_timestamp();

std::string manifest_json(const RunManifest& manifest);
void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);

}  // namespace argconc::report
