#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "argconc/record.hpp"

namespace argconc::ingestion {

// Rejection rule codes, listed in the order they are checked.
namespace rules {
inline constexpr std::string_view excluded_portal = "excluded_portal";
inline constexpr std::string_view missing_cmv_tag = "missing_cmv_tag";
inline constexpr std::string_view con_stance = "con_stance";
inline constexpr std::string_view empty_id = "empty_id";
inline constexpr std::string_view duplicate_id = "duplicate_id";
inline constexpr std::string_view text_too_short = "text_too_short";
inline constexpr std::string_view conclusion_too_short = "conclusion_too_short";
inline constexpr std::string_view conclusion_equals_topic = "conclusion_equals_topic";
inline constexpr std::string_view text_shorter_than_conclusion = "text_shorter_than_conclusion";
// Remaining record-level violations reuse the record_model codes
// (empty_topic, empty_target, duplicate_target, empty_aspect, duplicate_aspect).
}  // namespace rules

struct FilterConfig {
  std::size_t min_text_words = 11;
  std::size_t min_conclusion_words = 3;
  bool require_cmv_tag = false;
  bool drop_con_stance = false;
  bool drop_conclusion_equals_topic = false;
  bool drop_text_shorter_than_conclusion = false;
  std::vector<std::string> excluded_portals = {"debate.org"};

  /// CMV dumps: CMV tag required. Debate dumps: con stance, topic-equal
  /// conclusions and texts shorter than their conclusion are dropped.
  static FilterConfig defaults_for(SourceKind source);

  /// Throws invalid_argument unless counts >= 1 and portals are lowercase.
  void validate() const;
};

struct Rejection {
  ArgConclusionRecord record;
  std::string rule;
};

struct IngestResult {
  std::vector<ArgConclusionRecord> kept;
  std::vector<Rejection> rejected;
};

/// Recognizes a leading "CMV:" (any case, optional space before the colon)
/// or "[CMV]" tag. Returns the title with the tag removed, or nullopt when
/// no tag is present.
std::optional<std::string> strip_cmv_tag(std::string_view title);

/// Converts one raw-dump JSON line into a record plus its portal (debate
/// dumps only). Throws schema_error on malformed input.
struct RawRecord {
  ArgConclusionRecord record;
  std::string portal;
  bool has_cmv_tag = false;
};
RawRecord parse_raw(std::string_view json_line, SourceKind source);

/// First violated rule for an already-parsed raw record, or nullopt when
/// it passes every active filter. Id uniqueness is checked by ingest, which
/// sees the whole file.
std::optional<std::string> first_violation(const RawRecord& raw, const FilterConfig& config);

/// Reads a raw JSONL dump and partitions it into kept and rejected records,
/// preserving input order. Blank lines are skipped. Throws io_error or
/// schema_error (with the 1-based line number).
IngestResult ingest(const std::filesystem::path& path, SourceKind source,
                    const FilterConfig& config);
IngestResult ingest_lines(std::span<const std::string> lines, SourceKind source,
                          const FilterConfig& config);

/// Drops a record only when an earlier record has the same text and the
/// same conclusion. Shared conclusions with distinct texts are kept.
std::vector<ArgConclusionRecord> dedup_policy(std::span<const ArgConclusionRecord> records);

struct SourceStats {
  std::size_t n_records = 0;
  double avg_text_words = 0.0;
  double avg_conclusion_words = 0.0;
  double avg_novelty_pct = 0.0;
  // Records whose conclusion had at least one token; novelty averages over these.
  std::size_t novelty_records = 0;
};

struct CorpusStats {
  SourceStats overall;
  std::map<SourceKind, SourceStats> per_source;
};

/// Throws Error{empty_corpus} on an empty list.
CorpusStats corpus_stats(std::span<const ArgConclusionRecord> records);

}  // namespace argconc::ingestion
