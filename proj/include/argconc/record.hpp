#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace argconc {

enum class SourceKind { cmv_post, cmv_comment, kialo, argsme, argskp };
enum class StanceLabel { pro, con, unknown };
enum class CorpusVariant { all, cmv, debates, topic, aspects, targets };

std::string_view to_string(SourceKind kind);
std::string_view to_string(StanceLabel stance);
std::string_view to_string(CorpusVariant variant);

// Parsers accept the lowercase serialized token only. They throw
// Error{schema_error} on anything else.
SourceKind parse_source_kind(std::string_view token);
StanceLabel parse_stance(std::string_view token);
CorpusVariant parse_variant(std::string_view token);

bool is_cmv(SourceKind kind) noexcept;
bool is_debate(SourceKind kind) noexcept;

struct ArgConclusionRecord {
  std::string id;
  SourceKind source = SourceKind::cmv_post;
  std::string text;
  std::string conclusion;
  std::optional<std::string> topic;
  std::vector<std::string> targets;
  std::vector<std::string> aspects;
  StanceLabel stance = StanceLabel::unknown;

  bool operator==(const ArgConclusionRecord&) const = default;
};

enum class Violation {
  empty_id,
  empty_text,
  empty_conclusion,
  empty_topic,
  empty_target,
  duplicate_target,
  empty_aspect,
  duplicate_aspect,
  duplicate_id,
};

std::string_view to_string(Violation v);

struct ValidationResult {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
};

// Reports every structural invariant the record breaks, in declaration
// order of the Violation enum. Never throws.
ValidationResult validate_record(const ArgConclusionRecord& record);

// Per-record validation plus id uniqueness. Entry i belongs to records[i];
// the second and later holders of an id get duplicate_id.
std::vector<ValidationResult> validate_corpus(
    std::span<const ArgConclusionRecord> records);

// One JSON object per line, fields in the order
// id, source, text, conclusion, topic, targets, aspects, stance.
// An absent topic is omitted.
std::string serialize(const ArgConclusionRecord& record);
ArgConclusionRecord parse_record(std::string_view json_line);

std::vector<ArgConclusionRecord> read_corpus(const std::filesystem::path& path);
void write_corpus(const std::filesystem::path& path,
                  std::span<const ArgConclusionRecord> records);

}  // namespace argconc
