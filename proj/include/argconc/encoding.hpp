#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "argconc/record.hpp"

namespace argconc::encoding {

inline constexpr std::string_view kTopicToken = "<|TOPIC|>";
inline constexpr std::string_view kArgumentToken = "<|ARGUMENT|>";
inline constexpr std::string_view kAspectsToken = "<|ASPECTS|>";
inline constexpr std::string_view kTargetsToken = "<|TARGETS|>";
inline constexpr std::string_view kConclusionToken = "<|CONCLUSION|>";
inline constexpr std::string_view kMissingTopic = "NA";
inline constexpr std::string_view kListSeparator = ", ";

/// topic, aspects and targets variants carry control codes; all, cmv and
/// debates use the bare argument text.
bool is_knowledge_variant(CorpusVariant variant) noexcept;

struct EncodedExample {
  std::string source_sequence;
  std::string target_sequence;
  CorpusVariant variant = CorpusVariant::all;
  std::string record_id;
  SourceKind source = SourceKind::cmv_post;

  bool operator==(const EncodedExample&) const = default;
};

/// Throws missing_knowledge when the variant needs aspects/targets the
/// record lacks, and control_token_in_value when a field that would be
/// embedded contains one of the control tokens.
EncodedExample encode_example(const ArgConclusionRecord& record, CorpusVariant variant);

struct ParsedSequence {
  std::string topic;
  std::string text;
  std::optional<std::string> aspects;
  std::optional<std::string> targets;

  bool operator==(const ParsedSequence&) const = default;
};

/// Inverse of encode_example for knowledge variants. Throws
/// malformed_sequence when tokens are missing, repeated or out of order.
ParsedSequence parse_encoded(std::string_view source_sequence);

struct DroppedRecord {
  std::string record_id;
  std::string reason;
};

struct VariantBuild {
  std::vector<EncodedExample> examples;
  std::vector<DroppedRecord> dropped;
};

/// Encodes every record eligible for the variant, in corpus order. cmv and
/// debates keep only their own sources; aspects/targets drop records
/// without that knowledge. Records that cannot be encoded are listed in
/// `dropped` rather than failing the build.
VariantBuild build_variant(std::span<const ArgConclusionRecord> corpus, CorpusVariant variant);

struct SplitSpec {
  double train_fraction = 0.9;
  double valid_fraction = 0.1;
  std::size_t test_count = 1000;
  std::uint64_t seed = 5153;

  void validate() const;
};

struct Splits {
  std::vector<EncodedExample> train;
  std::vector<EncodedExample> valid;
  std::vector<EncodedExample> test;
};

/// Deterministic seeded shuffle; the test set is drawn first (half CMV and
/// half debates when both are present), then valid = floor(rest *
/// valid_fraction) and train takes the remainder. Throws corpus_too_small
/// unless |examples| > test_count.
Splits split_corpus(std::span<const EncodedExample> examples, const SplitSpec& spec);

/// Fisher-Yates permutation of [0, n) driven by mt19937_64. Its output is
/// fixed by the standard, so a seed yields the same order everywhere.
std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed);

/// 512 for plain variants, 750 for knowledge variants.
std::size_t default_max_source_tokens(CorpusVariant variant);

/// Line breaks become spaces, then the text is cut after its
/// max_tokens-th whitespace word.
std::string prepare_source_line(std::string_view source, std::size_t max_tokens);

struct ExportedFiles {
  std::filesystem::path source;
  std::filesystem::path target;
  std::filesystem::path ids;
};

/// Writes <dir>/<split>.source, <split>.target and <split>.ids with one
/// example per line, aligned by line number.
ExportedFiles export_seq2seq(std::span<const EncodedExample> examples,
                             const std::filesystem::path& dir, std::string_view split,
                             std::size_t max_source_tokens);

}  // namespace argconc::encoding
