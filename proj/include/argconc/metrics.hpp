#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "argconc/embedding.hpp"

namespace argconc::metrics {

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// All text metrics tokenize with text::tokenize (lowercase, split on
// non-alphanumerics). Absolute ROUGE values depend on that rule.

/// N-gram multiset overlap with clipped counts. Empty inputs (or inputs
/// shorter than n tokens) score zero. Throws invalid_argument for n == 0.
Prf rouge_n(std::string_view candidate, std::string_view reference, std::size_t n);
Prf rouge_n(std::span<const std::string> candidate,
            std::span<const std::string> reference, std::size_t n);

/// Longest-common-subsequence ROUGE.
Prf rouge_l(std::string_view candidate, std::string_view reference);
Prf rouge_l(std::span<const std::string> candidate,
            std::span<const std::string> reference);

/// Greedy-matching BERTScore F1. Recall averages, over reference tokens,
/// the best cosine against any candidate token; precision is the mirror.
/// With a baseline b the result is rescaled to (F1 - b) / (1 - b).
double bertscore_f1(const TokenEmbeddings& candidate, const TokenEmbeddings& reference,
                    std::optional<double> baseline = std::nullopt);

/// Percentage of conclusion word types that never occur in the text.
/// Throws Error{empty_conclusion} when the conclusion has no tokens.
double novelty(std::string_view conclusion, std::string_view text);

/// Word-type Jaccard similarity; 1.0 when both sides are empty.
double jaccard(std::string_view a, std::string_view b);

struct MetricReport {
  double rouge1_f = 0.0;
  double rouge2_f = 0.0;
  double rougeL_f = 0.0;
  std::optional<double> bertscore_f;
  std::optional<double> novelty_pct;
  double jaccard = 0.0;
  std::size_t candidate_len_words = 0;
  std::size_t reference_len_words = 0;
};

/// Lexical metrics for one pair. Novelty is filled when the source text of
/// the argument is supplied.
MetricReport score_pair(std::string_view candidate, std::string_view reference,
                        std::optional<std::string_view> source_text = std::nullopt);

// ---- manual evaluation -------------------------------------------------

enum class ErrorType { WT, WS, NA };

std::string_view to_string(ErrorType e);
ErrorType parse_error_type(std::string_view token);

struct AnnotationLabel {
  bool is_conclusion = false;
  std::optional<bool> fluent;
  std::optional<bool> too_generic;
  std::optional<ErrorType> error_type;
};

/// fluent/too_generic present iff is_conclusion; error_type present iff not.
bool is_consistent(const AnnotationLabel& label) noexcept;

struct AgreementRow {
  std::string group;
  std::size_t items = 0;
  std::size_t agreed_conclusions = 0;
  std::size_t agreed_informative = 0;
  std::size_t agreed_fluent = 0;
  std::size_t agreed_errors = 0;
  std::map<ErrorType, std::size_t> error_counts;

  double conclusion_pct() const;
  double informative_pct() const;
  /// Share of agreed conclusions both annotators judged fluent; empty when
  /// there are no agreed conclusions.
  std::optional<double> fluent_pct() const;
  /// WT/WS/NA shares over items where both annotators chose the same error
  /// type. Empty when no such item exists.
  std::map<ErrorType, double> error_distribution() const;
};

/// Full-agreement table, one row per distinct group key in first-seen order.
/// Throws length_mismatch when the three lists differ in length and
/// invalid_argument on an inconsistent label.
std::vector<AgreementRow> aggregate_agreement(std::span<const AnnotationLabel> labels_a,
                                              std::span<const AnnotationLabel> labels_b,
                                              std::span<const std::string> groups);

// Annotation JSONL: {"id","annotator","is_conclusion","fluent","too_generic",
// "error_type","group"}; fluent/too_generic/error_type may be null or absent.
struct AnnotationRecord {
  std::string id;
  std::string annotator;
  std::string group;
  AnnotationLabel label;
};

/// Throws schema_error on malformed JSON or an inconsistent label.
AnnotationRecord parse_annotation(std::string_view json_line);

struct PairedAnnotations {
  std::string annotator_a;
  std::string annotator_b;
  std::vector<std::string> ids;
  std::vector<std::string> groups;
  std::vector<AnnotationLabel> labels_a;
  std::vector<AnnotationLabel> labels_b;
};

/// Aligns the labels of exactly two annotators (a = lexicographically
/// first) by item id, in order of first appearance. Throws schema_error when
/// there are not exactly two annotators, an item lacks one of them, an
/// annotator labels an item twice, or the two disagree on the group.
PairedAnnotations pair_annotations(std::span<const AnnotationRecord> records);

}  // namespace argconc::metrics
