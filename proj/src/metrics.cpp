#include "argconc/metrics.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "argconc/error.hpp"
#include "argconc/text.hpp"

namespace argconc::metrics {
namespace {

Prf make_prf(double overlap, std::size_t candidate_count, std::size_t reference_count) {
  Prf out;
  if (candidate_count > 0) out.precision = overlap / static_cast<double>(candidate_count);
  if (reference_count > 0) out.recall = overlap / static_cast<double>(reference_count);
  if (out.precision + out.recall > 0.0) {
    out.f1 = 2.0 * out.precision * out.recall / (out.precision + out.recall);
  }
  return out;
}

std::unordered_map<std::string, std::size_t> ngram_counts(std::span<const std::string> tokens,
                                                          std::size_t n) {
  std::unordered_map<std::string, std::size_t> counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    // Tokens never contain spaces, so a space join is collision free.
    for (std::size_t k = 1; k < n; ++k) {
      key.push_back(' ');
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

std::set<std::string> types_of(std::string_view s) {
  auto tokens = text::tokenize(s);
  return {tokens.begin(), tokens.end()};
}

double best_match_mean(const TokenEmbeddings& from, const TokenEmbeddings& against) {
  double sum = 0.0;
  for (const auto& v : from.vectors) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& w : against.vectors) best = std::max(best, cosine(v, w));
    sum += best;
  }
  return sum / static_cast<double>(from.vectors.size());
}

}  // namespace

Prf rouge_n(std::span<const std::string> candidate, std::span<const std::string> reference,
            std::size_t n) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "rouge_n needs n >= 1");
  auto cand = ngram_counts(candidate, n);
  auto ref = ngram_counts(reference, n);
  std::size_t overlap = 0;
  for (const auto& [gram, count] : cand) {
    if (auto it = ref.find(gram); it != ref.end()) overlap += std::min(count, it->second);
  }
  const std::size_t cand_total = candidate.size() >= n ? candidate.size() - n + 1 : 0;
  const std::size_t ref_total = reference.size() >= n ? reference.size() - n + 1 : 0;
  return make_prf(static_cast<double>(overlap), cand_total, ref_total);
}

Prf rouge_n(std::string_view candidate, std::string_view reference, std::size_t n) {
  return rouge_n(text::tokenize(candidate), text::tokenize(reference), n);
}

Prf rouge_l(std::span<const std::string> candidate, std::span<const std::string> reference) {
  const std::size_t m = candidate.size();
  const std::size_t k = reference.size();
  std::vector<std::size_t> prev(k + 1, 0), row(k + 1, 0);
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= k; ++j) {
      row[j] = candidate[i - 1] == reference[j - 1] ? prev[j - 1] + 1
                                                     : std::max(prev[j], row[j - 1]);
    }
    std::swap(prev, row);
  }
  return make_prf(static_cast<double>(prev[k]), m, k);
}

Prf rouge_l(std::string_view candidate, std::string_view reference) {
  return rouge_l(text::tokenize(candidate), text::tokenize(reference));
}

double bertscore_f1(const TokenEmbeddings& candidate, const TokenEmbeddings& reference,
                    std::optional<double> baseline) {
  if (candidate.vectors.empty() || reference.vectors.empty()) {
    throw Error(ErrorCode::empty_token_list, "bertscore needs at least one token per side");
  }
  const double recall = best_match_mean(reference, candidate);
  const double precision = best_match_mean(candidate, reference);
  double f1 = 0.0;
  if (precision + recall != 0.0) f1 = 2.0 * precision * recall / (precision + recall);
  if (baseline) {
    if (*baseline >= 1.0) throw Error(ErrorCode::invalid_argument, "baseline must be < 1");
    f1 = (f1 - *baseline) / (1.0 - *baseline);
  }
  return f1;
}

double novelty(std::string_view conclusion, std::string_view text) {
  auto conclusion_types = types_of(conclusion);
  if (conclusion_types.empty()) {
    throw Error(ErrorCode::empty_conclusion, "conclusion has no words");
  }
  auto text_types = types_of(text);
  std::size_t novel = 0;
  for (const auto& t : conclusion_types) {
    if (!text_types.contains(t)) ++novel;
  }
  return 100.0 * static_cast<double>(novel) / static_cast<double>(conclusion_types.size());
}

double jaccard(std::string_view a, std::string_view b) {
  auto ta = types_of(a);
  auto tb = types_of(b);
  if (ta.empty() && tb.empty()) return 1.0;
  std::size_t common = 0;
  for (const auto& t : ta) {
    if (tb.contains(t)) ++common;
  }
  const std::size_t uni = ta.size() + tb.size() - common;
  return static_cast<double>(common) / static_cast<double>(uni);
}

MetricReport score_pair(std::string_view candidate, std::string_view reference,
                        std::optional<std::string_view> source_text) {
  auto cand = text::tokenize(candidate);
  auto ref = text::tokenize(reference);
  MetricReport r;
  r.rouge1_f = rouge_n(cand, ref, 1).f1;
  r.rouge2_f = rouge_n(cand, ref, 2).f1;
  r.rougeL_f = rouge_l(cand, ref).f1;
  r.jaccard = jaccard(candidate, reference);
  r.candidate_len_words = text::word_count(candidate);
  r.reference_len_words = text::word_count(reference);
  if (source_text && !cand.empty()) r.novelty_pct = novelty(candidate, *source_text);
  return r;
}

// ---- manual evaluation -------------------------------------------------

std::string_view to_string(ErrorType e) {
  switch (e) {
    case ErrorType::WT: return "WT";
    case ErrorType::WS: return "WS";
    case ErrorType::NA: return "NA";
  }
  return "unknown";
}

ErrorType parse_error_type(std::string_view token) {
  if (token == "WT") return ErrorType::WT;
  if (token == "WS") return ErrorType::WS;
  if (token == "NA") return ErrorType::NA;
  throw Error(ErrorCode::schema_error, "unknown error_type '" + std::string(token) + "'");
}

bool is_consistent(const AnnotationLabel& label) noexcept {
  if (label.is_conclusion) {
    return label.fluent.has_value() && label.too_generic.has_value() &&
           !label.error_type.has_value();
  }
  return !label.fluent.has_value() && !label.too_generic.has_value() &&
         label.error_type.has_value();
}

double AgreementRow::conclusion_pct() const {
  return items == 0 ? 0.0 : 100.0 * static_cast<double>(agreed_conclusions) / static_cast<double>(items);
}

double AgreementRow::informative_pct() const {
  return items == 0 ? 0.0 : 100.0 * static_cast<double>(agreed_informative) / static_cast<double>(items);
}

std::optional<double> AgreementRow::fluent_pct() const {
  if (agreed_conclusions == 0) return std::nullopt;
  return 100.0 * static_cast<double>(agreed_fluent) / static_cast<double>(agreed_conclusions);
}

std::map<ErrorType, double> AgreementRow::error_distribution() const {
  std::map<ErrorType, double> out;
  if (agreed_errors == 0) return out;
  for (ErrorType e : {ErrorType::WT, ErrorType::WS, ErrorType::NA}) {
    auto it = error_counts.find(e);
    const std::size_t c = it == error_counts.end() ? 0 : it->second;
    out[e] = 100.0 * static_cast<double>(c) / static_cast<double>(agreed_errors);
  }
  return out;
}

std::vector<AgreementRow> aggregate_agreement(std::span<const AnnotationLabel> labels_a,
                                              std::span<const AnnotationLabel> labels_b,
                                              std::span<const std::string> groups) {
  if (labels_a.size() != labels_b.size() || labels_a.size() != groups.size()) {
    throw Error(ErrorCode::length_mismatch,
                std::to_string(labels_a.size()) + " / " + std::to_string(labels_b.size()) +
                    " / " + std::to_string(groups.size()));
  }
  std::vector<AgreementRow> rows;
  std::unordered_map<std::string, std::size_t> row_of;
  for (std::size_t i = 0; i < labels_a.size(); ++i) {
    const auto& a = labels_a[i];
    const auto& b = labels_b[i];
    if (!is_consistent(a) || !is_consistent(b)) {
      throw Error(ErrorCode::invalid_argument,
                  "inconsistent annotation label at item " + std::to_string(i));
    }
    auto [it, inserted] = row_of.try_emplace(groups[i], rows.size());
    if (inserted) {
      AgreementRow row;
      row.group = groups[i];
      rows.push_back(std::move(row));
    }
    auto& row = rows[it->second];
    ++row.items;
    if (a.is_conclusion && b.is_conclusion) {
      ++row.agreed_conclusions;
      if (!*a.too_generic && !*b.too_generic) ++row.agreed_informative;
      if (*a.fluent && *b.fluent) ++row.agreed_fluent;
    } else if (!a.is_conclusion && !b.is_conclusion && *a.error_type == *b.error_type) {
      ++row.agreed_errors;
      ++row.error_counts[*a.error_type];
    }
  }
  return rows;
}

}  // namespace argconc::metrics
