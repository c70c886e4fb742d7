#include "argconc/ingestion.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>
#include <utility>

#include "argconc/error.hpp"
#include "argconc/io.hpp"
#include "argconc/metrics.hpp"
#include "argconc/text.hpp"
#include "json.hpp"

namespace argconc::ingestion {
namespace {

using json = nlohmann::json;

std::string required_string(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw Error(ErrorCode::schema_error, std::string("missing string field '") + key + "'");
  }
  return it->get<std::string>();
}

std::optional<std::string> optional_string(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw Error(ErrorCode::schema_error, std::string("field '") + key + "' must be a string");
  }
  return it->get<std::string>();
}

std::vector<std::string> string_list(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return {};
  if (!it->is_array()) {
    throw Error(ErrorCode::schema_error, std::string("field '") + key + "' must be an array");
  }
  std::vector<std::string> out;
  for (const auto& v : *it) {
    if (!v.is_string()) {
      throw Error(ErrorCode::schema_error, std::string("field '") + key + "' must hold strings");
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

bool portal_excluded(std::string_view portal, const std::vector<std::string>& excluded) {
  const auto p = text::to_lower_ascii(text::normalize_whitespace(portal));
  if (p.empty()) return false;
  return std::any_of(excluded.begin(), excluded.end(), [&](const std::string& e) {
    return p == e || (p.size() > e.size() && p.ends_with(e) && p[p.size() - e.size() - 1] == '.');
  });
}

std::string comparison_key(std::string_view s) {
  return text::to_lower_ascii(text::normalize_whitespace(s));
}

std::optional<std::string> check(const RawRecord& raw, const FilterConfig& config,
                                 bool duplicate_id) {
  const auto& r = raw.record;
  if (is_debate(r.source) && portal_excluded(raw.portal, config.excluded_portals)) {
    return std::string(rules::excluded_portal);
  }
  if (is_cmv(r.source) && config.require_cmv_tag && !raw.has_cmv_tag) {
    return std::string(rules::missing_cmv_tag);
  }
  if (config.drop_con_stance && r.stance == StanceLabel::con) {
    return std::string(rules::con_stance);
  }
  if (r.id.empty()) return std::string(rules::empty_id);
  if (duplicate_id) return std::string(rules::duplicate_id);

  const std::size_t text_words = text::word_count(r.text);
  const std::size_t conclusion_words = text::word_count(r.conclusion);
  if (text_words < config.min_text_words) return std::string(rules::text_too_short);
  if (conclusion_words < config.min_conclusion_words) {
    return std::string(rules::conclusion_too_short);
  }
  if (config.drop_conclusion_equals_topic && r.topic &&
      comparison_key(r.conclusion) == comparison_key(*r.topic)) {
    return std::string(rules::conclusion_equals_topic);
  }
  if (config.drop_text_shorter_than_conclusion && text_words < conclusion_words) {
    return std::string(rules::text_shorter_than_conclusion);
  }
  auto validation = validate_record(r);
  if (!validation.ok()) return std::string(to_string(validation.violations.front()));
  return std::nullopt;
}

}  // namespace

FilterConfig FilterConfig::defaults_for(SourceKind source) {
  FilterConfig c;
  if (is_cmv(source)) {
    c.require_cmv_tag = true;
  } else {
    c.drop_con_stance = true;
    c.drop_conclusion_equals_topic = true;
    c.drop_text_shorter_than_conclusion = true;
  }
  return c;
}

void FilterConfig::validate() const {
  if (min_text_words < 1 || min_conclusion_words < 1) {
    throw Error(ErrorCode::invalid_argument, "word minimums must be >= 1");
  }
  for (const auto& p : excluded_portals) {
    if (p != text::to_lower_ascii(p)) {
      throw Error(ErrorCode::invalid_argument, "excluded portal '" + p + "' is not lowercase");
    }
  }
}

std::optional<std::string> strip_cmv_tag(std::string_view title) {
  std::size_t i = 0;
  while (i < title.size() && text::is_space(title[i])) ++i;
  auto rest = title.substr(i);
  auto lower = text::to_lower_ascii(rest.substr(0, std::min<std::size_t>(rest.size(), 6)));
  std::size_t consumed = 0;
  if (lower.starts_with("[cmv]")) {
    consumed = 5;
    std::size_t j = consumed;
    while (j < rest.size() && text::is_space(rest[j])) ++j;
    if (j < rest.size() && rest[j] == ':') consumed = j + 1;
  } else if (lower.starts_with("cmv")) {
    std::size_t j = 3;
    while (j < rest.size() && text::is_space(rest[j])) ++j;
    if (j >= rest.size() || rest[j] != ':') return std::nullopt;
    consumed = j + 1;
  } else {
    return std::nullopt;
  }
  rest.remove_prefix(consumed);
  while (!rest.empty() && text::is_space(rest.front())) rest.remove_prefix(1);
  return std::string(rest);
}

RawRecord parse_raw(std::string_view json_line, SourceKind source) {
  json j;
  try {
    j = json::parse(json_line);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::schema_error, e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::schema_error, "line is not a JSON object");

  RawRecord raw;
  auto& r = raw.record;
  r.source = source;
  if (auto it = j.find("id"); it != j.end() && it->is_number_integer()) {
    r.id = std::to_string(it->get<long long>());
  } else {
    r.id = required_string(j, "id");
  }
  r.targets = string_list(j, "targets");
  r.aspects = string_list(j, "aspects");

  if (is_cmv(source)) {
    const auto title = required_string(j, "title");
    auto body = optional_string(j, "selftext");
    if (!body) body = optional_string(j, "body");
    if (!body) throw Error(ErrorCode::schema_error, "missing string field 'selftext'");
    auto stripped = strip_cmv_tag(title);
    raw.has_cmv_tag = stripped.has_value();
    r.conclusion = stripped ? *stripped : title;
    r.text = *body;
    r.stance = StanceLabel::pro;
  } else {
    r.conclusion = required_string(j, "conclusion");
    auto premise = optional_string(j, "premise");
    if (!premise) premise = optional_string(j, "text");
    if (!premise) throw Error(ErrorCode::schema_error, "missing string field 'premise'");
    r.text = *premise;
    r.topic = optional_string(j, "topic");
    raw.portal = optional_string(j, "portal").value_or("");
    auto stance = optional_string(j, "stance");
    r.stance = stance ? parse_stance(text::to_lower_ascii(*stance)) : StanceLabel::unknown;
  }
  return raw;
}

std::optional<std::string> first_violation(const RawRecord& raw, const FilterConfig& config) {
  return check(raw, config, false);
}

IngestResult ingest_lines(std::span<const std::string> lines, SourceKind source,
                          const FilterConfig& config) {
  config.validate();
  IngestResult result;
  std::unordered_set<std::string> seen_ids;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (text::word_count(lines[i]) == 0) continue;
    RawRecord raw;
    try {
      raw = parse_raw(lines[i], source);
    } catch (const Error& e) {
      throw Error(ErrorCode::schema_error, "line " + std::to_string(i + 1) + ": " + e.what());
    }
    const bool duplicate = !raw.record.id.empty() && !seen_ids.insert(raw.record.id).second;
    if (auto rule = check(raw, config, duplicate)) {
      result.rejected.push_back({std::move(raw.record), std::move(*rule)});
    } else {
      result.kept.push_back(std::move(raw.record));
    }
  }
  return result;
}

IngestResult ingest(const std::filesystem::path& path, SourceKind source,
                    const FilterConfig& config) {
  const auto lines = io::read_lines(path);
  return ingest_lines(lines, source, config);
}

std::vector<ArgConclusionRecord> dedup_policy(std::span<const ArgConclusionRecord> records) {
  std::set<std::pair<std::string_view, std::string_view>> seen;
  std::vector<ArgConclusionRecord> out;
  for (const auto& r : records) {
    if (seen.emplace(r.text, r.conclusion).second) out.push_back(r);
  }
  return out;
}

namespace {

struct Accumulator {
  std::size_t n = 0;
  double text_words = 0.0;
  double conclusion_words = 0.0;
  double novelty = 0.0;
  std::size_t novelty_n = 0;

  void add(const ArgConclusionRecord& r) {
    ++n;
    text_words += static_cast<double>(text::word_count(r.text));
    conclusion_words += static_cast<double>(text::word_count(r.conclusion));
    if (!text::tokenize(r.conclusion).empty()) {
      novelty += metrics::novelty(r.conclusion, r.text);
      ++novelty_n;
    }
  }

  SourceStats finish() const {
    SourceStats s;
    s.n_records = n;
    s.novelty_records = novelty_n;
    if (n > 0) {
      s.avg_text_words = text_words / static_cast<double>(n);
      s.avg_conclusion_words = conclusion_words / static_cast<double>(n);
    }
    if (novelty_n > 0) s.avg_novelty_pct = novelty / static_cast<double>(novelty_n);
    return s;
  }
};

}  // namespace

CorpusStats corpus_stats(std::span<const ArgConclusionRecord> records) {
  if (records.empty()) throw Error(ErrorCode::empty_corpus, "no records to summarize");
  Accumulator overall;
  std::map<SourceKind, Accumulator> per_source;
  for (const auto& r : records) {
    overall.add(r);
    per_source[r.source].add(r);
  }
  CorpusStats stats;
  stats.overall = overall.finish();
  for (const auto& [kind, acc] : per_source) stats.per_source[kind] = acc.finish();
  return stats;
}

}  // namespace argconc::ingestion
