#include "argconc/record.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "argconc/error.hpp"
#include "argconc/io.hpp"
#include "argconc/text.hpp"
#include "json.hpp"

namespace argconc {
namespace {

using ordered_json = nlohmann::ordered_json;

template <typename Enum, std::size_t N>
Enum parse_token(std::string_view token, const Enum (&all)[N],
                 std::string_view what) {
  for (Enum e : all) {
    if (to_string(e) == token) return e;
  }
  throw Error(ErrorCode::schema_error,
              "unknown " + std::string(what) + " '" + std::string(token) + "'");
}

bool blank(std::string_view s) { return text::word_count(s) == 0; }

// Adds the empty/duplicate violations for a list field.
void check_list(const std::vector<std::string>& items, Violation empty,
                Violation duplicate, std::vector<Violation>& out) {
  std::unordered_set<std::string_view> seen;
  bool has_empty = false;
  bool has_duplicate = false;
  for (const auto& item : items) {
    if (blank(item)) has_empty = true;
    if (!seen.insert(item).second) has_duplicate = true;
  }
  if (has_empty) out.push_back(empty);
  if (has_duplicate) out.push_back(duplicate);
}

std::string required_string(const ordered_json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error(ErrorCode::schema_error, std::string("missing field '") + key + "'");
  }
  if (!it->is_string()) {
    throw Error(ErrorCode::schema_error, std::string("field '") + key + "' must be a string");
  }
  return it->get<std::string>();
}

std::vector<std::string> string_list(const ordered_json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return {};
  if (!it->is_array()) {
    throw Error(ErrorCode::schema_error, std::string("field '") + key + "' must be an array");
  }
  std::vector<std::string> out;
  for (const auto& v : *it) {
    if (!v.is_string()) {
      throw Error(ErrorCode::schema_error,
                  std::string("field '") + key + "' must hold strings");
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

std::string_view to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::cmv_post: return "cmv_post";
    case SourceKind::cmv_comment: return "cmv_comment";
    case SourceKind::kialo: return "kialo";
    case SourceKind::argsme: return "argsme";
    case SourceKind::argskp: return "argskp";
  }
  return "unknown";
}

std::string_view to_string(StanceLabel stance) {
  switch (stance) {
    case StanceLabel::pro: return "pro";
    case StanceLabel::con: return "con";
    case StanceLabel::unknown: return "unknown";
  }
  return "unknown";
}

std::string_view to_string(CorpusVariant variant) {
  switch (variant) {
    case CorpusVariant::all: return "all";
    case CorpusVariant::cmv: return "cmv";
    case CorpusVariant::debates: return "debates";
    case CorpusVariant::topic: return "topic";
    case CorpusVariant::aspects: return "aspects";
    case CorpusVariant::targets: return "targets";
  }
  return "unknown";
}

std::string_view to_string(Violation v) {
  switch (v) {
    case Violation::empty_id: return "empty_id";
    case Violation::empty_text: return "empty_text";
    case Violation::empty_conclusion: return "empty_conclusion";
    case Violation::empty_topic: return "empty_topic";
    case Violation::empty_target: return "empty_target";
    case Violation::duplicate_target: return "duplicate_target";
    case Violation::empty_aspect: return "empty_aspect";
    case Violation::duplicate_aspect: return "duplicate_aspect";
    case Violation::duplicate_id: return "duplicate_id";
  }
  return "unknown";
}

SourceKind parse_source_kind(std::string_view token) {
  static constexpr SourceKind all[] = {SourceKind::cmv_post, SourceKind::cmv_comment,
                                       SourceKind::kialo, SourceKind::argsme,
                                       SourceKind::argskp};
  return parse_token(token, all, "source");
}

StanceLabel parse_stance(std::string_view token) {
  static constexpr StanceLabel all[] = {StanceLabel::pro, StanceLabel::con,
                                        StanceLabel::unknown};
  return parse_token(token, all, "stance");
}

CorpusVariant parse_variant(std::string_view token) {
  static constexpr CorpusVariant all[] = {CorpusVariant::all,     CorpusVariant::cmv,
                                          CorpusVariant::debates, CorpusVariant::topic,
                                          CorpusVariant::aspects, CorpusVariant::targets};
  return parse_token(token, all, "variant");
}

bool is_cmv(SourceKind kind) noexcept {
  return kind == SourceKind::cmv_post || kind == SourceKind::cmv_comment;
}

bool is_debate(SourceKind kind) noexcept { return !is_cmv(kind); }

ValidationResult validate_record(const ArgConclusionRecord& record) {
  ValidationResult result;
  auto& v = result.violations;
  if (record.id.empty()) v.push_back(Violation::empty_id);
  if (blank(record.text)) v.push_back(Violation::empty_text);
  if (blank(record.conclusion)) v.push_back(Violation::empty_conclusion);
  if (record.topic && blank(*record.topic)) v.push_back(Violation::empty_topic);
  check_list(record.targets, Violation::empty_target, Violation::duplicate_target, v);
  check_list(record.aspects, Violation::empty_aspect, Violation::duplicate_aspect, v);
  return result;
}

std::vector<ValidationResult> validate_corpus(
    std::span<const ArgConclusionRecord> records) {
  std::vector<ValidationResult> results;
  results.reserve(records.size());
  std::unordered_set<std::string_view> ids;
  for (const auto& r : records) {
    auto result = validate_record(r);
    if (!r.id.empty() && !ids.insert(r.id).second) {
      result.violations.push_back(Violation::duplicate_id);
    }
    results.push_back(std::move(result));
  }
  return results;
}

std::string serialize(const ArgConclusionRecord& record) {
  ordered_json j;
  j["id"] = record.id;
  j["source"] = to_string(record.source);
  j["text"] = record.text;
  j["conclusion"] = record.conclusion;
  if (record.topic) j["topic"] = *record.topic;
  j["targets"] = record.targets;
  j["aspects"] = record.aspects;
  j["stance"] = to_string(record.stance);
  return j.dump();
}

ArgConclusionRecord parse_record(std::string_view json_line) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_line);
  } catch (const ordered_json::parse_error& e) {
    throw Error(ErrorCode::schema_error, e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::schema_error, "record must be an object");

  ArgConclusionRecord r;
  r.id = required_string(j, "id");
  r.source = parse_source_kind(required_string(j, "source"));
  r.text = required_string(j, "text");
  r.conclusion = required_string(j, "conclusion");
  if (auto it = j.find("topic"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw Error(ErrorCode::schema_error, "field 'topic' must be a string");
    r.topic = it->get<std::string>();
  }
  r.targets = string_list(j, "targets");
  r.aspects = string_list(j, "aspects");
  if (auto it = j.find("stance"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw Error(ErrorCode::schema_error, "field 'stance' must be a string");
    r.stance = parse_stance(it->get<std::string>());
  }
  return r;
}

std::vector<ArgConclusionRecord> read_corpus(const std::filesystem::path& path) {
  auto lines = io::read_lines(path);
  std::vector<ArgConclusionRecord> records;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (text::word_count(lines[i]) == 0) continue;
    try {
      records.push_back(parse_record(lines[i]));
    } catch (const Error& e) {
      throw Error(ErrorCode::schema_error, path.string() + ":" +
                                               std::to_string(i + 1) + ": " + e.what());
    }
  }
  return records;
}

void write_corpus(const std::filesystem::path& path,
                  std::span<const ArgConclusionRecord> records) {
  std::string out;
  for (const auto& r : records) {
    out += serialize(r);
    out.push_back('\n');
  }
  io::write_file_atomic(path, out);
}

}  // namespace argconc
