#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "argconc/error.hpp"
#include "argconc/metrics.hpp"
#include "json.hpp"

namespace argconc::metrics {
namespace {

using json = nlohmann::json;

std::string string_field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorCode::schema_error, std::string("missing field '") + key + "'");
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_integer()) return std::to_string(it->get<long long>());
  throw Error(ErrorCode::schema_error, std::string("field '") + key + "' must be a string");
}

std::optional<bool> optional_bool(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_boolean()) {
    throw Error(ErrorCode::schema_error, std::string("field '") + key + "' must be a boolean");
  }
  return it->get<bool>();
}

}  // namespace

AnnotationRecord parse_annotation(std::string_view json_line) {
  json j;
  try {
    j = json::parse(json_line);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::schema_error, e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::schema_error, "annotation must be an object");
  AnnotationRecord r;
  r.id = string_field(j, "id");
  r.annotator = string_field(j, "annotator");
  r.group = j.contains("group") ? string_field(j, "group") : std::string("all");
  auto is_conclusion = optional_bool(j, "is_conclusion");
  if (!is_conclusion) throw Error(ErrorCode::schema_error, "missing field 'is_conclusion'");
  r.label.is_conclusion = *is_conclusion;
  r.label.fluent = optional_bool(j, "fluent");
  r.label.too_generic = optional_bool(j, "too_generic");
  if (auto it = j.find("error_type"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw Error(ErrorCode::schema_error, "field 'error_type' must be a string");
    r.label.error_type = parse_error_type(it->get<std::string>());
  }
  if (!is_consistent(r.label)) {
    throw Error(ErrorCode::schema_error,
                "item " + r.id + " by " + r.annotator +
                    ": fluent/too_generic must be set exactly for conclusions, error_type "
                    "exactly for non-conclusions");
  }
  return r;
}

PairedAnnotations pair_annotations(std::span<const AnnotationRecord> records) {
  std::set<std::string> annotators;
  for (const auto& r : records) annotators.insert(r.annotator);
  if (annotators.size() != 2) {
    throw Error(ErrorCode::schema_error,
                "expected exactly two annotators, found " + std::to_string(annotators.size()));
  }
  PairedAnnotations out;
  out.annotator_a = *annotators.begin();
  out.annotator_b = *std::next(annotators.begin());

  struct Slot {
    std::string group;
    std::optional<AnnotationLabel> a, b;
  };
  std::vector<std::string> order;
  std::unordered_map<std::string, Slot> slots;
  for (const auto& r : records) {
    auto [it, inserted] = slots.try_emplace(r.id, Slot{r.group, {}, {}});
    if (inserted) order.push_back(r.id);
    auto& slot = it->second;
    if (slot.group != r.group) {
      throw Error(ErrorCode::schema_error, "item " + r.id + " has conflicting groups");
    }
    auto& target = r.annotator == out.annotator_a ? slot.a : slot.b;
    if (target) {
      throw Error(ErrorCode::schema_error, "item " + r.id + " labeled twice by " + r.annotator);
    }
    target = r.label;
  }
  for (const auto& id : order) {
    const auto& slot = slots.at(id);
    if (!slot.a || !slot.b) {
      throw Error(ErrorCode::schema_error, "item " + id + " lacks a label from both annotators");
    }
    out.ids.push_back(id);
    out.groups.push_back(slot.group);
    out.labels_a.push_back(*slot.a);
    out.labels_b.push_back(*slot.b);
  }
  return out;
}

}  // namespace argconc::metrics
