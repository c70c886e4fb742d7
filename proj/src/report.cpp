#include "argconc/report.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>

#include "argconc/io.hpp"
#include "argconc/version.hpp"
#include "json.hpp"

namespace argconc::report {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json source_stats(const ingestion::SourceStats& s) {
  ordered_json j;
  j["n_records"] = s.n_records;
  j["avg_text_words"] = s.avg_text_words;
  j["avg_conclusion_words"] = s.avg_conclusion_words;
  j["avg_novelty_pct"] = s.avg_novelty_pct;
  j["novelty_records"] = s.novelty_records;
  return j;
}

}  // namespace

std::string stats_json(const ingestion::CorpusStats& stats) {
  ordered_json j = source_stats(stats.overall);
  ordered_json per = ordered_json::object();
  for (const auto& [kind, s] : stats.per_source) per[std::string(to_string(kind))] = source_stats(s);
  j["per_source"] = per;
  return j.dump(2) + "\n";
}

std::string evaluation_json(std::span<const metrics::MetricReport> rows,
                            const std::vector<std::string>& selected) {
  using Getter = std::optional<double> (*)(const metrics::MetricReport&);
  static const std::vector<std::pair<std::string, Getter>> kColumns = {
      {"rouge1", [](const metrics::MetricReport& r) -> std::optional<double> { return r.rouge1_f; }},
      {"rouge2", [](const metrics::MetricReport& r) -> std::optional<double> { return r.rouge2_f; }},
      {"rougeL", [](const metrics::MetricReport& r) -> std::optional<double> { return r.rougeL_f; }},
      {"bertscore", [](const metrics::MetricReport& r) { return r.bertscore_f; }},
      {"novelty", [](const metrics::MetricReport& r) { return r.novelty_pct; }},
      {"jaccard", [](const metrics::MetricReport& r) -> std::optional<double> { return r.jaccard; }},
  };
  auto key_of = [](const std::string& name) {
    if (name == "rouge1" || name == "rouge2" || name == "rougeL" || name == "bertscore") {
      return name + "_f";
    }
    return name == "novelty" ? std::string("novelty_pct") : name;
  };

  std::vector<std::pair<std::string, Getter>> columns;
  for (const auto& [name, get] : kColumns) {
    if (std::find(selected.begin(), selected.end(), name) != selected.end()) {
      columns.emplace_back(name, get);
    }
  }

  ordered_json list = ordered_json::array();
  std::vector<double> sums(columns.size(), 0.0);
  std::vector<std::size_t> counts(columns.size(), 0);
  double cand_len = 0, ref_len = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    ordered_json row;
    row["index"] = i;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (auto v = columns[c].second(r)) {
        row[key_of(columns[c].first)] = *v;
        sums[c] += *v;
        ++counts[c];
      }
    }
    row["candidate_len_words"] = r.candidate_len_words;
    row["reference_len_words"] = r.reference_len_words;
    cand_len += static_cast<double>(r.candidate_len_words);
    ref_len += static_cast<double>(r.reference_len_words);
    list.push_back(std::move(row));
  }

  ordered_json agg;
  agg["pairs"] = rows.size();
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (counts[c] > 0) agg[key_of(columns[c].first)] = sums[c] / static_cast<double>(counts[c]);
  }
  if (!rows.empty()) {
    agg["candidate_len_words"] = cand_len / static_cast<double>(rows.size());
    agg["reference_len_words"] = ref_len / static_cast<double>(rows.size());
  }
  ordered_json out;
  out["rows"] = std::move(list);
  out["aggregate"] = std::move(agg);
  return out.dump(2) + "\n";
}

std::string agreement_json(std::span<const metrics::AgreementRow> rows) {
  ordered_json list = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json row;
    row["group"] = r.group;
    row["items"] = r.items;
    row["conclusion_pct"] = r.conclusion_pct();
    row["informative_pct"] = r.informative_pct();
    if (auto f = r.fluent_pct()) {
      row["fluent_pct"] = *f;
    } else {
      row["fluent_pct"] = nullptr;
    }
    ordered_json dist = ordered_json::object();
    for (const auto& [type, pct] : r.error_distribution()) dist[std::string(metrics::to_string(type))] = pct;
    row["error_distribution"] = std::move(dist);
    row["agreed_conclusions"] = r.agreed_conclusions;
    row["agreed_informative"] = r.agreed_informative;
    row["agreed_errors"] = r.agreed_errors;
    list.push_back(std::move(row));
  }
  ordered_json out;
  out["groups"] = std::move(list);
  return out.dump(2) + "\n";
}

std::string rejections_jsonl(std::span<const ingestion::Rejection> rejected) {
  std::string out;
  for (const auto& r : rejected) {
    ordered_json j;
    j["id"] = r.record.id;
    j["rule"] = r.rule;
    out += j.dump();
    out.push_back('\n');
  }
  return out;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string manifest_json(const RunManifest& m) {
  ordered_json j;
  j["tool"] = kToolName;
  j["tool_version"] = kToolVersion;
  j["schema_version"] = kFormatSchemaVersion;
  j["command"] = m.command;
  ordered_json config = ordered_json::object();
  for (const auto& [k, v] : m.config) config[k] = v;
  j["config"] = std::move(config);
  j["inputs"] = m.inputs;
  j["outputs"] = m.outputs;
  if (m.seed) {
    j["seed"] = *m.seed;
  } else {
    j["seed"] = nullptr;
  }
  j["started_at"] = m.started_at;
  j["finished_at"] = m.finished_at;
  return j.dump(2) + "\n";
}

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest) {
  io::write_file_atomic(path, manifest_json(manifest));
}

}  // namespace argconc::report
