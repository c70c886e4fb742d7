// argconc: build, encode and evaluate argument-conclusion corpora.
//
//   argconc ingest   --source cmv_post --in raw.jsonl --out corpus.jsonl
//   argconc encode   --in corpus.jsonl --variant targets --out-dir data/targets
//   argconc extract  --corpus corpus.jsonl --out conclusions.jsonl
//   argconc evaluate --candidates cand.txt --references ref.txt --out report.json
//   argconc agree    --annotations labels.jsonl --out agreement.json
//
// Exit codes: 0 success, 2 input or schema errors, 3 external service errors.
// Every flag can also be set through an ARGCONC_* environment variable;
// explicit flags win.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "argconc/embedding.hpp"
#include "argconc/encoding.hpp"
#include "argconc/error.hpp"
#include "argconc/extraction.hpp"
#include "argconc/ingestion.hpp"
#include "argconc/io.hpp"
#include "argconc/metrics.hpp"
#include "argconc/record.hpp"
#include "argconc/report.hpp"
#include "argconc/service_client.hpp"
#include "argconc/version.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace argconc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitService = 3;

bool is_service_error(ErrorCode code) {
  return code == ErrorCode::provider_unreachable || code == ErrorCode::invalid_response ||
         code == ErrorCode::embedding_failure || code == ErrorCode::dimension_mismatch;
}

fs::path sibling(const fs::path& out, const std::string& suffix) {
  auto p = out;
  p += suffix;
  return p;
}

std::string to_flag(bool b) { return b ? "true" : "false"; }

void warn(const std::string& msg) { std::cerr << "argconc: warning: " << msg << "\n"; }

// ---- ingest ------------------------------------------------------------

struct IngestArgs {
  std::string source;
  std::string in;
  std::string out;
  std::optional<std::size_t> min_text_words;
  std::optional<std::size_t> min_conclusion_words;
  std::optional<bool> require_cmv_tag;
  std::optional<bool> drop_con_stance;
  std::optional<bool> drop_conclusion_equals_topic;
  std::optional<bool> drop_text_shorter;
  std::vector<std::string> excluded_portals;
  bool no_excluded_portals = false;
  bool dedup = true;
};

int run_ingest(const IngestArgs& a) {
  report::RunManifest manifest;
  manifest.command = "ingest";
  manifest.started_at = report::utc_timestamp();

  const auto source = parse_source_kind(a.source);
  auto config = ingestion::FilterConfig::defaults_for(source);
  if (a.min_text_words) config.min_text_words = *a.min_text_words;
  if (a.min_conclusion_words) config.min_conclusion_words = *a.min_conclusion_words;
  if (a.require_cmv_tag) config.require_cmv_tag = *a.require_cmv_tag;
  if (a.drop_con_stance) config.drop_con_stance = *a.drop_con_stance;
  if (a.drop_conclusion_equals_topic) config.drop_conclusion_equals_topic = *a.drop_conclusion_equals_topic;
  if (a.drop_text_shorter) config.drop_text_shorter_than_conclusion = *a.drop_text_shorter;
  if (a.no_excluded_portals) config.excluded_portals.clear();
  if (!a.excluded_portals.empty()) config.excluded_portals = a.excluded_portals;

  auto result = ingestion::ingest(a.in, source, config);
  if (a.dedup) {
    auto unique = ingestion::dedup_policy(result.kept);
    if (unique.size() != result.kept.size()) {
      // Exact duplicates go to the rejection report so kept + rejected still
      // covers the input.
      std::size_t u = 0;
      for (auto& r : result.kept) {
        if (u < unique.size() && unique[u].id == r.id && unique[u].text == r.text) {
          ++u;
        } else {
          result.rejected.push_back({r, "exact_duplicate"});
        }
      }
      result.kept = std::move(unique);
    }
  }

  const fs::path out(a.out);
  const auto rejected_path = sibling(out, ".rejected.jsonl");
  const auto stats_path = sibling(out, ".stats.json");
  write_corpus(out, result.kept);
  io::write_file_atomic(rejected_path, report::rejections_jsonl(result.rejected));
  if (result.kept.empty()) {
    io::write_file_atomic(stats_path, "{\n  \"n_records\": 0\n}\n");
  } else {
    io::write_file_atomic(stats_path, report::stats_json(ingestion::corpus_stats(result.kept)));
  }

  manifest.config = {{"source", a.source},
                     {"min_text_words", std::to_string(config.min_text_words)},
                     {"min_conclusion_words", std::to_string(config.min_conclusion_words)},
                     {"require_cmv_tag", to_flag(config.require_cmv_tag)},
                     {"drop_con_stance", to_flag(config.drop_con_stance)},
                     {"drop_conclusion_equals_topic", to_flag(config.drop_conclusion_equals_topic)},
                     {"drop_text_shorter_than_conclusion",
                      to_flag(config.drop_text_shorter_than_conclusion)},
                     {"dedup", to_flag(a.dedup)}};
  std::string portals;
  for (const auto& p : config.excluded_portals) portals += (portals.empty() ? "" : ",") + p;
  manifest.config["excluded_portals"] = portals;
  manifest.inputs = {a.in};
  manifest.outputs = {out.string(), rejected_path.string(), stats_path.string()};
  manifest.finished_at = report::utc_timestamp();
  report::write_manifest(sibling(out, ".manifest.json"), manifest);

  std::cout << "kept " << result.kept.size() << ", rejected " << result.rejected.size() << "\n";
  return kExitOk;
}

// ---- encode ------------------------------------------------------------

struct EncodeArgs {
  std::string in;
  std::string variant;
  std::uint64_t seed = 5153;
  std::size_t test_count = 1000;
  double train_fraction = 0.9;
  double valid_fraction = 0.1;
  std::optional<std::size_t> max_source_tokens;
  std::string out_dir;
};

int run_encode(const EncodeArgs& a) {
  report::RunManifest run;
  run.command = "encode";
  run.started_at = report::utc_timestamp();

  const auto variant = parse_variant(a.variant);
  const auto corpus = read_corpus(a.in);
  const auto build = encoding::build_variant(corpus, variant);

  encoding::SplitSpec spec;
  spec.seed = a.seed;
  spec.test_count = a.test_count;
  spec.train_fraction = a.train_fraction;
  spec.valid_fraction = a.valid_fraction;
  const auto splits = encoding::split_corpus(build.examples, spec);
  const std::size_t limit = a.max_source_tokens.value_or(encoding::default_max_source_tokens(variant));

  const fs::path dir(a.out_dir);
  std::vector<std::string> outputs;
  for (const auto& [name, examples] :
       {std::pair<std::string, const std::vector<encoding::EncodedExample>*>{"train", &splits.train},
        {"valid", &splits.valid},
        {"test", &splits.test}}) {
    const auto files = encoding::export_seq2seq(*examples, dir, name, limit);
    outputs.push_back(files.source.string());
    outputs.push_back(files.target.string());
    outputs.push_back(files.ids.string());
  }

  nlohmann::ordered_json m;
  m["schema_version"] = kFormatSchemaVersion;
  m["variant"] = a.variant;
  m["seed"] = a.seed;
  m["train_fraction"] = a.train_fraction;
  m["valid_fraction"] = a.valid_fraction;
  m["test_count"] = a.test_count;
  m["max_source_tokens"] = limit;
  m["truncation_unit"] = "whitespace_words";
  m["input_records"] = corpus.size();
  m["counts"] = {{"train", splits.train.size()},
                 {"valid", splits.valid.size()},
                 {"test", splits.test.size()}};
  nlohmann::ordered_json dropped = nlohmann::ordered_json::array();
  for (const auto& d : build.dropped) dropped.push_back({{"id", d.record_id}, {"reason", d.reason}});
  m["dropped"] = std::move(dropped);
  const auto manifest_path = dir / "manifest.json";
  io::write_file_atomic(manifest_path, m.dump(2) + "\n");
  outputs.push_back(manifest_path.string());

  run.config = {{"variant", a.variant},
                {"test_count", std::to_string(a.test_count)},
                {"train_fraction", std::to_string(a.train_fraction)},
                {"valid_fraction", std::to_string(a.valid_fraction)},
                {"max_source_tokens", std::to_string(limit)}};
  run.seed = a.seed;
  run.inputs = {a.in};
  run.outputs = outputs;
  run.finished_at = report::utc_timestamp();
  report::write_manifest(dir / "run_manifest.json", run);

  std::cout << "train " << splits.train.size() << ", valid " << splits.valid.size() << ", test "
            << splits.test.size() << ", dropped " << build.dropped.size() << "\n";
  return kExitOk;
}

// ---- extract -----------------------------------------------------------

struct ExtractArgs {
  std::string corpus;
  std::size_t context_k = 10;
  std::string embedder = "lexical";
  std::string paraphrase = "off";
  std::string fallback = "on";
  std::string endpoint = "http://127.0.0.1:8080";
  long timeout_ms = 30000;
  double damping = 0.85;
  double tolerance = 1e-8;
  std::size_t max_iterations = 200;
  std::string out;
};

int run_extract(const ExtractArgs& a) {
  report::RunManifest run;
  run.command = "extract";
  run.started_at = report::utc_timestamp();

  const bool allow_fallback = a.fallback == "on";
  const bool want_paraphrase = a.paraphrase == "on";
  const auto corpus = read_corpus(a.corpus);

  std::unique_ptr<service::Client> client;
  if (a.embedder == "remote" || want_paraphrase) {
    client = std::make_unique<service::Client>(a.endpoint, std::chrono::milliseconds(a.timeout_ms));
  }

  std::unique_ptr<SentenceEmbedder> embedder;
  std::string embedder_used = "lexical";
  if (a.embedder == "remote") {
    try {
      const auto health = client->health();
      if (health.status != "ok") {
        throw Error(ErrorCode::provider_unreachable, "service status is " + health.status);
      }
      embedder = std::make_unique<service::RemoteSentenceEmbedder>(*client);
      embedder_used = "remote";
    } catch (const Error& e) {
      if (!allow_fallback) throw;
      warn(std::string(e.what()) + "; falling back to the lexical embedder");
    }
  }
  if (!embedder) embedder = std::make_unique<LexicalSentenceEmbedder>();

  std::unique_ptr<service::RemoteParaphraser> paraphraser;
  if (want_paraphrase) paraphraser = std::make_unique<service::RemoteParaphraser>(*client);

  extraction::Bm25Index index;
  index.build(corpus);
  extraction::ExtractionParams params;
  params.context_k = a.context_k;
  params.pagerank.damping = a.damping;
  params.pagerank.tolerance = a.tolerance;
  params.pagerank.max_iterations = a.max_iterations;

  std::string out;
  std::size_t written = 0;
  for (const auto& record : corpus) {
    const auto context = extraction::retrieve_context(record, corpus, index, params.context_k);
    auto result = extraction::extract_conclusion(record, context, *embedder, params);
    nlohmann::ordered_json row;
    row["id"] = record.id;
    row["conclusion"] = result.conclusion_sentence;
    row["sentence_index"] = result.sentence_index;
    row["score"] = result.score;
    row["context_ids"] = nlohmann::json::array();
    for (const auto& c : context) row["context_ids"].push_back(c.id);
    row["converged"] = result.converged;
    if (!result.converged) warn("pagerank did not converge for " + record.id);
    if (want_paraphrase) {
      auto p = extraction::paraphrase(result.conclusion_sentence, paraphraser.get(), allow_fallback);
      if (p.fallback) warn(record.id + ": " + p.warning);
      row["paraphrase"] = p.text;
      row["paraphrase_fallback"] = p.fallback;
    }
    out += row.dump();
    out.push_back('\n');
    ++written;
  }
  io::write_file_atomic(a.out, out);

  run.config = {{"context_k", std::to_string(a.context_k)},
                {"embedder", a.embedder},
                {"embedder_used", embedder_used},
                {"paraphrase", a.paraphrase},
                {"fallback", a.fallback},
                {"endpoint", a.endpoint},
                {"damping", std::to_string(a.damping)},
                {"tolerance", std::to_string(a.tolerance)},
                {"max_iterations", std::to_string(a.max_iterations)}};
  run.inputs = {a.corpus};
  run.outputs = {a.out};
  run.finished_at = report::utc_timestamp();
  report::write_manifest(sibling(a.out, ".manifest.json"), run);
  std::cout << "extracted " << written << " conclusions\n";
  return kExitOk;
}

// ---- evaluate ----------------------------------------------------------

struct EvaluateArgs {
  std::string candidates;
  std::string references;
  std::string sources;
  std::vector<std::string> metrics = {"rouge1", "rouge2", "rougeL", "jaccard"};
  std::string bertscore_embedder = "onehot";
  std::optional<double> bertscore_baseline;
  std::string endpoint = "http://127.0.0.1:8080";
  long timeout_ms = 30000;
  std::string out;
};

int run_evaluate(const EvaluateArgs& a) {
  report::RunManifest run;
  run.command = "evaluate";
  run.started_at = report::utc_timestamp();

  const auto candidates = io::read_lines(a.candidates);
  const auto references = io::read_lines(a.references);
  if (candidates.size() != references.size()) {
    throw Error(ErrorCode::length_mismatch, std::to_string(candidates.size()) + " candidates vs " +
                                                std::to_string(references.size()) + " references");
  }
  std::vector<std::string> sources;
  if (!a.sources.empty()) {
    sources = io::read_lines(a.sources);
    if (sources.size() != candidates.size()) {
      throw Error(ErrorCode::length_mismatch, std::to_string(sources.size()) + " sources vs " +
                                                  std::to_string(candidates.size()) + " candidates");
    }
  }
  auto wants = [&](const char* m) {
    return std::find(a.metrics.begin(), a.metrics.end(), m) != a.metrics.end();
  };
  if (wants("novelty") && sources.empty()) {
    throw Error(ErrorCode::invalid_argument, "the novelty metric needs --sources");
  }

  std::vector<metrics::MetricReport> rows;
  rows.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    std::optional<std::string_view> src;
    if (!sources.empty()) src = sources[i];
    rows.push_back(metrics::score_pair(candidates[i], references[i], src));
  }

  if (wants("bertscore")) {
    std::unique_ptr<service::Client> client;
    std::unique_ptr<TokenEmbedder> embedder;
    if (a.bertscore_embedder == "remote") {
      client = std::make_unique<service::Client>(a.endpoint, std::chrono::milliseconds(a.timeout_ms));
      embedder = std::make_unique<service::RemoteTokenEmbedder>(*client);
    } else {
      embedder = std::make_unique<OneHotTokenEmbedder>();
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::vector<std::string> pair = {candidates[i], references[i]};
      const auto tokens = embedder->embed_tokens(pair);
      if (tokens.size() != 2) throw Error(ErrorCode::invalid_response, "expected two token lists");
      if (tokens[0].vectors.empty() || tokens[1].vectors.empty()) continue;
      rows[i].bertscore_f = metrics::bertscore_f1(tokens[0], tokens[1], a.bertscore_baseline);
    }
  }

  io::write_file_atomic(a.out, report::evaluation_json(rows, a.metrics));

  std::string metric_list;
  for (const auto& m : a.metrics) metric_list += (metric_list.empty() ? "" : ",") + m;
  run.config = {{"metrics", metric_list}, {"bertscore_embedder", a.bertscore_embedder}};
  if (a.bertscore_baseline) run.config["bertscore_baseline"] = std::to_string(*a.bertscore_baseline);
  run.inputs = {a.candidates, a.references};
  if (!a.sources.empty()) run.inputs.push_back(a.sources);
  run.outputs = {a.out};
  run.finished_at = report::utc_timestamp();
  report::write_manifest(sibling(a.out, ".manifest.json"), run);
  std::cout << "scored " << rows.size() << " pairs\n";
  return kExitOk;
}

// ---- agree -------------------------------------------------------------

int run_agree(const std::string& annotations, const std::string& out) {
  report::RunManifest run;
  run.command = "agree";
  run.started_at = report::utc_timestamp();

  const auto lines = io::read_lines(annotations);
  std::vector<metrics::AnnotationRecord> records;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].find_first_not_of(" \t") == std::string::npos) continue;
    try {
      records.push_back(metrics::parse_annotation(lines[i]));
    } catch (const Error& e) {
      throw Error(ErrorCode::schema_error, "line " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  const auto paired = metrics::pair_annotations(records);
  const auto rows = metrics::aggregate_agreement(paired.labels_a, paired.labels_b, paired.groups);
  io::write_file_atomic(out, report::agreement_json(rows));

  run.config = {{"annotator_a", paired.annotator_a}, {"annotator_b", paired.annotator_b}};
  run.inputs = {annotations};
  run.outputs = {out};
  run.finished_at = report::utc_timestamp();
  report::write_manifest(sibling(out, ".manifest.json"), run);
  for (const auto& r : rows) {
    std::cout << r.group << ": conclusion " << r.conclusion_pct() << "%, informative "
              << r.informative_pct() << "%\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Argument-conclusion corpus toolkit"};
  app.require_subcommand(0, 1);
  bool show_version = false;
  app.add_flag("--version", show_version, "Print tool and schema version");

  auto env = [](const std::string& name) { return std::string("ARGCONC_") + name; };

  // ingest
  IngestArgs ingest_args;
  auto* ingest = app.add_subcommand("ingest", "Filter a raw source dump into a clean corpus");
  ingest->add_option("--source", ingest_args.source, "cmv_post|cmv_comment|kialo|argsme|argskp")
      ->required()
      ->envname(env("SOURCE"));
  ingest->add_option("--in", ingest_args.in, "Raw JSONL dump")->required()->envname(env("IN"));
  ingest->add_option("--out", ingest_args.out, "Clean corpus JSONL")->required()->envname(env("OUT"));
  ingest->add_option("--min-text-words", ingest_args.min_text_words)->envname(env("MIN_TEXT_WORDS"));
  ingest->add_option("--min-conclusion-words", ingest_args.min_conclusion_words)
      ->envname(env("MIN_CONCLUSION_WORDS"));
  ingest->add_option("--require-cmv-tag", ingest_args.require_cmv_tag)->envname(env("REQUIRE_CMV_TAG"));
  ingest->add_option("--drop-con-stance", ingest_args.drop_con_stance)->envname(env("DROP_CON_STANCE"));
  ingest->add_option("--drop-conclusion-equals-topic", ingest_args.drop_conclusion_equals_topic)
      ->envname(env("DROP_CONCLUSION_EQUALS_TOPIC"));
  ingest->add_option("--drop-text-shorter-than-conclusion", ingest_args.drop_text_shorter)
      ->envname(env("DROP_TEXT_SHORTER_THAN_CONCLUSION"));
  ingest->add_option("--exclude-portal", ingest_args.excluded_portals, "Replaces the default list");
  ingest->add_flag("--no-excluded-portals", ingest_args.no_excluded_portals);
  ingest->add_option("--dedup", ingest_args.dedup, "Drop exact text+conclusion duplicates")
      ->envname(env("DEDUP"));

  // encode
  EncodeArgs encode_args;
  auto* encode = app.add_subcommand("encode", "Build a corpus variant, split it and export seq2seq files");
  encode->add_option("--in", encode_args.in, "Clean corpus JSONL")->required()->envname(env("IN"));
  encode->add_option("--variant", encode_args.variant, "all|cmv|debates|topic|aspects|targets")
      ->required()
      ->envname(env("VARIANT"));
  encode->add_option("--seed", encode_args.seed)->envname(env("SEED"));
  encode->add_option("--test-count", encode_args.test_count)->envname(env("TEST_COUNT"));
  encode->add_option("--train-fraction", encode_args.train_fraction)->envname(env("TRAIN_FRACTION"));
  encode->add_option("--valid-fraction", encode_args.valid_fraction)->envname(env("VALID_FRACTION"));
  encode->add_option("--max-source-tokens", encode_args.max_source_tokens)
      ->envname(env("MAX_SOURCE_TOKENS"));
  encode->add_option("--out-dir", encode_args.out_dir)->required()->envname(env("OUT_DIR"));

  // extract
  ExtractArgs extract_args;
  auto* extract = app.add_subcommand("extract", "Extract one conclusion sentence per argument");
  extract->add_option("--corpus", extract_args.corpus)->required()->envname(env("CORPUS"));
  extract->add_option("--context-k", extract_args.context_k)->envname(env("CONTEXT_K"));
  extract->add_option("--embedder", extract_args.embedder)
      ->check(CLI::IsMember({"lexical", "remote"}))
      ->envname(env("EMBEDDER"));
  extract->add_option("--paraphrase", extract_args.paraphrase)
      ->check(CLI::IsMember({"on", "off"}))
      ->envname(env("PARAPHRASE"));
  extract->add_option("--fallback", extract_args.fallback, "Fall back to lexical/identity when the service fails")
      ->check(CLI::IsMember({"on", "off"}))
      ->envname(env("FALLBACK"));
  extract->add_option("--endpoint", extract_args.endpoint)->envname(env("ENDPOINT"));
  extract->add_option("--timeout-ms", extract_args.timeout_ms)->envname(env("TIMEOUT_MS"));
  extract->add_option("--damping", extract_args.damping)->envname(env("DAMPING"));
  extract->add_option("--tolerance", extract_args.tolerance)->envname(env("TOLERANCE"));
  extract->add_option("--max-iterations", extract_args.max_iterations)->envname(env("MAX_ITERATIONS"));
  extract->add_option("--out", extract_args.out)->required()->envname(env("OUT"));

  // evaluate
  EvaluateArgs eval_args;
  auto* evaluate = app.add_subcommand("evaluate", "Score candidate conclusions against references");
  evaluate->add_option("--candidates", eval_args.candidates)->required()->envname(env("CANDIDATES"));
  evaluate->add_option("--references", eval_args.references)->required()->envname(env("REFERENCES"));
  evaluate->add_option("--sources", eval_args.sources, "Argument texts, one per line (for novelty)")
      ->envname(env("SOURCES"));
  evaluate->add_option("--metrics", eval_args.metrics, "Comma or space separated")
      ->delimiter(',')
      ->check(CLI::IsMember(report::kAllMetrics))
      ->envname(env("METRICS"));
  evaluate->add_option("--bertscore-embedder", eval_args.bertscore_embedder)
      ->check(CLI::IsMember({"onehot", "remote"}))
      ->envname(env("BERTSCORE_EMBEDDER"));
  evaluate->add_option("--bertscore-baseline", eval_args.bertscore_baseline)
      ->envname(env("BERTSCORE_BASELINE"));
  evaluate->add_option("--endpoint", eval_args.endpoint)->envname(env("ENDPOINT"));
  evaluate->add_option("--timeout-ms", eval_args.timeout_ms)->envname(env("TIMEOUT_MS"));
  evaluate->add_option("--out", eval_args.out)->required()->envname(env("OUT"));

  // agree
  std::string annotations, agree_out;
  auto* agree = app.add_subcommand("agree", "Full-agreement table for two annotators");
  agree->add_option("--annotations", annotations)->required()->envname(env("ANNOTATIONS"));
  agree->add_option("--out", agree_out)->required()->envname(env("OUT"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  if (show_version) {
    std::cout << kToolName << " " << kToolVersion << " (schema " << kFormatSchemaVersion << ")\n";
    return kExitOk;
  }

  try {
    if (*ingest) return run_ingest(ingest_args);
    if (*encode) return run_encode(encode_args);
    if (*extract) return run_extract(extract_args);
    if (*evaluate) return run_evaluate(eval_args);
    if (*agree) return run_agree(annotations, agree_out);
  } catch (const Error& e) {
    std::cerr << "argconc: " << e.what() << "\n";
    return is_service_error(e.code()) ? kExitService : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "argconc: " << e.what() << "\n";
    return 1;
  }
  std::cout << app.help();
  return kExitInput;
}
