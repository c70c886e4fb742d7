// Python bindings for the argconc core. Records cross the boundary as a
// plain class; enums cross as their serialized lowercase tokens.

#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "argconc/embedding.hpp"
#include "argconc/encoding.hpp"
#include "argconc/error.hpp"
#include "argconc/extraction.hpp"
#include "argconc/ingestion.hpp"
#include "argconc/metrics.hpp"
#include "argconc/record.hpp"
#include "argconc/text.hpp"
#include "argconc/version.hpp"

namespace py = pybind11;
using namespace argconc;

namespace {

py::tuple prf(const metrics::Prf& p) { return py::make_tuple(p.precision, p.recall, p.f1); }

py::dict source_stats(const ingestion::SourceStats& s) {
  py::dict d;
  d["n_records"] = s.n_records;
  d["avg_text_words"] = s.avg_text_words;
  d["avg_conclusion_words"] = s.avg_conclusion_words;
  d["avg_novelty_pct"] = s.avg_novelty_pct;
  return d;
}

ingestion::FilterConfig filter_config(SourceKind source, const py::kwargs& overrides) {
  auto config = ingestion::FilterConfig::defaults_for(source);
  for (const auto& [key, value] : overrides) {
    const auto name = key.cast<std::string>();
    if (name == "min_text_words") {
      config.min_text_words = value.cast<std::size_t>();
    } else if (name == "min_conclusion_words") {
      config.min_conclusion_words = value.cast<std::size_t>();
    } else if (name == "require_cmv_tag") {
      config.require_cmv_tag = value.cast<bool>();
    } else if (name == "drop_con_stance") {
      config.drop_con_stance = value.cast<bool>();
    } else if (name == "drop_conclusion_equals_topic") {
      config.drop_conclusion_equals_topic = value.cast<bool>();
    } else if (name == "drop_text_shorter_than_conclusion") {
      config.drop_text_shorter_than_conclusion = value.cast<bool>();
    } else if (name == "excluded_portals") {
      config.excluded_portals = value.cast<std::vector<std::string>>();
    } else {
      throw Error(ErrorCode::invalid_argument, "unknown filter option: " + name);
    }
  }
  config.validate();
  return config;
}

py::tuple ingest_result(const ingestion::IngestResult& r) {
  py::list rejected;
  for (const auto& x : r.rejected) rejected.append(py::make_tuple(x.record, x.rule));
  return py::make_tuple(r.kept, rejected);
}

}  // namespace

PYBIND11_MODULE(_argconc, m) {
  m.doc() = "Argument/conclusion corpus toolkit";
  m.attr("__version__") = std::string(kToolVersion);
  m.attr("schema_version") = std::string(kFormatSchemaVersion);

  // Raised for every library failure; `code` holds the stable error code.
  static py::handle error_type = py::exception<Error>(m, "ArgconcError", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object instance = py::reinterpret_borrow<py::object>(error_type)(e.what());
      instance.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error_type.ptr(), instance.ptr());
    }
  });

  py::class_<ArgConclusionRecord>(m, "Record")
      .def(py::init([](std::string id, const std::string& source, std::string text, std::string conclusion,
                       std::optional<std::string> topic, std::vector<std::string> targets,
                       std::vector<std::string> aspects, const std::string& stance) {
             return ArgConclusionRecord{std::move(id),         parse_source_kind(source), std::move(text),
                                        std::move(conclusion), std::move(topic),          std::move(targets),
                                        std::move(aspects),    parse_stance(stance)};
           }),
           py::arg("id"), py::arg("source"), py::arg("text"), py::arg("conclusion"), py::arg("topic") = py::none(),
           py::arg("targets") = std::vector<std::string>{}, py::arg("aspects") = std::vector<std::string>{},
           py::arg("stance") = "unknown")
      .def_readwrite("id", &ArgConclusionRecord::id)
      .def_property(
          "source", [](const ArgConclusionRecord& r) { return std::string(to_string(r.source)); },
          [](ArgConclusionRecord& r, const std::string& s) { r.source = parse_source_kind(s); })
      .def_readwrite("text", &ArgConclusionRecord::text)
      .def_readwrite("conclusion", &ArgConclusionRecord::conclusion)
      .def_readwrite("topic", &ArgConclusionRecord::topic)
      .def_readwrite("targets", &ArgConclusionRecord::targets)
      .def_readwrite("aspects", &ArgConclusionRecord::aspects)
      .def_property(
          "stance", [](const ArgConclusionRecord& r) { return std::string(to_string(r.stance)); },
          [](ArgConclusionRecord& r, const std::string& s) { r.stance = parse_stance(s); })
      .def("to_json", [](const ArgConclusionRecord& r) { return serialize(r); })
      .def_static("from_json", [](const std::string& line) { return parse_record(line); })
      .def("violations",
           [](const ArgConclusionRecord& r) {
             std::vector<std::string> out;
             for (auto v : validate_record(r).violations) out.emplace_back(to_string(v));
             return out;
           })
      .def(py::self == py::self)
      .def("__repr__", [](const ArgConclusionRecord& r) { return "Record(" + serialize(r) + ")"; });

  m.def("tokenize", [](const std::string& s) { return text::tokenize(s); });
  m.def("read_corpus", &read_corpus, py::arg("path"));
  m.def("write_corpus",
        [](const std::filesystem::path& path, const std::vector<ArgConclusionRecord>& records) {
          write_corpus(path, records);
        },
        py::arg("path"), py::arg("records"));

  // ingestion
  m.def("strip_cmv_tag", [](const std::string& title) { return ingestion::strip_cmv_tag(title); });
  m.def(
      "ingest",
      [](const std::filesystem::path& path, const std::string& source, const py::kwargs& overrides) {
        const auto kind = parse_source_kind(source);
        return ingest_result(ingestion::ingest(path, kind, filter_config(kind, overrides)));
      },
      py::arg("path"), py::arg("source"),
      "Returns (kept, [(record, rule), ...]). Keyword arguments override the per-source filter defaults.");
  m.def(
      "ingest_lines",
      [](const std::vector<std::string>& lines, const std::string& source, const py::kwargs& overrides) {
        const auto kind = parse_source_kind(source);
        return ingest_result(ingestion::ingest_lines(lines, kind, filter_config(kind, overrides)));
      },
      py::arg("lines"), py::arg("source"));
  m.def("dedup", [](const std::vector<ArgConclusionRecord>& r) { return ingestion::dedup_policy(r); });
  m.def("corpus_stats", [](const std::vector<ArgConclusionRecord>& records) {
    const auto stats = ingestion::corpus_stats(records);
    py::dict per_source;
    for (const auto& [kind, s] : stats.per_source) per_source[py::str(std::string(to_string(kind)))] = source_stats(s);
    py::dict d;
    d["overall"] = source_stats(stats.overall);
    d["per_source"] = per_source;
    return d;
  });

  // encoding
  m.def(
      "encode",
      [](const ArgConclusionRecord& r, const std::string& variant) {
        const auto ex = encoding::encode_example(r, parse_variant(variant));
        return py::make_tuple(ex.source_sequence, ex.target_sequence);
      },
      py::arg("record"), py::arg("variant"), "Returns (source_sequence, target_sequence).");
  m.def("parse_encoded", [](const std::string& seq) {
    const auto p = encoding::parse_encoded(seq);
    py::dict d;
    d["topic"] = p.topic;
    d["text"] = p.text;
    d["aspects"] = p.aspects;
    d["targets"] = p.targets;
    return d;
  });
  m.def(
      "split",
      [](const std::vector<ArgConclusionRecord>& corpus, const std::string& variant, std::uint64_t seed,
         std::size_t test_count, double train_fraction, double valid_fraction) {
        const auto build = encoding::build_variant(corpus, parse_variant(variant));
        encoding::SplitSpec spec{train_fraction, valid_fraction, test_count, seed};
        const auto s = encoding::split_corpus(build.examples, spec);
        auto ids = [](const std::vector<encoding::EncodedExample>& part) {
          std::vector<std::string> out;
          for (const auto& e : part) out.push_back(e.record_id);
          return out;
        };
        py::dict d;
        d["train"] = ids(s.train);
        d["valid"] = ids(s.valid);
        d["test"] = ids(s.test);
        return d;
      },
      py::arg("corpus"), py::arg("variant") = "all", py::arg("seed") = 5153, py::arg("test_count") = 1000,
      py::arg("train_fraction") = 0.9, py::arg("valid_fraction") = 0.1,
      "Record ids per split for the given variant.");

  // metrics
  m.def("rouge_n", [](const std::string& c, const std::string& r, std::size_t n) { return prf(metrics::rouge_n(c, r, n)); },
        py::arg("candidate"), py::arg("reference"), py::arg("n") = 1, "Returns (precision, recall, f1).");
  m.def("rouge_l", [](const std::string& c, const std::string& r) { return prf(metrics::rouge_l(c, r)); },
        py::arg("candidate"), py::arg("reference"));
  m.def("novelty", [](const std::string& c, const std::string& t) { return metrics::novelty(c, t); },
        py::arg("conclusion"), py::arg("text"));
  m.def("jaccard", [](const std::string& a, const std::string& b) { return metrics::jaccard(a, b); });
  m.def(
      "bertscore_onehot",
      [](const std::string& c, const std::string& r, std::optional<double> baseline) {
        const auto te = embed_tokens_one_hot(std::vector<std::string>{c, r});
        return metrics::bertscore_f1(te[0], te[1], baseline);
      },
      py::arg("candidate"), py::arg("reference"), py::arg("baseline") = py::none());

  // extraction
  m.def(
      "pagerank",
      [](const Eigen::MatrixXd& w, double damping, double tolerance, std::size_t max_iterations,
         std::vector<double> personalization) {
        const auto r = extraction::pagerank(w, {damping, tolerance, max_iterations, std::move(personalization)});
        return py::make_tuple(r.scores, r.iterations, r.converged);
      },
      py::arg("weights"), py::arg("damping") = 0.85, py::arg("tolerance") = 1e-8, py::arg("max_iterations") = 200,
      py::arg("personalization") = std::vector<double>{}, "Returns (scores, iterations, converged).");
  m.def("segment_sentences", [](const std::string& s) { return extraction::segment_sentences(s); });
  m.def(
      "extract",
      [](const ArgConclusionRecord& argument, const std::vector<ArgConclusionRecord>& context) {
        LexicalSentenceEmbedder embedder;
        const auto r = extraction::extract_conclusion(argument, context, embedder);
        py::dict d;
        d["conclusion"] = r.conclusion_sentence;
        d["sentence_index"] = r.sentence_index;
        d["score"] = r.score;
        d["converged"] = r.converged;
        return d;
      },
      py::arg("argument"), py::arg("context") = std::vector<ArgConclusionRecord>{},
      "Most central argument sentence under the lexical embedder.");
}
