#include "argconc/extraction.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>

#include "argconc/error.hpp"
#include "argconc/text.hpp"

namespace argconc::extraction {
namespace {

const std::set<std::string, std::less<>>& abbreviations() {
  static const std::set<std::string, std::less<>> kAbbrev = {
      "mr",  "mrs", "ms",  "dr",   "prof", "sr",  "jr",  "st",  "vs",   "e.g",
      "i.e", "cf",  "approx", "inc", "ltd", "fig", "vol", "sen", "gov", "mt",
      "jan", "feb", "aug", "sept", "oct",  "nov", "a.m", "p.m", "ph.d", "al"};
  return kAbbrev;
}

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

// Length of a closing quote or bracket at position i, or 0.
std::size_t closer_length(std::string_view s, std::size_t i) {
  const char c = s[i];
  if (c == '"' || c == '\'' || c == ')' || c == ']' || c == '}') return 1;
  // U+2019 and U+201D in UTF-8.
  if (i + 2 < s.size() && static_cast<unsigned char>(c) == 0xE2 &&
      static_cast<unsigned char>(s[i + 1]) == 0x80 &&
      (static_cast<unsigned char>(s[i + 2]) == 0x99 ||
       static_cast<unsigned char>(s[i + 2]) == 0x9D)) {
    return 3;
  }
  return 0;
}

bool ends_with_abbreviation(std::string_view s, std::size_t dot) {
  std::size_t start = dot;
  while (start > 0 && !text::is_space(s[start - 1])) --start;
  auto word = s.substr(start, dot - start);
  while (!word.empty() && (word.front() == '(' || word.front() == '"' || word.front() == '[')) {
    word.remove_prefix(1);
  }
  if (word.empty()) return false;
  return abbreviations().contains(text::to_lower_ascii(word));
}

void push_trimmed(std::string_view piece, std::vector<std::string>& out) {
  std::size_t b = 0, e = piece.size();
  while (b < e && text::is_space(piece[b])) ++b;
  while (e > b && text::is_space(piece[e - 1])) --e;
  if (e > b) out.emplace_back(piece.substr(b, e - b));
}

std::vector<std::string> tokens_of(std::string_view s) { return text::tokenize(s); }

}  // namespace

std::vector<std::string> segment_sentences(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (is_terminator(c)) {
      const std::size_t run_begin = i;
      while (i < s.size() && is_terminator(s[i])) ++i;
      while (i < s.size()) {
        const auto len = closer_length(s, i);
        if (len == 0) break;
        i += len;
      }
      const bool at_gap = i == s.size() || text::is_space(s[i]);
      const bool single_dot = i - run_begin == 1 && s[run_begin] == '.';
      if (at_gap && !(single_dot && ends_with_abbreviation(s, run_begin))) {
        push_trimmed(s.substr(start, i - start), out);
        start = i;
      }
      continue;
    }
    if (c == '\n') {
      std::size_t j = i + 1;
      while (j < s.size() && (s[j] == ' ' || s[j] == '\t' || s[j] == '\r')) ++j;
      if (j < s.size() && s[j] == '\n') {
        push_trimmed(s.substr(start, i - start), out);
        start = j + 1;
        i = j + 1;
        continue;
      }
    }
    ++i;
  }
  push_trimmed(s.substr(start), out);
  return out;
}

// ---- retrieval ---------------------------------------------------------

void Bm25Index::build(std::span<const ArgConclusionRecord> corpus) {
  documents_.clear();
  df_.clear();
  std::size_t total = 0;
  for (const auto& r : corpus) {
    Document doc;
    doc.id = r.id;
    for (auto& t : tokens_of(r.text)) {
      ++doc.tf[t];
      ++doc.length;
    }
    for (const auto& [term, count] : doc.tf) ++df_[term];
    total += doc.length;
    documents_.push_back(std::move(doc));
  }
  avg_length_ = documents_.empty() ? 0.0
                                   : static_cast<double>(total) /
                                         static_cast<double>(documents_.size());
  built_ = true;
}

double Bm25Index::score(std::span<const std::string> query_terms, std::size_t doc) const {
  if (!built_) throw Error(ErrorCode::index_not_built, "build() the index first");
  const auto& d = documents_.at(doc);
  const double n = static_cast<double>(documents_.size());
  const double norm =
      avg_length_ > 0.0 ? params_.k1 * (1.0 - params_.b + params_.b * static_cast<double>(d.length) / avg_length_)
                        : params_.k1;
  double total = 0.0;
  for (const auto& term : query_terms) {
    auto it = d.tf.find(term);
    if (it == d.tf.end()) continue;
    const double df = static_cast<double>(df_.at(term));
    const double idf = std::log(1.0 + (n - df + 0.5) / (df + 0.5));
    const double tf = static_cast<double>(it->second);
    total += idf * tf * (params_.k1 + 1.0) / (tf + norm);
  }
  return total;
}

std::vector<std::size_t> Bm25Index::top_k(std::string_view query, std::size_t k,
                                          std::string_view exclude_id) const {
  if (!built_) throw Error(ErrorCode::index_not_built, "build() the index first");
  if (k == 0) return {};
  const auto terms = tokens_of(query);
  std::vector<std::pair<double, std::size_t>> scored;
  for (std::size_t i = 0; i < documents_.size(); ++i) {
    if (!exclude_id.empty() && documents_[i].id == exclude_id) continue;
    const double s = score(terms, i);
    if (s > 0.0) scored.emplace_back(s, i);
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  if (scored.size() > k) scored.resize(k);
  std::vector<std::size_t> out;
  out.reserve(scored.size());
  for (const auto& [s, i] : scored) out.push_back(i);
  return out;
}

std::vector<ArgConclusionRecord> retrieve_context(const ArgConclusionRecord& argument,
                                                  std::span<const ArgConclusionRecord> corpus,
                                                  const Bm25Index& index, std::size_t k) {
  if (!index.built()) throw Error(ErrorCode::index_not_built, "build() the index first");
  if (index.size() != corpus.size()) {
    throw Error(ErrorCode::invalid_argument, "index was built over a different corpus");
  }
  std::vector<ArgConclusionRecord> out;
  for (std::size_t i : index.top_k(argument.text, k, argument.id)) out.push_back(corpus[i]);
  return out;
}

// ---- centrality --------------------------------------------------------

namespace {

void check_weights(const Eigen::MatrixXd& w) {
  if (w.rows() != w.cols()) throw Error(ErrorCode::invalid_graph, "weight matrix is not square");
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    if (w(i, i) != 0.0) throw Error(ErrorCode::invalid_graph, "diagonal must be zero");
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      const double x = w(i, j);
      if (!(x >= 0.0 && x <= 1.0)) {
        throw Error(ErrorCode::invalid_graph, "weights must lie in [0, 1]");
      }
      if (x != w(j, i)) throw Error(ErrorCode::invalid_graph, "weights must be symmetric");
    }
  }
}

}  // namespace

PageRankResult pagerank(const Eigen::MatrixXd& weights, const PageRankParams& params) {
  check_weights(weights);
  if (!(params.damping > 0.0 && params.damping < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "damping must lie in (0, 1)");
  }
  const auto n = weights.rows();
  PageRankResult result;
  if (n == 0) {
    result.converged = true;
    return result;
  }

  Eigen::VectorXd teleport = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  if (!params.personalization.empty()) {
    if (static_cast<Eigen::Index>(params.personalization.size()) != n) {
      throw Error(ErrorCode::invalid_argument, "personalization has the wrong length");
    }
    teleport = Eigen::Map<const Eigen::VectorXd>(params.personalization.data(), n);
    const double sum = teleport.sum();
    if (!(sum > 0.0) || teleport.minCoeff() < 0.0) {
      throw Error(ErrorCode::invalid_argument, "personalization must be nonnegative and nonzero");
    }
    teleport /= sum;
  }

  Eigen::MatrixXd transition = weights;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double col = transition.col(j).sum();
    if (col > 0.0) {
      transition.col(j) /= col;
    } else {
      transition.col(j).setConstant(1.0 / static_cast<double>(n));
    }
  }

  const double d = params.damping;
  Eigen::VectorXd s = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  Eigen::VectorXd next(n);
  for (std::size_t it = 0; it < params.max_iterations; ++it) {
    next.noalias() = (1.0 - d) * teleport + d * (transition * s);
    const double change = (next - s).lpNorm<1>();
    s.swap(next);
    result.iterations = it + 1;
    if (change < params.tolerance) {
      result.converged = true;
      break;
    }
  }
  result.scores = s / s.sum();
  return result;
}

void SentenceGraph::validate() const {
  const auto n = static_cast<Eigen::Index>(sentences.size());
  if (weights.rows() != n || weights.cols() != n) {
    throw Error(ErrorCode::invalid_graph, "weights do not match the sentence count");
  }
  if (std::none_of(sentences.begin(), sentences.end(),
                   [](const GraphSentence& s) { return s.origin == Origin::target_argument; })) {
    throw Error(ErrorCode::invalid_graph, "no sentence from the target argument");
  }
  check_weights(weights);
}

PageRankResult pagerank(const SentenceGraph& graph) {
  graph.validate();
  return pagerank(graph.weights, graph.params);
}

SentenceGraph build_sentence_graph(const ArgConclusionRecord& argument,
                                   std::span<const ArgConclusionRecord> context,
                                   SentenceEmbedder& embedder, const PageRankParams& params) {
  SentenceGraph graph;
  graph.params = params;
  auto own = segment_sentences(argument.text);
  for (std::size_t i = 0; i < own.size(); ++i) {
    graph.sentences.push_back({std::move(own[i]), Origin::target_argument, i});
  }
  for (const auto& doc : context) {
    auto sentences = segment_sentences(doc.text);
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      graph.sentences.push_back({std::move(sentences[i]), Origin::context, i});
    }
  }

  std::vector<std::string> texts;
  texts.reserve(graph.sentences.size());
  for (const auto& s : graph.sentences) texts.push_back(s.text);
  const auto vectors = embedder.embed(texts);
  if (vectors.size() != texts.size()) {
    throw Error(ErrorCode::embedding_failure, "embedder returned " +
                                                  std::to_string(vectors.size()) + " vectors for " +
                                                  std::to_string(texts.size()) + " sentences");
  }

  const auto n = static_cast<Eigen::Index>(texts.size());
  graph.weights = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (vectors[i].is_zero()) continue;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (vectors[j].is_zero()) continue;
      const double w = std::clamp(cosine(vectors[i], vectors[j]), 0.0, 1.0);
      graph.weights(i, j) = w;
      graph.weights(j, i) = w;
    }
  }
  return graph;
}

ExtractionResult extract_conclusion(const ArgConclusionRecord& argument,
                                    std::span<const ArgConclusionRecord> context,
                                    SentenceEmbedder& embedder, const ExtractionParams& params) {
  auto graph = build_sentence_graph(argument, context, embedder, params.pagerank);
  if (graph.sentences.empty() || graph.sentences.front().origin != Origin::target_argument) {
    throw Error(ErrorCode::invalid_argument, "argument " + argument.id + " has no sentences");
  }
  const auto pr = pagerank(graph);

  ExtractionResult result;
  result.converged = pr.converged;
  result.graph_scores.assign(pr.scores.data(), pr.scores.data() + pr.scores.size());
  for (std::size_t i = 0; i < graph.sentences.size(); ++i) {
    if (graph.sentences[i].origin != Origin::target_argument) continue;
    result.ranked.push_back({graph.sentences[i].index, pr.scores[static_cast<Eigen::Index>(i)]});
  }
  std::stable_sort(result.ranked.begin(), result.ranked.end(),
                   [](const RankedSentence& a, const RankedSentence& b) {
                     return a.score != b.score ? a.score > b.score : a.index < b.index;
                   });
  const auto& best = result.ranked.front();
  result.sentence_index = best.index;
  result.score = best.score;
  // Argument sentences occupy the first graph slots, so index == slot.
  result.conclusion_sentence = graph.sentences[best.index].text;
  return result;
}

ParaphraseOutcome paraphrase(const std::string& sentence, Paraphraser* client,
                             bool allow_fallback) {
  if (text::word_count(sentence) == 0) {
    throw Error(ErrorCode::invalid_argument, "cannot paraphrase an empty sentence");
  }
  if (client == nullptr) return {sentence, true, "no paraphrase provider configured"};
  try {
    auto out = client->paraphrase(sentence);
    if (text::word_count(out) == 0) {
      throw Error(ErrorCode::invalid_response, "provider returned an empty paraphrase");
    }
    return {std::move(out), false, {}};
  } catch (const Error& e) {
    if (!allow_fallback ||
        (e.code() != ErrorCode::provider_unreachable && e.code() != ErrorCode::invalid_response)) {
      throw;
    }
    return {sentence, true, e.what()};
  }
}

}  // namespace argconc::extraction
