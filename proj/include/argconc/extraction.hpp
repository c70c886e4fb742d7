#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "argconc/embedding.hpp"
#include "argconc/record.hpp"

namespace argconc::extraction {

/// Rule-based splitter: a sentence ends at '.', '!' or '?' (plus any
/// closing quotes or brackets) followed by whitespace or end of text, or at
/// a blank line. Known abbreviations ("Mr.", "e.g.", ...) do not end a
/// sentence; decimals never do since no whitespace follows the point.
std::vector<std::string> segment_sentences(std::string_view text);

/// Okapi BM25 (k1 = 1.2, b = 0.75, idf = ln(1 + (N - df + 0.5) / (df + 0.5)))
/// over text::tokenize terms of each record's text.
class Bm25Index {
 public:
  struct Params {
    double k1 = 1.2;
    double b = 0.75;
  };

  Bm25Index() = default;
  explicit Bm25Index(Params params) : params_(params) {}

  void build(std::span<const ArgConclusionRecord> corpus);
  bool built() const noexcept { return built_; }
  std::size_t size() const noexcept { return documents_.size(); }

  double score(std::span<const std::string> query_terms, std::size_t doc) const;

  /// Indices of the k best-scoring documents for the query, best first,
  /// ties by ascending index. Documents with a zero score and documents
  /// whose id equals exclude_id are skipped. Throws index_not_built.
  std::vector<std::size_t> top_k(std::string_view query, std::size_t k,
                                 std::string_view exclude_id = {}) const;

 private:
  struct Document {
    std::string id;
    std::unordered_map<std::string, std::size_t> tf;
    std::size_t length = 0;
  };

  Params params_;
  bool built_ = false;
  std::vector<Document> documents_;
  std::unordered_map<std::string, std::size_t> df_;
  double avg_length_ = 0.0;
};

/// Top-k related records for the argument, never including the argument
/// itself (matched by id).
std::vector<ArgConclusionRecord> retrieve_context(const ArgConclusionRecord& argument,
                                                  std::span<const ArgConclusionRecord> corpus,
                                                  const Bm25Index& index, std::size_t k);

struct PageRankParams {
  double damping = 0.85;
  double tolerance = 1e-8;
  std::size_t max_iterations = 200;
  // Teleport distribution; uniform when empty. Hook for biasing sentences
  // (e.g. by argumentativeness).
  std::vector<double> personalization;
};

struct PageRankResult {
  Eigen::VectorXd scores;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Power iteration s <- (1 - d) p + d W s on the column-normalized weight
/// matrix W, where zero columns (dangling nodes) spread uniformly. Stops when
/// the L1 change drops below the tolerance; when max_iterations is hit the
/// last iterate is returned with converged = false. Scores sum to 1.
/// Throws invalid_graph unless weights are square, symmetric, zero on the
/// diagonal and within [0, 1].
PageRankResult pagerank(const Eigen::MatrixXd& weights, const PageRankParams& params = {});

enum class Origin { target_argument, context };

struct GraphSentence {
  std::string text;
  Origin origin = Origin::target_argument;
  // Position within the document the sentence came from.
  std::size_t index = 0;
};

struct SentenceGraph {
  std::vector<GraphSentence> sentences;
  Eigen::MatrixXd weights;
  PageRankParams params;

  /// Throws invalid_graph on a broken invariant.
  void validate() const;
};

PageRankResult pagerank(const SentenceGraph& graph);

/// Argument sentences first, then each context record's sentences. Edge
/// weights are cosines clamped to [0, 1]; pairs involving an all-zero
/// embedding get weight 0.
SentenceGraph build_sentence_graph(const ArgConclusionRecord& argument,
                                   std::span<const ArgConclusionRecord> context,
                                   SentenceEmbedder& embedder, const PageRankParams& params = {});

struct RankedSentence {
  std::size_t index = 0;  // sentence index within the argument
  double score = 0.0;
};

struct ExtractionResult {
  std::string conclusion_sentence;
  std::size_t sentence_index = 0;
  double score = 0.0;
  // Argument sentences only, by descending score then ascending index.
  std::vector<RankedSentence> ranked;
  // Scores for every graph node, argument sentences first.
  std::vector<double> graph_scores;
  bool converged = true;
  std::optional<std::string> paraphrased;
  bool paraphrase_fallback = false;
};

struct ExtractionParams {
  PageRankParams pagerank;
  std::size_t context_k = 10;
};

/// Highest-centrality argument sentence; context sentences shape the
/// ranking but are never returned. Throws invalid_argument when the
/// argument has no sentences; embedder errors propagate.
ExtractionResult extract_conclusion(const ArgConclusionRecord& argument,
                                    std::span<const ArgConclusionRecord> context,
                                    SentenceEmbedder& embedder, const ExtractionParams& params = {});

class Paraphraser {
 public:
  virtual ~Paraphraser() = default;
  virtual std::string paraphrase(const std::string& sentence) = 0;
};

struct ParaphraseOutcome {
  std::string text;
  bool fallback = false;
  std::string warning;
};

/// Delegates to the client. Without a client the sentence comes back
/// unchanged with fallback set; an unreachable client does the same when
/// allow_fallback is true and rethrows otherwise. Throws invalid_argument on
/// an empty sentence.
ParaphraseOutcome paraphrase(const std::string& sentence, Paraphraser* client,
                             bool allow_fallback = true);

}  // namespace argconc::extraction
