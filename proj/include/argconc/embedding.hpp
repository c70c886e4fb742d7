#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace argconc {

enum class Provenance { lexical, remote };

std::string_view to_string(Provenance p);

struct EmbeddingVector {
  std::vector<double> values;
  Provenance provenance = Provenance::lexical;

  std::size_t dim() const noexcept { return values.size(); }
  double norm() const noexcept;
  bool is_zero() const noexcept;
};

/// Tokens of one text together with one vector per token.
struct TokenEmbeddings {
  std::vector<std::string> tokens;
  std::vector<EmbeddingVector> vectors;
};

/// Cosine similarity clamped to [-1, 1]. Throws dimension_mismatch or
/// zero_vector.
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

/// TF-IDF vectors over a vocabulary fitted on the working document set.
/// tf is the raw count, idf = ln((1 + N) / (1 + df)) + 1, and every vector is
/// L2-normalized. Terms outside the fitted vocabulary are ignored.
class LexicalEmbedder {
 public:
  void fit(std::span<const std::string> documents);

  bool fitted() const noexcept { return fitted_; }
  std::size_t dim() const noexcept { return vocabulary_.size(); }
  std::size_t document_count() const noexcept { return documents_; }

  /// Throws Error{vocabulary_not_fitted} before fit().
  std::vector<EmbeddingVector> embed(std::span<const std::string> texts) const;

  /// Column index of a term, or -1 when the term is not in the vocabulary.
  long index_of(std::string_view term) const;
  double idf(std::string_view term) const;

 private:
  bool fitted_ = false;
  std::size_t documents_ = 0;
  std::map<std::string, std::size_t, std::less<>> vocabulary_;
  std::vector<double> idf_;
};

/// One-hot vectors per token type across all given texts: two tokens have
/// cosine 1 exactly when they are the same string, 0 otherwise.
std::vector<TokenEmbeddings> embed_tokens_one_hot(std::span<const std::string> texts);

// Batch sentence embedding used by extraction.
class SentenceEmbedder {
 public:
  virtual ~SentenceEmbedder() = default;
  virtual std::vector<EmbeddingVector> embed(std::span<const std::string> sentences) = 0;
};

// Token-level embedding used by BERTScore.
class TokenEmbedder {
 public:
  virtual ~TokenEmbedder() = default;
  virtual std::vector<TokenEmbeddings> embed_tokens(std::span<const std::string> texts) = 0;
};

/// Fits a fresh vocabulary on every batch, so the batch is the document set.
class LexicalSentenceEmbedder final : public SentenceEmbedder {
 public:
  std::vector<EmbeddingVector> embed(std::span<const std::string> sentences) override;
};

class OneHotTokenEmbedder final : public TokenEmbedder {
 public:
  std::vector<TokenEmbeddings> embed_tokens(std::span<const std::string> texts) override {
    return embed_tokens_one_hot(texts);
  }
};

}  // namespace argconc
