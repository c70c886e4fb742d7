#include "argconc/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "argconc/error.hpp"
#include "argconc/text.hpp"

namespace argconc {

std::string_view to_string(Provenance p) {
  return p == Provenance::lexical ? "lexical" : "remote";
}

double EmbeddingVector::norm() const noexcept {
  double sum = 0.0;
  for (double v : values) sum += v * v;
  return std::sqrt(sum);
}

bool EmbeddingVector::is_zero() const noexcept {
  return std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; });
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::dimension_mismatch,
                std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    dot += a.values[i] * b.values[i];
    na += a.values[i] * a.values[i];
    nb += b.values[i] * b.values[i];
  }
  if (na == 0.0 || nb == 0.0) throw Error(ErrorCode::zero_vector, "cosine of a zero vector");
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

void LexicalEmbedder::fit(std::span<const std::string> documents) {
  std::map<std::string, std::size_t, std::less<>> df;
  for (const auto& doc : documents) {
    auto tokens = text::tokenize(doc);
    std::set<std::string> types(tokens.begin(), tokens.end());
    for (const auto& t : types) ++df[t];
  }
  vocabulary_.clear();
  idf_.clear();
  idf_.reserve(df.size());
  const double n = static_cast<double>(documents.size());
  for (const auto& [term, count] : df) {
    vocabulary_.emplace(term, idf_.size());
    idf_.push_back(std::log((1.0 + n) / (1.0 + static_cast<double>(count))) + 1.0);
  }
  documents_ = documents.size();
  fitted_ = true;
}

std::vector<EmbeddingVector> LexicalEmbedder::embed(std::span<const std::string> texts) const {
  if (!fitted_) throw Error(ErrorCode::vocabulary_not_fitted, "call fit() before embed()");
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) {
    EmbeddingVector v;
    v.provenance = Provenance::lexical;
    v.values.assign(vocabulary_.size(), 0.0);
    for (const auto& token : text::tokenize(t)) {
      auto it = vocabulary_.find(token);
      if (it != vocabulary_.end()) v.values[it->second] += 1.0;
    }
    for (std::size_t i = 0; i < v.values.size(); ++i) v.values[i] *= idf_[i];
    const double n = v.norm();
    if (n > 0.0) {
      for (double& x : v.values) x /= n;
    }
    out.push_back(std::move(v));
  }
  return out;
}

long LexicalEmbedder::index_of(std::string_view term) const {
  auto it = vocabulary_.find(term);
  return it == vocabulary_.end() ? -1 : static_cast<long>(it->second);
}

double LexicalEmbedder::idf(std::string_view term) const {
  auto it = vocabulary_.find(term);
  return it == vocabulary_.end() ? 0.0 : idf_[it->second];
}

std::vector<TokenEmbeddings> embed_tokens_one_hot(std::span<const std::string> texts) {
  std::vector<std::vector<std::string>> tokenized;
  std::unordered_map<std::string, std::size_t> ids;
  for (const auto& t : texts) {
    tokenized.push_back(text::tokenize(t));
    for (const auto& tok : tokenized.back()) ids.try_emplace(tok, ids.size());
  }
  std::vector<TokenEmbeddings> out;
  out.reserve(texts.size());
  for (auto& tokens : tokenized) {
    TokenEmbeddings te;
    for (const auto& tok : tokens) {
      EmbeddingVector v;
      v.values.assign(ids.size(), 0.0);
      v.values[ids.at(tok)] = 1.0;
      te.vectors.push_back(std::move(v));
    }
    te.tokens = std::move(tokens);
    out.push_back(std::move(te));
  }
  return out;
}

std::vector<EmbeddingVector> LexicalSentenceEmbedder::embed(
    std::span<const std::string> sentences) {
  LexicalEmbedder embedder;
  embedder.fit(sentences);
  return embedder.embed(sentences);
}

}  // namespace argconc
