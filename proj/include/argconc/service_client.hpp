#pragma once

#include <atomic>
#include <chrono>
#include <span>
#include <string>
#include <vector>

#include "argconc/embedding.hpp"
#include "argconc/extraction.hpp"

namespace argconc::service {

// Wire schema spoken with the inference service (docs/nlp_service_protocol.md).
inline constexpr int kSchemaMajor = 1;
inline constexpr const char* kSchemaVersion = "1.0";

struct Health {
  std::string status;
  std::vector<std::string> models;
  std::size_t sentence_dim = 0;
  std::size_t token_dim = 0;
};

struct Paraphrase {
  std::string text;
  std::string model_id;
};

/// JSON-over-HTTP client. Every call opens its own connection, so one client
/// may be shared by concurrent callers.
///
/// Connection failures and HTTP 503 raise provider_unreachable. Any other
/// contract breach (bad status, unknown schema major version, wrong vector
/// count, non-unit vectors) raises invalid_response, except vectors whose
/// length differs from the declared dim, which raise dimension_mismatch.
class Client {
 public:
  explicit Client(std::string endpoint,
                  std::chrono::milliseconds timeout = std::chrono::seconds(30));

  const std::string& endpoint() const noexcept { return endpoint_; }

  Health health() const;
  std::vector<EmbeddingVector> embed_sentences(std::span<const std::string> texts);
  std::vector<TokenEmbeddings> embed_tokens(std::span<const std::string> texts);
  Paraphrase paraphrase(const std::string& text) const;

 private:
  std::string post(const std::string& path, const std::string& body) const;
  void check_session_dim(std::size_t dim);

  std::string endpoint_;
  std::chrono::milliseconds timeout_;
  std::atomic<std::size_t> session_dim_{0};
};

class RemoteSentenceEmbedder final : public SentenceEmbedder {
 public:
  explicit RemoteSentenceEmbedder(Client& client) : client_(client) {}
  std::vector<EmbeddingVector> embed(std::span<const std::string> sentences) override {
    return client_.embed_sentences(sentences);
  }

 private:
  Client& client_;
};

class RemoteTokenEmbedder final : public TokenEmbedder {
 public:
  explicit RemoteTokenEmbedder(Client& client) : client_(client) {}
  std::vector<TokenEmbeddings> embed_tokens(std::span<const std::string> texts) override {
    return client_.embed_tokens(texts);
  }

 private:
  Client& client_;
};

class RemoteParaphraser final : public extraction::Paraphraser {
 public:
  explicit RemoteParaphraser(const Client& client) : client_(client) {}
  std::string paraphrase(const std::string& sentence) override {
    return client_.paraphrase(sentence).text;
  }

 private:
  const Client& client_;
};

}  // namespace argconc::service
