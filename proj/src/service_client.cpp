#include "argconc/service_client.hpp"

#include <cmath>

#include "argconc/error.hpp"
#include "httplib.h"
#include "json.hpp"

namespace argconc::service {
namespace {

using json = nlohmann::json;

constexpr double kUnitTolerance = 1e-6;

json parse_body(const std::string& body) {
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::invalid_response, std::string("body is not JSON: ") + e.what());
  }
}

void check_schema(const json& j) {
  auto it = j.find("schema_version");
  if (it == j.end() || !it->is_string()) {
    throw Error(ErrorCode::invalid_response, "response lacks schema_version");
  }
  const auto version = it->get<std::string>();
  const auto dot = version.find('.');
  int major = -1;
  try {
    major = std::stoi(version.substr(0, dot));
  } catch (const std::exception&) {
  }
  if (major != kSchemaMajor) {
    throw Error(ErrorCode::invalid_response, "unsupported schema version " + version);
  }
}

std::size_t declared_dim(const json& j) {
  auto it = j.find("dim");
  if (it == j.end() || !it->is_number_unsigned() || it->get<std::size_t>() == 0) {
    throw Error(ErrorCode::invalid_response, "response lacks a positive dim");
  }
  return it->get<std::size_t>();
}

EmbeddingVector to_vector(const json& values, std::size_t dim) {
  if (!values.is_array()) throw Error(ErrorCode::invalid_response, "vector is not an array");
  EmbeddingVector v;
  v.provenance = Provenance::remote;
  v.values.reserve(values.size());
  for (const auto& x : values) {
    if (!x.is_number()) throw Error(ErrorCode::invalid_response, "vector entry is not a number");
    v.values.push_back(x.get<double>());
  }
  if (v.dim() != dim) {
    throw Error(ErrorCode::dimension_mismatch, "service declared dim " + std::to_string(dim) +
                                                   " but sent " + std::to_string(v.dim()));
  }
  if (std::abs(v.norm() - 1.0) > kUnitTolerance) {
    throw Error(ErrorCode::invalid_response, "vector is not unit-norm");
  }
  return v;
}

std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
  // "http://host:port/prefix" -> ("http://host:port", "/prefix")
  const auto scheme = endpoint.find("://");
  const auto path_start = endpoint.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  if (path_start == std::string::npos) return {endpoint, ""};
  auto prefix = endpoint.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {endpoint.substr(0, path_start), prefix};
}

}  // namespace

Client::Client(std::string endpoint, std::chrono::milliseconds timeout)
    : endpoint_(std::move(endpoint)), timeout_(timeout) {
  if (endpoint_.empty()) throw Error(ErrorCode::invalid_argument, "empty service endpoint");
}

std::string Client::post(const std::string& path, const std::string& body) const {
  auto [base, prefix] = split_endpoint(endpoint_);
  httplib::Client http(base);
  http.set_connection_timeout(timeout_);
  http.set_read_timeout(timeout_);
  http.set_write_timeout(timeout_);
  auto res = http.Post(prefix + path, body, "application/json");
  if (!res) {
    throw Error(ErrorCode::provider_unreachable,
                endpoint_ + path + ": " + httplib::to_string(res.error()));
  }
  if (res->status == 503) {
    throw Error(ErrorCode::provider_unreachable, endpoint_ + path + ": model not loaded (503)");
  }
  if (res->status != 200) {
    throw Error(ErrorCode::invalid_response,
                endpoint_ + path + ": HTTP " + std::to_string(res->status) + " " + res->body);
  }
  return res->body;
}

void Client::check_session_dim(std::size_t dim) {
  std::size_t expected = 0;
  if (!session_dim_.compare_exchange_strong(expected, dim) && expected != dim) {
    throw Error(ErrorCode::dimension_mismatch, "service dim changed from " +
                                                   std::to_string(expected) + " to " +
                                                   std::to_string(dim));
  }
}

Health Client::health() const {
  auto [base, prefix] = split_endpoint(endpoint_);
  httplib::Client http(base);
  http.set_connection_timeout(timeout_);
  http.set_read_timeout(timeout_);
  auto res = http.Get(prefix + "/health");
  if (!res) {
    throw Error(ErrorCode::provider_unreachable,
                endpoint_ + "/health: " + httplib::to_string(res.error()));
  }
  if (res->status != 200 && res->status != 503) {
    throw Error(ErrorCode::invalid_response, "/health: HTTP " + std::to_string(res->status));
  }
  Health h;
  h.status = res->status == 200 ? "ok" : "loading";
  json j;
  try {
    j = json::parse(res->body);
  } catch (const json::parse_error&) {
    return h;
  }
  if (auto it = j.find("status"); it != j.end() && it->is_string()) h.status = it->get<std::string>();
  if (auto it = j.find("models"); it != j.end() && it->is_array()) {
    for (const auto& m : *it) {
      if (m.is_string()) h.models.push_back(m.get<std::string>());
    }
  }
  if (auto it = j.find("dims"); it != j.end() && it->is_object()) {
    h.sentence_dim = it->value("sentence", std::size_t{0});
    h.token_dim = it->value("token", std::size_t{0});
  }
  return h;
}

std::vector<EmbeddingVector> Client::embed_sentences(std::span<const std::string> texts) {
  if (texts.empty()) return {};
  json req = {{"schema_version", kSchemaVersion},
              {"texts", std::vector<std::string>(texts.begin(), texts.end())},
              {"level", "sentence"}};
  const auto j = parse_body(post("/embed", req.dump()));
  check_schema(j);
  const auto dim = declared_dim(j);
  check_session_dim(dim);
  const auto& vectors = j.at("vectors");
  if (!vectors.is_array() || vectors.size() != texts.size()) {
    throw Error(ErrorCode::invalid_response, "expected " + std::to_string(texts.size()) + " vectors");
  }
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& v : vectors) out.push_back(to_vector(v, dim));
  return out;
}

std::vector<TokenEmbeddings> Client::embed_tokens(std::span<const std::string> texts) {
  if (texts.empty()) return {};
  json req = {{"schema_version", kSchemaVersion},
              {"texts", std::vector<std::string>(texts.begin(), texts.end())},
              {"level", "token"}};
  const auto j = parse_body(post("/embed", req.dump()));
  check_schema(j);
  const auto dim = declared_dim(j);
  const auto& tokens = j.at("tokens");
  const auto& vectors = j.at("vectors");
  if (!tokens.is_array() || !vectors.is_array() || tokens.size() != texts.size() ||
      vectors.size() != texts.size()) {
    throw Error(ErrorCode::invalid_response,
                "expected token lists for " + std::to_string(texts.size()) + " texts");
  }
  std::vector<TokenEmbeddings> out;
  out.reserve(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (!tokens[i].is_array() || !vectors[i].is_array() || tokens[i].size() != vectors[i].size()) {
      throw Error(ErrorCode::invalid_response, "token and vector counts differ");
    }
    TokenEmbeddings te;
    for (const auto& t : tokens[i]) te.tokens.push_back(t.get<std::string>());
    for (const auto& v : vectors[i]) te.vectors.push_back(to_vector(v, dim));
    out.push_back(std::move(te));
  }
  return out;
}

Paraphrase Client::paraphrase(const std::string& text) const {
  json req = {{"schema_version", kSchemaVersion}, {"text", text}};
  const auto j = parse_body(post("/paraphrase", req.dump()));
  check_schema(j);
  Paraphrase p;
  if (auto it = j.find("paraphrase"); it != j.end() && it->is_string()) p.text = it->get<std::string>();
  if (auto it = j.find("model_id"); it != j.end() && it->is_string()) p.model_id = it->get<std::string>();
  if (p.text.empty()) throw Error(ErrorCode::invalid_response, "empty paraphrase");
  return p;
}

}  // namespace argconc::service
