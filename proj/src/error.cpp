#include "argconc/error.hpp"

namespace argconc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::io_error: return "io_error";
    case ErrorCode::schema_error: return "schema_error";
    case ErrorCode::empty_corpus: return "empty_corpus";
    case ErrorCode::missing_knowledge: return "missing_knowledge";
    case ErrorCode::control_token_in_value: return "control_token_in_value";
    case ErrorCode::malformed_sequence: return "malformed_sequence";
    case ErrorCode::corpus_too_small: return "corpus_too_small";
    case ErrorCode::index_not_built: return "index_not_built";
    case ErrorCode::invalid_graph: return "invalid_graph";
    case ErrorCode::embedding_failure: return "embedding_failure";
    case ErrorCode::provider_unreachable: return "provider_unreachable";
    case ErrorCode::invalid_response: return "invalid_response";
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::zero_vector: return "zero_vector";
    case ErrorCode::vocabulary_not_fitted: return "vocabulary_not_fitted";
    case ErrorCode::empty_conclusion: return "empty_conclusion";
    case ErrorCode::empty_token_list: return "empty_token_list";
    case ErrorCode::length_mismatch: return "length_mismatch";
  }
  return "unknown";
}

}  // namespace argconc
