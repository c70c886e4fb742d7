#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace argconc {

enum class ErrorCode {
  invalid_argument,
  io_error,
  schema_error,
  empty_corpus,
  missing_knowledge,
  control_token_in_value,
  malformed_sequence,
  corpus_too_small,
  index_not_built,
  invalid_graph,
  embedding_failure,
  provider_unreachable,
  invalid_response,
  dimension_mismatch,
  zero_vector,
  vocabulary_not_fitted,
  empty_conclusion,
  empty_token_list,
  length_mismatch,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries a stable code so the CLI can
// map it onto exit statuses and tests can assert on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace argconc
