#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace argconc::text {

// Collapses whitespace runs to a single space and trims both ends.
std::string normalize_whitespace(std::string_view s);

// A word is a maximal run of non-whitespace characters.
std::vector<std::string_view> split_words(std::string_view s);
std::size_t word_count(std::string_view s);

/// Shared tokenizer for metrics, retrieval and the lexical embedder:
/// ASCII-lowercases and splits on every character that is not an ASCII
/// letter or digit. Bytes >= 0x80 count as word characters so UTF-8 words
/// survive intact.
std::vector<std::string> tokenize(std::string_view s);

std::string to_lower_ascii(std::string_view s);

bool is_space(char c) noexcept;

}  // namespace argconc::text
