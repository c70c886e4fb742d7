#pragma once

// Engineered extraction corpora. Each argument has one hub sentence that
// repeats the key words of every other argument sentence, so it dominates
// the similarity matrix. Context records echo the peripheral key words and
// never the hub as a whole.

#include <string>
#include <vector>

#include "argconc/record.hpp"

namespace argconc::testing {

struct ExtractionFixture {
  ArgConclusionRecord argument;
  std::vector<ArgConclusionRecord> context;
  std::size_t hub_index = 0;
  std::string hub_sentence;
};

inline std::string letters(std::size_t n) {
  std::string out;
  do {
    out.insert(out.begin(), static_cast<char>('a' + n % 26));
    n /= 26;
  } while (n > 0);
  return out;
}

inline std::string fixture_word(const char* prefix, std::size_t f, std::size_t j, std::size_t m) {
  return prefix + letters(f * 1000 + j * 10 + m);
}

inline ExtractionFixture extraction_fixture(std::size_t f) {
  ExtractionFixture fx;
  const std::size_t n = 4 + f % 3;
  fx.hub_index = f % n;

  std::vector<std::vector<std::string>> keys(n);
  std::vector<std::string> sentences(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == fx.hub_index) continue;
    std::string s;
    for (std::size_t m = 0; m < 3; ++m) {
      keys[j].push_back(fixture_word("key", f, j, m));
      s += keys[j].back() + " ";
    }
    for (std::size_t m = 0; m < 3; ++m) s += fixture_word("fill", f, j, m) + " ";
    s.back() = '.';
    sentences[j] = s;
  }
  std::string hub;
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& k : keys[j]) hub += k + " ";
  }
  hub.back() = '.';
  sentences[fx.hub_index] = hub;
  fx.hub_sentence = hub;

  fx.argument.id = "fx" + std::to_string(f);
  fx.argument.source = f % 2 ? SourceKind::kialo : SourceKind::cmv_post;
  fx.argument.conclusion = "unused";
  for (std::size_t j = 0; j < n; ++j) {
    if (j) fx.argument.text += ' ';
    fx.argument.text += sentences[j];
  }

  // Two context records; each sentence borrows two key words of one
  // peripheral sentence plus its own filler.
  std::size_t peripheral = 0;
  for (std::size_t c = 0; c < 2; ++c) {
    ArgConclusionRecord ctx;
    ctx.id = fx.argument.id + "-ctx" + std::to_string(c);
    ctx.source = SourceKind::kialo;
    ctx.conclusion = "unused";
    for (std::size_t s = 0; s < 2; ++s) {
      while (peripheral == fx.hub_index || keys[peripheral % n].empty()) peripheral = (peripheral + 1) % n;
      const auto& k = keys[peripheral];
      std::string sentence = k[0] + " " + k[1];
      for (std::size_t m = 0; m < 4; ++m) sentence += " " + fixture_word("ctx", f, c * 2 + s, m);
      sentence += ".";
      if (!ctx.text.empty()) ctx.text += ' ';
      ctx.text += sentence;
      peripheral = (peripheral + 1) % n;
    }
    fx.context.push_back(ctx);
  }
  return fx;
}

}  // namespace argconc::testing
