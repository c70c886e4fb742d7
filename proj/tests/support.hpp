#pragma once

#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "argconc/record.hpp"

#ifndef ARGCONC_TEST_DATA_DIR
#error "ARGCONC_TEST_DATA_DIR must be defined by the build"
#endif

namespace argconc::testing {

inline std::filesystem::path data_dir() { return ARGCONC_TEST_DATA_DIR; }

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("argconc-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string random_word(std::mt19937_64& rng, std::size_t min_len = 2,
                               std::size_t max_len = 8) {
  static const std::string alphabet = "abcdefghijklmnopqrstuvwxyz";
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<std::size_t> ch(0, alphabet.size() - 1);
  std::string w;
  const auto n = len(rng);
  for (std::size_t i = 0; i < n; ++i) w.push_back(alphabet[ch(rng)]);
  return w;
}

inline std::string random_phrase(std::mt19937_64& rng, std::size_t min_words,
                                 std::size_t max_words) {
  std::uniform_int_distribution<std::size_t> count(min_words, max_words);
  const auto n = count(rng);
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out.push_back(' ');
    out += random_word(rng);
  }
  return out;
}

// Valid record with random content. Knowledge fields are filled with
// distinct phrases; punctuation and unicode show up in the text so the
// encoders see more than plain ASCII words.
inline ArgConclusionRecord random_record(std::mt19937_64& rng, std::size_t n) {
  static const std::vector<SourceKind> kinds = {SourceKind::cmv_post, SourceKind::cmv_comment,
                                                SourceKind::kialo, SourceKind::argsme,
                                                SourceKind::argskp};
  static const std::vector<std::string> extras = {"!", "?", ",", " (see above)", " caf\xc3\xa9",
                                                  " 12%", " 'quoted'", " -- dash", ""};
  std::uniform_int_distribution<std::size_t> pick_kind(0, kinds.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_extra(0, extras.size() - 1);
  std::uniform_int_distribution<int> coin(0, 3);

  ArgConclusionRecord r;
  r.id = "r" + std::to_string(n);
  r.source = kinds[pick_kind(rng)];
  r.text = random_phrase(rng, 11, 60) + extras[pick_extra(rng)] + " " + random_phrase(rng, 1, 10) + ".";
  r.conclusion = random_phrase(rng, 3, 15) + extras[pick_extra(rng)];
  if (coin(rng) != 0) r.topic = random_phrase(rng, 1, 8) + extras[pick_extra(rng)];
  const auto n_targets = static_cast<std::size_t>(coin(rng));
  for (std::size_t i = 0; i < n_targets; ++i) {
    r.targets.push_back(random_phrase(rng, 1, 4) + " t" + std::to_string(i));
  }
  const auto n_aspects = static_cast<std::size_t>(coin(rng));
  for (std::size_t i = 0; i < n_aspects; ++i) {
    r.aspects.push_back(random_phrase(rng, 1, 3) + " a" + std::to_string(i));
  }
  r.stance = is_cmv(r.source) ? StanceLabel::pro : StanceLabel::unknown;
  return r;
}

}  // namespace argconc::testing
