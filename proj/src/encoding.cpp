#include "argconc/encoding.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "argconc/error.hpp"
#include "argconc/io.hpp"
#include "argconc/text.hpp"

namespace argconc::encoding {
namespace {

constexpr std::array<std::string_view, 5> kControlTokens = {
    kTopicToken, kArgumentToken, kAspectsToken, kTargetsToken, kConclusionToken};

void require_no_control_token(std::string_view value, std::string_view field) {
  for (auto token : kControlTokens) {
    if (value.find(token) != std::string_view::npos) {
      throw Error(ErrorCode::control_token_in_value,
                  std::string(field) + " contains " + std::string(token));
    }
  }
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += kListSeparator;
    out += items[i];
  }
  return out;
}

std::size_t count_occurrences(std::string_view haystack, std::string_view needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string_view::npos;
       pos = haystack.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

bool variant_accepts(CorpusVariant variant, SourceKind source) {
  switch (variant) {
    case CorpusVariant::cmv: return is_cmv(source);
    case CorpusVariant::debates: return is_debate(source);
    default: return true;
  }
}

// Uniform draw from [0, bound) by rejection, independent of any
// implementation-defined distribution.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

std::string replace_line_breaks(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\r') {
      out.push_back(' ');
      if (i + 1 < s.size() && s[i + 1] == '\n') ++i;
    } else if (s[i] == '\n') {
      out.push_back(' ');
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

}  // namespace

bool is_knowledge_variant(CorpusVariant variant) noexcept {
  return variant == CorpusVariant::topic || variant == CorpusVariant::aspects ||
         variant == CorpusVariant::targets;
}

EncodedExample encode_example(const ArgConclusionRecord& record, CorpusVariant variant) {
  if (!variant_accepts(variant, record.source)) {
    throw Error(ErrorCode::invalid_argument, "record " + record.id + " (" +
                                                 std::string(to_string(record.source)) +
                                                 ") does not belong to variant " +
                                                 std::string(to_string(variant)));
  }
  EncodedExample ex;
  ex.variant = variant;
  ex.record_id = record.id;
  ex.source = record.source;
  ex.target_sequence = record.conclusion;

  if (!is_knowledge_variant(variant)) {
    ex.source_sequence = record.text;
    return ex;
  }

  if (variant == CorpusVariant::aspects && record.aspects.empty()) {
    throw Error(ErrorCode::missing_knowledge, "record " + record.id + " has no aspects");
  }
  if (variant == CorpusVariant::targets && record.targets.empty()) {
    throw Error(ErrorCode::missing_knowledge, "record " + record.id + " has no targets");
  }

  const std::string topic = record.topic ? *record.topic : std::string(kMissingTopic);
  require_no_control_token(topic, "topic");
  require_no_control_token(record.text, "text");
  require_no_control_token(record.conclusion, "conclusion");

  std::string& s = ex.source_sequence;
  s += kTopicToken;
  s += topic;
  s += kArgumentToken;
  s += record.text;
  if (variant == CorpusVariant::aspects) {
    for (const auto& a : record.aspects) require_no_control_token(a, "aspects");
    s += kAspectsToken;
    s += join(record.aspects);
  } else if (variant == CorpusVariant::targets) {
    for (const auto& t : record.targets) require_no_control_token(t, "targets");
    s += kTargetsToken;
    s += join(record.targets);
  }
  s += kConclusionToken;
  return ex;
}

ParsedSequence parse_encoded(std::string_view seq) {
  auto malformed = [](const std::string& why) {
    return Error(ErrorCode::malformed_sequence, why);
  };
  if (!seq.starts_with(kTopicToken)) throw malformed("sequence must start with <|TOPIC|>");
  if (!seq.ends_with(kConclusionToken)) throw malformed("sequence must end with <|CONCLUSION|>");

  const auto topics = count_occurrences(seq, kTopicToken);
  const auto arguments = count_occurrences(seq, kArgumentToken);
  const auto aspects = count_occurrences(seq, kAspectsToken);
  const auto targets = count_occurrences(seq, kTargetsToken);
  const auto conclusions = count_occurrences(seq, kConclusionToken);
  if (topics != 1 || arguments != 1 || conclusions != 1 || aspects > 1 || targets > 1 ||
      aspects + targets > 1) {
    throw malformed("each control token must appear once; aspects and targets are exclusive");
  }

  const auto arg_pos = seq.find(kArgumentToken);
  const auto end_pos = seq.size() - kConclusionToken.size();
  std::size_t knowledge_pos = end_pos;
  std::string_view knowledge_token;
  if (aspects == 1) {
    knowledge_pos = seq.find(kAspectsToken);
    knowledge_token = kAspectsToken;
  } else if (targets == 1) {
    knowledge_pos = seq.find(kTargetsToken);
    knowledge_token = kTargetsToken;
  }
  if (knowledge_pos < arg_pos) throw malformed("knowledge block precedes <|ARGUMENT|>");

  ParsedSequence out;
  const auto topic_begin = kTopicToken.size();
  out.topic = std::string(seq.substr(topic_begin, arg_pos - topic_begin));
  const auto text_begin = arg_pos + kArgumentToken.size();
  out.text = std::string(seq.substr(text_begin, knowledge_pos - text_begin));
  if (!knowledge_token.empty()) {
    const auto begin = knowledge_pos + knowledge_token.size();
    std::string value(seq.substr(begin, end_pos - begin));
    if (knowledge_token == kAspectsToken) {
      out.aspects = std::move(value);
    } else {
      out.targets = std::move(value);
    }
  }
  return out;
}

VariantBuild build_variant(std::span<const ArgConclusionRecord> corpus, CorpusVariant variant) {
  VariantBuild build;
  for (const auto& record : corpus) {
    if (!variant_accepts(variant, record.source)) continue;
    try {
      build.examples.push_back(encode_example(record, variant));
    } catch (const Error& e) {
      build.dropped.push_back({record.id, std::string(to_string(e.code()))});
    }
  }
  return build;
}

void SplitSpec::validate() const {
  if (train_fraction < 0.0 || valid_fraction < 0.0 ||
      std::abs(train_fraction + valid_fraction - 1.0) > 1e-9) {
    throw Error(ErrorCode::invalid_argument, "train and valid fractions must sum to 1");
  }
}

std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(bounded(rng, i));
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

Splits split_corpus(std::span<const EncodedExample> examples, const SplitSpec& spec) {
  spec.validate();
  if (examples.size() <= spec.test_count) {
    throw Error(ErrorCode::corpus_too_small,
                std::to_string(examples.size()) + " examples cannot hold a test set of " +
                    std::to_string(spec.test_count));
  }
  const auto order = seeded_permutation(examples.size(), spec.seed);

  std::size_t cmv_available = 0;
  for (const auto& ex : examples) cmv_available += is_cmv(ex.source) ? 1 : 0;
  const std::size_t debate_available = examples.size() - cmv_available;

  std::size_t cmv_quota = spec.test_count;
  std::size_t debate_quota = spec.test_count;
  if (cmv_available > 0 && debate_available > 0) {
    cmv_quota = spec.test_count / 2;
    debate_quota = spec.test_count - cmv_quota;
    if (cmv_available < cmv_quota) {
      debate_quota += cmv_quota - cmv_available;
      cmv_quota = cmv_available;
    } else if (debate_available < debate_quota) {
      cmv_quota += debate_quota - debate_available;
      debate_quota = debate_available;
    }
  }

  Splits splits;
  std::vector<bool> in_test(examples.size(), false);
  std::size_t cmv_taken = 0, debate_taken = 0;
  for (std::size_t idx : order) {
    if (splits.test.size() == spec.test_count) break;
    const bool cmv = is_cmv(examples[idx].source);
    if (cmv && cmv_taken < cmv_quota) {
      ++cmv_taken;
    } else if (!cmv && debate_taken < debate_quota) {
      ++debate_taken;
    } else {
      continue;
    }
    in_test[idx] = true;
    splits.test.push_back(examples[idx]);
  }

  const std::size_t remaining = examples.size() - splits.test.size();
  const auto valid_count = static_cast<std::size_t>(
      std::floor(static_cast<double>(remaining) * spec.valid_fraction + 1e-9));
  const std::size_t train_count = remaining - valid_count;
  for (std::size_t idx : order) {
    if (in_test[idx]) continue;
    if (splits.train.size() < train_count) {
      splits.train.push_back(examples[idx]);
    } else {
      splits.valid.push_back(examples[idx]);
    }
  }
  return splits;
}

std::size_t default_max_source_tokens(CorpusVariant variant) {
  return is_knowledge_variant(variant) ? 750 : 512;
}

std::string prepare_source_line(std::string_view source, std::size_t max_tokens) {
  if (max_tokens == 0) throw Error(ErrorCode::invalid_argument, "max_source_tokens must be >= 1");
  std::string line = replace_line_breaks(source);
  std::size_t words = 0;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && text::is_space(line[i])) ++i;
    if (i == line.size()) break;
    while (i < line.size() && !text::is_space(line[i])) ++i;
    if (++words == max_tokens) {
      line.resize(i);
      break;
    }
  }
  return line;
}

ExportedFiles export_seq2seq(std::span<const EncodedExample> examples,
                             const std::filesystem::path& dir, std::string_view split,
                             std::size_t max_source_tokens) {
  std::string sources, targets, ids;
  for (const auto& ex : examples) {
    sources += prepare_source_line(ex.source_sequence, max_source_tokens);
    sources.push_back('\n');
    targets += replace_line_breaks(ex.target_sequence);
    targets.push_back('\n');
    ids += replace_line_breaks(ex.record_id);
    ids.push_back('\n');
  }
  ExportedFiles files;
  const std::string stem(split);
  files.source = dir / (stem + ".source");
  files.target = dir / (stem + ".target");
  files.ids = dir / (stem + ".ids");
  io::write_file_atomic(files.source, sources);
  io::write_file_atomic(files.target, targets);
  io::write_file_atomic(files.ids, ids);
  return files;
}

}  // namespace argconc::encoding
