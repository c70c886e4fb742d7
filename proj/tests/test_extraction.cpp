#include <cmath>
#include <random>

#include "argconc/error.hpp"
#include "argconc/extraction.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace argconc;
using namespace argconc::extraction;

namespace {

Eigen::MatrixXd random_graph(std::mt19937_64& rng, Eigen::Index n, double density = 0.6) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (u(rng) < density) w(i, j) = w(j, i) = u(rng);
    }
  }
  return w;
}

oracle::Matrix to_rows(const Eigen::MatrixXd& w) {
  oracle::Matrix m(static_cast<std::size_t>(w.rows()), std::vector<double>(static_cast<std::size_t>(w.cols())));
  for (Eigen::Index i = 0; i < w.rows(); ++i)
    for (Eigen::Index j = 0; j < w.cols(); ++j) m[i][j] = w(i, j);
  return m;
}

class FailingParaphraser : public Paraphraser {
 public:
  explicit FailingParaphraser(ErrorCode code) : code_(code) {}
  std::string paraphrase(const std::string&) override { throw Error(code_, "down"); }

 private:
  ErrorCode code_;
};

class UpperParaphraser : public Paraphraser {
 public:
  std::string paraphrase(const std::string& s) override { return "Reworded: " + s; }
};

class ShortEmbedder : public SentenceEmbedder {
 public:
  std::vector<EmbeddingVector> embed(std::span<const std::string>) override { return {}; }
};

}  // namespace

TEST_CASE("sentence segmentation") {
  CHECK(segment_sentences("One. Two! Three?") == std::vector<std::string>{"One.", "Two!", "Three?"});
  CHECK(segment_sentences("Dr. Smith paid $3.50 today. Really?!") ==
        std::vector<std::string>{"Dr. Smith paid $3.50 today.", "Really?!"});
  CHECK(segment_sentences("He said \"stop.\" Then left.") ==
        std::vector<std::string>{"He said \"stop.\"", "Then left."});
  CHECK(segment_sentences("Use e.g. tea. Or coffee") ==
        std::vector<std::string>{"Use e.g. tea.", "Or coffee"});
  CHECK(segment_sentences("Heading\n\nBody text here") ==
        std::vector<std::string>{"Heading", "Body text here"});
  CHECK(segment_sentences("  ").empty());
  CHECK(segment_sentences("No terminator") == std::vector<std::string>{"No terminator"});
}

TEST_CASE("bm25 scores follow the closed form") {
  std::vector<ArgConclusionRecord> corpus(3);
  corpus[0] = {.id = "a", .text = "cats purr softly"};
  corpus[1] = {.id = "b", .text = "dogs bark loudly at cats"};
  corpus[2] = {.id = "c", .text = "fish swim"};
  Bm25Index index;
  CHECK_THROWS_AS(index.top_k("cats", 1), Error);
  index.build(corpus);
  const std::vector<std::string> q = {"cats"};
  const double avg = 10.0 / 3.0;
  const double idf = std::log(1.0 + (3 - 2 + 0.5) / (2 + 0.5));
  auto expected = [&](double len) { return idf * 2.2 / (1.0 + 1.2 * (0.25 + 0.75 * len / avg)); };
  CHECK(index.score(q, 0) == doctest::Approx(expected(3)));
  CHECK(index.score(q, 1) == doctest::Approx(expected(5)));
  CHECK(index.score(q, 2) == 0.0);
  CHECK(index.top_k("cats", 5) == std::vector<std::size_t>{0, 1});
  CHECK(index.top_k("cats", 5, "a") == std::vector<std::size_t>{1});
  CHECK(index.top_k("cats", 0).empty());

  auto ctx = retrieve_context(corpus[0], corpus, index, 10);
  REQUIRE(ctx.size() == 1);
  CHECK(ctx[0].id == "b");
}

TEST_CASE("pagerank matches the direct solve on small graphs") {
  std::mt19937_64 rng(1);
  for (Eigen::Index n = 1; n <= 6; ++n) {
    for (int rep = 0; rep < 20; ++rep) {
      auto w = random_graph(rng, n);
      auto pr = pagerank(w);
      CHECK(pr.converged);
      auto want = oracle::pagerank_direct(to_rows(w), 0.85);
      for (Eigen::Index i = 0; i < n; ++i) CHECK(std::abs(pr.scores[i] - want[i]) < 1e-8);
    }
  }
}

TEST_CASE("three-node weighted chain") {
  Eigen::MatrixXd w(3, 3);
  w << 0, 0.5, 0, 0.5, 0, 1.0, 0, 1.0, 0;
  auto pr = pagerank(w);
  auto want = oracle::pagerank_direct(to_rows(w), 0.85);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(pr.scores[i] - want[i]) < 1e-8);
  CHECK(pr.scores[2] > pr.scores[0]);
}

TEST_CASE("pagerank invariants on random graphs") {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> size(1, 20);
  for (int rep = 0; rep < 200; ++rep) {
    auto w = random_graph(rng, size(rng), 0.4);
    auto pr = pagerank(w);
    CHECK(std::abs(pr.scores.sum() - 1.0) < 1e-8);
    CHECK(pr.scores.minCoeff() >= 0.0);
    Eigen::Index a, b;
    pr.scores.maxCoeff(&a);
    pagerank(w * 0.5).scores.maxCoeff(&b);
    CHECK(a == b);
  }
}

TEST_CASE("edgeless graphs score uniformly") {
  auto pr = pagerank(Eigen::MatrixXd::Zero(4, 4));
  for (int i = 0; i < 4; ++i) CHECK(pr.scores[i] == doctest::Approx(0.25));
}

TEST_CASE("personalization biases the ranking") {
  Eigen::MatrixXd w = Eigen::MatrixXd::Ones(3, 3) - Eigen::MatrixXd::Identity(3, 3);
  PageRankParams p;
  p.personalization = {0.0, 0.0, 1.0};
  auto pr = pagerank(w, p);
  auto want = oracle::pagerank_direct(to_rows(w), 0.85, {0.0, 0.0, 1.0});
  for (int i = 0; i < 3; ++i) CHECK(std::abs(pr.scores[i] - want[i]) < 1e-8);
  CHECK(pr.scores[2] > pr.scores[0]);
  p.personalization = {1.0, 2.0};
  CHECK_THROWS_AS(pagerank(w, p), Error);
}

TEST_CASE("pagerank rejects broken graphs and parameters") {
  auto code_of = [](const Eigen::MatrixXd& w, PageRankParams p = {}) {
    try {
      pagerank(w, p);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::io_error;
  };
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(2, 2);
  w(0, 1) = 0.3;
  CHECK(code_of(w) == ErrorCode::invalid_graph);
  w(1, 0) = 0.3;
  w(0, 0) = 0.1;
  CHECK(code_of(w) == ErrorCode::invalid_graph);
  w(0, 0) = 0;
  w(0, 1) = w(1, 0) = 1.5;
  CHECK(code_of(w) == ErrorCode::invalid_graph);
  CHECK(code_of(Eigen::MatrixXd::Zero(2, 3)) == ErrorCode::invalid_graph);
  PageRankParams p;
  p.damping = 1.0;
  CHECK(code_of(Eigen::MatrixXd::Zero(2, 2), p) == ErrorCode::invalid_argument);
}

TEST_CASE("non-convergence is reported, not thrown") {
  std::mt19937_64 rng(4);
  PageRankParams p;
  p.max_iterations = 1;
  p.tolerance = 1e-15;
  auto pr = pagerank(random_graph(rng, 6), p);
  CHECK_FALSE(pr.converged);
  CHECK(pr.iterations == 1);
  CHECK(std::abs(pr.scores.sum() - 1.0) < 1e-12);
}

TEST_CASE("sentence graph layout") {
  auto fx = testing::extraction_fixture(0);
  LexicalSentenceEmbedder embedder;
  auto g = build_sentence_graph(fx.argument, fx.context, embedder);
  CHECK_NOTHROW(g.validate());
  REQUIRE(g.sentences.size() == 4 + 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(g.sentences[i].origin == Origin::target_argument);
    CHECK(g.sentences[i].index == i);
  }
  CHECK(g.sentences[4].origin == Origin::context);
  CHECK(g.sentences[5].index == 1);

  SentenceGraph only_context;
  only_context.sentences = {{"x", Origin::context, 0}};
  only_context.weights = Eigen::MatrixXd::Zero(1, 1);
  CHECK_THROWS_AS(only_context.validate(), Error);
}

TEST_CASE("extraction picks the hub on engineered corpora") {
  LexicalSentenceEmbedder embedder;
  for (std::size_t f = 0; f < 25; ++f) {
    auto fx = testing::extraction_fixture(f);
    auto r = extract_conclusion(fx.argument, fx.context, embedder);
    CHECK_MESSAGE(r.sentence_index == fx.hub_index, "fixture " << f);
    CHECK(r.conclusion_sentence == fx.hub_sentence);
    CHECK(r.converged);
    double sum = 0;
    for (double s : r.graph_scores) sum += s;
    CHECK(std::abs(sum - 1.0) < 1e-8);
    for (std::size_t i = 1; i < r.ranked.size(); ++i) {
      CHECK(r.ranked[i - 1].score >= r.ranked[i].score);
    }
  }
}

TEST_CASE("extraction input errors") {
  LexicalSentenceEmbedder lexical;
  ArgConclusionRecord empty{.id = "e", .text = "   "};
  CHECK_THROWS_AS(extract_conclusion(empty, {}, lexical), Error);
  ShortEmbedder broken;
  auto fx = testing::extraction_fixture(1);
  try {
    extract_conclusion(fx.argument, fx.context, broken);
    FAIL("expected embedding_failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::embedding_failure);
  }
}

TEST_CASE("paraphrase fallback") {
  auto none = paraphrase("A sentence.", nullptr);
  CHECK(none.text == "A sentence.");
  CHECK(none.fallback);

  UpperParaphraser ok;
  auto good = paraphrase("A sentence.", &ok);
  CHECK(good.text == "Reworded: A sentence.");
  CHECK_FALSE(good.fallback);

  FailingParaphraser down(ErrorCode::provider_unreachable);
  auto fb = paraphrase("A sentence.", &down, true);
  CHECK(fb.fallback);
  CHECK(fb.text == "A sentence.");
  CHECK_FALSE(fb.warning.empty());
  CHECK_THROWS_AS(paraphrase("A sentence.", &down, false), Error);

  FailingParaphraser other(ErrorCode::io_error);
  CHECK_THROWS_AS(paraphrase("A sentence.", &other, true), Error);
  CHECK_THROWS_AS(paraphrase("  ", nullptr), Error);
}
