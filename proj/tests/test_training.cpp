#include <gtest/gtest.h>

#include <cmath>

#include "gradcheck.hpp"
#include "synrep/error.hpp"
#include "synrep/model.hpp"
#include "synrep/nml.hpp"
#include "synrep/synthetic.hpp"
#include "synrep/training.hpp"

namespace synrep {
namespace {

using testing::check_block;

constexpr ModelDims kSmall{4, 5, 3};

std::vector<ConstituentTree> small_corpus(std::size_t n = 20) {
  return generate_corpus({n, 2, 6, 9});
}

TEST(Synthetic, RespectsSpecAndIsDeterministic) {
  const auto a = generate_corpus({50, 3, 5, 1});
  const auto b = generate_corpus({50, 3, 5, 1});
  ASSERT_EQ(a.size(), 50u);
  EXPECT_EQ(a, b);
  for (const auto& t : a) {
    EXPECT_GE(t.word_count(), 3u);
    EXPECT_LE(t.word_count(), 5u);
  }
  EXPECT_LE(build_vocabulary(a).size(), 12u);
  EXPECT_NE(generate_corpus({50, 3, 5, 2}), a);
}

TEST(Evaluate, ZeroHeadPredictsNoBreaks) {
  const auto corpus = small_corpus();
  auto model = ProsodyModel::initialize(build_vocabulary(corpus), {}, kSmall, 1);
  std::fill(model.head_weights.begin(), model.head_weights.end(), 0.0);
  std::size_t words = 0, positives = 0;
  for (const auto& t : corpus)
    for (int b : oracle_breaks(t).breaks) {
      ++words;
      positives += static_cast<std::size_t>(b);
    }
  const Metrics m = evaluate(model, corpus);
  const double rate = static_cast<double>(positives) / static_cast<double>(words);
  EXPECT_EQ(m.words, words);
  EXPECT_DOUBLE_EQ(m.accuracy, 1.0 - rate);
  EXPECT_DOUBLE_EQ(m.majority_baseline, std::max(rate, 1.0 - rate));
  EXPECT_NEAR(m.loss, std::log(2.0), 1e-12);
  const Metrics again = evaluate(model, corpus);
  EXPECT_EQ(again.accuracy, m.accuracy);
  EXPECT_EQ(again.loss, m.loss);
}

TEST(Evaluate, ZeroHeadMatchesMajorityWhenBreaksAreRare) {
  const std::vector<ConstituentTree> corpus{parse_tree("(S (NP (DT a) (JJ b) (NN c) (NN d)))"),
                                            parse_tree("(S (VP (VB e) (DT f) (NN g)))")};
  auto model = ProsodyModel::initialize(build_vocabulary(corpus), {}, kSmall, 1);
  std::fill(model.head_weights.begin(), model.head_weights.end(), 0.0);
  const Metrics m = evaluate(model, corpus);
  EXPECT_DOUBLE_EQ(m.accuracy, 5.0 / 7.0);
  EXPECT_DOUBLE_EQ(m.accuracy, m.majority_baseline);
}

TEST(Evaluate, EmptyCorpus) {
  const auto corpus = small_corpus();
  const auto model = ProsodyModel::initialize(build_vocabulary(corpus), {}, kSmall, 1);
  EXPECT_THROW(evaluate(model, std::vector<ConstituentTree>{}), Error);
}

TEST(SentenceObjective, Composition) {
  const auto corpus = small_corpus();
  const auto model = ProsodyModel::initialize(build_vocabulary(corpus), {}, kSmall, 2);
  const auto examples = prepare_examples(corpus, model.labels);
  const double nml = -nuclear_norm(model.encoder.embedding.weights) /
                     static_cast<double>(model.labels.size());
  for (const auto& ex : examples) {
    const auto with = sentence_objective(model, ex, 0.05, nullptr);
    const auto without = sentence_objective(model, ex, 0.0, nullptr);
    ASSERT_EQ(with.task, without.task);
    ASSERT_NEAR(with.nml, nml, 1e-12);
    ASSERT_NEAR(with.total, with.task + 0.05 * with.nml, 1e-12);
    ASSERT_EQ(without.total, without.task);
  }
}

TEST(SentenceObjective, FullGradient) {
  const auto corpus = small_corpus(10);
  auto model = ProsodyModel::initialize(build_vocabulary(corpus), {}, kSmall, 3);
  // Larger weights so the loss is not flat around the initialization.
  Rng rng(4);
  for (double& w : model.head_weights) w = rng.uniform(-1.0, 1.0);
  for (double& w : model.encoder.embedding.weights.data()) w = rng.uniform(-0.7, 0.7);
  model.head_bias = 0.3;
  const auto examples = prepare_examples(corpus, model.labels);
  for (const auto& ex : examples) {
    ModelGradients g;
    sentence_objective(model, ex, 0.5, &g);
    auto loss = [&] { return sentence_objective(model, ex, 0.5, nullptr).total; };
    ASSERT_LE(check_block(model.encoder.embedding.weights.data(), g.encoder.embedding.weights.data(), loss), 1e-5);
    auto blocks = parameter_blocks(model.encoder.right);
    auto grad_blocks = parameter_blocks(g.encoder.right);
    for (std::size_t b = 0; b < kGruBlockCount; ++b)
      ASSERT_LE(check_block(blocks[b].values, grad_blocks[b].values, loss), 1e-5);
    ASSERT_LE(check_block(model.head_weights, g.head_weights, loss), 1e-5);
    std::span<double> bias(&model.head_bias, 1);
    ASSERT_LE(check_block(bias, std::span<const double>(&g.head_bias, 1), loss), 1e-5);
  }
}

TEST(Train, ReproducibleAndLogged) {
  const auto corpus = small_corpus();
  TrainConfig cfg;
  cfg.dims = kSmall;
  cfg.epochs = 3;
  cfg.learning_rate = 0.05;
  const auto a = train(corpus, cfg);
  const auto b = train(corpus, cfg);
  EXPECT_EQ(a.model, b.model);
  ASSERT_EQ(a.log.size(), 4u);
  for (std::size_t e = 0; e < a.log.size(); ++e) {
    EXPECT_EQ(a.log[e].epoch, e);
    EXPECT_NEAR(a.log[e].total_loss, a.log[e].task_loss + cfg.lambda * a.log[e].nml_loss, 1e-12);
  }
  cfg.seed = 43;
  EXPECT_NE(train(corpus, cfg).model, a.model);
}

TEST(Train, ZeroLambdaLeavesNmlOutOfTotal) {
  TrainConfig cfg;
  cfg.dims = kSmall;
  cfg.epochs = 1;
  cfg.lambda = 0.0;
  for (const auto& e : train(small_corpus(), cfg).log) EXPECT_EQ(e.total_loss, e.task_loss);
}

TEST(Train, EmptyCorpus) {
  try {
    train(std::vector<ConstituentTree>{}, TrainConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyCorpus);
  }
}

TEST(Train, NonFiniteLossIsReported) {
  TrainConfig cfg;
  cfg.dims = kSmall;
  cfg.epochs = 2;
  cfg.learning_rate = 1e300;
  try {
    train(small_corpus(), cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonFiniteLoss);
  }
}

TEST(Checkpoint, RoundTrip) {
  const auto corpus = small_corpus();
  const auto model =
      ProsodyModel::initialize(build_vocabulary(corpus), PhonemeInventory({"K", "AE"}), kSmall, 5);
  const std::string text = save_checkpoint(model);
  const ProsodyModel back = load_checkpoint(text);
  EXPECT_EQ(back, model);
  EXPECT_EQ(save_checkpoint(back), text);
}

TEST(Checkpoint, RejectsBadInput) {
  const auto model = ProsodyModel::initialize(build_vocabulary(small_corpus()), {}, kSmall, 5);
  std::string text = save_checkpoint(model);
  const auto pos = text.find("\"format_version\":1");
  ASSERT_NE(pos, std::string::npos) << text.substr(0, 80);
  std::string bumped = text;
  bumped.replace(pos, 18, "\"format_version\":2");
  for (const std::string& bad : {bumped, std::string("{"), std::string("[]"), text.substr(0, text.size() / 2)}) {
    try {
      load_checkpoint(bad);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::FormatError);
    }
  }
}

}  // namespace
}  // namespace synrep
