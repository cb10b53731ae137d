#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "synrep/encoder.hpp"
#include "synrep/linearizer.hpp"
#include "synrep/model.hpp"
#include "synrep/tree.hpp"

namespace synrep {

inline constexpr double kDefaultLambda = 0.05;
inline constexpr double kDefaultLearningRate = 1e-3;
inline constexpr std::size_t kDefaultEpochs = 50;
inline constexpr std::uint64_t kDefaultSeed = 42;

struct TrainConfig {
  double lambda = kDefaultLambda;
  double learning_rate = kDefaultLearningRate;
  std::size_t epochs = kDefaultEpochs;
  std::uint64_t seed = kDefaultSeed;
  ModelDims dims;
};

/// A tree with its linearizations and break targets precomputed.
struct TrainingExample {
  LinearizationPair pair;
  std::vector<int> breaks;
};

std::vector<TrainingExample> prepare_examples(const std::vector<ConstituentTree>& corpus,
                                              const LabelVocabulary& vocab);

struct LossBreakdown {
  double task = 0.0;   // mean per-word logistic loss
  double nml = 0.0;    // L_NML of the current table
  double total = 0.0;  // task + lambda * nml
};

struct ModelGradients {
  EncoderParameters encoder;
  Vector head_weights;
  double head_bias = 0.0;
};

/// Objective for one sentence and, when `grads` is non-null, its gradient
/// w.r.t. the encoder and head. The NML term always covers the full table;
/// with lambda == 0 it is neither computed nor differentiated.
LossBreakdown sentence_objective(const ProsodyModel& model, const TrainingExample& example,
                                 double lambda, ModelGradients* grads);

struct Metrics {
  double accuracy = 0.0;
  double loss = 0.0;               // mean per-word logistic loss over the corpus
  double majority_baseline = 0.0;  // accuracy of always predicting the majority class
  std::size_t words = 0;
};

/// Break iff the head probability is strictly above 0.5. Throws EmptyCorpus.
Metrics evaluate(const ProsodyModel& model, const std::vector<TrainingExample>& examples);
Metrics evaluate(const ProsodyModel& model, const std::vector<ConstituentTree>& corpus);

struct EpochLog {
  std::size_t epoch = 0;  // 0 = before any update
  double task_loss = 0.0;
  double nml_loss = 0.0;
  double total_loss = 0.0;
  double nuclear_norm = 0.0;
  double accuracy = 0.0;
};

struct TrainingResult {
  ProsodyModel model;
  std::vector<EpochLog> log;
};

/// Plain SGD, one update per sentence, corpus reshuffled every epoch from
/// the seed. Each log entry is evaluated on the whole corpus after the
/// epoch. Throws EmptyCorpus or NonFiniteLoss.
TrainingResult train(const std::vector<ConstituentTree>& corpus, const TrainConfig& config,
                     PhonemeInventory phonemes = {});

/// Same, starting from an existing model (its vocabulary must cover the corpus).
TrainingResult train(ProsodyModel model, const std::vector<ConstituentTree>& corpus,
                     const TrainConfig& config);

}  // namespace synrep
