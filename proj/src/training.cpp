#include "synrep/training.hpp"

#include <cmath>
#include <string>

#include "synrep/error.hpp"
#include "synrep/nml.hpp"
#include "synrep/prosody.hpp"
#include "synrep/rng.hpp"

namespace synrep {

namespace {

double sigmoid(double x) noexcept {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// -[y log s(a) + (1 - y) log(1 - s(a))] = softplus(a) - y a
double logistic_loss(double logit, int target) noexcept {
  const double softplus = std::max(logit, 0.0) + std::log1p(std::exp(-std::abs(logit)));
  return softplus - static_cast<double>(target) * logit;
}

double head_logit(const ProsodyModel& model, const Vector& feature) {
  double a = model.head_bias;
  for (std::size_t j = 0; j < feature.size(); ++j) a += model.head_weights[j] * feature[j];
  return a;
}

void sgd_step(ProsodyModel& model, const ModelGradients& g, double lr) {
  model.encoder.add_scaled(g.encoder, -lr);
  for (std::size_t j = 0; j < model.head_weights.size(); ++j) {
    model.head_weights[j] -= lr * g.head_weights[j];
  }
  model.head_bias -= lr * g.head_bias;
}

EpochLog summarize(const ProsodyModel& model, const std::vector<TrainingExample>& examples,
                   double lambda, std::size_t epoch) {
  const Metrics metrics = evaluate(model, examples);
  const NmlResult nml = nml_loss(model.encoder.embedding);
  EpochLog entry;
  entry.epoch = epoch;
  entry.task_loss = metrics.loss;
  entry.nml_loss = nml.loss;
  entry.total_loss = metrics.loss + lambda * nml.loss;
  entry.nuclear_norm = -nml.loss * static_cast<double>(model.labels.size());
  entry.accuracy = metrics.accuracy;
  return entry;
}

}  // namespace

std::vector<TrainingExample> prepare_examples(const std::vector<ConstituentTree>& corpus,
                                              const LabelVocabulary& vocab) {
  std::vector<TrainingExample> out;
  out.reserve(corpus.size());
  for (const ConstituentTree& tree : corpus) {
    out.push_back({linearize_pair(tree, vocab), oracle_breaks(tree).breaks});
  }
  return out;
}

LossBreakdown sentence_objective(const ProsodyModel& model, const TrainingExample& example,
                                 double lambda, ModelGradients* grads) {
  const EncodedSentence encoded = encode(model.encoder, example.pair);
  const auto& features = encoded.features.per_word;
  const std::size_t w = features.size();
  if (example.breaks.size() != w) {
    throw Error(ErrorCode::CountMismatch, "break targets differ from word count");
  }

  LossBreakdown out;
  std::vector<Vector> grad_features;
  if (grads) {
    grads->head_weights.assign(model.head_weights.size(), 0.0);
    grads->head_bias = 0.0;
    grad_features.assign(w, Vector(features.empty() ? 0 : features[0].size(), 0.0));
  }
  const double inv_w = 1.0 / static_cast<double>(w);
  for (std::size_t i = 0; i < w; ++i) {
    const double a = head_logit(model, features[i]);
    out.task += logistic_loss(a, example.breaks[i]) * inv_w;
    if (grads) {
      const double da = (sigmoid(a) - static_cast<double>(example.breaks[i])) * inv_w;
      grads->head_bias += da;
      for (std::size_t j = 0; j < features[i].size(); ++j) {
        grads->head_weights[j] += da * features[i][j];
        grad_features[i][j] = da * model.head_weights[j];
      }
    }
  }
  if (grads) grads->encoder = encoder_backward(model.encoder, encoded.trace, grad_features);

  if (lambda != 0.0) {
    const NmlResult nml = nml_loss(model.encoder.embedding);
    out.nml = nml.loss;
    if (grads) grads->encoder.embedding.weights += nml.grad_table * lambda;
  }
  out.total = out.task + lambda * out.nml;
  return out;
}

Metrics evaluate(const ProsodyModel& model, const std::vector<TrainingExample>& examples) {
  if (examples.empty()) throw Error(ErrorCode::EmptyCorpus, "nothing to evaluate");
  Metrics m;
  std::size_t correct = 0;
  std::size_t positives = 0;
  double loss_sum = 0.0;
  for (const TrainingExample& ex : examples) {
    const SyntacticFeatureSet features = encode(model.encoder, ex.pair).features;
    for (std::size_t i = 0; i < features.word_count(); ++i) {
      const double a = head_logit(model, features.per_word[i]);
      const int predicted = sigmoid(a) > 0.5 ? 1 : 0;
      correct += predicted == ex.breaks[i] ? 1 : 0;
      positives += ex.breaks[i] == 1 ? 1 : 0;
      loss_sum += logistic_loss(a, ex.breaks[i]);
      ++m.words;
    }
  }
  const auto n = static_cast<double>(m.words);
  m.accuracy = static_cast<double>(correct) / n;
  m.loss = loss_sum / n;
  const double positive_rate = static_cast<double>(positives) / n;
  m.majority_baseline = std::max(positive_rate, 1.0 - positive_rate);
  return m;
}

Metrics evaluate(const ProsodyModel& model, const std::vector<ConstituentTree>& corpus) {
  return evaluate(model, prepare_examples(corpus, model.labels));
}

TrainingResult train(const std::vector<ConstituentTree>& corpus, const TrainConfig& config,
                     PhonemeInventory phonemes) {
  if (corpus.empty()) throw Error(ErrorCode::EmptyCorpus, "training corpus is empty");
  ProsodyModel model = ProsodyModel::initialize(build_vocabulary(corpus), std::move(phonemes),
                                                config.dims, config.seed);
  return train(std::move(model), corpus, config);
}

TrainingResult train(ProsodyModel model, const std::vector<ConstituentTree>& corpus,
                     const TrainConfig& config) {
  if (corpus.empty()) throw Error(ErrorCode::EmptyCorpus, "training corpus is empty");
  if (!(config.learning_rate > 0.0) || !(config.lambda >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "learning rate must be > 0 and lambda >= 0");
  }
  model.validate();
  const std::vector<TrainingExample> examples = prepare_examples(corpus, model.labels);

  TrainingResult result;
  result.log.push_back(summarize(model, examples, config.lambda, 0));
  Rng order_rng(config.seed ^ 0xa0761d6478bd642fULL);
  ModelGradients grads;
  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    for (std::size_t idx : order_rng.permutation(examples.size())) {
      const LossBreakdown loss = sentence_objective(model, examples[idx], config.lambda, &grads);
      if (!std::isfinite(loss.total)) {
        throw Error(ErrorCode::NonFiniteLoss, "loss diverged in epoch " + std::to_string(epoch));
      }
      sgd_step(model, grads, config.learning_rate);
    }
    result.log.push_back(summarize(model, examples, config.lambda, epoch));
    if (!std::isfinite(result.log.back().total_loss)) {
      throw Error(ErrorCode::NonFiniteLoss, "loss diverged in epoch " + std::to_string(epoch));
    }
  }
  result.model = std::move(model);
  return result;
}

}  // namespace synrep
