#include "synrep/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "synrep/ambiguity.hpp"
#include "synrep/error.hpp"
#include "synrep/linearizer.hpp"
#include "synrep/model.hpp"
#include "synrep/nml.hpp"
#include "synrep/numerics.hpp"
#include "synrep/prosody.hpp"
#include "synrep/synthetic.hpp"
#include "synrep/training.hpp"
#include "synrep/tree.hpp"

namespace synrep {

namespace {

using Json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << content)) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
}

std::vector<ConstituentTree> read_trees(const std::string& path) {
  return parse_tree_lines(read_file(path));
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    rows.push_back(Json(std::vector<double>(row.begin(), row.end())));
  }
  return rows;
}

Json linearization_json(const Linearization& lin, const LabelVocabulary& vocab) {
  Json labels = Json::array();
  for (LabelId id : lin.label_ids) labels.push_back(vocab.label(id));
  return {{"labels", labels}, {"word_pos", lin.word_positions}};
}

// Parsed `--dims d_emb,d_hid,d_ph`; throws InvalidArgument.
ModelDims parse_dims(const std::string& text) {
  std::vector<std::size_t> values;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != part.size() || part.empty() || v == 0) {
      throw Error(ErrorCode::InvalidArgument, "--dims expects three positive integers d_emb,d_hid,d_ph");
    }
    values.push_back(v);
  }
  if (values.size() != 3) {
    throw Error(ErrorCode::InvalidArgument, "--dims expects three positive integers d_emb,d_hid,d_ph");
  }
  return {values[0], values[1], values[2]};
}

TrainConfig read_train_config(const std::string& path) {
  static const std::set<std::string> kKnown{"lambda", "learning_rate", "epochs", "seed",
                                            "d_emb",  "d_hid",         "d_ph"};
  TrainConfig cfg;
  try {
    const Json j = Json::parse(read_file(path));
    if (!j.is_object()) throw Error(ErrorCode::FormatError, path + ": config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
      if (!kKnown.contains(key)) {
        throw Error(ErrorCode::FormatError, path + ": unknown config key '" + key + "'");
      }
    }
    cfg.lambda = j.value("lambda", cfg.lambda);
    cfg.learning_rate = j.value("learning_rate", cfg.learning_rate);
    cfg.epochs = j.value("epochs", cfg.epochs);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.dims.d_emb = j.value("d_emb", cfg.dims.d_emb);
    cfg.dims.d_hid = j.value("d_hid", cfg.dims.d_hid);
    cfg.dims.d_ph = j.value("d_ph", cfg.dims.d_ph);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::FormatError, path + ": " + e.what());
  }
  return cfg;
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) out.push_back(part);
  return out;
}

struct Options {
  std::string input;
  std::string corpus;
  std::string model;
  std::string lexicon;
  std::string config;
  std::string out_path;
  std::uint64_t seed = kDefaultSeed;
  double lambda = kDefaultLambda;
  double lr = kDefaultLearningRate;
  std::size_t epochs = kDefaultEpochs;
  std::string dims;
  std::string lexicon_policy = "strict";
  int format_version = kCheckpointFormatVersion;
  std::size_t sentences = 200;
  std::size_t min_words = 2;
  std::size_t max_words = 8;
  std::size_t words = 3;
  std::string labels = "A,B";
  std::string preterminal = "P";
  std::size_t max_children = 3;
  std::size_t max_unary = 1;
  bool witness = false;
};

void cmd_parse(const Options& o, std::ostream& out) {
  for (const auto& tree : read_trees(o.input)) out << serialize_tree(tree) << '\n';
}

void cmd_linearize(const Options& o, std::ostream& out) {
  const auto trees = read_trees(o.input);
  if (trees.empty()) return;
  const LabelVocabulary vocab = build_vocabulary(trees);
  for (const auto& tree : trees) {
    const LinearizationPair pair = linearize_pair(tree, vocab);
    Json j;
    j["left"] = linearization_json(pair.left, vocab);
    j["right"] = linearization_json(pair.right, vocab);
    j["words"] = tree.words();
    out << j.dump() << '\n';
  }
}

void cmd_generate(const Options& o, std::ostream& out) {
  for (const auto& tree : generate_corpus({o.sentences, o.min_words, o.max_words, o.seed})) {
    out << serialize_tree(tree) << '\n';
  }
}

void cmd_train(const Options& o, const CLI::App& sub, std::ostream& out) {
  TrainConfig cfg = o.config.empty() ? TrainConfig{} : read_train_config(o.config);
  if (sub.count("--seed")) cfg.seed = o.seed;
  if (sub.count("--lambda")) cfg.lambda = o.lambda;
  if (sub.count("--lr")) cfg.learning_rate = o.lr;
  if (sub.count("--epochs")) cfg.epochs = o.epochs;
  if (sub.count("--dims")) cfg.dims = parse_dims(o.dims);

  const auto corpus = read_trees(o.corpus);
  PhonemeInventory phonemes;
  if (!o.lexicon.empty()) phonemes = parse_lexicon(read_file(o.lexicon)).inventory();
  for (const auto& tree : corpus) {
    for (const auto& word : tree.words()) {
      for (const auto& g : split_graphemes(word)) phonemes.add(g);
    }
  }
  const TrainingResult result = train(corpus, cfg, std::move(phonemes));
  for (const EpochLog& e : result.log) {
    Json j;
    j["epoch"] = e.epoch;
    j["task_loss"] = e.task_loss;
    j["nml_loss"] = e.nml_loss;
    j["total_loss"] = e.total_loss;
    j["nuclear_norm"] = e.nuclear_norm;
    j["accuracy"] = e.accuracy;
    out << j.dump() << '\n';
  }
  write_file(o.out_path, save_checkpoint(result.model));
}

void cmd_eval(const Options& o, std::ostream& out) {
  const ProsodyModel model = load_checkpoint(read_file(o.model));
  const Metrics m = evaluate(model, read_trees(o.corpus));
  Json j;
  j["accuracy"] = m.accuracy;
  j["loss"] = m.loss;
  j["majority_baseline"] = m.majority_baseline;
  j["words"] = m.words;
  out << j.dump() << '\n';
}

void cmd_featurize(const Options& o, std::ostream& out) {
  const ProsodyModel model = load_checkpoint(read_file(o.model));
  const Lexicon lexicon = o.lexicon.empty() ? Lexicon{} : parse_lexicon(read_file(o.lexicon));
  const LexiconPolicy policy = parse_lexicon_policy(o.lexicon_policy);
  for (const auto& tree : read_trees(o.input)) {
    const SyntacticFeatureSet features = encode_sentence(model.encoder, tree, model.labels);
    const auto words = tree.words();
    const PhonemeLevelFeatures ph =
        make_phoneme_level(features, words, lexicon, policy, model.phonemes, model.phoneme_embedding);
    Json j;
    j["words"] = words;
    j["phonemes"] = ph.phonemes;
    j["syntactic"] = features.per_word;
    j["phoneme_level"] = matrix_json(ph.rows);
    out << j.dump() << '\n';
  }
}

void cmd_ambiguity(const Options& o, std::ostream& out) {
  const EnumerationSpec spec{o.words, split_commas(o.labels), o.preterminal, o.max_children,
                             o.max_unary};
  const auto trees = enumerate_trees(spec);
  const CollisionReport r = collision_report(trees, enumeration_vocabulary(spec));
  Json j;
  j["tree_count"] = r.tree_count;
  j["distinct_left_sequences"] = r.distinct_left_sequences;
  j["distinct_pairs"] = r.distinct_pairs;
  j["left_collision_classes"] = r.left_collision_classes;
  j["pair_collision_classes"] = r.pair_collision_classes;
  if (o.witness) {
    auto witness = [&](const auto& w) -> Json {
      if (!w) return nullptr;
      return Json::array({serialize_tree(trees[w->first]), serialize_tree(trees[w->second])});
    };
    j["left_witness"] = witness(r.left_witness);
    j["pair_witness"] = witness(r.pair_witness);
  }
  out << j.dump() << '\n';
}

void cmd_export_embeddings(const Options& o, std::ostream& out) {
  const ProsodyModel model = load_checkpoint(read_file(o.model));
  const Matrix& table = model.encoder.embedding.weights;
  const NmlResult nml = nml_loss(model.encoder.embedding);
  Json j;
  j["labels"] = model.labels.labels();
  j["pca"] = matrix_json(pca_2d(table));
  j["singular_values"] = nml.singular_values;
  j["nuclear_norm"] = -nml.loss * static_cast<double>(table.rows());
  out << j.dump() << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Syntactic representations from dual tree traversals", "synrep"};
  app.require_subcommand(1);
  Options o;

  auto* parse = app.add_subcommand("parse", "Validate a tree file and print canonical trees");
  parse->add_option("input", o.input, "Tree file, one bracketed tree per line")->required();

  auto* linearize = app.add_subcommand("linearize", "Print left-first and right-first linearizations");
  linearize->add_option("input", o.input, "Tree file")->required();

  auto* generate = app.add_subcommand("generate", "Print a seeded synthetic tree corpus");
  generate->add_option("--sentences", o.sentences, "Number of trees")->capture_default_str();
  generate->add_option("--min-words", o.min_words)->capture_default_str();
  generate->add_option("--max-words", o.max_words)->capture_default_str();
  generate->add_option("--seed", o.seed)->capture_default_str();

  auto* train_cmd = app.add_subcommand("train", "Train the encoder and break head");
  train_cmd->add_option("--corpus", o.corpus, "Tree file")->required();
  train_cmd->add_option("--config", o.config, "JSON training config");
  train_cmd->add_option("--lexicon", o.lexicon, "Lexicon whose phonemes enter the model inventory");
  train_cmd->add_option("--out", o.out_path, "Checkpoint path")->required();
  train_cmd->add_option("--seed", o.seed);
  train_cmd->add_option("--lambda", o.lambda, "NML weight");
  train_cmd->add_option("--lr", o.lr, "Learning rate");
  train_cmd->add_option("--epochs", o.epochs);
  train_cmd->add_option("--dims", o.dims, "d_emb,d_hid,d_ph");
  train_cmd->add_option("--format-version", o.format_version, "Checkpoint format version")
      ->check(CLI::IsMember({kCheckpointFormatVersion}));

  auto* eval = app.add_subcommand("eval", "Break-prediction metrics of a checkpoint");
  eval->add_option("--model", o.model)->required();
  eval->add_option("--corpus", o.corpus)->required();

  auto* featurize = app.add_subcommand("featurize", "Export word- and phoneme-level features");
  featurize->add_option("--model", o.model)->required();
  featurize->add_option("--input", o.input, "Tree file")->required();
  featurize->add_option("--lexicon", o.lexicon, "Lexicon file");
  featurize->add_option("--lexicon-policy", o.lexicon_policy)
      ->check(CLI::IsMember({"strict", "fallback"}))
      ->capture_default_str();

  auto* ambiguity = app.add_subcommand("ambiguity", "Enumerate trees and count traversal collisions");
  ambiguity->add_option("--words", o.words)->capture_default_str();
  ambiguity->add_option("--labels", o.labels, "Comma-separated labels")->capture_default_str();
  ambiguity->add_option("--preterminal", o.preterminal)->capture_default_str();
  ambiguity->add_option("--max-children", o.max_children)->capture_default_str();
  ambiguity->add_option("--max-unary", o.max_unary)->capture_default_str();
  ambiguity->add_flag("--witness", o.witness, "Include witness tree pairs");

  auto* export_cmd = app.add_subcommand("export-embeddings", "PCA and spectrum of the label table");
  export_cmd->add_option("--model", o.model)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (parse->parsed()) cmd_parse(o, out);
    if (linearize->parsed()) cmd_linearize(o, out);
    if (generate->parsed()) cmd_generate(o, out);
    if (train_cmd->parsed()) cmd_train(o, *train_cmd, out);
    if (eval->parsed()) cmd_eval(o, out);
    if (featurize->parsed()) cmd_featurize(o, out);
    if (ambiguity->parsed()) cmd_ambiguity(o, out);
    if (export_cmd->parsed()) cmd_export_embeddings(o, out);
  } catch (const Error& e) {
    err << "synrep: " << e.what() << '\n';
    return e.code() == ErrorCode::InvalidArgument ? kExitUsage : kExitDataError;
  }
  out.flush();
  return kExitOk;
}

}  // namespace synrep
