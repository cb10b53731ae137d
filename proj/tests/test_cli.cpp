#include <gtest/gtest.h>

#include <json.hpp>

#include "cli_fixture.hpp"

namespace synrep {
namespace {

using testing::run;
using testing::slurp;
using testing::TempDir;
using Json = nlohmann::json;

constexpr const char* kCatSat = "(S (NP (DT the) (NN cat)) (VP (VB sat)))\n";

TEST(Cli, ParseCanonicalizes) {
  TempDir dir("parse");
  const auto in = dir.file("t.txt", "# c\n( S (NP (DT the) cat) (VP (VB sat)))\n\n");
  const auto r = run({"parse", in});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "(S (NP (DT the) (XX cat)) (VP (VB sat)))\n");
}

TEST(Cli, ParseEmptyFile) {
  TempDir dir("empty");
  const auto r = run({"parse", dir.file("e.txt", "")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "");
}

TEST(Cli, ParseReportsLine) {
  TempDir dir("bad");
  const auto r = run({"parse", dir.file("b.txt", "(A (P w))\n(A (P w)\n")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
  EXPECT_EQ(r.err.find('\n'), r.err.size() - 1);
}

TEST(Cli, LinearizeCatSat) {
  TempDir dir("lin");
  const auto r = run({"linearize", dir.file("t.txt", kCatSat)});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["left"]["labels"], Json::array({"S", "NP", "DT", "NN", "VP", "VB"}));
  EXPECT_EQ(j["left"]["word_pos"], Json::array({2, 3, 5}));
  EXPECT_EQ(j["right"]["labels"], Json::array({"S", "VP", "VB", "NP", "NN", "DT"}));
  EXPECT_EQ(j["right"]["word_pos"], Json::array({5, 4, 2}));
  EXPECT_EQ(j["words"], Json::array({"the", "cat", "sat"}));
}

TEST(Cli, TrainMissingCorpus) {
  TempDir dir("missing");
  const auto missing = dir.path("nope.txt");
  const auto r = run({"train", "--corpus", missing, "--out", dir.path("m.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find(missing), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"train", "--corpus", "x"}).code, 2);
  EXPECT_EQ(run({"ambiguity", "--words", "three"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, AmbiguityDefaultUniverse) {
  const auto r = run({"ambiguity", "--witness"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_GE(j["left_collision_classes"].get<int>(), 1);
  EXPECT_LT(j["pair_collision_classes"].get<int>(), j["left_collision_classes"].get<int>());
  EXPECT_TRUE(j["left_witness"].is_array());
  EXPECT_EQ(run({"ambiguity", "--words", "7"}).code, 1);
}

class TrainedModel : public ::testing::Test {
 protected:
  TrainedModel() : dir_("model") {
    corpus_ = dir_.file("c.txt", "(S (NP (DT the) (NN cat)) (VP (VB sat)))\n(S (NP (NN dogs)) (VP (VB ran) (ADVP (RB far))))\n");
    lexicon_ = dir_.file("lex.txt", "the DH AH\ncat K AE T\nsat S AE T\n");
    config_ = dir_.file("cfg.json", R"({"epochs": 2, "d_emb": 4, "d_hid": 3, "d_ph": 2})");
  }
  testing::CliRun train(const std::string& out, const std::vector<std::string>& extra = {}) {
    std::vector<std::string> args{"train", "--corpus", corpus_, "--config", config_, "--lexicon",
                                  lexicon_, "--out", out};
    args.insert(args.end(), extra.begin(), extra.end());
    return run(args);
  }
  TempDir dir_;
  std::string corpus_, lexicon_, config_;
};

TEST_F(TrainedModel, TrainIsDeterministic) {
  const auto a = train(dir_.path("a.json"));
  const auto b = train(dir_.path("b.json"));
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(slurp(dir_.path("a.json")), slurp(dir_.path("b.json")));
  std::istringstream lines(a.out);
  int n = 0;
  for (std::string line; std::getline(lines, line); ++n) EXPECT_EQ(Json::parse(line)["epoch"], n);
  EXPECT_EQ(n, 3);
}

TEST_F(TrainedModel, FlagsOverrideConfig) {
  const auto r = train(dir_.path("m.json"), {"--epochs", "1", "--dims", "2,2,2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 2);
  EXPECT_EQ(Json::parse(slurp(dir_.path("m.json")))["dims"]["d_emb"], 2);
  EXPECT_EQ(train(dir_.path("x.json"), {"--dims", "2,2"}).code, 2);
}

TEST_F(TrainedModel, ConfigRejectsUnknownKeys) {
  config_ = dir_.file("bad.json", R"({"epochz": 2})");
  const auto r = train(dir_.path("m.json"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("epochz"), std::string::npos);
}

TEST_F(TrainedModel, EvalFeaturizeExport) {
  const auto model = dir_.path("m.json");
  ASSERT_EQ(train(model).code, 0);

  const auto e = run({"eval", "--model", model, "--corpus", corpus_});
  ASSERT_EQ(e.code, 0) << e.err;
  EXPECT_EQ(Json::parse(e.out)["words"], 6);

  const auto input = dir_.file("in.txt", kCatSat);
  const auto f = run({"featurize", "--model", model, "--input", input, "--lexicon", lexicon_});
  ASSERT_EQ(f.code, 0) << f.err;
  const Json fj = Json::parse(f.out);
  EXPECT_EQ(fj["phonemes"].size(), 8u);
  EXPECT_EQ(fj["phoneme_level"][0].size(), 2u * 3u + 2u);
  EXPECT_EQ(fj["syntactic"][0].size(), 6u);

  const auto unknown = dir_.file("dogs.txt", "(S (NP (NN dogs)) (VP (VB ran)))\n");
  EXPECT_EQ(run({"featurize", "--model", model, "--input", unknown, "--lexicon", lexicon_}).code, 1);
  EXPECT_EQ(run({"featurize", "--model", model, "--input", unknown, "--lexicon", lexicon_,
                 "--lexicon-policy", "fallback"}).code,
            0);

  const auto x = run({"export-embeddings", "--model", model});
  ASSERT_EQ(x.code, 0) << x.err;
  const Json xj = Json::parse(x.out);
  EXPECT_EQ(xj["labels"].size(), xj["pca"].size());
  EXPECT_EQ(xj["pca"][0].size(), 2u);
  double sum = 0.0;
  for (double s : xj["singular_values"]) sum += s;
  EXPECT_NEAR(xj["nuclear_norm"].get<double>(), sum, 1e-9);
  EXPECT_EQ(x.out, run({"export-embeddings", "--model", model}).out);
}

}  // namespace
}  // namespace synrep
