#include <gtest/gtest.h>

#include "synrep/error.hpp"
#include "synrep/prosody.hpp"

namespace synrep {
namespace {

ErrorCode error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::InvalidArgument;
}

SyntacticFeatureSet features_1d(std::initializer_list<double> values) {
  SyntacticFeatureSet f;
  for (double v : values) f.per_word.push_back({v, -v});
  return f;
}

TEST(Upsample, RepeatsRowsInWordOrder) {
  const std::vector<std::size_t> counts{2, 1, 3};
  const Matrix m = upsample(features_1d({1, 2, 3}), counts);
  EXPECT_EQ(m, (Matrix{{1, -1}, {1, -1}, {2, -2}, {3, -3}, {3, -3}, {3, -3}}));
}

TEST(Upsample, SingleWord) {
  const std::vector<std::size_t> counts{4};
  EXPECT_EQ(upsample(features_1d({7}), counts).rows(), 4u);
}

TEST(Upsample, Errors) {
  const std::vector<std::size_t> short_counts{1, 1};
  const std::vector<std::size_t> zero{1, 0, 1};
  EXPECT_EQ(error_of([&] { upsample(features_1d({1, 2, 3}), short_counts); }), ErrorCode::CountMismatch);
  EXPECT_EQ(error_of([&] { upsample(features_1d({1, 2, 3}), zero); }), ErrorCode::ZeroCount);
}

TEST(SplitGraphemes, Utf8) {
  EXPECT_EQ(split_graphemes("cat"), (std::vector<std::string>{"c", "a", "t"}));
  EXPECT_EQ(split_graphemes("n\xc3\xa4h"), (std::vector<std::string>{"n", "\xc3\xa4", "h"}));
  EXPECT_TRUE(split_graphemes("").empty());
}

TEST(Lexicon, ParseAndPronounce) {
  const Lexicon lex = parse_lexicon("# comment\nthe DH AH\n\ncat K AE T\nsat S AE T\n");
  EXPECT_EQ(lex.size(), 3u);
  EXPECT_EQ(lex.pronounce("cat", LexiconPolicy::Strict), (std::vector<std::string>{"K", "AE", "T"}));
  EXPECT_EQ(lex.inventory().symbols(), (std::vector<std::string>{"DH", "AH", "K", "AE", "T", "S"}));
  EXPECT_EQ(error_of([&] { lex.pronounce("dog", LexiconPolicy::Strict); }), ErrorCode::UnknownWord);
  EXPECT_EQ(lex.pronounce("dog", LexiconPolicy::Fallback), (std::vector<std::string>{"d", "o", "g"}));
}

TEST(Lexicon, Errors) {
  EXPECT_EQ(error_of([] { parse_lexicon("the DH AH\nlonely\n"); }), ErrorCode::FormatError);
  EXPECT_EQ(error_of([] { parse_lexicon_policy("lenient"); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(parse_lexicon_policy("strict"), LexiconPolicy::Strict);
  EXPECT_EQ(parse_lexicon_policy("fallback"), LexiconPolicy::Fallback);
}

TEST(PhonemeInventory, InsertionOrder) {
  PhonemeInventory inv;
  EXPECT_EQ(inv.add("K"), 0u);
  EXPECT_EQ(inv.add("AE"), 1u);
  EXPECT_EQ(inv.add("K"), 0u);
  EXPECT_EQ(inv.id("AE"), 1u);
  EXPECT_FALSE(inv.find("T").has_value());
  EXPECT_EQ(error_of([&] { inv.id("T"); }), ErrorCode::UnknownPhoneme);
}

TEST(MakePhonemeLevel, CatSatWidthAndRows) {
  const Lexicon lex = parse_lexicon("the DH AH\ncat K AE T\nsat S AE T\n");
  const PhonemeInventory inv = lex.inventory();
  Matrix table(inv.size(), 16);
  for (std::size_t r = 0; r < inv.size(); ++r) table(r, 0) = static_cast<double>(r);
  SyntacticFeatureSet f;
  for (int i = 0; i < 3; ++i) f.per_word.push_back(Vector(128, static_cast<double>(i)));
  const auto out = make_phoneme_level(f, {"the", "cat", "sat"}, lex, LexiconPolicy::Strict, inv, table);
  EXPECT_EQ(out.rows.rows(), 8u);
  EXPECT_EQ(out.rows.cols(), 144u);
  EXPECT_EQ(out.counts, (std::vector<std::size_t>{2, 3, 3}));
  EXPECT_EQ(out.rows(2, 0), 1.0);                          // first phoneme of "cat"
  EXPECT_EQ(out.rows(2, 128), static_cast<double>(inv.id("K")));
  EXPECT_EQ(out.rows(7, 127), 2.0);
  EXPECT_EQ(out.rows(7, 128), static_cast<double>(inv.id("T")));
}

TEST(MakePhonemeLevel, Errors) {
  const Lexicon lex = parse_lexicon("the DH AH\n");
  const PhonemeInventory inv = lex.inventory();
  const Matrix table(inv.size(), 4);
  const auto f = features_1d({1});
  EXPECT_EQ(error_of([&] { make_phoneme_level(f, {"a", "b"}, lex, LexiconPolicy::Strict, inv, table); }),
            ErrorCode::CountMismatch);
  EXPECT_EQ(error_of([&] { make_phoneme_level(f, {"cat"}, lex, LexiconPolicy::Strict, inv, table); }),
            ErrorCode::UnknownWord);
  EXPECT_EQ(error_of([&] { make_phoneme_level(f, {"cat"}, lex, LexiconPolicy::Fallback, inv, table); }),
            ErrorCode::UnknownPhoneme);
}

TEST(OracleBreaks, Examples) {
  EXPECT_EQ(oracle_breaks(parse_tree("(S (NP (DT the) (NN cat)) (VP (VB sat)))")).breaks,
            (std::vector<int>{0, 1, 1}));
  EXPECT_EQ(oracle_breaks(parse_tree("(A (P w))")).breaks, (std::vector<int>{1}));
  EXPECT_EQ(oracle_breaks(parse_tree("(S (NP (DT a) (JJ b) (NN c) (NN d)))")).breaks,
            (std::vector<int>{0, 0, 0, 1}));
  EXPECT_EQ(oracle_breaks(parse_tree("(S (A (P a)) (B (P b) (P c)) (C (P d)))")).breaks,
            (std::vector<int>{1, 0, 1, 1}));
}

}  // namespace
}  // namespace synrep
