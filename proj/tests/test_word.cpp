#include <gtest/gtest.h>

#include "support.hpp"

namespace ha = hiddenauto;
using support::char_alphabet;
using support::str;

namespace {

const oracle::Rules istrail{{'0', "12"}, {'1', "102"}, {'2', "0"}};
const oracle::Rules lysenok{{'a', "aca"}, {'b', "d"}, {'c', "b"}, {'d', "c"}};

TEST(Alphabet, RejectsDuplicatesAndEmptyTokens) {
  EXPECT_THROW(ha::Alphabet({"a", "a"}), ha::Error);
  EXPECT_THROW(ha::Alphabet({"a", ""}), ha::Error);
  EXPECT_THROW(ha::Alphabet(std::vector<std::string>{}), ha::Error);
}

TEST(Alphabet, LookupAndSingleChar) {
  ha::Alphabet a({"1", "1*", "2"});
  EXPECT_EQ(a.index("1*"), 1u);
  EXPECT_FALSE(a.find("3"));
  EXPECT_FALSE(a.single_char());
  EXPECT_TRUE(char_alphabet("abc").single_char());
}

TEST(Word, ParseAndFormatRoundTrip) {
  auto a = char_alphabet("ab");
  auto w = ha::parse_word(a, "abba");
  EXPECT_EQ(w, (ha::Word{0, 1, 1, 0}));
  EXPECT_EQ(str(a, w), "abba");
  ha::Alphabet multi({"x1", "x2"});
  EXPECT_EQ(ha::format_word(multi, ha::parse_word(multi, "x2 x1  x2")), "x2 x1 x2");
  EXPECT_THROW(ha::parse_word(a, "abc"), ha::Error);
}

TEST(Word, ParikhVector) {
  auto a = char_alphabet("abc");
  EXPECT_EQ(ha::parikh_vector(ha::parse_word(a, "aabca"), a), (std::vector<std::size_t>{3, 1, 1}));
}

TEST(Morphism, ApplyMatchesStringOracle) {
  auto m = support::to_morphism(lysenok);
  for (std::string w : {"a", "abcd", "dcba", "aca"})
    EXPECT_EQ(str(m.alphabet(), ha::apply(m, ha::parse_word(m.alphabet(), w))), oracle::apply(lysenok, w));
}

TEST(Morphism, ComposeOrder) {
  // result(l) = outer(inner(l))
  auto a = char_alphabet("ab");
  auto outer = ha::Morphism::from_strings(a, {"b", "aa"});
  auto inner = ha::Morphism::from_strings(a, {"ab", "a"});
  auto c = ha::compose(outer, inner);
  EXPECT_EQ(c.format_image(0), "baa");
  EXPECT_EQ(c.format_image(1), "b");
}

TEST(Morphism, IstrailSquareImageOfZero) {
  // sigma(sigma(0)) = sigma(12) = 102 0
  auto m = support::to_morphism(istrail);
  EXPECT_EQ(ha::compose(m, m).format_image(0), "1020");
  EXPECT_EQ(ha::compose(m, m).format_image(0), oracle::apply(istrail, oracle::apply(istrail, "0")));
}

TEST(Morphism, PowerMatchesIteration) {
  auto m = support::to_morphism(lysenok);
  auto cube = ha::power(m, 3);
  EXPECT_EQ(cube.format_image(0), "acabacadacabaca");
  EXPECT_THROW(ha::power(m, 0), ha::Error);
}

TEST(Morphism, MorphismEqualNeedsSameAlphabet) {
  auto m = support::to_morphism(lysenok);
  EXPECT_TRUE(ha::morphism_equal(m, support::to_morphism(lysenok)));
  EXPECT_THROW(ha::morphism_equal(m, support::to_morphism(istrail)), ha::Error);
}

TEST(Morphism, ErasingAndUniform) {
  auto a = char_alphabet("ab");
  EXPECT_TRUE(ha::Morphism::from_strings(a, {"ab", ""}).is_erasing());
  EXPECT_EQ(ha::Morphism::from_strings(a, {"ab", "ba"}).uniform_length(), 2u);
  EXPECT_FALSE(ha::Morphism::from_strings(a, {"ab", "b"}).uniform_length());
}

TEST(Prolongable, SeedConditions) {
  auto a = char_alphabet("abc");
  auto m = ha::Morphism::from_strings(a, {"ab", "", "c"});
  EXPECT_FALSE(ha::is_prolongable(m, 0));  // tail is mortal
  EXPECT_FALSE(ha::is_prolongable(m, 2));  // |image| = 1
  auto m2 = ha::Morphism::from_strings(a, {"abc", "", "cc"});
  EXPECT_TRUE(ha::is_prolongable(m2, 0));
  EXPECT_EQ(ha::first_prolongable(m2), 0u);
  EXPECT_EQ(ha::mortal_letters(m2), (std::vector<bool>{false, true, false}));
}

TEST(FixedPoint, IstrailPrefixMatchesOracle) {
  auto m = support::to_morphism(istrail);
  auto x = ha::fixed_point_prefix(m, 1, 500);
  EXPECT_EQ(str(m.alphabet(), x), oracle::fixed_point(istrail, '1', 500));
  EXPECT_EQ(str(m.alphabet(), ha::fixed_point_prefix(m, 1, 8)), "10212010");
}

TEST(FixedPoint, ErasingMorphismStillIterates) {
  oracle::Rules r{{'a', "abc"}, {'b', ""}, {'c', "ac"}};
  auto m = support::to_morphism(r);
  EXPECT_EQ(str(m.alphabet(), ha::fixed_point_prefix(m, 0, 40)), oracle::fixed_point(r, 'a', 40));
}

TEST(FixedPoint, CodedSpec) {
  auto spec = support::spec_of("letters: 0 1 2 3\n0 -> 12\n1 -> 13\n2 -> 20\n3 -> 21\nseed: 1\n"
                               "coding: 0->0, 1->1, 2->2, 3->0\n");
  EXPECT_EQ(str(spec.output_alphabet(), ha::iterate_fixed_point(spec, 300)), oracle::fixed_point(istrail, '1', 300));
}

TEST(Coding, ComposeAndIdentity) {
  auto a = char_alphabet("abc");
  auto b = char_alphabet("xy");
  ha::Coding inner(a, b, {0, 1, 0});
  ha::Coding outer(b, char_alphabet("z"), {0, 0});
  auto c = ha::compose(outer, inner);
  EXPECT_EQ(c.map(), (std::vector<ha::Letter>{0, 0, 0}));
  EXPECT_TRUE(ha::Coding::identity(a).is_identity());
  EXPECT_FALSE(inner.is_identity());
  EXPECT_THROW(ha::Coding(a, b, {0, 1}), ha::Error);
}

TEST(Restrict, SubAlphabetClosure) {
  auto m = support::to_morphism({{'a', "aca"}, {'b', "bc"}, {'c', "b"}});
  auto closure = ha::reachable_letters(m, 1);
  EXPECT_EQ(closure, (std::vector<ha::Letter>{1, 2}));
  auto r = ha::restrict_morphism(m, closure);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->first.format_image(0), "bc");
  EXPECT_FALSE(ha::restrict_morphism(m, {0, 2}));
}

}  // namespace
