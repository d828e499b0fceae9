// Randomized invariants, 500 cases each, fixed seeds.
#include <gtest/gtest.h>

#include <numeric>

#include "support.hpp"

namespace ha = hiddenauto;
using ha::BigInt;
using ha::Rational;

namespace {

constexpr int kCases = 500;

ha::IntMatrix from(const oracle::Mat& m) {
  ha::IntMatrix out(m.size(), m[0].size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[0].size(); ++j) out(i, j) = m[i][j];
  return out;
}

using oracle::anagram_rules;
using oracle::eigen_rules;
using oracle::random_word;

TEST(Property, IncidenceIsMultiplicative) {
  std::mt19937 rng(101);
  for (int i = 0; i < kCases; ++i) {
    std::size_t n = 1 + i % 5;
    auto s = oracle::random_rules(rng, n, 4), t = oracle::random_rules(rng, n, 4);
    auto ms = support::to_morphism(s), mt = support::to_morphism(t);
    auto composed = ha::incidence(ha::compose(ms, mt)).matrix;
    EXPECT_EQ(composed, ha::incidence(ms).matrix * ha::incidence(mt).matrix) << i;
    std::string letters = oracle::letters_of(n);
    EXPECT_EQ(composed, from(oracle::mul(oracle::incidence(s, letters), oracle::incidence(t, letters)))) << i;
  }
}

TEST(Property, LengthIsAHomomorphism) {
  std::mt19937 rng(202);
  for (int i = 0; i < kCases; ++i) {
    std::size_t n = 1 + i % 6;
    auto r = oracle::random_rules(rng, n, 5);
    auto m = support::to_morphism(r);
    auto w = random_word(rng, oracle::letters_of(n), 1 + i % 40);
    auto word = ha::parse_word(m.alphabet(), w);
    auto parikh = ha::parikh_vector(word, m.alphabet());
    auto lengths = m.lengths();
    std::size_t dot = std::inner_product(parikh.begin(), parikh.end(), lengths.begin(), std::size_t{0});
    EXPECT_EQ(ha::apply(m, word).size(), dot) << i;
    EXPECT_EQ(oracle::apply(r, w).size(), dot) << i;
  }
}

TEST(Property, AnagramImpliesEigenvectorWithSameQ) {
  std::mt19937 rng(303);
  int decompositions = 0;
  for (int i = 0; i < kCases; ++i) {
    std::size_t n = 2 + i % 4;
    auto r = i % 2 ? anagram_rules(rng, n) : oracle::random_rules(rng, n, 6);
    auto m = support::to_morphism(r);
    auto cert = ha::anagram_decomposition(m);
    if (!cert) continue;
    ++decompositions;
    auto q = ha::eigenvector_criterion(m);
    if (cert->degree >= 2) {
      ASSERT_TRUE(q) << i;
      EXPECT_EQ(*q, cert->degree) << i;
    } else {
      EXPECT_FALSE(q) << i;
    }
  }
  EXPECT_GE(decompositions, kCases / 2);
}

TEST(Property, GcdObstructionBlocksCriterion) {
  std::mt19937 rng(404);
  int obstructed = 0;
  for (int i = 0; i < kCases; ++i) {
    auto m = support::to_morphism(oracle::random_rules(rng, 2, 7));
    if (!ha::gcd_obstruction(m)) continue;
    ++obstructed;
    EXPECT_FALSE(ha::eigenvector_criterion(m)) << i;
  }
  EXPECT_GE(obstructed, kCases / 4);
}

TEST(Property, MinimizeIsIdempotent) {
  std::mt19937 rng(505);
  for (int i = 0; i < kCases; ++i) {
    std::size_t n = 2 + i % 6, q = 2 + i % 3;
    std::string letters = oracle::letters_of(n);
    oracle::Rules r;
    for (char c : letters) r[c] = random_word(rng, letters, q);
    r['a'][0] = 'a';
    auto m = support::to_morphism(r);
    std::uniform_int_distribution<ha::Letter> out(0, 1);
    std::vector<ha::Letter> map(n);
    for (auto& x : map) x = out(rng);
    ha::UniformRepresentation u(m, ha::Coding(m.alphabet(), support::char_alphabet("01"), map), 0);
    auto once = ha::minimize_uniform(u);
    auto twice = ha::minimize_uniform(once);
    EXPECT_EQ(twice.alphabet().size(), once.alphabet().size()) << i;
    EXPECT_TRUE(ha::iso_equivalent(once, twice)) << i;
    EXPECT_TRUE(ha::prefix_equal(u.to_spec(), once.to_spec(), 2000)) << i;
  }
}

TEST(Property, CertificateRoundTrip) {
  std::mt19937 rng(606);
  int generated = 0;
  for (int i = 0; generated < kCases && i < 20 * kCases; ++i) {
    std::size_t n = 2 + i % 4, q = 2 + i % 2;
    auto r = eigen_rules(rng, n, q);
    if (!r) continue;
    ++generated;
    ha::MorphicSpec spec{support::to_morphism(*r), 0, std::nullopt};
    ASSERT_EQ(ha::eigenvector_criterion(spec.morphism), q) << i;
    auto cert = ha::minimize_uniform(ha::reshuffle_uniformize(spec.morphism, 0, q));
    auto text = ha::to_morph(cert.to_spec(), {"round trip"});
    auto back = ha::parse_morphism(text);
    EXPECT_EQ(back.morphism.uniform_length(), q) << text;
    EXPECT_TRUE(ha::prefix_equal(spec, back, 3000)) << text;
    EXPECT_EQ(oracle::fixed_point(*r, 'a', 3000), support::str(back.output_alphabet(), ha::iterate_fixed_point(back, 3000)));
  }
  EXPECT_EQ(generated, kCases);
}

TEST(Property, BlockFlattenReproducesFixedPoint) {
  std::mt19937 rng(707);
  int induced = 0;
  for (int i = 0; i < kCases; ++i) {
    std::size_t n = 2 + i % 3;
    auto r = oracle::random_rules(rng, n, 4);
    r['a'] = "a" + r['a'];
    ha::MorphicSpec spec{support::to_morphism(r), 0, std::nullopt};
    auto bm = ha::block_morphism(spec, 2 + i % 3, 5000);
    if (!bm.result) continue;
    ++induced;
    const std::size_t k = bm.result->k;
    auto y = ha::fixed_point_prefix(bm.result->morphism, 0, 300);
    EXPECT_EQ(support::str(spec.alphabet(), ha::flatten_blocks(*bm.result, y)), oracle::fixed_point(r, 'a', 300 * k)) << i;
  }
  EXPECT_GT(induced, 0);
}

TEST(Property, CupPreservesSequence) {
  std::mt19937 rng(808);
  for (int i = 0; i < kCases; ++i) {
    std::size_t n = 2 + i % 3, q = 3 + i % 4;
    std::string letters = oracle::letters_of(n);
    oracle::Rules r;
    for (char c : letters) r[c] = random_word(rng, letters, q);
    r['a'][0] = 'a';
    auto u = ha::UniformRepresentation::from_spec({support::to_morphism(r), 0, std::nullopt});
    std::uniform_int_distribution<std::size_t> pos(1, q - 2), split(1, 2 * q - 1);
    auto out = ha::cup_transform(u, {pos(rng), split(rng)});
    auto check = ha::verify_back(out);
    EXPECT_TRUE(check.holds) << i;
    EXPECT_EQ(check.lambda, Rational(BigInt(q))) << i;
    EXPECT_EQ(support::str(out.output_alphabet(), ha::iterate_fixed_point(out, 2000)), oracle::fixed_point(r, 'a', 2000)) << i;
  }
}

}  // namespace
