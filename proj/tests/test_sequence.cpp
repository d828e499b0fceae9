#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

namespace ha = hiddenauto;
using ha::Rational;

namespace {

TEST(PrefixEqual, ComparesByOutputName) {
  auto a = support::spec_of("letters: a b\na -> ab\nb -> ba\n");
  auto b = support::spec_of("letters: b a\nb -> ba\na -> ab\nseed: a\n");
  EXPECT_TRUE(ha::prefix_equal(a, b, 1000));
  auto c = support::spec_of("letters: a b\na -> ab\nb -> aa\n");
  EXPECT_FALSE(ha::prefix_equal(a, c, 1000));
}

TEST(PrefixEqual, IstrailAgainstBerstel) {
  EXPECT_TRUE(ha::prefix_equal(support::corpus_spec("istrail"), support::corpus_spec("berstel"), 10000));
}

TEST(FactorComplexity, SuffixAutomatonAgreesWithBruteForce) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    auto r = oracle::random_rules(rng, 2 + trial % 3, 3);
    r['a'] = "a" + r['a'];  // make 'a' prolongable
    std::string x = oracle::fixed_point(r, 'a', 400);
    auto m = support::to_morphism(r);
    auto w = ha::parse_word(m.alphabet(), x);
    auto profile = ha::factor_complexity(w, 25);
    for (std::size_t n = 1; n <= 25; ++n) EXPECT_EQ(profile(n), oracle::distinct_factors(x, n)) << trial << " " << n;
  }
}

TEST(FactorComplexity, PrefixMustCoverWindow) {
  auto fib = support::corpus_spec("fibonacci");
  EXPECT_THROW(ha::factor_complexity(fib, 30, 100), ha::Error);
  EXPECT_NO_THROW(ha::factor_complexity(fib, 30, 120));
  auto p = ha::factor_complexity(fib, 30, 10000);
  EXPECT_EQ(p.validity_margin(), 9970u);
}

TEST(FactorComplexity, ThueMorseIsNotSturmian) {
  auto p = ha::factor_complexity(support::corpus_spec("thue_morse"), 10, 2000);
  // Known values of the Thue-Morse complexity: 2 4 6 10 12 16 20 22 24 28.
  EXPECT_EQ(p.counts, (std::vector<std::size_t>{2, 4, 6, 10, 12, 16, 20, 22, 24, 28}));
}

TEST(Sturmian, FibonacciWords) {
  for (auto name : {"sturmian_bc", "sturmian_cd", "fibonacci", "ababa_aba"}) {
    auto w = ha::sturmian_witness(support::corpus_spec(name), 30, 10000);
    EXPECT_TRUE(w.sturmian) << name;
  }
  EXPECT_FALSE(ha::sturmian_witness(support::corpus_spec("period_doubling"), 30, 10000).sturmian);
}

TEST(Sturmian, AbabaPrefix) {
  auto s = support::corpus_spec("ababa_aba");
  EXPECT_EQ(support::str(s.output_alphabet(), ha::iterate_fixed_point(s, 11)), "ABABAABAABA");
}

TEST(Frequencies, FibonacciConvergesToGoldenRatio) {
  auto f = ha::empirical_frequencies(support::corpus_spec("fibonacci"), 10000);
  double phi = (std::sqrt(5.0) - 1) / 2;
  EXPECT_NEAR(static_cast<double>(f[0]), phi, 1e-3);
  EXPECT_NEAR(static_cast<double>(f[1]), 1 - phi, 1e-3);
}

TEST(Frequencies, PeriodDoublingApproachesPerron) {
  auto spec = support::corpus_spec("period_doubling");
  auto perron = ha::perron_frequencies(ha::incidence(spec.morphism).matrix);
  ASSERT_TRUE(perron);
  auto err = [&](std::size_t n) {
    auto f = ha::empirical_frequencies(spec, n);
    Rational e = 0;
    for (std::size_t i = 0; i < f.size(); ++i) e = std::max(e, Rational(abs(f[i] - (*perron)[i])));
    return e;
  };
  EXPECT_LT(err(20000), err(10000));
  EXPECT_LT(err(10000), Rational(1, 1000));
}

}  // namespace
