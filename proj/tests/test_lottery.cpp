#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace condlab;
using condlab::fixtures::alt;

namespace {

Lottery lot(std::initializer_list<const char*> probs) {
  std::vector<Rational> v;
  for (const char* p : probs) v.push_back(parse_rational(p));
  return Lottery(std::move(v));
}

// Coarse weights so that dominance between random draws is common.
Lottery grid_lottery(std::mt19937_64& rng, int m) {
  std::uniform_int_distribution<int> w(0, 2);
  while (true) {
    std::vector<long> raw(m);
    long total = 0;
    for (auto& x : raw) total += (x = w(rng));
    if (total == 0) continue;
    std::vector<Rational> probs;
    for (long x : raw) probs.push_back(make_rational(x, total));
    return Lottery(std::move(probs));
  }
}

}  // namespace

TEST(Lottery, RejectsInvalidDistributions) {
  EXPECT_THROW(lot({"1/2", "1/3"}), Error);
  EXPECT_THROW(lot({"3/2", "-1/2"}), Error);
  EXPECT_NO_THROW(lot({"1/2", "1/3", "1/6"}));
}

TEST(Mass, Examples) {
  EXPECT_EQ(mass(Lottery::point(3, alt('a')), fixtures::set_of("a")), 1);
  EXPECT_EQ(mass(Lottery::uniform(3), fixtures::set_of("ac")), make_rational(2, 3));
  EXPECT_EQ(mass(lot({"1/5", "3/5", "1/5"}), AltSet{}), 0);
  EXPECT_EQ(mass(lot({"1/5", "3/5", "1/5"}), AltSet::all(3)), 1);
}

TEST(SdCompare, Examples) {
  const auto abc = parse_relation("a>b>c");
  const Lottery q = lot({"1/4", "1/2", "1/4"});
  EXPECT_EQ(sd_compare(abc, q, q).relation, SdRelation::Equivalent);
  EXPECT_EQ(sd_compare(abc, Lottery::point(3, alt('a')), q).relation, SdRelation::Dominates);
  EXPECT_EQ(sd_compare(abc, q, Lottery::point(3, alt('a'))).relation, SdRelation::Dominated);

  const auto v = sd_compare(abc, lot({"1/2", "0", "1/2"}), lot({"0", "1", "0"}));
  EXPECT_EQ(v.relation, SdRelation::Incomparable);
  EXPECT_EQ(v.cut_against_q, alt('a'));
  EXPECT_EQ(v.cut_against_p, alt('b'));
}

TEST(SdCompare, ReflexiveAndTransitive) {
  std::mt19937_64 rng(5);
  int chains = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const auto pref = PreferenceRelation::from_lex_rank(3, trial % 6);
    const Lottery p = grid_lottery(rng, 3);
    const Lottery q = grid_lottery(rng, 3);
    const Lottery r = grid_lottery(rng, 3);
    ASSERT_EQ(sd_compare(pref, p, p).relation, SdRelation::Equivalent);
    if (sd_compare(pref, p, q).p_weakly_dominates() && sd_compare(pref, q, r).p_weakly_dominates()) {
      ++chains;
      ASSERT_TRUE(sd_compare(pref, p, r).p_weakly_dominates());
    }
  }
  EXPECT_GT(chains, 50);
}

TEST(SdCompare, DominanceImpliesHigherExpectedUtility) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> step(1, 20);
  int checked = 0;
  for (int trial = 0; trial < 2000 && checked < 100; ++trial) {
    const int m = 3 + trial % 3;
    const auto pref = PreferenceRelation::from_lex_rank(m, trial % factorial(m));
    const Lottery p = grid_lottery(rng, m);
    const Lottery q = grid_lottery(rng, m);
    if (sd_compare(pref, p, q).relation != SdRelation::Dominates) continue;
    ++checked;
    for (int u_trial = 0; u_trial < 100; ++u_trial) {
      std::vector<Rational> u(m);
      Rational level = 0;
      for (int pos = m - 1; pos >= 0; --pos) {
        level += make_rational(step(rng), step(rng));
        u[pref.at(pos).index] = level;
      }
      Rational eu_p = 0;
      Rational eu_q = 0;
      for (int x = 0; x < m; ++x) {
        eu_p += p[Alternative{x}] * u[x];
        eu_q += q[Alternative{x}] * u[x];
      }
      ASSERT_GE(eu_p, eu_q);
    }
  }
  EXPECT_EQ(checked, 100);
}

TEST(Mix, Examples) {
  const Lottery p = lot({"1/6", "1/3", "1/2"});
  EXPECT_EQ(mix({{1, p}}), p);
  EXPECT_EQ(mix({{make_rational(1, 2), Lottery::point(3, alt('a'))}, {make_rational(1, 2), Lottery::point(3, alt('b'))}}),
            lot({"1/2", "1/2", "0"}));
  EXPECT_EQ(mix({{make_rational(1, 3), p}, {make_rational(1, 3), p}, {make_rational(1, 3), p}}), p);
}

TEST(Mix, RejectsBadWeights) {
  const Lottery p = Lottery::uniform(3);
  EXPECT_THROW(mix({{make_rational(1, 2), p}}), Error);
  EXPECT_THROW(mix({{make_rational(3, 2), p}, {make_rational(-1, 2), p}}), Error);
}

TEST(Mix, OutputIsExactLottery) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const Lottery p = fixtures::random_lottery(rng, 4);
    const Lottery q = fixtures::random_lottery(rng, 4);
    const Rational w = make_rational(trial % 7, 7);
    const Lottery r = mix({{w, p}, {1 - w, q}});
    Rational total = 0;
    for (int x = 0; x < 4; ++x) {
      ASSERT_GE(r[Alternative{x}], 0);
      ASSERT_EQ(r[Alternative{x}], w * p[Alternative{x}] + (1 - w) * q[Alternative{x}]);
      total += r[Alternative{x}];
    }
    ASSERT_EQ(total, 1);
  }
}

TEST(AffineCombine, SignedCounterexampleFormulaAtFourVoters) {
  // Dictators of {a>b>c, a>b>c, b>a>c, c>a>b} and the Condorcet winner a.
  const Rational third = make_rational(1, 3);
  const Lottery r = affine_combine({{third, Lottery::point(3, alt('a'))},
                                    {third, Lottery::point(3, alt('a'))},
                                    {third, Lottery::point(3, alt('b'))},
                                    {third, Lottery::point(3, alt('c'))},
                                    {-third, Lottery::point(3, alt('a'))}});
  EXPECT_EQ(r, Lottery::uniform(3));
}

TEST(AffineCombine, AgreesWithMixAndCancels) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const Lottery p = fixtures::random_lottery(rng, 3);
    const Lottery q = fixtures::random_lottery(rng, 3);
    const Rational w = make_rational(trial % 5, 5);
    ASSERT_EQ(affine_combine({{w, p}, {1 - w, q}}), mix({{w, p}, {1 - w, q}}));
  }
  const Lottery a = Lottery::point(3, alt('a'));
  EXPECT_EQ(affine_combine({{-1, a}, {2, a}}), a);
}

TEST(AffineCombine, NegativeResultNamesAlternative) {
  try {
    affine_combine({{2, Lottery::point(3, alt('a'))}, {-1, Lottery::point(3, alt('b'))}});
    FAIL() << "expected a negative probability";
  } catch (const NegativeProbabilityError& e) {
    EXPECT_EQ(e.alternative(), alt('b'));
    EXPECT_EQ(e.value(), -1);
    EXPECT_EQ(e.code(), ErrorCode::NegativeProbability);
  }
}

TEST(LotteryJson, RoundTrip) {
  const Lottery p = lot({"1/3", "0", "2/3"});
  const auto j = lottery_to_json(p);
  EXPECT_EQ(j.at("a"), "1/3");
  EXPECT_EQ(j.at("c"), "2/3");
  EXPECT_EQ(lottery_from_json(j, 3), p);
  EXPECT_THROW(lottery_from_json(nlohmann::json{{"a", "1/2"}}, 3), Error);
}
