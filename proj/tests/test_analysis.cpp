#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace condlab;
using condlab::fixtures::alt;
using condlab::fixtures::prof;

namespace {

const DomainSpec kDc = DomainSpec::condorcet(3, 3);

Rational r(long p, long q = 1) { return make_rational(p, q); }

CoefficientVector coeffs(Rational c, std::vector<Rational> g) { return CoefficientVector{std::move(c), std::move(g)}; }

Sds cond_with(const Rational& gc, int dictator, const Rational& weight) {
  std::vector<Rational> g(3, Rational(0));
  g[dictator] = weight;
  return coefficient_mixture(gc, g, Sds::condorcet(3, 3));
}

Sds perturbed_condorcet() {
  Sds::TableMap entries;
  for (const auto& p : enumerate(kDc)) entries.emplace(p, Lottery::point(3, *condorcet_winner(p)));
  entries[prof({"a>b>c", "a>b>c", "b>a>c"})] = Lottery::point(3, alt('b'));
  return Sds::table(3, 3, std::move(entries));
}

std::vector<Sds> catalog() {
  std::vector<Sds> out{Sds::condorcet(3, 3)};
  for (int i = 0; i < 3; ++i) out.push_back(Sds::dictatorship(3, 3, Voter{i}));
  out.push_back(Sds::uniform_random_dictatorship(3, 3));
  out.push_back(Sds::random_dictatorship(3, 3, {r(1, 2), r(1, 2), 0}));
  out.push_back(Sds::random_dictatorship(3, 3, {r(1, 6), r(1, 3), r(1, 2)}));
  out.push_back(Sds::plurality(3, 3));
  out.push_back(Sds::borda(3, 3));
  out.push_back(perturbed_condorcet());
  out.push_back(cond_with(r(1, 4), 0, r(3, 4)));
  return out;
}

// All lotteries over three alternatives with denominator 12.
std::vector<Lottery> lottery_grid() {
  std::vector<Lottery> out;
  for (int a = 0; a <= 12; ++a) {
    for (int b = 0; a + b <= 12; ++b) out.emplace_back(std::vector<Rational>{r(a, 12), r(b, 12), r(12 - a - b, 12)});
  }
  return out;
}

}  // namespace

TEST(ProbeProfile, Shape) {
  EXPECT_EQ(probe_profile(3, 3, alt('a'), Voter{1}), prof({"a>b>c", "c>a>b", "a>b>c"}));
  EXPECT_EQ(probe_profile(3, 4, alt('b'), Voter{0}), prof({"c>b>a>d", "b>a>c>d", "b>a>c>d"}));
  for (int x = 0; x < 4; ++x) {
    for (int i = 0; i < 3; ++i) EXPECT_EQ(condorcet_winner(probe_profile(3, 4, Alternative{x}, Voter{i})), Alternative{x});
  }
  EXPECT_THROW(probe_profile(3, 2, alt('a'), Voter{0}), Error);
}

TEST(ProbeCoefficients, Examples) {
  EXPECT_EQ(probe_coefficients(Sds::condorcet(3, 3), alt('a')), coeffs(1, {0, 0, 0}));
  EXPECT_EQ(probe_coefficients(cond_with(r(1, 4), 0, r(3, 4)), alt('a')), coeffs(r(1, 4), {r(3, 4), 0, 0}));
  EXPECT_EQ(probe_coefficients(counterexample_sds(4, 3), alt('a')), coeffs(r(-1, 3), {r(1, 3), r(1, 3), r(1, 3), r(1, 3)}));
  EXPECT_EQ(probe_coefficients(Sds::random_dictatorship(3, 3, {r(1, 6), r(1, 3), r(1, 2)}), alt('c')),
            coeffs(0, {r(1, 6), r(1, 3), r(1, 2)}));
}

TEST(VerifyMixture, Examples) {
  const auto cond = Sds::condorcet(3, 3);
  EXPECT_TRUE(verify_mixture(cond, kDc, coeffs(1, {0, 0, 0}), cond).holds);
  const auto f = cond_with(r(1, 4), 0, r(3, 4));
  EXPECT_TRUE(verify_mixture(f, kDc, probe_coefficients(f, alt('a')), cond).holds);
  const auto dc4 = DomainSpec::condorcet(4, 3);
  EXPECT_TRUE(verify_mixture(counterexample_sds(4, 3), dc4, coeffs(r(-1, 3), {r(1, 3), r(1, 3), r(1, 3), r(1, 3)}),
                             Sds::condorcet(4, 3))
                  .holds);
}

TEST(VerifyMixture, WrongCoefficientsGiveReplayableWitness) {
  const auto f = cond_with(r(1, 4), 0, r(3, 4));
  const auto v = verify_mixture(f, kDc, coeffs(r(1, 2), {r(1, 2), 0, 0}), Sds::condorcet(3, 3));
  ASSERT_FALSE(v.holds);
  const auto& w = std::get<MixtureWitness>(*v.witness);
  EXPECT_EQ(evaluate(f, w.profile)[w.alternative], w.lhs);
  EXPECT_NE(w.lhs, w.rhs);
  EXPECT_THROW(verify_mixture(f, kDc, coeffs(1, {0, 0}), Sds::condorcet(3, 3)), Error);
}

TEST(ProbeCoefficients, AnchorIndependentForStrategyproofNonImposingRules) {
  int qualifying = 0;
  for (const auto& f : catalog()) {
    const EvaluatedDomain ed(f, kDc, {});
    if (!(check_strategyproof(ed).holds && check_non_imposition(ed).holds)) continue;
    ++qualifying;
    const auto first = probe_coefficients(f, alt('a'));
    EXPECT_EQ(probe_coefficients(f, alt('b')), first) << f.describe();
    EXPECT_EQ(probe_coefficients(f, alt('c')), first) << f.describe();
  }
  EXPECT_EQ(qualifying, 8);
}

TEST(ProbeCoefficients, CharacterizationOnCondorcetDomain) {
  for (const auto& f : catalog()) {
    const EvaluatedDomain ed(f, kDc, {});
    const bool axioms = check_strategyproof(ed).holds && check_non_imposition(ed).holds;
    const auto cv = probe_coefficients(f, alt('a'));
    const bool representation = cv.nonnegative() && verify_mixture(f, kDc, cv, Sds::condorcet(3, 3)).holds;
    EXPECT_EQ(axioms, representation) << f.describe();
  }
}

TEST(ProbeCoefficients, CharacterizationOnTieBreakingDomain) {
  const TieBreaker tb{parse_relation("b>c>a")};
  const auto dom = DomainSpec::tie_breaking(4, tb);
  const auto ref = Sds::tie_breaking_condorcet(4, tb);
  std::vector<Sds> rules{ref, Sds::uniform_random_dictatorship(4, 3),
                         coefficient_mixture(r(1, 2), {r(1, 4), 0, r(1, 4), 0}, ref), Sds::plurality(4, 3),
                         Sds::borda(4, 3)};
  for (const auto& f : rules) {
    const EvaluatedDomain ed(f, dom, {});
    const bool axioms = check_strategyproof(ed).holds && check_non_imposition(ed).holds;
    const auto cv = probe_coefficients(f, alt('a'));
    const bool representation = cv.nonnegative() && verify_mixture(f, dom, cv, ref).holds;
    EXPECT_EQ(axioms, representation) << f.describe();
    if (axioms) {
      for (int x = 1; x < 3; ++x) EXPECT_EQ(probe_coefficients(f, Alternative{x}), cv);
    }
  }
}

TEST(Gamma, Examples) {
  EXPECT_EQ(gamma_random_dictatorial(Sds::condorcet(3, 3), kDc), 0);
  EXPECT_EQ(gamma_random_dictatorial(Sds::uniform_random_dictatorship(3, 3), kDc), 1);
  EXPECT_EQ(gamma_random_dictatorial(Sds::random_dictatorship(3, 3, {r(1, 6), r(1, 3), r(1, 2)}), kDc), 1);
  EXPECT_EQ(gamma_random_dictatorial(cond_with(r(1, 2), 0, r(1, 2)), kDc), r(1, 2));
}

TEST(Gamma, MatchesProbedDictatorWeightOnGrid) {
  for (const auto& cv : coefficient_grid(3, r(1, 2))) {
    const auto f = coefficient_mixture(cv.gamma_c, cv.gamma, Sds::condorcet(3, 3));
    const auto probed = probe_coefficients(f, alt('a'));
    ASSERT_EQ(probed, cv);
    EXPECT_EQ(gamma_random_dictatorial(f, kDc), 1 - probed.gamma_c) << describe_coefficients(cv);
  }
}

TEST(Gamma, RandomDictatorshipMixtures) {
  const auto rd = Sds::uniform_random_dictatorship(3, 3);
  for (const Rational& lambda : {r(0), r(1, 4), r(1, 2), r(3, 4), r(1)}) {
    std::vector<WeightedSds> parts;
    if (lambda != 0) parts.push_back(weighted(lambda, rd));
    if (lambda != 1) parts.push_back(weighted(1 - lambda, Sds::condorcet(3, 3)));
    EXPECT_EQ(gamma_random_dictatorial(Sds::mixture(parts), kDc), lambda);
  }
}

TEST(Gamma, ManipulableRuleIsRejected) {
  try {
    gamma_random_dictatorial(perturbed_condorcet(), kDc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InfeasibleModel);
  }
}

TEST(Extension, RandomDictatorshipExtendsToCycle) {
  const auto rd = Sds::uniform_random_dictatorship(3, 3);
  const Profile star = r_star_profile(3, 3);
  const auto res = extension_feasibility(rd, kDc, {star});
  ASSERT_TRUE(res.feasible);
  EXPECT_TRUE(verify_extension_assignment(rd, kDc, res.witness).holds);
  EXPECT_TRUE(verify_extension_assignment(rd, kDc, {{star, Lottery::uniform(3)}}).holds);
  // The same completion the rule itself gives on the full domain.
  EXPECT_EQ(evaluate(rd, star), Lottery::uniform(3));
}

TEST(Extension, CondorcetCannotBeExtendedToCycle) {
  const auto cond = Sds::condorcet(3, 3);
  const Profile star = r_star_profile(3, 3);
  const auto res = extension_feasibility(cond, kDc, {star});
  ASSERT_FALSE(res.feasible);
  ASSERT_FALSE(res.conflict.empty());
  LinearProgram core(3);
  for (const auto& row : res.conflict) core.add_leq(row.terms, row.bound, row.label);
  EXPECT_EQ(core.find_feasible().status, LpStatus::Infeasible);
  // Exhaustive lottery scan as an independent check.
  for (const auto& p : lottery_grid()) ASSERT_FALSE(verify_extension_assignment(cond, kDc, {{star, p}}).holds);
}

TEST(Extension, FeasibilityAgreesWithLotteryScanAndFourierMotzkin) {
  const Profile star = r_star_profile(3, 3);
  for (const auto& f : {Sds::uniform_random_dictatorship(3, 3), cond_with(0, 1, 1), cond_with(r(1, 4), 2, r(3, 4)),
                        Sds::random_dictatorship(3, 3, {r(1, 2), r(1, 2), 0})}) {
    const auto res = extension_feasibility(f, kDc, {star});
    bool any = false;
    for (const auto& p : lottery_grid()) any = any || verify_extension_assignment(f, kDc, {{star, p}}).holds;
    if (any) {
      EXPECT_TRUE(res.feasible) << f.describe();
    }
    if (!res.feasible) {
      EXPECT_FALSE(any) << f.describe();
    }
    const auto model = detail::build_extension_model(f, kDc, {star});
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (const auto& row : model.lp.constraints()) {
      std::vector<Rational> dense(3, Rational(0));
      for (const auto& [var, c] : row.terms) dense[var] = c;
      a.push_back(dense);
      b.push_back(row.bound);
    }
    for (int x = 0; x < 3; ++x) {
      std::vector<Rational> dense(3, Rational(0));
      dense[x] = -1;
      a.push_back(dense);
      b.push_back(0);
    }
    EXPECT_EQ(fourier_motzkin_feasible(a, b), res.feasible) << f.describe();
  }
}

TEST(Extension, IsolatedProfileAcceptsEveryLottery) {
  // Base: unanimous profiles only. Profiles where two voters differ from any
  // unanimous profile cannot be reached by one voter.
  std::vector<Profile> unanimous;
  for (std::uint64_t k = 0; k < 6; ++k) {
    const auto rel = PreferenceRelation::from_lex_rank(3, k);
    unanimous.push_back(Profile(std::vector<PreferenceRelation>(3, rel)));
  }
  const auto base = DomainSpec::explicit_set(3, 3, unanimous);
  const auto isolated = isolated_profiles(base);
  ASSERT_FALSE(isolated.empty());
  for (const auto& e : isolated) {
    for (const auto& u : unanimous) {
      int diff = 0;
      for (int i = 0; i < 3; ++i) diff += e[i] != u[i] ? 1 : 0;
      ASSERT_GE(diff, 2);
    }
  }
  const Profile e = isolated.front();
  const auto dict = Sds::table(3, 3, [&] {
    Sds::TableMap t;
    for (const auto& u : unanimous) t.emplace(u, Lottery::point(3, u[0].top()));
    return t;
  }());
  const auto res = extension_feasibility(dict, base, {e});
  ASSERT_TRUE(res.feasible);
  for (int x = 0; x < 3; ++x) {
    EXPECT_TRUE(verify_extension_assignment(dict, base, {{e, Lottery::point(3, Alternative{x})}}).holds);
  }
}

TEST(Extension, CondorcetDomainHasNoIsolatedProfilesAtThreeVoters) {
  EXPECT_TRUE(isolated_profiles(kDc).empty());
  EXPECT_TRUE(isolated_profiles(DomainSpec::condorcet(3, 4)).empty());
}

TEST(Extension, NonImpositionOnlyShrinksTheFeasibleSet) {
  // Base rule never elects c with certainty; an extra profile has to.
  Sds::TableMap t;
  const Profile ab = prof({"a>b>c", "a>b>c", "a>b>c"});
  const Profile ba = prof({"b>a>c", "b>a>c", "b>a>c"});
  t.emplace(ab, Lottery::point(3, alt('a')));
  t.emplace(ba, Lottery::point(3, alt('b')));
  const auto base_sds = Sds::table(3, 3, t);
  const auto base = DomainSpec::explicit_set(3, 3, {ab, ba});
  const std::vector<Profile> extras{prof({"c>a>b", "a>b>c", "a>b>c"}), prof({"c>b>a", "c>a>b", "b>a>c"})};
  const auto free = extension_feasibility(base_sds, base, extras, false);
  const auto strict = extension_feasibility(base_sds, base, extras, true);
  ASSERT_TRUE(free.feasible);
  if (strict.feasible) {
    bool elects_c = false;
    for (const auto& [p, l] : strict.witness) elects_c = elects_c || l[alt('c')] == 1;
    EXPECT_TRUE(elects_c);
    EXPECT_TRUE(verify_extension_assignment(base_sds, base, strict.witness).holds);
  }
  const Profile star = r_star_profile(3, 3);
  EXPECT_FALSE(extension_feasibility(Sds::condorcet(3, 3), kDc, {star}, true).feasible);
}

TEST(Extension, RejectsExtrasInsideBase) {
  EXPECT_THROW(extension_feasibility(Sds::condorcet(3, 3), kDc, {prof({"a>b>c", "a>b>c", "a>b>c"})}), Error);
}

TEST(CoefficientJson, RoundTrip) {
  const auto cv = coeffs(r(-1, 3), {r(1, 3), r(1, 3), r(1, 3), r(1, 3)});
  const auto j = coefficients_to_json(cv);
  EXPECT_EQ(j.at("gamma_C"), "-1/3");
  EXPECT_EQ(coefficients_from_json(j), cv);
  EXPECT_THROW(coefficients_from_json(nlohmann::json{{"gamma", nlohmann::json::array()}}), Error);
}
