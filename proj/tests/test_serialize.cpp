#include <gtest/gtest.h>

#include "support.hpp"

using namespace condlab;
using condlab::fixtures::alt;
using condlab::fixtures::prof;

namespace {

const DomainSpec kDc = DomainSpec::condorcet(3, 3);

Sds perturbed_condorcet() {
  Sds::TableMap entries;
  for (const auto& p : enumerate(kDc)) entries.emplace(p, Lottery::point(3, *condorcet_winner(p)));
  entries[prof({"a>b>c", "a>b>c", "b>a>c"})] = Lottery::point(3, alt('b'));
  return Sds::table(3, 3, std::move(entries));
}

Witness round_trip(const Witness& w) { return witness_from_json(nlohmann::json::parse(witness_to_json(w).dump()), 3); }

}  // namespace

TEST(WitnessJson, ManipulationRoundTrip) {
  const auto v = check_strategyproof(perturbed_condorcet(), kDc);
  ASSERT_FALSE(v.holds);
  const auto j = witness_to_json(*v.witness);
  EXPECT_EQ(j.at("kind"), "manipulation");
  const auto& w = std::get<ManipulationWitness>(*v.witness);
  EXPECT_EQ(j.at("coalition")[0], w.coalition[0].index + 1);
  const auto back = std::get<ManipulationWitness>(round_trip(*v.witness));
  EXPECT_EQ(back.truthful, w.truthful);
  EXPECT_EQ(back.deviation, w.deviation);
  EXPECT_EQ(back.coalition, w.coalition);
  EXPECT_EQ(back.cuts, w.cuts);
  EXPECT_TRUE(replay_witness(perturbed_condorcet(), kDc, "strategyproofness", back));
  EXPECT_FALSE(replay_witness(Sds::condorcet(3, 3), kDc, "strategyproofness", back));
}

TEST(WitnessJson, OtherKindsRoundTrip) {
  const Profile p = prof({"a>b>c", "a>b>c", "a>b>c"});
  const std::vector<Witness> ws{
      ImpositionWitness{alt('c')},
      EfficiencyWitness{p, alt('c'), alt('a'), make_rational(1, 2)},
      SwapWitness{p, prof({"b>a>c", "a>b>c", "a>b>c"}), Voter{0}, alt('a'), alt('b'), alt('c'), 0, make_rational(1, 3)},
      MixtureWitness{p, alt('b'), make_rational(1, 4), make_rational(-1, 4)},
      PathWitness{4, "profile is outside the domain"}};
  for (const auto& w : ws) {
    const auto back = round_trip(w);
    ASSERT_EQ(back.index(), w.index());
    EXPECT_EQ(witness_to_json(back), witness_to_json(w));
  }
}

TEST(WitnessJson, MalformedInput) {
  EXPECT_THROW(witness_from_json(nlohmann::json{{"kind", "unknown"}}, 3), Error);
  EXPECT_THROW(witness_from_json(nlohmann::json{{"kind", "imposition"}}, 3), Error);
  EXPECT_THROW(witness_from_json(nlohmann::json{{"kind", "imposition"}, {"uncovered", "q"}}, 3), Error);
}

TEST(VerdictJson, Schema) {
  const auto v = check_strategyproof(Sds::condorcet(3, 3), kDc);
  const auto j = verdict_to_json(v);
  EXPECT_EQ(j.at("axiom"), "strategyproofness");
  EXPECT_EQ(j.at("holds"), true);
  EXPECT_TRUE(j.at("witness").is_null());
  EXPECT_EQ(j.at("profiles_checked"), 204);
  EXPECT_GT(j.at("comparisons").get<int>(), 0);
  const auto bad = verdict_to_json(check_non_imposition(perturbed_condorcet(), kDc));
  EXPECT_EQ(bad.at("holds"), true);
}

TEST(Replay, EveryFailingCheckerWitnessReplays) {
  const auto f = perturbed_condorcet();
  const EvaluatedDomain ed(f, kDc, {});
  std::vector<Verdict> verdicts{check_strategyproof(ed), check_group_strategyproof(ed, 3), check_localized(ed),
                                check_non_perverse(ed)};
  int failing = 0;
  for (const auto& v : verdicts) {
    if (v.holds) continue;
    ++failing;
    EXPECT_TRUE(replay_witness(f, kDc, v.axiom, round_trip(*v.witness))) << v.axiom;
  }
  EXPECT_GE(failing, 2);
  Sds::TableMap flat;
  for (const auto& p : enumerate(kDc)) flat.emplace(p, Lottery::uniform(3));
  const auto g = Sds::table(3, 3, flat);
  const auto ni = check_non_imposition(g, kDc);
  ASSERT_FALSE(ni.holds);
  EXPECT_TRUE(replay_witness(g, kDc, ni.axiom, round_trip(*ni.witness)));
  const auto ep = check_ex_post_efficiency(g, kDc);
  ASSERT_FALSE(ep.holds);
  EXPECT_TRUE(replay_witness(g, kDc, ep.axiom, round_trip(*ep.witness)));
}

TEST(VerdictText, MentionsWitnessFields) {
  const auto v = check_strategyproof(perturbed_condorcet(), kDc);
  const auto text = verdict_to_text(v);
  EXPECT_NE(text.find("strategyproofness: VIOLATED"), std::string::npos);
  EXPECT_NE(text.find("truthful:"), std::string::npos);
  EXPECT_NE(text.find("coalition:"), std::string::npos);
  EXPECT_EQ(verdict_to_text(check_strategyproof(Sds::condorcet(3, 3), kDc)).find("VIOLATED"), std::string::npos);
}
