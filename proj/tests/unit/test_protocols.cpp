#include <gtest/gtest.h>

#include <algorithm>

#include "qauth/errors.hpp"
#include "qauth/protocols.hpp"

using namespace qauth;
using namespace qauth::protocols;
using ledger::BoundKind;
using ledger::ModelClass;

namespace {

channel::Session open(std::uint64_t seed) { return channel::Session::open({Party::Alice, Party::Bob}, seed); }

const std::vector<std::string> kSimulable = {"curty_santos", "li_zhang", "kanamori", "zeng_guo", "li_barnum",
                                             "zhang_li_guo"};

}  // namespace

TEST(Registry, HoldsTenEntriesSixSimulable) {
  EXPECT_EQ(registry().size(), 10u);
  EXPECT_EQ(std::count_if(registry().begin(), registry().end(), [](const auto& s) { return s.simulable; }), 6);
  for (const auto& id : kSimulable) EXPECT_TRUE(find(id).simulable) << id;
  EXPECT_EQ(find("barnum_catalysis").declared_complexity.bound, BoundKind::LowerBound);
  EXPECT_EQ(find("yang_goppa").declared_model, ModelClass::Yao);
  EXPECT_EQ(find("zeng_zhang").declared_complexity, ledger::lower_bound(4, 0));
  EXPECT_EQ(find("barnum_purity").declared_complexity, ledger::exact(1, 1));
  EXPECT_THROW(find("nope"), UnknownProtocolError);
}

TEST(Registry, DataOriginEntriesComeFirst) {
  bool seen_identity = false;
  for (const auto& s : registry()) {
    if (s.kind == ledger::AuthKind::Identity) seen_identity = true;
    else EXPECT_FALSE(seen_identity) << s.id;
  }
}

TEST(Keys, ValidateRanges) {
  EXPECT_NO_THROW(validate(AngleKey{{0.0, 3.0}}));
  EXPECT_THROW(validate(AngleKey{{3.2}}), ArgumentError);
  EXPECT_THROW(validate(Theta{-0.1}), ArgumentError);
  EXPECT_THROW(validate(BitKey{{0, 2}}), ArgumentError);
  EXPECT_THROW(quantized_angle(kAngleLevels), ArgumentError);
  Rng rng(3);
  for (double a : random_angle_key(100, rng).angles) {
    EXPECT_GE(a, 0.0);
    EXPECT_LT(a, std::numbers::pi);
  }
}

TEST(Kanamori, HonestRunCounts) {
  const auto r = run("kanamori", Params{.n = 4}, 1);
  EXPECT_TRUE(r.outcome.accepted);
  EXPECT_FALSE(r.outcome.eavesdrop_detected);
  EXPECT_EQ(r.tally, (ledger::ResourceTally{12, 0, 0, 0}));
  ASSERT_TRUE(r.outcome.session_key.has_value());
  EXPECT_EQ(r.outcome.session_key->size(), 4u);
  EXPECT_EQ(r.events.size(), 3u);
}

TEST(Kanamori, SmallestCaseAndKeyMismatch) {
  auto s = open(2);
  EXPECT_TRUE(run_kanamori(s, 1, AngleKey{{0.0}}).accepted);
  auto t = open(2);
  EXPECT_THROW(run_kanamori(t, 2, AngleKey{{0.0}}), ConfigurationError);
}

TEST(ZhangLiGuo, CountsAndBudget) {
  const auto r = run("zhang_li_guo", Params{.n = 8, .k = 8}, 1);
  EXPECT_TRUE(r.outcome.accepted);
  EXPECT_EQ(r.tally.qubits_sent, 16u);
  EXPECT_EQ(r.tally.classical_bits_sent, 0u);
  EXPECT_EQ(ledger::classify(r.tally), ModelClass::Hybrid);
  auto s = open(1);
  EXPECT_TRUE(run_zhang_li_guo(s, 1, 1, Theta{0.0}).accepted);
  auto t = open(1);
  EXPECT_THROW(run_zhang_li_guo(t, 3, 2, Theta{0.5}), BudgetError);
}

TEST(ZhangLiGuo, PairsSurviveTheRun) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t k = 1 + rng.below(4);
    const std::size_t n = 1 + rng.below(k);
    auto s = open(100 + trial);
    ASSERT_TRUE(run_zhang_li_guo(s, n, k, Theta{random_angle(rng)}).accepted);
    // The 2k prior pairs were allocated first: handles (2i, 2i + 1).
    for (std::size_t i = 0; i < 2 * k; ++i) {
      const Handle pair[2] = {2 * i, 2 * i + 1};
      const auto state = s.qubits().isolate(pair);
      ASSERT_TRUE(state.has_value()) << "pair " << i;
      EXPECT_NEAR(qsim::fidelity(*state, qsim::bell_state(qsim::BellKind::PhiPlus)), 1.0, 1e-10);
    }
  }
}

TEST(LiBarnum, HonestCounts) {
  const auto r = run("li_barnum", Params{.n = 4}, 1);
  EXPECT_TRUE(r.outcome.accepted);
  EXPECT_EQ(r.tally.qubits_sent, 8u);
  EXPECT_EQ(r.tally.ebits_prior, 4u);
  EXPECT_TRUE(run("li_barnum", Params{.n = 1}, 1).outcome.accepted);
}

TEST(LiZhang, RecoversExactMessage) {
  const Bits msg = {1, 0, 1, 1, 0, 0, 1, 0};
  const auto r = run("li_zhang", Params{.m = 8, .message = msg}, 1);
  EXPECT_EQ(r.outcome.recovered_message, msg);
  EXPECT_EQ(r.tally.qubits_sent, 16u);
  EXPECT_TRUE(r.outcome.success());
  EXPECT_EQ(run("li_zhang", Params{.m = 1, .message = Bits{0}}, 1).outcome.recovered_message, Bits{0});
  EXPECT_THROW(run("li_zhang", Params{.m = 2}, 1, adversary::make_impersonation()), UnsupportedError);
}

TEST(CurtySantos, HonestCounts) {
  const auto r = run("curty_santos", Params{.m = 8}, 1);
  EXPECT_TRUE(r.outcome.success());
  EXPECT_EQ(r.tally.qubits_sent, 16u);
  EXPECT_EQ(ledger::classify(r.tally), ModelClass::Hybrid);
  EXPECT_EQ(run("curty_santos", Params{.m = 1, .message = Bits{1}}, 1).outcome.recovered_message, Bits{1});
}

TEST(ZengGuo, ClassicalOnly) {
  const auto r = run("zeng_guo", Params{.n = 8, .s = 4}, 1);
  EXPECT_TRUE(r.outcome.accepted);
  EXPECT_EQ(r.tally.qubits_sent, 0u);
  EXPECT_EQ(r.tally.classical_bits_sent, 20u);
  EXPECT_EQ(ledger::classify(r.tally), ModelClass::CleveBuhrman);
  const auto small = run("zeng_guo", Params{.n = 1, .s = 0}, 1);
  EXPECT_TRUE(small.outcome.accepted);
  EXPECT_EQ(small.tally.classical_bits_sent, 2u);
  auto s = open(1);
  EXPECT_THROW(run_zeng_guo(s, 4, 0, BitKey{{1, 0}}), ConfigurationError);
}

TEST(Run, AccountingOnlyIdsAreUnsupported) {
  EXPECT_THROW(run("barnum_purity", Params{}, 0), UnsupportedError);
  EXPECT_THROW(run("does_not_exist", Params{}, 0), UnknownProtocolError);
}

TEST(Run, HonestCompletenessSample) {
  for (const auto& id : kSimulable)
    for (std::size_t n : {1u, 2u, 4u, 8u})
      for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const auto r = run(id, Params{.n = n, .m = n, .s = n}, seed);
        ASSERT_TRUE(r.outcome.success()) << id << " n=" << n << " seed=" << seed;
        if (id != "zeng_guo") {
          EXPECT_EQ(r.tally.classical_bits_sent, 0u) << id;
        }
      }
}

TEST(Run, SameSeedSameTranscript) {
  for (const auto& id : kSimulable) {
    const auto a = run(id, Params{}, 77, adversary::make_intercept(adversary::UniformRandomBasis{}));
    const auto b = run(id, Params{}, 77, adversary::make_intercept(adversary::UniformRandomBasis{}));
    EXPECT_EQ(a.outcome.accepted, b.outcome.accepted);
    EXPECT_EQ(a.outcome.recovered_message, b.outcome.recovered_message);
    EXPECT_EQ(a.eve_log.size(), b.eve_log.size());
    EXPECT_EQ(a.tally, b.tally);
  }
}

TEST(Analyze, FitsMatchDeclarations) {
  for (const auto& id : kSimulable) {
    const auto a = analyze(id);
    ASSERT_TRUE(a.fit.has_value()) << id;
    EXPECT_TRUE(*a.agreement) << id << " fitted " << a.fit->expr.render();
    EXPECT_TRUE(*a.model_agreement) << id;
  }
  const auto z = analyze("zeng_guo", Params{.s = 4});
  EXPECT_EQ(z.fit->expr, ledger::exact(2, 0, 4));
  EXPECT_TRUE(*z.agreement);
  const auto acct = analyze("barnum_catalysis");
  EXPECT_FALSE(acct.fit.has_value());
  EXPECT_FALSE(acct.agreement.has_value());
}

TEST(Analyze, AgreementRule) {
  EXPECT_TRUE(agrees(ledger::exact(2, 0), ledger::exact(2, 0)));
  EXPECT_FALSE(agrees(ledger::exact(2, 0, 1), ledger::exact(2, 0)));
  EXPECT_TRUE(agrees(ledger::exact(2, 0, 4), ledger::lower_bound(2, 0)));
  EXPECT_FALSE(agrees(ledger::exact(3, 0), ledger::lower_bound(2, 0)));
}
