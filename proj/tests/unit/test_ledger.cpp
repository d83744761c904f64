#include <gtest/gtest.h>

#include "qauth/errors.hpp"
#include "qauth/ledger.hpp"
#include "qauth/rng.hpp"

using namespace qauth;
using namespace qauth::ledger;
using channel::ChannelEvent;
using channel::EbitPhase;

namespace {

ChannelEvent ev(channel::EventKind kind) { return ChannelEvent{0, Party::Alice, Party::Bob, kind, "t"}; }

const std::vector<GridPoint> kGrid = {{2, 2}, {2, 4}, {4, 2}, {4, 4}, {8, 8}, {2, 8}};
const std::vector<GridPoint> kHoldout = {{16, 16}};

ResourceTally qubits(std::size_t q) { return ResourceTally{q, 0, 0, 0}; }

}  // namespace

TEST(Tally, SumsEveryEventKind) {
  const std::vector<ChannelEvent> events = {
      ev(channel::QuantumSend{3}), ev(channel::ClassicalSend{5}), ev(channel::EbitDistribution{2, EbitPhase::Prior}),
      ev(channel::EbitDistribution{4, EbitPhase::InProtocol}), ev(channel::QuantumSend{1})};
  const auto t = tally(events);
  EXPECT_EQ(t.qubits_sent, 8u);  // 3 + 1 + one half per in-protocol pair
  EXPECT_EQ(t.classical_bits_sent, 5u);
  EXPECT_EQ(t.ebits_prior, 2u);
  EXPECT_EQ(t.ebits_in_protocol, 4u);
  EXPECT_TRUE(tally(std::vector<ChannelEvent>{}).empty());
}

TEST(Classify, CoversEveryResourceMix) {
  EXPECT_THROW(classify(ResourceTally{}), UnclassifiableError);
  EXPECT_EQ(classify(qubits(4)), ModelClass::Yao);
  EXPECT_EQ(classify(ResourceTally{0, 4, 0, 0}), ModelClass::CleveBuhrman);
  EXPECT_EQ(classify(ResourceTally{0, 4, 2, 0}), ModelClass::CleveBuhrman);
  EXPECT_EQ(classify(ResourceTally{0, 0, 2, 0}), ModelClass::CleveBuhrman);
  EXPECT_EQ(classify(ResourceTally{4, 0, 2, 0}), ModelClass::Hybrid);
  EXPECT_EQ(classify(ResourceTally{4, 0, 0, 2}), ModelClass::Hybrid);
  EXPECT_EQ(classify(ResourceTally{4, 3, 0, 0}), ModelClass::Hybrid);
  EXPECT_TRUE(classification_flagged(ResourceTally{4, 3, 0, 0}));
  EXPECT_FALSE(classification_flagged(ResourceTally{4, 3, 1, 0}));
  EXPECT_FALSE(classification_flagged(qubits(4)));
}

TEST(Classify, TotalOverRandomNonEmptyTallies) {
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    ResourceTally t{rng.below(3), rng.below(3), rng.below(3), rng.below(3)};
    if (t.empty()) {
      EXPECT_THROW(classify(t), UnclassifiableError);
    } else {
      EXPECT_NO_THROW(classify(t));
    }
  }
}

TEST(CommunicationCost, ChargesPerModel) {
  const ResourceTally t{4, 3, 2, 1};
  EXPECT_EQ(communication_cost(t, ModelClass::Yao), 4u);
  EXPECT_EQ(communication_cost(t, ModelClass::CleveBuhrman), 3u);
  EXPECT_EQ(communication_cost(t, ModelClass::Hybrid), 7u);
}

TEST(ComplexityExpr, Renders) {
  EXPECT_EQ(exact(1, 1).render(), "m + n");
  EXPECT_EQ(exact(3, 0).render(), "3n");
  EXPECT_EQ(exact(2, 0, 4).render(), "2n + 4");
  EXPECT_EQ(exact(Rational(3, 2), 0).render(), "(3/2)n");
  EXPECT_EQ(exact(0, 2).render(), "2m");
  EXPECT_EQ(exact(0, 0).render(), "0");
  EXPECT_EQ(lower_bound(2, 0).render(), "Ω(2n)");
  EXPECT_THROW(exact(-1, 0).render(), ArgumentError);
}

TEST(ComplexityExpr, Notation) {
  EXPECT_EQ(notation(ModelClass::Yao, exact(3, 0), AuthKind::Identity, false), "Q(f_I) = 3n");
  EXPECT_EQ(notation(ModelClass::CleveBuhrman, lower_bound(2, 0), AuthKind::Identity, false), "C*(f_I) = Ω(2n)");
  EXPECT_EQ(notation(ModelClass::Hybrid, exact(0, 2), AuthKind::DataOrigin, true), "Q*_E(f_D) = 2m");
}

TEST(Fit, RecoversRandomAffineCosts) {
  Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    const long long a = static_cast<long long>(rng.below(5));
    const long long b = static_cast<long long>(rng.below(5));
    const long long c = static_cast<long long>(rng.below(5));
    if (a + b + c == 0) continue;
    const auto fit = fit_complexity("rand", kGrid, kHoldout, [&](GridPoint p) {
      return qubits(static_cast<std::size_t>(a * p.n + b * p.m + c));
    });
    EXPECT_EQ(fit.expr, exact(a, b, c));
    EXPECT_EQ(fit.model, ModelClass::Yao);
    EXPECT_EQ(fit.observations.size(), kGrid.size() + kHoldout.size());
  }
}

TEST(Fit, OnlySolvesForVaryingParameters) {
  const std::vector<GridPoint> n_only = {{2, 4}, {4, 4}, {8, 4}};
  const auto fit = fit_complexity("n", n_only, {}, [](GridPoint p) { return qubits(static_cast<std::size_t>(3 * p.n)); });
  EXPECT_EQ(fit.expr, exact(3, 0));
}

TEST(Fit, RejectsNonlinearAndBadGrids) {
  auto quadratic = [](GridPoint p) { return qubits(static_cast<std::size_t>(p.n * p.n)); };
  EXPECT_THROW(fit_complexity("sq", kGrid, kHoldout, quadratic), NonlinearityError);
  // Affine on the grid but wrong on the held-out point.
  auto kinked = [](GridPoint p) { return qubits(static_cast<std::size_t>(p.n > 8 ? 100 : 2 * p.n)); };
  EXPECT_THROW(fit_complexity("kink", kGrid, kHoldout, kinked), NonlinearityError);
  const std::vector<GridPoint> two = {{2, 2}, {4, 4}};
  EXPECT_THROW(fit_complexity("few", two, {}, quadratic), ArgumentError);
  // Three points on a line cannot separate n from m.
  const std::vector<GridPoint> diagonal = {{2, 2}, {4, 4}, {8, 8}};
  EXPECT_THROW(fit_complexity("diag", diagonal, {}, [](GridPoint p) { return qubits(static_cast<std::size_t>(p.n)); }),
               ArgumentError);
  auto switching = [](GridPoint p) { return p.n > 2 ? qubits(static_cast<std::size_t>(p.n)) : ResourceTally{0, 2, 0, 0}; };
  EXPECT_THROW(fit_complexity("switch", kGrid, {}, switching), NonlinearityError);
}

TEST(Compare, TiesShareRank) {
  const std::vector<CompareEntry> e = {{"a", ModelClass::Yao, exact(3, 0)}, {"b", ModelClass::Yao, exact(3, 0)}};
  const auto c = compare(e);
  ASSERT_EQ(c.groups().size(), 1u);
  EXPECT_EQ(c.groups()[0].entries[0].rank, 1u);
  EXPECT_EQ(c.groups()[0].entries[1].rank, 1u);
  EXPECT_EQ(c.rank_between("a", "b").relation, Relation::Equivalent);
}

TEST(Compare, ConditionalNamesTheRegion) {
  const std::vector<CompareEntry> e = {{"x", ModelClass::Yao, exact(2, 0)}, {"y", ModelClass::Yao, exact(1, 1)}};
  const auto r = compare(e).rank_between("x", "y");
  EXPECT_EQ(r.relation, Relation::Conditional);
  EXPECT_EQ(r.condition, "n < m");
  EXPECT_EQ(r.at_reference, 0);
}

TEST(Compare, StrictOrderAndRanks) {
  const std::vector<CompareEntry> e = {
      {"big", ModelClass::Yao, exact(3, 0)}, {"small", ModelClass::Yao, exact(1, 0)}, {"mid", ModelClass::Yao, exact(2, 0)}};
  const auto c = compare(e);
  const auto& entries = c.groups()[0].entries;
  EXPECT_EQ(entries[0].id, "small");
  EXPECT_EQ(entries[2].id, "big");
  EXPECT_EQ(entries[2].rank, 3u);
  EXPECT_EQ(c.rank_between("small", "big").relation, Relation::Less);
  EXPECT_EQ(c.rank_between("big", "small").relation, Relation::Greater);
  EXPECT_EQ(c.groups()[0].relations.size(), 3u);
}

TEST(Compare, CrossModelAndBoundKinds) {
  const std::vector<CompareEntry> e = {{"q", ModelClass::Yao, exact(3, 0)},
                                       {"c", ModelClass::CleveBuhrman, lower_bound(2, 0)},
                                       {"c2", ModelClass::CleveBuhrman, exact(2, 0)}};
  const auto c = compare(e);
  ASSERT_EQ(c.groups().size(), 2u);
  EXPECT_EQ(c.groups()[0].model, ModelClass::Yao);
  EXPECT_THROW(c.rank_between("q", "c"), ComparisonError);
  EXPECT_THROW(c.rank_between("q", "zzz"), ArgumentError);
  const auto r = c.rank_between("c", "c2");
  EXPECT_EQ(r.relation, Relation::NotComparable);
  EXPECT_FALSE(r.at_reference.has_value());
  // Exact entries come first within a group.
  EXPECT_EQ(c.groups()[1].entries[0].id, "c2");
  EXPECT_THROW(compare(std::vector<CompareEntry>{}), ArgumentError);
}

TEST(Compare, RelationsAreAntisymmetric) {
  Rng rng(13);
  for (int i = 0; i < 500; ++i) {
    const std::vector<CompareEntry> e = {
        {"a", ModelClass::Yao, exact(Rational(rng.below(4)), Rational(rng.below(4)), Rational(rng.below(4)))},
        {"b", ModelClass::Yao, exact(Rational(rng.below(4)), Rational(rng.below(4)), Rational(rng.below(4)))}};
    const auto c = compare(e);
    const auto ab = c.rank_between("a", "b");
    const auto ba = c.rank_between("b", "a");
    ASSERT_TRUE(ab.at_reference && ba.at_reference);
    EXPECT_EQ(*ab.at_reference, -*ba.at_reference);
    switch (ab.relation) {
      case Relation::Less: EXPECT_EQ(ba.relation, Relation::Greater); break;
      case Relation::Greater: EXPECT_EQ(ba.relation, Relation::Less); break;
      default: EXPECT_EQ(ba.relation, ab.relation);
    }
  }
}
