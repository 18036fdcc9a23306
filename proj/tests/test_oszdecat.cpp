#include <gtest/gtest.h>

#include "tangle/crosscheck.hpp"

using namespace tangle;

namespace {

constexpr std::uint64_t A = 1, B = 2, C = 4;
const CrossPattern kPatterns[] = {CrossPattern::UU, CrossPattern::UD, CrossPattern::DU, CrossPattern::DD};

}  // namespace

TEST(OszLocal, UpUpSingleEntries) {
  GradedMatrix m = osz_crossing_local(CrossPattern::UU, Sign::pos, Grading::single);
  EXPECT_EQ(m.at(0, 0).pretty(), "t^(1/2)");
  EXPECT_EQ(m.at(B, B).pretty(), "-t^(-1/2)");
  EXPECT_EQ(m.at(B, A).pretty(), "1");
  EXPECT_EQ(m.at(B, C).pretty(), "1");
  EXPECT_TRUE(m.at(A, B).is_zero());
  EXPECT_EQ(m.nnz(), 12u);
}

TEST(OszLocal, UpUpMultiEntries) {
  GradedMatrix m = osz_crossing_local(CrossPattern::UU, Sign::pos, Grading::multi);
  EXPECT_EQ(m.at(0, 0).str(), "1*sigma1^(1/4)*sigma2^(1/4)");
  EXPECT_EQ(m.at(B, A).str(), "1*sigma1^(-1/4)*sigma2^(1/4)");
  EXPECT_EQ(m.at(B, C).str(), "1*sigma1^(1/4)*sigma2^(-1/4)");
}

TEST(OszLocal, NegativeCrossingInvertsTheUndoingPositive) {
  for (auto p : kPatterns)
    for (auto g : {Grading::single, Grading::multi}) {
      GradedMatrix neg = osz_crossing_local(p, Sign::neg, g);
      GradedMatrix pos = osz_crossing_local(swap_pattern(p), Sign::pos, g);
      if (g == Grading::multi) pos = osz_detail::swap_strands(pos);
      EXPECT_EQ(compose(neg, pos), GradedMatrix::identity(pos.domain(), pos.context())) << to_string(p);
    }
}

TEST(OszLocal, MultiCollapsesToSingle) {
  Report r = check_collapse_tables();
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.checks, 8u);
}

TEST(OszTerminal, RightTruncationSelectsRegions) {
  GradedMatrix lr = osz_terminal(ExtPattern::lr, Side::right);
  GradedMatrix rl = osz_terminal(ExtPattern::rl, Side::right);
  // Right truncation has regions {1, 2}; region 1 is B and region 2 is C.
  EXPECT_EQ(lr.nnz(), 1u);
  EXPECT_EQ(lr.at(0, 0b010).pretty(), "1");
  EXPECT_EQ(rl.nnz(), 2u);
  EXPECT_EQ(rl.at(0, 0b010).pretty(), "1");
  EXPECT_EQ(rl.at(0, 0b100).pretty(), "1");
}

TEST(OszTerminal, LeftTruncationSelectsRegions) {
  GradedMatrix rl = osz_terminal(ExtPattern::rl, Side::left);
  EXPECT_EQ(rl.nnz(), 1u);
  EXPECT_EQ(rl.at(0, 0b010).pretty(), "1");
  GradedMatrix lr = osz_terminal(ExtPattern::lr, Side::left);
  EXPECT_EQ(lr.nnz(), 2u);
}

TEST(OszExtremum, EdgeRestriction) {
  GradedMatrix full = osz_extremum_local(EventKind::max);
  EXPECT_EQ(full.domain().dim(), 2u);
  EXPECT_EQ(full.codomain().dim(), 8u);
  GradedMatrix left = osz_extremum_local(EventKind::max, EdgeClass::left_edge, Side::right);
  EXPECT_EQ(left.domain().dim(), 1u);
  EXPECT_EQ(left.codomain().dim(), 4u);
  EXPECT_EQ(osz_extremum_local(EventKind::max, EdgeClass::left_edge, Side::left), full);
  GradedMatrix right = osz_extremum_local(EventKind::min, EdgeClass::right_edge, Side::left);
  EXPECT_EQ(right.domain().dim(), 4u);
  EXPECT_EQ(right.codomain().dim(), 1u);
}

TEST(States, UpUpTwoStrandsRightTruncation) {
  // n = 2, i = 1: right truncation keeps regions 1 and 2; region 0 never appears.
  auto states = enumerate_crossing_states(2, 1, OrientSeq{2, 0b110}, Sign::pos, Side::right, Grading::single);
  for (const auto& s : states) {
    EXPECT_EQ(s.x & 1u, 0u);
    EXPECT_EQ(s.y & 1u, 0u);
  }
  // y in {∅, {1}, {2}, {1,2}}: S, N, S + E, N.
  EXPECT_EQ(states.size(), 5u);
  int east = 0;
  for (const auto& s : states) east += s.corner == Corner::E;
  EXPECT_EQ(east, 1);
}

TEST(States, CornerGradingsOfPositiveUpUp) {
  const auto& tab = CornerWeightTable::get();
  const auto& n = tab.at(CrossPattern::UU, Sign::pos, Corner::N, Grading::single);
  EXPECT_EQ(n.maslov, 1);
  EXPECT_EQ(n.alex.pretty(), "t^(-1/2)");
  const auto& s = tab.at(CrossPattern::UU, Sign::pos, Corner::S, Grading::single);
  EXPECT_EQ(s.maslov, 0);
  EXPECT_EQ(s.alex.pretty(), "t^(1/2)");
  EXPECT_EQ(tab.at(CrossPattern::UU, Sign::pos, Corner::E, Grading::single).alex.pretty(), "1");
}

TEST(States, SumReproducesCrossingMatrix) {
  for (int n = 2; n <= 4; ++n)
    for (std::uint64_t bits = 0; bits < (1u << n); ++bits)
      for (int i = 1; i < n; ++i)
        for (auto sign : {Sign::pos, Sign::neg})
          for (auto side : {Side::right, Side::left})
            for (auto g : {Grading::single, Grading::multi}) {
              Report r = check_state_sum(n, i, orient_from_bits(n, bits), sign, side, g);
              EXPECT_TRUE(r.pass()) << (r.details.empty() ? "" : r.details.front());
            }
}

TEST(States, RejectsBadIndex) {
  EXPECT_THROW(enumerate_crossing_states(3, 3, OrientSeq{3, 0}, Sign::pos, Side::right, Grading::single), std::out_of_range);
}

TEST(OszGlobal, CrossingPreservesIdempotentCardinality) {
  Slice s = crossing_slice(4, 2, orient_from_bits(4, 0b1010), Sign::neg);
  for (auto side : {Side::right, Side::left}) EXPECT_EQ(osz_event_global(s, side, Grading::single).cardinality_shift(), 0);
}
