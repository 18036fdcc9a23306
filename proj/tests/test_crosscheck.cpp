#include <gtest/gtest.h>

#include "tangle/crosscheck.hpp"

using namespace tangle;

namespace {

std::string first(const Report& r) { return r.details.empty() ? "" : r.details.front(); }

}  // namespace

TEST(Report, CountsAndCapsDetails) {
  Report r;
  EXPECT_FALSE(r.pass());  // nothing checked yet
  for (int k = 0; k < 30; ++k) r.fail("x");
  r.ok();
  EXPECT_EQ(r.checks, 31u);
  EXPECT_EQ(r.failures, 30u);
  EXPECT_EQ(r.details.size(), 20u);
  EXPECT_EQ(r.summary(), "1/31 checks passed");
}

TEST(Sweeps, CrossingsUpToThreeStrands) {
  Report r = sweep_crossings(3);
  EXPECT_TRUE(r.pass()) << first(r);
  // n=2: 4 orientations x 1 index; n=3: 8 x 2; two signs, two sides, two gradings.
  EXPECT_EQ(r.checks, (4u * 1 + 8u * 2) * 2 * 2 * 2);
}

TEST(Sweeps, ExtremaUpToFourStrands) {
  Report r = sweep_extrema(4);
  EXPECT_TRUE(r.pass()) << first(r);
}

TEST(Sweeps, ModifiedDerivationUpToFourStrands) {
  Report r = sweep_modified_derivation(4);
  EXPECT_TRUE(r.pass()) << first(r);
}

TEST(Sweeps, StateSumsUpToFourStrands) {
  Report r = sweep_state_sums(4);
  EXPECT_TRUE(r.pass()) << first(r);
}

TEST(Dictionary, OnlyTheSwapWorks) {
  Report r = check_dictionary_uniqueness(3);
  EXPECT_TRUE(r.pass()) << first(r);
  EXPECT_EQ(r.checks, 3u);
}

TEST(Dictionary, IdentityFailsOnMixedCrossing) {
  // +- above an xp 1 gives a mixed pattern, where identity and swap disagree.
  Report r = check_crossing(2, 1, orient_from_bits(2, 0b01), Sign::pos, Side::right, Grading::single, Dictionary::identity);
  EXPECT_FALSE(r.pass());
  EXPECT_EQ(r.failures, 1u);
}

TEST(NegativeControl, PerturbedScalarIsDetected) {
  // The multi-graded cup agrees only with the t^2 scalar; t^1 must be caught.
  Slice s = extremum_slice(0, EventKind::max, OrientSeq{0, 0}, true);
  LevelVars lv = slab_layout(s);
  GradedMatrix a = osz_event_global(s, Side::right, Grading::multi, &lv);
  GradedMatrix b = viro_event_modified_conj(s, Side::right, lv);
  EXPECT_EQ(a, b.scaled(QL::var(lv.ctx, lv.below.at(1), 2)));
  EXPECT_NE(a, b.scaled(QL::var(lv.ctx, lv.below.at(1), 1)));
  EXPECT_NE(a, b);
}

TEST(NegativeControl, WrongSignIsDetected) {
  Slice s = crossing_slice(3, 1, orient_from_bits(3, 0b111), Sign::pos);
  Slice t = crossing_slice(3, 1, orient_from_bits(3, 0b111), Sign::neg);
  EXPECT_NE(osz_event_global(s, Side::right, Grading::single), rt_event_modified_conj(t, Side::right));
}

TEST(Relations, AllFrameworksUpToThreeStrands) {
  for (auto fw : {Framework::rt, Framework::viro, Framework::osz}) {
    Report r = check_relations(fw, 3);
    EXPECT_TRUE(r.pass()) << to_string(fw) << ": " << first(r);
  }
}

TEST(Coherence, SpecializationAndCollapse) {
  EXPECT_TRUE(check_specialization().pass());
  EXPECT_TRUE(check_collapse_tables().pass());
}

TEST(BlockStructure, UpToFiveStrands) {
  Report r = check_block_structure(5);
  EXPECT_TRUE(r.pass()) << first(r);
}
