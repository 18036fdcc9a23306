#include <gtest/gtest.h>

#include "golden.hpp"
#include "tangle/crosscheck.hpp"

using namespace tangle;

namespace {

const CrossPattern kPatterns[] = {CrossPattern::UU, CrossPattern::UD, CrossPattern::DU, CrossPattern::DD};

QL vc(const golden::Entry& e) { return golden::viro_entry(viro_crossing_ctx(), e); }
QL ve(const golden::Entry& e) { return golden::viro_entry(viro_extremum_ctx(), e); }

}  // namespace

TEST(ViroLocal, StandardCrossingsMatchReference) {
  std::vector<std::string> bad;
  for (const auto& c : golden::viro_crossings())
    golden::compare_table(viro_crossing_local(c.p, Sign::pos, BasisKind::native), golden::viro_crossing_table(c, false),
                          vc, bad, to_string(c.p));
  EXPECT_TRUE(bad.empty()) << bad.front();
}

TEST(ViroLocal, DualCrossingsMatchReference) {
  std::vector<std::string> bad;
  for (const auto& c : golden::viro_crossings())
    golden::compare_table(viro_crossing_local(c.p, Sign::pos, BasisKind::dual), golden::viro_crossing_table(c, true), vc,
                          bad, to_string(c.p));
  EXPECT_TRUE(bad.empty()) << bad.front();
}

TEST(ViroLocal, ExtremaMatchReference) {
  std::vector<std::string> bad;
  for (const auto& e : golden::viro_extrema())
    for (bool dual : {false, true}) {
      const auto& v = dual ? e.dual : e.standard;
      auto t = e.kind == Extremum::min ? golden::column(v) : golden::row(v);
      golden::compare_table(viro_duality_local(e.kind, e.pattern, dual ? BasisKind::dual : BasisKind::native), t, ve, bad,
                            to_string(e.pattern));
    }
  EXPECT_TRUE(bad.empty()) << bad.front();
}

TEST(ViroLocal, CrossingDeterminantIsUnit) {
  for (auto p : kPatterns)
    for (auto b : {BasisKind::native, BasisKind::dual}) {
      GradedMatrix m = viro_crossing_local(p, Sign::pos, b);
      GradedMatrix inv = invert_unit(m);
      EXPECT_EQ(compose(inv, m), GradedMatrix::identity(m.domain(), m.context()));
    }
}

TEST(ViroLocal, UpUpEntryRendering) {
  GradedMatrix m = viro_crossing_local(CrossPattern::UU, Sign::pos, BasisKind::dual);
  EXPECT_EQ(m.at(0, 0).str(), "1*t1^(1/4)*t2^(1/4)");
  EXPECT_EQ(m.at(2, 2).str(), "-1*t1^(-1/4)*t2^(-1/4) + 1*t1^(3/4)*t2^(-1/4)");
}

TEST(ViroLocal, SpecializesToRtUnderHalfQ) {
  Report r = check_specialization();
  EXPECT_TRUE(r.pass()) << (r.details.empty() ? "" : r.details.front());
  EXPECT_EQ(r.checks, 20u);
}

// Standard and dual native maps differ by the diagonal rescaling of the
// downward basis vectors on both levels.
TEST(ViroGlobal, DualIsStandardRescaled) {
  for (int n = 2; n <= 4; ++n)
    for (std::uint64_t bits = 0; bits < (1u << n); ++bits)
      for (int i = 1; i < n; ++i)
        for (auto sign : {Sign::pos, Sign::neg}) {
          Slice s = crossing_slice(n, i, orient_from_bits(n, bits), sign);
          LevelVars lv = slab_layout(s);
          GradedMatrix std_map = viro_event_native(s, lv, BasisKind::native);
          GradedMatrix dual_map = viro_event_native(s, lv, BasisKind::dual);
          GradedMatrix da = viro_dual_scaling(s.above, lv.ctx, lv.above);
          GradedMatrix db = viro_dual_scaling(s.below, lv.ctx, lv.below);
          GradedMatrix lhs = compose(db, dual_map), rhs = compose(std_map, da);
          EXPECT_EQ(lhs, rhs) << describe(s, Side::right, Grading::multi) << " " << GradedMatrix::first_difference(lhs, rhs);
        }
}

TEST(ViroModified, TablesEqualConjugatedDualMaps) {
  for (int n = 2; n <= 4; ++n)
    for (std::uint64_t bits = 0; bits < (1u << n); ++bits)
      for (int i = 1; i < n; ++i)
        for (auto sign : {Sign::pos, Sign::neg})
          for (auto side : {Side::right, Side::left}) {
            Slice s = crossing_slice(n, i, orient_from_bits(n, bits), sign);
            LevelVars lv = slab_layout(s);
            EXPECT_EQ(viro_event_modified_table(s, side, lv), viro_event_modified_conj(s, side, lv));
          }
}

TEST(ViroModified, ExtremumScalars) {
  EXPECT_EQ(viro_modified_min_table().at(2, 0).str(), "1*t^(-1/2)");
  EXPECT_EQ(viro_modified_max_table().at(0, 1).str(), "1*t^(1/2)");
}
