#pragma once

// Reference tables transcribed by hand, in the local order (1, w_i, w_{i+1}, w_i w_{i+1}).
// Each entry is a list of terms {coefficient, exponent...}; exponents are in
// units of q for RT and in units of the strand variables t_j for Viro.

#include <string>
#include <vector>

#include "tangle/viromaps.hpp"

namespace golden {

using namespace tangle;

using Term = std::vector<long>;  // {c, e1, e2, ...}
using Entry = std::vector<Term>;
using Table = std::vector<std::vector<Entry>>;

inline const Entry Z{};

inline QL rt_entry(const Entry& e) {
  QL r(VarContext::single_q());
  for (const auto& t : e) r += qpow(t[1], t[0]);
  return r;
}

inline QL viro_entry(const Ctx& c, const Entry& e) {
  QL r(c);
  for (const auto& t : e) r += QL::monomial(c, t[0], std::vector<std::int64_t>(t.begin() + 1, t.end()));
  return r;
}

// Positive crossings by incoming pattern.
inline const std::vector<std::pair<CrossPattern, Table>>& rt_crossings() {
  static const std::vector<std::pair<CrossPattern, Table>> t = {
      {CrossPattern::UU,
       {{{{1, 1}}, Z, Z, Z}, {Z, Z, {{1, 0}}, Z}, {Z, {{1, 0}}, {{1, 1}, {-1, -1}}, Z}, {Z, Z, Z, {{-1, -1}}}}},
      {CrossPattern::DU,
       {{{{1, 0}}, Z, Z, Z}, {Z, Z, {{-1, 1}}, Z}, {Z, {{1, -1}}, {{1, -1}, {-1, 1}}, Z}, {Z, Z, Z, {{1, 0}}}}},
      {CrossPattern::UD,
       {{{{1, 0}}, Z, Z, Z}, {Z, Z, {{1, -1}}, Z}, {Z, {{-1, 1}}, {{1, 1}, {-1, -1}}, Z}, {Z, Z, Z, {{1, 0}}}}},
      {CrossPattern::DD,
       {{{{-1, -1}}, Z, Z, Z}, {Z, Z, {{1, 0}}, Z}, {Z, {{1, 0}}, {{1, 1}, {-1, -1}}, Z}, {Z, Z, Z, {{1, 1}}}}},
  };
  return t;
}

struct Extremal {
  Extremum kind;
  ExtPattern pattern;
  std::vector<Entry> v;  // (1, w_i, w_{i+1}, w_i w_{i+1})
};

inline const std::vector<Extremal>& rt_extrema() {
  static const std::vector<Extremal> t = {
      {Extremum::min, ExtPattern::rl, {Z, {{1, 0}}, {{1, 0}}, Z}},
      {Extremum::min, ExtPattern::lr, {Z, {{1, -1}}, {{-1, -1}}, Z}},
      {Extremum::max, ExtPattern::rl, {Z, {{1, 0}}, {{1, 0}}, Z}},
      {Extremum::max, ExtPattern::lr, {Z, {{-1, 1}}, {{1, 1}}, Z}},
  };
  return t;
}

// Viro crossings: nonzero entries sit at (0,0), (1,2), (2,1), (2,2), (3,3).
struct ViroCrossing {
  CrossPattern p;
  Entry d0, r1c2, r2c1, r2c2_standard, r2c2_dual, d3;
};

inline const std::vector<ViroCrossing>& viro_crossings() {
  static const std::vector<ViroCrossing> t = {
      {CrossPattern::UU, {{1, 1, 1}}, {{1, -1, 1}}, {{1, 1, -1}}, {{1, 3, -1}, {-1, -1, -1}}, {{1, 3, -1}, {-1, -1, -1}},
       {{-1, -1, -1}}},
      {CrossPattern::DU, {{1, -1, 1}}, {{-1, 1, 1}}, {{1, -1, -1}}, {{1, 1, -1}, {-1, -3, -1}}, {{1, -1, -1}, {-1, 3, -1}},
       {{1, 1, -1}}},
      {CrossPattern::UD, {{1, 1, -1}}, {{1, -1, -1}}, {{-1, 1, 1}}, {{1, -1, 1}, {-1, 3, 1}}, {{1, 3, -1}, {-1, -1, -1}},
       {{1, -1, 1}}},
      {CrossPattern::DD, {{-1, -1, -1}}, {{1, 1, -1}}, {{1, -1, 1}}, {{1, 1, 1}, {-1, -3, 1}}, {{1, 3, -1}, {-1, -1, -1}},
       {{1, 1, 1}}},
  };
  return t;
}

inline Table viro_crossing_table(const ViroCrossing& c, bool dual) {
  Table t(4, std::vector<Entry>(4));
  t[0][0] = c.d0;
  t[1][2] = c.r1c2;
  t[2][1] = c.r2c1;
  t[2][2] = dual ? c.r2c2_dual : c.r2c2_standard;
  t[3][3] = c.d3;
  return t;
}

struct ViroExtremal {
  Extremum kind;
  ExtPattern pattern;
  std::vector<Entry> standard, dual;
};

inline const std::vector<ViroExtremal>& viro_extrema() {
  static const std::vector<ViroExtremal> t = {
      {Extremum::min, ExtPattern::rl, {Z, {{-1, 2}}, {{1, 0}}, Z}, {Z, {{1, 0}}, {{1, 0}}, Z}},
      {Extremum::min, ExtPattern::lr, {Z, {{1, -2}}, {{1, 0}}, Z}, {Z, {{1, -2}}, {{-1, -2}}, Z}},
      {Extremum::max, ExtPattern::rl, {Z, {{1, 0}}, {{-1, -2}}, Z}, {Z, {{1, 0}}, {{1, 0}}, Z}},
      {Extremum::max, ExtPattern::lr, {Z, {{1, 0}}, {{1, 2}}, Z}, {Z, {{-1, 2}}, {{1, 2}}, Z}},
  };
  return t;
}

// Compares a 4x4 or 4x1/1x4 local matrix entry by entry in canonical
// rendering. Returns the number of entries compared; appends mismatches.
template <class ToQL>
std::size_t compare_table(const GradedMatrix& m, const Table& t, ToQL&& to_ql, std::vector<std::string>& bad,
                          const std::string& label) {
  std::size_t n = 0;
  for (std::size_t r = 0; r < t.size(); ++r)
    for (std::size_t c = 0; c < t[r].size(); ++c) {
      std::string want = to_ql(t[r][c]).str(), got = m.at(kOrder2[r] & (t.size() == 1 ? 0 : 3), kOrder2[c] & (t[r].size() == 1 ? 0 : 3)).str();
      ++n;
      if (want != got) bad.push_back(label + " (" + std::to_string(r) + "," + std::to_string(c) + "): want " + want + ", got " + got);
    }
  return n;
}

inline Table column(const std::vector<Entry>& v) { return {{v[0]}, {v[1]}, {v[2]}, {v[3]}}; }
inline Table row(const std::vector<Entry>& v) { return {v}; }

// Runs every golden comparison; returns (entries compared, mismatches).
inline std::pair<std::size_t, std::vector<std::string>> run_all() {
  std::vector<std::string> bad;
  std::size_t n = 0;
  auto rt = [](const Entry& e) { return rt_entry(e); };
  for (const auto& [p, t] : rt_crossings())
    n += compare_table(rt_crossing_local(p, Sign::pos), t, rt, bad, std::string("rt ") + to_string(p));
  for (const auto& e : rt_extrema()) {
    bool min = e.kind == Extremum::min;
    n += compare_table(rt_duality_local(e.kind, e.pattern), min ? column(e.v) : row(e.v), rt, bad,
                       std::string("rt ") + (min ? "min " : "max ") + to_string(e.pattern));
  }
  auto vc = [](const Entry& e) { return viro_entry(viro_crossing_ctx(), e); };
  for (const auto& c : viro_crossings())
    for (bool dual : {false, true})
      n += compare_table(viro_crossing_local(c.p, Sign::pos, dual ? BasisKind::dual : BasisKind::native),
                         viro_crossing_table(c, dual), vc, bad,
                         std::string("viro ") + (dual ? "dual " : "standard ") + to_string(c.p));
  auto ve = [](const Entry& e) { return viro_entry(viro_extremum_ctx(), e); };
  for (const auto& e : viro_extrema())
    for (bool dual : {false, true}) {
      bool min = e.kind == Extremum::min;
      const auto& v = dual ? e.dual : e.standard;
      n += compare_table(viro_duality_local(e.kind, e.pattern, dual ? BasisKind::dual : BasisKind::native),
                         min ? column(v) : row(v), ve, bad,
                         std::string("viro ") + (dual ? "dual " : "standard ") + (min ? "min " : "max ") +
                             to_string(e.pattern));
    }
  return {n, bad};
}

}  // namespace golden
