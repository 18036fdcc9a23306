#pragma once

#include "rtmaps.hpp"

namespace tangle {

// Local rings: t1, t2 are the strands starting at the left and right incoming
// positions of a crossing; t is the strand through an extremum. Exponents are
// quarter units, so t1 = sigma_1^(1/4).
inline const Ctx& viro_crossing_ctx() {
  static const Ctx c = VarContext::make({"t1", "t2"}, VarRole::local);
  return c;
}
inline const Ctx& viro_extremum_ctx() {
  static const Ctx c = VarContext::make({"t"}, VarRole::local);
  return c;
}

namespace viro_detail {

inline QL m2(std::int64_t a, std::int64_t b, int c = 1) { return QL::monomial(viro_crossing_ctx(), c, {a, b}); }
inline QL m1(std::int64_t a, int c = 1) { return QL::var(viro_extremum_ctx(), 0, a, c); }

inline GradedMatrix swap_strands(const GradedMatrix& m) {
  VarMap s(viro_crossing_ctx(), viro_crossing_ctx());
  s.send(0, 1).send(1, 0);
  return m.map_entries(s);
}

inline GradedMatrix crossing4(const QL& d0, const QL& r1c2, const QL& r2c1, const QL& r2c2, const QL& d3) {
  QL o(viro_crossing_ctx());
  std::vector<std::vector<QL>> t = {{d0, o, o, o}, {o, o, r1c2, o}, {o, r2c1, r2c2, o}, {o, o, o, d3}};
  return local_table<4, 4>(viro_crossing_ctx(), 2, 2, kOrder2, kOrder2, t);
}

}  // namespace viro_detail

// A negative crossing with incoming p inverts the positive crossing with
// incoming swap(p), whose first strand is our second.
inline GradedMatrix viro_crossing_local(CrossPattern p, Sign s, BasisKind basis = BasisKind::dual) {
  using namespace viro_detail;
  if (s == Sign::neg) return invert_unit(swap_strands(viro_crossing_local(swap_pattern(p), Sign::pos, basis)));
  const bool dual = basis == BasisKind::dual;
  switch (p) {
    case CrossPattern::UU:
      return crossing4(m2(1, 1), m2(-1, 1), m2(1, -1), m2(3, -1) - m2(-1, -1), m2(-1, -1, -1));
    case CrossPattern::DU:
      return crossing4(m2(-1, 1), m2(1, 1, -1), m2(-1, -1), dual ? m2(-1, -1) - m2(3, -1) : m2(1, -1) - m2(-3, -1),
                       m2(1, -1));
    case CrossPattern::UD:
      return crossing4(m2(1, -1), m2(-1, -1), m2(1, 1, -1), dual ? m2(3, -1) - m2(-1, -1) : m2(-1, 1) - m2(3, 1),
                       m2(-1, 1));
    default:
      return crossing4(m2(-1, -1, -1), m2(1, -1), m2(-1, 1), dual ? m2(3, -1) - m2(-1, -1) : m2(1, 1) - m2(-3, 1),
                       m2(1, 1));
  }
}

// Cup (Extremum::min) and cap (Extremum::max) vectors in (1, w_i, w_{i+1}, w_i w_{i+1}).
inline GradedMatrix viro_duality_local(Extremum k, ExtPattern p, BasisKind basis = BasisKind::dual) {
  using namespace viro_detail;
  const Ctx& c = viro_extremum_ctx();
  const bool dual = basis == BasisKind::dual;
  QL o(c), one = m1(0);
  std::array<QL, 4> v;
  if (k == Extremum::min) {
    if (p == ExtPattern::rl) v = {o, dual ? one : m1(2, -1), one, o};
    else v = {o, m1(-2), dual ? m1(-2, -1) : one, o};
    return local_table<4, 1>(c, 0, 2, std::array<std::uint64_t, 1>{0}, kOrder2, {{v[0]}, {v[1]}, {v[2]}, {v[3]}});
  }
  if (p == ExtPattern::rl) v = {o, one, dual ? one : m1(-2, -1), o};
  else v = {o, dual ? m1(2, -1) : one, m1(2), o};
  return local_table<1, 4>(c, 2, 0, kOrder2, std::array<std::uint64_t, 1>{0}, {{v[0], v[1], v[2], v[3]}});
}

// Modified-basis crossing tables in a = t1 t2, b = t1 t2^-1, c = t1^-1 t2, d = t1^-1 t2^-1.
inline GradedMatrix viro_modified_crossing_table(CrossPattern p, Sign s) {
  using namespace viro_detail;
  if (s == Sign::neg) return invert_unit(swap_strands(viro_modified_crossing_table(swap_pattern(p), Sign::pos)));
  const Ctx& ctx = viro_crossing_ctx();
  QL o(ctx), a = m2(1, 1), b = m2(1, -1), c = m2(-1, 1), d = m2(-1, -1);
  switch (p) {
    case CrossPattern::UU:
      return rt_detail::block_table(ctx, a, {{{a, o, o}, {b, -d, c}, {o, o, a}}}, {{{-d, c, o}, {o, a, o}, {o, b, -d}}}, -d);
    case CrossPattern::DU:
      return rt_detail::block_table(ctx, c, {{{c, o, o}, {d, b, -a}, {o, o, c}}}, {{{b, -a, o}, {o, c, o}, {o, d, b}}}, b);
    case CrossPattern::UD:
      return rt_detail::block_table(ctx, b, {{{b, o, o}, {-a, c, d}, {o, o, b}}}, {{{c, d, o}, {o, b, o}, {o, -a, c}}}, c);
    default:
      return rt_detail::block_table(ctx, -d, {{{-d, o, o}, {c, a, b}, {o, o, -d}}}, {{{a, b, o}, {o, -d, o}, {o, c, a}}}, a);
  }
}

inline GradedMatrix viro_modified_min_table() { return modified_min_table(viro_detail::m1(-2)); }
inline GradedMatrix viro_modified_max_table() { return modified_max_table(viro_detail::m1(2)); }

// Sends local table variables to the layout ring of a slice.
inline VarMap local_vars(const Event& e, const Ctx& local, const LevelVars& lv) {
  VarMap m(local, lv.ctx);
  const int i = e.index;
  if (local->arity() == 0) return m;
  if (is_crossing(e.kind)) {
    m.send(0, lv.above.at(i)).send(1, lv.above.at(i + 1));
  } else if (e.kind == EventKind::max) {
    m.send(0, lv.below.at(i + 1));
  } else {
    m.send(0, lv.above.at(i + 1));
  }
  return m;
}

inline GradedMatrix viro_event_native(const Slice& s, const LevelVars& lv, BasisKind basis = BasisKind::dual,
                                      std::optional<CrossPattern> forced = std::nullopt) {
  const Event& e = s.event;
  auto dom = BasisDescriptor::native(s.above.n, Framework::viro, basis);
  auto cod = BasisDescriptor::native(s.below.n, Framework::viro, basis);
  GradedMatrix local = [&] {
    switch (e.kind) {
      case EventKind::pos_cross:
      case EventKind::neg_cross: return viro_crossing_local(forced.value_or(tilde_event(e).cross), e.sign(), basis);
      case EventKind::max:
        return viro_duality_local(Extremum::min, pattern_for_legs(EventKind::min, s.below.is_up(e.index + 1)), basis);
      case EventKind::min:
        return viro_duality_local(Extremum::max, pattern_for_legs(EventKind::max, s.above.is_up(e.index + 1)), basis);
      default: throw std::invalid_argument("the terminal minimum has no rotated counterpart");
    }
  }();
  VarMap vm = local_vars(e, local.context(), lv);
  return local_to_global(local, native_embedding(e), dom, cod, &vm);
}

inline GradedMatrix viro_change_of_basis(const OrientSeq& S, Side side, const Ctx& ctx, const std::vector<int>& vars) {
  return change_of_basis(S, side, Framework::viro, ctx, vars);
}

inline GradedMatrix viro_event_modified_conj(const Slice& s, Side side, const LevelVars& lv,
                                             std::optional<CrossPattern> forced = std::nullopt) {
  GradedMatrix m = viro_event_native(s, lv, BasisKind::dual, forced);
  return conjugate_to_modified(m, viro_change_of_basis(s.above, side, lv.ctx, lv.above),
                               viro_change_of_basis(s.below, side, lv.ctx, lv.below));
}

inline GradedMatrix viro_event_modified_table(const Slice& s, Side side, const LevelVars& lv) {
  const Event& e = s.event;
  GradedMatrix local = is_crossing(e.kind) ? viro_modified_crossing_table(tilde_event(e).cross, e.sign())
                       : e.kind == EventKind::max ? viro_modified_min_table()
                                                  : viro_modified_max_table();
  VarMap vm = local_vars(e, local.context(), lv);
  return local_to_global(local, modified_embedding(e), level_basis(s.above.n, Framework::viro, BasisKind::modified, side),
                         level_basis(s.below.n, Framework::viro, BasisKind::modified, side), &vm);
}

// Local window of the conjugated matrix, in slab variables.
inline GradedMatrix viro_modified_local(const Slice& s, Side side) {
  auto [kin, kout] = local_sizes(s.event, true);
  return extract_local(viro_event_modified_conj(s, side, slab_layout(s)), modified_embedding(s.event), kin, kout);
}

// Diagonal change from the standard to the dual native basis on one level:
// v1* = -t_j^2 v1 on each downward point j.
inline GradedMatrix viro_dual_scaling(const OrientSeq& S, const Ctx& ctx, const std::vector<int>& vars) {
  auto b = BasisDescriptor::native(S.n, Framework::viro);
  GradedMatrix d(BasisDescriptor::native(S.n, Framework::viro, BasisKind::dual), b, ctx);
  for (auto x : subsets(b.labels)) {
    QL c = QL::constant(ctx, 1);
    for (int j = 1; j <= S.n; ++j)
      if (!S.is_up(j) && !((x >> j) & 1u)) c = c * QL::var(ctx, vars.at(j), 2, -1);
    d.set(x, x, c);
  }
  return d;
}

}  // namespace tangle
