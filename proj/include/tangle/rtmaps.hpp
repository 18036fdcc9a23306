#pragma once

#include "diagram.hpp"
#include "gradedring.hpp"
#include "statespace.hpp"

namespace tangle {

// Cup (creates two strands reading upward) or cap (annihilates two).
enum class Extremum { min, max };

namespace rt_detail {

inline QL q(int k, int c = 1) { return qpow(k, c); }
inline QL z() { return QL(VarContext::single_q()); }
inline QL qdiff() { return q(1) - q(-1); }

// Block-structured 8x8 table in (empty, A, B, C, AB, AC, BC, ABC) order.
inline GradedMatrix block_table(const Ctx& ctx, const QL& d0, const std::array<std::array<QL, 3>, 3>& b1,
                                const std::array<std::array<QL, 3>, 3>& b2, const QL& d7) {
  std::vector<std::vector<QL>> t(8, std::vector<QL>(8, QL(ctx)));
  t[0][0] = d0;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      t[1 + r][1 + c] = b1[r][c];
      t[4 + r][4 + c] = b2[r][c];
    }
  t[7][7] = d7;
  return local_table<8, 8>(ctx, 3, 3, kOrder3, kOrder3, t);
}

}  // namespace rt_detail

// Entries of the positive crossing with incoming orientation p. A negative
// crossing with incoming p inverts the positive one with incoming swap(p).
inline GradedMatrix rt_crossing_local(CrossPattern p, Sign s) {
  using namespace rt_detail;
  if (s == Sign::neg) return invert_unit(rt_crossing_local(swap_pattern(p), Sign::pos));
  const Ctx& c = VarContext::single_q();
  QL o = z();
  std::vector<std::vector<QL>> t;
  switch (p) {
    case CrossPattern::UU:
      t = {{q(1), o, o, o}, {o, o, q(0), o}, {o, q(0), qdiff(), o}, {o, o, o, q(-1, -1)}};
      break;
    case CrossPattern::DU:
      t = {{q(0), o, o, o}, {o, o, q(1, -1), o}, {o, q(-1), -qdiff(), o}, {o, o, o, q(0)}};
      break;
    case CrossPattern::UD:
      t = {{q(0), o, o, o}, {o, o, q(-1), o}, {o, q(1, -1), qdiff(), o}, {o, o, o, q(0)}};
      break;
    case CrossPattern::DD:
      t = {{q(-1, -1), o, o, o}, {o, o, q(0), o}, {o, q(0), qdiff(), o}, {o, o, o, q(1)}};
      break;
  }
  return local_table<4, 4>(c, 2, 2, kOrder2, kOrder2, t);
}

// Native duality maps in the order (1, w_i, w_{i+1}, w_i w_{i+1}).
inline GradedMatrix rt_duality_local(Extremum k, ExtPattern p) {
  using namespace rt_detail;
  const Ctx& c = VarContext::single_q();
  QL o = z();
  std::array<QL, 4> v;
  if (k == Extremum::min) v = p == ExtPattern::rl ? std::array<QL, 4>{o, q(0), q(0), o} : std::array<QL, 4>{o, q(-1), q(-1, -1), o};
  else v = p == ExtPattern::rl ? std::array<QL, 4>{o, q(0), q(0), o} : std::array<QL, 4>{o, q(1, -1), q(1), o};
  if (k == Extremum::min) return local_table<4, 1>(c, 0, 2, std::array<std::uint64_t, 1>{0}, kOrder2, {{v[0]}, {v[1]}, {v[2]}, {v[3]}});
  return local_table<1, 4>(c, 2, 0, kOrder2, std::array<std::uint64_t, 1>{0}, {{v[0], v[1], v[2], v[3]}});
}

inline GradedMatrix rt_modified_crossing_table(CrossPattern p, Sign s) {
  using namespace rt_detail;
  if (s == Sign::neg) return invert_unit(rt_modified_crossing_table(swap_pattern(p), Sign::pos));
  const Ctx& c = VarContext::single_q();
  QL o = z(), one = q(0);
  GradedMatrix m(BasisDescriptor::local(3), BasisDescriptor::local(3), c);
  switch (p) {
    case CrossPattern::UU:
      m = block_table(c, q(1), {{{q(1), o, o}, {one, q(-1, -1), one}, {o, o, q(1)}}},
                      {{{q(-1, -1), one, o}, {o, q(1), o}, {o, one, q(-1, -1)}}}, q(-1, -1));
      break;
    case CrossPattern::DU:
      m = block_table(c, one, {{{one, o, o}, {q(-1), one, q(1, -1)}, {o, o, one}}},
                      {{{one, q(1, -1), o}, {o, one, o}, {o, q(-1), one}}}, one);
      break;
    case CrossPattern::UD:
      m = block_table(c, one, {{{one, o, o}, {q(1, -1), one, q(-1)}, {o, o, one}}},
                      {{{one, q(-1), o}, {o, one, o}, {o, q(1, -1), one}}}, one);
      break;
    case CrossPattern::DD:
      m = block_table(c, q(-1, -1), {{{q(-1, -1), o, o}, {one, q(1), one}, {o, o, q(-1, -1)}}},
                      {{{q(1), one, o}, {o, q(-1, -1), o}, {o, one, q(1)}}}, q(1));
      break;
  }
  return m;
}

// Cup with matched strands {i+1, i+2}: columns (1, l_i), rows in 3-window order.
inline GradedMatrix modified_min_table(const QL& v) {
  const Ctx& c = v.context();
  QL o(c);
  std::vector<std::vector<QL>> t = {{o, o}, {o, o}, {v, o}, {o, o}, {o, v}, {o, o}, {o, v}, {o, o}};
  return local_table<8, 2>(c, 1, 3, kOrder1, kOrder3, t);
}

// Cap with matched strands {i+1, i+2}: rows (1, l_i).
inline GradedMatrix modified_max_table(const QL& v) {
  const Ctx& c = v.context();
  QL o(c);
  std::vector<std::vector<QL>> t = {{o, v, o, v, o, o, o, o}, {o, o, o, o, o, v, o, o}};
  return local_table<2, 8>(c, 3, 1, kOrder3, kOrder1, t);
}

inline GradedMatrix rt_modified_min_table() { return modified_min_table(qpow(0)); }
inline GradedMatrix rt_modified_max_table() { return modified_max_table(qpow(0)); }

// ---- globalization on diagram slices (events read top to bottom) ----

inline BasisDescriptor level_basis(int n, Framework fw, BasisKind kind, Side side) {
  if (kind == BasisKind::modified) return BasisDescriptor::modified(n, side, fw);
  return BasisDescriptor::native(n, fw, kind);
}

// Native map of the rotated event: a crossing uses the pattern of its upper
// level; a max (min) becomes a cup (cap) chosen by the orientations of its legs.
inline GradedMatrix rt_event_native(const Slice& s, std::optional<CrossPattern> forced = std::nullopt) {
  const Event& e = s.event;
  const int i = e.index;
  auto dom = BasisDescriptor::native(s.above.n, Framework::rt);
  auto cod = BasisDescriptor::native(s.below.n, Framework::rt);
  switch (e.kind) {
    case EventKind::pos_cross:
    case EventKind::neg_cross: {
      CrossPattern p = forced.value_or(tilde_event(e).cross);
      return local_to_global(rt_crossing_local(p, e.sign()), crossing_embedding(false, i), dom, cod);
    }
    case EventKind::max: {
      ExtPattern p = pattern_for_legs(EventKind::min, s.below.is_up(i + 1));
      return local_to_global(rt_duality_local(Extremum::min, p), insert_embedding(false, i), dom, cod);
    }
    case EventKind::min: {
      ExtPattern p = pattern_for_legs(EventKind::max, s.above.is_up(i + 1));
      return local_to_global(rt_duality_local(Extremum::max, p), remove_embedding(false, i), dom, cod);
    }
    default:
      throw std::invalid_argument("the terminal minimum has no rotated counterpart");
  }
}

inline Embedding modified_embedding(const Event& e) {
  switch (e.kind) {
    case EventKind::pos_cross:
    case EventKind::neg_cross: return crossing_embedding(true, e.index);
    case EventKind::max: return insert_embedding(true, e.index);
    case EventKind::min: return remove_embedding(true, e.index);
    default: {
      Embedding t;
      t.win_in = {0, 1, 2};
      return t;
    }
  }
}

inline Embedding native_embedding(const Event& e) {
  switch (e.kind) {
    case EventKind::pos_cross:
    case EventKind::neg_cross: return crossing_embedding(false, e.index);
    case EventKind::max: return insert_embedding(false, e.index);
    case EventKind::min: return remove_embedding(false, e.index);
    default: {
      Embedding t;
      t.win_in = {1, 2};
      return t;
    }
  }
}

inline std::pair<int, int> local_sizes(const Event& e, bool modified) {
  if (is_crossing(e.kind)) return modified ? std::pair{3, 3} : std::pair{2, 2};
  if (e.kind == EventKind::max) return modified ? std::pair{1, 3} : std::pair{0, 2};
  return modified ? std::pair{3, 1} : std::pair{2, 0};
}

// C_out^{-1} M C_in, computed by exact triangular solve.
inline GradedMatrix conjugate_to_modified(const GradedMatrix& native, const GradedMatrix& cin, const GradedMatrix& cout) {
  GradedMatrix rhs = native * cin;
  Pivots p = find_pivots(cout);
  return solve_unit(cout, p, rhs);
}

inline GradedMatrix rt_event_modified_conj(const Slice& s, Side side, std::optional<CrossPattern> forced = std::nullopt) {
  GradedMatrix m = rt_event_native(s, forced);
  return conjugate_to_modified(m, change_of_basis(s.above, side, Framework::rt), change_of_basis(s.below, side, Framework::rt));
}

inline GradedMatrix rt_event_modified_table(const Slice& s, Side side) {
  const Event& e = s.event;
  GradedMatrix local = is_crossing(e.kind) ? rt_modified_crossing_table(tilde_event(e).cross, e.sign())
                       : e.kind == EventKind::max ? rt_modified_min_table()
                                                  : rt_modified_max_table();
  return local_to_global(local, modified_embedding(e), level_basis(s.above.n, Framework::rt, BasisKind::modified, side),
                         level_basis(s.below.n, Framework::rt, BasisKind::modified, side));
}

// Local window of the conjugated matrix.
inline GradedMatrix rt_modified_local(const Slice& s, Side side) {
  auto [kin, kout] = local_sizes(s.event, true);
  return extract_local(rt_event_modified_conj(s, side), modified_embedding(s.event), kin, kout);
}

}  // namespace tangle
