#pragma once

#include "viromaps.hpp"

namespace tangle {

enum class Grading { single, multi };
enum class Corner { N, S, E, W };
enum class EdgeClass { interior, left_edge, right_edge };

inline const char* to_string(Grading g) { return g == Grading::single ? "single" : "multi"; }
inline const char* to_string(Corner c) {
  switch (c) {
    case Corner::N: return "N";
    case Corner::S: return "S";
    case Corner::E: return "E";
    default: return "W";
  }
}

// sigma1, sigma2 are the strands leaving the crossing at the left and right
// outgoing positions.
inline const Ctx& osz_crossing_ctx() {
  static const Ctx c = VarContext::make({"sigma1", "sigma2"}, VarRole::local);
  return c;
}

namespace osz_detail {

inline QL h(int k, int c = 1) { return tq(2 * k, c); }  // t^(k/2)
inline QL m(std::int64_t a, std::int64_t b, int c = 1) { return QL::monomial(osz_crossing_ctx(), c, {a, b}); }

inline GradedMatrix swap_strands(const GradedMatrix& g) {
  VarMap s(osz_crossing_ctx(), osz_crossing_ctx());
  s.send(0, 1).send(1, 0);
  return g.map_entries(s);
}

inline GradedMatrix single_table(CrossPattern p) {
  const Ctx& c = VarContext::single_t();
  QL o(c), one = h(0);
  switch (p) {
    case CrossPattern::UU:
      return rt_detail::block_table(c, h(1), {{{h(1), o, o}, {one, h(-1, -1), one}, {o, o, h(1)}}},
                                    {{{h(-1, -1), one, o}, {o, h(1), o}, {o, one, h(-1, -1)}}}, h(-1, -1));
    case CrossPattern::DU:
      return rt_detail::block_table(c, one, {{{one, o, o}, {h(1, -1), one, h(-1)}, {o, o, one}}},
                                    {{{one, h(-1), o}, {o, one, o}, {o, h(1, -1), one}}}, one);
    case CrossPattern::UD:
      return rt_detail::block_table(c, one, {{{one, o, o}, {h(-1), one, h(1, -1)}, {o, o, one}}},
                                    {{{one, h(1, -1), o}, {o, one, o}, {o, h(-1), one}}}, one);
    default:
      return rt_detail::block_table(c, h(-1, -1), {{{h(-1, -1), o, o}, {one, h(1), one}, {o, o, h(-1, -1)}}},
                                    {{{h(1), one, o}, {o, h(-1, -1), o}, {o, one, h(1)}}}, h(1));
  }
}

inline GradedMatrix multi_table(CrossPattern p) {
  const Ctx& c = osz_crossing_ctx();
  QL o(c);
  switch (p) {
    case CrossPattern::UU:
      return rt_detail::block_table(c, m(1, 1), {{{m(1, 1), o, o}, {m(-1, 1), m(-1, -1, -1), m(1, -1)}, {o, o, m(1, 1)}}},
                                    {{{m(-1, -1, -1), m(1, -1), o}, {o, m(1, 1), o}, {o, m(-1, 1), m(-1, -1, -1)}}},
                                    m(-1, -1, -1));
    case CrossPattern::DU:
      return rt_detail::block_table(c, m(-1, 1), {{{m(-1, 1), o, o}, {m(1, 1, -1), m(1, -1), m(-1, -1)}, {o, o, m(-1, 1)}}},
                                    {{{m(1, -1), m(-1, -1), o}, {o, m(-1, 1), o}, {o, m(1, 1, -1), m(1, -1)}}}, m(1, -1));
    case CrossPattern::UD:
      return rt_detail::block_table(c, m(1, -1), {{{m(1, -1), o, o}, {m(-1, -1), m(-1, 1), m(1, 1, -1)}, {o, o, m(1, -1)}}},
                                    {{{m(-1, 1), m(1, 1, -1), o}, {o, m(1, -1), o}, {o, m(-1, -1), m(-1, 1)}}}, m(-1, 1));
    default:
      return rt_detail::block_table(c, m(-1, -1, -1),
                                    {{{m(-1, -1, -1), o, o}, {m(1, -1), m(1, 1), m(-1, 1)}, {o, o, m(-1, -1, -1)}}},
                                    {{{m(1, 1), m(-1, 1), o}, {o, m(-1, -1, -1), o}, {o, m(1, -1), m(1, 1)}}}, m(1, 1));
  }
}

}  // namespace osz_detail

// Crossing tables over local idempotents, labelled by the orientation of the
// outgoing level. A negative crossing inverts the positive crossing that
// undoes it, whose outgoing pattern is swap(p) and whose strands are exchanged.
inline GradedMatrix osz_crossing_local(CrossPattern p, Sign s, Grading g) {
  using namespace osz_detail;
  if (s == Sign::neg) {
    GradedMatrix pos = osz_crossing_local(swap_pattern(p), Sign::pos, g);
    return invert_unit(g == Grading::multi ? swap_strands(pos) : pos);
  }
  return g == Grading::single ? single_table(p) : multi_table(p);
}

// Maximum (8x2) and minimum (2x8); every generator has bidegree (0,0).
inline GradedMatrix osz_extremum_local(EventKind kind) {
  QL one = QL::constant(VarContext::constants(), 1);
  if (kind == EventKind::max) return modified_min_table(one);
  if (kind == EventKind::min) return modified_max_table(one);
  throw std::invalid_argument("not an extremum");
}

// Terminal over the window {0,1,2}: lr has X at {1} and Y at {0}; rl has X at
// {1} and Y at {2}. Truncation removes the region that is not in the basis.
inline GradedMatrix osz_terminal_local(ExtPattern p) {
  const Ctx& c = VarContext::constants();
  QL o(c), one = QL::constant(c, 1);
  std::vector<std::vector<QL>> t = {p == ExtPattern::lr ? std::vector<QL>{o, one, one, o, o, o, o, o}
                                                        : std::vector<QL>{o, o, one, one, o, o, o, o}};
  return local_table<1, 8>(c, 3, 0, kOrder3, std::array<std::uint64_t, 1>{0}, t);
}

inline Embedding terminal_embedding() {
  Embedding e;
  e.win_in = {0, 1, 2};
  return e;
}

inline BasisDescriptor osz_basis(int n, Side trunc) { return BasisDescriptor::modified(n, trunc, Framework::osz); }

inline GradedMatrix osz_terminal(ExtPattern p, Side trunc) {
  return local_to_global(osz_terminal_local(p), terminal_embedding(), osz_basis(2, trunc), osz_basis(0, trunc));
}

inline Embedding osz_embedding(const Event& e) {
  return e.kind == EventKind::terminal ? terminal_embedding() : modified_embedding(e);
}

// Local window variables pushed to the layout ring.
inline VarMap osz_local_vars(const Event& e, const Ctx& local, const LevelVars& lv) {
  VarMap m(local, lv.ctx);
  if (local->arity() == 2) m.send(0, lv.below.at(e.index)).send(1, lv.below.at(e.index + 1));
  return m;
}

inline GradedMatrix osz_event_local(const Event& e, Grading g) {
  if (is_crossing(e.kind)) return osz_crossing_local(e.cross, e.sign(), g);
  if (e.kind == EventKind::terminal) return osz_terminal_local(e.pattern);
  return osz_extremum_local(e.kind);
}

// Globalized matrix for one slice. With the single grading entries live in
// t; with the multi grading they live in lv.ctx.
inline GradedMatrix osz_event_global(const Slice& s, Side trunc, Grading g, const LevelVars* lv = nullptr) {
  const Event& e = s.event;
  GradedMatrix local = osz_event_local(e, g);
  auto dom = osz_basis(s.above.n, trunc), cod = osz_basis(s.below.n, trunc);
  if (g == Grading::single) {
    VarMap vm(local.context(), VarContext::single_t());
    if (local.context()->arity() == 0) return local_to_global(local, osz_embedding(e), dom, cod, &vm);
    return local_to_global(local, osz_embedding(e), dom, cod);
  }
  LevelVars own = e.kind == EventKind::terminal ? LevelVars{} : slab_layout(s);
  const LevelVars& use = lv ? *lv : own;
  if (!use.ctx) {
    VarMap vm(local.context(), VarContext::constants());
    return local_to_global(local, osz_embedding(e), dom, cod, &vm);
  }
  VarMap vm = osz_local_vars(e, local.context(), use);
  return local_to_global(local, osz_embedding(e), dom, cod, &vm);
}

// Local extremum matrix restricted to the idempotents available at an edge.
inline GradedMatrix osz_extremum_local(EventKind kind, EdgeClass pos, Side trunc) {
  GradedMatrix full = osz_extremum_local(kind);
  const bool cut = (pos == EdgeClass::left_edge && trunc == Side::right) || (pos == EdgeClass::right_edge && trunc == Side::left);
  if (!cut) return full;
  // A one-element window is dropped entirely; in a three-element window the
  // outer region on the cut side goes.
  auto keep = [&](const BasisDescriptor& d) {
    BasisDescriptor r = d;
    if (d.n == 1) r.labels = 0;
    else r.labels &= pos == EdgeClass::left_edge ? ~1ull : ~4ull;
    return r;
  };
  GradedMatrix out(keep(full.domain()), keep(full.codomain()), full.context());
  full.for_each([&](auto r, auto c, const QL& v) {
    if (out.codomain().contains(r) && out.domain().contains(c)) out.set(r, c, v);
  });
  return out;
}

// ---- partial Kauffman states ----

struct CornerWeight {
  int maslov = 0;  // parity
  QL alex;         // unit monomial with coefficient 1
};

// Corner gradings read off the crossing tables: N = (B,B), S = (0,0),
// W = (B,A), E = (B,C).
class CornerWeightTable {
 public:
  static const CornerWeightTable& get() {
    static const CornerWeightTable t;
    return t;
  }
  const CornerWeight& at(CrossPattern p, Sign s, Corner c, Grading g) const {
    return w_.at(std::make_tuple(p, s, c, g));
  }

  static std::uint64_t row_of(Corner c) { return c == Corner::S ? 0 : 2; }
  static std::uint64_t col_of(Corner c) {
    switch (c) {
      case Corner::N: return 2;
      case Corner::S: return 0;
      case Corner::W: return 1;
      default: return 4;
    }
  }

 private:
  CornerWeightTable() {
    for (auto p : {CrossPattern::UU, CrossPattern::UD, CrossPattern::DU, CrossPattern::DD})
      for (auto s : {Sign::pos, Sign::neg})
        for (auto g : {Grading::single, Grading::multi}) {
          GradedMatrix m = osz_crossing_local(p, s, g);
          for (auto c : {Corner::N, Corner::S, Corner::E, Corner::W}) {
            QL v = m.at(row_of(c), col_of(c));
            if (!v.is_unit_monomial()) throw MatrixError("corner weight is not a unit monomial");
            CornerWeight w;
            w.maslov = v.coeff(0) < 0 ? 1 : 0;
            w.alex = w.maslov ? -v : v;
            w_.emplace(std::make_tuple(p, s, c, g), w);
          }
        }
  }
  std::map<std::tuple<CrossPattern, Sign, Corner, Grading>, CornerWeight> w_;
};

struct PartialKauffmanState {
  std::uint64_t x = 0, y = 0;  // outgoing, incoming
  Corner corner = Corner::S;
  int maslov = 0;
  QL alex;
};

// S is the orientation of the outgoing level.
inline std::vector<PartialKauffmanState> enumerate_crossing_states(int n, int i, const OrientSeq& S, Sign sign, Side trunc,
                                                                   Grading g) {
  if (i < 1 || i > n - 1 || S.n != n) throw std::out_of_range("crossing index out of range");
  const CrossPattern p = pattern_at(S, i);
  const auto& tab = CornerWeightTable::get();
  const std::uint64_t labels = osz_basis(n, trunc).labels;
  std::vector<PartialKauffmanState> out;
  auto push = [&](std::uint64_t x, std::uint64_t y, Corner c) {
    const CornerWeight& w = tab.at(p, sign, c, g);
    out.push_back({x, y, c, w.maslov, w.alex});
  };
  const std::uint64_t bi = 1ull << i, bl = 1ull << (i - 1), br = 1ull << (i + 1);
  for (auto y : subsets(labels)) {
    push(y, y, (y & bi) ? Corner::N : Corner::S);
    if (y & bi) continue;
    if ((y & bl) && (labels & bl)) push((y & ~bl) | bi, y, Corner::W);
    if ((y & br) && (labels & br)) push((y & ~br) | bi, y, Corner::E);
  }
  return out;
}

// Sum of (-1)^Maslov * Alex over states, as a global matrix.
inline GradedMatrix state_sum_matrix(const std::vector<PartialKauffmanState>& states, int n, Side trunc, const VarMap* vars) {
  Ctx ctx = vars ? vars->target() : (states.empty() ? VarContext::single_t() : states.front().alex.context());
  GradedMatrix m(osz_basis(n, trunc), osz_basis(n, trunc), ctx);
  for (const auto& st : states) {
    QL v = vars ? (*vars)(st.alex) : st.alex;
    m.add(st.x, st.y, st.maslov ? -v : v);
  }
  return m;
}

}  // namespace tangle
