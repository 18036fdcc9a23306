#pragma once

#include <chrono>
#include <functional>

#include "alexander.hpp"

namespace tangle {

struct Report {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::vector<std::string> details;  // failing cases, capped

  bool pass() const { return failures == 0 && checks > 0; }
  void ok() { ++checks; }
  void fail(const std::string& what) {
    ++checks;
    ++failures;
    if (details.size() < 20) details.push_back(what);
  }
  void expect(bool c, const std::function<std::string()>& what) { c ? ok() : fail(what()); }
  void merge(const Report& r) {
    checks += r.checks;
    failures += r.failures;
    for (const auto& d : r.details)
      if (details.size() < 20) details.push_back(d);
  }
  std::string summary() const {
    return std::to_string(checks - failures) + "/" + std::to_string(checks) + " checks passed";
  }
};

// Bijections of crossing patterns that could relate the two labellings. The
// rotation dictionary is `swap`.
enum class Dictionary { swap, identity, reverse, reverse_swap };

inline CrossPattern apply_dictionary(Dictionary d, CrossPattern p) {
  auto rev = [](CrossPattern x) {
    switch (x) {
      case CrossPattern::UU: return CrossPattern::DD;
      case CrossPattern::DD: return CrossPattern::UU;
      case CrossPattern::UD: return CrossPattern::DU;
      default: return CrossPattern::UD;
    }
  };
  switch (d) {
    case Dictionary::swap: return swap_pattern(p);
    case Dictionary::identity: return p;
    case Dictionary::reverse: return swap_pattern(rev(p));
    default: return rev(p);
  }
}

inline const char* to_string(Dictionary d) {
  switch (d) {
    case Dictionary::swap: return "UD<->DU";
    case Dictionary::identity: return "identity";
    case Dictionary::reverse: return "UU<->DD";
    default: return "UU<->DD,UD<->DU";
  }
}

inline OrientSeq orient_from_bits(int n, std::uint64_t bits) { return OrientSeq{n, bits << 1}; }

inline std::string describe(const Slice& s, Side side, Grading g) {
  std::ostringstream o;
  o << s.event.str() << " n=" << s.above.n << " S=";
  for (int j = 1; j <= s.above.n; ++j) o << (s.above.is_up(j) ? '+' : '-');
  o << " " << to_string(side) << " " << to_string(g);
  return o.str();
}

inline Slice crossing_slice(int n, int i, const OrientSeq& S, Sign sign) {
  if (S.n != n) throw std::invalid_argument("orientation has the wrong strand count");
  Event e;
  e.kind = sign == Sign::pos ? EventKind::pos_cross : EventKind::neg_cross;
  e.index = i;
  return make_slice(e, S);
}

// kind is the event as read in the diagram (max creates two strands).
inline Slice extremum_slice(int i, EventKind kind, const OrientSeq& S, bool left_up) {
  Event e;
  e.kind = kind;
  e.index = i;
  e.pattern = pattern_for_legs(kind, left_up);
  return make_slice(e, S);
}

// ---- OSz against RT / Viro, one event at a time ----

inline Report check_crossing(int n, int i, const OrientSeq& S, Sign sign, Side trunc, Grading g,
                             Dictionary dict = Dictionary::swap) {
  Report r;
  Slice s = crossing_slice(n, i, S, sign);
  CrossPattern forced = apply_dictionary(dict, s.event.cross);
  GradedMatrix osz(BasisDescriptor{}, BasisDescriptor{}, VarContext::constants());
  GradedMatrix rep = osz;
  if (g == Grading::single) {
    osz = osz_event_global(s, trunc, g);
    rep = rt_event_modified_conj(s, trunc, forced);
  } else {
    LevelVars lv = slab_layout(s);
    osz = osz_event_global(s, trunc, g, &lv);
    rep = viro_event_modified_conj(s, trunc, lv, forced);
  }
  r.expect(osz == rep, [&] { return describe(s, trunc, g) + ": " + GradedMatrix::first_difference(osz, rep); });
  return r;
}

// Extremum with legs (i+1, i+2); kind as read in the diagram.
inline Report check_extremum(int i, EventKind kind, const OrientSeq& S, bool left_up, Side trunc, Grading g) {
  Report r;
  Slice s = extremum_slice(i, kind, S, left_up);
  if (g == Grading::single) {
    GradedMatrix a = osz_event_global(s, trunc, g), b = rt_event_modified_conj(s, trunc);
    r.expect(a == b, [&] { return describe(s, trunc, g) + ": " + GradedMatrix::first_difference(a, b); });
    return r;
  }
  LevelVars lv = slab_layout(s);
  GradedMatrix a = osz_event_global(s, trunc, g, &lv);
  GradedMatrix b = viro_event_modified_conj(s, trunc, lv);
  const bool cup = kind == EventKind::max;
  QL scalar = QL::var(lv.ctx, cup ? lv.below.at(i + 1) : lv.above.at(i + 1), cup ? 2 : -2);
  GradedMatrix sb = b.scaled(scalar);
  r.expect(a == sb, [&] { return describe(s, trunc, g) + " scalar " + scalar.str() + ": " + GradedMatrix::first_difference(a, sb); });
  return r;
}

// ---- sweeps ----

template <class F>
inline void for_each_crossing(int max_n, F&& f) {
  for (int n = 2; n <= max_n; ++n)
    for (std::uint64_t b = 0; b < (1ull << n); ++b)
      for (int i = 1; i <= n - 1; ++i)
        for (auto sign : {Sign::pos, Sign::neg}) f(n, i, orient_from_bits(n, b), sign);
}

// f(i, kind, S, left_up) over maxima (S has n strands) and minima (S has n + 2).
template <class F>
inline void for_each_extremum(int max_n, F&& f) {
  for (int n = 0; n + 2 <= max_n; ++n)
    for (int lu = 0; lu < 2; ++lu) {
      for (std::uint64_t b = 0; b < (1ull << n); ++b)
        for (int i = 0; i <= n; ++i) f(i, EventKind::max, orient_from_bits(n, b), lu == 1);
      for (std::uint64_t b = 0; b < (1ull << (n + 2)); ++b) {
        OrientSeq S = orient_from_bits(n + 2, b);
        for (int i = 0; i <= n; ++i)
          if (S.is_up(i + 1) == (lu == 1) && S.is_up(i + 2) != S.is_up(i + 1)) f(i, EventKind::min, S, lu == 1);
      }
    }
}

inline Report sweep_crossings(int max_n, Dictionary dict = Dictionary::swap) {
  Report r;
  for_each_crossing(max_n, [&](int n, int i, const OrientSeq& S, Sign sign) {
    for (auto side : {Side::right, Side::left})
      for (auto g : {Grading::single, Grading::multi}) r.merge(check_crossing(n, i, S, sign, side, g, dict));
  });
  return r;
}

inline Report sweep_extrema(int max_n) {
  Report r;
  for_each_extremum(max_n, [&](int i, EventKind k, const OrientSeq& S, bool lu) {
    for (auto side : {Side::right, Side::left})
      for (auto g : {Grading::single, Grading::multi}) r.merge(check_extremum(i, k, S, lu, side, g));
  });
  return r;
}

// Each alternative dictionary must break the crossing theorem somewhere.
inline Report check_dictionary_uniqueness(int max_n) {
  Report r;
  for (auto d : {Dictionary::identity, Dictionary::reverse, Dictionary::reverse_swap}) {
    Report alt = sweep_crossings(max_n, d);
    r.expect(alt.failures > 0, [&] { return std::string("dictionary ") + to_string(d) + " passes every crossing check"; });
  }
  return r;
}

// ---- conjugated modified bases against the hardcoded tables ----

inline Report check_modified_derivation(const Slice& s, Side side, Framework fw) {
  Report r;
  if (fw == Framework::rt) {
    GradedMatrix c = rt_event_modified_conj(s, side), t = rt_event_modified_table(s, side);
    r.expect(c == t, [&] { return std::string("rt ") + describe(s, side, Grading::single) + ": " + GradedMatrix::first_difference(c, t); });
  } else {
    LevelVars lv = slab_layout(s);
    GradedMatrix c = viro_event_modified_conj(s, side, lv), t = viro_event_modified_table(s, side, lv);
    r.expect(c == t, [&] { return std::string("viro ") + describe(s, side, Grading::multi) + ": " + GradedMatrix::first_difference(c, t); });
  }
  return r;
}

inline Report sweep_modified_derivation(int max_n) {
  Report r;
  for (auto fw : {Framework::rt, Framework::viro})
    for (auto side : {Side::right, Side::left}) {
      for_each_crossing(max_n, [&](int n, int i, const OrientSeq& S, Sign sign) {
        r.merge(check_modified_derivation(crossing_slice(n, i, S, sign), side, fw));
      });
      for_each_extremum(max_n, [&](int i, EventKind k, const OrientSeq& S, bool lu) {
        r.merge(check_modified_derivation(extremum_slice(i, k, S, lu), side, fw));
      });
    }
  return r;
}

// ---- partial Kauffman states against the crossing tables ----

inline Report check_state_sum(int n, int i, const OrientSeq& S, Sign sign, Side trunc, Grading g) {
  Report r;
  Slice s = crossing_slice(n, i, S, sign);
  auto states = enumerate_crossing_states(n, i, s.below, sign, trunc, g);
  GradedMatrix sum(BasisDescriptor{}, BasisDescriptor{}, VarContext::constants());
  GradedMatrix table = sum;
  if (g == Grading::single) {
    sum = state_sum_matrix(states, n, trunc, nullptr);
    table = osz_event_global(s, trunc, g);
  } else {
    LevelVars lv = slab_layout(s);
    VarMap vm = osz_local_vars(s.event, osz_crossing_ctx(), lv);
    sum = state_sum_matrix(states, n, trunc, &vm);
    table = osz_event_global(s, trunc, g, &lv);
  }
  r.expect(sum == table, [&] { return "states " + describe(s, trunc, g) + ": " + GradedMatrix::first_difference(sum, table); });
  return r;
}

inline Report sweep_state_sums(int max_n) {
  Report r;
  for_each_crossing(max_n, [&](int n, int i, const OrientSeq& S, Sign sign) {
    for (auto side : {Side::right, Side::left})
      for (auto g : {Grading::single, Grading::multi}) r.merge(check_state_sum(n, i, S, sign, side, g));
  });
  return r;
}

// ---- relations on open diagrams ----

inline TangleDiagram open_diagram(const OrientSeq& top, const std::vector<std::pair<EventKind, int>>& ev,
                                  const std::vector<ExtPattern>& pats = {}) {
  std::vector<Event> events;
  std::size_t p = 0;
  for (auto [k, i] : ev) {
    Event e;
    e.kind = k;
    e.index = i;
    if (k == EventKind::max || k == EventKind::min) e.pattern = pats.at(p++);
    events.push_back(e);
  }
  return build_diagram(false, top, std::move(events));
}

// Option sets exercised for each framework.
inline std::vector<PipelineOptions> relation_options(Framework fw) {
  std::vector<PipelineOptions> out;
  for (auto side : {Side::right, Side::left}) {
    if (fw == Framework::rt) out.push_back({fw, BasisKind::modified, side, Grading::single});
    if (fw == Framework::viro)
      for (auto g : {Grading::single, Grading::multi}) out.push_back({fw, BasisKind::modified, side, g});
    if (fw == Framework::osz)
      for (auto g : {Grading::single, Grading::multi}) out.push_back({fw, BasisKind::modified, side, g});
  }
  if (fw == Framework::rt) out.push_back({fw, BasisKind::native, Side::right, Grading::single});
  if (fw == Framework::viro)
    for (auto b : {BasisKind::native, BasisKind::dual})
      for (auto g : {Grading::single, Grading::multi}) out.push_back({fw, b, Side::right, g});
  return out;
}

inline std::string options_string(const PipelineOptions& o) {
  std::string s = std::string(to_string(o.framework)) + "/" + to_string(o.basis);
  if (o.basis == BasisKind::modified) s += std::string("-") + to_string(o.side);
  return s + "/" + to_string(o.grading);
}

inline Report check_relations(Framework fw, int max_n) {
  Report r;
  using K = EventKind;
  auto same = [&](const TangleDiagram& a, const TangleDiagram& b, const std::string& what) {
    for (const auto& o : relation_options(fw)) {
      GradedMatrix x = compose_diagram(a, o), y = compose_diagram(b, o);
      r.expect(x == y, [&] { return what + " " + options_string(o) + ": " + GradedMatrix::first_difference(x, y); });
    }
  };
  auto orient_str = [](const OrientSeq& S) {
    std::string s;
    for (int j = 1; j <= S.n; ++j) s += S.is_up(j) ? '+' : '-';
    return s;
  };
  for (int n = 1; n <= max_n; ++n)
    for (std::uint64_t b = 0; b < (1ull << n); ++b) {
      OrientSeq S = orient_from_bits(n, b);
      const std::string tag = " n=" + std::to_string(n) + " S=" + orient_str(S);
      TangleDiagram id = open_diagram(S, {});
      for (int i = 1; i + 2 <= n; ++i) {
        K p = K::pos_cross, m = K::neg_cross;
        same(open_diagram(S, {{p, i}, {p, i + 1}, {p, i}}), open_diagram(S, {{p, i + 1}, {p, i}, {p, i + 1}}),
             "braid+ i=" + std::to_string(i) + tag);
        same(open_diagram(S, {{m, i}, {m, i + 1}, {m, i}}), open_diagram(S, {{m, i + 1}, {m, i}, {m, i + 1}}),
             "braid- i=" + std::to_string(i) + tag);
        same(open_diagram(S, {{m, i}, {p, i + 1}, {p, i}}), open_diagram(S, {{p, i + 1}, {p, i}, {m, i + 1}}),
             "braid mixed i=" + std::to_string(i) + tag);
      }
      for (int i = 1; i + 1 <= n; ++i) {
        same(open_diagram(S, {{K::pos_cross, i}, {K::neg_cross, i}}), id, "R2 +- i=" + std::to_string(i) + tag);
        same(open_diagram(S, {{K::neg_cross, i}, {K::pos_cross, i}}), id, "R2 -+ i=" + std::to_string(i) + tag);
      }
      for (int j = 1; j <= n; ++j) {
        const bool up = S.is_up(j);
        // Strand j bends right then left, and the mirror image.
        same(open_diagram(S, {{K::max, j}, {K::min, j - 1}},
                          {pattern_for_legs(K::max, !up), pattern_for_legs(K::min, up)}),
             id, "zigzag left j=" + std::to_string(j) + tag);
        same(open_diagram(S, {{K::max, j - 1}, {K::min, j}},
                          {pattern_for_legs(K::max, up), pattern_for_legs(K::min, !up)}),
             id, "zigzag right j=" + std::to_string(j) + tag);
      }
    }
  return r;
}

// ---- coherence ----

// Dual-basis Viro local tables under t_j -> q^(1/2) against the RT tables.
inline Report check_specialization() {
  Report r;
  auto to_q = [](const GradedMatrix& m) {
    VarMap v = VarMap::collapse(m.context(), VarContext::single_q());
    return m.map_entries(v);
  };
  for (auto p : {CrossPattern::UU, CrossPattern::UD, CrossPattern::DU, CrossPattern::DD})
    for (auto s : {Sign::pos, Sign::neg}) {
      GradedMatrix a = to_q(viro_crossing_local(p, s, BasisKind::dual)), b = rt_crossing_local(p, s);
      r.expect(a == b, [&] { return std::string("crossing ") + to_string(p) + " " + to_string(s) + ": " + GradedMatrix::first_difference(a, b); });
      GradedMatrix c = to_q(viro_modified_crossing_table(p, s)), d = rt_modified_crossing_table(p, s);
      r.expect(c == d, [&] { return std::string("modified crossing ") + to_string(p) + " " + to_string(s) + ": " + GradedMatrix::first_difference(c, d); });
    }
  for (auto k : {Extremum::min, Extremum::max})
    for (auto p : {ExtPattern::lr, ExtPattern::rl}) {
      GradedMatrix a = to_q(viro_duality_local(k, p, BasisKind::dual)), b = rt_duality_local(k, p);
      r.expect(a == b, [&] { return std::string(k == Extremum::min ? "cup " : "cap ") + to_string(p) + ": " + GradedMatrix::first_difference(a, b); });
    }
  return r;
}

// Multi grading collapsed to t against the single grading, per crossing table.
inline Report check_collapse_tables() {
  Report r;
  for (auto p : {CrossPattern::UU, CrossPattern::UD, CrossPattern::DU, CrossPattern::DD})
    for (auto s : {Sign::pos, Sign::neg}) {
      GradedMatrix m = osz_crossing_local(p, s, Grading::multi);
      GradedMatrix a = m.map_entries(VarMap::collapse(m.context(), VarContext::single_t()));
      GradedMatrix b = osz_crossing_local(p, s, Grading::single);
      r.expect(a == b, [&] { return std::string("osz ") + to_string(p) + " " + to_string(s) + ": " + GradedMatrix::first_difference(a, b); });
    }
  return r;
}

// State-space dimensions and wedge-degree block structure of every event.
inline Report check_block_structure(int max_n) {
  Report r;
  auto check = [&](const GradedMatrix& m, int expect_shift, const std::string& what) {
    auto sh = m.cardinality_shift();
    r.expect(sh && *sh == expect_shift, [&] { return what + ": cardinality shift broken"; });
    r.expect(m.domain().dim() == (std::size_t{1} << m.domain().n) && m.codomain().dim() == (std::size_t{1} << m.codomain().n),
             [&] { return what + ": dimension is not 2^n"; });
  };
  for_each_crossing(max_n, [&](int n, int i, const OrientSeq& S, Sign sign) {
    Slice s = crossing_slice(n, i, S, sign);
    for (auto side : {Side::right, Side::left}) {
      check(osz_event_global(s, side, Grading::single), 0, "osz " + describe(s, side, Grading::single));
      check(rt_event_modified_table(s, side), 0, "rt " + describe(s, side, Grading::single));
    }
    check(rt_event_native(s), 0, "rt native " + describe(s, Side::right, Grading::single));
  });
  for_each_extremum(max_n, [&](int i, EventKind k, const OrientSeq& S, bool lu) {
    Slice s = extremum_slice(i, k, S, lu);
    const int shift = k == EventKind::max ? 1 : -1;
    for (auto side : {Side::right, Side::left}) {
      check(osz_event_global(s, side, Grading::single), shift, "osz " + describe(s, side, Grading::single));
      check(rt_event_modified_table(s, side), shift, "rt " + describe(s, side, Grading::single));
    }
    check(rt_event_native(s), shift, "rt native " + describe(s, Side::right, Grading::single));
  });
  for (auto p : {ExtPattern::lr, ExtPattern::rl})
    for (auto side : {Side::right, Side::left}) check(osz_terminal(p, side), -1, std::string("terminal ") + to_string(p));
  return r;
}

}  // namespace tangle
