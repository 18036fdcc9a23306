#pragma once

#include <functional>
#include <regex>
#include <set>

#include "oszdecat.hpp"

namespace tangle {

class PipelineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PipelineOptions {
  Framework framework = Framework::osz;
  BasisKind basis = BasisKind::modified;  // native (standard), dual, modified
  Side side = Side::right;                // modified side / truncation
  Grading grading = Grading::single;
};

inline LevelVars pipeline_layout(const TangleDiagram& d, std::size_t k, const PipelineOptions& o) {
  if (o.grading == Grading::multi) return diagram_layout(d, k, d.component_context());
  const Ctx& c = o.framework == Framework::rt ? VarContext::single_q() : VarContext::single_t();
  return single_layout(d.slice(k), c);
}

// Matrix of one non-terminal event of a diagram.
inline GradedMatrix event_matrix(const Slice& s, const LevelVars& lv, const PipelineOptions& o) {
  switch (o.framework) {
    case Framework::rt:
      if (o.grading == Grading::multi) throw PipelineError("the rt framework has a single grading only");
      if (o.basis == BasisKind::modified) return rt_event_modified_table(s, o.side);
      if (o.basis == BasisKind::dual) throw PipelineError("the rt framework has no dual basis");
      return rt_event_native(s);
    case Framework::viro:
      if (o.basis == BasisKind::modified) return viro_event_modified_table(s, o.side, lv);
      return viro_event_native(s, lv, o.basis);
    case Framework::osz:
      if (o.basis != BasisKind::modified) throw PipelineError("the osz framework uses idempotent (modified) bases only");
      return osz_event_global(s, o.side, o.grading, &lv);
    default: throw PipelineError("unknown framework");
  }
}

// Cup at the top of a 2-strand level S2, used to read off the scalar of a
// closed diagram in frameworks without a terminal map.
inline GradedMatrix closing_cup(const OrientSeq& S2, const LevelVars& last, const PipelineOptions& o) {
  Event e;
  e.kind = EventKind::max;
  e.index = 0;
  e.pattern = pattern_for_legs(EventKind::max, S2.is_up(1));
  Slice s{e, OrientSeq{0, 0}, S2};
  LevelVars lv{last.ctx, {0}, last.above};
  return event_matrix(s, lv, o);
}

// v = c * u for column vectors u, v; throws if v is not a multiple of u.
inline QL cut_scalar(const GradedMatrix& v, const GradedMatrix& u) {
  QL c(v.context());
  bool found = false;
  u.for_each([&](auto r, auto col, const QL& x) {
    if (found || col != 0) return;
    if (!x.is_unit_monomial()) return;
    c = v.at(r, 0) * x.unit_inverse();
    found = true;
  });
  if (!found) throw PipelineError("closing cup has no unit entry");
  if (!(v == u.scaled(c))) throw PipelineError("composite is not a multiple of the closing cup");
  return c;
}

// Product of event matrices, top to bottom. Closed diagrams give 1x1; for
// rt/viro the terminal is replaced by reading the final vector against the cup.
inline GradedMatrix compose_diagram(const TangleDiagram& d, const PipelineOptions& o) {
  const std::size_t m = d.events.size();
  const bool cut = d.has_terminal() && o.framework != Framework::osz;
  const std::size_t last = cut ? m - 1 : m;
  std::optional<GradedMatrix> acc;
  Ctx ctx = o.grading == Grading::multi ? d.component_context()
            : o.framework == Framework::rt ? VarContext::single_q()
                                           : VarContext::single_t();
  auto id = [&](int n) {
    BasisDescriptor b = o.basis == BasisKind::modified
                            ? BasisDescriptor::modified(n, o.side, o.framework)
                            : BasisDescriptor::native(n, o.framework, o.basis);
    return GradedMatrix::identity(b, ctx);
  };
  for (std::size_t k = 0; k < last; ++k) {
    Slice s = d.slice(k);
    GradedMatrix e = [&] {
      if (s.event.kind == EventKind::terminal) {
        LevelVars none{ctx, {}, {}};
        return osz_event_global(s, o.side, o.grading, &none);
      }
      return event_matrix(s, pipeline_layout(d, k, o), o);
    }();
    acc = acc ? compose(e, *acc) : e;
  }
  if (!acc) acc = id(d.top.n);
  if (!cut) return *acc;
  LevelVars lv = pipeline_layout(d, m - 1, o);
  GradedMatrix u = closing_cup(d.levels[m - 1], lv, o);
  QL c = cut_scalar(*acc, u);
  GradedMatrix r(id(0).domain(), id(0).domain(), ctx);
  r.set(0, 0, c);
  return r;
}

// Shifts to symmetric support and fixes the sign so that the value at 1 is 1.
inline QL normalize_alexander(const QL& p0) {
  QL p = p0.context()->arity() == 0 ? p0 : collapse_single(p0, SingleSymbol::t);
  if (p.context()->arity() == 0) p = p.with_context(VarContext::single_t());
  if (p.is_zero()) throw PipelineError("composite is zero");
  auto [lo, hi] = p.degree_range(0);
  if ((lo + hi) % 2 != 0) throw PipelineError("support cannot be centred on the quarter lattice");
  QL shift = QL::var(p.context(), 0, -(lo + hi) / 2);
  p = p * shift;
  Coeff v1 = p.sum_of_coefficients();
  if (v1 == -1) p = -p;
  else if (v1 != 1) throw PipelineError("value at t = 1 is " + v1.get_str() + ", not a unit");
  VarMap inv(p.context(), p.context());
  inv.send_monomial(0, {-4});
  if (!(inv(p) == p)) throw PipelineError("normalized polynomial is not symmetric");
  return p;
}

inline QL alexander_poly(const TangleDiagram& d, const PipelineOptions& o = {}) {
  if (!d.closed || !d.has_terminal()) throw PipelineError("alexander requires a closed diagram ending in term");
  GradedMatrix m = compose_diagram(d, o);
  return normalize_alexander(m.at(0, 0));
}

// ---- state-sum oracle over regions of the closed diagram ----

struct OracleResult {
  QL value;
  std::size_t states = 0;
};

inline OracleResult oracle_state_sum(const TangleDiagram& d) {
  if (!d.closed || !d.has_terminal()) throw PipelineError("oracle requires a closed diagram ending in term");
  // Region r of level l lies between positions r and r+1.
  detail::UnionFind uf;
  std::vector<std::vector<int>> reg(d.levels.size());
  for (std::size_t l = 0; l < d.levels.size(); ++l)
    for (int r = 0; r <= d.levels[l].n; ++r) reg[l].push_back(uf.add());
  std::size_t terminal_level = 0;
  for (std::size_t l = 0; l < d.events.size(); ++l) {
    const Event& e = d.events[l];
    const int n = d.levels[l].n, i = e.index;
    auto& a = reg[l];
    auto& b = reg[l + 1];
    switch (e.kind) {
      case EventKind::pos_cross:
      case EventKind::neg_cross:
        for (int r = 0; r <= n; ++r)
          if (r != i) uf.unite(a[r], b[r]);
        break;
      case EventKind::max:
        for (int r = 0; r <= i; ++r) uf.unite(a[r], b[r]);
        uf.unite(a[i], b[i + 2]);
        for (int r = i + 1; r <= n; ++r) uf.unite(a[r], b[r + 2]);
        break;
      case EventKind::min:
        for (int r = 0; r <= i; ++r) uf.unite(a[r], b[r]);
        uf.unite(a[i + 2], b[i]);
        for (int r = i + 3; r <= n; ++r) uf.unite(a[r], b[r - 2]);
        break;
      case EventKind::terminal:
        uf.unite(a[0], a[2]);
        uf.unite(a[0], b[0]);
        terminal_level = l;
        break;
    }
  }
  const int outside = uf.find(reg[0][0]);
  const int marked = uf.find(reg[terminal_level][1]);
  std::map<int, int> index;
  for (auto& lv : reg)
    for (int x : lv) {
      int r = uf.find(x);
      if (r != outside && r != marked && !index.count(r)) index.emplace(r, static_cast<int>(index.size()));
    }
  struct Choice {
    int region;
    QL w;
  };
  std::vector<std::vector<Choice>> choices;
  const auto& tab = CornerWeightTable::get();
  for (std::size_t l = 0; l < d.events.size(); ++l) {
    const Event& e = d.events[l];
    if (!is_crossing(e.kind)) continue;
    const int i = e.index;
    std::vector<Choice> cs;
    auto add = [&](int raw, Corner c) {
      int r = uf.find(raw);
      auto it = index.find(r);
      if (it == index.end()) return;
      const CornerWeight& w = tab.at(e.cross, e.sign(), c, Grading::single);
      cs.push_back({it->second, w.maslov ? -w.alex : w.alex});
    };
    add(reg[l][i], Corner::N);
    add(reg[l + 1][i], Corner::S);
    add(reg[l][i - 1], Corner::W);
    add(reg[l][i + 1], Corner::E);
    choices.push_back(std::move(cs));
  }
  if (choices.size() != index.size())
    throw PipelineError("crossing count " + std::to_string(choices.size()) + " does not match bounded region count " +
                        std::to_string(index.size()));
  OracleResult res{QL(VarContext::single_t()), 0};
  std::vector<bool> used(index.size(), false);
  std::function<void(std::size_t, const QL&)> dfs = [&](std::size_t k, const QL& w) {
    if (k == choices.size()) {
      res.value += w;
      ++res.states;
      return;
    }
    for (const auto& c : choices[k]) {
      if (used[c.region]) continue;
      used[c.region] = true;
      dfs(k + 1, w * c.w);
      used[c.region] = false;
    }
  };
  dfs(0, QL::constant(VarContext::single_t(), 1));
  return res;
}

// ---- Seifert-matrix oracle ----

// det(V - t V^T) by cofactor expansion.
inline QL seifert_determinant(const std::vector<std::vector<long>>& V) {
  const std::size_t n = V.size();
  const Ctx& c = VarContext::single_t();
  std::vector<std::vector<QL>> M(n, std::vector<QL>(n, QL(c)));
  for (std::size_t a = 0; a < n; ++a) {
    if (V[a].size() != n) throw PipelineError("seifert matrix is not square");
    for (std::size_t b = 0; b < n; ++b) M[a][b] = QL::constant(c, V[a][b]) - QL::var(c, 0, 4, V[b][a]);
  }
  std::function<QL(std::vector<std::size_t>, std::size_t)> det = [&](std::vector<std::size_t> cols, std::size_t row) {
    if (cols.empty()) return QL::constant(c, 1);
    QL s(c);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (M[row][cols[k]].is_zero()) continue;
      auto rest = cols;
      rest.erase(rest.begin() + static_cast<long>(k));
      QL term = M[row][cols[k]] * det(rest, row + 1);
      s += (k % 2) ? -term : term;
    }
    return s;
  };
  std::vector<std::size_t> all(n);
  for (std::size_t k = 0; k < n; ++k) all[k] = k;
  return det(all, 0);
}

// `# key: value` lines of a fixture file.
inline std::map<std::string, std::string> fixture_annotations(const std::string& text) {
  std::map<std::string, std::string> out;
  std::regex re(R"(^\s*#\s*([a-z_]+)\s*:\s*(.*?)\s*$)");
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::smatch m;
    if (std::regex_match(line, m, re)) out[m[1]] = m[2];
  }
  return out;
}

}  // namespace tangle
