#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "diagram.hpp"
#include "gradedring.hpp"

namespace tangle {

class MatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Side { right, left };
enum class BasisKind { native, dual, modified, local };
enum class Framework { rt, viro, osz, none };

inline const char* to_string(Side s) { return s == Side::right ? "right" : "left"; }
inline const char* to_string(BasisKind k) {
  switch (k) {
    case BasisKind::native: return "native";
    case BasisKind::dual: return "dual";
    case BasisKind::modified: return "modified";
    default: return "local";
  }
}
inline const char* to_string(Framework f) {
  switch (f) {
    case Framework::rt: return "rt";
    case Framework::viro: return "viro";
    case Framework::osz: return "osz";
    default: return "none";
  }
}

// Subsets are bit-sets over `labels`; the label j is bit j.
struct BasisDescriptor {
  int n = 0;
  Side side = Side::right;
  BasisKind kind = BasisKind::native;
  Framework framework = Framework::none;
  std::uint64_t labels = 0;

  static BasisDescriptor native(int n, Framework f, BasisKind k = BasisKind::native) {
    return {n, Side::right, k, f, low_bits(n) & ~1ull};
  }
  static BasisDescriptor modified(int n, Side s, Framework f) {
    std::uint64_t l = s == Side::right ? (low_bits(n) & ~1ull) : low_bits(n - 1);
    return {n, s, BasisKind::modified, f, l};
  }
  static BasisDescriptor local(int k) { return {k, Side::right, BasisKind::local, Framework::none, low_bits(k - 1)}; }

  std::size_t dim() const { return std::size_t{1} << std::popcount(labels); }
  bool contains(std::uint64_t x) const { return (x & ~labels) == 0; }
  bool operator==(const BasisDescriptor&) const = default;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["kind"] = to_string(kind);
    if (kind == BasisKind::modified) j["side"] = to_string(side);
    j["framework"] = to_string(framework);
    j["dim"] = dim();
    return j;
  }
};

// All subsets of `labels` in increasing integer order.
inline std::vector<std::uint64_t> subsets(std::uint64_t labels) {
  std::vector<std::uint64_t> out;
  std::uint64_t s = 0;
  do {
    out.push_back(s);
    s = (s - labels) & labels;
  } while (s != 0);
  std::sort(out.begin(), out.end());
  return out;
}

// Sparse matrix with typed row/column bases; columns map to rows.
class GradedMatrix {
 public:
  using Column = std::map<std::uint64_t, QL>;

  GradedMatrix(BasisDescriptor dom, BasisDescriptor cod, Ctx ctx)
      : dom_(dom), cod_(cod), ctx_(std::move(ctx)) {}

  static GradedMatrix identity(const BasisDescriptor& d, const Ctx& ctx) {
    GradedMatrix m(d, d, ctx);
    for (auto x : subsets(d.labels)) m.set(x, x, QL::constant(ctx, 1));
    return m;
  }

  const BasisDescriptor& domain() const { return dom_; }
  const BasisDescriptor& codomain() const { return cod_; }
  const Ctx& context() const { return ctx_; }
  const std::map<std::uint64_t, Column>& columns() const { return cols_; }

  void set(std::uint64_t row, std::uint64_t col, const QL& v) {
    check(row, col);
    if (v.is_zero()) {
      auto it = cols_.find(col);
      if (it != cols_.end()) {
        it->second.erase(row);
        if (it->second.empty()) cols_.erase(it);
      }
      return;
    }
    cols_[col][row] = adopt(v);
  }

  void add(std::uint64_t row, std::uint64_t col, const QL& v) {
    if (v.is_zero()) return;
    check(row, col);
    auto& c = cols_[col];
    auto it = c.find(row);
    if (it == c.end()) {
      c.emplace(row, adopt(v));
      return;
    }
    it->second += v;
    if (it->second.is_zero()) {
      c.erase(it);
      if (c.empty()) cols_.erase(col);
    }
  }

  QL at(std::uint64_t row, std::uint64_t col) const {
    auto it = cols_.find(col);
    if (it == cols_.end()) return QL(ctx_);
    auto jt = it->second.find(row);
    return jt == it->second.end() ? QL(ctx_) : jt->second;
  }

  std::size_t nnz() const {
    std::size_t s = 0;
    for (const auto& [c, col] : cols_) s += col.size();
    return s;
  }

  template <class F>
  void for_each(F&& f) const {
    for (const auto& [c, col] : cols_)
      for (const auto& [r, v] : col) f(r, c, v);
  }

  GradedMatrix map_entries(const VarMap& m) const {
    GradedMatrix r(dom_, cod_, m.target());
    for_each([&](auto row, auto col, const QL& v) { r.set(row, col, m(v)); });
    return r;
  }

  GradedMatrix scaled(const QL& s) const {
    GradedMatrix r(dom_, cod_, ctx_);
    for_each([&](auto row, auto col, const QL& v) { r.set(row, col, v * s); });
    return r;
  }

  GradedMatrix retyped(const BasisDescriptor& dom, const BasisDescriptor& cod) const {
    GradedMatrix r(dom, cod, ctx_);
    for_each([&](auto row, auto col, const QL& v) { r.set(row, col, v); });
    return r;
  }

  // Entry-wise equality; bases must have the same label sets.
  friend bool operator==(const GradedMatrix& a, const GradedMatrix& b) {
    if (a.dom_.labels != b.dom_.labels || a.cod_.labels != b.cod_.labels) return false;
    if (a.nnz() != b.nnz()) return false;
    bool eq = true;
    a.for_each([&](auto r, auto c, const QL& v) {
      if (eq && !(b.at(r, c) == v)) eq = false;
    });
    return eq;
  }

  // First differing entry, as "(row,col): a vs b"; empty if equal.
  static std::string first_difference(const GradedMatrix& a, const GradedMatrix& b) {
    if (a.dom_.labels != b.dom_.labels || a.cod_.labels != b.cod_.labels) return "basis label sets differ";
    std::map<std::pair<std::uint64_t, std::uint64_t>, int> keys;
    a.for_each([&](auto r, auto c, const QL&) { keys[{c, r}] = 1; });
    b.for_each([&](auto r, auto c, const QL&) { keys[{c, r}] = 1; });
    for (const auto& [k, _] : keys) {
      QL x = a.at(k.second, k.first), y = b.at(k.second, k.first);
      if (!(x == y))
        return "(row " + std::to_string(k.second) + ", col " + std::to_string(k.first) + "): " + x.str() + " vs " + y.str();
    }
    return "";
  }

  // Wedge-degree shift if every entry changes cardinality by the same amount.
  std::optional<int> cardinality_shift() const {
    std::optional<int> d;
    bool ok = true;
    for_each([&](auto r, auto c, const QL&) {
      int s = std::popcount(r) - std::popcount(c);
      if (!d) d = s;
      else if (*d != s) ok = false;
    });
    if (!ok) return std::nullopt;
    return d.value_or(0);
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["domain"] = dom_.to_json();
    j["codomain"] = cod_.to_json();
    j["entries"] = nlohmann::json::array();
    for_each([&](auto r, auto c, const QL& v) { j["entries"].push_back({r, c, v.str()}); });
    return j;
  }

 private:
  void check(std::uint64_t row, std::uint64_t col) const {
    if (!cod_.contains(row) || !dom_.contains(col)) throw MatrixError("entry outside basis");
  }
  QL adopt(const QL& v) const {
    if (v.context() == ctx_) return v;
    return v.with_context(ctx_);
  }

  BasisDescriptor dom_, cod_;
  Ctx ctx_;
  std::map<std::uint64_t, Column> cols_;
};

// a * b (apply b first).
inline GradedMatrix compose(const GradedMatrix& a, const GradedMatrix& b) {
  if (a.domain().labels != b.codomain().labels || a.domain().n != b.codomain().n)
    throw MatrixError("descriptor mismatch in composition");
  if (!same_ring(a.context(), b.context()) && a.context()->arity() && b.context()->arity())
    throw MatrixError("context mismatch in composition");
  const Ctx& ctx = a.context()->arity() ? a.context() : b.context();
  GradedMatrix r(b.domain(), a.codomain(), ctx);
  const auto& acols = a.columns();
  for (const auto& [c, bcol] : b.columns()) {
    std::map<std::uint64_t, QL> acc;
    for (const auto& [k, bv] : bcol) {
      auto it = acols.find(k);
      if (it == acols.end()) continue;
      for (const auto& [row, av] : it->second) {
        auto p = acc.find(row);
        if (p == acc.end()) acc.emplace(row, av * bv);
        else p->second += av * bv;
      }
    }
    for (auto& [row, v] : acc)
      if (!v.is_zero()) r.set(row, c, v);
  }
  return r;
}

inline GradedMatrix operator*(const GradedMatrix& a, const GradedMatrix& b) { return compose(a, b); }

// Pivot structure of a square matrix that is triangular up to permutation with
// unit-monomial pivots: repeatedly peel a row with a single remaining entry.
struct Pivots {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> order;  // (row, col)
  std::map<std::uint64_t, QL> inv_pivot;                       // col -> pivot^{-1}
};

inline Pivots find_pivots(const GradedMatrix& m) {
  if (m.domain().dim() != m.codomain().dim()) throw MatrixError("invert: matrix is not square");
  std::map<std::uint64_t, std::map<std::uint64_t, const QL*>> rows;
  for (auto r : subsets(m.codomain().labels)) rows[r];
  m.for_each([&](auto r, auto c, const QL& v) { rows[r][c] = &v; });
  std::map<std::uint64_t, std::vector<std::uint64_t>> col_rows;
  m.for_each([&](auto r, auto c, const QL&) { col_rows[c].push_back(r); });
  std::vector<std::uint64_t> ready;
  for (auto& [r, es] : rows)
    if (es.size() == 1) ready.push_back(r);
  Pivots p;
  std::map<std::uint64_t, bool> row_done;
  while (!ready.empty()) {
    std::uint64_t r = ready.back();
    ready.pop_back();
    if (row_done[r]) continue;
    auto& es = rows[r];
    if (es.size() != 1) continue;
    auto [c, v] = *es.begin();
    if (!v->is_unit_monomial()) throw MatrixError("determinant is not a unit monomial");
    row_done[r] = true;
    p.order.emplace_back(r, c);
    p.inv_pivot.emplace(c, v->unit_inverse());
    for (auto r2 : col_rows[c]) {
      if (row_done[r2]) continue;
      rows[r2].erase(c);
      if (rows[r2].size() == 1) ready.push_back(r2);
    }
  }
  if (p.order.size() != m.codomain().dim()) throw MatrixError("determinant is not a unit monomial (matrix not triangularizable)");
  return p;
}

// Solves c * x = b exactly.
inline GradedMatrix solve_unit(const GradedMatrix& c, const Pivots& piv, const GradedMatrix& b) {
  if (b.codomain().labels != c.codomain().labels) throw MatrixError("solve: descriptor mismatch");
  GradedMatrix x(b.domain(), c.domain(), c.context());
  const auto& ccols = c.columns();
  for (const auto& [col, bcol] : b.columns()) {
    std::map<std::uint64_t, QL> res(bcol.begin(), bcol.end());
    for (const auto& [r, pc] : piv.order) {
      auto it = res.find(r);
      if (it == res.end() || it->second.is_zero()) continue;
      QL coef = it->second * piv.inv_pivot.at(pc);
      x.set(pc, col, coef);
      for (const auto& [row, v] : ccols.at(pc)) {
        auto jt = res.find(row);
        QL delta = -(v * coef);
        if (jt == res.end()) res.emplace(row, delta);
        else jt->second += delta;
      }
    }
    for (const auto& [row, v] : res)
      if (!v.is_zero()) throw MatrixError("solve: residual not eliminated");
  }
  return x;
}

inline GradedMatrix invert_unit(const GradedMatrix& m) {
  Pivots p = find_pivots(m);
  return solve_unit(m, p, GradedMatrix::identity(m.codomain(), m.context()));
}

// Local window data: local bit k of a column is label win_in[k]; rows likewise
// with win_out; labels off the window move by `shift`.
struct Embedding {
  std::vector<int> win_in, win_out;
  std::function<int(int)> shift = [](int j) { return j; };

  std::uint64_t mask_in() const { return mask(win_in); }
  std::uint64_t mask_out() const { return mask(win_out); }
  static std::uint64_t mask(const std::vector<int>& w) {
    std::uint64_t m = 0;
    for (int j : w)
      if (j >= 0) m |= 1ull << j;
    return m;
  }
  static std::uint64_t embed(std::uint64_t local, const std::vector<int>& w) {
    std::uint64_t g = 0;
    for (std::size_t k = 0; k < w.size(); ++k)
      if ((local >> k) & 1u) {
        if (w[k] < 0) return ~0ull;
        g |= 1ull << w[k];
      }
    return g;
  }
  static std::uint64_t restrict(std::uint64_t global, const std::vector<int>& w) {
    std::uint64_t l = 0;
    for (std::size_t k = 0; k < w.size(); ++k)
      if (w[k] >= 0 && ((global >> w[k]) & 1u)) l |= 1ull << k;
    return l;
  }
};

// Crossing at i: native window {i, i+1}; modified window {i-1, i, i+1}.
inline Embedding crossing_embedding(bool modified, int i) {
  Embedding e;
  e.win_in = modified ? std::vector<int>{i - 1, i, i + 1} : std::vector<int>{i, i + 1};
  e.win_out = e.win_in;
  return e;
}

// Inserting a pair at positions i+1, i+2 (n -> n+2).
inline Embedding insert_embedding(bool modified, int i) {
  Embedding e;
  if (modified) {
    e.win_in = {i};
    e.win_out = {i, i + 1, i + 2};
    e.shift = [i](int j) { return j < i ? j : j + 2; };
  } else {
    e.win_out = {i + 1, i + 2};
    e.shift = [i](int j) { return j <= i ? j : j + 2; };
  }
  return e;
}

// Removing the pair at positions i+1, i+2 (n+2 -> n).
inline Embedding remove_embedding(bool modified, int i) {
  Embedding e;
  if (modified) {
    e.win_in = {i, i + 1, i + 2};
    e.win_out = {i};
    e.shift = [i](int j) { return j < i ? j : j - 2; };
  } else {
    e.win_in = {i + 1, i + 2};
    e.shift = [i](int j) { return j <= i ? j : j - 2; };
  }
  return e;
}

// Global entry (x, y) = local(x on window, y on window) when the off-window
// parts correspond under the shift. Local rows that fall outside the
// codomain labels are dropped, which realizes the boundary submatrix rules.
inline GradedMatrix local_to_global(const GradedMatrix& local, const Embedding& emb, const BasisDescriptor& dom,
                                    const BasisDescriptor& cod, const VarMap* vars = nullptr) {
  for (int j : emb.win_in)
    if (j > 62) throw MatrixError("window out of range");
  for (int j : emb.win_out)
    if (j > 62) throw MatrixError("window out of range");
  const Ctx& ctx = vars ? vars->target() : local.context();
  GradedMatrix g(dom, cod, ctx);
  const std::uint64_t min_ = emb.mask_in();
  std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, QL>>> cols;
  for (const auto& [lc, col] : local.columns())
    for (const auto& [lr, v] : col) cols[lc].emplace_back(emb.embed(lr, emb.win_out), vars ? (*vars)(v) : v);
  for (auto y : subsets(dom.labels)) {
    std::uint64_t lc = emb.restrict(y, emb.win_in);
    if (emb.embed(lc, emb.win_in) != (y & min_)) continue;
    auto it = cols.find(lc);
    if (it == cols.end()) continue;
    std::uint64_t rest = y & ~min_, moved = 0;
    for (std::uint64_t r = rest; r; r &= r - 1) {
      int j = std::countr_zero(r);
      int k = emb.shift(j);
      if (k < 0 || k > 62 || !cod.contains(1ull << k)) throw MatrixError("window out of range: shifted label leaves the codomain");
      moved |= 1ull << k;
    }
    for (const auto& [gr, v] : it->second) {
      if (gr == ~0ull || !cod.contains(gr)) continue;
      if (gr & moved) throw MatrixError("window overlaps shifted labels");
      g.set(gr | moved, y, v);
    }
  }
  return g;
}

// Reads the local window of a global matrix from the columns whose off-window
// part is empty; throws if an entry is not of local form.
inline GradedMatrix extract_local(const GradedMatrix& global, const Embedding& emb, int kin, int kout) {
  GradedMatrix l(BasisDescriptor::local(kin), BasisDescriptor::local(kout), global.context());
  const std::uint64_t mout = emb.mask_out();
  for (std::uint64_t lc = 0; lc < (1ull << kin); ++lc) {
    std::uint64_t y = emb.embed(lc, emb.win_in);
    if (y == ~0ull || !global.domain().contains(y)) continue;
    auto it = global.columns().find(y);
    if (it == global.columns().end()) continue;
    for (const auto& [x, v] : it->second) {
      if (x & ~mout) throw MatrixError("entry outside the local window");
      l.set(emb.restrict(x, emb.win_out), lc, v);
    }
  }
  return l;
}

// Display orders of local forms: (empty, A, B, C, AB, AC, BC, ABC) with A, B, C
// the three window labels, and (1, w_i, w_{i+1}, w_i w_{i+1}).
inline constexpr std::array<std::uint64_t, 8> kOrder3 = {0, 1, 2, 4, 3, 5, 6, 7};
inline constexpr std::array<std::uint64_t, 4> kOrder2 = {0, 1, 2, 3};
inline constexpr std::array<std::uint64_t, 2> kOrder1 = {0, 1};

// Builds a local matrix from a row-major table in display order.
template <std::size_t R, std::size_t C>
GradedMatrix local_table(const Ctx& ctx, int kin, int kout, const std::array<std::uint64_t, C>& col_order,
                         const std::array<std::uint64_t, R>& row_order, const std::vector<std::vector<QL>>& t) {
  GradedMatrix m(BasisDescriptor::local(kin), BasisDescriptor::local(kout), ctx);
  if (t.size() != R) throw MatrixError("table row count");
  for (std::size_t r = 0; r < R; ++r) {
    if (t[r].size() != C) throw MatrixError("table column count");
    for (std::size_t c = 0; c < C; ++c) m.set(row_order[r], col_order[c], t[r][c]);
  }
  return m;
}

// Variable index per position at each level of a matrix chain.
struct LevelVars {
  Ctx ctx;
  std::vector<int> above, below;  // index 0 unused
};

inline LevelVars single_layout(const Slice& s, const Ctx& ctx) {
  return {ctx, std::vector<int>(s.above.n + 1, 0), std::vector<int>(s.below.n + 1, 0)};
}

inline LevelVars slab_layout(const Slice& s) {
  return {slab_context(s), slab_positions(s, LevelSide::above), slab_positions(s, LevelSide::below)};
}

inline LevelVars diagram_layout(const TangleDiagram& d, std::size_t k, const Ctx& ctx) {
  return {ctx, d.kappa.at(k), d.kappa.at(k + 1)};
}

// The elements l_j as combinations of w_j, w_{j+1} (modified basis vectors).
// Point variables of position j are vars[j] in ctx.
inline std::map<int, std::vector<std::pair<int, QL>>> l_vectors(const OrientSeq& S, Side side, Framework fw,
                                                                  const Ctx& ctx, const std::vector<int>& vars) {
  const int n = S.n;
  std::map<int, std::vector<std::pair<int, QL>>> out;
  auto one = QL::constant(ctx, 1);
  auto mone = QL::constant(ctx, -1);
  auto qi = [&]() { return qpow(-1).with_context(ctx); };
  auto t2 = [&](int j) { return QL::var(ctx, vars.at(j), 2); };
  const bool rt = fw == Framework::rt;
  auto interior = [&](int i) {
    bool a = S.is_up(i), b = S.is_up(i + 1);
    if (rt) {
      if (a && b) return std::vector<std::pair<int, QL>>{{i, one}, {i + 1, -qi()}};
      if (a) return std::vector<std::pair<int, QL>>{{i, one}, {i + 1, one}};
      if (b) return std::vector<std::pair<int, QL>>{{i, qi()}, {i + 1, -qi()}};
      return std::vector<std::pair<int, QL>>{{i, qi()}, {i + 1, one}};
    }
    if (a && b) return std::vector<std::pair<int, QL>>{{i, t2(i)}, {i + 1, mone}};
    if (a) return std::vector<std::pair<int, QL>>{{i, t2(i)}, {i + 1, t2(i + 1)}};
    if (b) return std::vector<std::pair<int, QL>>{{i, one}, {i + 1, mone}};
    return std::vector<std::pair<int, QL>>{{i, one}, {i + 1, t2(i + 1)}};
  };
  if (side == Side::left && n >= 1) {
    bool up = S.is_up(1);
    QL c = rt ? (up ? -qi() : one) : (up ? mone : t2(1));
    out[0] = {{1, c}};
  }
  for (int i = 1; i <= n - 1; ++i) out[i] = interior(i);
  if (side == Side::right && n >= 1) {
    bool up = S.is_up(n);
    QL c = rt ? (up ? one : qi()) : (up ? t2(n) : one);
    out[n] = {{n, c}};
  }
  return out;
}

// Columns are l_x expanded in the w-subset basis by wedge expansion.
inline GradedMatrix change_of_basis(const OrientSeq& S, Side side, Framework fw, const Ctx& ctx, const std::vector<int>& vars) {
  const int n = S.n;
  auto ls = l_vectors(S, side, fw, ctx, vars);
  BasisDescriptor dom = BasisDescriptor::modified(n, side, fw);
  BasisDescriptor cod = BasisDescriptor::native(n, fw, fw == Framework::viro ? BasisKind::dual : BasisKind::native);
  GradedMatrix m(dom, cod, ctx);
  for (auto x : subsets(dom.labels)) {
    std::map<std::uint64_t, QL> acc{{0, QL::constant(ctx, 1)}};
    for (std::uint64_t r = x; r; r &= r - 1) {
      int j = std::countr_zero(r);
      std::map<std::uint64_t, QL> next;
      for (const auto& [w, v] : acc)
        for (const auto& [k, c] : ls.at(j)) {
          if ((w >> k) & 1u) continue;
          // Wedge sign: number of factors already present above k.
          int above = std::popcount(w >> (k + 1));
          QL term = v * c;
          if (above & 1) term = -term;
          auto it = next.find(w | (1ull << k));
          if (it == next.end()) next.emplace(w | (1ull << k), term);
          else it->second += term;
        }
      acc = std::move(next);
    }
    for (const auto& [w, v] : acc) m.set(w, x, v);
  }
  return m;
}

inline GradedMatrix change_of_basis(const OrientSeq& S, Side side, Framework fw) {
  if (fw == Framework::rt) return change_of_basis(S, side, fw, VarContext::single_q(), std::vector<int>(S.n + 1, 0));
  std::vector<int> v(S.n + 1, 0);
  for (int j = 1; j <= S.n; ++j) v[j] = j - 1;
  return change_of_basis(S, side, fw, point_context(S.n), v);
}

}  // namespace tangle
