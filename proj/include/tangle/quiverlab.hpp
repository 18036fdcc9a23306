#pragma once

#include <deque>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "gradedring.hpp"

namespace tangle::quiver {

// Two vertices: a carries the dot in the first region, b in the second.
enum class Vertex { a, b };

// Letters: R = R2 (b->a), L = L2 (a->b), C = C1 (loop at b), T = C1 tilde and
// U = U1 (loops at a). Words compose right to left.
struct GenInfo {
  char letter;
  Vertex source, target;
  int maslov;
  std::int64_t intrinsic;  // quarter units of e
};

inline const std::vector<GenInfo>& generators() {
  static const std::vector<GenInfo> g = {
      {'R', Vertex::b, Vertex::a, 0, 2},  {'L', Vertex::a, Vertex::b, 0, 2},   {'C', Vertex::b, Vertex::b, 1, -4},
      {'T', Vertex::a, Vertex::a, 1, -4}, {'U', Vertex::a, Vertex::a, 2, -4},
  };
  return g;
}

inline const GenInfo& gen(char c) {
  for (const auto& g : generators())
    if (g.letter == c) return g;
  throw std::invalid_argument(std::string("unknown quiver generator '") + c + "'");
}

class QuiverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuiverMonomial {
  std::string word;  // empty word is the idempotent at `source`
  Vertex source = Vertex::a, target = Vertex::a;
  int maslov = 0;
  QExp intrinsic;

  static QuiverMonomial idempotent(Vertex v) { return {"", v, v, 0, QExp{}}; }

  std::string str() const {
    if (word.empty()) return source == Vertex::a ? "e_a" : "e_b";
    static const std::map<char, std::string> names = {{'R', "R2"}, {'L', "L2"}, {'C', "C1"}, {'T', "C1~"}, {'U', "U1"}};
    std::string s;
    for (char c : word) s += names.at(c);
    return s;
  }
  auto operator<=>(const QuiverMonomial& o) const { return std::tie(source, word) <=> std::tie(o.source, o.word); }
  bool operator==(const QuiverMonomial& o) const { return source == o.source && word == o.word; }
};

// Composable word starting (rightmost letter) at `source`; nullopt if not a path.
inline std::optional<QuiverMonomial> make_monomial(const std::string& w, Vertex source) {
  QuiverMonomial m{w, source, source, 0, QExp{}};
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const GenInfo& g = gen(*it);
    if (g.source != m.target) return std::nullopt;
    m.target = g.target;
    m.maslov += g.maslov;
    m.intrinsic = m.intrinsic + QExp::quarters(g.intrinsic);
  }
  return m;
}

// Relations, plus LRC -> CLR which follows from them and completes the system.
struct Rule {
  std::string lhs;
  std::optional<std::string> rhs;  // nullopt: the word is zero
};

inline const std::vector<Rule>& rules() {
  static const std::vector<Rule> r = {
      {"CC", std::nullopt}, {"TT", std::nullopt}, {"TR", "RC"},        {"LT", "CL"},
      {"UT", "TU"},         {"UR", std::nullopt}, {"LU", std::nullopt}, {"LRC", "CLR"},
  };
  return r;
}

enum class Strategy { leftmost, rightmost };

// One rewriting step at the chosen redex; returns false if the word is normal.
inline bool rewrite_once(std::optional<std::string>& w, Strategy s) {
  if (!w) return false;
  std::size_t best = std::string::npos;
  const Rule* rule = nullptr;
  for (const auto& r : rules()) {
    std::size_t p = s == Strategy::leftmost ? w->find(r.lhs) : w->rfind(r.lhs);
    if (p == std::string::npos) continue;
    if (!rule || (s == Strategy::leftmost ? p < best : p > best)) {
      best = p;
      rule = &r;
    }
  }
  if (!rule) return false;
  if (!rule->rhs) w.reset();
  else w->replace(best, rule->lhs.size(), *rule->rhs);
  return true;
}

inline std::optional<std::string> normal_form(const std::string& word, Strategy s = Strategy::leftmost) {
  std::optional<std::string> w = word;
  for (std::size_t steps = 0; rewrite_once(w, s); ++steps)
    if (steps > 64 * (word.size() + 1) * (word.size() + 1)) throw QuiverError("rewriting does not terminate on " + word);
  return w;
}

// Every normal form reachable from `word` by any choice of redexes ("0" for zero).
inline std::set<std::string> all_normal_forms(const std::string& word) {
  std::set<std::string> out, seen;
  std::deque<std::string> todo{word};
  while (!todo.empty()) {
    std::string w = todo.front();
    todo.pop_front();
    if (!seen.insert(w).second) continue;
    bool reducible = false;
    for (const auto& r : rules())
      for (std::size_t p = w.find(r.lhs); p != std::string::npos; p = w.find(r.lhs, p + 1)) {
        reducible = true;
        if (!r.rhs) out.insert("0");
        else todo.push_back(std::string(w).replace(p, r.lhs.size(), *r.rhs));
      }
    if (!reducible) out.insert(w);
  }
  return out;
}

// Checks that all composable words up to max_len have a unique normal form.
inline std::vector<std::string> confluence_failures(std::size_t max_len) {
  std::vector<std::string> bad;
  std::vector<std::string> layer = {""};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::string> next;
    for (const auto& w : layer)
      for (const auto& g : generators()) next.push_back(g.letter + w);
    for (const auto& w : next) {
      bool path = make_monomial(w, Vertex::a) || make_monomial(w, Vertex::b);
      if (path && all_normal_forms(w).size() != 1) bad.push_back(w);
    }
    layer = std::move(next);
  }
  return bad;
}

// Normal-form basis families of the two projectives, with the power k.
struct Family {
  Vertex source;
  std::string name;
  std::regex pattern;
};

inline const std::vector<Family>& families() {
  static const std::vector<Family> f = {
      {Vertex::a, "e_a", std::regex("")},
      {Vertex::a, "U1^(k+1)", std::regex("U+")},
      {Vertex::a, "C1~ U1^k", std::regex("TU*")},
      {Vertex::a, "(R2L2)^(k+1)", std::regex("(RL)+")},
      {Vertex::a, "L2(R2L2)^k", std::regex("L(RL)*")},
      {Vertex::a, "C1L2(R2L2)^k", std::regex("CL(RL)*")},
      {Vertex::a, "R2C1L2(R2L2)^k", std::regex("RCL(RL)*")},
      {Vertex::b, "e_b", std::regex("")},
      {Vertex::b, "(L2R2)^(k+1)", std::regex("(LR)+")},
      {Vertex::b, "R2(L2R2)^k", std::regex("R(LR)*")},
      {Vertex::b, "C1(L2R2)^k", std::regex("C(LR)*")},
      {Vertex::b, "R2C1(L2R2)^k", std::regex("RC(LR)*")},
  };
  return f;
}

inline std::optional<std::string> family_of(const QuiverMonomial& m) {
  for (const auto& f : families())
    if (f.source == m.source && std::regex_match(m.word, f.pattern)) return f.name;
  return std::nullopt;
}

// Normal-form words starting at `source` with |intrinsic| <= cutoff quarters.
inline std::vector<QuiverMonomial> words_from(Vertex source, std::int64_t cutoff) {
  if (cutoff < 0) throw QuiverError("cutoff must be non-negative");
  const std::int64_t reach = cutoff + 8;
  std::set<QuiverMonomial> seen;
  std::deque<QuiverMonomial> todo{QuiverMonomial::idempotent(source)};
  while (!todo.empty()) {
    QuiverMonomial m = todo.front();
    todo.pop_front();
    if (!seen.insert(m).second) continue;
    for (const auto& g : generators()) {
      auto nf = normal_form(g.letter + m.word);
      if (!nf) continue;
      auto n = make_monomial(*nf, source);
      if (!n || std::abs(n->intrinsic.value) > reach || n->word.size() > static_cast<std::size_t>(reach + 4)) continue;
      todo.push_back(*n);
    }
  }
  std::vector<QuiverMonomial> out;
  for (const auto& m : seen)
    if (std::abs(m.intrinsic.value) <= cutoff) out.push_back(m);
  return out;
}

inline std::vector<QuiverMonomial> quiver_basis(std::int64_t cutoff) {
  auto a = words_from(Vertex::a, cutoff), b = words_from(Vertex::b, cutoff);
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// ---- the module Omega: words w.x with x at vertex a ----

using Chain = std::set<std::string>;  // F2 combination of normal-form words

inline void add_word(Chain& c, const std::optional<std::string>& w) {
  if (!w) return;
  if (!c.erase(*w)) c.insert(*w);
}

// d(w.x) = d(w).x + w R2 C1 L2 . x, with d(C1~) = U1.
inline Chain omega_differential(const std::string& w) {
  Chain out;
  for (std::size_t p = 0; p < w.size(); ++p)
    if (w[p] == 'T') add_word(out, normal_form(std::string(w).replace(p, 1, "U")));
  add_word(out, normal_form(w + "RCL"));
  return out;
}

inline Chain omega_differential(const Chain& c) {
  Chain out;
  for (const auto& w : c)
    for (const auto& t : omega_differential(w)) add_word(out, t);
  return out;
}

inline int f2_rank(std::vector<std::vector<std::uint8_t>> m) {
  int rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(m.size()); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && !m[piv][c]) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r)
      if (r != static_cast<std::size_t>(rank) && m[r][c])
        for (std::size_t k = 0; k < cols; ++k) m[r][k] ^= m[rank][k];
    ++rank;
  }
  return rank;
}

constexpr std::int64_t kBoundaryMargin = 4;  // one full step of e
constexpr std::int64_t kMinCutoff = 8;

struct Bidegree {
  int maslov;
  std::int64_t intrinsic;  // quarter units
  auto operator<=>(const Bidegree&) const = default;
};

struct HomologyTable {
  std::int64_t cutoff = 0;
  std::size_t module_dim = 0;
  std::map<std::string, std::size_t> family_counts;
  std::map<Bidegree, int> interior;  // nonzero ranks with |intrinsic| <= cutoff - margin
  std::map<Bidegree, int> boundary;  // nonzero ranks near the cutoff, not trusted
  bool d_squared_zero = true;
  std::vector<std::string> generators;  // basis words that represent classes alone

  int interior_total() const {
    int t = 0;
    for (const auto& [_, r] : interior) t += r;
    return t;
  }
};

inline HomologyTable omega_homology(std::int64_t cutoff) {
  if (cutoff < kMinCutoff)
    throw QuiverError("cutoff " + std::to_string(cutoff) + " is too small: the window must reach " +
                      std::to_string(kMinCutoff) + " quarter units to hold C1L2.x with margin");
  HomologyTable h;
  h.cutoff = cutoff;
  auto basis = words_from(Vertex::a, cutoff);
  h.module_dim = basis.size();
  std::map<Bidegree, std::vector<std::string>> pieces;
  for (const auto& m : basis) {
    pieces[{m.maslov, m.intrinsic.value}].push_back(m.word);
    ++h.family_counts[family_of(m).value_or("other")];
  }
  auto index_in = [&](const Bidegree& b, const std::string& w) -> int {
    auto it = pieces.find(b);
    if (it == pieces.end()) return -1;
    auto f = std::find(it->second.begin(), it->second.end(), w);
    return f == it->second.end() ? -1 : static_cast<int>(f - it->second.begin());
  };
  // Matrix of d from piece b to piece (maslov+1, same intrinsic).
  auto dmatrix = [&](const Bidegree& b) {
    Bidegree t{b.maslov + 1, b.intrinsic};
    std::size_t rows = pieces.count(t) ? pieces[t].size() : 0;
    std::vector<std::vector<std::uint8_t>> m(rows, std::vector<std::uint8_t>(pieces[b].size(), 0));
    for (std::size_t c = 0; c < pieces[b].size(); ++c)
      for (const auto& w : omega_differential(pieces[b][c])) {
        int r = index_in(t, w);
        if (r < 0) throw QuiverError("differential leaves the degree window at " + w);
        m[r][c] = 1;
      }
    return m;
  };
  for (auto& [b, words] : pieces) {
    for (const auto& w : words)
      if (!omega_differential(omega_differential(w)).empty()) h.d_squared_zero = false;
    Bidegree below{b.maslov - 1, b.intrinsic};
    int out_rank = f2_rank(dmatrix(b));
    int in_rank = pieces.count(below) ? f2_rank(dmatrix(below)) : 0;
    int rank = static_cast<int>(words.size()) - out_rank - in_rank;
    if (rank == 0) continue;
    (std::abs(b.intrinsic) <= cutoff - kBoundaryMargin ? h.interior : h.boundary)[b] = rank;
    if (std::abs(b.intrinsic) > cutoff - kBoundaryMargin) continue;
    // A basis word is a representative if it is a cycle and not a boundary.
    for (const auto& w : words) {
      if (!omega_differential(w).empty()) continue;
      auto im = pieces.count(below) ? dmatrix(below) : std::vector<std::vector<std::uint8_t>>(words.size());
      int r0 = f2_rank(im);
      int col = index_in(b, w);
      for (std::size_t r = 0; r < im.size(); ++r) im[r].push_back(static_cast<std::size_t>(col) == r ? 1 : 0);
      if (f2_rank(im) > r0) h.generators.push_back(w);
    }
  }
  return h;
}

inline std::string word_name(const std::string& w) {
  auto m = make_monomial(w, Vertex::a);
  return m ? m->str() : w;
}

}  // namespace tangle::quiver
