#pragma once

#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradedring.hpp"

namespace tangle {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Positions are 1-based; bit j of `up` is set iff position j points up.
struct OrientSeq {
  int n = 0;
  std::uint64_t up = 0;

  bool is_up(int j) const { return (up >> j) & 1u; }
  bool operator==(const OrientSeq&) const = default;

  std::string str() const {
    std::string s;
    for (int j = 1; j <= n; ++j) s += is_up(j) ? '+' : '-';
    return s;
  }
};

// Orientation of the two strands at positions (i, i+1), first letter = i.
enum class CrossPattern { UU, UD, DU, DD };
enum class Sign { pos, neg };
enum class ExtPattern { lr, rl };
enum class EventKind { pos_cross, neg_cross, max, min, terminal };

inline CrossPattern pattern_at(const OrientSeq& s, int i) {
  bool a = s.is_up(i), b = s.is_up(i + 1);
  if (a && b) return CrossPattern::UU;
  if (a) return CrossPattern::UD;
  if (b) return CrossPattern::DU;
  return CrossPattern::DD;
}

inline CrossPattern swap_pattern(CrossPattern p) {
  if (p == CrossPattern::UD) return CrossPattern::DU;
  if (p == CrossPattern::DU) return CrossPattern::UD;
  return p;
}

inline const char* to_string(CrossPattern p) {
  switch (p) {
    case CrossPattern::UU: return "UU";
    case CrossPattern::UD: return "UD";
    case CrossPattern::DU: return "DU";
    default: return "DD";
  }
}
inline const char* to_string(Sign s) { return s == Sign::pos ? "pos" : "neg"; }
inline const char* to_string(ExtPattern p) { return p == ExtPattern::lr ? "lr" : "rl"; }

inline bool is_crossing(EventKind k) { return k == EventKind::pos_cross || k == EventKind::neg_cross; }

// A crossing's `cross` is the orientation pattern at (i, i+1) on the lower
// (outgoing) level; extrema carry `pattern`.
struct Event {
  EventKind kind = EventKind::pos_cross;
  int index = 0;
  ExtPattern pattern = ExtPattern::lr;
  CrossPattern cross = CrossPattern::UU;
  int line = 0;

  Sign sign() const { return kind == EventKind::neg_cross ? Sign::neg : Sign::pos; }

  std::string str() const {
    switch (kind) {
      case EventKind::pos_cross: return "xp " + std::to_string(index);
      case EventKind::neg_cross: return "xn " + std::to_string(index);
      case EventKind::max: return "max " + std::to_string(index) + " " + to_string(pattern);
      case EventKind::min: return "min " + std::to_string(index) + " " + to_string(pattern);
      default: return std::string("term ") + to_string(pattern);
    }
  }
};

// Legs of a max read (up,down) for lr; legs of a min or terminal read (down,up) for lr.
inline bool left_leg_up(EventKind k, ExtPattern p) {
  bool lr = p == ExtPattern::lr;
  return k == EventKind::max ? lr : !lr;
}

inline ExtPattern pattern_for_legs(EventKind k, bool left_up) {
  if (k == EventKind::max) return left_up ? ExtPattern::lr : ExtPattern::rl;
  return left_up ? ExtPattern::rl : ExtPattern::lr;
}

inline std::uint64_t low_bits(int upto) {  // bits 0..upto
  return upto < 0 ? 0 : (upto >= 63 ? ~0ull : ((1ull << (upto + 1)) - 1));
}

// One event between two levels.
struct Slice {
  Event event;
  OrientSeq above, below;
};

// Applies an event to the orientation above it; throws ParseError on violations.
inline Slice make_slice(Event e, const OrientSeq& above, bool allow_terminal = true) {
  Slice s{e, above, above};
  const int n = above.n;
  auto fail = [&](const std::string& m) -> void { throw ParseError(e.line, m); };
  switch (e.kind) {
    case EventKind::pos_cross:
    case EventKind::neg_cross: {
      if (e.index < 1 || e.index > n - 1) fail("crossing index " + std::to_string(e.index) + " out of range for " + std::to_string(n) + " strands");
      const int i = e.index;
      std::uint64_t u = above.up & ~((1ull << i) | (1ull << (i + 1)));
      if (above.is_up(i)) u |= 1ull << (i + 1);
      if (above.is_up(i + 1)) u |= 1ull << i;
      s.below = OrientSeq{n, u};
      s.event.cross = pattern_at(s.below, i);
      break;
    }
    case EventKind::max: {
      if (e.index < 0 || e.index > n) fail("max index " + std::to_string(e.index) + " out of range for " + std::to_string(n) + " strands");
      if (n + 2 > 62) fail("too many strands");
      const int i = e.index;
      std::uint64_t lo = above.up & low_bits(i);
      std::uint64_t hi = (above.up & ~low_bits(i)) << 2;
      std::uint64_t pair = left_leg_up(e.kind, e.pattern) ? (1ull << (i + 1)) : (1ull << (i + 2));
      s.below = OrientSeq{n + 2, lo | hi | pair};
      break;
    }
    case EventKind::min:
    case EventKind::terminal: {
      const int i = e.kind == EventKind::terminal ? 0 : e.index;
      if (e.kind == EventKind::terminal) {
        if (!allow_terminal) fail("terminal minimum is only allowed in closed diagrams");
        if (n != 2) fail("terminal requires exactly 2 strands, found " + std::to_string(n));
      } else if (i < 0 || i > n - 2) {
        fail("min index " + std::to_string(i) + " out of range for " + std::to_string(n) + " strands");
      }
      bool a = above.is_up(i + 1), b = above.is_up(i + 2);
      if (a == b) fail("orientation mismatch: matched strands point the same way");
      if (a != left_leg_up(e.kind, e.pattern)) fail("orientation mismatch: pattern " + std::string(to_string(e.pattern)) + " contradicts propagated orientations");
      std::uint64_t lo = above.up & low_bits(i);
      std::uint64_t hi = (above.up & ~low_bits(i + 2)) >> 2;
      s.below = OrientSeq{n - 2, lo | hi};
      break;
    }
  }
  return s;
}

class TangleDiagram {
 public:
  bool closed = false;  // no header; starts at n = 0
  OrientSeq top;
  std::vector<Event> events;
  std::vector<OrientSeq> levels;        // levels[k] sits above events[k]
  std::vector<std::vector<int>> kappa;  // kappa[level][position] -> component, position 1-based
  int components = 0;

  bool has_terminal() const { return !events.empty() && events.back().kind == EventKind::terminal; }
  Slice slice(std::size_t k) const { return Slice{events.at(k), levels.at(k), levels.at(k + 1)}; }

  // Context with one strand variable per component.
  Ctx component_context() const {
    std::vector<std::string> names;
    if (components == 1) names.push_back("t");
    else
      for (int c = 1; c <= components; ++c) names.push_back("t" + std::to_string(c));
    return VarContext::make(names, VarRole::strand);
  }
};

namespace detail {

struct UnionFind {
  std::vector<int> p;
  int add() {
    p.push_back(static_cast<int>(p.size()));
    return p.back();
  }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> t;
  for (std::string w; in >> w;) t.push_back(w);
  return t;
}

inline int parse_int(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "expected integer, found '" + s + "'");
  }
}

inline ExtPattern parse_pattern(const std::string& s, int line) {
  if (s == "lr") return ExtPattern::lr;
  if (s == "rl") return ExtPattern::rl;
  throw ParseError(line, "expected lr or rl, found '" + s + "'");
}

}  // namespace detail

// Connects boundary points through the events; components are numbered by
// first appearance, scanning levels top to bottom and positions left to right.
inline void compute_components(TangleDiagram& d) {
  detail::UnionFind uf;
  std::vector<std::vector<int>> id(d.levels.size());
  for (std::size_t l = 0; l < d.levels.size(); ++l) {
    id[l].assign(d.levels[l].n + 1, -1);
    for (int j = 1; j <= d.levels[l].n; ++j) id[l][j] = uf.add();
  }
  for (std::size_t k = 0; k < d.events.size(); ++k) {
    const Event& e = d.events[k];
    const auto& a = id[k];
    const auto& b = id[k + 1];
    const int n = d.levels[k].n;
    const int i = e.index;
    switch (e.kind) {
      case EventKind::pos_cross:
      case EventKind::neg_cross:
        for (int j = 1; j <= n; ++j) {
          int t = j == i ? i + 1 : (j == i + 1 ? i : j);
          uf.unite(a[j], b[t]);
        }
        break;
      case EventKind::max:
        for (int j = 1; j <= n; ++j) uf.unite(a[j], b[j <= i ? j : j + 2]);
        uf.unite(b[i + 1], b[i + 2]);
        break;
      case EventKind::min:
        uf.unite(a[i + 1], a[i + 2]);
        for (int j = 1; j <= n; ++j)
          if (j <= i || j >= i + 3) uf.unite(a[j], b[j <= i ? j : j - 2]);
        break;
      case EventKind::terminal:
        uf.unite(a[1], a[2]);
        break;
    }
  }
  std::vector<int> label(uf.p.size(), -1);
  int next = 0;
  d.kappa.assign(d.levels.size(), {});
  for (std::size_t l = 0; l < d.levels.size(); ++l) {
    d.kappa[l].assign(d.levels[l].n + 1, -1);
    for (int j = 1; j <= d.levels[l].n; ++j) {
      int r = uf.find(id[l][j]);
      if (label[r] < 0) label[r] = next++;
      d.kappa[l][j] = label[r];
    }
  }
  d.components = next;
}

// Builds and validates a diagram from a top orientation and an event list.
inline TangleDiagram build_diagram(bool closed, OrientSeq top, std::vector<Event> events) {
  TangleDiagram d;
  d.closed = closed;
  d.top = top;
  d.levels.push_back(top);
  for (std::size_t k = 0; k < events.size(); ++k) {
    if (events[k].kind == EventKind::terminal && k + 1 != events.size())
      throw ParseError(events[k].line, "terminal must be the last event");
    Slice s = make_slice(events[k], d.levels.back(), closed);
    d.events.push_back(s.event);
    d.levels.push_back(s.below);
  }
  compute_components(d);
  return d;
}

inline TangleDiagram parse_diagram(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  bool header = false, seen_event = false;
  OrientSeq top;
  std::vector<Event> events;
  while (std::getline(in, raw)) {
    ++line;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    auto tok = detail::split_ws(raw);
    if (tok.empty()) continue;
    const std::string& w = tok[0];
    auto want = [&](std::size_t k) {
      if (tok.size() != k) throw ParseError(line, "wrong number of fields for '" + w + "'");
    };
    if (w == "top") {
      if (header || seen_event) throw ParseError(line, "header must come first and only once");
      if (tok.size() < 3 || tok.size() > 4 || tok[2] != "orient") throw ParseError(line, "expected 'top <n> orient <signs>'");
      int n = detail::parse_int(tok[1], line);
      if (n < 0 || n > 60) throw ParseError(line, "strand count out of range");
      std::string o = tok.size() == 4 ? tok[3] : "";
      if (static_cast<int>(o.size()) != n) throw ParseError(line, "orientation string length differs from strand count");
      top.n = n;
      for (int j = 1; j <= n; ++j) {
        char c = o[j - 1];
        if (c == '+') top.up |= 1ull << j;
        else if (c != '-') throw ParseError(line, "orientation must use + and -");
      }
      header = true;
      continue;
    }
    Event e;
    e.line = line;
    if (w == "xp" || w == "xn") {
      want(2);
      e.kind = w == "xp" ? EventKind::pos_cross : EventKind::neg_cross;
      e.index = detail::parse_int(tok[1], line);
    } else if (w == "max" || w == "min") {
      want(3);
      e.kind = w == "max" ? EventKind::max : EventKind::min;
      e.index = detail::parse_int(tok[1], line);
      e.pattern = detail::parse_pattern(tok[2], line);
    } else if (w == "term") {
      want(2);
      e.kind = EventKind::terminal;
      e.pattern = detail::parse_pattern(tok[1], line);
    } else {
      throw ParseError(line, "unknown keyword '" + w + "'");
    }
    seen_event = true;
    events.push_back(e);
  }
  return build_diagram(!header, top, std::move(events));
}

// Rotation plus orientation reversal on one event.
inline Event tilde_event(const Event& e) {
  Event r = e;
  switch (e.kind) {
    case EventKind::pos_cross:
    case EventKind::neg_cross:
      r.cross = swap_pattern(e.cross);
      break;
    case EventKind::max:
      r.kind = EventKind::min;
      break;
    case EventKind::min:
      r.kind = EventKind::max;
      break;
    case EventKind::terminal:
      throw std::invalid_argument("the terminal minimum has no rotated counterpart");
  }
  return r;
}

enum class LevelSide { above, below };

inline Ctx point_context(int n) {
  std::vector<std::string> names;
  for (int j = 1; j <= n; ++j) names.push_back("t" + std::to_string(j));
  return VarContext::make(names, VarRole::point);
}

// Strand variables of a one-event slab: through strands are named by their
// position on the upper side of a crossing or the short side of an extremum;
// the critical strand of an extremum is `t`.
inline Ctx slab_context(const Slice& s) {
  const Event& e = s.event;
  if (is_crossing(e.kind)) return point_context(s.above.n);
  int through = std::min(s.above.n, s.below.n);
  std::vector<std::string> names;
  for (int j = 1; j <= through; ++j) names.push_back("t" + std::to_string(j));
  names.push_back("t");
  return VarContext::make(names, VarRole::strand);
}

// Position -> slab variable index on one side of the slice (index 0 unused).
inline std::vector<int> slab_positions(const Slice& s, LevelSide side) {
  const Event& e = s.event;
  const int i = e.index;
  const OrientSeq& lv = side == LevelSide::above ? s.above : s.below;
  std::vector<int> v(lv.n + 1, -1);
  if (is_crossing(e.kind)) {
    for (int j = 1; j <= lv.n; ++j) v[j] = j - 1;
    if (side == LevelSide::below) std::swap(v[i], v[i + 1]);
    return v;
  }
  const int through = std::min(s.above.n, s.below.n);
  const bool long_side = lv.n > through;
  for (int j = 1; j <= lv.n; ++j) {
    if (!long_side) v[j] = j - 1;
    else if (j == i + 1 || j == i + 2) v[j] = through;
    else v[j] = (j <= i ? j : j - 2) - 1;
  }
  return v;
}

inline VarMap strand_map(const Slice& s, LevelSide side) {
  const OrientSeq& lv = side == LevelSide::above ? s.above : s.below;
  VarMap m(point_context(lv.n), slab_context(s));
  auto pos = slab_positions(s, side);
  for (int j = 1; j <= lv.n; ++j) m.send(j - 1, pos[j]);
  return m;
}

inline VarMap strand_map(const TangleDiagram& d, std::size_t event_index, LevelSide side) {
  if (event_index >= d.events.size()) throw std::out_of_range("invalid level");
  if (d.events[event_index].kind == EventKind::terminal) throw std::out_of_range("terminal has no slab variables");
  return strand_map(d.slice(event_index), side);
}

}  // namespace tangle
