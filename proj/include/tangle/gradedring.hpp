#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tangle {

using Coeff = mpz_class;

class RingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw RingError("exponent overflow");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw RingError("exponent overflow");
  return r;
}

// Exponent in quarter-units: actual exponent is value/4.
struct QExp {
  std::int64_t value = 0;

  static QExp quarters(std::int64_t v) { return QExp{v}; }
  static QExp whole(std::int64_t v) { return QExp{checked_mul(v, 4)}; }

  QExp operator+(QExp o) const { return QExp{checked_add(value, o.value)}; }
  QExp operator-() const { return QExp{checked_mul(value, -1)}; }
  QExp operator-(QExp o) const { return *this + (-o); }
  auto operator<=>(const QExp&) const = default;
};

enum class VarRole { point, strand, single, local };

class VarContext;
using Ctx = std::shared_ptr<const VarContext>;

class VarContext {
 public:
  VarContext(std::vector<std::string> names, VarRole role, int display_divisor = 4)
      : names_(std::move(names)), role_(role), divisor_(display_divisor) {
    for (std::size_t a = 0; a < names_.size(); ++a)
      for (std::size_t b = a + 1; b < names_.size(); ++b)
        if (names_[a] == names_[b]) throw RingError("duplicate variable " + names_[a]);
  }

  static Ctx make(std::vector<std::string> names, VarRole role) {
    return std::make_shared<const VarContext>(std::move(names), role);
  }

  // Single variable t; exponents displayed in units of t.
  static const Ctx& single_t() {
    static const Ctx c = std::make_shared<const VarContext>(std::vector<std::string>{"t"}, VarRole::single, 4);
    return c;
  }
  // Same ring as single_t, displayed in q = t^(1/2).
  static const Ctx& single_q() {
    static const Ctx c = std::make_shared<const VarContext>(std::vector<std::string>{"q"}, VarRole::single, 2);
    return c;
  }
  static const Ctx& constants() {
    static const Ctx c = std::make_shared<const VarContext>(std::vector<std::string>{}, VarRole::local, 4);
    return c;
  }

  std::size_t arity() const { return names_.size(); }
  const std::string& name(std::size_t k) const { return names_.at(k); }
  const std::vector<std::string>& names() const { return names_; }
  VarRole role() const { return role_; }
  int display_divisor() const { return divisor_; }

  std::optional<std::size_t> index_of(const std::string& n) const {
    for (std::size_t k = 0; k < names_.size(); ++k)
      if (names_[k] == n) return k;
    return std::nullopt;
  }

 private:
  std::vector<std::string> names_;
  VarRole role_;
  int divisor_;
};

inline bool same_ring(const Ctx& a, const Ctx& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->role() == VarRole::single && b->role() == VarRole::single) return true;
  return a->names() == b->names();
}

inline std::string format_exponent(std::int64_t num, std::int64_t den) {
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  num /= g;
  den /= g;
  if (den == 1) return num == 1 ? "" : "^" + std::to_string(num);
  return "^(" + std::to_string(num) + "/" + std::to_string(den) + ")";
}

// Sparse Laurent polynomial with quarter-integer exponents. Terms are stored
// sorted lexicographically by exponent vector with nonzero coefficients.
class QuarterLaurent {
 public:
  QuarterLaurent() : ctx_(VarContext::constants()) {}
  explicit QuarterLaurent(Ctx ctx) : ctx_(std::move(ctx)) {}

  static QuarterLaurent constant(const Ctx& ctx, const Coeff& c) {
    QuarterLaurent p(ctx);
    if (c != 0) {
      p.exps_.assign(ctx->arity(), 0);
      p.coefs_.push_back(c);
    }
    return p;
  }

  static QuarterLaurent monomial(const Ctx& ctx, const Coeff& c, std::vector<std::int64_t> quarters) {
    if (quarters.size() != ctx->arity()) throw RingError("exponent vector length mismatch");
    QuarterLaurent p(ctx);
    if (c != 0) {
      p.exps_ = std::move(quarters);
      p.coefs_.push_back(c);
    }
    return p;
  }

  // c * var^(quarters/4)
  static QuarterLaurent var(const Ctx& ctx, std::size_t k, std::int64_t quarters, const Coeff& c = 1) {
    std::vector<std::int64_t> e(ctx->arity(), 0);
    e.at(k) = quarters;
    return monomial(ctx, c, std::move(e));
  }

  const Ctx& context() const { return ctx_; }
  std::size_t arity() const { return ctx_->arity(); }
  std::size_t size() const { return coefs_.size(); }
  bool is_zero() const { return coefs_.empty(); }
  std::span<const std::int64_t> exps(std::size_t t) const {
    return {exps_.data() + t * arity(), arity()};
  }
  const Coeff& coeff(std::size_t t) const { return coefs_[t]; }

  bool is_unit_monomial() const {
    return size() == 1 && (coefs_[0] == 1 || coefs_[0] == -1);
  }

  QuarterLaurent unit_inverse() const {
    if (!is_unit_monomial()) throw RingError("not a unit monomial");
    std::vector<std::int64_t> e(exps_.size());
    for (std::size_t k = 0; k < e.size(); ++k) e[k] = checked_mul(exps_[k], -1);
    return monomial(ctx_, coefs_[0], std::move(e));
  }

  // Coefficient of the monomial with the given exponents.
  Coeff coefficient(std::span<const std::int64_t> e) const {
    for (std::size_t t = 0; t < size(); ++t)
      if (std::equal(e.begin(), e.end(), exps(t).begin())) return coefs_[t];
    return 0;
  }

  QuarterLaurent with_context(const Ctx& c) const {
    if (!same_ring(c, ctx_) && !(ctx_->arity() == 0 && c)) throw RingError("context mismatch");
    if (ctx_->arity() == 0 && c->arity() != 0) return constant(c, is_zero() ? Coeff(0) : coefs_[0]);
    QuarterLaurent r = *this;
    r.ctx_ = c;
    return r;
  }

  QuarterLaurent operator-() const {
    QuarterLaurent r = *this;
    for (auto& c : r.coefs_) c = -c;
    return r;
  }

  friend QuarterLaurent operator+(const QuarterLaurent& a, const QuarterLaurent& b) {
    auto [x, y] = align(a, b);
    QuarterLaurent r(x.ctx_);
    const std::size_t n = x.arity();
    std::size_t i = 0, j = 0;
    r.exps_.reserve((x.size() + y.size()) * n);
    r.coefs_.reserve(x.size() + y.size());
    while (i < x.size() || j < y.size()) {
      int cmp;
      if (i == x.size()) cmp = 1;
      else if (j == y.size()) cmp = -1;
      else cmp = compare(x.exps(i), y.exps(j));
      if (cmp < 0) {
        r.push(x.exps(i), x.coefs_[i]);
        ++i;
      } else if (cmp > 0) {
        r.push(y.exps(j), y.coefs_[j]);
        ++j;
      } else {
        Coeff s = x.coefs_[i] + y.coefs_[j];
        if (s != 0) r.push(x.exps(i), s);
        ++i;
        ++j;
      }
    }
    return r;
  }

  friend QuarterLaurent operator-(const QuarterLaurent& a, const QuarterLaurent& b) { return a + (-b); }

  friend QuarterLaurent operator*(const QuarterLaurent& a, const QuarterLaurent& b) {
    auto [x, y] = align(a, b);
    if (x.is_zero() || y.is_zero()) return QuarterLaurent(x.ctx_);
    if (x.size() > y.size()) std::swap(x, y);
    const std::size_t n = x.arity();
    if (x.size() == 1) {
      // Shifting by a monomial preserves the term order.
      QuarterLaurent r(x.ctx_);
      r.exps_.resize(y.exps_.size());
      r.coefs_.resize(y.size());
      for (std::size_t t = 0; t < y.size(); ++t) {
        for (std::size_t k = 0; k < n; ++k)
          r.exps_[t * n + k] = checked_add(y.exps_[t * n + k], x.exps_[k]);
        r.coefs_[t] = y.coefs_[t] * x.coefs_[0];
      }
      return r;
    }
    std::vector<std::int64_t> e(x.size() * y.size() * n);
    std::vector<Coeff> c(x.size() * y.size());
    std::size_t m = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j, ++m) {
        for (std::size_t k = 0; k < n; ++k)
          e[m * n + k] = checked_add(x.exps_[i * n + k], y.exps_[j * n + k]);
        c[m] = x.coefs_[i] * y.coefs_[j];
      }
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    auto row = [&](std::size_t t) { return std::span<const std::int64_t>(e.data() + t * n, n); };
    std::sort(idx.begin(), idx.end(), [&](std::size_t p, std::size_t q) { return compare(row(p), row(q)) < 0; });
    QuarterLaurent r(x.ctx_);
    for (std::size_t s = 0; s < m;) {
      std::size_t u = s;
      Coeff acc = 0;
      while (u < m && compare(row(idx[s]), row(idx[u])) == 0) acc += c[idx[u++]];
      if (acc != 0) r.push(row(idx[s]), acc);
      s = u;
    }
    return r;
  }

  QuarterLaurent& operator+=(const QuarterLaurent& o) { return *this = *this + o; }
  QuarterLaurent& operator*=(const QuarterLaurent& o) { return *this = *this * o; }

  friend bool operator==(const QuarterLaurent& a, const QuarterLaurent& b) {
    auto [x, y] = align(a, b);
    return x.exps_ == y.exps_ && x.coefs_ == y.coefs_;
  }

  // Canonical rendering: ascending lexicographic exponent order, explicit
  // coefficients, reduced fractional exponents.
  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t t = 0; t < size(); ++t) {
      if (t) out += " + ";
      out += coefs_[t].get_str();
      for (std::size_t k = 0; k < arity(); ++k) {
        std::int64_t v = exps(t)[k];
        if (v == 0) continue;
        out += "*" + ctx_->name(k) + format_exponent(v, ctx_->display_divisor());
      }
    }
    return out;
  }

  // Human rendering for one variable: descending degree, `t - 1 + t^-1`.
  std::string pretty() const {
    if (arity() > 1) return str();
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t s = size(); s-- > 0;) {
      Coeff c = coefs_[s];
      bool neg = c < 0;
      if (neg) c = -c;
      if (s + 1 == size()) out += neg ? "-" : "";
      else out += neg ? " - " : " + ";
      std::int64_t v = arity() ? exps(s)[0] : 0;
      if (v == 0) {
        out += c.get_str();
        continue;
      }
      if (c != 1) out += c.get_str() + "*";
      out += ctx_->name(0) + format_exponent(v, ctx_->display_divisor());
    }
    return out;
  }

  std::pair<std::int64_t, std::int64_t> degree_range(std::size_t k = 0) const {
    if (is_zero()) throw RingError("degree of zero");
    std::int64_t lo = exps(0)[k], hi = lo;
    for (std::size_t t = 1; t < size(); ++t) {
      lo = std::min(lo, exps(t)[k]);
      hi = std::max(hi, exps(t)[k]);
    }
    return {lo, hi};
  }

  Coeff sum_of_coefficients() const {
    Coeff s = 0;
    for (const auto& c : coefs_) s += c;
    return s;
  }

 private:
  static int compare(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (a[k] < b[k]) return -1;
      if (a[k] > b[k]) return 1;
    }
    return 0;
  }

  static std::pair<QuarterLaurent, QuarterLaurent> align(const QuarterLaurent& a, const QuarterLaurent& b) {
    if (a.ctx_ == b.ctx_ || same_ring(a.ctx_, b.ctx_)) return {a, b.ctx_ == a.ctx_ ? b : b.with_context(a.ctx_)};
    if (a.arity() == 0) return {a.with_context(b.ctx_), b};
    if (b.arity() == 0) return {a, b.with_context(a.ctx_)};
    throw RingError("context mismatch");
  }

  void push(std::span<const std::int64_t> e, const Coeff& c) {
    exps_.insert(exps_.end(), e.begin(), e.end());
    coefs_.push_back(c);
  }

  Ctx ctx_;
  std::vector<std::int64_t> exps_;
  std::vector<Coeff> coefs_;
};

using QL = QuarterLaurent;

// Ring homomorphism determined by the image monomial of each source variable.
// Images are exponent vectors in the target context, in quarter-units, for the
// whole variable (so an image of 4 on t means x -> t).
class VarMap {
 public:
  VarMap(Ctx src, Ctx dst) : src_(std::move(src)), dst_(std::move(dst)), img_(src_->arity(), std::vector<std::int64_t>(dst_->arity(), 0)) {}

  static VarMap identity(const Ctx& c) {
    VarMap m(c, c);
    for (std::size_t k = 0; k < c->arity(); ++k) m.img_[k][k] = 4;
    return m;
  }

  // Every variable goes to t.
  static VarMap collapse(const Ctx& src, const Ctx& single = VarContext::single_t()) {
    VarMap m(src, single);
    for (std::size_t k = 0; k < src->arity(); ++k) m.img_[k][0] = 4;
    return m;
  }

  static VarMap by_names(const Ctx& src, const Ctx& dst, const std::vector<std::pair<std::string, std::string>>& pairs) {
    VarMap m(src, dst);
    for (const auto& [a, b] : pairs) {
      auto s = src->index_of(a);
      auto d = dst->index_of(b);
      if (!s) throw RingError("unknown source variable " + a);
      if (!d) throw RingError("image variable absent from target: " + b);
      m.img_[*s].assign(dst->arity(), 0);
      m.img_[*s][*d] = 4;
    }
    return m;
  }

  // Source variable k goes to target variable d.
  VarMap& send(std::size_t k, std::size_t d) {
    img_.at(k).assign(dst_->arity(), 0);
    img_.at(k).at(d) = 4;
    return *this;
  }
  VarMap& send_monomial(std::size_t k, std::vector<std::int64_t> quarters) {
    if (quarters.size() != dst_->arity()) throw RingError("image length mismatch");
    img_.at(k) = std::move(quarters);
    return *this;
  }

  const Ctx& source() const { return src_; }
  const Ctx& target() const { return dst_; }

  QuarterLaurent operator()(const QuarterLaurent& p) const {
    const Ctx& pc = p.context();
    if (pc->arity() == 0) return p.with_context(dst_);
    if (!same_ring(pc, src_)) throw RingError("context mismatch in varmap");
    QuarterLaurent r(dst_);
    const std::size_t m = dst_->arity();
    for (std::size_t t = 0; t < p.size(); ++t) {
      std::vector<std::int64_t> e(m, 0);
      auto pe = p.exps(t);
      for (std::size_t k = 0; k < pe.size(); ++k) {
        if (pe[k] == 0) continue;
        for (std::size_t d = 0; d < m; ++d) {
          if (img_[k][d] == 0) continue;
          std::int64_t num = checked_mul(pe[k], img_[k][d]);
          if (num % 4 != 0) throw RingError("image exponent leaves the quarter lattice");
          e[d] = checked_add(e[d], num / 4);
        }
      }
      r += QuarterLaurent::monomial(dst_, p.coeff(t), std::move(e));
    }
    return r;
  }

  // Composite: first this, then g.
  VarMap then(const VarMap& g) const {
    if (!same_ring(dst_, g.src_)) throw RingError("varmap composition mismatch");
    VarMap r(src_, g.dst_);
    for (std::size_t k = 0; k < src_->arity(); ++k) {
      std::vector<std::int64_t> e(g.dst_->arity(), 0);
      for (std::size_t d = 0; d < dst_->arity(); ++d) {
        if (img_[k][d] == 0) continue;
        for (std::size_t f = 0; f < g.dst_->arity(); ++f) {
          std::int64_t num = checked_mul(img_[k][d], g.img_[d][f]);
          if (num % 4 != 0) throw RingError("image exponent leaves the quarter lattice");
          e[f] = checked_add(e[f], num / 4);
        }
      }
      r.img_[k] = std::move(e);
    }
    return r;
  }

 private:
  Ctx src_, dst_;
  std::vector<std::vector<std::int64_t>> img_;
};

inline QuarterLaurent apply_varmap(const VarMap& m, const QuarterLaurent& p) { return m(p); }

enum class SingleSymbol { t, q };

// Pairing with the fundamental class: every variable goes to t.
inline QuarterLaurent collapse_single(const QuarterLaurent& p, SingleSymbol target = SingleSymbol::t) {
  const Ctx& dst = target == SingleSymbol::t ? VarContext::single_t() : VarContext::single_q();
  if (p.context()->role() == VarRole::single) return p.with_context(dst);
  return VarMap::collapse(p.context(), dst)(p);
}

// Convenience constructors in the single variable, exponents in quarter-units of t.
inline QuarterLaurent tq(std::int64_t quarters, const Coeff& c = 1) {
  return QuarterLaurent::var(VarContext::single_t(), 0, quarters, c);
}
// q^k with q = t^(1/2), rendered in q.
inline QuarterLaurent qpow(std::int64_t k, const Coeff& c = 1) {
  return QuarterLaurent::var(VarContext::single_q(), 0, checked_mul(k, 2), c);
}

}  // namespace tangle
