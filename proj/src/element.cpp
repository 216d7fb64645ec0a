#include "koszul/element.hpp"

#include <algorithm>
#include <sstream>

namespace koszul {

int Monomial::degree(const Context& ctx) const {
  int d = 0;
  for (auto [i, e] : factors) d += ctx.gen(i).degree * static_cast<int>(e);
  return d;
}

std::pair<int, int> Monomial::bidegree(const Context& ctx) const {
  int p = 0, q = 0;
  for (auto [i, e] : factors) {
    p += ctx.gen(i).p_weight * static_cast<int>(e);
    q += ctx.gen(i).q_weight * static_cast<int>(e);
  }
  return {p, q};
}

int Monomial::exponent_of(std::uint32_t index) const {
  for (auto [i, e] : factors)
    if (i == index) return static_cast<int>(e);
  return 0;
}

int Monomial::exponent_sum(const std::vector<char>& mask) const {
  int s = 0;
  for (auto [i, e] : factors)
    if (i < mask.size() && mask[i]) s += static_cast<int>(e);
  return s;
}

bool within_truncation(const Context& ctx, const Monomial& m) {
  const auto& tr = ctx.truncation();
  if (!tr) return true;
  int s = 0;
  for (auto [i, e] : m.factors)
    if (ctx.truncated_gen(i)) s += static_cast<int>(e);
  return s <= tr->bound;
}

std::pair<int, std::optional<Monomial>> normalize_monomial(
    const Context& ctx,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& factors) {
  // Insertion sort counting odd-odd transpositions; unit exponents for odd
  // generators are enforced by the collision rule.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  int sign = 1;
  for (auto [idx, exp] : factors) {
    if (idx >= ctx.size()) throw spec_error("generator index out of range");
    if (exp == 0) continue;
    bool odd = ctx.gen(idx).odd();
    if (odd && exp > 1) return {0, std::nullopt};
    // Count odd generators to the right of the insertion point.
    std::size_t pos = out.size();
    int odd_passed = 0;
    while (pos > 0 && out[pos - 1].first > idx) {
      if (ctx.gen(out[pos - 1].first).odd()) ++odd_passed;
      --pos;
    }
    if (odd && (odd_passed % 2)) sign = -sign;
    if (pos > 0 && out[pos - 1].first == idx) {
      if (odd) return {0, std::nullopt};
      out[pos - 1].second += exp;
    } else {
      out.insert(out.begin() + static_cast<std::ptrdiff_t>(pos), {idx, exp});
    }
  }
  Monomial m{std::move(out)};
  return {sign, std::move(m)};
}

std::pair<int, Monomial> monomial_product(const Context& ctx,
                                          const Monomial& a,
                                          const Monomial& b) {
  Monomial out;
  out.factors.reserve(a.factors.size() + b.factors.size());
  // Merge of sorted factor lists. When an odd factor of b is placed, the sign
  // flips once per odd factor of a that remains to its right.
  std::size_t odd_left_in_a = 0;
  std::vector<std::size_t> odd_suffix(a.factors.size() + 1, 0);
  for (std::size_t i = a.factors.size(); i-- > 0;)
    odd_suffix[i] =
        odd_suffix[i + 1] + (ctx.gen(a.factors[i].first).odd() ? 1 : 0);
  (void)odd_left_in_a;

  int sign = 1;
  std::size_t i = 0, j = 0;
  while (i < a.factors.size() || j < b.factors.size()) {
    bool take_a = j == b.factors.size() ||
                  (i < a.factors.size() &&
                   a.factors[i].first <= b.factors[j].first);
    if (take_a && j < b.factors.size() &&
        a.factors[i].first == b.factors[j].first) {
      std::uint32_t idx = a.factors[i].first;
      if (ctx.gen(idx).odd()) return {0, Monomial{}};
      out.factors.emplace_back(idx, a.factors[i].second + b.factors[j].second);
      ++i;
      ++j;
      continue;
    }
    if (take_a) {
      out.factors.push_back(a.factors[i]);
      ++i;
    } else {
      if (ctx.gen(b.factors[j].first).odd() && (odd_suffix[i] % 2))
        sign = -sign;
      out.factors.push_back(b.factors[j]);
      ++j;
    }
  }
  return {sign, std::move(out)};
}

Element Element::constant(ContextPtr ctx, const Rational& c) {
  Element e(std::move(ctx));
  e.add_term(Monomial{}, c);
  return e;
}

Element Element::generator(ContextPtr ctx, std::size_t index) {
  if (index >= ctx->size()) throw spec_error("generator index out of range");
  Element e(std::move(ctx));
  Monomial m;
  m.factors.emplace_back(static_cast<std::uint32_t>(index), 1u);
  e.add_term(m, 1);
  return e;
}

Element Element::generator(ContextPtr ctx, const std::string& name) {
  std::size_t i = ctx->index_of(name);
  return generator(std::move(ctx), i);
}

Element Element::monomial(ContextPtr ctx, const Monomial& m,
                          const Rational& c) {
  Element e(std::move(ctx));
  e.add_term(m, c);
  return e;
}

void Element::add_term(const Monomial& m, const Rational& c) {
  if (!ctx_) throw context_mismatch("element has no context");
  if (koszul::is_zero(c)) return;
  if (!within_truncation(*ctx_, m)) {
    truncated_ = true;
    return;
  }
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (koszul::is_zero(it->second)) terms_.erase(it);
  }
}

void Element::require_same_context(const Element& other) const {
  if (ctx_ && other.ctx_ && ctx_ != other.ctx_)
    throw context_mismatch("elements belong to different contexts");
}

Element& Element::operator+=(const Element& rhs) {
  require_same_context(rhs);
  if (!ctx_) ctx_ = rhs.ctx_;
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  truncated_ = truncated_ || rhs.truncated_;
  return *this;
}

Element& Element::operator-=(const Element& rhs) {
  require_same_context(rhs);
  if (!ctx_) ctx_ = rhs.ctx_;
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  truncated_ = truncated_ || rhs.truncated_;
  return *this;
}

Element Element::operator-() const {
  Element out(ctx_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  out.truncated_ = truncated_;
  return out;
}

Element operator*(const Rational& c, Element e) {
  if (is_zero(c)) {
    Element out(e.ctx_);
    out.truncated_ = e.truncated_;
    return out;
  }
  for (auto& [m, coeff] : e.terms_) coeff *= c;
  return e;
}

Element operator*(const Element& a, const Element& b) {
  a.require_same_context(b);
  Element out(a.ctx_ ? a.ctx_ : b.ctx_);
  out.truncated_ = a.truncated_ || b.truncated_;
  if (!out.ctx_) throw context_mismatch("product of context-less elements");
  const Context& ctx = *out.ctx_;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      auto [sign, m] = monomial_product(ctx, ma, mb);
      if (sign == 0) continue;
      out.add_term(m, Rational(sign) * ca * cb);
    }
  }
  return out;
}

bool Element::operator==(const Element& rhs) const {
  require_same_context(rhs);
  return terms_ == rhs.terms_;
}

std::optional<int> Element::degree() const {
  std::optional<int> d;
  for (const auto& [m, c] : terms_) {
    (void)c;
    int dm = m.degree(*ctx_);
    if (d && *d != dm) return std::nullopt;
    d = dm;
  }
  return d;
}

std::optional<std::pair<int, int>> Element::bidegree() const {
  std::optional<std::pair<int, int>> d;
  for (const auto& [m, c] : terms_) {
    (void)c;
    auto dm = m.bidegree(*ctx_);
    if (d && *d != dm) return std::nullopt;
    d = dm;
  }
  return d;
}

std::map<std::pair<int, int>, Element> Element::bidegree_components() const {
  std::map<std::pair<int, int>, Element> out;
  for (const auto& [m, c] : terms_) {
    auto key = m.bidegree(*ctx_);
    auto it = out.find(key);
    if (it == out.end()) {
      Element e(ctx_);
      e.add_term(m, c);
      out.emplace(key, std::move(e));
    } else {
      it->second.add_term(m, c);
    }
  }
  return out;
}

Rational Element::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::string Element::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational abs = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    bool coeff_shown = !(abs == 1) || m.is_constant();
    if (coeff_shown) os << koszul::to_string(abs);
    bool first_factor = true;
    for (auto [i, e] : m.factors) {
      if (!first_factor || coeff_shown) os << "*";
      os << ctx_->gen(i).name;
      if (e > 1) os << "^" << e;
      first_factor = false;
    }
  }
  if (truncated_) os << " [truncated]";
  return os.str();
}

std::string to_string(const Rational& r) { return r.get_str(); }

std::optional<Rational> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::string num = text, den = "1";
  if (auto slash = text.find('/'); slash != std::string::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  auto valid_int = [](const std::string& s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  if (!valid_int(num, true) || !valid_int(den, false)) return std::nullopt;
  if (num[0] == '+') num.erase(0, 1);
  mpz_class d(den);
  if (d == 0) return std::nullopt;
  Rational r(mpz_class(num), d);
  r.canonicalize();
  return r;
}

}  // namespace koszul
