#include "koszul/derivation.hpp"

namespace koszul {

Derivation::Derivation(ContextPtr ctx, int degree)
    : ctx_(std::move(ctx)), degree_(degree) {
  images_.assign(ctx_->size(), Element(ctx_));
}

Derivation::Derivation(ContextPtr ctx, int degree, std::vector<Element> images)
    : ctx_(std::move(ctx)), degree_(degree), images_(std::move(images)) {
  if (images_.size() != ctx_->size())
    throw spec_error("derivation image count does not match context");
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i].context() && images_[i].context() != ctx_)
      throw context_mismatch("derivation image in foreign context");
    auto d = images_[i].degree();
    if (d && *d != ctx_->gen(i).degree + degree_)
      throw degree_error("image of '" + ctx_->gen(i).name +
                         "' has inconsistent degree");
  }
}

Derivation Derivation::partial(ContextPtr ctx, std::size_t i) {
  Derivation d(ctx, -ctx->gen(i).degree);
  d.images_[i] = Element::constant(ctx, 1);
  return d;
}

Derivation Derivation::diagonal(ContextPtr ctx, std::vector<Rational> weights) {
  if (weights.size() != ctx->size())
    throw spec_error("diagonal weight count does not match context");
  Derivation d(ctx, 0);
  for (std::size_t i = 0; i < weights.size(); ++i)
    d.images_[i] = weights[i] * Element::generator(ctx, i);
  return d;
}

Derivation Derivation::euler(ContextPtr ctx) {
  std::vector<Rational> w;
  w.reserve(ctx->size());
  for (const Generator& g : ctx->generators()) w.emplace_back(g.degree);
  return diagonal(std::move(ctx), std::move(w));
}

Derivation Derivation::exponent_euler(ContextPtr ctx,
                                      const std::vector<std::size_t>& subset) {
  std::vector<Rational> w(ctx->size(), Rational(0));
  for (std::size_t i : subset) w.at(i) = 1;
  return diagonal(std::move(ctx), std::move(w));
}

void Derivation::set_image(std::size_t i, Element e) {
  if (e.context() && e.context() != ctx_)
    throw context_mismatch("derivation image in foreign context");
  auto d = e.degree();
  if (d && *d != ctx_->gen(i).degree + degree_)
    throw degree_error("image of '" + ctx_->gen(i).name +
                       "' has inconsistent degree");
  images_[i] = std::move(e);
}

bool Derivation::is_zero() const {
  for (const Element& e : images_)
    if (!e.is_zero()) return false;
  return true;
}

Element Derivation::apply(const Element& e) const {
  if (e.context() && e.context() != ctx_)
    throw context_mismatch("derivation applied to foreign element");
  Element out(ctx_);
  for (const auto& [m, c] : e.terms()) {
    // Leibniz over the factor list. Writing the i-th term as D(g) * rest
    // (rest = the monomial with one copy of g removed), crossing the prefix
    // costs (-1)^{|g| deg(prefix)}: the |D| contributions from Leibniz and
    // from moving D(g) leftwards cancel.
    int prefix_deg = 0;
    for (std::size_t k = 0; k < m.factors.size(); ++k) {
      auto [gi, exp] = m.factors[k];
      const Element& img = images_[gi];
      if (!img.is_zero()) {
        Monomial rest;
        rest.factors.reserve(m.factors.size());
        for (std::size_t t = 0; t < m.factors.size(); ++t) {
          if (t == k) {
            if (m.factors[t].second > 1)
              rest.factors.emplace_back(gi, m.factors[t].second - 1);
          } else {
            rest.factors.push_back(m.factors[t]);
          }
        }
        int sign = (ctx_->gen(gi).odd() && is_odd(prefix_deg)) ? -1 : 1;
        Rational coeff = c * Rational(static_cast<long>(exp)) * sign;
        out += coeff * (img * Element::monomial(ctx_, rest));
      }
      prefix_deg += ctx_->gen(gi).degree * static_cast<int>(exp);
    }
  }
  if (e.truncated()) out.mark_truncated();
  return out;
}

Derivation Derivation::scaled_by(const Element& f) const {
  auto fd = f.degree();
  if (!fd && !f.is_zero())
    throw degree_error("scaling element must be homogeneous");
  int deg = degree_ + (fd ? *fd : 0);
  Derivation out(ctx_, deg);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    Element img = f * images_[i];
    if (!img.is_zero()) out.images_[i] = std::move(img);
  }
  return out;
}

Derivation& Derivation::operator+=(const Derivation& rhs) {
  if (ctx_ != rhs.ctx_)
    throw context_mismatch("derivations in different contexts");
  if (degree_ != rhs.degree_) {
    if (is_zero())
      degree_ = rhs.degree_;
    else if (!rhs.is_zero())
      throw degree_error("sum of derivations of different degrees");
  }
  for (std::size_t i = 0; i < images_.size(); ++i) images_[i] += rhs.images_[i];
  return *this;
}

Derivation& Derivation::operator-=(const Derivation& rhs) {
  return *this += -rhs;
}

Derivation Derivation::operator-() const {
  Derivation out(ctx_, degree_);
  for (std::size_t i = 0; i < images_.size(); ++i) out.images_[i] = -images_[i];
  return out;
}

Derivation operator*(const Rational& c, Derivation d) {
  for (auto& img : d.images_) img = c * img;
  return d;
}

bool Derivation::operator==(const Derivation& rhs) const {
  if (ctx_ != rhs.ctx_) return false;
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (!(images_[i] == rhs.images_[i])) return false;
  // degrees may differ only when both are zero
  return is_zero() || degree_ == rhs.degree_;
}

std::optional<std::pair<int, int>> Derivation::bidegree() const {
  std::optional<std::pair<int, int>> off;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i].is_zero()) continue;
    auto bd = images_[i].bidegree();
    if (!bd) return std::nullopt;
    const Generator& g = ctx_->gen(i);
    std::pair<int, int> o{bd->first - g.p_weight, bd->second - g.q_weight};
    if (off && *off != o) return std::nullopt;
    off = o;
  }
  return off;
}

Derivation commutator(const Derivation& d1, const Derivation& d2) {
  if (d1.context() != d2.context())
    throw context_mismatch("commutator of derivations in different contexts");
  const ContextPtr& ctx = d1.context();
  int sign = sign_pow(static_cast<long>(d1.degree()) * d2.degree());
  Derivation out(ctx, d1.degree() + d2.degree());
  for (std::size_t i = 0; i < ctx->size(); ++i) {
    Element img = d1.apply(d2.image(i)) - Rational(sign) * d2.apply(d1.image(i));
    if (!img.is_zero()) out.set_image(i, std::move(img));
  }
  return out;
}

bool is_homological(const Derivation& d) {
  if (!is_odd(d.degree())) throw degree_error("is_homological needs odd degree");
  for (std::size_t i = 0; i < d.context()->size(); ++i)
    if (!d.apply(d.image(i)).is_zero()) return false;
  return true;
}

std::vector<Derivation> exp_conjugate_series(const Derivation& n,
                                             const Derivation& d,
                                             std::size_t bound) {
  if (n.degree() != 0)
    throw degree_error("exp_conjugate requires a degree-0 derivation");
  std::vector<Derivation> terms;
  Derivation t = d;
  Rational factorial(1);
  for (std::size_t k = 0; k <= bound; ++k) {
    if (t.is_zero()) return terms;
    if (k > 0) factorial *= Rational(static_cast<long>(k));
    terms.push_back(Rational(1) / factorial * t);
    t = commutator(n, t);
  }
  throw nilpotency_error("ad_N not nilpotent within iteration bound");
}

Derivation exp_conjugate(const Derivation& n, const Derivation& d,
                         std::optional<std::size_t> bound) {
  std::size_t b = bound.value_or(n.context()->size() + 2);
  auto terms = exp_conjugate_series(n, d, b);
  Derivation out(d.context(), d.degree());
  for (const auto& t : terms) out += t;
  return out;
}

Element exp_apply(const Derivation& n, const Element& e,
                  std::optional<std::size_t> bound) {
  if (n.degree() != 0)
    throw degree_error("exp_apply requires a degree-0 derivation");
  std::size_t b = bound.value_or(n.context()->size() + 2);
  Element out(e.context() ? e.context() : n.context());
  Element t = e;
  Rational factorial(1);
  for (std::size_t k = 0; k <= b; ++k) {
    if (t.is_zero()) return out;
    if (k > 0) factorial *= Rational(static_cast<long>(k));
    out += Rational(1) / factorial * t;
    t = n.apply(t);
  }
  throw nilpotency_error("N not nilpotent on element within iteration bound");
}

Element substitute(const Element& e, const std::vector<Element>& images,
                   const ContextPtr& target) {
  Element out(target);
  for (const auto& [m, c] : e.terms()) {
    Element term = Element::constant(target, c);
    for (auto [i, exp] : m.factors)
      for (std::uint32_t k = 0; k < exp; ++k) term = term * images.at(i);
    out += term;
  }
  return out;
}

Derivation conjugate_derivation(const Derivation& d,
                                const std::vector<Element>& phi,
                                const std::vector<Element>& phi_inverse) {
  const ContextPtr& ctx = d.context();
  Derivation out(ctx, d.degree());
  for (std::size_t i = 0; i < ctx->size(); ++i) {
    Element img = substitute(d.apply(phi[i]), phi_inverse, ctx);
    if (!img.is_zero()) out.set_image(i, std::move(img));
  }
  return out;
}

}  // namespace koszul
