#include "koszul/algebroid.hpp"

#include <sstream>

namespace koszul {

AlgebroidSpec::AlgebroidSpec(ContextPtr base, std::vector<FrameInfo> frames)
    : base_(std::move(base)), frames_(std::move(frames)) {
  const std::size_t n = frames_.size();
  anchors_.assign(n, Derivation(base_, 0));
  for (std::size_t a = 0; a < n; ++a)
    anchors_[a] = Derivation(base_, frames_[a].degree);
  c_.assign(n * n * n, Element(base_));
}

void AlgebroidSpec::set_anchor(std::size_t a, Derivation rho) {
  if (rho.context() != base_)
    throw context_mismatch("anchor must act on the base context");
  if (rho.degree() != frames_[a].degree && !rho.is_zero())
    throw degree_error("anchor degree must equal the frame degree");
  anchors_[a] = std::move(rho);
}

void AlgebroidSpec::set_structure(std::size_t a, std::size_t b, std::size_t g,
                                  Element c) {
  c_at(a, b, g) = std::move(c);
}

void AlgebroidSpec::set_bracket(std::size_t a, std::size_t b, std::size_t g,
                                const Element& c) {
  c_at(a, b, g) = c;
  int sgn = sign_pow(static_cast<long>(frames_[a].degree) * frames_[b].degree);
  if (a != b) c_at(b, a, g) = Rational(-sgn) * c;
}

const Element& AlgebroidSpec::structure(std::size_t a, std::size_t b,
                                        std::size_t g) const {
  return c_[(a * frames_.size() + b) * frames_.size() + g];
}

void AlgebroidSpec::validate() const {
  const std::size_t n = frames_.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      int pa = frames_[a].degree, pb = frames_[b].degree;
      for (std::size_t g = 0; g < n; ++g) {
        const Element& c = structure(a, b, g);
        if (c.is_zero()) continue;
        auto d = c.degree();
        if (!d || *d != pa + pb - frames_[g].degree)
          throw spec_error("structure function c[" + frames_[a].label + "," +
                           frames_[b].label + "]^" + frames_[g].label +
                           " has wrong degree");
        Element mirror = structure(b, a, g) +
                         Rational(sign_pow(static_cast<long>(pa) * pb)) * c;
        if (!mirror.is_zero())
          throw spec_error("structure functions violate graded antisymmetry "
                           "on (" +
                           frames_[a].label + "," + frames_[b].label + ")");
      }
    }
  }
}

AlgebroidSpec AlgebroidSpec::lie_algebra(
    const std::vector<std::string>& labels, const std::vector<int>& degrees,
    const std::vector<std::vector<std::vector<Rational>>>& c) {
  ContextPtr point = Context::make({});
  std::vector<FrameInfo> frames;
  for (std::size_t i = 0; i < labels.size(); ++i)
    frames.push_back({labels[i], degrees.empty() ? 0 : degrees[i]});
  AlgebroidSpec spec(point, std::move(frames));
  for (std::size_t a = 0; a < labels.size(); ++a)
    for (std::size_t b = 0; b < labels.size(); ++b)
      for (std::size_t g = 0; g < labels.size(); ++g)
        if (!is_zero(c[a][b][g]))
          spec.set_structure(a, b, g, Element::constant(point, c[a][b][g]));
  spec.validate();
  return spec;
}

AlgebroidSpec AlgebroidSpec::action(const AlgebroidSpec& lie_spec,
                                    ContextPtr base,
                                    std::vector<Derivation> actions) {
  AlgebroidSpec spec(std::move(base), lie_spec.frames());
  for (std::size_t a = 0; a < actions.size(); ++a)
    spec.set_anchor(a, std::move(actions[a]));
  for (std::size_t a = 0; a < lie_spec.frame_count(); ++a)
    for (std::size_t b = 0; b < lie_spec.frame_count(); ++b)
      for (std::size_t g = 0; g < lie_spec.frame_count(); ++g) {
        const Element& c = lie_spec.structure(a, b, g);
        if (!c.is_zero())
          spec.set_structure(a, b, g,
                             Element::constant(spec.base(), c.terms().begin()->second));
      }
  spec.validate();
  return spec;
}

AlgebroidSpec AlgebroidSpec::tangent(ContextPtr base) {
  std::vector<FrameInfo> frames;
  for (const Generator& g : base->generators())
    frames.push_back({"D" + g.name, -g.degree});
  AlgebroidSpec spec(base, std::move(frames));
  for (std::size_t i = 0; i < base->size(); ++i)
    spec.set_anchor(i, Derivation::partial(base, i));
  return spec;
}

bool Section::is_zero() const {
  for (const Element& c : coeffs)
    if (!c.is_zero()) return false;
  return true;
}

bool Section::operator==(const Section& rhs) const {
  if (coeffs.size() != rhs.coeffs.size()) return false;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (!(coeffs[i] == rhs.coeffs[i])) return false;
  return is_zero() || degree == rhs.degree;
}

Algebroid Algebroid::from_spec(const AlgebroidSpec& spec,
                               std::optional<Truncation> trunc) {
  spec.validate();
  const ContextPtr& base = spec.base();
  std::vector<Generator> gens;
  for (const Generator& g : base->generators())
    gens.push_back({g.name, g.degree, 0, g.degree});
  for (const FrameInfo& f : spec.frames())
    gens.push_back({f.label + "'", 1 - f.degree, 1, -f.degree});

  std::optional<Truncation> tr = std::move(trunc);
  if (!tr && base->truncation()) tr = base->truncation();

  Algebroid alg;
  alg.ctx_ = Context::make(std::move(gens), std::move(tr));
  alg.base_n_ = base->size();
  const std::size_t nf = spec.frame_count();

  std::vector<Element> base_images;
  for (std::size_t i = 0; i < alg.base_n_; ++i)
    base_images.push_back(Element::generator(alg.ctx_, i));
  auto lift = [&](const Element& e) {
    return substitute(e, base_images, alg.ctx_);
  };

  Derivation d(alg.ctx_, 1);
  for (std::size_t i = 0; i < alg.base_n_; ++i) {
    Element img(alg.ctx_);
    for (std::size_t a = 0; a < nf; ++a) {
      const Element& rho = spec.anchor(a).image(i);
      if (!rho.is_zero())
        img += Element::generator(alg.ctx_, alg.dual_index(a)) * lift(rho);
    }
    if (!img.is_zero()) d.set_image(i, std::move(img));
  }
  Rational half(1, 2);
  for (std::size_t g = 0; g < nf; ++g) {
    Element img(alg.ctx_);
    for (std::size_t a = 0; a < nf; ++a) {
      int pa = spec.frames()[a].degree;
      Element la = Element::generator(alg.ctx_, alg.dual_index(a));
      for (std::size_t b = 0; b < nf; ++b) {
        const Element& c = spec.structure(a, b, g);
        if (c.is_zero()) continue;
        int pb = spec.frames()[b].degree;
        int sgn = sign_pow(static_cast<long>(pa) * (pb - 1));
        Element lb = Element::generator(alg.ctx_, alg.dual_index(b));
        img -= Rational(sgn) * half * (la * lb * lift(c));
      }
    }
    if (!img.is_zero()) d.set_image(alg.dual_index(g), std::move(img));
  }
  alg.d_ = std::move(d);
  return alg;
}

int Algebroid::fibre_degree(const Monomial& m) const {
  int s = 0;
  for (auto [i, e] : m.factors)
    if (i >= base_n_) s += static_cast<int>(e);
  return s;
}

bool Algebroid::base_supported(const Element& e) const {
  for (const auto& [m, c] : e.terms()) {
    (void)c;
    if (fibre_degree(m) != 0) return false;
  }
  return true;
}

namespace {
bool fibre_homogeneous(const Algebroid& alg, const Element& e, int k) {
  for (const auto& [m, c] : e.terms()) {
    (void)c;
    if (alg.fibre_degree(m) != k) return false;
  }
  return true;
}
}  // namespace

Algebroid Algebroid::from_differential(ContextPtr ctx, std::size_t base_count,
                                       Derivation d) {
  if (d.context() != ctx)
    throw context_mismatch("differential not over the given context");
  if (d.degree() != 1 && !d.is_zero())
    throw degree_error("algebroid differential must have degree 1");
  Algebroid alg;
  alg.ctx_ = std::move(ctx);
  alg.base_n_ = base_count;
  alg.d_ = std::move(d);
  for (std::size_t i = 0; i < base_count; ++i)
    if (!fibre_homogeneous(alg, alg.d_.image(i), 1))
      throw spec_error("differential is not fibre-linear on base generator '" +
                       alg.ctx_->gen(i).name + "'");
  for (std::size_t i = base_count; i < alg.ctx_->size(); ++i)
    if (!fibre_homogeneous(alg, alg.d_.image(i), 2))
      throw spec_error(
          "differential is not fibre-quadratic on dual generator '" +
          alg.ctx_->gen(i).name + "'");
  return alg;
}

Section Algebroid::frame_section(std::size_t a) const {
  Section s;
  s.degree = frame_degree(a);
  s.coeffs.assign(frame_count(), Element(ctx_));
  s.coeffs[a] = Element::constant(ctx_, 1);
  return s;
}

Section Algebroid::section(int degree, std::vector<Element> coeffs) const {
  Section s{degree, std::move(coeffs)};
  validate_section(s);
  return s;
}

void Algebroid::validate_section(const Section& s) const {
  if (s.coeffs.size() != frame_count())
    throw spec_error("section coefficient count does not match the frame");
  for (std::size_t a = 0; a < s.coeffs.size(); ++a) {
    const Element& f = s.coeffs[a];
    if (f.is_zero()) continue;
    if (!base_supported(f))
      throw spec_error("section coefficient depends on fibre coordinates");
    auto dg = f.degree();
    if (!dg || *dg != s.degree - frame_degree(a))
      throw degree_error("section coefficient of inconsistent degree");
  }
}

Section Algebroid::add(const Section& x, const Section& y) const {
  Section out = x;
  if (out.is_zero()) out.degree = y.degree;
  for (std::size_t a = 0; a < out.coeffs.size(); ++a)
    out.coeffs[a] += y.coeffs[a];
  return out;
}

Section Algebroid::scale(const Element& f, const Section& x) const {
  auto fd = f.degree();
  Section out;
  out.degree = x.degree + (fd ? *fd : 0);
  out.coeffs.reserve(x.coeffs.size());
  for (const Element& c : x.coeffs) out.coeffs.push_back(f * c);
  return out;
}

Derivation Algebroid::contraction(const Section& x) const {
  validate_section(x);
  Derivation iota(ctx_, x.degree - 1);
  for (std::size_t a = 0; a < frame_count(); ++a)
    if (!x.coeffs[a].is_zero()) iota.set_image(dual_index(a), x.coeffs[a]);
  return iota;
}

Derivation Algebroid::lie_derivative(const Section& x) const {
  return commutator(contraction(x), d_);
}

Derivation Algebroid::anchor(const Section& x) const {
  Derivation lx = lie_derivative(x);
  Derivation rho(ctx_, x.degree);
  for (std::size_t i = 0; i < base_n_; ++i) {
    const Element& img = lx.image(i);
    if (img.is_zero()) continue;
    if (!base_supported(img))
      throw spec_error("anchor image escapes the base subalgebra");
    rho.set_image(i, img);
  }
  return rho;
}

Section Algebroid::bracket(const Section& x, const Section& y) const {
  Derivation k = commutator(lie_derivative(x), contraction(y));
  Section out;
  out.degree = x.degree + y.degree;
  out.coeffs.assign(frame_count(), Element(ctx_));
  for (std::size_t i = 0; i < base_n_; ++i)
    if (!k.image(i).is_zero())
      throw spec_error("[[iota_X,d],iota_Y] is not a contraction operator");
  for (std::size_t a = 0; a < frame_count(); ++a) {
    const Element& img = k.image(dual_index(a));
    if (img.is_zero()) continue;
    if (!base_supported(img))
      throw spec_error("recovered bracket coefficient escapes the base");
    out.coeffs[a] = img;
  }
  return out;
}

Element Algebroid::anchor_coefficient(std::size_t a, std::size_t i) const {
  return contraction(frame_section(a)).apply(d_.image(i));
}

Element Algebroid::structure_coefficient(std::size_t a, std::size_t b,
                                         std::size_t g) const {
  return bracket(frame_section(a), frame_section(b)).coeffs[g];
}

AlgebroidSpec Algebroid::recovered_spec(
    const ContextPtr& base, const std::vector<FrameInfo>& frames) const {
  AlgebroidSpec spec(base, frames);
  for (std::size_t a = 0; a < frame_count(); ++a) {
    Derivation rho(base, frames[a].degree);
    for (std::size_t i = 0; i < base_n_; ++i) {
      Element coeff = anchor_coefficient(a, i);
      if (!coeff.is_zero()) rho.set_image(i, to_base(base, coeff));
    }
    spec.set_anchor(a, std::move(rho));
  }
  for (std::size_t a = 0; a < frame_count(); ++a)
    for (std::size_t b = 0; b < frame_count(); ++b)
      for (std::size_t g = 0; g < frame_count(); ++g) {
        Element c = structure_coefficient(a, b, g);
        if (!c.is_zero()) spec.set_structure(a, b, g, to_base(base, c));
      }
  spec.validate();
  return spec;
}

bool Algebroid::is_linear(const Derivation& xi) const {
  for (std::size_t i = 0; i < base_n_; ++i)
    if (!base_supported(xi.image(i))) return false;
  for (std::size_t i = base_n_; i < ctx_->size(); ++i)
    if (!fibre_homogeneous(*this, xi.image(i), 1)) return false;
  return true;
}

bool Algebroid::is_morphic(const Derivation& xi) const {
  if (!is_linear(xi))
    throw spec_error("morphic test requires a linear vector field");
  return commutator(d_, xi).is_zero();
}

Section Algebroid::d_xi(const Derivation& xi, const Section& x) const {
  Derivation k = commutator(xi, contraction(x));
  for (std::size_t i = 0; i < base_n_; ++i)
    if (!k.image(i).is_zero())
      throw spec_error("[Xi_1, iota_X] is not a contraction (base image)");
  Section out;
  out.degree = xi.degree() + x.degree;
  out.coeffs.assign(frame_count(), Element(ctx_));
  for (std::size_t a = 0; a < frame_count(); ++a) {
    const Element& img = k.image(dual_index(a));
    if (img.is_zero()) continue;
    if (!base_supported(img))
      throw spec_error("[Xi_1, iota_X] is not a contraction (fibre image)");
    out.coeffs[a] = img;
  }
  return out;
}

Element Algebroid::lift(const Element& base_elem) const {
  std::vector<Element> images;
  for (std::size_t i = 0; i < base_n_; ++i)
    images.push_back(Element::generator(ctx_, i));
  return substitute(base_elem, images, ctx_);
}

Element Algebroid::to_base(const ContextPtr& base,
                           const Element& total_elem) const {
  if (!base_supported(total_elem))
    throw spec_error("element is not supported on the base");
  std::vector<Element> images;
  for (std::size_t i = 0; i < ctx_->size(); ++i)
    images.push_back(i < base_n_ ? Element::generator(base, i)
                                 : Element(base));
  return substitute(total_elem, images, base);
}

Derivation Algebroid::lift_derivation(const Derivation& base_d) const {
  Derivation out(ctx_, base_d.degree());
  for (std::size_t i = 0; i < base_n_; ++i)
    if (!base_d.image(i).is_zero()) out.set_image(i, lift(base_d.image(i)));
  return out;
}

Section apply_section_operator(const Algebroid& alg, const SectionOperator& op,
                               const Section& x) {
  Section out;
  out.degree = x.degree + op.degree;
  out.coeffs.assign(alg.frame_count(), Element(alg.ctx()));
  for (std::size_t a = 0; a < alg.frame_count(); ++a) {
    const Element& f = x.coeffs[a];
    if (f.is_zero()) continue;
    out.coeffs[a] += op.base_action.apply(f);
    auto fd = f.degree();
    int sgn = sign_pow(static_cast<long>(fd ? *fd : 0) * op.degree);
    for (std::size_t b = 0; b < alg.frame_count(); ++b)
      out.coeffs[b] += Rational(sgn) * (f * op.frame_images[a].coeffs[b]);
  }
  return out;
}

Derivation morphic_from_operator(const Algebroid& alg,
                                 const SectionOperator& op) {
  const std::size_t nf = alg.frame_count();
  if (op.frame_images.size() != nf)
    throw spec_error("operator must provide one image per frame element");
  // Bracket-derivation hypothesis on all frame pairs.
  for (std::size_t a = 0; a < nf; ++a) {
    for (std::size_t b = 0; b < nf; ++b) {
      Section lhs =
          apply_section_operator(alg, op, alg.bracket(alg.frame_section(a),
                                                      alg.frame_section(b)));
      int sgn = sign_pow(static_cast<long>(op.degree) * alg.frame_degree(a));
      Section rhs = alg.add(
          alg.bracket(op.frame_images[a], alg.frame_section(b)),
          alg.scale(Element::constant(alg.ctx(), sgn),
                    alg.bracket(alg.frame_section(a), op.frame_images[b])));
      if (!(lhs == rhs)) {
        std::ostringstream os;
        os << "operator is not a bracket derivation; witness pair (X,Y) = ("
           << a << "," << b << ")";
        throw spec_error(os.str());
      }
    }
  }
  Derivation xi(alg.ctx(), op.degree);
  for (std::size_t i = 0; i < alg.base_count(); ++i)
    if (!op.base_action.image(i).is_zero())
      xi.set_image(i, op.base_action.image(i));
  for (std::size_t b = 0; b < nf; ++b) {
    Element img(alg.ctx());
    for (std::size_t a = 0; a < nf; ++a) {
      const Element& coeff = op.frame_images[a].coeffs[b];
      if (coeff.is_zero()) continue;
      int sgn =
          -sign_pow(static_cast<long>(op.degree) * (alg.frame_degree(a) - 1));
      img += Rational(sgn) *
             (Element::generator(alg.ctx(), alg.dual_index(a)) * coeff);
    }
    if (!img.is_zero()) xi.set_image(alg.dual_index(b), std::move(img));
  }
  if (!alg.is_morphic(xi))
    throw spec_error("constructed vector field fails [d_A, Xi_1] = 0");
  for (std::size_t a = 0; a < nf; ++a)
    if (!(alg.d_xi(xi, alg.frame_section(a)) == op.frame_images[a]))
      throw spec_error("constructed vector field does not reproduce D");
  return xi;
}

bool CartanReport::all_pass() const {
  for (const auto& l : lines)
    if (!l.pass) return false;
  return true;
}

namespace {

std::string first_witness(const Derivation& d) {
  for (std::size_t i = 0; i < d.context()->size(); ++i)
    if (!d.image(i).is_zero())
      return d.context()->gen(i).name + " -> " + d.image(i).to_string();
  return "";
}

}  // namespace

CartanReport check_cartan_relations(const Algebroid& alg,
                                    const std::vector<Section>& extra) {
  std::vector<Section> xs;
  for (std::size_t a = 0; a < alg.frame_count(); ++a)
    xs.push_back(alg.frame_section(a));
  xs.insert(xs.end(), extra.begin(), extra.end());

  CartanReport rep;
  auto record = [&rep](const std::string& name, const Derivation& resid) {
    IdentityCheck line{name, resid.is_zero(), ""};
    if (!line.pass) line.witness = first_witness(resid);
    for (auto& l : rep.lines)
      if (l.identity == name) {
        if (l.pass && !line.pass) l = line;
        return;
      }
    rep.lines.push_back(std::move(line));
  };

  const Derivation& d = alg.differential();
  record("[d,d] = 0", commutator(d, d));
  for (const Section& x : xs) {
    Derivation ix = alg.contraction(x);
    Derivation lx = alg.lie_derivative(x);
    record("[d,L_X] = 0", commutator(d, lx));
    for (const Section& y : xs) {
      Derivation iy = alg.contraction(y);
      Derivation ly = alg.lie_derivative(y);
      record("[iota_X,iota_Y] = 0", commutator(ix, iy));
      Section br = alg.bracket(x, y);
      record("[L_X,iota_Y] = iota_[X,Y]",
             commutator(lx, iy) - alg.contraction(br));
      record("[L_X,L_Y] = L_[X,Y]",
             commutator(lx, ly) - alg.lie_derivative(br));
    }
  }
  return rep;
}

}  // namespace koszul
