#include "koszul/cohomology.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace koszul {

Selector Selector::shifted(
    int d_offset, std::optional<std::pair<int, int>> pq_offset) const {
  Selector out;
  out.degree = degree + d_offset;
  if (pq && pq_offset)
    out.pq = std::make_pair(pq->first + pq_offset->first,
                            pq->second + pq_offset->second);
  return out;
}

std::string Selector::to_string() const {
  std::ostringstream os;
  if (pq)
    os << "(" << pq->first << "," << pq->second << ")";
  else
    os << degree;
  return os.str();
}

std::optional<std::size_t> ComplexSlice::find(const Monomial& m) const {
  auto it = std::lower_bound(basis.begin(), basis.end(), m);
  if (it == basis.end() || !(*it == m)) return std::nullopt;
  return static_cast<std::size_t>(it - basis.begin());
}

namespace {

struct Enumerator {
  const Context& ctx;
  const Selector& sel;
  bool use_trunc;
  int bound;
  // conservative negative-degree capacity of the generator suffix i..n
  std::vector<long> neg_capacity;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> stack;
  std::vector<Monomial> out;

  Enumerator(const Context& c, const Selector& s) : ctx(c), sel(s) {
    use_trunc = ctx.truncation().has_value();
    bound = use_trunc ? ctx.truncation()->bound : 0;
    const std::size_t n = ctx.size();
    neg_capacity.assign(n + 1, 0);
    for (std::size_t i = n; i-- > 0;) {
      const Generator& g = ctx.gen(i);
      long cap = 0;
      if (g.degree < 0) {
        if (g.odd())
          cap = -g.degree;
        else if (ctx.truncated_gen(i))
          cap = static_cast<long>(-g.degree) * bound;
        else
          throw truncation_required(
              "even generator '" + g.name +
              "' of negative degree requires a truncation bound");
      } else if (!g.odd() && g.degree == 0 && !ctx.truncated_gen(i)) {
        throw truncation_required("even degree-0 generator '" + g.name +
                                  "' requires a truncation bound");
      }
      neg_capacity[i] = neg_capacity[i + 1] + cap;
    }
  }

  void run(std::size_t i, int deg_left, int p_left, int budget_left) {
    if (i == ctx.size()) {
      if (deg_left == 0 && (!sel.pq || p_left == 0)) {
        Monomial m{stack};
        out.push_back(std::move(m));
      }
      return;
    }
    const Generator& g = ctx.gen(i);
    long emax;
    if (g.odd()) {
      emax = 1;
    } else if (ctx.truncated_gen(i)) {
      emax = budget_left;
    } else {
      // g even, degree > 0 here (others were rejected in the constructor)
      long room = deg_left + neg_capacity[i + 1];
      emax = room > 0 ? room / g.degree : 0;
    }
    if (g.degree > 0) {
      long room = deg_left + neg_capacity[i + 1];
      emax = std::min(emax, room > 0 ? room / g.degree : 0);
    }
    for (long e = 0; e <= emax; ++e) {
      int used = ctx.truncated_gen(i) ? static_cast<int>(e) : 0;
      if (use_trunc && used > budget_left) break;
      if (e > 0) stack.emplace_back(static_cast<std::uint32_t>(i),
                                    static_cast<std::uint32_t>(e));
      run(i + 1, deg_left - g.degree * static_cast<int>(e),
          p_left - g.p_weight * static_cast<int>(e), budget_left - used);
      if (e > 0) stack.pop_back();
    }
  }
};

}  // namespace

ComplexSlice enumerate_basis(const ContextPtr& ctx, const Selector& sel) {
  Enumerator en(*ctx, sel);
  en.run(0, sel.degree, sel.pq ? sel.pq->first : 0,
         en.use_trunc ? en.bound : 0);
  ComplexSlice slice;
  slice.ctx = ctx;
  slice.selector = sel;
  slice.basis = std::move(en.out);
  std::sort(slice.basis.begin(), slice.basis.end());
  slice.certified = ctx->finitely_graded();
  return slice;
}

SliceMap matrix_of(const Derivation& d, const ComplexSlice& source) {
  auto bd = d.bidegree();
  Selector target_sel = source.selector.shifted(d.degree(), bd);
  SliceMap out;
  out.target = enumerate_basis(source.ctx, target_sel);
  out.matrix = QMatrix(out.target.dim(), source.dim());
  for (std::size_t j = 0; j < source.dim(); ++j) {
    Element img = d.apply(Element::monomial(source.ctx, source.basis[j]));
    if (img.truncated()) out.truncated = true;
    for (const auto& [m, c] : img.terms()) {
      auto row = out.target.find(m);
      if (!row) {
        if (out.target.certified)
          throw spec_error("derivation image escapes the target slice");
        out.truncated = true;
        continue;
      }
      out.matrix.at(*row, j) = c;
    }
  }
  return out;
}

std::optional<std::vector<Rational>> coordinates_in(const ComplexSlice& slice,
                                                    const Element& e) {
  std::vector<Rational> v(slice.dim(), Rational(0));
  for (const auto& [m, c] : e.terms()) {
    auto idx = slice.find(m);
    if (!idx) return std::nullopt;
    v[*idx] = c;
  }
  return v;
}

namespace {

BettiRow betti_row(const ComplexSlice& prev, const ComplexSlice& here,
                   const SliceMap& in_map, const SliceMap& out_map) {
  BettiRow row;
  row.selector = here.selector;
  row.dim = here.dim();
  row.rank_in = rank(in_map.matrix);
  row.rank_out = rank(out_map.matrix);
  row.betti = static_cast<long>(row.dim) - static_cast<long>(row.rank_in) -
              static_cast<long>(row.rank_out);
  row.valid = prev.certified && here.certified && out_map.target.certified &&
              !in_map.truncated && !out_map.truncated;
  return row;
}

}  // namespace

BettiTable betti(const ContextPtr& ctx, const Derivation& d, int degree_lo,
                 int degree_hi) {
  if (!is_homological(d))
    throw spec_error("betti requires a homological derivation");
  BettiTable table;
  for (int k = degree_lo; k <= degree_hi; ++k) {
    ComplexSlice prev = enumerate_basis(ctx, Selector::total(k - d.degree()));
    ComplexSlice here = enumerate_basis(ctx, Selector::total(k));
    SliceMap in_map = matrix_of(d, prev);
    SliceMap out_map = matrix_of(d, here);
    table.rows.push_back(betti_row(prev, here, in_map, out_map));
  }
  return table;
}

BettiTable betti_bigraded(const ContextPtr& ctx, const Derivation& d,
                          std::pair<int, int> p_range,
                          std::pair<int, int> q_range) {
  if (!is_homological(d))
    throw spec_error("betti requires a homological derivation");
  auto bd = d.bidegree();
  if (!bd) throw spec_error("derivation has no homogeneous bidegree");
  BettiTable table;
  for (int p = p_range.first; p <= p_range.second; ++p) {
    for (int q = q_range.first; q <= q_range.second; ++q) {
      ComplexSlice prev = enumerate_basis(
          ctx, Selector::bidegree(p - bd->first, q - bd->second));
      ComplexSlice here = enumerate_basis(ctx, Selector::bidegree(p, q));
      SliceMap in_map = matrix_of(d, prev);
      SliceMap out_map = matrix_of(d, here);
      table.rows.push_back(betti_row(prev, here, in_map, out_map));
    }
  }
  return table;
}

Element Subspace::element(const ContextPtr& ctx, std::size_t k) const {
  Element e(ctx);
  for (std::size_t i = 0; i < slice.basis.size(); ++i)
    if (!is_zero(vectors[k][i])) e.add_term(slice.basis[i], vectors[k][i]);
  return e;
}

Subspace joint_kernel(const std::vector<Derivation>& ops,
                      const ComplexSlice& slice) {
  QMatrix stacked(0, slice.dim());
  for (const Derivation& op : ops) {
    SliceMap m = matrix_of(op, slice);
    stacked = stacked.stacked(m.matrix);
  }
  Subspace out;
  out.slice = slice;
  if (ops.empty()) {
    for (std::size_t i = 0; i < slice.dim(); ++i) {
      std::vector<Rational> v(slice.dim(), Rational(0));
      v[i] = 1;
      out.vectors.push_back(std::move(v));
    }
    return out;
  }
  out.vectors = kernel_basis(stacked);
  return out;
}

std::optional<QMatrix> restricted_matrix(const Derivation& d,
                                         const Subspace& source,
                                         const Subspace& target) {
  // Columns of the target vectors as a matrix T, then solve T y = D v.
  QMatrix t(target.slice.dim(), target.dim());
  for (std::size_t k = 0; k < target.dim(); ++k)
    for (std::size_t i = 0; i < target.slice.dim(); ++i)
      t.at(i, k) = target.vectors[k][i];
  QMatrix out(target.dim(), source.dim());
  for (std::size_t j = 0; j < source.dim(); ++j) {
    Element img = d.apply(source.element(source.slice.ctx, j));
    auto coords = coordinates_in(target.slice, img);
    if (!coords) return std::nullopt;
    auto y = solve(t, *coords);
    if (!y) return std::nullopt;
    // Confirm the solve (solve() zero-fills free variables).
    for (std::size_t i = 0; i < target.slice.dim(); ++i) {
      Rational acc(0);
      for (std::size_t k = 0; k < target.dim(); ++k)
        acc += t.at(i, k) * (*y)[k];
      if (!(acc == (*coords)[i])) return std::nullopt;
    }
    for (std::size_t k = 0; k < target.dim(); ++k) out.at(k, j) = (*y)[k];
  }
  return out;
}

SubcomplexBetti subcomplex_betti(const std::vector<Derivation>& ops,
                                 const Derivation& d, int degree_lo,
                                 int degree_hi) {
  const ContextPtr& ctx = d.context();
  SubcomplexBetti out;
  std::map<int, Subspace> cache;
  auto kernel_at = [&](int k) -> const Subspace& {
    auto it = cache.find(k);
    if (it == cache.end())
      it = cache
               .emplace(k, joint_kernel(
                               ops, enumerate_basis(ctx, Selector::total(k))))
               .first;
    return it->second;
  };
  for (int k = degree_lo; k <= degree_hi; ++k) {
    const Subspace& prev = kernel_at(k - d.degree());
    const Subspace& here = kernel_at(k);
    const Subspace& next = kernel_at(k + d.degree());
    auto min = restricted_matrix(d, prev, here);
    auto mout = restricted_matrix(d, here, next);
    if (!min || !mout) {
      out.closed = false;
      std::ostringstream os;
      os << "differential does not preserve the joint kernel at degree " << k;
      out.witness = os.str();
      return out;
    }
    BettiRow row;
    row.selector = Selector::total(k);
    row.dim = here.dim();
    row.rank_in = rank(*min);
    row.rank_out = rank(*mout);
    row.betti = static_cast<long>(row.dim) - static_cast<long>(row.rank_in) -
                static_cast<long>(row.rank_out);
    row.valid = prev.slice.certified && here.slice.certified &&
                next.slice.certified;
    out.table.rows.push_back(row);
  }
  return out;
}

}  // namespace koszul
