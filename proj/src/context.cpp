#include "koszul/context.hpp"

#include <algorithm>

namespace koszul {

ContextPtr Context::make(std::vector<Generator> gens,
                         std::optional<Truncation> trunc) {
  auto ctx = std::shared_ptr<Context>(new Context());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const Generator& g = gens[i];
    if (g.name.empty()) throw spec_error("generator with empty name");
    if (g.p_weight + g.q_weight != g.degree)
      throw spec_error("generator '" + g.name +
                       "': p_weight + q_weight != degree");
    auto [it, fresh] = ctx->by_name_.emplace(g.name, i);
    (void)it;
    if (!fresh) throw spec_error("duplicate generator name '" + g.name + "'");
  }
  ctx->gens_ = std::move(gens);
  ctx->trunc_mask_.assign(ctx->gens_.size(), 0);
  if (trunc) {
    if (trunc->bound < 0) throw spec_error("negative truncation bound");
    for (std::size_t i : trunc->indices) {
      if (i >= ctx->gens_.size())
        throw spec_error("truncation index out of range");
      ctx->trunc_mask_[i] = 1;
    }
    std::sort(trunc->indices.begin(), trunc->indices.end());
    trunc->indices.erase(
        std::unique(trunc->indices.begin(), trunc->indices.end()),
        trunc->indices.end());
    ctx->trunc_ = std::move(trunc);
  }
  ctx->finitely_graded_ = true;
  for (const Generator& g : ctx->gens_)
    if (!g.odd() && g.degree <= 0) ctx->finitely_graded_ = false;
  return ctx;
}

std::optional<std::size_t> Context::find(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::size_t Context::index_of(const std::string& name) const {
  auto idx = find(name);
  if (!idx) throw spec_error("unknown generator '" + name + "'");
  return *idx;
}

ContextPtr Context::with_truncation(std::optional<Truncation> trunc) const {
  return make(gens_, std::move(trunc));
}

}  // namespace koszul
