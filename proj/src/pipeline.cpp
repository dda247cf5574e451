#include "uf1/pipeline.hpp"

namespace uf1 {

DecideResult decide_uf1(const Formula& f, const Budgets& budgets, bool reconstruct,
                        const std::function<void(const std::string&)>& progress) {
  auto stage = [&](const std::string& s) {
    if (progress) progress(s);
  };
  auto report = check_uf1(f);
  if (!report.member) throw FragmentError("UF1", report);
  auto fv = free_variables(f);
  if (fv.size() > 1) throw Error("decide needs a sentence or a formula with one free variable");
  std::optional<std::string> x;
  if (!fv.empty()) x = *fv.begin();

  DecideResult out;
  stage("to_duf1");
  Formula d = to_duf1(f, budgets);
  out.duf1_nodes = tree_size(d);
  stage("to_muf1");
  Muf m = to_muf1(d, x);
  stage("preprocess");
  Muf pre = preprocess_muf1(m);
  stage("build_context");
  auto ctx = build_context(pre, budgets);
  out.muf1_sub = ctx.sub.size();
  out.torus = static_cast<size_t>(ctx.torus->size());
  stage("translate_star");
  auto star = translate_star(ctx, budgets);
  out.star_nodes = tree_size(star.star);
  stage("decide_mfo");
  out.mfo = decide_mfo(star.star, budgets);
  out.sat = out.mfo.sat;
  if (!out.sat || !reconstruct) return out;

  stage("build_inverse_model");
  auto inv = build_inverse_model(out.mfo.model, ctx, star);
  int w = out.mfo.witness.value_or(0);
  if (!eval_muf1(inv.model, w, pre)) throw Error("internal: reconstructed model fails the MUF1 formula");
  Structure model = inv.model;
  for (const auto& s : vocabulary_of(f).symbols())
    if (!model.has_symbol(s.name)) model.add_symbol(s.name, s.arity);
  Assignment env;
  if (x) env[*x] = w;
  if (!model_check(model, env, f)) throw Error("internal: reconstructed model fails the input formula");
  out.model = std::move(model);
  out.witness = w;
  return out;
}

}  // namespace uf1
