// Exhaustive small-model equivalence checks between translation stages.
#pragma once

#include <functional>
#include <optional>

#include "uf1/ground.hpp"
#include "uf1/normalizer.hpp"

namespace uf1 {

// Truth of the second stage at element w (or once, for sentences) as a
// grounding literal.
using StageEncoder = std::function<sat::Lit(Grounder&, int w)>;

// Looks for a structure of size n over v on which f and the other stage
// disagree (under some value of f's free variable). Plain enumeration when
// there are at most 2^16 structures, a propositional miter otherwise.
std::optional<Structure> disagreement(const Vocabulary& v, int n, const Formula& f,
                                      const std::function<bool(const Structure&, int)>& eval_b,
                                      const StageEncoder& encode_b);

std::optional<Structure> duf1_disagreement(const Vocabulary& v, int n, const Formula& f, const Formula& d);
std::optional<Structure> muf1_disagreement(const Vocabulary& v, int n, const Formula& f, const Muf& m);

}  // namespace uf1
