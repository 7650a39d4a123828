#pragma once
// Singular kernel forms and smooth weight forms in the integration variables,
// parameterized by a base point supplied as expressions (usually parameter
// slots, so one symbolic kernel serves every evaluation point).
//
// Conventions: the displacement contraction sends dz_j to 2 pi i (z_j - base_j),
// so the seed kernel b below satisfies (contraction) b = 1 away from the base
// point, and the full kernel v = b + b (dbar b) + ... satisfies
// (contraction - dbar) v = 1 pointwise off the base.
#include <vector>

#include "resdiv/expr.hpp"
#include "resdiv/form.hpp"

namespace resdiv {

// Support window of a radial bump: identically 1 for |zeta|^2 <= r1sq and
// identically 0 for |zeta|^2 >= r2sq.
struct WeightSpec {
  double r1sq = 1.0;
  double r2sq = 4.0;
};

// Base point helpers: the first n parameter slots, or all 2n slots for the
// doubled construction (callers bind slot n+j to the conjugate of slot j).
std::vector<Expr> param_base(int n);
std::vector<Expr> doubled_base(int n);

// (1,0) seed: (1/2pi i) sum_j (zetabar_j - conj(base_j)) dz_j / |zeta - base|^2.
Form bm_b(int n, const std::vector<Expr>& base);

// Full kernel sum_{k=1..n} b (dbar b)^{k-1}; bidegrees (k, k-1).
Form bm_full(int n, const std::vector<Expr>& base);

// (1,0) weight seed with denominator |zeta|^2 - sum_j base_j zetabar_j; its
// displacement contraction is identically 1, so it is smooth as a kernel
// ingredient wherever the denominator stays away from zero.
Form ball_weight_s(int n, const std::vector<Expr>& base);

// sum_{k=1..n} s (dbar s)^{k-1}.
Form ball_weight_u(int n, const std::vector<Expr>& base);

// Compactly supported weight: chi(|zeta|^2) - dbar(chi) ^ u.  Annihilated by
// the combined operator, with unit scalar part wherever chi = 1.
Form ball_weight(int n, const std::vector<Expr>& base, const WeightSpec& w);

// Weights compose by wedge; the product is again a weight.
Form weight_product(const Form& a, const Form& b);

// Full kernel on 2n doubled variables based at the 2n parameter slots.
Form doubled_bm(int n);

}  // namespace resdiv
