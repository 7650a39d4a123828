#include "resdiv/kernels.hpp"

namespace resdiv {

std::vector<Expr> param_base(int n) {
  std::vector<Expr> b;
  for (int j = 0; j < n; ++j) b.push_back(Expr::param(j));
  return b;
}

std::vector<Expr> doubled_base(int n) { return param_base(2 * n); }

namespace {
std::vector<Var> integration_vars(int n) {
  std::vector<Var> v;
  for (int j = 0; j < n; ++j) v.push_back(Var{VarKind::integration, j, false});
  return v;
}

// sum_k seed (dbar seed)^{k-1} for a (1,0) seed form
Form kernel_series(int n, const Form& seed) {
  Form db = dbar(seed, n);
  Form acc = seed;
  Form power = Form::one();
  for (int k = 2; k <= n; ++k) {
    power = wedge(power, db);
    acc = acc + wedge(seed, power);
  }
  return acc;
}
}  // namespace

Form bm_b(int n, const std::vector<Expr>& base) {
  Expr inv = Expr::recip(norm2_diff(integration_vars(n), base));
  Expr scale = Expr::recip(two_pi_i());
  Form b;
  for (int j = 0; j < n; ++j) {
    Expr num = Expr::zetabar(j) - Expr::conjugate(base[j]);
    b = b + Form::dz(j).scaled(scale * num * inv);
  }
  return b;
}

Form bm_full(int n, const std::vector<Expr>& base) { return kernel_series(n, bm_b(n, base)); }

Form ball_weight_s(int n, const std::vector<Expr>& base) {
  std::vector<Expr> dots;
  std::vector<Expr> norms;
  for (int j = 0; j < n; ++j) {
    norms.push_back(Expr::zeta(j) * Expr::zetabar(j));
    dots.push_back(base[j] * Expr::zetabar(j));
  }
  Expr denom = Expr::sum(std::move(norms)) - Expr::sum(std::move(dots));
  Expr inv = Expr::recip(denom);
  Expr scale = Expr::recip(two_pi_i());
  Form s;
  for (int j = 0; j < n; ++j) s = s + Form::dz(j).scaled(scale * Expr::zetabar(j) * inv);
  return s;
}

Form ball_weight_u(int n, const std::vector<Expr>& base) {
  return kernel_series(n, ball_weight_s(n, base));
}

Form ball_weight(int n, const std::vector<Expr>& base, const WeightSpec& w) {
  std::vector<Expr> norms;
  for (int j = 0; j < n; ++j) norms.push_back(Expr::zeta(j) * Expr::zetabar(j));
  Expr chi = Expr::apply(cutoff_atom(w.r1sq, w.r2sq), Expr::sum(std::move(norms)));
  Form u = ball_weight_u(n, base);
  return Form(chi) - wedge(dbar(Form(chi), n), u);
}

Form weight_product(const Form& a, const Form& b) { return wedge(a, b); }

Form doubled_bm(int n) { return bm_full(2 * n, doubled_base(n)); }

}  // namespace resdiv
