#include "doctest.h"
#include "resdiv/expr.hpp"

#include <cmath>
#include <random>

using namespace resdiv;

namespace {

// Finite-difference Wirtinger partial: d/dv f = (1/2)(d/dx - s*i*d/dy) applied
// to the underlying real coordinates of the (possibly conjugated) variable,
// where s = +1 for the plain variable and -1 for its conjugate.
cplx fd_partial(const Expr& e, const Var& v, Point p, double h = 1e-5) {
  auto& slot = (v.kind == VarKind::integration) ? p.vars[v.index] : p.params[v.index];
  const cplx base = slot;
  auto at = [&](cplx delta) {
    slot = base + delta;
    cplx r = e.eval(p);
    slot = base;
    return r;
  };
  cplx dx = (at(h) - at(-h)) / (2 * h);
  cplx dy = (at(cplx(0, h)) - at(cplx(0, -h))) / (2 * h);
  double s = v.conjugated ? -1.0 : 1.0;
  return 0.5 * (dx - s * cplx(0, 1) * dy);
}

Point random_point(int nvars, int nparams, unsigned seed) {
  std::mt19937 g(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Point p;
  for (int i = 0; i < nvars; ++i) p.vars.push_back(cplx(d(g) + 1.5, d(g)));
  for (int i = 0; i < nparams; ++i) p.params.push_back(cplx(d(g) - 1.5, d(g)));
  return p;
}

}  // namespace

TEST_CASE("constants and arithmetic evaluate") {
  Point p;
  p.vars = {cplx(2, 1)};
  Expr e = Expr::constant(3.0) * Expr::zeta(0) + Expr::constant(cplx(0, 1));
  CHECK(e.eval(p) == cplx(6, 4));
  CHECK(Expr().eval(p) == cplx(0, 0));
}

TEST_CASE("variable kinds and conjugation flags") {
  Point p;
  p.vars = {cplx(1, 2)};
  p.params = {cplx(3, -4)};
  CHECK(Expr::zeta(0).eval(p) == cplx(1, 2));
  CHECK(Expr::zetabar(0).eval(p) == cplx(1, -2));
  CHECK(Expr::param(0).eval(p) == cplx(3, -4));
  CHECK(Expr::parambar(0).eval(p) == cplx(3, 4));
}

TEST_CASE("product absorbs exact zero before a singular factor") {
  Point p;
  p.vars = {cplx(0, 0)};
  Expr pole = Expr::recip(Expr::zeta(0));
  Expr masked = Expr::constant(0.0) * pole;
  CHECK(masked.eval(p) == cplx(0, 0));
  // zero can come from a non-constant factor too
  Expr masked2 = Expr::product({Expr::zeta(0), pole});
  CHECK(masked2.eval(p) == cplx(0, 0));
  CHECK_THROWS_AS(pole.eval(p), EvalError);
}

TEST_CASE("division by zero reports the node path") {
  Point p;
  p.vars = {cplx(0, 0), cplx(1, 0)};
  Expr e = Expr::zeta(1) + Expr::zeta(1) * Expr::recip(Expr::zeta(0));
  try {
    e.eval(p);
    FAIL("expected EvalError");
  } catch (const EvalError& err) {
    CHECK(err.path == "/1/1");
  }
}

TEST_CASE("wirtinger partials are independent directions") {
  // d/dzeta of zetabar is 0, and vice versa.
  Var z{VarKind::integration, 0, false};
  Var zb{VarKind::integration, 0, true};
  CHECK(Expr::zetabar(0).partial(z).is_zero());
  CHECK(Expr::zeta(0).partial(zb).is_zero());
  CHECK(Expr::zeta(0).partial(z).is_one());
}

TEST_CASE("partial of |zeta|^-2 in the conjugate direction") {
  // f = 1/(zeta*conj(zeta));  df/dzetabar = -zeta/|zeta|^4.
  Expr f = Expr::recip(Expr::zeta(0) * Expr::zetabar(0));
  Var zb{VarKind::integration, 0, true};
  Expr df = f.partial(zb);
  Point p;
  p.vars = {cplx(0.7, -0.4)};
  cplx z = p.vars[0];
  cplx expect = -z / std::pow(std::norm(z), 2);
  CHECK(std::abs(df.eval(p) - expect) < 1e-12);
}

TEST_CASE("conjugate node differentiates through the flipped direction") {
  // d/dv conj(u) = conj(du/d conj(v)); test on u = zeta^2 * param.
  Expr u = Expr::ipow(Expr::zeta(0), 2) * Expr::param(0);
  Expr cu = Expr::conjugate(u);
  Point p = random_point(1, 1, 7);
  for (bool conj_dir : {false, true}) {
    Var v{VarKind::integration, 0, conj_dir};
    cplx sym = cu.partial(v).eval(p);
    cplx fd = fd_partial(cu, v, p);
    CHECK(std::abs(sym - fd) < 1e-6);
  }
}

TEST_CASE("symbolic partials agree with finite differences on a mixed tree") {
  Expr t = norm2_diff({Var{VarKind::integration, 0, false}, Var{VarKind::integration, 1, false}},
                      {Expr::param(0), Expr::param(1)});
  Expr e = Expr::recip(t) + Expr::ipow(Expr::zeta(0) * Expr::zetabar(1), 2) * t;
  for (unsigned seed : {11u, 12u, 13u}) {
    Point p = random_point(2, 2, seed);
    for (int idx : {0, 1}) {
      for (bool cj : {false, true}) {
        Var v{VarKind::integration, idx, cj};
        cplx sym = e.partial(v).eval(p);
        cplx fd = fd_partial(e, v, p);
        CHECK(std::abs(sym - fd) < 1e-5 * (1.0 + std::abs(sym)));
      }
    }
  }
}

TEST_CASE("cutoff atom: plateau, transition midpoint, and support") {
  auto chi = cutoff_atom(1.0, 4.0);
  CHECK(chi->f(0.5).real() == 1.0);   // inside the inner radius: exactly 1
  CHECK(chi->f(1.0).real() == 1.0);
  CHECK(chi->f(4.0).real() == 0.0);   // at and beyond the outer radius: exactly 0
  CHECK(chi->f(5.0).real() == 0.0);
  CHECK(chi->f(2.5).real() == doctest::Approx(0.5).epsilon(1e-12));  // symmetric midpoint
  double lo = chi->f(1.9).real(), hi = chi->f(3.1).real();
  CHECK(lo > hi);  // decreasing across the transition
}

TEST_CASE("atom derivative chains agree with finite differences") {
  auto check_chain = [](std::shared_ptr<const Atom> a) {
    int levels = 0;
    while (a->derivative && levels < 3) {
      for (int i = 1; i <= 8; ++i) {
        double t = a->lo + (a->hi - a->lo) * i / 9.0;
        double h = 1e-6 * (1.0 + std::abs(t));
        double fd = (a->f(t + h).real() - a->f(t - h).real()) / (2 * h);
        double sym = a->derivative->f(t).real();
        CHECK(std::abs(fd - sym) < 2e-4 * (1.0 + std::abs(sym)));
      }
      a = a->derivative;
      ++levels;
    }
    CHECK(levels >= 1);
  };
  check_chain(cutoff_atom(1.0, 4.0));
  check_chain(powlaw_atom(-1.0 / 6.0));
}

TEST_CASE("powlaw evaluates fractional powers and rejects nonpositive input") {
  auto a = powlaw_atom(-1.0 / 6.0);
  CHECK(a->f(64.0).real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS(a->f(0.0));
}

TEST_CASE("atoms are recoverable by name") {
  auto a = cutoff_atom(1.0, 4.0);
  auto b = atom_by_name(a->name);
  CHECK(a.get() == b.get());
  auto p = powlaw_atom(0.25);
  CHECK(atom_by_name(p->name).get() == p.get());
  CHECK_THROWS(atom_by_name("nonsense(1)"));
}

TEST_CASE("simplify folds constants and cancels double conjugation") {
  Expr e = Expr::constant(2.0) * (Expr::constant(3.0) * Expr::zeta(0));
  Expr s = e.simplified();
  CHECK(s.node_kind() == Expr::Kind::prod);
  CHECK(s.children()[0].constant_value() == cplx(6, 0));

  Expr cc = Expr::conjugate(Expr::conjugate(Expr::zeta(0))).simplified();
  CHECK(cc.node_kind() == Expr::Kind::var);
  CHECK_FALSE(cc.var().conjugated);

  // conj pushed through a product flips variable flags
  Expr cp = Expr::conjugate(Expr::zeta(0) * Expr::zetabar(1)).simplified();
  Point p = random_point(2, 0, 3);
  CHECK(std::abs(cp.eval(p) - std::conj((Expr::zeta(0) * Expr::zetabar(1)).eval(p))) < 1e-14);
}

TEST_CASE("simplified trees evaluate identically") {
  Expr t = norm2_diff({Var{VarKind::integration, 0, false}}, {Expr::param(0)});
  Expr e = Expr::conjugate(Expr::recip(t) * Expr::ipow(Expr::zeta(0), 3)) +
           Expr::constant(0.0) * Expr::zeta(0) + Expr::ipow(Expr::ipow(Expr::zetabar(0), 2), 2);
  Expr s = e.simplified();
  for (unsigned seed : {21u, 22u}) {
    Point p = random_point(1, 1, seed);
    CHECK(std::abs(e.eval(p) - s.eval(p)) < 1e-12 * (1.0 + std::abs(e.eval(p))));
  }
}

TEST_CASE("to_string round trips basic structure") {
  Expr e = Expr::zeta(0) * Expr::parambar(1);
  CHECK(e.to_string() == "(x0*p1~)");
}
