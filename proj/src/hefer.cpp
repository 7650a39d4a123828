#include "resdiv/hefer.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace resdiv {

namespace {

// Deterministic scattered sample points for the construction self-check.
Point sample_point(int nvars, int salt) {
  Point p;
  for (int j = 0; j < nvars; ++j) {
    double a = 0.37 + 0.211 * j + 0.157 * salt;
    double b = -0.53 + 0.171 * j - 0.113 * salt;
    p.vars.push_back(cplx(std::cos(3.1 * a), std::sin(2.7 * b)) * (0.6 + 0.1 * j));
    p.params.push_back(cplx(std::sin(1.9 * a + 0.4), std::cos(2.3 * b - 0.2)) * 0.5);
  }
  return p;
}

}  // namespace

HeferData hefer_decompose(const std::vector<Poly>& tuple, int nvars) {
  HeferData hd;
  hd.nvars = nvars;
  hd.tuple = tuple;
  for (const auto& a : tuple) {
    if (!a.holomorphic())
      throw std::invalid_argument("division interpolation needs holomorphic tuple entries");
    std::vector<Poly> row(nvars);
    for (const auto& t : a.terms()) {
      // swap zeta_i for param_i one slot at a time; the slot-i difference
      // factors as (zeta_i - z_i) * sum_{s < k_i} zeta_i^s z_i^{k_i - 1 - s}
      for (int i = 0; i < nvars; ++i) {
        int ki = (static_cast<size_t>(i) < t.ze.size()) ? t.ze[i] : 0;
        if (ki == 0) continue;
        Poly fixed = Poly::constant(t.c);
        for (int u = 0; u < i; ++u) {
          int ku = (static_cast<size_t>(u) < t.ze.size()) ? t.ze[u] : 0;
          if (ku) fixed = fixed * Poly::param(u, ku);
        }
        for (int u = i + 1; u < nvars; ++u) {
          int ku = (static_cast<size_t>(u) < t.ze.size()) ? t.ze[u] : 0;
          if (ku) fixed = fixed * Poly::zeta(u, ku);
        }
        Poly geom;
        for (int s = 0; s < ki; ++s)
          geom = geom + Poly::zeta(i, s) * Poly::param(i, ki - 1 - s);
        row[i] = row[i] + fixed * geom;
      }
      // parameter-only content of `a` never differs between zeta and z, and
      // tuple entries carry none by construction (holomorphic in zeta only)
    }
    hd.rows.push_back(std::move(row));
  }
  // package as one-forms
  Expr scale = Expr::recip(two_pi_i());
  for (int j = 0; j < static_cast<int>(tuple.size()); ++j) {
    Form hj;
    for (int i = 0; i < nvars; ++i)
      if (!hd.rows[j][i].is_zero())
        hj = hj + Form::dz(i).scaled(scale * hd.rows[j][i].to_expr());
    hd.one_forms.push_back(hj);
  }
  // self-check the telescoping identity at scattered points
  double worst = 0;
  for (int salt = 0; salt < 5; ++salt) {
    Point p = sample_point(nvars, salt);
    for (size_t j = 0; j < tuple.size(); ++j) {
      Point pz = p;
      for (int i = 0; i < nvars; ++i) pz.vars[i] = p.params[i];
      cplx lhs = tuple[j].eval(p) - tuple[j].eval(pz);
      cplx rhs(0, 0);
      for (int i = 0; i < nvars; ++i)
        rhs += hd.rows[j][i].eval(p) * (p.vars[i] - p.params[i]);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  hd.self_check_residual = worst;
  if (worst > 1e-10)
    throw std::runtime_error("division interpolation self-check failed");
  return hd;
}

Form hefer_contract(const HeferData& hd, const Form& x) {
  Form r;
  for (size_t j = 0; j < hd.one_forms.size(); ++j)
    r = r + wedge(hd.one_forms[j], interior_frame(x, static_cast<int>(j)));
  return r;
}

Form hefer_power(const HeferData& hd, int times, const Form& x) {
  Form r = x;
  double fact = 1;
  for (int t = 1; t <= times; ++t) {
    r = hefer_contract(hd, r);
    fact *= t;
  }
  return r.scaled(cplx(1.0 / fact, 0));
}

Form hefer_exp(const HeferData& hd, const Form& x) {
  Form acc = x;
  Form cur = x;
  double fact = 1;
  int maxdeg = static_cast<int>(hd.tuple.size());
  for (int t = 1; t <= maxdeg; ++t) {
    cur = hefer_contract(hd, cur);
    if (cur.is_zero()) break;
    fact *= t;
    acc = acc + cur.scaled(cplx(1.0 / fact, 0));
  }
  return acc;
}

double verify_hefer(const HeferData& hd, const std::vector<Point>& samples) {
  const int m = static_cast<int>(hd.tuple.size());
  const int n = hd.nvars;
  std::vector<Expr> a_zeta, a_z;
  for (const auto& a : hd.tuple) {
    a_zeta.push_back(a.to_expr());
    a_z.push_back(a.zeta_to_param().to_expr());
  }
  auto base = std::vector<Expr>{};
  for (int j = 0; j < n; ++j) base.push_back(Expr::param(j));

  double worst = 0;
  // iterate frame monomials e_I by bitmask
  for (uint64_t I = 1; I < (uint64_t(1) << m); ++I) {
    int k = std::popcount(I);
    Form eI = Form::term(c_one(), GenMask{0, 0, I});
    for (int l = 0; l < k; ++l) {
      int p = k - l;
      Form lhs = nabla(hefer_power(hd, p, eI), base, n);
      Form rhs1 = hefer_power(hd, p - 1, interior_frame_weighted(eI, a_zeta));
      Form rhs2 = interior_frame_weighted(hefer_power(hd, p - 1, eI), a_z);
      Form diff = lhs - rhs1 + rhs2;
      for (const auto& pt : samples)
        for (const auto& [mask, v] : diff.eval(pt)) worst = std::max(worst, std::abs(v));
    }
  }
  return worst;
}

}  // namespace resdiv
