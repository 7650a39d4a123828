#include "resdiv/poly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace resdiv {

namespace {
void trim(std::vector<int>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}
int at(const std::vector<int>& v, size_t i) { return i < v.size() ? v[i] : 0; }
void bump(std::vector<int>& v, size_t i, int by) {
  if (v.size() <= i) v.resize(i + 1, 0);
  v[i] += by;
}
int total(const std::vector<int>& v) {
  int s = 0;
  for (int x : v) s += x;
  return s;
}
}  // namespace

void Poly::normalize() {
  std::map<std::tuple<std::vector<int>, std::vector<int>, std::vector<int>>, cplx> acc;
  for (auto& t : terms_) {
    trim(t.ze);
    trim(t.zbe);
    trim(t.pe);
    acc[{t.ze, t.zbe, t.pe}] += t.c;
  }
  terms_.clear();
  for (auto& [k, c] : acc) {
    if (c == 0.0) continue;
    terms_.push_back({c, std::get<0>(k), std::get<1>(k), std::get<2>(k)});
  }
}

Poly Poly::constant(cplx c) {
  Poly p;
  if (c != 0.0) p.terms_.push_back({c, {}, {}, {}});
  return p;
}

Poly Poly::zeta(int j, int power) {
  PolyTerm t;
  t.c = 1.0;
  bump(t.ze, j, power);
  return monomial(std::move(t));
}

Poly Poly::zetabar(int j, int power) {
  PolyTerm t;
  t.c = 1.0;
  bump(t.zbe, j, power);
  return monomial(std::move(t));
}

Poly Poly::param(int j, int power) {
  PolyTerm t;
  t.c = 1.0;
  bump(t.pe, j, power);
  return monomial(std::move(t));
}

Poly Poly::monomial(PolyTerm t) {
  Poly p;
  p.terms_.push_back(std::move(t));
  p.normalize();
  return p;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
  r.normalize();
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + o.scaled(-1.0); }

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      PolyTerm t;
      t.c = a.c * b.c;
      t.ze = a.ze;
      t.zbe = a.zbe;
      t.pe = a.pe;
      for (size_t i = 0; i < b.ze.size(); ++i) bump(t.ze, i, b.ze[i]);
      for (size_t i = 0; i < b.zbe.size(); ++i) bump(t.zbe, i, b.zbe[i]);
      for (size_t i = 0; i < b.pe.size(); ++i) bump(t.pe, i, b.pe[i]);
      r.terms_.push_back(std::move(t));
    }
  }
  r.normalize();
  return r;
}

Poly Poly::scaled(cplx s) const {
  Poly r = *this;
  for (auto& t : r.terms_) t.c *= s;
  r.normalize();
  return r;
}

cplx Poly::eval(const Point& p) const {
  cplx out(0, 0);
  for (const auto& t : terms_) {
    cplx v = t.c;
    for (size_t i = 0; i < t.ze.size(); ++i)
      for (int k = 0; k < t.ze[i]; ++k) v *= p.vars[i];
    for (size_t i = 0; i < t.zbe.size(); ++i)
      for (int k = 0; k < t.zbe[i]; ++k) v *= std::conj(p.vars[i]);
    for (size_t i = 0; i < t.pe.size(); ++i)
      for (int k = 0; k < t.pe[i]; ++k) v *= p.params[i];
    out += v;
  }
  return out;
}

Expr Poly::to_expr() const {
  std::vector<Expr> sum;
  for (const auto& t : terms_) {
    std::vector<Expr> prod;
    prod.push_back(Expr::constant(t.c));
    for (size_t i = 0; i < t.ze.size(); ++i)
      if (t.ze[i]) prod.push_back(Expr::ipow(Expr::zeta(static_cast<int>(i)), t.ze[i]));
    for (size_t i = 0; i < t.zbe.size(); ++i)
      if (t.zbe[i]) prod.push_back(Expr::ipow(Expr::zetabar(static_cast<int>(i)), t.zbe[i]));
    for (size_t i = 0; i < t.pe.size(); ++i)
      if (t.pe[i]) prod.push_back(Expr::ipow(Expr::param(static_cast<int>(i)), t.pe[i]));
    sum.push_back(Expr::product(std::move(prod)));
  }
  return Expr::sum(std::move(sum));
}

int Poly::degree_zeta() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, total(t.ze));
  return d;
}

int Poly::degree_zetabar() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, total(t.zbe));
  return d;
}

Poly Poly::zeta_to_param() const {
  Poly r;
  for (const auto& t : terms_) {
    if (total(t.zbe) != 0)
      throw std::invalid_argument("zeta_to_param requires a holomorphic polynomial");
    PolyTerm n;
    n.c = t.c;
    n.pe = t.pe;
    for (size_t i = 0; i < t.ze.size(); ++i) bump(n.pe, i, t.ze[i]);
    r.terms_.push_back(std::move(n));
  }
  r.normalize();
  return r;
}

Poly Poly::bar_to_var(int offset) const {
  Poly r;
  for (const auto& t : terms_) {
    PolyTerm n;
    n.c = t.c;
    n.ze = t.ze;
    n.pe = t.pe;
    for (size_t i = 0; i < t.zbe.size(); ++i) bump(n.ze, offset + i, t.zbe[i]);
    r.terms_.push_back(std::move(n));
  }
  r.normalize();
  return r;
}

Poly Poly::conjugated() const {
  Poly r;
  for (const auto& t : terms_) {
    if (!t.pe.empty())
      throw std::invalid_argument("conjugated() defined only for parameter-free polynomials");
    PolyTerm n;
    n.c = std::conj(t.c);
    n.ze = t.zbe;
    n.zbe = t.ze;
    r.terms_.push_back(std::move(n));
  }
  r.normalize();
  return r;
}

Poly Poly::partial_zeta(int j) const {
  Poly r;
  for (const auto& t : terms_) {
    int e = at(t.ze, j);
    if (e == 0) continue;
    PolyTerm n = t;
    n.c *= static_cast<double>(e);
    n.ze[j] -= 1;
    r.terms_.push_back(std::move(n));
  }
  r.normalize();
  return r;
}

Poly Poly::partial_zetabar(int j) const {
  Poly r;
  for (const auto& t : terms_) {
    int e = at(t.zbe, j);
    if (e == 0) continue;
    PolyTerm n = t;
    n.c *= static_cast<double>(e);
    n.zbe[j] -= 1;
    r.terms_.push_back(std::move(n));
  }
  r.normalize();
  return r;
}

}  // namespace resdiv
