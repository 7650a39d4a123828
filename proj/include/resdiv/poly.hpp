#pragma once
// Polynomials over the integration variables, their conjugates, and the
// parameter slots, with complex coefficients.  Exponent vectors are padded
// with zeros on demand, so polynomials in different variable counts mix.
#include <vector>

#include "resdiv/expr.hpp"

namespace resdiv {

struct PolyTerm {
  cplx c{0.0, 0.0};
  std::vector<int> ze;   // zeta exponents per integration variable
  std::vector<int> zbe;  // zetabar exponents
  std::vector<int> pe;   // parameter exponents
};

class Poly {
 public:
  Poly() = default;
  static Poly constant(cplx c);
  static Poly zeta(int j, int power = 1);
  static Poly zetabar(int j, int power = 1);
  static Poly param(int j, int power = 1);
  static Poly monomial(PolyTerm t);

  const std::vector<PolyTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scaled(cplx s) const;

  cplx eval(const Point& p) const;
  Expr to_expr() const;

  int degree_zeta() const;   // max total zeta degree
  int degree_zetabar() const;
  bool holomorphic() const { return degree_zetabar() == 0; }

  // zeta_j -> param_j for every j (evaluation of a holomorphic germ at the
  // parameter point); requires no zetabar content.
  Poly zeta_to_param() const;

  // zetabar_j -> zeta_{offset+j}: trades every conjugated variable for a fresh
  // holomorphic variable (the doubling move).  Parameters are untouched.
  Poly bar_to_var(int offset) const;

  // conjugate variable-wise: zeta <-> zetabar, params -> conjugated params are
  // not representable, so this requires pe empty.
  Poly conjugated() const;

  // d/d zeta_j or d/d zetabar_j
  Poly partial_zeta(int j) const;
  Poly partial_zetabar(int j) const;

 private:
  std::vector<PolyTerm> terms_;
  void normalize();
};

}  // namespace resdiv
