#pragma once
// Division interpolation data for tuples of holomorphic polynomials: for each
// tuple entry a_j a row of polynomials h_{ji}(zeta, z) with
//   a_j(zeta) - a_j(z) = sum_i h_{ji}(zeta, z) (zeta_i - z_i),
// packaged as (1,0)-forms h^j = (1/2pi i) sum_i h_{ji} dz_i so that the
// displacement contraction of h^j is exactly a_j(zeta) - a_j(z).
//
// The associated transfer operators act on the frame algebra:
//   delta_h x = sum_j h^j ^ (contract e_j) x       (an even operator)
//   H_p x = (delta_h)^p x / p!
// and satisfy, on constant-coefficient frame monomials,
//   nabla(H_p x) = H_{p-1}(delta_{a(zeta)} x) - delta_{a(z)}(H_{p-1} x).
#include <vector>

#include "resdiv/form.hpp"
#include "resdiv/poly.hpp"

namespace resdiv {

struct HeferData {
  int nvars = 0;
  std::vector<Poly> tuple;                // the a_j, holomorphic in zeta
  std::vector<std::vector<Poly>> rows;    // rows[j][i] = h_{ji}(zeta, z)
  std::vector<Form> one_forms;            // h^j as forms
  double self_check_residual = 0.0;       // max telescoping residual sampled
};

// Build the rows by variable-by-variable telescoping and self-check the
// telescoping identity at pseudo-random points (throws if it fails).
HeferData hefer_decompose(const std::vector<Poly>& tuple, int nvars);

// delta_h applied once.
Form hefer_contract(const HeferData& hd, const Form& x);

// (delta_h)^times / times! applied to x.
Form hefer_power(const HeferData& hd, int times, const Form& x);

// sum_{t>=0} (delta_h)^t / t! applied to x (terminates once the frame degree
// is exhausted).
Form hefer_exp(const HeferData& hd, const Form& x);

// Maximum residual of the transfer identity over every frame monomial, every
// 0 <= l < k <= m, and the supplied sample points.  The identity exercised:
//   nabla(H^l_k e_I) - [H^l_{k-1}(f_k e_I) - f_{l+1}(z)(H^{l+1}_k e_I)]
// with f_k the frame contraction against the tuple at zeta, and f(z) the same
// against the tuple at the parameter point.
double verify_hefer(const HeferData& hd, const std::vector<Point>& samples);

}  // namespace resdiv
