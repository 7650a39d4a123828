#pragma once
// Numerical integration over product-polar regions, round balls in one or two
// complex variables, and product-of-circles cycles, plus a compiled evaluator
// for the symbolic expressions that appear as integrand densities.
//
// Determinism: node sets and summation order depend only on the domain
// description, never on the thread count.  Partial sums are accumulated per
// fixed-size chunk in index order and combined by a pairwise tree.
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "resdiv/expr.hpp"
#include "resdiv/form.hpp"

namespace resdiv {

// ---- compiled evaluator ----------------------------------------------------

// Flattens an expression DAG into an instruction tape; shared subtrees are
// evaluated once.  Products absorb exact zeros (0 * anything = 0, including
// non-finite values), so a compactly supported factor masks a pole outside
// its support.  A reciprocal of zero produces NaN and records the offending
// subtree; callers should treat a NaN result as an error.
class CompiledExpr {
 public:
  explicit CompiledExpr(const Expr& e);

  struct Scratch {
    std::vector<cplx> regs;
    int bad_recip = -1;  // index into recip sources, set when RECIP hits zero
  };
  Scratch make_scratch() const;
  cplx eval(const Point& p, Scratch& s) const;

  size_t instruction_count() const { return code_.size(); }
  // Human-readable description of the divisor subtree recorded in bad_recip.
  std::string describe_recip(int idx) const;

 private:
  struct Ins {
    enum class Op : uint8_t { loadv, add, mul, ipow, recip, conj, atom } op;
    int dst = 0, a = 0, b = 0;  // b: second operand, or exponent, or atom index
    Var v{};
  };
  std::vector<Ins> code_;
  std::vector<std::pair<int, cplx>> consts_;  // (register, value), preloaded
  std::vector<std::shared_ptr<const Atom>> atoms_;
  std::vector<Expr> recip_sources_;
  int nregs_ = 0;
  int out_ = 0;
};

// ---- quadrature rules ------------------------------------------------------

struct QuadResult {
  cplx value{0.0, 0.0};
  double error = 0.0;      // nested-rule or batch-variance estimate
  long long evals = 0;     // integrand evaluations actually performed
};

// Composite radial rule: Gauss-Legendre panels between consecutive breaks.
struct RadialPanels {
  std::vector<double> breaks;  // ascending, at least two entries
  int order = 8;               // Gauss order per panel
};

// Panels from lo to hi; when graded, panel widths shrink geometrically toward
// the lo end (ratio < 1) to resolve an integrable singularity there.
RadialPanels uniform_panels(double lo, double hi, int npanels, int order);
RadialPanels graded_panels(double lo, double hi, int npanels, double ratio, int order);

// Product of discs: variable j runs over center[j] + r e^{i t}, r in the
// panel range, t uniform on [0, 2pi) with ntheta[j] points.
struct DiscProductDomain {
  std::vector<cplx> centers;
  std::vector<RadialPanels> radial;
  std::vector<int> ntheta;
};

// Round ball in C^1 or C^2 around `center`.  For C^2 the sphere directions
// are (cos(phi) e^{i t1}, sin(phi) e^{i t2}) with the r^3 cos(phi) sin(phi)
// surface factor; phi gets a Gauss rule on [0, pi/2], t1, t2 uniform.
struct BallDomain {
  std::vector<cplx> center;
  RadialPanels radial;
  int nphi = 8;
  int ntheta = 16;
};

// Product of circles |zeta_j - center_j| = radius_j, each sampled uniformly.
struct TorusCycle {
  std::vector<cplx> centers;
  std::vector<double> radii;
  int npoints = 64;
};

// Integrate a scalar density (already including any volume-form constants)
// against the real measure dx dy per variable.  `params` supplies the
// parameter slots of the evaluation points; its vars are overwritten.
QuadResult integrate_density(const Expr& density, const DiscProductDomain& d,
                             const Point& params, int nthreads = 1,
                             bool with_error = true);
QuadResult integrate_density(const Expr& density, const BallDomain& d,
                             const Point& params, int nthreads = 1,
                             bool with_error = true);

// Integrate the full-holomorphic-degree, zero-antiholomorphic-degree part of
// a form over a product-of-circles cycle via the complex parameter Jacobian.
QuadResult integrate_cycle(const Form& f, const TorusCycle& c, const Point& params,
                           int nthreads = 1, bool with_error = true);

// Quasi-Monte-Carlo integration over a disc product (up to 4 complex
// variables = 8 low-discrepancy dimensions), with a fixed digital shift and a
// batch-variance error estimate.
QuadResult integrate_density_qmc(const Expr& density, const DiscProductDomain& d,
                                 const Point& params, uint64_t nsamples = uint64_t(1) << 20,
                                 int nthreads = 1, uint64_t seed = 0x5EED);

// Enumerate the nodes and weights of a domain (diagnostics / dump support).
void for_each_node(const DiscProductDomain& d,
                   const std::function<void(const std::vector<cplx>&, double)>& fn);
void for_each_node(const BallDomain& d,
                   const std::function<void(const std::vector<cplx>&, double)>& fn);

// Gauss-Legendre nodes/weights on [-1, 1], cached by order.
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int order);

}  // namespace resdiv
