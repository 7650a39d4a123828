#pragma once
// Scalar symbolic expressions over complex coordinates and their conjugates.
// Coordinates split into integration variables and parameters; each may appear
// conjugated.  d/dz and d/dzbar are independent directions throughout.

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace resdiv {

using cplx = std::complex<double>;

enum class VarKind : uint8_t { integration, parameter };

struct Var {
  VarKind kind = VarKind::integration;
  int index = 0;
  bool conjugated = false;

  bool operator==(const Var& o) const {
    return kind == o.kind && index == o.index && conjugated == o.conjugated;
  }
  Var conj() const { return {kind, index, !conjugated}; }
};

// Point in coordinate space: values of the unconjugated bases.
struct Point {
  std::vector<cplx> vars;    // integration variables
  std::vector<cplx> params;  // parameters
  cplx value_of(const Var& v) const;
};

struct EvalError : std::runtime_error {
  std::string path;  // /child indices from the root of the offending expression
  EvalError(const std::string& msg, std::string p)
      : std::runtime_error(msg + " at node " + p), path(std::move(p)) {}
};

// A smooth real-valued function of one real argument, with an optional
// registered derivative (itself an Atom).  `lo`/`hi` give a sample interval on
// which derivative/finite-difference agreement is expected to hold.
struct Atom {
  std::string name;
  std::function<cplx(double)> f;
  std::shared_ptr<const Atom> derivative;  // may be null
  double lo = 0.0, hi = 1.0;
};

// Built-in atom families.
// cutoff(r1sq, r2sq): 1 for t <= r1sq, 0 for t >= r2sq, smooth monotone in
// between (exactly 0/1 outside the transition window).
std::shared_ptr<const Atom> cutoff_atom(double r1sq, double r2sq);
// powlaw(p): t^p on t > 0.
std::shared_ptr<const Atom> powlaw_atom(double p);
// expneg(c): c * exp(-t), closed under differentiation.
std::shared_ptr<const Atom> expneg_atom(double c = 1.0);
// Named lookup for problem files; knows the constructible families above by
// their canonical names "cutoff(a,b)", "powlaw(p)", "expneg(c)".
std::shared_ptr<const Atom> atom_by_name(const std::string& name);

class Expr {
 public:
  enum class Kind : uint8_t { constant, var, sum, prod, ipow, recip, conj, atomapp };

  Expr();  // constant 0
  static Expr constant(cplx c);
  static Expr variable(Var v);
  static Expr zeta(int i) { return variable({VarKind::integration, i, false}); }
  static Expr zetabar(int i) { return variable({VarKind::integration, i, true}); }
  static Expr param(int i) { return variable({VarKind::parameter, i, false}); }
  static Expr parambar(int i) { return variable({VarKind::parameter, i, true}); }
  static Expr sum(std::vector<Expr> kids);
  static Expr product(std::vector<Expr> kids);
  static Expr ipow(Expr base, int k);  // k >= 0
  static Expr recip(Expr denom);
  static Expr conjugate(Expr e);
  static Expr apply(std::shared_ptr<const Atom> a, Expr arg);

  Kind kind() const;
  bool is_zero() const;  // structurally the constant 0
  bool is_one() const;
  cplx constant_value() const;

  cplx eval(const Point& p) const;
  Expr partial(const Var& v) const;
  Expr simplified() const;
  std::string to_string() const;

  // Internal node access (used by the compiler in quadrature).
  const void* node_id() const;
  Kind node_kind() const;
  const std::vector<Expr>& children() const;
  Var var() const;
  int power() const;
  const std::shared_ptr<const Atom>& atom() const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(cplx c, const Expr& e);

// Common constructions.
inline Expr c_one() { return Expr::constant(1.0); }
inline Expr two_pi_i();
// sum_i (x_i - base_i) * conj(x_i - base_i) over the given variables.
Expr norm2_diff(const std::vector<Var>& vars, const std::vector<Expr>& base);

inline Expr two_pi_i() { return Expr::constant(cplx(0.0, 2.0 * 3.14159265358979323846)); }

}  // namespace resdiv
