#pragma once
// Exterior algebra with three families of anticommuting generators over the
// scalar expression ring: holomorphic differentials dz_j, antiholomorphic
// differentials dzbar_j, and an auxiliary frame e_j used to track vector-valued
// data.  Every generator is odd; signs follow from the canonical storage order
//   [ all dz ascending | all dzbar ascending | all e ascending ].
#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "resdiv/expr.hpp"

namespace resdiv {

struct GenMask {
  uint64_t holo = 0;   // dz bits
  uint64_t anti = 0;   // dzbar bits
  uint64_t frame = 0;  // e bits

  auto key() const { return std::tie(holo, anti, frame); }
  bool operator==(const GenMask& o) const { return key() == o.key(); }
  bool operator<(const GenMask& o) const { return key() < o.key(); }
  int degree() const;        // total generator count
  int form_degree() const;   // dz + dzbar count only
};

struct FormTerm {
  Expr coeff;
  GenMask mask;
};

// A finite sum of terms, kept normalized: at most one term per mask, no zero
// coefficients (constant-zero pruning only; symbolic zeros may persist).
class Form {
 public:
  Form() = default;
  explicit Form(Expr scalar);
  static Form term(Expr coeff, GenMask mask);
  static Form zero() { return Form(); }
  static Form one() { return Form(c_one()); }
  static Form dz(int j);
  static Form dzbar(int j);
  static Form frame(int j);

  const std::vector<FormTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Form operator+(const Form& o) const;
  Form operator-(const Form& o) const;
  Form scaled(Expr s) const;     // multiply every coefficient (degree 0 wedge)
  Form scaled(cplx s) const;

  // Bidegree/frame filters.
  Form component(int holo_deg, int anti_deg) const;
  Form frame_component(uint64_t frame_mask) const;
  Form frame_degree_component(int frame_deg) const;
  Expr scalar_part() const;  // coefficient of the empty mask

  Form simplified() const;

  // Evaluate all coefficients at a point; drops exact numerical zeros.
  std::map<GenMask, cplx> eval(const Point& p) const;

  std::string to_string() const;

 private:
  std::vector<FormTerm> terms_;
  void add_term(Expr coeff, GenMask mask);
  friend Form wedge(const Form&, const Form&);
  friend Form dbar(const Form&, int);
  friend Form interior_holo(const Form&, const std::vector<Expr>&);
  friend Form interior_frame_weighted(const Form&, const std::vector<Expr>&);
  friend Form interior_frame(const Form&, int);
};

// Graded wedge product; returns the normalized product with merge signs.
Form wedge(const Form& a, const Form& b);

// dzbar-exterior derivative in the integration variables 0..nvars-1, applied
// from the left: dbar(c G) = sum_j (dc/dzbar_j) dzbar_j ^ G.
Form dbar(const Form& f, int nvars);

// Odd interior contraction on the dz slots: dz_j -> weights[j], an
// antiderivation acting from the left in canonical order.
Form interior_holo(const Form& f, const std::vector<Expr>& weights);

// Same on the frame slots: e_j -> weights[j].
Form interior_frame_weighted(const Form& f, const std::vector<Expr>& weights);

// Contract a single frame generator with weight 1.
Form interior_frame(const Form& f, int j);

// interior_holo with weights 2*pi*i*(zeta_j - base[j]) minus dbar: the
// combined first-order operator used throughout the kernel identities.
Form nabla(const Form& f, const std::vector<Expr>& base, int nvars);

std::vector<Expr> displacement_weights(const std::vector<Expr>& base, int nvars);

// Coefficient of the full volume mask dz_0..dz_{N-1} dzbar_0..dzbar_{N-1}
// times the constant converting it to the real measure dx_0 dy_0 ... :
//   (-1)^{N(N-1)/2} (-2i)^N.
// The frame slots must be empty in that term.
Expr top_density(const Form& f, int nvars);
cplx top_density_constant(int nvars);

// Parity sign for merging two ascending generator blocks; 0 if they overlap.
int merge_sign(uint64_t x, uint64_t y);

}  // namespace resdiv
