#include "resdiv/form.hpp"

#include <bit>
#include <sstream>

namespace resdiv {

namespace {
int pc(uint64_t x) { return std::popcount(x); }
uint64_t bits_below(uint64_t mask, int j) { return mask & ((uint64_t(1) << j) - 1); }
}  // namespace

int GenMask::degree() const { return pc(holo) + pc(anti) + pc(frame); }
int GenMask::form_degree() const { return pc(holo) + pc(anti); }

int merge_sign(uint64_t x, uint64_t y) {
  if (x & y) return 0;
  int inv = 0;
  uint64_t yy = y;
  while (yy) {
    int b = std::countr_zero(yy);
    yy &= yy - 1;
    inv += pc(x) - pc(bits_below(x, b));
  }
  return (inv & 1) ? -1 : 1;
}

namespace {
// Wedge two canonical-block masks; returns the parity sign (0 if degenerate)
// and fills the merged mask.
int wedge_sign(const GenMask& a, const GenMask& b, GenMask& out) {
  int sh = merge_sign(a.holo, b.holo);
  int sa = merge_sign(a.anti, b.anti);
  int sf = merge_sign(a.frame, b.frame);
  if (sh == 0 || sa == 0 || sf == 0) return 0;
  int crossings = pc(b.holo) * (pc(a.anti) + pc(a.frame)) + pc(b.anti) * pc(a.frame);
  int s = sh * sa * sf;
  if (crossings & 1) s = -s;
  out = {a.holo | b.holo, a.anti | b.anti, a.frame | b.frame};
  return s;
}
}  // namespace

Form::Form(Expr scalar) {
  if (!scalar.is_zero()) terms_.push_back({std::move(scalar), GenMask{}});
}

Form Form::term(Expr coeff, GenMask mask) {
  Form f;
  if (!coeff.is_zero()) f.terms_.push_back({std::move(coeff), mask});
  return f;
}

Form Form::dz(int j) { return term(c_one(), GenMask{uint64_t(1) << j, 0, 0}); }
Form Form::dzbar(int j) { return term(c_one(), GenMask{0, uint64_t(1) << j, 0}); }
Form Form::frame(int j) { return term(c_one(), GenMask{0, 0, uint64_t(1) << j}); }

void Form::add_term(Expr coeff, GenMask mask) {
  if (coeff.is_zero()) return;
  for (auto& t : terms_) {
    if (t.mask == mask) {
      t.coeff = t.coeff + coeff;
      return;
    }
  }
  terms_.push_back({std::move(coeff), mask});
}

Form Form::operator+(const Form& o) const {
  Form r = *this;
  for (const auto& t : o.terms_) r.add_term(t.coeff, t.mask);
  return r;
}

Form Form::operator-(const Form& o) const {
  Form r = *this;
  for (const auto& t : o.terms_) r.add_term(Expr::constant(-1.0) * t.coeff, t.mask);
  return r;
}

Form Form::scaled(Expr s) const {
  Form r;
  for (const auto& t : terms_) r.add_term(s * t.coeff, t.mask);
  return r;
}

Form Form::scaled(cplx s) const { return scaled(Expr::constant(s)); }

Form Form::component(int holo_deg, int anti_deg) const {
  Form r;
  for (const auto& t : terms_)
    if (pc(t.mask.holo) == holo_deg && pc(t.mask.anti) == anti_deg) r.terms_.push_back(t);
  return r;
}

Form Form::frame_component(uint64_t frame_mask) const {
  Form r;
  for (const auto& t : terms_)
    if (t.mask.frame == frame_mask) r.terms_.push_back(t);
  return r;
}

Form Form::frame_degree_component(int frame_deg) const {
  Form r;
  for (const auto& t : terms_)
    if (pc(t.mask.frame) == frame_deg) r.terms_.push_back(t);
  return r;
}

Expr Form::scalar_part() const {
  for (const auto& t : terms_)
    if (t.mask == GenMask{}) return t.coeff;
  return Expr::constant(0.0);
}

Form Form::simplified() const {
  Form r;
  for (const auto& t : terms_) r.add_term(t.coeff.simplified(), t.mask);
  std::vector<FormTerm> keep;
  for (auto& t : r.terms_)
    if (!t.coeff.is_zero()) keep.push_back(std::move(t));
  r.terms_ = std::move(keep);
  return r;
}

std::map<GenMask, cplx> Form::eval(const Point& p) const {
  std::map<GenMask, cplx> out;
  for (const auto& t : terms_) {
    cplx v = t.coeff.eval(p);
    if (v == 0.0) continue;
    out[t.mask] += v;
  }
  return out;
}

std::string Form::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << t.coeff.to_string();
    auto emit = [&](uint64_t m, const char* tag) {
      while (m) {
        int b = std::countr_zero(m);
        m &= m - 1;
        os << "^" << tag << b;
      }
    };
    emit(t.mask.holo, "dz");
    emit(t.mask.anti, "dw");
    emit(t.mask.frame, "e");
  }
  return os.str();
}

Form wedge(const Form& a, const Form& b) {
  std::map<GenMask, std::vector<Expr>> acc;
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      GenMask m;
      int s = wedge_sign(ta.mask, tb.mask, m);
      if (s == 0) continue;
      Expr c = ta.coeff * tb.coeff;
      if (s < 0) c = Expr::constant(-1.0) * c;
      acc[m].push_back(std::move(c));
    }
  }
  Form r;
  for (auto& [m, cs] : acc) r.terms_.push_back({Expr::sum(std::move(cs)), m});
  return r;
}

Form dbar(const Form& f, int nvars) {
  Form r;
  for (const auto& t : f.terms_) {
    for (int j = 0; j < nvars; ++j) {
      uint64_t bit = uint64_t(1) << j;
      if (t.mask.anti & bit) continue;
      Expr d = t.coeff.partial(Var{VarKind::integration, j, true});
      if (d.is_zero()) continue;
      int inv = pc(t.mask.holo) + pc(bits_below(t.mask.anti, j));
      if (inv & 1) d = Expr::constant(-1.0) * d;
      GenMask m = t.mask;
      m.anti |= bit;
      r.add_term(std::move(d), m);
    }
  }
  return r;
}

Form interior_holo(const Form& f, const std::vector<Expr>& weights) {
  Form r;
  for (const auto& t : f.terms_) {
    uint64_t h = t.mask.holo;
    while (h) {
      int j = std::countr_zero(h);
      h &= h - 1;
      if (j >= static_cast<int>(weights.size())) continue;
      Expr c = t.coeff * weights[j];
      int inv = pc(bits_below(t.mask.holo, j));
      if (inv & 1) c = Expr::constant(-1.0) * c;
      GenMask m = t.mask;
      m.holo &= ~(uint64_t(1) << j);
      r.add_term(std::move(c), m);
    }
  }
  return r;
}

Form interior_frame_weighted(const Form& f, const std::vector<Expr>& weights) {
  Form r;
  for (const auto& t : f.terms_) {
    uint64_t fm = t.mask.frame;
    while (fm) {
      int j = std::countr_zero(fm);
      fm &= fm - 1;
      if (j >= static_cast<int>(weights.size())) continue;
      Expr c = t.coeff * weights[j];
      int inv = pc(t.mask.holo) + pc(t.mask.anti) + pc(bits_below(t.mask.frame, j));
      if (inv & 1) c = Expr::constant(-1.0) * c;
      GenMask m = t.mask;
      m.frame &= ~(uint64_t(1) << j);
      r.add_term(std::move(c), m);
    }
  }
  return r;
}

Form interior_frame(const Form& f, int j) {
  std::vector<Expr> w(static_cast<size_t>(j) + 1, Expr::constant(0.0));
  w[j] = c_one();
  return interior_frame_weighted(f, w);
}

std::vector<Expr> displacement_weights(const std::vector<Expr>& base, int nvars) {
  std::vector<Expr> w;
  w.reserve(nvars);
  for (int j = 0; j < nvars; ++j)
    w.push_back(two_pi_i() * (Expr::zeta(j) - base[j]));
  return w;
}

Form nabla(const Form& f, const std::vector<Expr>& base, int nvars) {
  return interior_holo(f, displacement_weights(base, nvars)) - dbar(f, nvars);
}

cplx top_density_constant(int nvars) {
  cplx m(1, 0);
  for (int i = 0; i < nvars; ++i) m *= cplx(0, -2);
  if (((nvars * (nvars - 1) / 2) & 1) != 0) m = -m;
  return m;
}

Expr top_density(const Form& f, int nvars) {
  uint64_t full = (nvars >= 64) ? ~uint64_t(0) : ((uint64_t(1) << nvars) - 1);
  std::vector<Expr> parts;
  for (const auto& t : f.terms())
    if (t.mask.holo == full && t.mask.anti == full && t.mask.frame == 0)
      parts.push_back(t.coeff);
  return Expr::constant(top_density_constant(nvars)) * Expr::sum(std::move(parts));
}

}  // namespace resdiv
