#include "resdiv/expr.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace resdiv {

cplx Point::value_of(const Var& v) const {
  const auto& pool = (v.kind == VarKind::integration) ? vars : params;
  cplx base = pool.at(static_cast<size_t>(v.index));
  return v.conjugated ? std::conj(base) : base;
}

struct Expr::Node {
  Kind kind;
  cplx value{};                       // constant
  Var var{};                          // var
  int power = 0;                      // ipow
  std::shared_ptr<const Atom> atom;   // atomapp
  std::vector<Expr> kids;
};

Expr::Expr() : Expr(constant(0.0)) {}

Expr Expr::constant(cplx c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::constant;
  n->value = c;
  return Expr(std::move(n));
}

Expr Expr::variable(Var v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::var;
  n->var = v;
  return Expr(std::move(n));
}

Expr Expr::sum(std::vector<Expr> kids) {
  // Cheap folding at construction keeps derivative trees small.
  std::vector<Expr> keep;
  keep.reserve(kids.size());
  for (auto& k : kids)
    if (!k.is_zero()) keep.push_back(std::move(k));
  if (keep.empty()) return constant(0.0);
  if (keep.size() == 1) return keep[0];
  auto n = std::make_shared<Node>();
  n->kind = Kind::sum;
  n->kids = std::move(keep);
  return Expr(std::move(n));
}

Expr Expr::product(std::vector<Expr> kids) {
  std::vector<Expr> keep;
  keep.reserve(kids.size());
  for (auto& k : kids) {
    if (k.is_zero()) return constant(0.0);
    if (!k.is_one()) keep.push_back(std::move(k));
  }
  if (keep.empty()) return constant(1.0);
  if (keep.size() == 1) return keep[0];
  auto n = std::make_shared<Node>();
  n->kind = Kind::prod;
  n->kids = std::move(keep);
  return Expr(std::move(n));
}

Expr Expr::ipow(Expr base, int k) {
  if (k < 0) throw std::invalid_argument("ipow wants k >= 0; wrap recip for negative powers");
  if (k == 0) return constant(1.0);
  if (k == 1) return base;
  auto n = std::make_shared<Node>();
  n->kind = Kind::ipow;
  n->power = k;
  n->kids.push_back(std::move(base));
  return Expr(std::move(n));
}

Expr Expr::recip(Expr denom) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::recip;
  n->kids.push_back(std::move(denom));
  return Expr(std::move(n));
}

Expr Expr::conjugate(Expr e) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::conj;
  n->kids.push_back(std::move(e));
  return Expr(std::move(n));
}

Expr Expr::apply(std::shared_ptr<const Atom> a, Expr arg) {
  if (!a) throw std::invalid_argument("null atom");
  auto n = std::make_shared<Node>();
  n->kind = Kind::atomapp;
  n->atom = std::move(a);
  n->kids.push_back(std::move(arg));
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const { return node_->kind; }
bool Expr::is_zero() const { return node_->kind == Kind::constant && node_->value == 0.0; }
bool Expr::is_one() const { return node_->kind == Kind::constant && node_->value == 1.0; }
cplx Expr::constant_value() const { return node_->value; }
const void* Expr::node_id() const { return node_.get(); }
Expr::Kind Expr::node_kind() const { return node_->kind; }
const std::vector<Expr>& Expr::children() const { return node_->kids; }
Var Expr::var() const { return node_->var; }
int Expr::power() const { return node_->power; }
const std::shared_ptr<const Atom>& Expr::atom() const { return node_->atom; }

namespace {

std::string path_string(const std::vector<int>& path) {
  if (path.empty()) return "/";
  std::string s;
  for (int i : path) s += "/" + std::to_string(i);
  return s;
}

cplx eval_rec(const Expr& e, const Point& p, std::vector<int>& path);

// Products absorb exact zeros: a factor that evaluates to exactly 0 makes the
// product 0 even if a sibling factor is singular there.  This is what lets a
// compactly supported coefficient mask a pole outside its support.
cplx eval_product(const Expr& e, const Point& p, std::vector<int>& path) {
  const auto& kids = e.children();
  std::vector<cplx> vals(kids.size());
  bool have_err = false;
  EvalError err("", "");
  for (size_t i = 0; i < kids.size(); ++i) {
    path.push_back(static_cast<int>(i));
    try {
      vals[i] = eval_rec(kids[i], p, path);
    } catch (const EvalError& ee) {
      if (!have_err) { err = ee; have_err = true; }
      vals[i] = cplx(0, 0);  // placeholder; only used if absorbed
      path.pop_back();
      // keep scanning: a later exact zero absorbs the error
      continue;
    }
    path.pop_back();
    if (vals[i] == 0.0) return cplx(0, 0);
  }
  if (have_err) throw err;
  cplx r(1, 0);
  for (cplx v : vals) r *= v;
  return r;
}

cplx eval_rec(const Expr& e, const Point& p, std::vector<int>& path) {
  switch (e.node_kind()) {
    case Expr::Kind::constant: return e.constant_value();
    case Expr::Kind::var: return p.value_of(e.var());
    case Expr::Kind::sum: {
      cplx r(0, 0);
      const auto& kids = e.children();
      for (size_t i = 0; i < kids.size(); ++i) {
        path.push_back(static_cast<int>(i));
        r += eval_rec(kids[i], p, path);
        path.pop_back();
      }
      return r;
    }
    case Expr::Kind::prod: return eval_product(e, p, path);
    case Expr::Kind::ipow: {
      path.push_back(0);
      cplx b = eval_rec(e.children()[0], p, path);
      path.pop_back();
      cplx r(1, 0);
      for (int i = 0; i < e.power(); ++i) r *= b;
      return r;
    }
    case Expr::Kind::recip: {
      path.push_back(0);
      cplx d = eval_rec(e.children()[0], p, path);
      path.pop_back();
      if (d == 0.0) throw EvalError("division by zero", path_string(path));
      return 1.0 / d;
    }
    case Expr::Kind::conj: {
      path.push_back(0);
      cplx v = eval_rec(e.children()[0], p, path);
      path.pop_back();
      return std::conj(v);
    }
    case Expr::Kind::atomapp: {
      path.push_back(0);
      cplx a = eval_rec(e.children()[0], p, path);
      path.pop_back();
      if (std::abs(a.imag()) > 1e-9 * (1.0 + std::abs(a.real())))
        throw EvalError("atom argument not real", path_string(path));
      return e.atom()->f(a.real());
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

cplx Expr::eval(const Point& p) const {
  std::vector<int> path;
  return eval_rec(*this, p, path);
}

Expr Expr::partial(const Var& v) const {
  switch (kind()) {
    case Kind::constant: return constant(0.0);
    case Kind::var: return constant(node_->var == v ? 1.0 : 0.0);
    case Kind::sum: {
      std::vector<Expr> d;
      d.reserve(node_->kids.size());
      for (const auto& k : node_->kids) d.push_back(k.partial(v));
      return sum(std::move(d));
    }
    case Kind::prod: {
      std::vector<Expr> terms;
      for (size_t i = 0; i < node_->kids.size(); ++i) {
        std::vector<Expr> factors;
        factors.reserve(node_->kids.size());
        for (size_t j = 0; j < node_->kids.size(); ++j)
          factors.push_back(j == i ? node_->kids[j].partial(v) : node_->kids[j]);
        terms.push_back(product(std::move(factors)));
      }
      return sum(std::move(terms));
    }
    case Kind::ipow: {
      const Expr& u = node_->kids[0];
      return product({constant(static_cast<double>(node_->power)),
                      ipow(u, node_->power - 1), u.partial(v)});
    }
    case Kind::recip: {
      const Expr& u = node_->kids[0];
      return product({constant(-1.0), u.partial(v), recip(ipow(u, 2))});
    }
    case Kind::conj:
      // d/dv conj(u) = conj(d/d(conj v) u)  (independent directions)
      return conjugate(node_->kids[0].partial(v.conj()));
    case Kind::atomapp: {
      if (!node_->atom->derivative)
        throw std::runtime_error("atom '" + node_->atom->name + "' has no registered derivative");
      const Expr& u = node_->kids[0];
      return product({apply(node_->atom->derivative, u), u.partial(v)});
    }
  }
  throw std::logic_error("unreachable");
}

namespace {

void flatten_into(Expr::Kind k, const Expr& e, std::vector<Expr>& out) {
  if (e.node_kind() == k) {
    for (const auto& c : e.children()) flatten_into(k, c, out);
  } else {
    out.push_back(e);
  }
}

}  // namespace

Expr Expr::simplified() const {
  switch (kind()) {
    case Kind::constant:
    case Kind::var:
      return *this;
    case Kind::sum: {
      std::vector<Expr> flat;
      for (const auto& k : node_->kids) flatten_into(Kind::sum, k.simplified(), flat);
      cplx c(0, 0);
      std::vector<Expr> keep;
      for (auto& e : flat) {
        if (e.node_kind() == Kind::constant) c += e.constant_value();
        else keep.push_back(std::move(e));
      }
      if (c != 0.0) keep.push_back(constant(c));
      return sum(std::move(keep));
    }
    case Kind::prod: {
      std::vector<Expr> flat;
      for (const auto& k : node_->kids) flatten_into(Kind::prod, k.simplified(), flat);
      cplx c(1, 0);
      std::vector<Expr> keep;
      for (auto& e : flat) {
        if (e.node_kind() == Kind::constant) c *= e.constant_value();
        else keep.push_back(std::move(e));
      }
      if (c == 0.0) return constant(0.0);
      if (c != 1.0) keep.insert(keep.begin(), constant(c));
      return product(std::move(keep));
    }
    case Kind::ipow: {
      Expr u = node_->kids[0].simplified();
      if (u.node_kind() == Kind::constant) {
        cplx r(1, 0);
        for (int i = 0; i < node_->power; ++i) r *= u.constant_value();
        return constant(r);
      }
      if (u.node_kind() == Kind::ipow)
        return ipow(u.children()[0], node_->power * u.power());
      return ipow(std::move(u), node_->power);
    }
    case Kind::recip: {
      Expr u = node_->kids[0].simplified();
      if (u.node_kind() == Kind::constant && u.constant_value() != 0.0)
        return constant(1.0 / u.constant_value());
      if (u.node_kind() == Kind::recip) return u.children()[0];
      return recip(std::move(u));
    }
    case Kind::conj: {
      Expr u = node_->kids[0].simplified();
      switch (u.node_kind()) {
        case Kind::constant: return constant(std::conj(u.constant_value()));
        case Kind::var: return variable(u.var().conj());
        case Kind::conj: return u.children()[0];
        case Kind::sum: {
          std::vector<Expr> d;
          for (const auto& k : u.children()) d.push_back(conjugate(k).simplified());
          return sum(std::move(d));
        }
        case Kind::prod: {
          std::vector<Expr> d;
          for (const auto& k : u.children()) d.push_back(conjugate(k).simplified());
          return product(std::move(d));
        }
        case Kind::ipow: return ipow(conjugate(u.children()[0]).simplified(), u.power());
        case Kind::recip: return recip(conjugate(u.children()[0]).simplified());
        case Kind::atomapp:
          // atoms are real-valued on real arguments
          return apply(u.atom(), conjugate(u.children()[0]).simplified());
      }
      return conjugate(std::move(u));
    }
    case Kind::atomapp:
      return apply(node_->atom, node_->kids[0].simplified());
  }
  throw std::logic_error("unreachable");
}

std::string Expr::to_string() const {
  std::ostringstream os;
  switch (kind()) {
    case Kind::constant: {
      cplx c = node_->value;
      if (c.imag() == 0.0) os << c.real();
      else os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
      break;
    }
    case Kind::var: {
      os << (node_->var.kind == VarKind::integration ? "x" : "p") << node_->var.index;
      if (node_->var.conjugated) os << "~";
      break;
    }
    case Kind::sum: {
      os << "(";
      for (size_t i = 0; i < node_->kids.size(); ++i)
        os << (i ? " + " : "") << node_->kids[i].to_string();
      os << ")";
      break;
    }
    case Kind::prod: {
      os << "(";
      for (size_t i = 0; i < node_->kids.size(); ++i)
        os << (i ? "*" : "") << node_->kids[i].to_string();
      os << ")";
      break;
    }
    case Kind::ipow: os << node_->kids[0].to_string() << "^" << node_->power; break;
    case Kind::recip: os << "1/(" << node_->kids[0].to_string() << ")"; break;
    case Kind::conj: os << "conj(" << node_->kids[0].to_string() << ")"; break;
    case Kind::atomapp:
      os << node_->atom->name << "(" << node_->kids[0].to_string() << ")";
      break;
  }
  return os.str();
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) {
  return Expr::sum({a, Expr::product({Expr::constant(-1.0), b})});
}
Expr operator*(const Expr& a, const Expr& b) { return Expr::product({a, b}); }
Expr operator-(const Expr& a) { return Expr::product({Expr::constant(-1.0), a}); }
Expr operator*(cplx c, const Expr& e) { return Expr::product({Expr::constant(c), e}); }

Expr norm2_diff(const std::vector<Var>& vars, const std::vector<Expr>& base) {
  std::vector<Expr> terms;
  for (size_t i = 0; i < vars.size(); ++i) {
    Expr d = Expr::variable(vars[i]) - base[i];
    terms.push_back(d * Expr::conjugate(d));
  }
  return Expr::sum(std::move(terms));
}

// ---- atoms ----------------------------------------------------------------

namespace {

double smooth_step_raw(double s) {
  // E(s)/(E(s)+E(1-s)) with E(s)=exp(-1/s); exactly 0 for s<=0, 1 for s>=1.
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  double a = std::exp(-1.0 / s);
  double b = std::exp(-1.0 / (1.0 - s));
  return a / (a + b);
}

double smooth_step_deriv(double s) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  double a = std::exp(-1.0 / s);
  double b = std::exp(-1.0 / (1.0 - s));
  double ap = a / (s * s);
  double bp = -b / ((1.0 - s) * (1.0 - s));
  double denom = (a + b) * (a + b);
  return (ap * b - a * bp) / denom;
}

double smooth_step_deriv2(double s) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  double t = 1.0 - s;
  double a = std::exp(-1.0 / s);
  double b = std::exp(-1.0 / t);
  double ap = a / (s * s);
  double bp = -b / (t * t);
  double app = a * (1.0 / (s * s * s * s) - 2.0 / (s * s * s));
  double bpp = b * (1.0 / (t * t * t * t) - 2.0 / (t * t * t));
  double D = a + b;
  double W = ap * b - a * bp;
  double Wp = app * b - a * bpp;
  return Wp / (D * D) - 2.0 * W * (ap + bp) / (D * D * D);
}

std::mutex reg_mutex;
std::map<std::string, std::shared_ptr<const Atom>>& registry() {
  static std::map<std::string, std::shared_ptr<const Atom>> r;
  return r;
}

std::shared_ptr<const Atom> register_atom(std::shared_ptr<Atom> a) {
  std::lock_guard<std::mutex> g(reg_mutex);
  auto& r = registry();
  auto it = r.find(a->name);
  if (it != r.end()) return it->second;
  std::shared_ptr<const Atom> stored = a;
  r[a->name] = stored;
  return stored;
}

std::string fmt_num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

std::shared_ptr<const Atom> cutoff_atom(double r1sq, double r2sq) {
  if (!(0.0 < r1sq && r1sq < r2sq)) throw std::invalid_argument("cutoff wants 0 < r1sq < r2sq");
  const double w = r2sq - r1sq;
  // chi(t) = h((r2sq - t)/w); chain rule brings a factor (-1/w) per level.
  auto d2 = std::make_shared<Atom>();
  d2->name = "cutoff_d2(" + fmt_num(r1sq) + "," + fmt_num(r2sq) + ")";
  d2->f = [r2sq, w](double t) {
    return cplx(smooth_step_deriv2((r2sq - t) / w) / (w * w), 0.0);
  };
  d2->lo = 0.5 * r1sq; d2->hi = 1.2 * r2sq;

  auto d1 = std::make_shared<Atom>();
  d1->name = "cutoff_d1(" + fmt_num(r1sq) + "," + fmt_num(r2sq) + ")";
  d1->f = [r2sq, w](double t) { return cplx(smooth_step_deriv((r2sq - t) / w) * (-1.0 / w), 0.0); };
  d1->derivative = register_atom(d2);
  d1->lo = 0.5 * r1sq; d1->hi = 1.2 * r2sq;

  auto a = std::make_shared<Atom>();
  a->name = "cutoff(" + fmt_num(r1sq) + "," + fmt_num(r2sq) + ")";
  a->f = [r2sq, w](double t) { return cplx(smooth_step_raw((r2sq - t) / w), 0.0); };
  a->derivative = register_atom(d1);
  a->lo = 0.5 * r1sq; a->hi = 1.2 * r2sq;
  return register_atom(a);
}

namespace {
// c * t^q with a derivative chain a few levels deep.
std::shared_ptr<const Atom> powmon_atom(double c, double q, int depth) {
  auto a = std::make_shared<Atom>();
  a->name = "powmon(" + fmt_num(c) + "," + fmt_num(q) + ")";
  a->f = [c, q](double t) {
    if (t <= 0.0) throw std::runtime_error("powmon argument must be positive");
    return cplx(c * std::pow(t, q), 0.0);
  };
  if (depth > 0) a->derivative = powmon_atom(c * q, q - 1.0, depth - 1);
  a->lo = 0.1;
  a->hi = 3.0;
  return register_atom(a);
}
}  // namespace

std::shared_ptr<const Atom> powlaw_atom(double p) {
  auto a = std::make_shared<Atom>();
  a->name = "powlaw(" + fmt_num(p) + ")";
  a->f = [p](double t) {
    if (t <= 0.0) throw std::runtime_error("powlaw argument must be positive");
    return cplx(std::pow(t, p), 0.0);
  };
  a->derivative = powmon_atom(p, p - 1.0, 3);
  a->lo = 0.1;
  a->hi = 3.0;
  return register_atom(a);
}

std::shared_ptr<const Atom> expneg_atom(double c) {
  // self-similar derivative chain: d/dt (c e^-t) = (-c) e^-t
  auto make = [](double cc) {
    auto a = std::make_shared<Atom>();
    a->name = "expneg(" + fmt_num(cc) + ")";
    a->f = [cc](double t) { return cplx(cc * std::exp(-t), 0.0); };
    a->lo = 0.0;
    a->hi = 4.0;
    return a;
  };
  auto areg = register_atom(make(c));
  auto dreg = register_atom(make(-c));
  // the pair forms a two-cycle under differentiation; both live in the
  // process-lifetime registry, so the reference cycle is intentional
  const_cast<Atom*>(areg.get())->derivative = dreg;
  const_cast<Atom*>(dreg.get())->derivative = areg;
  return areg;
}

std::shared_ptr<const Atom> atom_by_name(const std::string& name) {
  {
    std::lock_guard<std::mutex> g(reg_mutex);
    auto it = registry().find(name);
    if (it != registry().end()) return it->second;
  }
  // parse the two constructible families
  auto parse_args = [&](const std::string& prefix) -> std::vector<double> {
    if (name.rfind(prefix + "(", 0) != 0 || name.back() != ')') return {};
    std::string inner = name.substr(prefix.size() + 1, name.size() - prefix.size() - 2);
    std::vector<double> out;
    std::istringstream is(inner);
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(std::stod(tok));
    return out;
  };
  if (auto a = parse_args("cutoff"); a.size() == 2) return cutoff_atom(a[0], a[1]);
  if (auto a = parse_args("powlaw"); a.size() == 1) return powlaw_atom(a[0]);
  if (auto a = parse_args("powmon"); a.size() == 2) return powmon_atom(a[0], a[1], 3);
  if (auto a = parse_args("expneg"); a.size() == 1) return expneg_atom(a[0]);
  throw std::invalid_argument("unknown atom: " + name);
}

}  // namespace resdiv
