#include "resdiv/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>

namespace resdiv {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

// ---- Gauss-Legendre --------------------------------------------------------

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int order) {
  static std::mutex mu;
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  std::lock_guard<std::mutex> g(mu);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;
  std::vector<double> x(order), w(order);
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double pp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1, p1 = 0;
      for (int j = 0; j < order; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2 * j + 1) * t * p1 - j * p2) / (j + 1);
      }
      pp = order * (t * p0 - p1) / (t * t - 1);
      double dt = p0 / pp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[i] = -t;
    x[order - 1 - i] = t;
    w[i] = w[order - 1 - i] = 2.0 / ((1 - t * t) * pp * pp);
  }
  return cache.emplace(order, std::make_pair(std::move(x), std::move(w))).first->second;
}

RadialPanels uniform_panels(double lo, double hi, int npanels, int order) {
  RadialPanels p;
  p.order = order;
  for (int i = 0; i <= npanels; ++i) p.breaks.push_back(lo + (hi - lo) * i / npanels);
  return p;
}

RadialPanels graded_panels(double lo, double hi, int npanels, double ratio, int order) {
  // widths shrink geometrically toward lo: w_k proportional to ratio^{npanels-1-k}
  RadialPanels p;
  p.order = order;
  double total = 0, f = 1;
  std::vector<double> widths(npanels);
  for (int i = 0; i < npanels; ++i) {
    widths[i] = f;
    total += f;
    f /= ratio;
  }
  double acc = lo;
  p.breaks.push_back(lo);
  for (int i = 0; i < npanels; ++i) {
    acc += (hi - lo) * widths[i] / total;
    p.breaks.push_back(i + 1 == npanels ? hi : acc);
  }
  return p;
}

// ---- compiled evaluator ----------------------------------------------------

CompiledExpr::CompiledExpr(const Expr& e) {
  std::map<const void*, int> memo;
  // recursive lambda over the DAG; shared nodes compile once
  auto compile = [&](auto&& self, const Expr& x) -> int {
    auto it = memo.find(x.node_id());
    if (it != memo.end()) return it->second;
    int reg = -1;
    switch (x.node_kind()) {
      case Expr::Kind::constant: {
        reg = nregs_++;
        consts_.push_back({reg, x.constant_value()});
        break;
      }
      case Expr::Kind::var: {
        reg = nregs_++;
        Ins ins;
        ins.op = Ins::Op::loadv;
        ins.dst = reg;
        ins.v = x.var();
        code_.push_back(ins);
        break;
      }
      case Expr::Kind::sum:
      case Expr::Kind::prod: {
        bool is_sum = x.node_kind() == Expr::Kind::sum;
        const auto& kids = x.children();
        int acc = self(self, kids[0]);
        for (size_t i = 1; i < kids.size(); ++i) {
          int rhs = self(self, kids[i]);
          int dst = nregs_++;
          Ins ins;
          ins.op = is_sum ? Ins::Op::add : Ins::Op::mul;
          ins.dst = dst;
          ins.a = acc;
          ins.b = rhs;
          code_.push_back(ins);
          acc = dst;
        }
        reg = acc;
        break;
      }
      case Expr::Kind::ipow: {
        int a = self(self, x.children()[0]);
        reg = nregs_++;
        Ins ins;
        ins.op = Ins::Op::ipow;
        ins.dst = reg;
        ins.a = a;
        ins.b = x.power();
        code_.push_back(ins);
        break;
      }
      case Expr::Kind::recip: {
        int a = self(self, x.children()[0]);
        reg = nregs_++;
        Ins ins;
        ins.op = Ins::Op::recip;
        ins.dst = reg;
        ins.a = a;
        ins.b = static_cast<int>(recip_sources_.size());
        recip_sources_.push_back(x.children()[0]);
        code_.push_back(ins);
        break;
      }
      case Expr::Kind::conj: {
        int a = self(self, x.children()[0]);
        reg = nregs_++;
        Ins ins;
        ins.op = Ins::Op::conj;
        ins.dst = reg;
        ins.a = a;
        code_.push_back(ins);
        break;
      }
      case Expr::Kind::atomapp: {
        int a = self(self, x.children()[0]);
        reg = nregs_++;
        Ins ins;
        ins.op = Ins::Op::atom;
        ins.dst = reg;
        ins.a = a;
        ins.b = static_cast<int>(atoms_.size());
        atoms_.push_back(x.atom());
        code_.push_back(ins);
        break;
      }
    }
    memo[x.node_id()] = reg;
    return reg;
  };
  out_ = compile(compile, e);
}

CompiledExpr::Scratch CompiledExpr::make_scratch() const {
  Scratch s;
  s.regs.assign(nregs_, cplx(0, 0));
  for (const auto& [r, v] : consts_) s.regs[r] = v;
  return s;
}

cplx CompiledExpr::eval(const Point& p, Scratch& s) const {
  cplx* regs = s.regs.data();
  for (const Ins& ins : code_) {
    switch (ins.op) {
      case Ins::Op::loadv: {
        const auto& pool = (ins.v.kind == VarKind::integration) ? p.vars : p.params;
        cplx x = pool[ins.v.index];
        regs[ins.dst] = ins.v.conjugated ? std::conj(x) : x;
        break;
      }
      case Ins::Op::add:
        regs[ins.dst] = regs[ins.a] + regs[ins.b];
        break;
      case Ins::Op::mul: {
        cplx a = regs[ins.a], b = regs[ins.b];
        regs[ins.dst] = (a == 0.0 || b == 0.0) ? cplx(0, 0) : a * b;
        break;
      }
      case Ins::Op::ipow: {
        cplx a = regs[ins.a], r(1, 0);
        for (int k = 0; k < ins.b; ++k) r *= a;
        regs[ins.dst] = r;
        break;
      }
      case Ins::Op::recip: {
        cplx d = regs[ins.a];
        if (d == 0.0) {
          s.bad_recip = ins.b;
          regs[ins.dst] = cplx(std::nan(""), std::nan(""));
        } else {
          regs[ins.dst] = 1.0 / d;
        }
        break;
      }
      case Ins::Op::conj:
        regs[ins.dst] = std::conj(regs[ins.a]);
        break;
      case Ins::Op::atom: {
        double t = regs[ins.a].real();
        if (std::isnan(t)) {
          regs[ins.dst] = regs[ins.a];
          break;
        }
        try {
          regs[ins.dst] = atoms_[ins.b]->f(t);
        } catch (const std::exception&) {
          regs[ins.dst] = cplx(std::nan(""), std::nan(""));
        }
        break;
      }
    }
  }
  return regs[out_];
}

std::string CompiledExpr::describe_recip(int idx) const {
  if (idx < 0 || idx >= static_cast<int>(recip_sources_.size())) return "(unknown divisor)";
  return recip_sources_[idx].to_string();
}

// ---- node generation -------------------------------------------------------

namespace {

struct Ring {                 // one complex variable's polar nodes
  std::vector<double> r, wr;  // radial nodes and weights (including r factor)
  std::vector<double> c, s;   // cos/sin theta
  double wt = 0;              // theta weight
  size_t size() const { return r.size() * c.size(); }
};

Ring make_ring(const RadialPanels& rp, int ntheta) {
  Ring ring;
  const auto& [gx, gw] = gauss_legendre(rp.order);
  for (size_t p = 0; p + 1 < rp.breaks.size(); ++p) {
    double a = rp.breaks[p], b = rp.breaks[p + 1];
    for (int i = 0; i < rp.order; ++i) {
      double r = 0.5 * (a + b) + 0.5 * (b - a) * gx[i];
      ring.r.push_back(r);
      ring.wr.push_back(0.5 * (b - a) * gw[i] * r);  // polar Jacobian folded in
    }
  }
  ring.wt = 2.0 * kPi / ntheta;
  for (int i = 0; i < ntheta; ++i) {
    double t = ring.wt * i;
    ring.c.push_back(std::cos(t));
    ring.s.push_back(std::sin(t));
  }
  return ring;
}

// Indexable node set: fills vars and a complex weight for node i.
struct NodeGen {
  size_t count = 0;
  int nvars = 0;
  std::function<void(size_t, std::vector<cplx>&, cplx&)> fill;
};

NodeGen disc_product_gen(const DiscProductDomain& d) {
  auto rings = std::make_shared<std::vector<Ring>>();
  for (size_t j = 0; j < d.centers.size(); ++j)
    rings->push_back(make_ring(d.radial[j], d.ntheta[j]));
  NodeGen g;
  g.nvars = static_cast<int>(d.centers.size());
  g.count = 1;
  for (const auto& r : *rings) g.count *= r.size();
  auto centers = d.centers;
  g.fill = [rings, centers](size_t idx, std::vector<cplx>& vars, cplx& w) {
    double wt = 1;
    for (size_t j = 0; j < rings->size(); ++j) {
      const Ring& ring = (*rings)[j];
      size_t n = ring.size();
      size_t k = idx % n;
      idx /= n;
      size_t ir = k / ring.c.size(), it = k % ring.c.size();
      vars[j] = centers[j] + ring.r[ir] * cplx(ring.c[it], ring.s[it]);
      wt *= ring.wr[ir] * ring.wt;
    }
    w = wt;
  };
  return g;
}

NodeGen ball_gen(const BallDomain& d) {
  const int n = static_cast<int>(d.center.size());
  if (n == 1) {
    DiscProductDomain dp{{d.center[0]}, {d.radial}, {d.ntheta}};
    return disc_product_gen(dp);
  }
  if (n != 2) throw std::invalid_argument("ball domain supports 1 or 2 complex variables");
  struct Data {
    std::vector<double> r, wr, cph, sph, wph, ct, st;
    double wt;
    cplx c0, c1;
  };
  auto dd = std::make_shared<Data>();
  const auto& [gx, gw] = gauss_legendre(d.radial.order);
  for (size_t p = 0; p + 1 < d.radial.breaks.size(); ++p) {
    double a = d.radial.breaks[p], b = d.radial.breaks[p + 1];
    for (int i = 0; i < d.radial.order; ++i) {
      double r = 0.5 * (a + b) + 0.5 * (b - a) * gx[i];
      dd->r.push_back(r);
      dd->wr.push_back(0.5 * (b - a) * gw[i] * r * r * r);  // r^3 surface factor
    }
  }
  const auto& [px, pw] = gauss_legendre(d.nphi);
  for (int i = 0; i < d.nphi; ++i) {
    double phi = 0.25 * kPi * (px[i] + 1.0);
    dd->cph.push_back(std::cos(phi));
    dd->sph.push_back(std::sin(phi));
    dd->wph.push_back(0.25 * kPi * pw[i] * std::cos(phi) * std::sin(phi));
  }
  dd->wt = 2.0 * kPi / d.ntheta;
  for (int i = 0; i < d.ntheta; ++i) {
    dd->ct.push_back(std::cos(dd->wt * i));
    dd->st.push_back(std::sin(dd->wt * i));
  }
  dd->c0 = d.center[0];
  dd->c1 = d.center[1];
  NodeGen g;
  g.nvars = 2;
  g.count = dd->r.size() * dd->cph.size() * dd->ct.size() * dd->ct.size();
  g.fill = [dd](size_t idx, std::vector<cplx>& vars, cplx& w) {
    size_t nt = dd->ct.size();
    size_t i2 = idx % nt;
    idx /= nt;
    size_t i1 = idx % nt;
    idx /= nt;
    size_t ip = idx % dd->cph.size();
    idx /= dd->cph.size();
    size_t ir = idx;
    double r = dd->r[ir];
    vars[0] = dd->c0 + r * dd->cph[ip] * cplx(dd->ct[i1], dd->st[i1]);
    vars[1] = dd->c1 + r * dd->sph[ip] * cplx(dd->ct[i2], dd->st[i2]);
    w = dd->wr[ir] * dd->wph[ip] * dd->wt * dd->wt;
  };
  return g;
}

NodeGen torus_gen(const TorusCycle& tc) {
  struct Data {
    std::vector<cplx> centers;
    std::vector<double> radii;
    int np;
    double wt;
  };
  auto dd = std::make_shared<Data>(Data{tc.centers, tc.radii, tc.npoints, 2.0 * kPi / tc.npoints});
  NodeGen g;
  g.nvars = static_cast<int>(tc.centers.size());
  g.count = 1;
  for (size_t j = 0; j < tc.centers.size(); ++j) g.count *= tc.npoints;
  g.fill = [dd](size_t idx, std::vector<cplx>& vars, cplx& w) {
    cplx wt(1, 0);
    for (size_t j = 0; j < dd->centers.size(); ++j) {
      size_t k = idx % dd->np;
      idx /= dd->np;
      double t = dd->wt * k;
      cplx dir(std::cos(t), std::sin(t));
      vars[j] = dd->centers[j] + dd->radii[j] * dir;
      // d zeta_j = i rho e^{it} dt; uniform weight per point
      wt *= cplx(0, 1) * dd->radii[j] * dir * dd->wt;
    }
    w = wt;
  };
  return g;
}

// ---- deterministic chunked execution --------------------------------------

constexpr size_t kChunk = 2048;

cplx pairwise(std::vector<cplx> v) {
  if (v.empty()) return {0, 0};
  while (v.size() > 1) {
    std::vector<cplx> next((v.size() + 1) / 2);
    for (size_t i = 0; i < next.size(); ++i) {
      cplx s = v[2 * i];
      if (2 * i + 1 < v.size()) s += v[2 * i + 1];
      next[i] = s;
    }
    v = std::move(next);
  }
  return v[0];
}

cplx run_sum(const CompiledExpr& tape, const NodeGen& gen, const Point& params, int nthreads,
             long long* evals) {
  const size_t nchunks = (gen.count + kChunk - 1) / kChunk;
  std::vector<cplx> partial(nchunks, cplx(0, 0));
  std::atomic<size_t> next{0};
  std::mutex err_mu;
  std::string err;
  auto worker = [&]() {
    Point p = params;
    p.vars.assign(gen.nvars, cplx(0, 0));
    auto scratch = tape.make_scratch();
    for (;;) {
      size_t c = next.fetch_add(1);
      if (c >= nchunks) break;
      size_t lo = c * kChunk, hi = std::min(gen.count, lo + kChunk);
      cplx acc(0, 0);
      for (size_t i = lo; i < hi; ++i) {
        cplx w;
        gen.fill(i, p.vars, w);
        scratch.bad_recip = -1;
        cplx v = tape.eval(p, scratch);
        if (std::isnan(v.real()) || std::isnan(v.imag())) {
          std::lock_guard<std::mutex> g(err_mu);
          if (err.empty())
            err = "integrand not finite at a quadrature node; divisor: " +
                  tape.describe_recip(scratch.bad_recip);
          return;
        }
        acc += w * v;
      }
      partial[c] = acc;
    }
  };
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (!err.empty()) throw std::runtime_error(err);
  if (evals) *evals += static_cast<long long>(gen.count);
  return pairwise(std::move(partial));
}

RadialPanels halve(const RadialPanels& rp) {
  RadialPanels h = rp;
  h.order = std::max(2, rp.order / 2);
  return h;
}

}  // namespace

QuadResult integrate_density(const Expr& density, const DiscProductDomain& d, const Point& params,
                             int nthreads, bool with_error) {
  CompiledExpr tape(density);
  QuadResult q;
  q.value = run_sum(tape, disc_product_gen(d), params, nthreads, &q.evals);
  if (with_error) {
    DiscProductDomain coarse = d;
    for (auto& rp : coarse.radial) rp = halve(rp);
    for (auto& nt : coarse.ntheta) nt = std::max(4, nt / 2);
    cplx c = run_sum(tape, disc_product_gen(coarse), params, nthreads, &q.evals);
    q.error = std::abs(q.value - c);
  }
  return q;
}

QuadResult integrate_density(const Expr& density, const BallDomain& d, const Point& params,
                             int nthreads, bool with_error) {
  CompiledExpr tape(density);
  QuadResult q;
  q.value = run_sum(tape, ball_gen(d), params, nthreads, &q.evals);
  if (with_error) {
    BallDomain coarse = d;
    coarse.radial = halve(coarse.radial);
    coarse.nphi = std::max(2, d.nphi / 2);
    coarse.ntheta = std::max(4, d.ntheta / 2);
    cplx c = run_sum(tape, ball_gen(coarse), params, nthreads, &q.evals);
    q.error = std::abs(q.value - c);
  }
  return q;
}

QuadResult integrate_cycle(const Form& f, const TorusCycle& c, const Point& params, int nthreads,
                           bool with_error) {
  const int n = static_cast<int>(c.centers.size());
  uint64_t full = (uint64_t(1) << n) - 1;
  std::vector<Expr> parts;
  for (const auto& t : f.terms())
    if (t.mask.holo == full && t.mask.anti == 0 && t.mask.frame == 0) parts.push_back(t.coeff);
  Expr coeff = Expr::sum(std::move(parts));
  CompiledExpr tape(coeff);
  QuadResult q;
  q.value = run_sum(tape, torus_gen(c), params, nthreads, &q.evals);
  if (with_error) {
    TorusCycle coarse = c;
    coarse.npoints = std::max(8, c.npoints / 2);
    cplx v = run_sum(tape, torus_gen(coarse), params, nthreads, &q.evals);
    q.error = std::abs(q.value - v);
  }
  return q;
}

// ---- quasi-Monte-Carlo -----------------------------------------------------

namespace {

uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Direction numbers for the first 8 dimensions of a standard Sobol sequence.
struct SobolDim {
  int s;
  uint32_t a;
  uint32_t m[8];
};
const SobolDim kSobolTable[7] = {
    {1, 0, {1}},          {2, 1, {1, 3}},       {3, 1, {1, 3, 1}},
    {3, 2, {1, 1, 1}},    {4, 1, {1, 1, 3, 3}}, {4, 4, {1, 3, 5, 13}},
    {5, 2, {1, 1, 5, 5, 17}},
};

std::vector<std::array<uint32_t, 32>> sobol_directions(int ndim) {
  std::vector<std::array<uint32_t, 32>> v(ndim);
  for (int j = 0; j < 32; ++j) v[0][j] = uint32_t(1) << (31 - j);
  for (int d = 1; d < ndim; ++d) {
    const SobolDim& sd = kSobolTable[d - 1];
    for (int j = 0; j < sd.s; ++j) v[d][j] = sd.m[j] << (31 - j);
    for (int j = sd.s; j < 32; ++j) {
      uint32_t x = v[d][j - sd.s] ^ (v[d][j - sd.s] >> sd.s);
      for (int k = 1; k < sd.s; ++k)
        if ((sd.a >> (sd.s - 1 - k)) & 1) x ^= v[d][j - k];
      v[d][j] = x;
    }
  }
  return v;
}

}  // namespace

QuadResult integrate_density_qmc(const Expr& density, const DiscProductDomain& d,
                                 const Point& params, uint64_t nsamples, int nthreads,
                                 uint64_t seed) {
  const int nv = static_cast<int>(d.centers.size());
  const int ndim = 2 * nv;
  if (ndim > 8) throw std::invalid_argument("qmc supports up to 4 complex variables");
  auto dirs = sobol_directions(ndim);
  uint64_t st = seed;
  std::vector<uint32_t> shift(ndim);
  for (int j = 0; j < ndim; ++j) shift[j] = static_cast<uint32_t>(splitmix64(st) >> 32);

  // per-variable area of the radial support and squared-radius ranges
  double total_area = 1;
  std::vector<double> lo2(nv), hi2(nv);
  for (int j = 0; j < nv; ++j) {
    double lo = d.radial[j].breaks.front(), hi = d.radial[j].breaks.back();
    lo2[j] = lo * lo;
    hi2[j] = hi * hi;
    total_area *= kPi * (hi2[j] - lo2[j]);
  }

  CompiledExpr tape(density);
  const size_t nchunks = (nsamples + kChunk - 1) / kChunk;
  std::vector<cplx> partial(nchunks, cplx(0, 0));
  std::atomic<size_t> next{0};
  std::mutex err_mu;
  std::string err;
  auto worker = [&]() {
    Point p = params;
    p.vars.assign(nv, cplx(0, 0));
    auto scratch = tape.make_scratch();
    std::vector<uint32_t> x(ndim, 0);
    for (;;) {
      size_t c = next.fetch_add(1);
      if (c >= nchunks) break;
      size_t lo = c * kChunk, hi = std::min<size_t>(nsamples, lo + kChunk);
      // gray-code state for index i: xor of directions at the set bits of gray(i)
      std::fill(x.begin(), x.end(), 0);
      uint64_t gray = lo ^ (lo >> 1);
      for (int b = 0; b < 64 && (gray >> b); ++b)
        if ((gray >> b) & 1)
          for (int j = 0; j < ndim; ++j) x[j] ^= dirs[j][b];
      cplx acc(0, 0);
      for (size_t i = lo; i < hi; ++i) {
        for (int j = 0; j < nv; ++j) {
          double u1 = ((x[2 * j] ^ shift[2 * j]) + 0.5) * 0x1p-32;
          double u2 = ((x[2 * j + 1] ^ shift[2 * j + 1]) + 0.5) * 0x1p-32;
          double r = std::sqrt(lo2[j] + u1 * (hi2[j] - lo2[j]));
          double t = 2 * kPi * u2;
          p.vars[j] = d.centers[j] + r * cplx(std::cos(t), std::sin(t));
        }
        scratch.bad_recip = -1;
        cplx v = tape.eval(p, scratch);
        if (std::isnan(v.real()) || std::isnan(v.imag())) {
          std::lock_guard<std::mutex> g(err_mu);
          if (err.empty())
            err = "integrand not finite at a sample; divisor: " +
                  tape.describe_recip(scratch.bad_recip);
          return;
        }
        acc += v;
        int bit = std::countr_zero(~i);  // advance gray code to i+1
        if (bit < 32)
          for (int j = 0; j < ndim; ++j) x[j] ^= dirs[j][bit];
      }
      partial[c] = acc;
    }
  };
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (!err.empty()) throw std::runtime_error(err);

  // batch means over 16 contiguous chunk groups for the variance estimate
  QuadResult q;
  cplx sum = pairwise(partial);
  q.value = sum / static_cast<double>(nsamples) * total_area;
  q.evals = static_cast<long long>(nsamples);
  const int nbatch = 16;
  size_t per = (nchunks + nbatch - 1) / nbatch;
  std::vector<cplx> batch_means;
  for (size_t b = 0; b * per < nchunks; ++b) {
    cplx s(0, 0);
    size_t lo = b * per, hi = std::min(nchunks, lo + per);
    size_t count = 0;
    for (size_t cidx = lo; cidx < hi; ++cidx) {
      s += partial[cidx];
      count += static_cast<size_t>(std::min<uint64_t>(kChunk, nsamples - cidx * kChunk));
    }
    if (count) batch_means.push_back(s / static_cast<double>(count) * total_area);
  }
  if (batch_means.size() > 1) {
    cplx mean(0, 0);
    for (auto m : batch_means) mean += m;
    mean /= static_cast<double>(batch_means.size());
    double var = 0;
    for (auto m : batch_means) var += std::norm(m - mean);
    var /= batch_means.size() * (batch_means.size() - 1.0);
    q.error = std::sqrt(var);
  }
  return q;
}

void for_each_node(const DiscProductDomain& d,
                   const std::function<void(const std::vector<cplx>&, double)>& fn) {
  NodeGen g = disc_product_gen(d);
  std::vector<cplx> vars(g.nvars);
  for (size_t i = 0; i < g.count; ++i) {
    cplx w;
    g.fill(i, vars, w);
    fn(vars, w.real());
  }
}

void for_each_node(const BallDomain& d,
                   const std::function<void(const std::vector<cplx>&, double)>& fn) {
  NodeGen g = ball_gen(d);
  std::vector<cplx> vars(g.nvars);
  for (size_t i = 0; i < g.count; ++i) {
    cplx w;
    g.fill(i, vars, w);
    fn(vars, w.real());
  }
}

}  // namespace resdiv
