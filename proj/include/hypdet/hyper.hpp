#pragma once

// Sampling checks for hyperbolicity of homogeneous polynomials: restrict to
// a line x - t e, read off the roots in t, and demand they stay (close to)
// real. A Verdict is a pure function of (polynomial, direction, seed,
// config), which is what makes reports reproducible byte for byte.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "config.hpp"
#include "linalg.hpp"
#include "poly.hpp"
#include "rng.hpp"
#include "uniroots.hpp"

namespace hypdet {

struct Verdict {
  bool holds = false;
  int samples_checked = 0;
  double worst_imag = 0.0;        // max over samples of |Im root| / (1 + |root|)
  std::vector<double> witness_x;  // sample attaining worst_imag
  cd witness_root = 0.0;
  bool direction_vanishes = false;  // P(e) ~ 0 when a nonzero value was required
  std::uint64_t seed = 0;
};

namespace detail {

inline CVec to_cvec(const std::vector<double>& x) {
  CVec z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i];
  return z;
}

// coefficients of t -> P(x - t e) by interpolation at scaled Chebyshev
// nodes; exact for the polynomial degree, and free of symbolic expansion
inline std::vector<cd> line_restriction_coeffs(const Poly& P, const std::vector<double>& x,
                                               const std::vector<double>& e) {
  const int d = total_degree(P);
  const int m = d + 1;
  std::vector<double> nodes(m);
  for (int i = 0; i < m; ++i) nodes[i] = 3.0 * std::cos(M_PI * (2 * i + 1) / (2.0 * m));
  CMat V(m, m);
  CVec vals(m);
  CVec pt(P.nvars);
  for (int i = 0; i < m; ++i) {
    double t = nodes[i];
    for (int j = 0; j < P.nvars; ++j) pt[j] = x[j] - t * e[j];
    vals[i] = eval_poly(P, pt);
    double pw = 1.0;
    for (int j = 0; j < m; ++j) {
      V(i, j) = pw;
      pw *= t;
    }
  }
  return solve_square(V, vals);
}

inline void check_homogeneous(const Poly& P, Rng& rng) {
  const int d = total_degree(P);
  double scale = max_coeff_abs(P);
  if (scale == 0.0) return;
  for (int rep = 0; rep < 3; ++rep) {
    CVec x(P.nvars);
    for (int j = 0; j < P.nvars; ++j) x[j] = rng.uniform(-1.0, 1.0);
    double lam = rng.uniform(1.2, 2.2);
    CVec lx(P.nvars);
    for (int j = 0; j < P.nvars; ++j) lx[j] = lam * x[j];
    cd lhs = eval_poly(P, lx);
    cd rhs = std::pow(lam, d) * eval_poly(P, x);
    if (std::abs(lhs - rhs) > 1e-10 * (std::abs(rhs) + scale))
      throw std::invalid_argument("input polynomial is not homogeneous");
  }
}

// half the samples from the unit sphere, half from the cube [-3,3]^n
inline std::vector<double> draw_sample(Rng& rng, int nvars, int index, int total) {
  std::vector<double> x(nvars);
  if (index < total / 2) {
    double nrm = 0.0;
    for (int j = 0; j < nvars; ++j) {
      x[j] = rng.normal();
      nrm += x[j] * x[j];
    }
    nrm = std::sqrt(nrm);
    if (nrm > 0)
      for (double& v : x) v /= nrm;
  } else {
    for (int j = 0; j < nvars; ++j) x[j] = rng.uniform(-3.0, 3.0);
  }
  return x;
}

struct LineCheck {
  double worst = 0.0;
  cd worst_root = 0.0;
};

inline LineCheck check_line(const Poly& P, const std::vector<double>& x,
                            const std::vector<double>& e) {
  LineCheck lc;
  std::vector<cd> c = line_restriction_coeffs(P, x, e);
  double cn = 0.0;
  for (const cd& v : c) cn = std::max(cn, std::abs(v));
  if (cn == 0.0) return lc;  // the line misses nothing: no roots to test
  RootSet rs = roots(c);
  for (const cd& r : rs.roots) {
    double ni = std::abs(r.imag()) / (1.0 + std::abs(r));
    if (ni > lc.worst) {
      lc.worst = ni;
      lc.worst_root = r;
    }
  }
  return lc;
}

}  // namespace detail

// Roots of t -> P(x - t e) stay near the real line for sampled real x.
// A restriction that degenerates to a constant (or vanishes) has no roots
// and passes vacuously for that sample.
inline Verdict is_semi_hyperbolic(const Poly& P, const std::vector<double>& e,
                                  const Config& cfg = {}) {
  if (int(e.size()) != P.nvars) throw std::invalid_argument("direction arity mismatch");
  Rng rng(cfg.seed);
  detail::check_homogeneous(P, rng);
  Verdict v;
  v.seed = cfg.seed;
  v.witness_x.assign(P.nvars, 0.0);
  for (int s = 0; s < cfg.n_samples; ++s) {
    std::vector<double> x = detail::draw_sample(rng, P.nvars, s, cfg.n_samples);
    detail::LineCheck lc = detail::check_line(P, x, e);
    ++v.samples_checked;
    if (lc.worst > v.worst_imag) {
      v.worst_imag = lc.worst;
      v.witness_x = x;
      v.witness_root = lc.worst_root;
    }
  }
  v.holds = v.worst_imag <= cfg.real_tol;
  return v;
}

// Additionally requires P(e) != 0, so every restriction has full degree.
inline Verdict is_hyperbolic(const Poly& P, const std::vector<double>& e,
                             const Config& cfg = {}) {
  if (int(e.size()) != P.nvars) throw std::invalid_argument("direction arity mismatch");
  double pe = std::abs(eval_poly(P, detail::to_cvec(e)));
  if (pe <= 1e-10 * max_coeff_abs(P)) {
    Verdict v;
    v.seed = cfg.seed;
    v.direction_vanishes = true;
    v.holds = false;
    v.witness_x.assign(P.nvars, 0.0);
    return v;
  }
  return is_semi_hyperbolic(P, e, cfg);
}

// Hyperbolicity along random positive combinations of the cone generators;
// each sample draws a fresh direction and a fresh point.
inline Verdict is_cone_hyperbolic(const Poly& P, const std::vector<std::vector<double>>& generators,
                                  const Config& cfg = {}) {
  if (generators.empty()) throw std::invalid_argument("is_cone_hyperbolic: no generators");
  for (const auto& g : generators)
    if (int(g.size()) != P.nvars) throw std::invalid_argument("generator arity mismatch");
  Rng rng(cfg.seed);
  detail::check_homogeneous(P, rng);
  double scale = max_coeff_abs(P);
  Verdict v;
  v.seed = cfg.seed;
  v.witness_x.assign(P.nvars, 0.0);
  for (int s = 0; s < cfg.n_samples; ++s) {
    std::vector<double> e(P.nvars, 0.0);
    for (const auto& g : generators) {
      double w = rng.uniform(0.1, 1.0);
      for (int j = 0; j < P.nvars; ++j) e[j] += w * g[j];
    }
    if (std::abs(eval_poly(P, detail::to_cvec(e))) <= 1e-10 * scale) {
      v.direction_vanishes = true;
      v.holds = false;
      return v;
    }
    std::vector<double> x = detail::draw_sample(rng, P.nvars, s, cfg.n_samples);
    detail::LineCheck lc = detail::check_line(P, x, e);
    ++v.samples_checked;
    if (lc.worst > v.worst_imag) {
      v.worst_imag = lc.worst;
      v.witness_x = x;
      v.witness_root = lc.worst_root;
    }
  }
  v.holds = v.worst_imag <= cfg.real_tol;
  return v;
}

struct NonconvexityCert {
  std::vector<double> a, b, mid;  // midpoint of a segment leaving the sign region
  double value_a = 0, value_b = 0, value_mid = 0;
};

namespace detail {

inline double eval_real(const Poly& P, const std::vector<double>& x) {
  return eval_poly(P, to_cvec(x)).real();
}

inline bool segment_keeps_sign(const Poly& P, const std::vector<double>& a,
                               const std::vector<double>& b, int sgn, double floor) {
  const int pts = 16;
  std::vector<double> x(a.size());
  for (int i = 0; i < pts; ++i) {
    double t = double(i) / (pts - 1);
    for (std::size_t j = 0; j < a.size(); ++j) x[j] = a[j] + t * (b[j] - a[j]);
    double v = eval_real(P, x);
    if (v * sgn <= floor) return false;
  }
  return true;
}

// connectivity inside the sign region via a polyline with random waypoints
inline bool connected_in_region(const Poly& P, const std::vector<double>& a,
                                const std::vector<double>& b, int sgn, double floor, Rng& rng,
                                int& segment_budget) {
  if (segment_budget <= 0) return false;
  --segment_budget;
  if (segment_keeps_sign(P, a, b, sgn, floor)) return true;
  const int nv = int(a.size());
  for (int attempt = 0; attempt < 12 && segment_budget > 0; ++attempt) {
    int nw = 1 + int(rng.integer(0, 4));
    std::vector<std::vector<double>> pts{a};
    bool ok = true;
    for (int w = 0; w < nw; ++w) {
      std::vector<double> cand(nv);
      for (int j = 0; j < nv; ++j) cand[j] = rng.uniform(-3.0, 3.0);
      if (eval_real(P, cand) * sgn <= floor) {
        ok = false;
        break;
      }
      pts.push_back(cand);
    }
    if (!ok) continue;
    pts.push_back(b);
    bool all = true;
    for (std::size_t s = 0; s + 1 < pts.size() && all; ++s) {
      if (segment_budget <= 0) return false;
      --segment_budget;
      all = segment_keeps_sign(P, pts[s], pts[s + 1], sgn, floor);
    }
    if (all) return true;
  }
  return false;
}

}  // namespace detail

// Look for two points of the sign region of P containing seed_pt whose
// midpoint leaves the region (or lands on the zero set) while both points
// stay polyline-connected to the seed inside the region. Empty result means
// the search budget found nothing, not a convexity proof.
inline std::optional<NonconvexityCert> nonconvexity_certificate(const Poly& P,
                                                                const std::vector<double>& seed_pt,
                                                                int budget, std::uint64_t seed) {
  if (int(seed_pt.size()) != P.nvars) throw std::invalid_argument("seed point arity mismatch");
  double scale = max_coeff_abs(P);
  double vseed = detail::eval_real(P, seed_pt);
  if (std::abs(vseed) <= 1e-10 * scale)
    throw std::invalid_argument("nonconvexity_certificate: seed point lies on the zero set");
  const int sgn = vseed > 0 ? 1 : -1;
  const double floor = 1e-12 * scale;

  Rng rng(seed);
  std::vector<std::vector<double>> pool{seed_pt};
  for (int s = 0; s < budget; ++s) {
    std::vector<double> x(P.nvars);
    for (int j = 0; j < P.nvars; ++j) x[j] = rng.uniform(-3.0, 3.0);
    if (detail::eval_real(P, x) * sgn > floor) pool.push_back(x);
  }

  int segment_budget = 64;
  std::vector<double> mid(P.nvars);
  for (std::size_t ia = 0; ia < pool.size(); ++ia) {
    for (std::size_t ib = ia + 1; ib < pool.size(); ++ib) {
      for (int j = 0; j < P.nvars; ++j) mid[j] = 0.5 * (pool[ia][j] + pool[ib][j]);
      double vm = detail::eval_real(P, mid);
      if (vm * sgn > floor) continue;  // midpoint stays inside: not a witness
      int local_budget = segment_budget;
      Rng wp(seed ^ 0x9e3779b97f4a7c15ULL);
      if (detail::connected_in_region(P, seed_pt, pool[ia], sgn, floor, wp, local_budget) &&
          detail::connected_in_region(P, seed_pt, pool[ib], sgn, floor, wp, local_budget)) {
        NonconvexityCert cert;
        cert.a = pool[ia];
        cert.b = pool[ib];
        cert.mid = mid;
        cert.value_a = detail::eval_real(P, pool[ia]);
        cert.value_b = detail::eval_real(P, pool[ib]);
        cert.value_mid = vm;
        return cert;
      }
    }
  }
  return std::nullopt;
}

}  // namespace hypdet
