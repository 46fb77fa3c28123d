#pragma once

// Weighted sum-of-squares certificates on the polydisk, found by projection
// splitting between an affine coefficient-matching subspace and a product
// of structured spectral cones (PSD with a rank cap, or fixed inertia).
// Certificates are post-processed into row factors E with G = E^* E, which
// is the form the unitary extension step consumes.

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "complexmat.hpp"
#include "config.hpp"
#include "linalg.hpp"
#include "poly.hpp"
#include "rng.hpp"
#include "uniroots.hpp"

namespace hypdet {

// all exponent tuples e with 0 <= e <= caps componentwise, first slot slowest
inline std::vector<Expt> box_exponents(const Expt& caps) {
  std::vector<Expt> out;
  for (int c : caps)
    if (c < 0) return out;
  Expt e(caps.size(), 0);
  for (;;) {
    out.push_back(e);
    int a = int(caps.size()) - 1;
    while (a >= 0) {
      if (++e[a] <= caps[a]) break;
      e[a] = 0;
      --a;
    }
    if (a < 0) break;
  }
  return out;
}

inline CVec eval_exponents(const std::vector<Expt>& basis, const CVec& z) {
  CVec v(basis.size());
  for (std::size_t t = 0; t < basis.size(); ++t) {
    cd m = 1.0;
    for (std::size_t j = 0; j < z.size(); ++j)
      for (int rep = 0; rep < basis[t][j]; ++rep) m *= z[j];
    v[t] = m;
  }
  return v;
}

// Real parameterization of a Hermitian k x k matrix: the k diagonal entries
// first, then (re, im) of the strict upper triangle in row-major order.
class HermParam {
 public:
  HermParam() = default;
  explicit HermParam(int k) : k_(k) {}

  int size() const { return k_; }
  int dim() const { return k_ * k_; }

  int pair_base(int j, int l) const {  // j < l
    int idx = j * (2 * k_ - j - 1) / 2 + (l - j - 1);
    return k_ + 2 * idx;
  }

  CMat unpack(const std::vector<double>& x, int off) const {
    CMat G(k_, k_);
    for (int j = 0; j < k_; ++j) G(j, j) = x[off + j];
    for (int j = 0; j < k_; ++j)
      for (int l = j + 1; l < k_; ++l) {
        int b = pair_base(j, l);
        G(j, l) = cd(x[off + b], x[off + b + 1]);
        G(l, j) = std::conj(G(j, l));
      }
    return G;
  }

  void pack(const CMat& G, std::vector<double>& x, int off) const {
    for (int j = 0; j < k_; ++j) x[off + j] = G(j, j).real();
    for (int j = 0; j < k_; ++j)
      for (int l = j + 1; l < k_; ++l) {
        int b = pair_base(j, l);
        x[off + b] = G(j, l).real();
        x[off + b + 1] = G(j, l).imag();
      }
  }

  // accumulate factor * G[r][c] as a linear functional of the parameters
  void add_entry(int r, int c, cd factor, std::vector<cd>& row, int off) const {
    if (r == c) {
      row[off + r] += factor;
    } else if (r < c) {
      int b = pair_base(r, c);
      row[off + b] += factor;
      row[off + b + 1] += factor * cd(0.0, 1.0);
    } else {
      int b = pair_base(c, r);
      row[off + b] += factor;
      row[off + b + 1] -= factor * cd(0.0, 1.0);
    }
  }

  // accumulate factor * (mw^* G mz)
  void add_functional(const CVec& mw, const CVec& mz, cd factor, std::vector<cd>& row,
                      int off) const {
    for (int j = 0; j < k_; ++j) row[off + j] += factor * std::conj(mw[j]) * mz[j];
    for (int j = 0; j < k_; ++j)
      for (int l = j + 1; l < k_; ++l) {
        cd a = std::conj(mw[j]) * mz[l];
        cd b = std::conj(mw[l]) * mz[j];
        int base = pair_base(j, l);
        row[off + base] += factor * (a + b);
        row[off + base + 1] += factor * cd(0.0, 1.0) * (a - b);
      }
  }

 private:
  int k_ = 0;
};

inline CMat rebuild_from_eig(const HermEig& e, const std::vector<double>& lam) {
  const int n = e.vectors.rows();
  CMat G(n, n);
  for (int t = 0; t < n; ++t) {
    if (lam[t] == 0.0) continue;
    for (int i = 0; i < n; ++i) {
      cd vi = e.vectors(i, t);
      for (int j = 0; j < n; ++j) G(i, j) += lam[t] * vi * std::conj(e.vectors(j, t));
    }
  }
  return G;
}

// nearest Hermitian matrix with at most npos positive and nneg negative
// eigenvalues (largest magnitudes kept on each side)
inline CMat clamp_inertia(const CMat& G, int npos, int nneg) {
  HermEig e = jacobi_hermitian(G);
  const int n = int(e.values.size());
  std::vector<double> lam(n, 0.0);
  for (int t = n - npos; t < n; ++t)
    if (t >= 0) lam[t] = std::max(e.values[t], 0.0);
  for (int t = 0; t < nneg && t < n; ++t) lam[t] = std::min(e.values[t], 0.0);
  return rebuild_from_eig(e, lam);
}

inline CMat clamp_psd_rank(const CMat& G, int r) {
  HermEig e = jacobi_hermitian(G);
  const int n = int(e.values.size());
  std::vector<double> lam(n, 0.0);
  for (int t = n - r; t < n; ++t)
    if (t >= 0) lam[t] = std::max(e.values[t], 0.0);
  return rebuild_from_eig(e, lam);
}

// rows sqrt(lambda) * conj(v) for the positive spectrum, zero-padded to rcap
// rows; G = E^* E up to the discarded tail
inline CMat extract_rows(const CMat& G, int rcap) {
  HermEig e = jacobi_hermitian(G);
  const int n = int(e.values.size());
  CMat E(rcap, n);
  int at = 0;
  for (int t = n - 1; t >= 0 && at < rcap; --t) {
    if (e.values[t] <= 1e-10) break;
    double s = std::sqrt(e.values[t]);
    for (int j = 0; j < n; ++j) E(at, j) = s * std::conj(e.vectors(j, t));
    ++at;
  }
  return E;
}

// split an indefinite Gram matrix into positive and negative row factors:
// G = Cp^* Cp - Cn^* Cn with the given row counts
inline std::pair<CMat, CMat> extract_signed_rows(const CMat& G, int npos, int nneg) {
  HermEig e = jacobi_hermitian(G);
  const int n = int(e.values.size());
  CMat Cp(npos, n), Cn(nneg, n);
  int at = 0;
  for (int t = n - 1; t >= 0 && at < npos; --t) {
    if (e.values[t] <= 1e-10) break;
    double s = std::sqrt(e.values[t]);
    for (int j = 0; j < n; ++j) Cp(at, j) = s * std::conj(e.vectors(j, t));
    ++at;
  }
  at = 0;
  for (int t = 0; t < n && at < nneg; ++t) {
    if (e.values[t] >= -1e-10) break;
    double s = std::sqrt(-e.values[t]);
    for (int j = 0; j < n; ++j) Cn(at, j) = s * std::conj(e.vectors(j, t));
    ++at;
  }
  return {Cp, Cn};
}

// ---- affine side: rows of a real linear system with its pseudoinverse ----

struct AffineProjector {
  CMat A, P;  // P = pinv(A)
  CVec b;
  int dim = 0;

  std::vector<double> apply(const std::vector<double>& x) const {
    CVec xc(dim);
    for (int i = 0; i < dim; ++i) xc[i] = x[i];
    CVec r = A * xc;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
    CVec d = P * r;
    std::vector<double> out(x);
    for (int i = 0; i < dim; ++i) out[i] += d[i].real();
    return out;
  }
};

// drops negligible rows, normalizes the rest, and factors the pseudoinverse
inline AffineProjector make_affine_projector(const std::vector<std::vector<double>>& rows,
                                             const std::vector<double>& rhs, int dim) {
  std::vector<int> keep;
  std::vector<double> norms;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    double n2 = 0.0;
    for (double v : rows[r]) n2 += v * v;
    double n = std::sqrt(n2);
    if (n > 1e-14) {
      keep.push_back(int(r));
      norms.push_back(n);
    }
  }
  AffineProjector ap;
  ap.dim = dim;
  ap.A = CMat(int(keep.size()), dim);
  ap.b.resize(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (int j = 0; j < dim; ++j) ap.A(int(i), j) = rows[keep[i]][j] / norms[i];
    ap.b[i] = rhs[keep[i]] / norms[i];
  }
  ap.P = pinv(ap.A, 1e-12);
  return ap;
}

// ---- alternating projection engines ----

struct ApResult {
  std::vector<double> x;
  int iterations = 0;
  bool converged = false;
  std::vector<double> checkpoints;  // best residual seen up to each checkpoint
};

namespace detail_ap {

inline double dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace detail_ap

// Douglas-Rachford splitting. The driver iterate z is not feasible itself;
// progress is read off the shadow point pa(ps(z)) at checkpoints. Checkpoint
// values are running minima, so the recorded series is non-increasing even
// though raw DR residuals oscillate.
template <class PA, class PS>
inline ApResult douglas_rachford(PA&& pa, PS&& ps, std::vector<double> z, int max_iters,
                                 double tol = 1e-13) {
  ApResult res;
  double best = 1e300;
  for (int it = 1; it <= max_iters; ++it) {
    std::vector<double> x = ps(z);
    std::vector<double> two_x_minus_z(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) two_x_minus_z[i] = 2.0 * x[i] - z[i];
    std::vector<double> y = pa(two_x_minus_z);
    for (std::size_t i = 0; i < z.size(); ++i) z[i] += y[i] - x[i];
    if (it % 100 == 0 || it == max_iters) {
      std::vector<double> xx = pa(ps(z));
      double r = detail_ap::dist(xx, ps(xx));
      best = std::min(best, r);
      res.checkpoints.push_back(best);
      if (r < tol) {
        res.x = xx;
        res.iterations = it;
        res.converged = true;
        return res;
      }
    }
  }
  res.x = pa(ps(z));
  res.iterations = max_iters;
  return res;
}

// plain alternating projections; the iterate stays on the affine set
template <class PA, class PS>
inline ApResult pocs(PA&& pa, PS&& ps, std::vector<double> x, int max_iters, double tol = 1e-12) {
  ApResult res;
  double best = 1e300;
  for (int it = 1; it <= max_iters; ++it) {
    x = pa(ps(x));
    if (it % 100 == 0 || it == max_iters) {
      double r = detail_ap::dist(x, ps(x));
      best = std::min(best, r);
      res.checkpoints.push_back(best);
      if (r < tol) {
        res.x = x;
        res.iterations = it;
        res.converged = true;
        return res;
      }
    }
  }
  res.x = x;
  res.iterations = max_iters;
  return res;
}

// ---- certificates ----

enum class SosStructure { TRIDISK_C, FACE_B };

inline std::string structure_name(SosStructure s) {
  return s == SosStructure::TRIDISK_C ? "TRIDISK_C" : "FACE_B";
}

struct SosCertificate {
  SosStructure structure = SosStructure::TRIDISK_C;
  std::vector<CMat> E;                    // row factors, components x basis monomials
  std::vector<std::vector<Expt>> bases;   // monomial basis per factor
  std::vector<int> inertia;               // FACE: {n1, n2}; empty for TRIDISK
  Expt mdeg;                              // multidegree the certificate is built against
  double residual = 0.0;
  double t_used = 1.0;                    // radial contraction actually applied
  int iterations = 0;
  bool converged = false;
  std::vector<double> checkpoints;
};

inline double max_on_torus(const Poly& p, int N) {
  std::vector<cd> ring(N);
  for (int a = 0; a < N; ++a) ring[a] = std::polar(1.0, 2.0 * M_PI * a / N);
  double mx = 0.0;
  std::vector<int> idx(p.nvars, 0);
  CVec z(p.nvars);
  for (;;) {
    for (int j = 0; j < p.nvars; ++j) z[j] = ring[idx[j]];
    mx = std::max(mx, std::abs(eval_poly(p, z)));
    int a = p.nvars - 1;
    while (a >= 0 && ++idx[a] == N) idx[a--] = 0;
    if (a < 0) break;
  }
  return mx;
}

inline Poly radial_contract(const Poly& p, double t) {
  Poly r = p;
  for (auto& [e, c] : r.terms) {
    int s = 0;
    for (int v : e) s += v;
    c *= std::pow(t, s);
  }
  return r;
}

// random zero-set samples of f: fix all but one variable inside a complex
// disk, solve the remaining univariate slice, rotate which variable is
// solved so a slice-degenerate f still gets covered
inline std::vector<CVec> variety_sample(const Poly& f, int count, std::uint64_t seed,
                                        double radius = 1.2) {
  std::vector<int> solvable;
  for (int j = 0; j < f.nvars; ++j)
    if (degree_in(f, j) >= 1) solvable.push_back(j);
  if (solvable.empty()) throw std::invalid_argument("variety_sample: constant polynomial");
  double scale = std::max(1.0, max_coeff_abs(f));
  Rng rng(seed);
  std::vector<CVec> out;
  int rot = 0;
  for (int attempt = 0; attempt < 60 * count && int(out.size()) < count; ++attempt) {
    int sv = solvable[rot++ % solvable.size()];
    CVec fix(f.nvars, cd(0.0));
    bool near_one = false;
    for (int j = 0; j < f.nvars; ++j) {
      if (j == sv) continue;
      fix[j] = radius * cd(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
      if (std::abs(fix[j] - cd(1.0)) <= 1e-6) near_one = true;
    }
    if (near_one) continue;  // keep clear of the half-plane map's pole
    std::vector<cd> coeffs(degree_in(f, sv) + 1, cd(0.0));
    for (const auto& [e, c] : f.terms) {
      cd v = c;
      for (int j = 0; j < f.nvars; ++j) {
        if (j == sv) continue;
        for (int rep = 0; rep < e[j]; ++rep) v *= fix[j];
      }
      coeffs[e[sv]] += v;
    }
    RootSet rs = roots(coeffs);
    for (const cd& r : rs.roots) {
      if (int(out.size()) >= count) break;
      if (std::abs(r) >= 4.0 || std::abs(r - cd(1.0)) <= 1e-6) continue;
      CVec pt = fix;
      pt[sv] = r;
      double bound = scale;
      for (const cd& zc : pt) bound *= std::max(1.0, std::abs(zc));
      if (std::abs(eval_poly(f, pt)) > 1e-8 * bound) continue;
      out.push_back(pt);
    }
  }
  if (int(out.size()) < count)
    throw std::runtime_error("variety_sample: could not collect enough zero-set points");
  return out;
}

namespace detail_sos {

struct BlockLayout {
  std::vector<std::vector<Expt>> bases;
  std::vector<HermParam> blocks;
  std::vector<int> offsets;
  std::vector<int> caps;
  int dim = 0;
};

inline BlockLayout tridisk_layout(int n) {
  BlockLayout L;
  L.bases = {box_exponents({n - 1, 1, 1}), box_exponents({n, 0, 1}), box_exponents({n, 1, 0})};
  L.caps = {2 * n, 2, 2};
  int off = 0;
  for (const auto& b : L.bases) {
    L.blocks.emplace_back(int(b.size()));
    L.offsets.push_back(off);
    off += L.blocks.back().dim();
  }
  L.dim = off;
  return L;
}

// coefficient-matching rows for
//   p(z) conj(p(w)) - pt(z) conj(pt(w)) = sum_j (1 - z_j conj(w_j)) m^*(w) G_j m(z)
inline AffineProjector tridisk_system(const Poly& p, const Poly& pt, int n, const BlockLayout& L) {
  std::vector<Expt> mono = box_exponents({n, 1, 1});
  std::vector<std::map<Expt, int>> index(3);
  for (int j = 0; j < 3; ++j)
    for (std::size_t t = 0; t < L.bases[j].size(); ++t) index[j][L.bases[j][t]] = int(t);

  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  std::vector<cd> row(L.dim);
  for (std::size_t ai = 0; ai < mono.size(); ++ai) {
    for (std::size_t bi = ai; bi < mono.size(); ++bi) {
      const Expt& al = mono[ai];
      const Expt& be = mono[bi];
      std::fill(row.begin(), row.end(), cd(0.0));
      for (int j = 0; j < 3; ++j) {
        auto ia = index[j].find(al);
        auto ib = index[j].find(be);
        if (ia != index[j].end() && ib != index[j].end())
          L.blocks[j].add_entry(ib->second, ia->second, cd(1.0), row, L.offsets[j]);
        if (al[j] >= 1 && be[j] >= 1) {
          Expt al2 = al, be2 = be;
          al2[j] -= 1;
          be2[j] -= 1;
          auto ja = index[j].find(al2);
          auto jb = index[j].find(be2);
          if (ja != index[j].end() && jb != index[j].end())
            L.blocks[j].add_entry(jb->second, ja->second, cd(-1.0), row, L.offsets[j]);
        }
      }
      cd want = coeff(p, al) * std::conj(coeff(p, be)) - coeff(pt, al) * std::conj(coeff(pt, be));
      std::vector<double> re(L.dim), im(L.dim);
      for (int t = 0; t < L.dim; ++t) {
        re[t] = row[t].real();
        im[t] = row[t].imag();
      }
      rows.push_back(re);
      rhs.push_back(want.real());
      if (ai != bi) {
        rows.push_back(im);
        rhs.push_back(want.imag());
      }
    }
  }
  return make_affine_projector(rows, rhs, L.dim);
}

inline std::vector<double> clamp_blocks(const BlockLayout& L, const std::vector<double>& x,
                                        const std::vector<int>& npos, const std::vector<int>& nneg,
                                        bool inertia_mode) {
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < L.blocks.size(); ++j) {
    if (L.blocks[j].size() == 0) continue;
    CMat G = L.blocks[j].unpack(x, L.offsets[j]);
    CMat C = inertia_mode ? clamp_inertia(G, npos[j], nneg[j]) : clamp_psd_rank(G, npos[j]);
    L.blocks[j].pack(C, out, L.offsets[j]);
  }
  return out;
}

}  // namespace detail_sos

// certificate residual over grid pairs (TRIDISK) or zero-set pairs (FACE),
// normalized by the squared polynomial maximum on the torus grid
inline double sos_residual(const SosCertificate& cert, const Poly& p, const Config& cfg = {}) {
  const int N = cfg.grid_size;
  if (cert.structure == SosStructure::TRIDISK_C) {
    Poly pt = reflect(p, cert.mdeg);
    std::vector<cd> ring(N);
    for (int a = 0; a < N; ++a) ring[a] = std::polar(1.0, 2.0 * M_PI * a / N);
    long total = long(N) * N * N;
    std::vector<cd> P(total), PT(total);
    std::vector<CVec> Z(total);
    std::vector<std::vector<CVec>> Ev(3, std::vector<CVec>(total));
    CVec z(3);
    for (long g = 0; g < total; ++g) {
      long rest = g;
      for (int j = 0; j < 3; ++j) {
        z[j] = ring[rest % N];
        rest /= N;
      }
      Z[g] = z;
      P[g] = eval_poly(p, z);
      PT[g] = eval_poly(pt, z);
      for (int j = 0; j < 3; ++j) Ev[j][g] = cert.E[j] * eval_exponents(cert.bases[j], z);
    }
    double pmax = 0.0;
    for (long g = 0; g < total; ++g) pmax = std::max(pmax, std::abs(P[g]));
    double denom = std::max(pmax * pmax, 1e-300);
    double worst = 0.0;
    for (long gw = 0; gw < total; ++gw) {
      for (long gz = 0; gz < total; ++gz) {
        cd lhs = P[gz] * std::conj(P[gw]) - PT[gz] * std::conj(PT[gw]);
        cd rhs = 0.0;
        for (int j = 0; j < 3; ++j) {
          cd dot = 0.0;
          const CVec& ew = Ev[j][gw];
          const CVec& ez = Ev[j][gz];
          for (std::size_t t = 0; t < ew.size(); ++t) dot += std::conj(ew[t]) * ez[t];
          rhs += (cd(1.0) - Z[gz][j] * std::conj(Z[gw][j])) * dot;
        }
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    }
    return worst / denom;
  }

  // FACE: the identity lives on the zero set, so sample pairs there with a
  // sampler seeded independently of the search
  std::vector<CVec> pts = variety_sample(p, 30, 0x705eedULL, 1.0);
  std::vector<CVec> e1(pts.size()), e2(pts.size()), fv(pts.size());
  for (std::size_t s = 0; s < pts.size(); ++s) {
    e1[s] = cert.E[0] * eval_exponents(cert.bases[0], pts[s]);
    e2[s] = cert.E[1] * eval_exponents(cert.bases[1], pts[s]);
    fv[s] = cert.E[2] * eval_exponents(cert.bases[2], pts[s]);
  }
  double denom = max_on_torus(p, N);
  denom = std::max(denom * denom, 1e-300);
  double worst = 0.0;
  for (std::size_t sw = 0; sw < pts.size(); ++sw) {
    for (std::size_t sz = sw; sz < pts.size(); ++sz) {
      cd g1 = 0.0, g2 = 0.0;
      for (std::size_t t = 0; t < e1[sw].size(); ++t) g1 += std::conj(e1[sw][t]) * e1[sz][t];
      for (std::size_t t = 0; t < e2[sw].size(); ++t) g1 -= std::conj(e2[sw][t]) * e2[sz][t];
      for (std::size_t t = 0; t < fv[sw].size(); ++t) g2 += std::conj(fv[sw][t]) * fv[sz][t];
      cd val = (cd(1.0) - pts[sz][0] * std::conj(pts[sw][0])) * g1 +
               (cd(1.0) - pts[sz][1] * std::conj(pts[sw][1])) * g2;
      worst = std::max(worst, std::abs(val));
    }
  }
  return worst / denom;
}

// Certificate search for multidegree (n, 1, 1) polynomials with no zeros on
// the closed tridisk boundary grid (a min/max ratio under boundary_tol is
// treated as an actual zero). The search always tries the polynomial itself
// first; when that attempt misses the tolerance and the torus minimum is
// small, it falls back to the radial pullback p(tz) and t_used reports the
// factor. A certificate counts as converged when the projection iteration
// reaches a fixed point or the extracted factors meet sos_tol, whichever
// comes first.
inline SosCertificate find_sos_tridisk(const Poly& p, const Config& cfg = {}) {
  if (p.nvars != 3) throw std::invalid_argument("find_sos_tridisk: three variables required");
  if (degree_in(p, 1) > 1 || degree_in(p, 2) > 1)
    throw std::invalid_argument("find_sos_tridisk: degree in the last two variables exceeds 1");
  const int n = degree_in(p, 0);

  // Zero detection skips grid points with a coordinate at 1: the half-plane
  // pullback puts its pole there, and polynomials arriving through that map
  // routinely vanish on those faces without violating anything (the zero-set
  // sampler applies the same exclusion).
  double mn = 1e300, mx = 0.0;
  {
    const int N = cfg.grid_size;
    std::vector<cd> ring(N);
    for (int a = 0; a < N; ++a) ring[a] = std::polar(1.0, 2.0 * M_PI * a / N);
    CVec z(3);
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b)
        for (int c = 0; c < N; ++c) {
          z[0] = ring[a];
          z[1] = ring[b];
          z[2] = ring[c];
          double v = std::abs(eval_poly(p, z));
          mx = std::max(mx, v);
          bool near_pole = false;
          for (int j = 0; j < 3; ++j)
            if (std::abs(z[j] - cd(1.0)) <= 1e-6) near_pole = true;
          if (!near_pole) mn = std::min(mn, v);
        }
  }
  if (mx == 0.0 || mn > 1e299 || mn / mx < cfg.boundary_tol)
    throw std::runtime_error("find_sos_tridisk: zeros on the boundary torus");

  detail_sos::BlockLayout L = detail_sos::tridisk_layout(n);

  auto attempt = [&](const Poly& work, double t) {
    SosCertificate cert;
    cert.structure = SosStructure::TRIDISK_C;
    cert.mdeg = {n, 1, 1};
    cert.t_used = t;
    Poly pt = reflect(work, cert.mdeg);
    AffineProjector affine = detail_sos::tridisk_system(work, pt, n, L);

    double bmax = 0.0;
    for (const cd& v : affine.b) bmax = std::max(bmax, std::abs(v));
    double init_scale = std::sqrt(std::max(bmax, 1e-30));
    Rng rng(cfg.seed);
    std::vector<double> x0(L.dim, 0.0);
    for (std::size_t j = 0; j < L.blocks.size(); ++j) {
      int kb = L.blocks[j].size();
      if (kb == 0) continue;
      CMat Y(kb, L.caps[j]);
      for (int r = 0; r < kb; ++r)
        for (int c = 0; c < L.caps[j]; ++c) Y(r, c) = rng.cnormal() * (init_scale / 2.0);
      L.blocks[j].pack(Y * adjoint(Y), x0, L.offsets[j]);
    }

    auto ps = [&](const std::vector<double>& x) {
      return detail_sos::clamp_blocks(L, x, L.caps, {}, false);
    };
    auto pa = [&](const std::vector<double>& x) { return affine.apply(x); };
    ApResult ap = douglas_rachford(pa, ps, x0, cfg.sos_max_iters);

    cert.iterations = ap.iterations;
    cert.checkpoints = ap.checkpoints;
    cert.bases = L.bases;
    for (std::size_t j = 0; j < L.blocks.size(); ++j) {
      CMat G = L.blocks[j].size() ? L.blocks[j].unpack(ap.x, L.offsets[j]) : CMat(0, 0);
      cert.E.push_back(extract_rows(clamp_psd_rank(G, L.caps[j]), L.caps[j]));
    }
    cert.residual = sos_residual(cert, work, cfg);
    cert.converged = ap.converged || cert.residual <= cfg.sos_tol;
    return cert;
  };

  SosCertificate direct = attempt(p, 1.0);
  if (direct.converged || mn / mx >= 1e-3) return direct;
  SosCertificate pulled = attempt(radial_contract(p, cfg.t_contraction), cfg.t_contraction);
  if (pulled.converged || pulled.residual <= direct.residual) return pulled;
  return direct;
}

// Fixed-inertia certificate on the zero set of a two-variable disk
// polynomial. n1 + n2 must equal the degree in the first variable and n2
// must match the number of zeros of f(z1, 0) inside the unit disk.
inline SosCertificate find_sos_face(const Poly& f, int n1, int n2, const Config& cfg = {}) {
  if (f.nvars != 2) throw std::invalid_argument("find_sos_face: two variables required");
  const int n = degree_in(f, 0);
  const int m = degree_in(f, 1);
  if (n1 < 0 || n2 < 0 || n1 + n2 != n)
    throw std::invalid_argument("find_sos_face: inertia does not sum to the degree");
  {
    Poly slice = restrict_var(f, 1, cd(0.0));
    int inside = count_region(roots(slice), Region::DISK);
    if (inside != n2)
      throw std::invalid_argument("find_sos_face: inertia disagrees with the disk zero count " +
                                  std::to_string(inside));
  }

  std::vector<std::vector<Expt>> bases = {box_exponents({n - 1, m}), box_exponents({n, m - 1})};
  HermParam h1(int(bases[0].size())), h2(int(bases[1].size()));
  const int dim = h1.dim() + h2.dim();
  const int off2 = h1.dim();
  double scale = std::max(1.0, max_coeff_abs(f));

  Rng rng(cfg.seed);
  std::vector<CVec> pts;
  const double radii[4] = {0.25, 0.5, 0.75, 0.95};
  for (double r : radii) {
    for (int t = 0; t < 6; ++t) {
      double ang = 2.0 * M_PI * (t + rng.uniform()) / 6.0;
      cd z1 = std::polar(r, ang);
      Poly univ = restrict_var(f, 0, z1);
      int d2 = degree_in(univ, 0);
      if (d2 < 1 || univ.terms.empty()) continue;
      if (std::abs(coeff(univ, {d2})) < 1e-10 * scale) continue;
      for (const cd& z2 : roots(univ).roots)
        if (std::abs(z2) < 3.0) pts.push_back({z1, z2});
    }
  }
  if (pts.size() < 4) throw std::runtime_error("find_sos_face: zero-set sampling starved");

  std::vector<CVec> m1(pts.size()), m2(pts.size());
  for (std::size_t s = 0; s < pts.size(); ++s) {
    m1[s] = eval_exponents(bases[0], pts[s]);
    m2[s] = eval_exponents(bases[1], pts[s]);
  }
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  std::vector<cd> row(dim);
  for (std::size_t sw = 0; sw < pts.size(); ++sw) {
    for (std::size_t sz = sw; sz < pts.size(); ++sz) {
      std::fill(row.begin(), row.end(), cd(0.0));
      cd f1 = cd(1.0) - pts[sz][0] * std::conj(pts[sw][0]);
      cd f2 = cd(1.0) - pts[sz][1] * std::conj(pts[sw][1]);
      h1.add_functional(m1[sw], m1[sz], f1, row, 0);
      h2.add_functional(m2[sw], m2[sz], f2, row, off2);
      std::vector<double> re(dim), im(dim);
      for (int t = 0; t < dim; ++t) {
        re[t] = row[t].real();
        im[t] = row[t].imag();
      }
      rows.push_back(re);
      rhs.push_back(0.0);
      if (sw != sz) {
        rows.push_back(im);
        rhs.push_back(0.0);
      }
    }
  }
  {
    // gauge: trace of the second block is 1, excluding the zero solution
    std::vector<double> gauge(dim, 0.0);
    for (int t = 0; t < h2.size(); ++t) gauge[off2 + t] = 1.0;
    rows.push_back(gauge);
    rhs.push_back(1.0);
  }
  AffineProjector affine = make_affine_projector(rows, rhs, dim);

  auto ps = [&](const std::vector<double>& x) {
    std::vector<double> out(x.size());
    if (h1.size()) h1.pack(clamp_inertia(h1.unpack(x, 0), n1, n2), out, 0);
    h2.pack(clamp_psd_rank(h2.unpack(x, off2), m), out, off2);
    return out;
  };
  auto pa = [&](const std::vector<double>& x) { return affine.apply(x); };

  ApResult ap;
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::vector<double> x0(dim);
    for (double& v : x0) v = 0.3 * rng.normal();
    ApResult trial = pocs(pa, ps, x0, cfg.sos_max_iters);
    if (attempt == 0 || (trial.converged && !ap.converged)) ap = trial;
    if (ap.converged) break;
  }

  SosCertificate cert;
  cert.structure = SosStructure::FACE_B;
  cert.mdeg = {n, m};
  cert.inertia = {n1, n2};
  cert.iterations = ap.iterations;
  cert.checkpoints = ap.checkpoints;
  CMat G1 = h1.size() ? clamp_inertia(h1.unpack(ap.x, 0), n1, n2) : CMat(0, 0);
  CMat G2 = clamp_psd_rank(h2.unpack(ap.x, off2), m);
  auto [cp, cn] = extract_signed_rows(G1, n1, n2);
  cert.E = {cp, cn, extract_rows(G2, m)};
  cert.bases = {bases[0], bases[0], bases[1]};
  cert.residual = sos_residual(cert, f, cfg);
  cert.converged = ap.converged || cert.residual <= cfg.sos_tol;
  return cert;
}

struct UnitaryExtension {
  CMat U;
  std::vector<int> dims;      // row counts of the certificate factors
  double gram_mismatch = 0.0;
  double worst_map = 0.0;     // pair mapping defect of the extension
  double worst_det = 0.0;     // Hadamard-normalized determinant at the samples
};

namespace detail_sos {

inline double hadamard_normalized_det(const CMat& K) {
  double prod = 1.0;
  for (int i = 0; i < K.rows(); ++i) {
    double rn = 0.0;
    for (int j = 0; j < K.cols(); ++j) rn += std::norm(K(i, j));
    rn = std::sqrt(rn);
    if (rn == 0.0) return 0.0;
    prod *= rn;
  }
  return std::abs(lu_det(K)) / prod;
}

}  // namespace detail_sos

// Extend the shift relations encoded by a certificate to a unitary U on the
// stacked component space: each zero-set sample contributes one left/right
// vector pair, and agreement of their Gram matrices (the certificate
// identity restricted to the samples) is exactly what makes the extension
// possible. Afterwards the pencil I - U M(z) (TRIDISK) or its FACE analogue
// is singular along the zero set; both facts are asserted here.
inline UnitaryExtension unitary_from_certificate(const SosCertificate& cert, const Poly& f,
                                                 const std::vector<CVec>& samples,
                                                 const Config& cfg = {}) {
  if (samples.empty()) throw std::invalid_argument("unitary_from_certificate: no samples");
  double scale = std::max(1.0, max_coeff_abs(f));
  for (const CVec& z : samples) {
    double bound = scale;
    for (const cd& zc : z) bound *= std::max(1.0, std::abs(zc));
    if (std::abs(eval_poly(f, z)) > 1e-8 * bound)
      throw std::invalid_argument("unitary_from_certificate: sample is not on the zero set");
  }

  UnitaryExtension ext;
  for (const CMat& E : cert.E) ext.dims.push_back(E.rows());
  const int D = ext.dims[0] + ext.dims[1] + ext.dims[2];

  std::vector<CVec> lefts, rights;
  for (const CVec& z : samples) {
    CVec b0 = cert.E[0] * eval_exponents(cert.bases[0], z);
    CVec b1 = cert.E[1] * eval_exponents(cert.bases[1], z);
    CVec b2 = cert.E[2] * eval_exponents(cert.bases[2], z);
    CVec left(D), right(D);
    int at = 0;
    if (cert.structure == SosStructure::TRIDISK_C) {
      for (const cd& v : b0) { left[at] = z[0] * v; right[at] = v; ++at; }
      for (const cd& v : b1) { left[at] = z[1] * v; right[at] = v; ++at; }
      for (const cd& v : b2) { left[at] = z[2] * v; right[at] = v; ++at; }
    } else {
      for (const cd& v : b0) { left[at] = z[0] * v; right[at] = v; ++at; }
      for (const cd& v : b1) { left[at] = v; right[at] = z[0] * v; ++at; }
      for (const cd& v : b2) { left[at] = z[1] * v; right[at] = v; ++at; }
    }
    lefts.push_back(left);
    rights.push_back(right);
  }

  ext.gram_mismatch = gram_mismatch(lefts, rights);
  ext.U = lurking_isometry(lefts, rights, cfg.pair_tol);

  for (std::size_t s = 0; s < lefts.size(); ++s) {
    CVec img = ext.U * lefts[s];
    for (std::size_t t = 0; t < img.size(); ++t) img[t] -= rights[s][t];
    ext.worst_map = std::max(ext.worst_map, vec_norm(img));
  }
  if (ext.worst_map > cfg.extend_tol)
    throw std::runtime_error("unitary_from_certificate: extension does not map the pairs");

  for (std::size_t s = 0; s < samples.size(); ++s) {
    const CVec& z = samples[s];
    CMat K(D, D);
    if (cert.structure == SosStructure::TRIDISK_C) {
      CMat M(D, D);
      int at = 0;
      for (int j = 0; j < 3; ++j)
        for (int r = 0; r < ext.dims[j]; ++r, ++at) M(at, at) = z[j];
      K = CMat::eye(D) - ext.U * M;
    } else {
      CMat R(D, D), Lm(D, D);
      int at = 0;
      for (int j = 0; j < 3; ++j)
        for (int r = 0; r < ext.dims[j]; ++r, ++at) {
          R(at, at) = (j == 1) ? z[0] : cd(1.0);
          Lm(at, at) = (j == 0) ? z[0] : (j == 2 ? z[1] : cd(1.0));
        }
      K = R - ext.U * Lm;
    }
    ext.worst_det = std::max(ext.worst_det, detail_sos::hadamard_normalized_det(K));
  }
  if (ext.worst_det > 1e-7)
    throw std::runtime_error("unitary_from_certificate: shift pencil does not vanish on the zero set");
  return ext;
}

}  // namespace hypdet
