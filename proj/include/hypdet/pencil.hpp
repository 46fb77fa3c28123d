#pragma once

// Hermitian matrix pencils M(x) = sum_j x_j A_j together with the scalar in
// p = c det M, plus the machinery to turn determinants back into
// polynomials by Chebyshev tensor interpolation.

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "config.hpp"
#include "linalg.hpp"
#include "poly.hpp"
#include "uniroots.hpp"

namespace hypdet {

struct Pencil {
  std::vector<CMat> mats;  // coefficient matrix per variable
  cd c = 1.0;
  std::optional<CMat> Bp, Bm;  // PSD split of mats[1] when available
};

inline int pencil_dim(const Pencil& P) {
  if (P.mats.empty()) throw std::invalid_argument("pencil: no matrices");
  return P.mats[0].rows();
}

inline void validate_pencil(const Pencil& P, const Config& cfg = {}) {
  const int k = pencil_dim(P);
  for (const CMat& A : P.mats) {
    if (A.rows() != k || A.cols() != k) throw std::invalid_argument("pencil: mixed dimensions");
    double scale = std::max(1.0, max_abs(A));
    if (hermiticity_error(A) > 1e-10 * scale)
      throw std::invalid_argument("pencil: matrix is not Hermitian");
  }
  if (P.Bp.has_value() != P.Bm.has_value())
    throw std::invalid_argument("pencil: split needs both parts");
  if (P.Bp) {
    if (P.mats.size() < 2) throw std::invalid_argument("pencil: split without a second variable");
    for (const CMat* B : {&*P.Bp, &*P.Bm}) {
      if (B->rows() != k || B->cols() != k)
        throw std::invalid_argument("pencil: split dimension mismatch");
      double scale = std::max(1.0, max_abs(*B));
      if (hermiticity_error(*B) > 1e-10 * scale)
        throw std::invalid_argument("pencil: split part is not Hermitian");
      HermEig e = jacobi_hermitian(*B);
      if (e.values.front() < -cfg.psd_floor * scale)
        throw std::invalid_argument("pencil: split part is not PSD");
    }
    CMat diff = *P.Bp - *P.Bm - P.mats[1];
    if (max_abs(diff) > 1e-10 * std::max(1.0, max_abs(P.mats[1])))
      throw std::invalid_argument("pencil: split does not reproduce the second matrix");
  }
}

inline CMat eval_pencil(const Pencil& P, const CVec& x) {
  if (x.size() != P.mats.size()) throw std::invalid_argument("eval_pencil: point arity");
  const int k = pencil_dim(P);
  CMat M(k, k);
  for (std::size_t j = 0; j < P.mats.size(); ++j) M = M + x[j] * P.mats[j];
  return M;
}

inline cd eval_pencil_det(const Pencil& P, const CVec& x) {
  return P.c * lu_det(eval_pencil(P, x));
}

// Interpolate a scalar function known to be polynomial of degree at most
// degs[a] in variable a: sample on the Chebyshev tensor grid and solve a
// Vandermonde system along each axis in turn.
template <class F>
inline Poly interpolate_poly(F&& f, const std::vector<int>& degs) {
  const int nv = int(degs.size());
  std::vector<int> m(nv);
  long total = 1;
  for (int a = 0; a < nv; ++a) {
    if (degs[a] < 0) throw std::invalid_argument("interpolate_poly: negative degree");
    m[a] = degs[a] + 1;
    total *= m[a];
  }
  std::vector<std::vector<double>> nodes(nv);
  for (int a = 0; a < nv; ++a) {
    nodes[a].resize(m[a]);
    for (int i = 0; i < m[a]; ++i) nodes[a][i] = std::cos(M_PI * (2 * i + 1) / (2.0 * m[a]));
  }

  std::vector<cd> vals(total);
  CVec x(nv);
  std::vector<int> idx(nv, 0);
  for (long flat = 0; flat < total; ++flat) {
    long rest = flat;
    for (int a = 0; a < nv; ++a) {
      idx[a] = int(rest % m[a]);
      rest /= m[a];
      x[a] = nodes[a][idx[a]];
    }
    vals[flat] = f(x);
  }

  // values -> coefficients, one axis at a time
  for (int a = 0; a < nv; ++a) {
    CMat V(m[a], m[a]);
    for (int i = 0; i < m[a]; ++i) {
      double pw = 1.0;
      for (int j = 0; j < m[a]; ++j) {
        V(i, j) = pw;
        pw *= nodes[a][i];
      }
    }
    long stride = 1;
    for (int b = 0; b < a; ++b) stride *= m[b];
    long block = stride * m[a];
    for (long base = 0; base < total; ++base) {
      if ((base / stride) % m[a] != 0) continue;  // not the start of a line
      CVec line(m[a]);
      for (int i = 0; i < m[a]; ++i) line[i] = vals[base + i * stride];
      line = solve_square(V, line);
      for (int i = 0; i < m[a]; ++i) vals[base + i * stride] = line[i];
      (void)block;
    }
  }

  Poly out{nv, {}};
  Expt e(nv);
  double top = 0.0;
  for (long flat = 0; flat < total; ++flat) top = std::max(top, std::abs(vals[flat]));
  for (long flat = 0; flat < total; ++flat) {
    if (std::abs(vals[flat]) <= 1e-11 * top) continue;
    long rest = flat;
    for (int a = 0; a < nv; ++a) {
      e[a] = int(rest % m[a]);
      rest /= m[a];
    }
    out.terms[e] = vals[flat];
  }
  return out;
}

// c det(sum x_j A_j) as an explicit polynomial: homogeneous of degree k,
// with degree in variable j capped by rank A_j. Support outside those bounds
// is interpolation noise and is removed.
inline Poly pencil_to_poly(const Pencil& P, const Config& cfg = {}) {
  const int k = pencil_dim(P);
  if (k > 12) throw std::invalid_argument("pencil_to_poly: dimension above 12 unsupported");
  const int nv = int(P.mats.size());
  std::vector<int> degs(nv, k);
  Poly raw = interpolate_poly([&](const CVec& x) { return lu_det(eval_pencil(P, x)); }, degs);
  std::vector<int> ranks(nv);
  for (int j = 0; j < nv; ++j) ranks[j] = rank_tol(P.mats[j], cfg.rank_tol);
  Poly out{nv, {}};
  for (const auto& [e, co] : raw.terms) {
    int s = 0;
    bool ok = true;
    for (int j = 0; j < nv; ++j) {
      s += e[j];
      if (e[j] > ranks[j]) ok = false;
    }
    if (ok && s == k) out.terms[e] = co;
  }
  return prune(P.c * out, 1e-11);
}

struct VerifyOutcome {
  bool pass = false;
  double residual = 0.0;
};

// Reported, never thrown: a representation that misses its polynomial is a
// legitimate outcome of a failed construction.
inline VerifyOutcome verify_representation(const Pencil& P, const Poly& p, const Config& cfg = {}) {
  VerifyOutcome out;
  Poly recon = pencil_to_poly(P, cfg);
  out.residual = poly_max_diff(p, recon) / (1.0 + max_coeff_abs(p));
  out.pass = out.residual <= 1e-8;
  return out;
}

struct Invariant {
  bool pass = false;
  double value = 0.0;
};

// Rank and partition identities tying a split pencil to its polynomial:
// degrees in the last two variables match ranks, the negative split part
// counts upper-half-plane roots of p(1, t, i), and Bp + Bm + A2 = I.
inline std::map<std::string, Invariant> split_invariants(const Pencil& P, const Poly& p,
                                                         const Config& cfg = {}) {
  if (!P.Bp || !P.Bm) throw std::invalid_argument("split_invariants: pencil has no split");
  if (P.mats.size() != 3 || p.nvars != 3)
    throw std::invalid_argument("split_invariants: ternary pencil and polynomial required");
  std::map<std::string, Invariant> inv;

  int ra1 = rank_tol(P.mats[1], cfg.rank_tol);
  int ra2 = rank_tol(P.mats[2], cfg.rank_tol);
  int rbp = rank_tol(*P.Bp, cfg.rank_tol);
  int rbm = rank_tol(*P.Bm, cfg.rank_tol);
  inv["rank_a1_matches_deg1"] = {ra1 == degree_in(p, 1), double(ra1)};
  inv["rank_a2_matches_deg2"] = {ra2 == degree_in(p, 2), double(ra2)};

  Poly line = restrict_var(restrict_var(p, 0, 1.0), 1, cd(0.0, 1.0));  // p(1, t, i)
  RootSet rs = roots(line);
  int uhp = count_region(rs, Region::UHP);
  inv["rank_bm_matches_uhp"] = {rbm == uhp, double(uhp)};
  inv["rank_split_sum"] = {rbp + rbm == ra1, double(rbp + rbm)};

  double part = max_abs(*P.Bp + *P.Bm + P.mats[2] - CMat::eye(pencil_dim(P)));
  inv["partition_of_identity"] = {part <= 1e-10, part};
  return inv;
}

}  // namespace hypdet
