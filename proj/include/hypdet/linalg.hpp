#pragma once

// Dense complex linear algebra on one self-contained kernel: a cyclic
// Jacobi eigensolver for Hermitian matrices. Everything else here
// (singular values, pseudoinverse, spectral split of a unitary, rank,
// subspace completion) is derived from it, which keeps the numerics
// dependency-free and easy to audit. Dimensions stay small (<= ~60 for
// eigenproblems), where Jacobi is competitive and very accurate.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "complexmat.hpp"
#include "rng.hpp"

namespace hypdet {

struct HermEig {
  std::vector<double> values;  // ascending
  CMat vectors;                // unitary, column j pairs with values[j]
};

// H = Q diag(values) Q^*. Input must be Hermitian to 1e-10 relative; it is
// symmetrized before iterating so the rotations see an exactly Hermitian
// matrix.
inline HermEig jacobi_hermitian(CMat H) {
  const int n = H.rows();
  if (n != H.cols()) throw std::invalid_argument("jacobi_hermitian: not square");
  double scale = frob_norm(H);
  // absolute floor: a matrix of pure rounding noise is Hermitian for our purposes
  if (hermiticity_error(H) > 1e-14 + 1e-10 * scale)
    throw std::invalid_argument("jacobi_hermitian: input not Hermitian");
  for (int i = 0; i < n; ++i) {
    H(i, i) = cd(H(i, i).real(), 0.0);
    for (int j = i + 1; j < n; ++j) {
      cd m = 0.5 * (H(i, j) + std::conj(H(j, i)));
      H(i, j) = m;
      H(j, i) = std::conj(m);
    }
  }

  CMat Q = CMat::eye(n);
  const double stop = 1e-14 * std::max(scale, 1e-300);
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off = std::max(off, std::abs(H(i, j)));
    if (off <= stop) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        cd apq = H(p, q);
        double mag = std::abs(apq);
        if (mag <= stop * 1e-2) continue;
        double app = H(p, p).real();
        double aqq = H(q, q).real();
        cd phase = apq / mag;  // e^{i alpha}
        double tau = (aqq - app) / (2.0 * mag);
        double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;
        cd sp = s * phase;         // J(p,q)
        cd sm = s * std::conj(phase);

        // A <- J^* A J with J = [[c, s e^{ia}], [-s e^{-ia}, c]] on (p,q)
        for (int i = 0; i < n; ++i) {  // columns
          cd hip = H(i, p), hiq = H(i, q);
          H(i, p) = c * hip - sm * hiq;
          H(i, q) = sp * hip + c * hiq;
        }
        for (int i = 0; i < n; ++i) {  // rows
          cd hpi = H(p, i), hqi = H(q, i);
          H(p, i) = c * hpi - sp * hqi;
          H(q, i) = sm * hpi + c * hqi;
        }
        H(p, q) = 0.0;
        H(q, p) = 0.0;
        H(p, p) = cd(H(p, p).real(), 0.0);
        H(q, q) = cd(H(q, q).real(), 0.0);
        for (int i = 0; i < n; ++i) {  // accumulate Q <- Q J
          cd qip = Q(i, p), qiq = Q(i, q);
          Q(i, p) = c * qip - sm * qiq;
          Q(i, q) = sp * qip + c * qiq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return H(i, i).real() < H(j, j).real(); });
  HermEig out;
  out.values.resize(n);
  out.vectors = CMat(n, n);
  for (int j = 0; j < n; ++j) {
    out.values[j] = H(order[j], order[j]).real();
    for (int i = 0; i < n; ++i) out.vectors(i, j) = Q(i, order[j]);
  }
  return out;
}

// singular values, descending, as square roots of the eigenvalues of the
// smaller of M^*M and MM^*
inline std::vector<double> singular_values(const CMat& M) {
  const bool tall = M.rows() >= M.cols();
  CMat G = tall ? adjoint(M) * M : M * adjoint(M);
  HermEig e = jacobi_hermitian(G);
  double lmax = 0.0;
  for (double v : e.values) lmax = std::max(lmax, v);
  // Eigenvalues of the Gram matrix below its rounding noise (eps * lmax)
  // would otherwise surface as spurious singular values near sqrt(eps),
  // right where rank cutoffs live; they are zeroed instead.
  double floor = 1e-13 * lmax;
  std::vector<double> s;
  for (int i = int(e.values.size()) - 1; i >= 0; --i) {
    double v = e.values[i];
    s.push_back(v > floor ? std::sqrt(v) : 0.0);
  }
  return s;
}

struct RankInfo {
  int rank = 0;
  double gap_ratio = 0.0;  // sigma_r / sigma_{r+1} at the cut; inf-like when clean
  bool ambiguous = false;  // consecutive singular values closer than a decade
};

inline RankInfo rank_info(const CMat& M, double tol) {
  RankInfo info;
  if (M.rows() == 0 || M.cols() == 0) return info;
  std::vector<double> s = singular_values(M);
  double smax = s.empty() ? 0.0 : s[0];
  if (smax <= 0.0) return info;
  for (double v : s)
    if (v > tol * smax) ++info.rank;
  if (info.rank > 0 && info.rank < int(s.size())) {
    double below = s[info.rank];
    info.gap_ratio = below > 0 ? s[info.rank - 1] / below : 1e300;
    info.ambiguous = info.gap_ratio < 10.0;
  } else {
    info.gap_ratio = 1e300;
  }
  return info;
}

inline int rank_tol(const CMat& M, double tol) { return rank_info(M, tol).rank; }

// determinant by LU with partial pivoting
inline cd lu_det(CMat A) {
  const int n = A.rows();
  if (n != A.cols()) throw std::invalid_argument("lu_det: not square");
  cd det = 1.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(A(k, k));
    for (int i = k + 1; i < n; ++i)
      if (std::abs(A(i, k)) > best) { best = std::abs(A(i, k)); piv = i; }
    if (best == 0.0) return 0.0;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(A(k, j), A(piv, j));
      det = -det;
    }
    det *= A(k, k);
    for (int i = k + 1; i < n; ++i) {
      cd m = A(i, k) / A(k, k);
      for (int j = k + 1; j < n; ++j) A(i, j) -= m * A(k, j);
    }
  }
  return det;
}

// solve Ax = b for square nonsingular A (LU, partial pivoting)
inline CVec solve_square(CMat A, CVec b) {
  const int n = A.rows();
  if (n != A.cols() || n != int(b.size()))
    throw std::invalid_argument("solve_square: shape mismatch");
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(A(k, k));
    for (int i = k + 1; i < n; ++i)
      if (std::abs(A(i, k)) > best) { best = std::abs(A(i, k)); piv = i; }
    if (best == 0.0) throw std::runtime_error("solve_square: singular matrix");
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(A(k, j), A(piv, j));
      std::swap(b[k], b[piv]);
    }
    for (int i = k + 1; i < n; ++i) {
      cd m = A(i, k) / A(k, k);
      b[i] -= m * b[k];
      for (int j = k + 1; j < n; ++j) A(i, j) -= m * A(k, j);
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    cd s = b[i];
    for (int j = i + 1; j < n; ++j) s -= A(i, j) * b[j];
    b[i] = s / A(i, i);
  }
  return b;
}

// Moore-Penrose pseudoinverse through the smaller Gram matrix; rcond is the
// singular-value cutoff relative to the largest one (matching the usual
// lstsq convention).
inline CMat pinv(const CMat& A, double rcond = 1e-12) {
  if (A.rows() == 0 || A.cols() == 0) return CMat(A.cols(), A.rows());
  const bool tall = A.rows() >= A.cols();
  CMat G = tall ? adjoint(A) * A : A * adjoint(A);
  HermEig e = jacobi_hermitian(G);
  double lmax = 0.0;
  for (double v : e.values) lmax = std::max(lmax, v);
  // The squared spectrum cannot resolve below the eigensolver's noise floor
  // (about eps * lmax); a finer rcond would invert pure rounding noise, so
  // the cutoff is clamped there.
  double cut = std::max(rcond * rcond, 1e-13) * lmax;
  CMat Ginv(G.rows(), G.rows());
  // G^+ = V diag(1/lambda) V^* over kept eigenvalues
  for (int t = 0; t < G.rows(); ++t) {
    if (e.values[t] <= cut || e.values[t] <= 0.0) continue;
    double inv = 1.0 / e.values[t];
    for (int i = 0; i < G.rows(); ++i) {
      cd vi = e.vectors(i, t);
      if (vi == cd(0.0)) continue;
      for (int j = 0; j < G.rows(); ++j)
        Ginv(i, j) += inv * vi * std::conj(e.vectors(j, t));
    }
  }
  return tall ? Ginv * adjoint(A) : adjoint(A) * Ginv;
}

inline CVec lstsq(const CMat& A, const CVec& b, double rcond = 1e-12) {
  return pinv(A, rcond) * b;
}

// Orthonormal basis of the orthogonal complement of the (orthonormal)
// columns of Q, from the eigenvectors of I - QQ^* at eigenvalue 1.
inline CMat orthonormal_complement(const CMat& Q) {
  const int n = Q.rows();
  const int s = Q.cols();
  if (s == 0) return CMat::eye(n);
  CMat P = CMat::eye(n) - Q * adjoint(Q);
  HermEig e = jacobi_hermitian(P);
  CMat out(n, n - s);
  int idx = 0;
  for (int t = n - 1; t >= 0 && idx < n - s; --t) {  // eigenvalues near 1 sit at the top
    if (e.values[t] < 0.5) break;
    for (int i = 0; i < n; ++i) out(i, idx) = e.vectors(i, t);
    ++idx;
  }
  if (idx != n - s) throw std::runtime_error("orthonormal_complement: defective projector");
  return out;
}

struct SpectralData {
  CMat V;              // unitary change of basis, non-unit eigenvalue columns first
  std::vector<cd> u;   // the k eigenvalues with |u_j - 1| > eig_sep
  int k = 0;           // rank of U - I at the eig_sep threshold
  int total_dim = 0;
  double min_gap = 0.0;       // min |lambda - 1| over the non-unit block
  bool ill_separated = false; // some unit-classified eigenvalue is not clean
};

// Spectral decomposition of a unitary U by joint diagonalization of the
// commuting Hermitian pair (U+U^*)/2 and (U-U^*)/(2i): eigenvalues of the
// first are grouped within 1e-8 and the second is diagonalized inside each
// group. Avoids a general nonsymmetric Schur factorization.
inline SpectralData unitary_spectral(const CMat& U, double eig_sep = 1e-6) {
  const int n = U.rows();
  if (n != U.cols()) throw std::invalid_argument("unitary_spectral: not square");
  if (max_abs(adjoint(U) * U - CMat::eye(n)) > 1e-8)
    throw std::invalid_argument("unitary_spectral: input not unitary");

  CMat H1 = 0.5 * (U + adjoint(U));
  CMat H2 = cd(0.0, -0.5) * (U - adjoint(U));
  HermEig e1 = jacobi_hermitian(H1);

  CMat V(n, n);
  std::vector<cd> lam(n);
  int col = 0;
  int g0 = 0;
  while (g0 < n) {
    int g1 = g0 + 1;
    while (g1 < n && e1.values[g1] - e1.values[g1 - 1] <= 1e-8) ++g1;
    const int g = g1 - g0;
    CMat Qg = e1.vectors.block(0, n, g0, g);
    CMat cols = Qg;
    if (g > 1) {
      CMat B = adjoint(Qg) * (H2 * Qg);
      HermEig e2 = jacobi_hermitian(B);
      cols = Qg * e2.vectors;
    }
    for (int j = 0; j < g; ++j) {
      CVec v = cols.column(j);
      CVec Uv = U * v;
      cd l = 0.0;  // Rayleigh quotient; exact to rounding for a normal U
      for (int i = 0; i < n; ++i) l += std::conj(v[i]) * Uv[i];
      lam[col] = l;
      V.set_column(col, v);
      ++col;
    }
    g0 = g1;
  }

  for (const cd& l : lam)
    if (std::abs(std::abs(l) - 1.0) > 1e-8)
      throw std::runtime_error("unitary_spectral: eigenvalue off the circle");

  SpectralData sd;
  sd.total_dim = n;
  std::vector<int> nonunit, unit;
  for (int j = 0; j < n; ++j)
    (std::abs(lam[j] - cd(1.0)) > eig_sep ? nonunit : unit).push_back(j);
  sd.k = int(nonunit.size());
  sd.V = CMat(n, n);
  sd.min_gap = 1e300;
  int at = 0;
  for (int j : nonunit) {
    sd.V.set_column(at++, V.column(j));
    sd.u.push_back(lam[j]);
    sd.min_gap = std::min(sd.min_gap, std::abs(lam[j] - cd(1.0)));
  }
  for (int j : unit) {
    sd.V.set_column(at++, V.column(j));
    if (std::abs(lam[j] - cd(1.0)) > 1e-8) sd.ill_separated = true;
  }
  return sd;
}

// a_j = i (1 + u_j) / (1 - u_j); real for unimodular u_j bounded away from 1
inline std::vector<double> cayley_diagonal(const std::vector<cd>& u, double eig_sep = 1e-6) {
  std::vector<double> a;
  a.reserve(u.size());
  for (const cd& uj : u) {
    if (std::abs(uj - cd(1.0)) < eig_sep)
      throw std::runtime_error("cayley_diagonal: entry at 1");
    cd aj = cd(0.0, 1.0) * (cd(1.0) + uj) / (cd(1.0) - uj);
    if (std::abs(aj.imag()) > 1e-10 * std::max(1.0, std::abs(aj.real())))
      throw std::runtime_error("cayley_diagonal: non-real image, |u| != 1?");
    a.push_back(aj.real());
  }
  return a;
}

inline double gram_mismatch(const std::vector<CVec>& lefts, const std::vector<CVec>& rights) {
  const int s = int(lefts.size());
  double mism = 0.0, scale = 1e-300;
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      cd gl = 0.0, gr = 0.0;
      for (std::size_t t = 0; t < lefts[i].size(); ++t) gl += std::conj(lefts[i][t]) * lefts[j][t];
      for (std::size_t t = 0; t < rights[i].size(); ++t) gr += std::conj(rights[i][t]) * rights[j][t];
      mism = std::max(mism, std::abs(gl - gr));
      scale = std::max(scale, std::abs(gl));
    }
  return mism / scale;
}

// Extend the correspondence left_i -> right_i to a unitary on the whole
// space. Requires Gram(left) = Gram(right) within pair_tol (relative to the
// largest Gram entry); that equality is exactly the well-definedness of the
// map. The extension acts as phase * (complement map) off the span.
inline CMat lurking_isometry(const std::vector<CVec>& lefts, const std::vector<CVec>& rights,
                             double pair_tol = 1e-8, cd completion_phase = cd(1.0)) {
  if (lefts.size() != rights.size() || lefts.empty())
    throw std::invalid_argument("lurking_isometry: need equally many left and right vectors");
  const int n = int(lefts[0].size());
  for (const CVec& v : lefts)
    if (int(v.size()) != n) throw std::invalid_argument("lurking_isometry: ragged left vectors");
  for (const CVec& v : rights)
    if (int(v.size()) != n) throw std::invalid_argument("lurking_isometry: ambient dims differ");

  double mism = gram_mismatch(lefts, rights);
  if (mism > pair_tol)
    throw std::runtime_error("lurking_isometry: Gram mismatch " + std::to_string(mism) +
                             " exceeds tolerance (pairs do not define an isometry)");

  const int s = int(lefts.size());
  CMat L = from_columns(lefts, n), R = from_columns(rights, n);
  CMat GL = adjoint(L) * L;
  HermEig eg = jacobi_hermitian(GL);
  double lmax = 1e-300;
  for (double v : eg.values) lmax = std::max(lmax, v);
  std::vector<int> keep;
  for (int i = 0; i < s; ++i)
    if (eg.values[i] > 1e-10 * lmax) keep.push_back(i);
  CMat Ws(s, int(keep.size()));
  for (int j = 0; j < int(keep.size()); ++j)
    for (int i = 0; i < s; ++i)
      Ws(i, j) = eg.vectors(i, keep[j]) / std::sqrt(eg.values[keep[j]]);
  CMat QL = L * Ws;  // orthonormal basis of span(lefts)
  CMat QR = R * Ws;  // image basis; orthonormal because the Grams agree
  CMat PL = orthonormal_complement(QL);
  CMat PR = orthonormal_complement(QR);
  CMat U = QR * adjoint(QL) + completion_phase * (PR * adjoint(PL));
  // two Newton polish steps toward the unitary polar factor; each squares
  // the unitarity defect inherited from the Gram tolerance
  for (int it = 0; it < 2; ++it) U = 0.5 * (3.0 * U - U * (adjoint(U) * U));
  return U;
}

// thin QR by twice-iterated modified Gram-Schmidt (enough at desk scale)
inline void qr_mgs(const CMat& A, CMat& Q, CMat& R) {
  const int m = A.rows(), n = A.cols();
  Q = A;
  R = CMat(n, n);
  for (int j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < j; ++i) {
        cd r = 0.0;
        for (int t = 0; t < m; ++t) r += std::conj(Q(t, i)) * Q(t, j);
        R(i, j) += r;
        for (int t = 0; t < m; ++t) Q(t, j) -= r * Q(t, i);
      }
    }
    double nrm = 0.0;
    for (int t = 0; t < m; ++t) nrm += std::norm(Q(t, j));
    nrm = std::sqrt(nrm);
    R(j, j) = nrm;
    if (nrm > 0)
      for (int t = 0; t < m; ++t) Q(t, j) /= nrm;
  }
}

// Haar-distributed unitary: QR of a complex Gaussian matrix with the
// R-diagonal phase absorbed into Q
inline CMat haar_unitary(Rng& rng, int d) {
  CMat Z(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) Z(i, j) = cd(rng.normal(), rng.normal()) / std::sqrt(2.0);
  CMat Q, R;
  qr_mgs(Z, Q, R);
  for (int j = 0; j < d; ++j) {
    cd rjj = R(j, j);
    cd ph = std::abs(rjj) > 0 ? std::conj(rjj / std::abs(rjj)) : cd(1.0);
    for (int i = 0; i < d; ++i) Q(i, j) *= ph;
  }
  return Q;
}

}  // namespace hypdet
