#pragma once

// Univariate root extraction: balanced companion matrix, complex
// single-shift Hessenberg QR, then a few guarded Newton steps against the
// original coefficients. Region counting treats a band around each boundary
// (real line, unit circle) as part of the boundary so that counts always
// partition the root total.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "complexmat.hpp"
#include "poly.hpp"

namespace hypdet {

enum class Region { UHP, LHP, REAL_LINE, DISK, EXTERIOR, CIRCLE };

struct RootSet {
  std::vector<cd> roots;
  std::vector<double> residuals;  // |p(r)| / (max|c| * max(1,|r|)^deg)
  double tol = 1e-8;              // boundary band, relative to 1 + |root|
  int trimmed = 0;                // leading coefficients dropped as negligible
};

namespace detail {

// unitary [[c, s], [-conj(s), c]] sending (f, g) to (~, 0)
inline std::pair<double, cd> givens_rot(cd f, cd g) {
  if (g == cd(0.0)) return {1.0, cd(0.0)};
  if (f == cd(0.0)) return {0.0, std::conj(g) / std::abs(g)};
  double af = std::abs(f);
  double r = std::hypot(af, std::abs(g));
  return {af / r, (f / af) * std::conj(g) / r};
}

inline void balance_hessenberg(CMat& H) {
  const int n = H.rows();
  bool again = true;
  while (again) {
    again = false;
    for (int i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        r += std::abs(H(i, j));
        c += std::abs(H(j, i));
      }
      if (r == 0.0 || c == 0.0) continue;
      double s = c + r, f = 1.0;
      double g = r / 2.0;
      while (c < g) { f *= 2.0; c *= 4.0; }
      g = r * 2.0;
      while (c > g) { f /= 2.0; c /= 4.0; }
      if ((c + r) / f < 0.95 * s) {
        again = true;
        double inv = 1.0 / f;
        for (int j = 0; j < n; ++j) H(i, j) *= inv;
        for (int j = 0; j < n; ++j) H(j, i) *= f;
      }
    }
  }
}

// eigenvalues of an upper Hessenberg matrix; the similarity updates are
// confined to the active window since only eigenvalues are wanted
inline std::vector<cd> hessenberg_eigenvalues(CMat H) {
  const int n = H.rows();
  const double eps = std::numeric_limits<double>::epsilon();
  double fallback = frob_norm(H);
  std::vector<cd> w(n);
  int hi = n - 1;
  int it = 0;
  while (hi >= 0) {
    int l = hi;
    while (l > 0) {
      double s = std::abs(H(l - 1, l - 1)) + std::abs(H(l, l));
      if (s == 0.0) s = fallback;
      if (std::abs(H(l, l - 1)) <= eps * s) {
        H(l, l - 1) = 0.0;
        break;
      }
      --l;
    }
    if (l == hi) {
      w[hi] = H(hi, hi);
      --hi;
      it = 0;
      continue;
    }
    if (++it > 60) throw std::runtime_error("hessenberg_eigenvalues: no convergence");
    cd mu;
    if (it % 10 == 0) {
      mu = H(hi, hi) + 1.5 * std::abs(H(hi, hi - 1));  // break shift cycles
    } else {
      cd a = H(hi - 1, hi - 1), b = H(hi - 1, hi);
      cd c2 = H(hi, hi - 1), d = H(hi, hi);
      cd half = 0.5 * (a + d);
      cd disc = std::sqrt(half * half - (a * d - b * c2));
      cd m1 = half + disc, m2 = half - disc;
      mu = std::abs(m1 - d) < std::abs(m2 - d) ? m1 : m2;
    }
    cd f = H(l, l) - mu;
    cd g = H(l + 1, l);
    for (int k = l; k < hi; ++k) {
      if (k > l) {
        f = H(k, k - 1);
        g = H(k + 1, k - 1);
      }
      auto [c, s] = givens_rot(f, g);
      if (k > l) {
        H(k, k - 1) = c * f + s * g;
        H(k + 1, k - 1) = 0.0;
      }
      for (int j = k; j <= hi; ++j) {
        cd hp = H(k, j), hq = H(k + 1, j);
        H(k, j) = c * hp + s * hq;
        H(k + 1, j) = -std::conj(s) * hp + c * hq;
      }
      int bot = std::min(k + 2, hi);
      for (int i2 = l; i2 <= bot; ++i2) {
        cd cp = H(i2, k), cq = H(i2, k + 1);
        H(i2, k) = c * cp + std::conj(s) * cq;
        H(i2, k + 1) = -s * cp + c * cq;
      }
    }
  }
  return w;
}

inline cd horner(const std::vector<cd>& c, cd z) {
  cd v = 0.0;
  for (int i = int(c.size()) - 1; i >= 0; --i) v = v * z + c[i];
  return v;
}

inline std::pair<cd, cd> horner_with_derivative(const std::vector<cd>& c, cd z) {
  cd v = 0.0, d = 0.0;
  for (int i = int(c.size()) - 1; i >= 0; --i) {
    d = d * z + v;
    v = v * z + c[i];
  }
  return {v, d};
}

}  // namespace detail

// coefficients ascending: c[0] + c[1] t + ... + c[deg] t^deg
inline RootSet roots(const std::vector<cd>& coeffs, double band_tol = 1e-8) {
  RootSet rs;
  rs.tol = band_tol;
  std::vector<cd> c = coeffs;
  double cn = 0.0;
  for (const cd& v : c) cn = std::max(cn, std::abs(v));
  if (cn == 0.0) {
    c.clear();
  } else {
    while (!c.empty() && std::abs(c.back()) < 1e-12 * cn) {
      c.pop_back();
      ++rs.trimmed;
    }
  }
  const int deg = int(c.size()) - 1;
  if (deg < 1) return rs;

  if (deg == 1) {
    rs.roots.push_back(-c[0] / c[1]);
  } else {
    CMat C(deg, deg);
    for (int i = 0; i + 1 < deg; ++i) C(i + 1, i) = 1.0;
    for (int i = 0; i < deg; ++i) C(i, deg - 1) = -c[i] / c[deg];
    detail::balance_hessenberg(C);
    rs.roots = detail::hessenberg_eigenvalues(C);
  }

  for (cd& z : rs.roots) {
    for (int step = 0; step < 5; ++step) {
      auto [p, dp] = detail::horner_with_derivative(c, z);
      if (std::abs(dp) == 0.0) break;
      cd zn = z - p / dp;
      if (std::abs(detail::horner(c, zn)) < std::abs(p))
        z = zn;
      else
        break;
    }
  }

  std::vector<int> order(rs.roots.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    if (rs.roots[i].real() != rs.roots[j].real()) return rs.roots[i].real() < rs.roots[j].real();
    return rs.roots[i].imag() < rs.roots[j].imag();
  });
  std::vector<cd> sorted;
  for (int i : order) sorted.push_back(rs.roots[i]);
  rs.roots = sorted;

  for (cd z : rs.roots) {
    double denom = cn * std::pow(std::max(1.0, std::abs(z)), deg);
    rs.residuals.push_back(std::abs(detail::horner(c, z)) / denom);
  }
  return rs;
}

inline RootSet roots(const Poly& u, double band_tol = 1e-8) {
  if (u.nvars != 1) throw std::invalid_argument("roots: univariate input required");
  std::vector<cd> c(degree_in(u, 0) + 1, cd(0.0));
  for (const auto& [e, v] : u.terms) c[e[0]] = v;
  return roots(c, band_tol);
}

// Strict counting refuses to classify a root sitting inside the boundary
// band of the requested half (UHP/LHP against the real line, DISK/EXTERIOR
// against the unit circle). Non-strict counting assigns band roots to the
// boundary region, so the three counts of either family partition the total.
inline int count_region(const RootSet& rs, Region reg, bool strict = false) {
  int cnt = 0;
  for (const cd& z : rs.roots) {
    double band = rs.tol * (1.0 + std::abs(z));
    bool on_line = std::abs(z.imag()) <= band;
    bool on_circle = std::abs(std::abs(z) - 1.0) <= rs.tol;
    switch (reg) {
      case Region::UHP:
      case Region::LHP:
        if (on_line) {
          if (strict) throw std::runtime_error("count_region: root inside the real-line band");
          break;
        }
        if (reg == Region::UHP ? z.imag() > 0 : z.imag() < 0) ++cnt;
        break;
      case Region::REAL_LINE:
        if (on_line) ++cnt;
        break;
      case Region::DISK:
      case Region::EXTERIOR:
        if (on_circle) {
          if (strict) throw std::runtime_error("count_region: root inside the unit-circle band");
          break;
        }
        if (reg == Region::DISK ? std::abs(z) < 1.0 : std::abs(z) > 1.0) ++cnt;
        break;
      case Region::CIRCLE:
        if (on_circle) ++cnt;
        break;
    }
  }
  return cnt;
}

inline bool all_real(const RootSet& rs) {
  for (const cd& z : rs.roots)
    if (std::abs(z.imag()) > rs.tol * (1.0 + std::abs(z))) return false;
  return true;
}

}  // namespace hypdet
