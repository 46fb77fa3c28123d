#pragma once

// Transport between polydisk and poly-half-plane pictures. Variable by
// variable: z in the unit disk maps to w = i(1+z)/(1-z) in the upper half
// plane, and denominators are cleared against a declared multidegree. The
// two directions compose to the exact identity on coefficients.

#include <stdexcept>
#include <utility>
#include <vector>

#include "poly.hpp"
#include "uniroots.hpp"

namespace hypdet {

// q on the half-planes -> f on the polydisk:
//   f(z) = prod_j (2i)^{-d_j} (1-z_j)^{d_j} * q(i(1+z)/(1-z))
inline Poly disk_from_halfplane(const Poly& q, const Expt& degs) {
  if (int(degs.size()) != q.nvars) throw std::invalid_argument("disk_from_halfplane: degree arity");
  Poly f = q;
  cd scale = 1.0;
  for (int j = 0; j < q.nvars; ++j) {
    if (degs[j] != degree_in(q, j))
      throw std::invalid_argument("disk_from_halfplane: declared degree differs from actual");
    f = mobius_substitute(f, j, cd(0.0, 1.0), cd(0.0, 1.0), cd(-1.0), cd(1.0), degs[j]);
    for (int t = 0; t < degs[j]; ++t) scale /= cd(0.0, 2.0);
  }
  return scale * f;
}

// f on the polydisk -> q on the half-planes:
//   q(w) = prod_j (w_j + i)^{d_j} * f((w-i)/(w+i))
inline Poly halfplane_from_disk(const Poly& f, const Expt& degs) {
  if (int(degs.size()) != f.nvars) throw std::invalid_argument("halfplane_from_disk: degree arity");
  Poly q = f;
  for (int j = 0; j < f.nvars; ++j) {
    if (degs[j] != degree_in(f, j))
      throw std::invalid_argument("halfplane_from_disk: declared degree differs from actual");
    q = mobius_substitute(q, j, cd(1.0), cd(0.0, -1.0), cd(1.0), cd(0.0, 1.0), degs[j]);
  }
  return q;
}

// reflection of the j-th partial against the multidegree lowered in slot j
inline Poly reflected_partial(const Poly& f, int j, const Expt& mdeg) {
  Expt low = mdeg;
  low[j] -= 1;
  if (low[j] < 0) throw std::invalid_argument("reflected_partial: multidegree zero in slot");
  return reflect(partial(f, j), low);
}

// For self-reflective f (reflect(f) = f against mdeg), split
//   (sum_j mdeg_j) * f = p + pt,  p = sum_j reflect(d_j f),  pt = sum_j z_j d_j f,
// where pt has no constant term and pt = reflect(p).
inline std::pair<Poly, Poly> split_self_reflective(const Poly& f, const Expt& mdeg) {
  double scale = max_coeff_abs(f);
  if (poly_max_diff(reflect(f, mdeg), f) > 1e-10 * (1.0 + scale))
    throw std::invalid_argument("split_self_reflective: input is not self-reflective");
  Poly p = poly_zero(f.nvars), pt = poly_zero(f.nvars);
  int dsum = 0;
  for (int j = 0; j < f.nvars; ++j) {
    dsum += mdeg[j];
    if (mdeg[j] == 0) continue;
    Poly dj = partial(f, j);
    p = p + reflected_partial(f, j, mdeg);
    pt = pt + shift_mul(dj, j);
  }
  Poly total = p + pt - double(dsum) * f;
  if (max_coeff_abs(total) > 1e-10 * (1.0 + scale))
    throw std::runtime_error("split_self_reflective: Euler identity failed");
  if (coeff(pt, Expt(f.nvars, 0)) != cd(0.0))
    throw std::runtime_error("split_self_reflective: constant term leaked into the shifted half");
  return {p, pt};
}

// Reject f divisible by a polynomial in the first variable alone. Writing
// f = sum_e c_e(z_1) z^e over the remaining exponents e, such a factor
// forces a common root of every c_e; check the candidate roots of the first
// nonzero coefficient polynomial against all the others.
inline void check_no_leading_variable_factor(const Poly& f) {
  if (f.nvars < 2) return;
  std::map<Expt, Poly> groups;  // exponent pattern of z_2.. -> coefficient poly in z_1
  for (const auto& [e, c] : f.terms) {
    Expt rest(e.begin() + 1, e.end());
    auto it = groups.find(rest);
    if (it == groups.end()) it = groups.emplace(rest, poly_zero(1)).first;
    it->second.terms[Expt{e[0]}] += c;
  }
  double scale = max_coeff_abs(f);
  if (scale == 0.0) return;
  for (const auto& [rest, cpoly] : groups) {
    if (max_coeff_abs(cpoly) <= 1e-12 * scale) continue;
    if (degree_in(cpoly, 0) == 0) return;  // a nonzero constant coefficient: no common root
    for (const cd& rho : roots(cpoly).roots) {
      double worst = 0.0;
      for (const auto& [r2, other] : groups)
        worst = std::max(worst, std::abs(eval_poly(other, {rho})));
      if (worst <= 1e-8 * scale)
        throw std::runtime_error(
            "input has a factor depending on the first variable only (common coefficient root near " +
            fmt_double(rho.real()) + (rho.imag() < 0 ? " - " : " + ") +
            fmt_double(std::abs(rho.imag())) + "i); divide it out first");
    }
    return;  // candidate roots of the first nonzero coefficient suffice
  }
}

}  // namespace hypdet
