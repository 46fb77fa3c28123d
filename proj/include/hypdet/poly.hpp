#pragma once

// Multivariate polynomials with complex coefficients, stored as a dense
// exponent-tuple map. std::map keeps terms in lexicographic order, so every
// traversal (arithmetic, evaluation, printing) is deterministic.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "complexmat.hpp"

namespace hypdet {

using Expt = std::vector<int>;

struct Poly {
  int nvars = 0;
  std::map<Expt, cd> terms;  // absent key = zero coefficient
};

inline Poly poly_zero(int nvars) { return Poly{nvars, {}}; }

inline Poly poly_const(int nvars, cd c) {
  Poly p{nvars, {}};
  if (c != cd(0.0)) p.terms[Expt(nvars, 0)] = c;
  return p;
}

inline Poly poly_monomial(int nvars, const Expt& e, cd c) {
  if (int(e.size()) != nvars) throw std::invalid_argument("poly_monomial: exponent arity");
  Poly p{nvars, {}};
  if (c != cd(0.0)) p.terms[e] = c;
  return p;
}

inline bool is_zero(const Poly& p) { return p.terms.empty(); }

inline double max_coeff_abs(const Poly& p) {
  double m = 0.0;
  for (const auto& [e, c] : p.terms) m = std::max(m, std::abs(c));
  return m;
}

// Drop coefficients at or below 1e-12 of the largest one. Applied after
// every arithmetic operation so cancellation noise never accumulates into
// spurious support.
inline Poly prune(Poly p, double rel = 1e-12) {
  double m = max_coeff_abs(p);
  for (auto it = p.terms.begin(); it != p.terms.end();) {
    if (std::abs(it->second) <= rel * m)
      it = p.terms.erase(it);
    else
      ++it;
  }
  return p;
}

inline void check_same_arity(const Poly& p, const Poly& q, const char* who) {
  if (p.nvars != q.nvars) throw std::invalid_argument(std::string(who) + ": variable count mismatch");
}

inline Poly operator+(const Poly& p, const Poly& q) {
  check_same_arity(p, q, "poly add");
  Poly r = p;
  for (const auto& [e, c] : q.terms) r.terms[e] += c;
  return prune(std::move(r));
}

inline Poly operator-(const Poly& p) {
  Poly r = p;
  for (auto& [e, c] : r.terms) c = -c;
  return r;
}

inline Poly operator-(const Poly& p, const Poly& q) {
  check_same_arity(p, q, "poly sub");
  Poly r = p;
  for (const auto& [e, c] : q.terms) r.terms[e] -= c;
  return prune(std::move(r));
}

inline Poly operator*(const Poly& p, const Poly& q) {
  check_same_arity(p, q, "poly mul");
  Poly r{p.nvars, {}};
  Expt e(p.nvars);
  for (const auto& [ep, cp] : p.terms)
    for (const auto& [eq, cq] : q.terms) {
      for (int j = 0; j < p.nvars; ++j) e[j] = ep[j] + eq[j];
      r.terms[e] += cp * cq;
    }
  return prune(std::move(r));
}

inline Poly operator*(cd s, const Poly& p) {
  Poly r = p;
  for (auto& [e, c] : r.terms) c *= s;
  return prune(std::move(r));
}

inline Poly operator*(const Poly& p, cd s) { return s * p; }

inline Poly pow_poly(const Poly& p, int e) {
  if (e < 0) throw std::invalid_argument("pow_poly: negative exponent");
  Poly r = poly_const(p.nvars, 1.0);
  for (int i = 0; i < e; ++i) r = r * p;
  return r;
}

inline int total_degree(const Poly& p) {
  int d = 0;
  for (const auto& [e, c] : p.terms) {
    int s = 0;
    for (int v : e) s += v;
    d = std::max(d, s);
  }
  return d;
}

inline int degree_in(const Poly& p, int var) {
  int d = 0;
  for (const auto& [e, c] : p.terms) d = std::max(d, e[var]);
  return d;
}

inline Expt multidegree(const Poly& p) {
  Expt m(p.nvars, 0);
  for (const auto& [e, c] : p.terms)
    for (int j = 0; j < p.nvars; ++j) m[j] = std::max(m[j], e[j]);
  return m;
}

inline cd coeff(const Poly& p, const Expt& e) {
  auto it = p.terms.find(e);
  return it == p.terms.end() ? cd(0.0) : it->second;
}

inline double poly_max_diff(const Poly& p, const Poly& q) {
  check_same_arity(p, q, "poly_max_diff");
  double m = 0.0;
  for (const auto& [e, c] : p.terms) m = std::max(m, std::abs(c - coeff(q, e)));
  for (const auto& [e, c] : q.terms) m = std::max(m, std::abs(c - coeff(p, e)));
  return m;
}

// Evaluation with a per-variable table of cached powers, accumulated in term
// order; identical input bits give identical output bits.
inline cd eval_poly(const Poly& p, const CVec& x) {
  if (int(x.size()) != p.nvars) throw std::invalid_argument("eval_poly: point arity");
  std::vector<std::vector<cd>> pw(p.nvars);
  Expt md = multidegree(p);
  for (int j = 0; j < p.nvars; ++j) {
    pw[j].resize(md[j] + 1);
    pw[j][0] = 1.0;
    for (int t = 1; t <= md[j]; ++t) pw[j][t] = pw[j][t - 1] * x[j];
  }
  cd acc = 0.0;
  for (const auto& [e, c] : p.terms) {
    cd t = c;
    for (int j = 0; j < p.nvars; ++j)
      if (e[j] > 0) t *= pw[j][e[j]];
    acc += t;
  }
  return acc;
}

// Substitute value for one variable and remove its slot.
inline Poly restrict_var(const Poly& p, int var, cd value) {
  if (var < 0 || var >= p.nvars) throw std::invalid_argument("restrict_var: bad variable");
  int d = degree_in(p, var);
  std::vector<cd> pw(d + 1);
  pw[0] = 1.0;
  for (int t = 1; t <= d; ++t) pw[t] = pw[t - 1] * value;
  Poly r{p.nvars - 1, {}};
  Expt e2(p.nvars - 1);
  for (const auto& [e, c] : p.terms) {
    int at = 0;
    for (int j = 0; j < p.nvars; ++j)
      if (j != var) e2[at++] = e[j];
    r.terms[e2] += c * pw[e[var]];
  }
  return prune(std::move(r));
}

// Insert a new variable at position var so every term reaches total degree d.
inline Poly homogenize(const Poly& p, int var, int d) {
  if (var < 0 || var > p.nvars) throw std::invalid_argument("homogenize: bad position");
  if (d < total_degree(p)) throw std::invalid_argument("homogenize: degree below total degree");
  Poly r{p.nvars + 1, {}};
  Expt e2(p.nvars + 1);
  for (const auto& [e, c] : p.terms) {
    int s = 0;
    for (int v : e) s += v;
    for (int j = 0, at = 0; j <= p.nvars; ++j) {
      if (j == var)
        e2[j] = d - s;
      else
        e2[j] = e[at++];
    }
    r.terms[e2] = c;
  }
  return r;
}

// Coefficient reversal against a dominating multidegree:
// (reflect p)(z) = z^mdeg * conj(p(1/conj(z))).
inline Poly reflect(const Poly& p, const Expt& mdeg) {
  if (int(mdeg.size()) != p.nvars) throw std::invalid_argument("reflect: multidegree arity");
  Poly r{p.nvars, {}};
  Expt e2(p.nvars);
  for (const auto& [e, c] : p.terms) {
    for (int j = 0; j < p.nvars; ++j) {
      e2[j] = mdeg[j] - e[j];
      if (e2[j] < 0) throw std::invalid_argument("reflect: multidegree does not dominate support");
    }
    r.terms[e2] = std::conj(c);
  }
  return r;
}

inline Poly partial(const Poly& p, int var) {
  if (var < 0 || var >= p.nvars) throw std::invalid_argument("partial: bad variable");
  Poly r{p.nvars, {}};
  Expt e2(p.nvars);
  for (const auto& [e, c] : p.terms) {
    if (e[var] == 0) continue;
    e2 = e;
    e2[var] -= 1;
    r.terms[e2] = c * double(e[var]);
  }
  return prune(std::move(r));
}

// multiply by the variable itself
inline Poly shift_mul(const Poly& p, int var) {
  Poly r{p.nvars, {}};
  Expt e2(p.nvars);
  for (const auto& [e, c] : p.terms) {
    e2 = e;
    e2[var] += 1;
    r.terms[e2] = c;
  }
  return r;
}

// var <- (a w + b) / (c w + d), multiplied through by (c w + d)^k.
// Needs k at least the degree in var so the result is a polynomial again.
inline Poly mobius_substitute(const Poly& p, int var, cd a, cd b, cd c, cd d, int k) {
  if (var < 0 || var >= p.nvars) throw std::invalid_argument("mobius_substitute: bad variable");
  if (k < degree_in(p, var)) throw std::invalid_argument("mobius_substitute: k below degree in variable");
  if (std::abs(a * d - b * c) == 0.0) throw std::invalid_argument("mobius_substitute: singular coefficient matrix");
  Expt unit(p.nvars, 0);
  unit[var] = 1;
  Poly num = poly_monomial(p.nvars, unit, a) + poly_const(p.nvars, b);
  Poly den = poly_monomial(p.nvars, unit, c) + poly_const(p.nvars, d);
  // cache powers of num and den up to what the loop needs
  std::vector<Poly> numpw{poly_const(p.nvars, 1.0)}, denpw{poly_const(p.nvars, 1.0)};
  for (int t = 1; t <= k; ++t) {
    numpw.push_back(numpw.back() * num);
    denpw.push_back(denpw.back() * den);
  }
  Poly out = poly_zero(p.nvars);
  for (const auto& [e, co] : p.terms) {
    Expt rest = e;
    rest[var] = 0;
    out = out + poly_monomial(p.nvars, rest, co) * numpw[e[var]] * denpw[k - e[var]];
  }
  return out;
}

// var_from <- scale * var_to, keeping the arity (the vacated slot stays at
// exponent zero; restrict it afterwards to drop the slot).
inline Poly substitute_linear(const Poly& p, int var_from, cd scale, int var_to) {
  if (var_from == var_to) throw std::invalid_argument("substitute_linear: identical variables");
  std::vector<cd> pw{cd(1.0)};
  for (int t = 1; t <= degree_in(p, var_from); ++t) pw.push_back(pw.back() * scale);
  Poly r{p.nvars, {}};
  Expt e2(p.nvars);
  for (const auto& [e, c] : p.terms) {
    e2 = e;
    e2[var_to] += e2[var_from];
    int ev = e2[var_from];
    e2[var_from] = 0;
    r.terms[e2] += c * pw[ev];
  }
  return prune(std::move(r));
}

// shortest representation that parses back to the same double
inline std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Inverse of the parser: prints real coefficients bare (sign folded into the
// joining operator) and genuinely complex ones as "(re + im*i)". Both forms
// reconstruct the stored doubles exactly when reparsed.
inline std::string to_string(const Poly& p, const std::vector<std::string>& names) {
  if (int(names.size()) != p.nvars) throw std::invalid_argument("to_string: name count");
  if (p.terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms) {
    std::string mono;
    for (int j = 0; j < p.nvars; ++j) {
      if (e[j] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[j];
      if (e[j] > 1) mono += "^" + std::to_string(e[j]);
    }
    std::string cs;
    bool negative = false;
    if (c.imag() == 0.0) {
      double re = c.real();
      negative = re < 0;
      double mag = negative ? -re : re;
      if (mag != 1.0 || mono.empty()) cs = fmt_double(mag);
    } else {
      cs = "(" + fmt_double(c.real());
      cs += c.imag() < 0 ? " - " : " + ";
      cs += fmt_double(std::abs(c.imag())) + "*i)";
    }
    if (first) {
      if (negative) out += "-";
      first = false;
    } else {
      out += negative ? " - " : " + ";
    }
    if (!cs.empty()) {
      out += cs;
      if (!mono.empty()) out += "*";
    }
    out += mono;
  }
  return out;
}

}  // namespace hypdet
