#pragma once

// Determinantal representation builders. The ternary chain restricts to a
// two-variable polynomial, moves it to the bidisk, finds a fixed-inertia
// certificate on its zero set, extends the encoded shift relations to a
// unitary, and reads the pencil off the spectral data of that unitary. The
// four-variable chain does the same through the tridisk and recovers the
// input only up to a computed cofactor.

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cayley.hpp"
#include "complexmat.hpp"
#include "config.hpp"
#include "hyper.hpp"
#include "linalg.hpp"
#include "parse.hpp"
#include "pencil.hpp"
#include "poly.hpp"
#include "sos.hpp"

namespace hypdet {

struct StageRecord {
  std::string name;
  std::map<std::string, double> values;
};

struct FaceUnitary {
  CMat U;
  int n1 = 0, n2 = 0, m = 0;
};

struct ConstructResult {
  bool ok = false;
  std::string failure;  // empty when the pipeline ran to completion
  Pencil pencil;
  std::map<std::string, Invariant> invariants;
  VerifyOutcome verify;
  std::vector<StageRecord> stages;
  SosCertificate cert;
  bool cert_set = false;
  FaceUnitary face;
  bool face_set = false;
  Poly cofactor;  // four-variable chain only
  bool cofactor_set = false;
};

inline bool all_invariants_pass(const std::map<std::string, Invariant>& inv) {
  for (const auto& [name, i] : inv)
    if (!i.pass) return false;
  return true;
}

// first t in a log-spaced scan with det(t A1 + A2) decisively nonzero; such
// a t certifies that the pencil degree is not eaten by the affine slice
inline std::optional<double> nonsingular_direction(const CMat& A1, const CMat& A2) {
  const int k = A1.rows();
  std::vector<double> ts = {0.0};
  for (int j = 0; j <= 48; ++j) {
    double t = std::pow(10.0, -3.0 + 6.0 * j / 48.0);
    ts.push_back(t);
    ts.push_back(-t);
  }
  for (double t : ts) {
    CMat Q = t * A1 + A2;
    double thr = 1e-8 * std::pow(std::max(1.0, frob_norm(Q)), k);
    if (std::abs(lu_det(Q)) > thr) return t;
  }
  return std::nullopt;
}

struct DividesOutcome {
  bool pass = false;
  double residual = 0.0;
  Poly quotient;
};

// least-squares division: does some g supported on the box gdeg satisfy
// f * g = big? The convolution system is solved exactly when it does.
inline DividesOutcome divides_check(const Poly& f, const Poly& big, const Expt& gdeg,
                                    double tol = 1e-6) {
  if (f.nvars != big.nvars) throw std::invalid_argument("divides_check: variable count mismatch");
  std::vector<Expt> gmon = box_exponents(gdeg);
  if (gmon.empty()) throw std::invalid_argument("divides_check: empty quotient box");
  std::map<Expt, int> rowidx;
  for (const auto& [ef, cf] : f.terms)
    for (const auto& eg : gmon) {
      Expt e = ef;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eg[i];
      rowidx.emplace(e, 0);
    }
  for (const auto& [e, c] : big.terms) rowidx.emplace(e, 0);
  int nr = 0;
  for (auto& [e, idx] : rowidx) idx = nr++;

  CMat A(nr, int(gmon.size()));
  for (const auto& [ef, cf] : f.terms)
    for (std::size_t c = 0; c < gmon.size(); ++c) {
      Expt e = ef;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += gmon[c][i];
      A(rowidx[e], int(c)) += cf;
    }
  CVec b(nr, cd(0.0));
  for (const auto& [e, c] : big.terms) b[rowidx[e]] = c;

  CVec x = lstsq(A, b, 1e-12);
  CVec r = A * x;
  double rn = 0.0, bn = 0.0;
  for (int i = 0; i < nr; ++i) {
    rn += std::norm(r[i] - b[i]);
    bn += std::norm(b[i]);
  }
  DividesOutcome out;
  out.residual = std::sqrt(rn) / std::max(std::sqrt(bn), 1e-300);
  out.pass = out.residual <= tol;
  out.quotient.nvars = f.nvars;
  for (std::size_t c = 0; c < gmon.size(); ++c)
    if (x[c] != cd(0.0)) out.quotient.terms[gmon[c]] = x[c];
  out.quotient = prune(out.quotient);
  return out;
}

namespace detail_construct {

inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

inline Expt argmax_coeff(const Poly& p) {
  double best = -1.0;
  Expt at;
  for (const auto& [e, c] : p.terms)
    if (std::abs(c) > best) {
      best = std::abs(c);
      at = e;
    }
  return at;
}

inline CMat block_gram(const CMat& Vk, int off, int len) {
  CMat B = Vk.block(off, len, 0, Vk.cols());
  return adjoint(B) * B;
}

}  // namespace detail_construct

// Ternary chain: P homogeneous in (x0, x1, x2), semi-hyperbolic in the last
// coordinate direction. Produces P = c det(x0 A0 + x1 A1 + x2 A2) with
// A0 Hermitian, A2 PSD, and A1 split as a difference Bp - Bm of PSD parts.
// A precomputed unitary may be supplied to skip the certificate search.
inline ConstructResult construct_t1(const Poly& P, const Config& cfg = {},
                                    const FaceUnitary* supplied = nullptr) {
  if (P.nvars != 3) throw std::invalid_argument("construct_t1: three variables required");
  if (total_degree(P) < 1) throw std::invalid_argument("construct_t1: constant polynomial");
  ConstructResult res;

  Verdict pre = is_semi_hyperbolic(P, {0.0, 0.0, 1.0}, cfg);
  res.stages.push_back({"semi_hyperbolic_check",
                        {{"worst_imag", pre.worst_imag}, {"samples", double(pre.samples_checked)}}});
  if (!pre.holds)
    throw std::invalid_argument("construct_t1: input is not semi-hyperbolic in the x2 direction");

  Poly q = restrict_var(P, 0, cd(1.0));
  const int n = degree_in(q, 0);
  const int m = degree_in(q, 1);
  res.stages.push_back({"restriction", {{"n", double(n)}, {"m", double(m)}}});

  Poly f = disk_from_halfplane(q, {n, m});
  check_no_leading_variable_factor(f);

  try {
    FaceUnitary face;
    if (supplied) {
      face = *supplied;
      if (face.n1 + face.n2 != n || face.m != m)
        throw std::invalid_argument("construct_t1: supplied unitary has wrong block sizes");
      int D = face.n1 + face.n2 + face.m;
      if (face.U.rows() != D || face.U.cols() != D)
        throw std::invalid_argument("construct_t1: supplied unitary has wrong dimension");
      if (max_abs(adjoint(face.U) * face.U - CMat::eye(D)) > 1e-8)
        throw std::invalid_argument("construct_t1: supplied matrix is not unitary");
      res.stages.push_back({"unitary_supplied",
                            {{"n1", double(face.n1)}, {"n2", double(face.n2)}, {"m", double(face.m)}}});
    } else {
      Poly slice = restrict_var(f, 1, cd(0.0));
      int n2 = count_region(roots(slice), Region::DISK);
      int n1 = n - n2;
      if (n1 < 0)
        throw std::runtime_error("construct_t1: disk zero count exceeds the degree");
      SosCertificate cert = find_sos_face(f, n1, n2, cfg);
      res.cert = cert;
      res.cert_set = true;
      res.stages.push_back({"certificate",
                            {{"n1", double(n1)},
                             {"n2", double(n2)},
                             {"residual", cert.residual},
                             {"iterations", double(cert.iterations)},
                             {"converged", cert.converged ? 1.0 : 0.0}}});
      if (!cert.converged || cert.residual > cfg.sos_tol) {
        res.failure = "certificate search did not converge (residual " +
                      detail_construct::sci(cert.residual) + ")";
        return res;
      }
      std::vector<CVec> samples = variety_sample(f, cfg.variety_count, cfg.seed + 1000);
      UnitaryExtension ext = unitary_from_certificate(cert, f, samples, cfg);
      face.U = ext.U;
      face.n1 = ext.dims[0];
      face.n2 = ext.dims[1];
      face.m = ext.dims[2];
      res.stages.push_back({"unitary_extension",
                            {{"gram_mismatch", ext.gram_mismatch},
                             {"worst_map", ext.worst_map},
                             {"worst_det", ext.worst_det}}});
    }
    res.face = face;
    res.face_set = true;

    SpectralData sd = unitary_spectral(face.U, cfg.eig_sep);
    const int k = sd.k;
    res.stages.push_back({"spectral", {{"k", double(k)}, {"min_gap", sd.min_gap}}});
    std::vector<double> a = cayley_diagonal(sd.u, cfg.eig_sep);
    CMat Vk = sd.V.block(0, sd.V.rows(), 0, k);

    CMat Bp = detail_construct::block_gram(Vk, 0, face.n1);
    CMat Bm = detail_construct::block_gram(Vk, face.n1, face.n2);
    CMat A2 = detail_construct::block_gram(Vk, face.n1 + face.n2, face.m);
    CMat A0 = CMat::diag_real(a);
    CMat A1 = Bp - Bm;

    Poly dp = interpolate_poly(
        [&](const CVec& w) { return lu_det(A0 + w[0] * A1 + w[1] * A2); }, {k, k});
    Expt kq = detail_construct::argmax_coeff(q);
    cd dq = coeff(dp, kq);
    if (std::abs(dq) <= 1e-12 * max_coeff_abs(dp)) {
      res.failure = "pencil determinant is missing the leading coefficient of the restriction";
      return res;
    }
    cd C = coeff(q, kq) / dq;
    double rel = poly_max_diff(q, C * dp) / std::max(max_coeff_abs(q), 1e-300);
    res.stages.push_back({"calibration", {{"c_re", C.real()}, {"c_im", C.imag()}, {"rel", rel}}});

    res.pencil.mats = {A0, A1, A2};
    res.pencil.c = C;
    res.pencil.Bp = Bp;
    res.pencil.Bm = Bm;
    validate_pencil(res.pencil, cfg);

    res.invariants = split_invariants(res.pencil, P, cfg);
    res.invariants["restriction_matches_pencil"] = {rel <= 1e-8, rel};
    std::optional<double> tstar = nonsingular_direction(A1, A2);
    res.invariants["nonsingular_direction"] = {tstar.has_value(), tstar.value_or(0.0)};
    res.stages.push_back({"nonsingular_direction",
                          {{"found", tstar ? 1.0 : 0.0}, {"t", tstar.value_or(0.0)}}});
    res.verify = verify_representation(res.pencil, P, cfg);
    res.ok = true;
  } catch (const std::runtime_error& e) {
    res.failure = e.what();
  }
  return res;
}

// Gårding-cone variant: hyperbolicity over the positive span of e1 and e2
// sharpens the split to Bm = 0, giving PSD A1 and A2 with A1 + A2 = I.
inline ConstructResult construct_cor(const Poly& P, const Config& cfg = {}) {
  if (P.nvars != 3) throw std::invalid_argument("construct_cor: three variables required");
  Verdict cone = is_cone_hyperbolic(P, {{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}, cfg);
  if (!cone.holds)
    throw std::invalid_argument("construct_cor: input is not hyperbolic over the cone");

  ConstructResult res = construct_t1(P, cfg);
  res.stages.insert(res.stages.begin(),
                    {"cone_check", {{"worst_imag", cone.worst_imag},
                                    {"samples", double(cone.samples_checked)}}});
  if (!res.ok) return res;

  const Pencil& pen = res.pencil;
  double scale = std::max(1.0, max_abs(pen.mats[1]));
  RankInfo bm_rank = rank_info(*pen.Bm, cfg.rank_tol);
  res.invariants["bm_rank_zero"] = {bm_rank.rank == 0, double(bm_rank.rank)};
  HermEig e1 = jacobi_hermitian(pen.mats[1]);
  double min_eig = e1.values.empty() ? 0.0 : e1.values.front();
  res.invariants["a1_psd"] = {min_eig >= -cfg.psd_floor * scale, min_eig};
  double sum_dev = max_abs(pen.mats[1] + pen.mats[2] - CMat::eye(pencil_dim(pen)));
  res.invariants["a1_plus_a2_identity"] = {sum_dev <= 1e-10, sum_dev};
  return res;
}

// Four-variable chain through the tridisk. P must be affine in x2 and x3
// and hyperbolic over the positive span of e1, e2, e3. The result satisfies
// P * R = det(x0 A0 + x1 A1 + x2 A2 + x3 A3) for the computed cofactor R.
inline ConstructResult construct_t2(const Poly& P, const Config& cfg = {}) {
  if (P.nvars != 4) throw std::invalid_argument("construct_t2: four variables required");
  if (total_degree(P) < 1) throw std::invalid_argument("construct_t2: constant polynomial");
  if (degree_in(P, 2) > 1 || degree_in(P, 3) > 1)
    throw std::invalid_argument("construct_t2: input must be affine in x2 and x3");
  ConstructResult res;

  Verdict cone = is_cone_hyperbolic(
      P, {{0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 1.0, 0.0}, {0.0, 0.0, 0.0, 1.0}}, cfg);
  res.stages.push_back({"cone_check",
                        {{"worst_imag", cone.worst_imag}, {"samples", double(cone.samples_checked)}}});
  if (!cone.holds)
    throw std::invalid_argument("construct_t2: input is not hyperbolic over the cone");

  Poly q = restrict_var(P, 0, cd(1.0));
  Expt qdeg = multidegree(q);
  res.stages.push_back({"restriction", {{"n", double(qdeg[0])}}});
  Poly f = disk_from_halfplane(q, qdeg);
  check_no_leading_variable_factor(f);
  const int n = degree_in(f, 0);

  // f itself is self-reflective, which makes the two-sided form
  // f(z)f̄(w) - f̃(z)f̃̄(w) vanish identically; the certificate has to come
  // from the Euler split half, whose identity then collapses to the needed
  // relation exactly on the zero set of f.
  Poly ph = split_self_reflective(f, qdeg).first;

  try {
    SosCertificate cert = find_sos_tridisk(ph, cfg);
    res.cert = cert;
    res.cert_set = true;
    res.stages.push_back({"certificate",
                          {{"residual", cert.residual},
                           {"iterations", double(cert.iterations)},
                           {"converged", cert.converged ? 1.0 : 0.0},
                           {"t_used", cert.t_used}}});
    if (!cert.converged || cert.residual > cfg.sos_tol) {
      res.failure =
          "certificate search did not converge (residual " + detail_construct::sci(cert.residual) + ")";
      return res;
    }

    std::vector<CVec> samples = variety_sample(f, cfg.variety_count, cfg.seed + 1000);
    UnitaryExtension ext = unitary_from_certificate(cert, f, samples, cfg);
    res.stages.push_back({"unitary_extension",
                          {{"gram_mismatch", ext.gram_mismatch},
                           {"worst_map", ext.worst_map},
                           {"worst_det", ext.worst_det}}});

    const std::vector<int>& dims = ext.dims;
    const int D = dims[0] + dims[1] + dims[2];
    Poly big = interpolate_poly(
        [&](const CVec& z) {
          CMat M(D, D);
          int at = 0;
          for (int j = 0; j < 3; ++j)
            for (int r = 0; r < dims[j]; ++r, ++at) M(at, at) = z[j];
          return lu_det(CMat::eye(D) - ext.U * M);
        },
        dims);

    DividesOutcome div = divides_check(f, big, {dims[0] - n, 1, 1}, 1e-6);
    res.invariants["quotient_divides"] = {div.pass, div.residual};
    {
      std::vector<CVec> fresh = variety_sample(f, 50, cfg.seed + 2000);
      double scale_big = std::max(1.0, max_coeff_abs(big));
      double worst = 0.0;
      for (const CVec& z : fresh) {
        double bound = scale_big;
        for (const cd& zc : z) bound *= std::max(1.0, std::abs(zc));
        worst = std::max(worst, std::abs(eval_poly(big, z)) / bound);
      }
      res.invariants["shift_det_vanishes_on_zero_set"] = {worst <= 1e-6, worst};
    }
    res.stages.push_back({"quotient", {{"residual", div.residual}}});
    if (!div.pass) {
      res.failure = "shift determinant is not a multiple of the disk polynomial";
      return res;
    }

    SpectralData sd = unitary_spectral(ext.U, cfg.eig_sep);
    const int k = sd.k;
    res.stages.push_back({"spectral", {{"k", double(k)}, {"min_gap", sd.min_gap}}});
    std::vector<double> a = cayley_diagonal(sd.u, cfg.eig_sep);
    CMat Vk = sd.V.block(0, D, 0, k);
    CMat A0 = CMat::diag_real(a);
    CMat A1 = detail_construct::block_gram(Vk, 0, dims[0]);
    CMat A2 = detail_construct::block_gram(Vk, dims[0], dims[1]);
    CMat A3 = detail_construct::block_gram(Vk, dims[0] + dims[1], dims[2]);

    Poly dp = interpolate_poly(
        [&](const CVec& w) { return lu_det(A0 + w[0] * A1 + w[1] * A2 + w[2] * A3); }, {k, k, k});

    Poly r_half = halfplane_from_disk(div.quotient, multidegree(div.quotient));
    Poly qr = q * r_half;
    Expt kq = detail_construct::argmax_coeff(qr);
    cd dq = coeff(dp, kq);
    cd qq = coeff(qr, kq);
    if (std::abs(qq) <= 1e-300) {
      res.failure = "restriction times cofactor vanished";
      return res;
    }
    cd C = dq / qq;
    double rel = poly_max_diff(dp, C * qr) / std::max(max_coeff_abs(dp), 1e-300);
    res.invariants["det_matches_restriction_times_cofactor"] = {rel <= 1e-8, rel};
    res.stages.push_back({"calibration", {{"c_re", C.real()}, {"c_im", C.imag()}, {"rel", rel}}});

    Poly rho = C * r_half;
    double imag_part = 0.0;
    for (const auto& [e, c] : rho.terms) imag_part = std::max(imag_part, std::abs(c.imag()));
    double rho_scale = std::max(max_coeff_abs(rho), 1e-300);
    res.invariants["cofactor_real"] = {imag_part <= 1e-8 * rho_scale, imag_part / rho_scale};
    Poly rho_real;
    rho_real.nvars = rho.nvars;
    for (const auto& [e, c] : rho.terms) rho_real.terms[e] = c.real();
    rho_real = prune(rho_real);

    const int d = total_degree(P);
    if (k - d < total_degree(rho_real)) {
      res.failure = "cofactor degree is inconsistent with the pencil size";
      return res;
    }
    res.cofactor = homogenize(rho_real, 0, k - d);
    res.cofactor_set = true;

    res.pencil.mats = {A0, A1, A2, A3};
    res.pencil.c = 1.0;
    validate_pencil(res.pencil, cfg);
    double sum_dev = max_abs(A1 + A2 + A3 - CMat::eye(k));
    res.invariants["partition_of_identity"] = {sum_dev <= 1e-10, sum_dev};

    Poly target = P * res.cofactor;
    res.verify = verify_representation(res.pencil, target, cfg);
    res.ok = true;
  } catch (const std::runtime_error& e) {
    res.failure = e.what();
  }
  return res;
}

struct LiftResult {
  Pencil pencil4;
  Poly lifted;  // variables (x0, x1, y1, x2)
  Verdict hyperbolic;
  double restriction_residual = 0.0;
};

// Split lift: replace x1 A1 by x1 Bp + y1 Bm. The lifted polynomial is
// hyperbolic in (0, 1, 1, 1) and returns to the original on y1 = -x1.
inline LiftResult lift_to_four(const Pencil& P, const Config& cfg = {}) {
  if (!P.Bp || !P.Bm) throw std::invalid_argument("lift_to_four: pencil has no stored split");
  if (P.mats.size() != 3) throw std::invalid_argument("lift_to_four: ternary pencil required");
  validate_pencil(P, cfg);
  LiftResult out;
  out.pencil4.mats = {P.mats[0], *P.Bp, *P.Bm, P.mats[2]};
  out.pencil4.c = P.c;
  out.lifted = pencil_to_poly(out.pencil4, cfg);
  Poly p3 = pencil_to_poly(P, cfg);
  Poly back = restrict_var(substitute_linear(out.lifted, 2, cd(-1.0), 1), 2, cd(0.0));
  out.restriction_residual = poly_max_diff(back, p3) / (1.0 + max_coeff_abs(p3));
  out.hyperbolic = is_hyperbolic(out.lifted, {0.0, 1.0, 1.0, 1.0}, cfg);
  return out;
}

struct WorkedExample {
  Pencil pencil;
  Poly p;            // 3 det(x0 A0 + x1 A1 + x2 A2)
  std::string text;  // canonical input form of p
};

// the running example: a semi-hyperbolic cubic with a size-3 representation
// whose x1 coefficient splits into rank-1 PSD parts
inline WorkedExample worked_example() {
  WorkedExample w;
  const double s3 = std::sqrt(3.0);
  CMat A0(3, 3);
  A0(0, 1) = cd(0.0, -1.0);
  A0(1, 0) = cd(0.0, 1.0);
  A0(0, 2) = cd(0.0, -s3 / 3.0);
  A0(2, 0) = cd(0.0, s3 / 3.0);
  A0(1, 2) = cd(0.0, s3 / 3.0);
  A0(2, 1) = cd(0.0, -s3 / 3.0);
  CMat A1 = CMat::diag_real({0.0, 1.0, -1.0});
  CMat A2 = CMat::diag_real({1.0, 0.0, 0.0});
  w.pencil.mats = {A0, A1, A2};
  w.pencil.c = 3.0;
  w.pencil.Bp = CMat::diag_real({0.0, 1.0, 0.0});
  w.pencil.Bm = CMat::diag_real({0.0, 0.0, 1.0});
  w.text = "2*x0^2*x1 - (x0^2 + 3*x1^2)*x2";
  w.p = parse_poly(w.text, {"x0", "x1", "x2"});
  return w;
}

}  // namespace hypdet
