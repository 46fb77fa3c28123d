#include <catch2/catch_amalgamated.hpp>

#include <hypdet/linalg.hpp>
#include <hypdet/rng.hpp>

using namespace hypdet;

namespace {

CMat random_hermitian(Rng& rng, int n) {
  CMat H(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) H(i, j) = rng.cnormal();
  return 0.5 * (H + adjoint(H));
}

}  // namespace

TEST_CASE("jacobi eigenvalues of a diagonal matrix come back sorted") {
  CMat D = CMat::diag_real({3.0, 1.0, 2.0});
  HermEig e = jacobi_hermitian(D);
  REQUIRE(e.values.size() == 3);
  CHECK(e.values[0] == Catch::Approx(1.0).margin(1e-13));
  CHECK(e.values[1] == Catch::Approx(2.0).margin(1e-13));
  CHECK(e.values[2] == Catch::Approx(3.0).margin(1e-13));
}

TEST_CASE("jacobi handles an off-diagonal 2x2") {
  CMat M(2, 2);
  M(0, 1) = 1.0;
  M(1, 0) = 1.0;
  HermEig e = jacobi_hermitian(M);
  CHECK(e.values[0] == Catch::Approx(-1.0).margin(1e-13));
  CHECK(e.values[1] == Catch::Approx(1.0).margin(1e-13));
}

TEST_CASE("jacobi reconstructs random Hermitian matrices") {
  Rng rng(7);
  for (int n : {1, 4, 13, 50}) {
    CMat H = random_hermitian(rng, n);
    HermEig e = jacobi_hermitian(H);
    CMat R(n, n);
    for (int t = 0; t < n; ++t)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          R(i, j) += e.values[t] * e.vectors(i, t) * std::conj(e.vectors(j, t));
    CHECK(max_abs(H - R) < 1e-10 * std::max(1.0, max_abs(H)));
    CHECK(max_abs(adjoint(e.vectors) * e.vectors - CMat::eye(n)) < 1e-11);
    for (int t = 1; t < n; ++t) CHECK(e.values[t - 1] <= e.values[t]);
  }
}

TEST_CASE("singular values come back descending") {
  CMat M(3, 2);
  M(0, 0) = 3.0;
  M(1, 1) = 4.0;
  std::vector<double> s = singular_values(M);
  REQUIRE(s.size() == 2);
  CHECK(s[0] == Catch::Approx(4.0).margin(1e-12));
  CHECK(s[1] == Catch::Approx(3.0).margin(1e-12));
}

TEST_CASE("rank detection separates a clean gap") {
  CMat M = CMat::diag_real({1.0, 1e-12, 0.0});
  RankInfo info = rank_info(M, 1e-8);
  CHECK(info.rank == 1);
  CHECK_FALSE(info.ambiguous);
  CHECK(rank_tol(M, 1e-8) == 1);
}

TEST_CASE("LU determinant and solve agree with known values") {
  CMat M(3, 3);
  M(0, 0) = 2.0; M(0, 1) = 1.0; M(0, 2) = 0.0;
  M(1, 0) = 0.0; M(1, 1) = 3.0; M(1, 2) = 1.0;
  M(2, 0) = 1.0; M(2, 1) = 0.0; M(2, 2) = 1.0;
  // det = 2*(3) - 1*(-1) + 0 = 7
  CHECK(std::abs(lu_det(M) - cd(7.0)) < 1e-12);
  CVec b = {1.0, 2.0, 3.0};
  CVec x = solve_square(M, b);
  CVec r = M * x;
  for (int i = 0; i < 3; ++i) CHECK(std::abs(r[i] - b[i]) < 1e-12);
}

TEST_CASE("pseudoinverse satisfies the defining identity") {
  Rng rng(11);
  CMat A(7, 4);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 4; ++j) A(i, j) = rng.cnormal();
  CMat P = pinv(A);
  CHECK(max_abs(A * P * A - A) < 1e-10);
  CHECK(max_abs(P * A * P - P) < 1e-10);

  CVec b(7);
  for (auto& v : b) v = rng.cnormal();
  CVec x = lstsq(A, b);
  // normal equations: A^* (A x - b) = 0
  CVec res = A * x;
  for (int i = 0; i < 7; ++i) res[i] -= b[i];
  CVec g = adjoint(A) * res;
  CHECK(vec_norm(g) < 1e-10);
}

TEST_CASE("orthonormal complement completes a frame") {
  Rng rng(3);
  CMat U = haar_unitary(rng, 5);
  CMat Q = U.block(0, 5, 0, 2);
  CMat C = orthonormal_complement(Q);
  REQUIRE(C.rows() == 5);
  REQUIRE(C.cols() == 3);
  CHECK(max_abs(adjoint(C) * C - CMat::eye(3)) < 1e-10);
  CHECK(max_abs(adjoint(Q) * C) < 1e-10);
}

TEST_CASE("haar unitaries are unitary and seed-deterministic") {
  Rng a(42), b(42), c(43);
  CMat U1 = haar_unitary(a, 6);
  CMat U2 = haar_unitary(b, 6);
  CMat U3 = haar_unitary(c, 6);
  CHECK(max_abs(adjoint(U1) * U1 - CMat::eye(6)) < 1e-12);
  CHECK(max_abs(U1 - U2) == 0.0);
  CHECK(max_abs(U1 - U3) > 1e-3);
}

TEST_CASE("spectral split of the identity has no non-unit part") {
  SpectralData sd = unitary_spectral(CMat::eye(4));
  CHECK(sd.k == 0);
  CHECK(sd.total_dim == 4);
}

TEST_CASE("spectral split isolates the -1 eigenvalue first") {
  CMat U = CMat::diag_real({1.0, -1.0, 1.0});
  SpectralData sd = unitary_spectral(U);
  REQUIRE(sd.k == 1);
  CHECK(std::abs(sd.u[0] - cd(-1.0)) < 1e-12);
  // the first column spans the -1 eigenspace
  CHECK(std::abs(std::abs(sd.V(1, 0)) - 1.0) < 1e-10);
}

TEST_CASE("spectral split diagonalizes a full unitary") {
  Rng rng(5);
  CMat W = haar_unitary(rng, 5);
  std::vector<double> phases = {0.3, -1.2, 2.4, 0.0, 0.0};
  CMat D(5, 5);
  for (int i = 0; i < 5; ++i) D(i, i) = std::polar(1.0, phases[i]);
  CMat U = W * D * adjoint(W);
  SpectralData sd = unitary_spectral(U);
  REQUIRE(sd.k == 3);
  // eigen relation holds column by column for the non-unit part
  for (int t = 0; t < sd.k; ++t) {
    CVec v = sd.V.column(t);
    CVec uv = U * v;
    for (int i = 0; i < 5; ++i) uv[i] -= sd.u[t] * v[i];
    CHECK(vec_norm(uv) < 1e-9);
  }
  CHECK(max_abs(adjoint(sd.V) * sd.V - CMat::eye(5)) < 1e-9);
}

TEST_CASE("unitary spectral rejects non-unitary input") {
  CMat M = CMat::diag_real({2.0, 1.0});
  CHECK_THROWS_AS(unitary_spectral(M), std::invalid_argument);
}

TEST_CASE("diagonal Cayley transform maps known points") {
  // a = i (1 + u) / (1 - u)
  std::vector<double> a = cayley_diagonal({cd(0.0, 1.0)});
  REQUIRE(a.size() == 1);
  CHECK(a[0] == Catch::Approx(-1.0).margin(1e-12));

  double theta = 2.0 * std::atan(1.0) / 3.0;  // pi/6
  std::vector<double> b = cayley_diagonal({std::polar(1.0, theta)});
  CHECK(b[0] == Catch::Approx(-1.0 / std::tan(theta / 2.0)).margin(1e-10));

  CHECK_THROWS_AS(cayley_diagonal({cd(1.0, 0.0)}), std::runtime_error);
}

TEST_CASE("lurking isometry recovers a hidden unitary") {
  Rng rng(17);
  for (int rep = 0; rep < 20; ++rep) {
    int d = 2 + int(rng.integer(0, 5));
    int s = 1 + int(rng.integer(0, d));
    CMat W = haar_unitary(rng, d);
    std::vector<CVec> lefts, rights;
    for (int j = 0; j < s; ++j) {
      CVec l(d);
      for (auto& v : l) v = rng.cnormal();
      lefts.push_back(l);
      rights.push_back(W * l);
    }
    CHECK(gram_mismatch(lefts, rights) < 1e-12);
    CMat U = lurking_isometry(lefts, rights);
    CHECK(max_abs(adjoint(U) * U - CMat::eye(d)) < 1e-10);
    for (int j = 0; j < s; ++j) {
      CVec img = U * lefts[j];
      for (int i = 0; i < d; ++i) img[i] -= rights[j][i];
      CHECK(vec_norm(img) < 1e-8 * std::max(1.0, vec_norm(lefts[j])));
    }
  }
}

TEST_CASE("lurking isometry rejects pairs with mismatched Grams") {
  Rng rng(19);
  CMat W = haar_unitary(rng, 4);
  std::vector<CVec> lefts, rights;
  for (int j = 0; j < 3; ++j) {
    CVec l(4);
    for (auto& v : l) v = rng.cnormal();
    lefts.push_back(l);
    rights.push_back(W * l);
  }
  rights[1][2] += 1e-3;
  CHECK_THROWS_AS(lurking_isometry(lefts, rights), std::runtime_error);
}

TEST_CASE("thin QR factors with orthonormal columns") {
  Rng rng(23);
  CMat A(6, 3);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 3; ++j) A(i, j) = rng.cnormal();
  CMat Q, R;
  qr_mgs(A, Q, R);
  CHECK(max_abs(adjoint(Q) * Q - CMat::eye(3)) < 1e-11);
  CHECK(max_abs(Q * R - A) < 1e-11);
}
