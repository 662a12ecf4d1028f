#include <doctest.h>

#include "realrep/numkernel.hpp"

using namespace realrep;

TEST_SUITE_BEGIN("numkernel");

TEST_CASE("nullspace on full-rank, zero, and rank-one inputs") {
  CHECK(nullspace(CMatrix::Identity(3, 3)).cols() == 0);
  CHECK(nullspace(CMatrix::Zero(2, 2)).cols() == 2);

  CMatrix A(2, 2);
  A << 1, 1, 1, 1;
  const CMatrix N = nullspace(A);
  REQUIRE(N.cols() == 1);
  // column proportional to (1, -1)/sqrt(2)
  CHECK(std::abs(std::abs(N(0, 0)) - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(N(0, 0) + N(1, 0)) < 1e-12);
  CHECK((A * N).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("nullspace is monotone under appended constraints") {
  Rng rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix A = rng.matrix(2, 6);
    const CMatrix extra = rng.matrix(3, 6);
    CMatrix stacked(5, 6);
    stacked << A, extra;
    CHECK(nullspace(stacked).cols() <= nullspace(A).cols());
  }
}

TEST_CASE("hermitian_eig matches hand-computed spectra") {
  {
    CMatrix H = CMatrix::Zero(2, 2);
    H(0, 0) = 2.0;
    H(1, 1) = 1.0;
    auto [vals, vecs] = hermitian_eig(H);
    CHECK(vals(0) == doctest::Approx(1.0));
    CHECK(vals(1) == doctest::Approx(2.0));
  }
  {
    CMatrix H(2, 2);
    H << 0, 1, 1, 0;
    auto [vals, vecs] = hermitian_eig(H);
    CHECK(vals(0) == doctest::Approx(-1.0));
    CHECK(vals(1) == doctest::Approx(1.0));
    CHECK((H - vecs * vals.asDiagonal() * vecs.adjoint()).cwiseAbs().maxCoeff() <
          1e-12);
  }
  {
    auto [vals, vecs] = hermitian_eig(CMatrix::Identity(4, 4));
    for (int i = 0; i < 4; ++i) CHECK(vals(i) == doctest::Approx(1.0));
  }
  CMatrix bad(2, 2);
  bad << 0, 1, 2, 0;
  CHECK_THROWS_AS(hermitian_eig(bad), Error);
}

TEST_CASE("eigenvalues stable under random unitary conjugation") {
  Rng rng(11);
  const Tol tol;
  for (int trial = 0; trial < 4; ++trial) {
    const CMatrix H = rng.hermitian(5);
    // Random unitary from the QR of a random matrix.
    Eigen::HouseholderQR<CMatrix> qr(rng.matrix(5, 5));
    const CMatrix U = qr.householderQ();
    auto [v1, e1] = hermitian_eig(H);
    auto [v2, e2] = hermitian_eig(CMatrix(U * H * U.adjoint()));
    for (int i = 0; i < 5; ++i) {
      CHECK(std::abs(v1(i) - v2(i)) < 10 * tol.residual * (1 + std::abs(v1(i))));
    }
  }
}

TEST_CASE("orthonormalize against identity and positive forms") {
  {
    // already orthonormal: unchanged
    CMatrix V = CMatrix::Identity(3, 2);
    const CMatrix Q = orthonormalize(V, nullptr);
    CHECK((Q - V).cwiseAbs().maxCoeff() < 1e-12);
  }
  {
    CMatrix V(2, 2);
    V << 1, 1, 0, 1;
    const CMatrix Q = orthonormalize(V, nullptr);
    CHECK((Q.adjoint() * Q - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() <
          1e-12);
    CHECK(std::abs(std::abs(Q(0, 0)) - 1.0) < 1e-12);  // e1 up to phase
  }
  {
    CVector v(2);
    v << 3.0, 4.0;
    const CMatrix Q = orthonormalize(v, nullptr);
    CHECK(std::abs(Q.col(0).norm() - 1.0) < 1e-12);
  }
  {
    // Gram matrix under a random positive definite form is the identity.
    Rng rng(3);
    const CMatrix A = rng.matrix(4, 4);
    const CMatrix H = A.adjoint() * A + CMatrix::Identity(4, 4);
    const CMatrix V = rng.matrix(4, 3);
    const CMatrix Q = orthonormalize(V, &H);
    // <q_i, q_j> = q_j^* H q_i
    const CMatrix G = Q.adjoint() * H * Q;
    CHECK((G - CMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-10);
  }
  {
    CMatrix dependent(3, 2);
    dependent << 1, 2, 1, 2, 1, 2;
    CHECK_THROWS_AS(orthonormalize(dependent, nullptr), Error);
  }
}

TEST_CASE("principal_sqrt branch") {
  CHECK(principal_sqrt(4.0) == Complex(2.0, 0.0));
  CHECK(std::abs(principal_sqrt(Complex(-1.0, 0.0)) - Complex(0.0, 1.0)) <
        1e-15);
  CHECK(std::abs(principal_sqrt(Complex(0.0, 2.0)) - Complex(1.0, 1.0)) <
        1e-15);
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    const Complex alpha = rng.cgaussian();
    const Complex r = principal_sqrt(alpha);
    CHECK(std::abs(r * r - alpha) < 1e-12 * (1 + std::abs(alpha)));
    CHECK((r.real() > 0 || (r.real() == 0 && r.imag() > 0)));
  }
  CHECK_THROWS_AS(principal_sqrt(Complex(0, 0)), Error);
}

TEST_CASE("principal angles of equal and orthogonal spans") {
  CMatrix U1 = CMatrix::Identity(4, 2);
  CHECK(max_principal_angle(U1, U1) < 1e-12);
  CMatrix U2 = CMatrix::Zero(4, 2);
  U2(2, 0) = 1;
  U2(3, 1) = 1;
  CHECK(max_principal_angle(U1, U2) == doctest::Approx(M_PI / 2));
}

TEST_SUITE_END();
