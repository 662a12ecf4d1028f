#include "realrep/numkernel.hpp"

#include <cmath>

namespace realrep {

CMatrix nullspace(const CMatrix& A, const Tol& tol) {
  const int n = static_cast<int>(A.cols());
  if (A.rows() == 0 || n == 0) {
    return CMatrix::Identity(n, n);
  }
  Eigen::JacobiSVD<CMatrix> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  const double cut = std::max(tol.rank_cut * smax, kRankFloor);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > cut) ++rank;
  }
  return svd.matrixV().rightCols(n - rank);
}

CMatrix orthonormalize(const CMatrix& V, const CMatrix* form, const Tol& tol) {
  const int n = static_cast<int>(V.cols());
  CMatrix Q = V;
  auto dot = [&](const CVector& u, const CVector& v) -> Complex {
    // <u,v> = v^* H u
    if (form) return (v.adjoint() * (*form) * u)(0, 0);
    return (v.adjoint() * u)(0, 0);
  };
  for (int k = 0; k < n; ++k) {
    CVector v = Q.col(k);
    const double before = std::sqrt(std::abs(dot(v, v)));
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < k; ++j) {
        CVector u = Q.col(j);
        v -= dot(v, u) * u;
      }
    }
    const double norm = std::sqrt(std::abs(dot(v, v)));
    if (norm <= tol.rank_cut * (1.0 + before)) {
      fail_numeric("orthonormalize: dependent columns");
    }
    Q.col(k) = v / norm;
  }
  return Q;
}

std::pair<RVector, CMatrix> hermitian_eig(const CMatrix& H, const Tol& tol) {
  const double scale = 1.0 + H.cwiseAbs().maxCoeff();
  const double herm_res = (H - H.adjoint()).cwiseAbs().maxCoeff();
  if (herm_res > tol.residual * scale * 1e3) {
    fail_validation("hermitian_eig: input is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es((H + H.adjoint()) / 2.0);
  if (es.info() != Eigen::Success) {
    fail_numeric("hermitian_eig: eigensolver failed");
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

Complex principal_sqrt(Complex alpha) {
  if (alpha == Complex(0.0, 0.0)) {
    fail_validation("principal_sqrt: zero input");
  }
  const double r = std::sqrt(std::abs(alpha));
  const double theta = std::atan2(alpha.imag(), alpha.real());
  Complex root = r * Complex(std::cos(theta / 2.0), std::sin(theta / 2.0));
  if (root.real() < 0.0 ||
      (std::abs(root.real()) < 1e-300 && root.imag() < 0.0)) {
    root = -root;
  }
  return root;
}

double spectral_norm(const CMatrix& A) {
  if (A.rows() == 0 || A.cols() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(A);
  return svd.singularValues()(0);
}

int numerical_rank(const CMatrix& A, const Tol& tol) {
  if (A.rows() == 0 || A.cols() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(A);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double cut = std::max(tol.rank_cut * smax, kRankFloor);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > cut) ++rank;
  }
  return rank;
}

bool is_invertible(const CMatrix& A, const Tol& tol) {
  if (A.rows() != A.cols()) return false;
  if (A.rows() == 0) return true;
  return numerical_rank(A, tol) == A.rows();
}

CMatrix herm_power(const CMatrix& H, double p, const Tol& tol) {
  auto [vals, vecs] = hermitian_eig(H, tol);
  RVector powered(vals.size());
  for (int i = 0; i < vals.size(); ++i) {
    if (vals(i) <= 0.0) {
      fail_numeric("herm_power: matrix is not positive definite");
    }
    powered(i) = std::pow(vals(i), p);
  }
  return vecs * powered.asDiagonal() * vecs.adjoint();
}

double max_principal_angle(const CMatrix& U1, const CMatrix& U2) {
  if (U1.cols() == 0 && U2.cols() == 0) return 0.0;
  // sin(theta_max) = || (I - P1) U2 ||_2, symmetrized.
  auto one_side = [](const CMatrix& A, const CMatrix& B) {
    CMatrix R = B - A * (A.adjoint() * B);
    return spectral_norm(R);
  };
  double s = std::max(one_side(U1, U2), one_side(U2, U1));
  if (s > 1.0) s = 1.0;
  return std::asin(s);
}

long round_integer(double x, const char* what) {
  const double nearest = std::round(x);
  if (std::abs(x - nearest) > kIntegerGap) {
    fail_numeric(std::string(what) + ": value " + std::to_string(x) +
                 " is not integral");
  }
  return static_cast<long>(nearest);
}

// splitmix64; chosen over std::mt19937_64 + distributions so that streams are
// identical across standard library implementations.
std::uint64_t Rng::next_bits() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(next_bits() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double mag = std::sqrt(-2.0 * std::log(u1));
  spare_ = mag * std::sin(2.0 * M_PI * u2);
  have_spare_ = true;
  return mag * std::cos(2.0 * M_PI * u2);
}

Complex Rng::cgaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return Complex(re, im) / std::sqrt(2.0);
}

CMatrix Rng::matrix(int rows, int cols) {
  CMatrix A(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) A(i, j) = cgaussian();
  return A;
}

CMatrix Rng::hermitian(int n) {
  CMatrix A = matrix(n, n);
  return (A + A.adjoint()) / 2.0;
}

CMatrix Rng::invertible(int n, const Tol& tol) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    CMatrix A = matrix(n, n);
    if (is_invertible(A, tol)) return A;
  }
  fail_numeric("Rng::invertible: failed to draw an invertible matrix");
}

std::uint64_t Rng::next_seed() { return next_bits(); }

}  // namespace realrep
