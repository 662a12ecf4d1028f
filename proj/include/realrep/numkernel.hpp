#ifndef REALREP_NUMKERNEL_HPP
#define REALREP_NUMKERNEL_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <utility>

#include "realrep/tol.hpp"

namespace realrep {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Orthonormal basis of the numerical null space of A (columns). An empty
// matrix with A.cols() rows is returned for full-rank input; rank is decided
// by tol.rank_cut relative to the largest singular value.
CMatrix nullspace(const CMatrix& A, const Tol& tol = {});

// Gram-Schmidt orthonormalization of the columns of V with respect to a
// Hermitian positive definite form H (identity when form == nullptr).
// Inner product convention: <u,v> = v^* H u. Throws on rank deficiency.
CMatrix orthonormalize(const CMatrix& V, const CMatrix* form,
                       const Tol& tol = {});

// Eigendecomposition of a Hermitian matrix: eigenvalues ascending, columns of
// the second component are the corresponding orthonormal eigenvectors.
// Throws if H fails the Hermitian residual test.
std::pair<RVector, CMatrix> hermitian_eig(const CMatrix& H,
                                          const Tol& tol = {});

// Square root with the branch fixed by Re r > 0, or Re r = 0 and Im r > 0.
// Throws on zero input.
Complex principal_sqrt(Complex alpha);

// --- shared numeric utilities -------------------------------------------

double spectral_norm(const CMatrix& A);
int numerical_rank(const CMatrix& A, const Tol& tol = {});
bool is_invertible(const CMatrix& A, const Tol& tol = {});

// H^p for Hermitian positive definite H (used with p = +-1/2).
CMatrix herm_power(const CMatrix& H, double p, const Tol& tol = {});

// Largest principal angle between the column spans of two orthonormal bases,
// computed through projection residuals so that angles near zero remain
// resolvable at double precision.
double max_principal_angle(const CMatrix& U1, const CMatrix& U2);

// Rounds x to the nearest integer; throws (numeric) if the gap exceeds
// kIntegerGap.
long round_integer(double x, const char* what);

// Deterministic random source. All randomized algorithms take an explicit
// 64-bit seed and draw through this wrapper only.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  double uniform();          // [0, 1)
  double gaussian();         // standard normal (Box-Muller)
  Complex cgaussian();       // complex standard normal
  CMatrix matrix(int rows, int cols);
  CMatrix hermitian(int n);
  CMatrix invertible(int n, const Tol& tol = {});
  std::uint64_t next_seed();

 private:
  std::uint64_t next_bits();
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace realrep

#endif
