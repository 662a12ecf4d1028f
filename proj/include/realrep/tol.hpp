#ifndef REALREP_TOL_HPP
#define REALREP_TOL_HPP

#include <stdexcept>
#include <string>

namespace realrep {

// Numerical tolerances used throughout. `residual` bounds construction and
// coherence residuals, `rank_cut` is a relative singular-value cutoff for all
// rank and dimension decisions. Integer quantities (multiplicities, Lie
// dimensions) are rounded only when the gap to the nearest integer is below
// kIntegerGap, which is kept four orders of magnitude above `residual`.
struct Tol {
  double residual = 1e-10;
  double rank_cut = 1e-8;
};

inline constexpr double kIntegerGap = 1e-4;

// Absolute floor under the relative singular-value cutoff. Constraint
// matrices in this library are built from O(1) representation data, so
// singular values at this level are roundoff noise even when the whole
// matrix is numerically zero.
inline constexpr double kRankFloor = 1e-12;

enum class ErrorKind { validation, numeric, io };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail_validation(const std::string& msg) {
  throw Error(ErrorKind::validation, msg);
}
[[noreturn]] inline void fail_numeric(const std::string& msg) {
  throw Error(ErrorKind::numeric, msg);
}
[[noreturn]] inline void fail_io(const std::string& msg) {
  throw Error(ErrorKind::io, msg);
}

}  // namespace realrep

#endif
