#ifndef REALREP_REP_HPP
#define REALREP_REP_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "realrep/group.hpp"
#include "realrep/numkernel.hpp"

namespace realrep {

// A matrix representation: element -> invertible complex matrix. mats[0] is
// the identity and mats[a] mats[b] = mats[ab] within tolerance.
struct Rep {
  std::shared_ptr<const GroupTable> group;
  int dim = 0;
  std::vector<CMatrix> mats;

  const CMatrix& at(int g) const { return mats[g]; }
};

// Character: one complex value per group element.
struct Character {
  std::vector<Complex> values;
  int dim() const;
};

// Max residual over all pairs of ||mats[a] mats[b] - mats[ab]||, plus the
// identity and invertibility checks. The caller compares against tolerance.
double validate_rep(const Rep& r, const Tol& tol = {});

Rep regular_rep(std::shared_ptr<const GroupTable> g);

Character character_of(const Rep& r);
// (1/|G|) sum_g chi1(g) conj(chi2(g))
Complex char_inner(const Character& c1, const Character& c2);
bool characters_equal(const Character& c1, const Character& c2,
                      double tol = 1e-8);
bool is_irreducible(const Rep& r, const Tol& tol = {});

// Complete list of pairwise non-isomorphic irreducible representations,
// obtained by randomized splitting of the regular representation. Output is
// deterministic for a fixed seed and sorted by (dim, character key).
std::vector<Rep> irreducibles(std::shared_ptr<const GroupTable> g,
                              std::uint64_t seed, const Tol& tol = {});

struct IsoDecomp {
  struct Part {
    int irrep = -1;       // index into the catalog
    int multiplicity = 0;
    CMatrix embedding;    // dim(r) x (multiplicity * dim(irrep)); per-copy blocks
  };
  std::vector<Part> parts;
};

// Splits r into irreducible pieces (randomized eigenspace splitting) and
// matches them against the catalog by characters. Throws (numeric) if the
// catalog is incomplete or a multiplicity fails to be integral.
IsoDecomp decompose(const Rep& r, const std::vector<Rep>& catalog,
                    std::uint64_t seed, const Tol& tol = {});

// Orthonormal basis of { f : f M_V(g) = M_W(g) f for all g }.
std::vector<CMatrix> intertwiner_basis(const Rep& V, const Rep& W,
                                       const Tol& tol = {});

Rep transform_conjugate(const Rep& r);
Rep transform_dual(const Rep& r);
// g -> mats[w g w^{-1}]; r must be a representation of the even kernel of ctx
// and w odd.
Rep transform_twist(const Rep& r, const GradedContext& ctx, int w);
// g -> parity(g) * mats[g]; r must be a representation of the full group.
Rep transform_tensor_sign(const Rep& r, const GradedGroup& gg);

// G-invariant Hermitian positive definite form H = (1/|G|) sum M(g)^* M(g),
// with <u,v> = v^* H u (linear in the first slot).
struct InvariantInner {
  CMatrix H;
};
InvariantInner unitarize(const Rep& r);

// Restriction of a hat-group representation to the even kernel (re-indexed to
// the kernel's own table).
Rep restrict_rep(const Rep& hat_rep, const GradedContext& ctx);
// Induction of an even-kernel representation to the hat group (dimension
// doubles; basis V + w0 V).
Rep induce_rep(const Rep& even_rep, const GradedContext& ctx);

// Internal helpers shared with the graded modules.
namespace detail {
// Deterministic sort key for characters: (dim, rounded values).
bool char_order(const Character& a, const Character& b);
// Splits r into irreducible invariant subspaces; returns orthonormal bases
// (in the coordinates of r) paired with the restricted representations.
std::vector<std::pair<CMatrix, Rep>> split_irreducible(const Rep& r,
                                                       std::uint64_t seed,
                                                       const Tol& tol);
// An invertible element of the span of the given intertwiners (seeded random
// combinations with retries).
CMatrix invertible_combination(const std::vector<CMatrix>& basis,
                               std::uint64_t seed, const Tol& tol);
}  // namespace detail

}  // namespace realrep

#endif
