#ifndef REALREP_GRADED_HPP
#define REALREP_GRADED_HPP

#include <optional>
#include <string>
#include <vector>

#include "realrep/rep.hpp"

namespace realrep {

enum class Involution { trivial, conjugation };
enum class Theory { A, L, H };

inline Involution involution_of(Theory t) {
  return t == Theory::H ? Involution::conjugation : Involution::trivial;
}

// Antilinear structure: an even-kernel representation plus antilinear actions
// of the odd coset, v -> J(z) conj(v). Only J(w0) is stored; the rest of the
// family is derived through J(g w0) = M(g) J(w0).
struct ARep {
  ContextPtr ctx;
  Rep even;
  CMatrix J0;

  CMatrix J(int w) const;  // w odd, hat index
  int dim() const { return even.dim; }
};

// Linear (trivial involution) or hermitian (conjugation) structure: an
// even-kernel representation plus form matrices for odd elements,
//   B_w(u,v) = v^T B(w) u          (trivial)
//   B_w(u,v) = v^T B(w) conj(u)    (conjugation; conjugate-linear first slot)
// Only B(w0) is stored; B(w0 g) = B(w0) M(g) derives the rest.
struct GradedFormRep {
  ContextPtr ctx;
  Theory theory = Theory::L;  // L or H
  Rep even;
  CMatrix B0;

  Involution involution() const { return involution_of(theory); }
  CMatrix B(int w) const;  // w odd, hat index
  int dim() const { return even.dim; }
};

// Evaluates B_w(u, v) in the slot convention above.
Complex form_value(const GradedFormRep& s, int w, const CVector& u,
                   const CVector& v);

// Residuals of the coherence conditions, reported for both equivalent
// formulations: the four parity-corner identities and the
// invariant/hermitian/cross-consistency form.
struct GradedResidual {
  double even = 0.0;    // even-even corner (representation property)
  double corner = 0.0;  // even-odd, odd-even, odd-odd corners
  double lemma = 0.0;   // w-invariance, w-hermitian, cross-consistency
  double max() const { return std::max({even, corner, lemma}); }
};

GradedResidual validate_graded_detail(const GradedFormRep& s, const Tol& tol = {});
GradedResidual validate_graded_detail(const ARep& a, const Tol& tol = {});
double validate_graded(const GradedFormRep& s, const Tol& tol = {});
double validate_graded(const ARep& a, const Tol& tol = {});

// Orthonormal basis (as matrices) of the space of w-invariant forms on W:
//   B(g u, w g w^{-1} v) = B(u, v) for all even g.
// For simple W the dimension is 1 exactly when the character condition holds
// (conj(chi) = w.chi for the trivial involution, chi = w.chi for conjugation).
std::vector<CMatrix> invariant_form_space(const Rep& W, const GradedContext& ctx,
                                          int w, Involution invol,
                                          const Tol& tol = {});

// The scalar in B(u, w^2 v) = lambda * sigma(B(v, u)) on a one-dimensional
// invariant form space; +-1 for the trivial involution, unit modulus for
// conjugation.
Complex lambda_of(const Rep& W, const GradedContext& ctx, int w,
                  const CMatrix& B, Involution invol, const Tol& tol = {});

enum class LType { R, C, H };
enum class HType { Type1, Type2 };

const char* to_string(LType t);
const char* to_string(HType t);

struct TypeLabel {
  Theory theory = Theory::L;
  LType l = LType::R;    // valid when theory == L
  HType h = HType::Type1;  // valid when theory == H
  std::vector<int> carrier_simples;  // even-irrep ids of the carrier blocks
  int partner_simple = -1;  // the paired simple (type C / Type2), else -1
  int sign = 0;             // +-1 for hermitian Type1 entries, else 0
};

// Classifies a simple even-kernel module in the linear or hermitian theory.
// `simples` is the full list of even irreducibles (for partner lookup) and
// `index` the position of W in it.
TypeLabel classify_simple(const Rep& W, const GradedContext& ctx, Theory theory,
                          const std::vector<Rep>& simples, int index,
                          const Tol& tol = {});

// Graded Frobenius-Schur indicator (1/|G|) sum over odd z of chi(z^2),
// snapped to {-1, 0, +1}; the independent oracle for the L classification.
double fs_indicator_graded(const Character& chi, const GradedContext& ctx);

// Builds the irreducible antilinear structure attached to a simple module of
// the given L-type: carrier W (type R), W + W (type H, off-diagonal J), or
// W + twisted-conjugate partner (type C, swap J).
ARep build_A_irrep(const Rep& W, LType type, ContextPtr ctx,
                   std::uint64_t seed, const Tol& tol = {});

// The structure constructors from an invariant inner product:
//   linear:    B_w(u,v) = <u, w^{-1} v> + <v, w u>, w acting antilinearly,
//   hermitian: B_w(u,v) = <w^{-1} v, u> + <v, w u>, w acting linearly,
// with <u,v> = v^* H u and H invariant under the even kernel.
GradedFormRep structure_from_inner(const ARep& a, const InvariantInner& inner,
                                   const Tol& tol = {});
GradedFormRep structure_from_inner(const Rep& hat_rep, ContextPtr ctx,
                                   const InvariantInner& inner,
                                   const Tol& tol = {});

struct CatalogEntry {
  GradedFormRep s;
  TypeLabel label;
  // Ambient odd action at w0: J(w0) for the linear theory (antilinear side),
  // M(w0) of the source hat-module for the hermitian theory.
  CMatrix amb0;
  std::vector<int> block_dims;  // carrier block sizes, in basis order
  int hat_irrep = -1;           // hermitian theory: source hat-irrep id
  int partner_entry = -1;       // catalog index of the sign/character partner
};

struct Catalog {
  Theory theory = Theory::L;
  ContextPtr ctx;
  std::vector<Rep> even_irreps;
  std::vector<Rep> hat_irreps;           // hermitian theory only
  std::vector<TypeLabel> simple_labels;  // per even irreducible
  std::vector<CatalogEntry> entries;
};

// Complete list of pairwise non-isomorphic irreducible L- (resp. H-)
// structures, deterministically ordered and normalized (unit spectral norm;
// hermitian Type1 signs fixed).
Catalog irreducible_catalog(ContextPtr ctx, Theory theory, std::uint64_t seed,
                            const Tol& tol = {});

struct MorphismResult {
  bool ok = false;
  double residual = 0.0;
  bool bijective = false;
};

// Tests whether f intertwines the even actions and preserves the odd forms
// (resp. the antilinear actions).
MorphismResult morphism_test(const CMatrix& f, const GradedFormRep& V,
                             const GradedFormRep& W, const Tol& tol = {});
MorphismResult morphism_test(const CMatrix& f, const ARep& V, const ARep& W,
                             const Tol& tol = {});

// Isomorphism of structures: returns the isometry when one exists. In the
// linear theory isomorphism is decided by the underlying module; in the
// hermitian theory Type1 components additionally carry a sign obstruction.
std::optional<CMatrix> iso_test(const GradedFormRep& V, const GradedFormRep& W,
                                const Tol& tol = {});

namespace detail {
// Isomorphism between irreducible structures (V irreducible, same theory).
std::optional<CMatrix> iso_irreducible(const GradedFormRep& V,
                                       const GradedFormRep& W,
                                       const std::vector<int>& V_block_dims,
                                       const Tol& tol);
// Least-squares proportionality: returns c minimizing ||X - c Y||.
Complex proportionality(const CMatrix& X, const CMatrix& Y, double* residual);
// Direct sum of structures (block diagonal everything).
GradedFormRep direct_sum(const std::vector<const GradedFormRep*>& parts);
ARep direct_sum_arep(const std::vector<const ARep*>& parts);
// Transport of structure along an invertible map S: the result is the same
// structure written in the basis pulled back by S.
GradedFormRep conjugate_structure(const GradedFormRep& s, const CMatrix& S,
                                  const Tol& tol = {});
}  // namespace detail

}  // namespace realrep

#endif
