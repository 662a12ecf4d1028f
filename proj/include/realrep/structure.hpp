#ifndef REALREP_STRUCTURE_HPP
#define REALREP_STRUCTURE_HPP

#include <map>
#include <string>
#include <vector>

#include "realrep/graded.hpp"

namespace realrep {

// Right orthogonal complement { v : B_w(u, v) = 0 for all u in W } of the
// subspace spanned by the columns of W_cols, returned as an orthonormal
// basis. Throws when the restriction of the form to W is degenerate.
CMatrix orth_complement(const GradedFormRep& V, const CMatrix& W_cols, int w,
                        const Tol& tol = {});

struct KrsPart {
  int catalog_id = -1;
  CMatrix embedding;  // dim(V) x dim(catalog entry), passes morphism_test
};

struct KrsResult {
  std::vector<KrsPart> parts;  // sorted by catalog id
  std::map<int, int> multiset() const;
};

// Krull-Remak-Schmidt decomposition into catalog irreducibles: even-isotypic
// splitting first, then iterated extraction of nondegenerate simple copies
// (or isotropic pairs) with orthogonal-complement reduction in multiplicity
// coordinates.
KrsResult krs_decompose(const GradedFormRep& V, const Catalog& catalog,
                        std::uint64_t seed, const Tol& tol = {});

// A structure together with its ambient odd action at w0 (antilinear J for
// the linear theory, hat-module matrix for the hermitian theory) and the
// isotypic bookkeeping needed for automorphism and hom-space computations.
struct IsotypicSpec {
  int entry = 0;  // catalog index; for hermitian Type1 this names the "+" part
  int n = 1;      // copies of the entry
  int m = 0;      // hermitian Type1 only: copies of the sign partner
};

struct StructureWithAmbient {
  GradedFormRep s;
  CMatrix amb0;
  const CatalogEntry* entry = nullptr;
  int n = 1;
  int m = 0;
};

StructureWithAmbient build_isotypic(const Catalog& catalog,
                                    const IsotypicSpec& spec);

struct AutDims {
  Theory theory = Theory::L;
  int d_cat = 0;   // Lie dimension of the categorical automorphism group
  int d_star = 0;  // ... of the intermediate (inner-form preserving) group
  int d_amb = 0;   // ... of the ambient (antilinear / hat-module) group
};

// Real Lie-algebra dimensions of the three automorphism groups, computed as
// real-linear nullspaces over the even commutant.
AutDims aut_lie_dims(const StructureWithAmbient& U, const Tol& tol = {});
// General variant: reconstructs an isomorphic catalog direct sum via KRS
// first (the dimensions are isomorphism invariants).
AutDims aut_lie_dims(const GradedFormRep& U, const Catalog& catalog,
                     std::uint64_t seed, const Tol& tol = {});

struct AutGroupLabel {
  std::string cat;
  std::string star;
  std::string amb;
  AutDims dims;  // the closed-form dimensions of the labeled groups
};

// Table row for an isotypic object of the given type and multiplicities;
// cross-checks computed dimensions against the closed forms and throws
// (numeric) on mismatch.
AutGroupLabel identify_aut_group(const StructureWithAmbient& U,
                                 const Tol& tol = {});
// Closed-form label lookup without computation (for reports and tests).
AutGroupLabel closed_form_label(Theory theory, LType ltype, HType htype, int n,
                                int m);

struct WittResult {
  CMatrix T;        // categorical automorphism of the target
  double residual;  // || T std - f ||
};

// Extends an isometric embedding f : from -> to (full matrix, where both are
// standard isotypic builds over the same catalog entry family) to a
// categorical automorphism T of the target with T std = f.
WittResult witt_extend(const CMatrix& f, const Catalog& catalog,
                       const IsotypicSpec& from, const IsotypicSpec& to,
                       std::uint64_t seed, const Tol& tol = {});

// Seeded random isometric embedding between the standard isotypic builds
// (passes morphism_test); used by the homogeneity checks.
CMatrix random_isometric_embedding(const Catalog& catalog,
                                   const IsotypicSpec& from,
                                   const IsotypicSpec& to, std::uint64_t seed,
                                   const Tol& tol = {});

// The standard embedding matrix from -> to (copy t of `from` to copy t).
CMatrix standard_embedding(const Catalog& catalog, const IsotypicSpec& from,
                           const IsotypicSpec& to);

struct CensusReport {
  int simples_even = 0;
  int a_carriers = 0;  // orbit count of W -> w . conj(W) on even simples
  int l_entries = 0;
  int hat_irreps = 0;
  int h_entries = 0;
  int p_pairs = 0;       // hat irreps with V not iso V . pi, counted in pairs
  int q_self_paired = 0; // hat irreps with V iso V . pi
  std::vector<std::string> l_types;
  std::vector<std::string> h_types;
  struct Table2Row {
    int hat_irrep = -1;
    bool restriction_simple = false;
    bool pi_self = false;      // V iso V tensor pi
    bool w_self = false;       // W iso w . W for a simple summand W
    bool induction_matches = false;
    bool consistent = false;
  };
  std::vector<Table2Row> table2;
  bool counts_consistent() const {
    return a_carriers == l_entries && hat_irreps == h_entries &&
           2 * p_pairs + q_self_paired == hat_irreps;
  }
};

CensusReport bijection_census(ContextPtr ctx, std::uint64_t seed,
                              const Tol& tol = {});

}  // namespace realrep

#endif
