#include "realrep/structure.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace realrep {

namespace {

CMatrix sigma_of(const CMatrix& M, Involution invol) {
  return invol == Involution::trivial ? M : CMatrix(M.conjugate());
}

CVector sigma_of(const CVector& v, Involution invol) {
  return invol == Involution::trivial ? v : CVector(v.conjugate());
}

Rep restrict_to(const Rep& r, const CMatrix& U) {
  Rep s;
  s.group = r.group;
  s.dim = static_cast<int>(U.cols());
  s.mats.reserve(r.mats.size());
  for (const auto& m : r.mats) s.mats.push_back(U.adjoint() * m * U);
  return s;
}

CMatrix combo(const std::vector<CMatrix>& homs, const CVector& c) {
  CMatrix f = CMatrix::Zero(homs[0].rows(), homs[0].cols());
  for (int k = 0; k < c.size(); ++k) f += c(k) * homs[k];
  return f;
}

}  // namespace

CMatrix orth_complement(const GradedFormRep& V, const CMatrix& W_cols, int w,
                        const Tol& tol) {
  const CMatrix Bw = V.B(w);
  const Involution invol = V.involution();
  // Degeneracy of the restriction B|_W signals that W is not a
  // subrepresentation.
  const CMatrix restricted =
      W_cols.transpose() * Bw * sigma_of(CMatrix(W_cols), invol);
  if (W_cols.cols() > 0 && !is_invertible(restricted, tol)) {
    fail_validation("orth_complement: form restricted to W is degenerate");
  }
  // Right complement: all v with B_w(u, v) = v^T B(w) sigma(u) = 0, u in W.
  const CMatrix N = (Bw * sigma_of(CMatrix(W_cols), invol)).transpose();
  return nullspace(N, tol);
}

std::map<int, int> KrsResult::multiset() const {
  std::map<int, int> out;
  for (const auto& p : parts) ++out[p.catalog_id];
  return out;
}

namespace {

// Pairing-space between two even simples: solutions of
// M_j(w g w^{-1})^T X sigma(M_i(g)) = X.
std::vector<CMatrix> invariant_pairing_space(const Rep& Wi, const Rep& Wj,
                                             const GradedContext& ctx, int w,
                                             Involution invol, const Tol& tol) {
  const GroupTable& t = ctx.gg.table;
  const auto gens = ctx.even->generators();
  const int rows = Wj.dim;
  const int cols = Wi.dim;
  const int unknowns = rows * cols;
  const int nsys = std::max<int>(1, static_cast<int>(gens.size()));
  CMatrix A = CMatrix::Zero(static_cast<Eigen::Index>(nsys) * unknowns, unknowns);
  int row0 = 0;
  for (int ge : gens) {
    const int conj = ctx.even_index(t.conjugate(w, ctx.even_to_hat[ge]));
    const CMatrix X = Wj.mats[conj].transpose();
    const CMatrix Y = sigma_of(Wi.mats[ge], invol);
    for (int j = 0; j < cols; ++j)
      for (int l = 0; l < cols; ++l)
        for (int i = 0; i < rows; ++i)
          for (int k = 0; k < rows; ++k)
            A(row0 + j * rows + i, l * rows + k) += X(i, k) * Y(l, j);
    for (int e = 0; e < unknowns; ++e) A(row0 + e, e) -= 1.0;
    row0 += unknowns;
  }
  const CMatrix null = nullspace(A, tol);
  std::vector<CMatrix> out;
  for (int c = 0; c < null.cols(); ++c) {
    CMatrix B(rows, cols);
    for (int j = 0; j < cols; ++j) B.col(j) = null.col(c).segment(j * rows, rows);
    out.push_back(std::move(B));
  }
  return out;
}

struct ExtractedBlock {
  std::vector<CVector> mult_vectors;  // per carrier block, in original coords
  std::vector<int> classes;           // even-irrep id per block
};

// Multiplicity-space value of the form between combo c (class i side) and
// combo x (class j side). sigma applies to the first slot for the hermitian
// theory.
Complex mult_pair(const CMatrix& Q, const CVector& c, const CVector& x,
                  Involution invol) {
  const CVector cs = sigma_of(c, invol);
  return (cs.transpose() * Q * x)(0, 0);
}

}  // namespace

KrsResult krs_decompose(const GradedFormRep& V, const Catalog& catalog,
                        std::uint64_t seed, const Tol& tol) {
  if (V.theory != catalog.theory &&
      !(V.theory == Theory::L && catalog.theory == Theory::A)) {
    fail_validation("krs_decompose: theory mismatch");
  }
  const double vres = validate_graded(V, tol);
  if (vres > std::max(tol.residual * 1e3, 1e-8)) {
    fail_validation("krs_decompose: input structure fails coherence");
  }
  const GradedContext& ctx = *V.ctx;
  const Involution invol = V.involution();
  const int w0 = ctx.w0;
  const int nsimple = static_cast<int>(catalog.even_irreps.size());

  const Character chiV = character_of(V.even);
  std::vector<Character> simple_chars;
  simple_chars.reserve(nsimple);
  for (const auto& r : catalog.even_irreps) simple_chars.push_back(character_of(r));

  std::vector<int> mult(nsimple, 0);
  long covered = 0;
  for (int i = 0; i < nsimple; ++i) {
    const Complex m = char_inner(chiV, simple_chars[i]);
    if (std::abs(m.imag()) > kIntegerGap) fail_numeric("krs: non-real multiplicity");
    mult[i] = static_cast<int>(round_integer(m.real(), "krs multiplicity"));
    covered += static_cast<long>(mult[i]) * catalog.even_irreps[i].dim;
  }
  if (covered != V.dim()) fail_numeric("krs: catalog incomplete for this module");

  // Twisted-partner map on the even simples present in V.
  auto partner_of = [&](int i) {
    const GroupTable& t = ctx.gg.table;
    Character chi = simple_chars[i];
    Character twisted;
    twisted.values.resize(chi.values.size());
    for (int g = 0; g < ctx.even->order; ++g) {
      const int conj = ctx.even_index(t.conjugate(w0, ctx.even_to_hat[g]));
      twisted.values[g] = chi.values[conj];
    }
    if (invol == Involution::trivial) {
      for (auto& v : twisted.values) v = std::conj(v);
    }
    for (int j = 0; j < nsimple; ++j) {
      if (characters_equal(simple_chars[j], twisted)) return j;
    }
    fail_numeric("krs: twisted partner class not found");
  };

  std::vector<std::vector<CMatrix>> homs(nsimple);
  for (int i = 0; i < nsimple; ++i) {
    if (mult[i] == 0) continue;
    homs[i] = intertwiner_basis(catalog.even_irreps[i], V.even, tol);
    if (static_cast<int>(homs[i].size()) != mult[i]) {
      fail_numeric("krs: intertwiner count disagrees with multiplicity");
    }
  }

  const CMatrix& BV = V.B0;
  std::vector<ExtractedBlock> blocks;
  std::vector<char> done(nsimple, 0);

  for (int i = 0; i < nsimple; ++i) {
    if (mult[i] == 0 || done[i]) continue;
    const int j = partner_of(i);
    const int m = mult[i];
    if (j == i) {
      done[i] = 1;
      // Reference invariant form on the simple carrier.
      auto forms = invariant_form_space(catalog.even_irreps[i], ctx, w0, invol, tol);
      if (forms.size() != 1) fail_numeric("krs: invariant form space not 1-dim");
      CMatrix B0ref = forms[0];
      Complex lambda0 = lambda_of(catalog.even_irreps[i], ctx, w0, B0ref, invol, tol);
      if (invol == Involution::conjugation) {
        B0ref *= principal_sqrt(std::conj(lambda0));  // make it w-hermitian
        lambda0 = 1.0;
      }
      // Multiplicity Gram matrix.
      CMatrix Q(m, m);
      for (int k = 0; k < m; ++k) {
        for (int l = 0; l < m; ++l) {
          double res = 0.0;
          const CMatrix P =
              homs[i][l].transpose() * BV * sigma_of(homs[i][k], invol);
          Q(k, l) = detail::proportionality(P, B0ref, &res);
          if (res > 1e-6) fail_numeric("krs: block pairing not proportional");
        }
      }
      const double qscale = Q.cwiseAbs().maxCoeff();
      CMatrix C = CMatrix::Identity(m, m);  // current combos in original coords
      CMatrix Qc = Q;
      int remaining = m;
      const bool alternating =
          invol == Involution::trivial && lambda0.real() < 0;
      while (remaining > 0) {
        if (!alternating) {
          // Find a copy with nondegenerate self-pairing.
          CVector best;
          double best_val = -1.0;
          auto consider = [&](const CVector& c) {
            const double v = std::abs(mult_pair(Qc, c, c, invol));
            if (v > best_val) {
              best_val = v;
              best = c;
            }
          };
          for (int a = 0; a < remaining; ++a) {
            CVector e = CVector::Zero(remaining);
            e(a) = 1.0;
            consider(e);
            for (int b = a + 1; b < remaining; ++b) {
              for (Complex ph : {Complex(1, 0), Complex(-1, 0), Complex(0, 1)}) {
                CVector c = CVector::Zero(remaining);
                c(a) = 1.0;
                c(b) = ph;
                consider(c);
              }
            }
          }
          if (best_val < 1e-8 * (1.0 + qscale)) {
            fail_numeric("krs: no nondegenerate copy found in isotypic block");
          }
          best.normalize();
          ExtractedBlock blk;
          blk.mult_vectors = {CVector(C * best)};
          blk.classes = {i};
          blocks.push_back(std::move(blk));
          if (remaining == 1) break;
          const CMatrix row =
              (sigma_of(CVector(best), invol).transpose() * Qc);
          const CMatrix N = nullspace(row, tol);
          C = C * N;
          Qc = sigma_of(N, invol).transpose() * Qc * N;
          remaining -= 1;
        } else {
          // Alternating multiplicity form: extract isotropic pairs.
          int pa = -1, pb = -1;
          double best_val = -1.0;
          for (int a = 0; a < remaining; ++a) {
            for (int b = 0; b < remaining; ++b) {
              if (a == b) continue;
              if (std::abs(Qc(a, b)) > best_val) {
                best_val = std::abs(Qc(a, b));
                pa = a;
                pb = b;
              }
            }
          }
          if (best_val < 1e-8 * (1.0 + qscale)) {
            fail_numeric("krs: alternating block has no pairing pivot");
          }
          CVector ea = CVector::Zero(remaining), eb = CVector::Zero(remaining);
          ea(pa) = 1.0;
          eb(pb) = 1.0;
          ExtractedBlock blk;
          blk.mult_vectors = {CVector(C * ea), CVector(C * eb)};
          blk.classes = {i, i};
          blocks.push_back(std::move(blk));
          if (remaining == 2) break;
          CMatrix rows(2, remaining);
          rows.row(0) = ea.transpose() * Qc;
          rows.row(1) = eb.transpose() * Qc;
          const CMatrix N = nullspace(rows, tol);
          C = C * N;
          Qc = N.transpose() * Qc * N;
          remaining -= 2;
        }
      }
    } else {
      // Paired classes: extract (copy in class i, copy in class j) blocks.
      done[i] = 1;
      done[j] = 1;
      if (mult[j] != m) fail_numeric("krs: paired isotypic multiplicities differ");
      auto pair_forms = invariant_pairing_space(
          catalog.even_irreps[i], catalog.even_irreps[j], ctx, w0, invol, tol);
      if (pair_forms.size() != 1) fail_numeric("krs: pairing space not 1-dim");
      const CMatrix X0 = pair_forms[0];
      CMatrix P(m, m);
      for (int k = 0; k < m; ++k) {
        for (int l = 0; l < m; ++l) {
          double res = 0.0;
          const CMatrix Pm =
              homs[j][l].transpose() * BV * sigma_of(homs[i][k], invol);
          P(k, l) = detail::proportionality(Pm, X0, &res);
          if (res > 1e-6) fail_numeric("krs: cross pairing not proportional");
        }
      }
      const double pscale = P.cwiseAbs().maxCoeff();
      CMatrix Ci = CMatrix::Identity(m, m);
      CMatrix Cj = CMatrix::Identity(m, m);
      CMatrix Pc = P;
      int remaining = m;
      while (remaining > 0) {
        int pa = 0, pb = 0;
        double best_val = -1.0;
        for (int a = 0; a < remaining; ++a)
          for (int b = 0; b < remaining; ++b)
            if (std::abs(Pc(a, b)) > best_val) {
              best_val = std::abs(Pc(a, b));
              pa = a;
              pb = b;
            }
        if (best_val < 1e-8 * (1.0 + pscale)) {
          fail_numeric("krs: cross pairing has no pivot");
        }
        CVector ea = CVector::Zero(remaining), eb = CVector::Zero(remaining);
        ea(pa) = 1.0;
        eb(pb) = 1.0;
        ExtractedBlock blk;
        blk.mult_vectors = {CVector(Ci * ea), CVector(Cj * eb)};
        blk.classes = {i, j};
        blocks.push_back(std::move(blk));
        if (remaining == 1) break;
        // Remaining class-i copies must pair to zero with the extracted
        // class-j copy (sigma(c)^T P e_b = 0) and vice versa.
        const CMatrix Ni = nullspace(
            sigma_of(CMatrix(Pc * eb), invol).transpose(), tol);
        const CMatrix Nj =
            nullspace(CMatrix(ea.transpose() * Pc), tol);
        Ci = Ci * Ni;
        Cj = Cj * Nj;
        Pc = sigma_of(Ni, invol).transpose() * Pc * Nj;
        remaining -= 1;
      }
    }
  }

  // Match the extracted blocks against catalog entries.
  std::vector<Character> entry_chars;
  for (const auto& e : catalog.entries) entry_chars.push_back(character_of(e.s.even));
  KrsResult out;
  for (const auto& blk : blocks) {
    CMatrix E(V.dim(), 0);
    for (size_t b = 0; b < blk.classes.size(); ++b) {
      const CMatrix col = combo(homs[blk.classes[b]], blk.mult_vectors[b]);
      CMatrix wider(V.dim(), E.cols() + col.cols());
      wider << E, col;
      E = std::move(wider);
    }
    const CMatrix Eo = orthonormalize(E, nullptr, tol);
    GradedFormRep sub;
    sub.ctx = V.ctx;
    sub.theory = V.theory;
    sub.even = restrict_to(V.even, Eo);
    sub.B0 = Eo.transpose() * BV * sigma_of(Eo, invol);
    const Character sub_chi = character_of(sub.even);

    int matched = -1;
    CMatrix embedding;
    for (size_t e = 0; e < catalog.entries.size(); ++e) {
      if (!characters_equal(entry_chars[e], sub_chi)) continue;
      auto T = detail::iso_irreducible(catalog.entries[e].s, sub,
                                       catalog.entries[e].block_dims, tol);
      if (!T) continue;
      matched = static_cast<int>(e);
      embedding = Eo * (*T);
      break;
    }
    if (matched < 0) fail_numeric("krs: extracted block matches no catalog entry");
    const auto check = morphism_test(embedding, catalog.entries[matched].s, V, tol);
    if (!check.ok) fail_numeric("krs: embedding fails the morphism test");
    out.parts.push_back(KrsPart{matched, std::move(embedding)});
  }
  (void)seed;
  std::stable_sort(out.parts.begin(), out.parts.end(),
                   [](const KrsPart& a, const KrsPart& b) {
                     return a.catalog_id < b.catalog_id;
                   });
  return out;
}

std::optional<CMatrix> iso_test(const GradedFormRep& V, const GradedFormRep& W,
                                const Tol& tol) {
  if (V.theory != W.theory) fail_validation("iso_test: theory mismatch");
  if (V.dim() != W.dim()) return std::nullopt;
  if (!characters_equal(character_of(V.even), character_of(W.even))) {
    return std::nullopt;
  }
  // Fast path: the identity already works (same carrier and form).
  if (V.even.mats.size() == W.even.mats.size()) {
    const CMatrix I = CMatrix::Identity(V.dim(), V.dim());
    const auto direct = morphism_test(I, V, W, tol);
    if (direct.ok && direct.bijective) return I;
  }
  const Catalog catalog =
      irreducible_catalog(V.ctx, V.theory, 0xA11CEULL, tol);
  const KrsResult kv = krs_decompose(V, catalog, 0xA11CEULL, tol);
  const KrsResult kw = krs_decompose(W, catalog, 0xA11CEULL, tol);
  if (kv.multiset() != kw.multiset()) return std::nullopt;

  // Assemble the isometry blockwise: both part lists are sorted by id, and
  // the embedded blocks are mutually orthogonal under the forms, so the
  // pulled-back forms are the same catalog block diagonal on both sides.
  CMatrix EV(V.dim(), V.dim());
  CMatrix EW(V.dim(), V.dim());
  Eigen::Index off = 0;
  for (size_t k = 0; k < kv.parts.size(); ++k) {
    const Eigen::Index d = kv.parts[k].embedding.cols();
    EV.middleCols(off, d) = kv.parts[k].embedding;
    EW.middleCols(off, d) = kw.parts[k].embedding;
    off += d;
  }
  CMatrix f = EW * EV.inverse();
  const auto check = morphism_test(f, V, W, tol);
  if (!check.ok || !check.bijective) {
    fail_numeric("iso_test: assembled map fails the morphism test");
  }
  return f;
}

// ---------------------------------------------------------------------------
// Isotypic builds, automorphism Lie dimensions, Witt extension
// ---------------------------------------------------------------------------

StructureWithAmbient build_isotypic(const Catalog& catalog,
                                    const IsotypicSpec& spec) {
  const CatalogEntry& entry = catalog.entries.at(spec.entry);
  if (spec.n < 0 || spec.m < 0 || spec.n + spec.m == 0) {
    fail_validation("build_isotypic: need at least one copy");
  }
  const CatalogEntry* partner = nullptr;
  if (spec.m > 0) {
    if (catalog.theory != Theory::H || entry.label.h != HType::Type1) {
      fail_validation("build_isotypic: sign partner only exists for hermitian Type1");
    }
    partner = &catalog.entries.at(entry.partner_entry);
  }
  std::vector<const GradedFormRep*> parts;
  for (int t = 0; t < spec.n; ++t) parts.push_back(&entry.s);
  for (int t = 0; t < spec.m; ++t) parts.push_back(&partner->s);
  StructureWithAmbient out;
  out.s = detail::direct_sum(parts);
  const int d = entry.s.dim();
  const int total = spec.n + spec.m;
  out.amb0 = CMatrix::Zero(static_cast<Eigen::Index>(total) * d,
                           static_cast<Eigen::Index>(total) * d);
  for (int t = 0; t < total; ++t) {
    out.amb0.block(t * d, t * d, d, d) = t < spec.n ? entry.amb0 : partner->amb0;
  }
  out.entry = &entry;
  out.n = spec.n;
  out.m = spec.m;
  return out;
}

namespace {

// Real dimension of { X in span(basis) : all constraints vanish }, where each
// constraint is complex-linear in (X, conj X) and therefore real-linear in X.
int real_nullity(const std::vector<CMatrix>& basis,
                 const std::vector<std::function<CMatrix(const CMatrix&)>>& constraints,
                 const Tol& tol) {
  const int k = static_cast<int>(basis.size());
  if (k == 0) return 0;
  std::vector<CMatrix> real_basis;
  real_basis.reserve(2 * k);
  for (const auto& E : basis) {
    real_basis.push_back(E);
    real_basis.push_back(Complex(0, 1) * E);
  }
  Eigen::Index rows = 0;
  std::vector<std::vector<CMatrix>> values(real_basis.size());
  for (size_t j = 0; j < real_basis.size(); ++j) {
    for (const auto& fn : constraints) {
      values[j].push_back(fn(real_basis[j]));
    }
  }
  for (const auto& v : values[0]) rows += 2 * v.size();
  Eigen::MatrixXd A(rows, static_cast<Eigen::Index>(real_basis.size()));
  for (size_t j = 0; j < real_basis.size(); ++j) {
    Eigen::Index r = 0;
    for (const auto& v : values[j]) {
      for (int c = 0; c < v.cols(); ++c) {
        for (int i = 0; i < v.rows(); ++i) {
          A(r++, static_cast<Eigen::Index>(j)) = v(i, c).real();
          A(r++, static_cast<Eigen::Index>(j)) = v(i, c).imag();
        }
      }
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  const double cut = std::max(tol.rank_cut * smax, kRankFloor);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > cut) ++rank;
  }
  return static_cast<int>(real_basis.size()) - rank;
}

CMatrix odd_matrix_from(const StructureWithAmbient& U, int z, bool antilinear) {
  // hat action (or antilinear action) at odd z derived from the w0 data.
  const GradedContext& ctx = *U.s.ctx;
  const GroupTable& t = ctx.gg.table;
  const int g = ctx.even_index(t.at(z, t.inverse(ctx.w0)));
  (void)antilinear;
  return U.s.even.mats[g] * U.amb0;
}

CMatrix canonical_inner(const StructureWithAmbient& U, const Tol& tol) {
  const GradedContext& ctx = *U.s.ctx;
  const int d = U.s.dim();
  CMatrix H = CMatrix::Zero(d, d);
  for (const auto& m : U.s.even.mats) H += m.adjoint() * m;
  if (U.s.theory == Theory::L) {
    for (int z : ctx.odd) {
      const CMatrix Jz = odd_matrix_from(U, z, true);
      H += (Jz.adjoint() * Jz).conjugate();
    }
  } else {
    for (int z : ctx.odd) {
      const CMatrix Mz = odd_matrix_from(U, z, false);
      H += Mz.adjoint() * Mz;
    }
  }
  H /= static_cast<double>(ctx.gg.table.order);
  H = (H + H.adjoint()) / 2.0;
  auto [vals, vecs] = hermitian_eig(H, tol);
  if (vals(0) <= 0) fail_numeric("canonical_inner: form not positive definite");
  return H;
}

}  // namespace

AutDims aut_lie_dims(const StructureWithAmbient& U, const Tol& tol) {
  const auto basis = intertwiner_basis(U.s.even, U.s.even, tol);
  const CMatrix& B = U.s.B0;
  const CMatrix& A0 = U.amb0;
  const CMatrix Hc = canonical_inner(U, tol);
  AutDims out;
  out.theory = U.s.theory;
  if (U.s.theory == Theory::L || U.s.theory == Theory::A) {
    out.d_cat = real_nullity(
        basis,
        {[&](const CMatrix& X) { return CMatrix(X.transpose() * B + B * X); }},
        tol);
    std::vector<std::function<CMatrix(const CMatrix&)>> amb = {
        [&](const CMatrix& X) { return CMatrix(X * A0 - A0 * X.conjugate()); }};
    out.d_amb = real_nullity(basis, amb, tol);
    amb.push_back(
        [&](const CMatrix& X) { return CMatrix(X.adjoint() * Hc + Hc * X); });
    out.d_star = real_nullity(basis, amb, tol);
  } else {
    out.d_cat = real_nullity(
        basis,
        {[&](const CMatrix& X) {
          return CMatrix(X.transpose() * B + B * X.conjugate());
        }},
        tol);
    std::vector<std::function<CMatrix(const CMatrix&)>> amb = {
        [&](const CMatrix& X) { return CMatrix(X * A0 - A0 * X); }};
    out.d_amb = real_nullity(basis, amb, tol);
    amb.push_back(
        [&](const CMatrix& X) { return CMatrix(X.adjoint() * Hc + Hc * X); });
    out.d_star = real_nullity(basis, amb, tol);
  }
  if (out.d_star > std::min(out.d_cat, out.d_amb)) {
    fail_numeric("aut_lie_dims: intermediate dimension exceeds its bounds");
  }
  return out;
}

AutDims aut_lie_dims(const GradedFormRep& U, const Catalog& catalog,
                     std::uint64_t seed, const Tol& tol) {
  const KrsResult parts = krs_decompose(U, catalog, seed, tol);
  std::vector<const GradedFormRep*> summands;
  int dim = 0;
  for (const auto& p : parts.parts) {
    summands.push_back(&catalog.entries[p.catalog_id].s);
    dim += catalog.entries[p.catalog_id].s.dim();
  }
  StructureWithAmbient rebuilt;
  rebuilt.s = detail::direct_sum(summands);
  rebuilt.amb0 = CMatrix::Zero(dim, dim);
  int off = 0;
  for (const auto& p : parts.parts) {
    const CatalogEntry& e = catalog.entries[p.catalog_id];
    rebuilt.amb0.block(off, off, e.s.dim(), e.s.dim()) = e.amb0;
    off += e.s.dim();
  }
  return aut_lie_dims(rebuilt, tol);
}

AutGroupLabel closed_form_label(Theory theory, LType ltype, HType htype, int n,
                                int m) {
  auto fmt = [](const std::string& pat, int a, int b = -1) {
    std::string s;
    for (size_t i = 0; i < pat.size(); ++i) {
      if (pat[i] == '@') {
        s += std::to_string(a);
      } else if (pat[i] == '#') {
        s += std::to_string(b);
      } else {
        s += pat[i];
      }
    }
    return s;
  };
  AutGroupLabel out;
  if (theory == Theory::L) {
    switch (ltype) {
      case LType::R:
        out.cat = fmt("O(@,C)", n);
        out.star = fmt("O(@,R)", n);
        out.amb = fmt("GL(@,R)", n);
        out.dims = {theory, n * (n - 1), n * (n - 1) / 2, n * n};
        break;
      case LType::C:
        out.cat = fmt("GL(@,C)", n);
        out.star = fmt("U(@)", n);
        out.amb = fmt("GL(@,C)", n);
        out.dims = {theory, 2 * n * n, n * n, 2 * n * n};
        break;
      case LType::H:
        out.cat = fmt("Sp(@,C)", 2 * n);
        out.star = fmt("Sp(@)", n);
        out.amb = fmt("GL(@,H)", n);
        out.dims = {theory, 2 * n * (2 * n + 1), n * (2 * n + 1), 4 * n * n};
        break;
    }
    return out;
  }
  if (htype == HType::Type1) {
    out.cat = fmt("U(@,#)", n, m);
    out.star = fmt("U(@)xU(#)", n, m);
    out.amb = fmt("GL(@,C)xGL(#,C)", n, m);
    out.dims = {theory, (n + m) * (n + m), n * n + m * m,
                2 * (n * n + m * m)};
  } else {
    out.cat = fmt("GL(@,C)", n);
    out.star = fmt("U(@)", n);
    out.amb = fmt("GL(@,C)", n);
    out.dims = {theory, 2 * n * n, n * n, 2 * n * n};
  }
  return out;
}

AutGroupLabel identify_aut_group(const StructureWithAmbient& U, const Tol& tol) {
  if (!U.entry) fail_validation("identify_aut_group: isotypic metadata required");
  AutGroupLabel label =
      closed_form_label(U.s.theory, U.entry->label.l, U.entry->label.h, U.n, U.m);
  const AutDims dims = aut_lie_dims(U, tol);
  if (dims.d_cat != label.dims.d_cat || dims.d_star != label.dims.d_star ||
      dims.d_amb != label.dims.d_amb) {
    fail_numeric("identify_aut_group: computed dimensions disagree with the label");
  }
  label.dims = dims;
  return label;
}

// ---------------------------------------------------------------------------
// Multiplicity coordinates and Witt extension
// ---------------------------------------------------------------------------

namespace {

enum class MultKind { scalar, pair_diag, quaternion, signed_scalar };

struct MultLayout {
  MultKind kind;
  Involution invol;
  int d = 0;        // carrier dimension
  int d1 = 0, d2 = 0;  // block split (pair_diag), d1 = d2 = d/2 (quaternion)
  CMatrix Kform;    // quaternion: 2x2 multiplicity form of the entry
};

MultLayout layout_of(const Catalog& catalog, const CatalogEntry& entry) {
  MultLayout lay;
  lay.invol = involution_of(catalog.theory);
  lay.d = entry.s.dim();
  if (catalog.theory == Theory::H) {
    if (entry.label.h == HType::Type1) {
      lay.kind = MultKind::signed_scalar;
    } else {
      lay.kind = MultKind::pair_diag;
      lay.d1 = entry.block_dims[0];
      lay.d2 = entry.block_dims[1];
    }
    return lay;
  }
  switch (entry.label.l) {
    case LType::R:
      lay.kind = MultKind::scalar;
      break;
    case LType::C:
      lay.kind = MultKind::pair_diag;
      lay.d1 = entry.block_dims[0];
      lay.d2 = entry.block_dims[1];
      break;
    case LType::H: {
      lay.kind = MultKind::quaternion;
      lay.d1 = lay.d2 = entry.block_dims[0];
      const CMatrix D = entry.s.B0.block(lay.d1, 0, lay.d2, lay.d1);
      lay.Kform.resize(2, 2);
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
          double res = 0.0;
          lay.Kform(r, c) = detail::proportionality(
              entry.s.B0.block(r * lay.d1, c * lay.d1, lay.d1, lay.d1), D, &res);
        }
      }
      break;
    }
  }
  return lay;
}

Complex block_scalar(const CMatrix& block) {
  return block.trace() / static_cast<double>(block.rows());
}

// mult -> full for the scalar kinds.
CMatrix inject_scalar(const CMatrix& F, int d) {
  CMatrix f = CMatrix::Zero(F.rows() * d, F.cols() * d);
  for (int i = 0; i < F.rows(); ++i)
    for (int j = 0; j < F.cols(); ++j)
      f.block(i * d, j * d, d, d) = F(i, j) * CMatrix::Identity(d, d);
  return f;
}

CMatrix extract_scalar(const CMatrix& f, int d, int k, int n) {
  CMatrix F(k, n);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < n; ++j) F(i, j) = block_scalar(f.block(i * d, j * d, d, d));
  return F;
}

CMatrix inject_pair(const CMatrix& A1, const CMatrix& A2, int d1, int d2) {
  const int d = d1 + d2;
  CMatrix f = CMatrix::Zero(A1.rows() * d, A1.cols() * d);
  for (int i = 0; i < A1.rows(); ++i)
    for (int j = 0; j < A1.cols(); ++j) {
      f.block(i * d, j * d, d1, d1) = A1(i, j) * CMatrix::Identity(d1, d1);
      f.block(i * d + d1, j * d + d1, d2, d2) =
          A2(i, j) * CMatrix::Identity(d2, d2);
    }
  return f;
}

void extract_pair(const CMatrix& f, int d1, int d2, int k, int n, CMatrix& A1,
                  CMatrix& A2) {
  const int d = d1 + d2;
  A1.resize(k, n);
  A2.resize(k, n);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < n; ++j) {
      A1(i, j) = block_scalar(f.block(i * d, j * d, d1, d1));
      A2(i, j) = block_scalar(f.block(i * d + d1, j * d + d1, d2, d2));
    }
}

CMatrix inject_quaternion(const CMatrix& F, int d0) {
  const int k = static_cast<int>(F.rows()) / 2;
  const int n = static_cast<int>(F.cols()) / 2;
  CMatrix f = CMatrix::Zero(2 * k * d0, 2 * n * d0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < n; ++j)
      for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s)
          f.block((2 * i + r) * d0, (2 * j + s) * d0, d0, d0) =
              F(2 * i + r, 2 * j + s) * CMatrix::Identity(d0, d0);
  return f;
}

CMatrix extract_quaternion(const CMatrix& f, int d0, int k, int n) {
  CMatrix F(2 * k, 2 * n);
  for (int i = 0; i < 2 * k; ++i)
    for (int j = 0; j < 2 * n; ++j)
      F(i, j) = block_scalar(f.block(i * d0, j * d0, d0, d0));
  return F;
}

// --- form-aware completions on multiplicity coordinates -------------------

// Completes columns of F (pairwise x^T y orthonormal) to a full complex
// orthogonal matrix. Candidates are drawn in batches and the best-conditioned
// one is kept; a forced complement direction may be close to isotropic, so a
// fixed rejection floor would starve.
CMatrix complete_bilinear(const CMatrix& F, Rng& rng) {
  const int k = static_cast<int>(F.rows());
  CMatrix out(k, k);
  out.leftCols(F.cols()) = F;
  int have = static_cast<int>(F.cols());
  while (have < k) {
    CVector best;
    Complex best_nu = 0.0;
    double best_ratio = -1.0;
    for (int attempt = 0; attempt < 64; ++attempt) {
      CVector v = rng.matrix(k, 1);
      for (int j = 0; j < have; ++j) {
        const CVector u = out.col(j);
        v -= (u.transpose() * v)(0, 0) * u;
      }
      const Complex nu = (v.transpose() * v)(0, 0);
      const double ratio = std::abs(nu) / (v.squaredNorm() + 1e-300);
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best = v;
        best_nu = nu;
      }
      if (ratio > 0.05) break;
    }
    if (best_ratio < 1e-9) fail_numeric("witt: bilinear completion failed");
    out.col(have) = best / principal_sqrt(best_nu);
    ++have;
  }
  return out;
}

// Completes signed-orthonormal columns (u^* S u = sign) to a full
// pseudo-unitary matrix; `signs` gives the target sign per column slot and S
// is diag(signs of the target space).
CMatrix complete_signed(const CMatrix& F, const std::vector<int>& have_signs,
                        const std::vector<int>& slot_signs, Rng& rng) {
  const int k = static_cast<int>(F.rows());
  CMatrix out(k, k);
  out.leftCols(F.cols()) = F;
  std::vector<int> signs = have_signs;
  auto sdot = [&](const CVector& a, const CVector& b) {
    Complex s = 0.0;
    for (int i = 0; i < k; ++i) {
      s += std::conj(a(i)) * Complex(slot_signs[i], 0) * b(i);
    }
    return s;
  };
  while (static_cast<int>(signs.size()) < k) {
    const int target = slot_signs[signs.size()];
    CVector best;
    double best_nu = 0.0;
    double best_ratio = -1.0;
    for (int attempt = 0; attempt < 256; ++attempt) {
      CVector v = rng.matrix(k, 1);
      for (size_t j = 0; j < signs.size(); ++j) {
        const CVector u = out.col(static_cast<Eigen::Index>(j));
        v -= u * (sdot(u, v) * Complex(signs[j], 0));
      }
      const double nu = sdot(v, v).real();
      if ((nu > 0 ? 1 : -1) != target) continue;
      const double ratio = std::abs(nu) / (v.squaredNorm() + 1e-300);
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best = v;
        best_nu = nu;
      }
      if (ratio > 0.05) break;
    }
    if (best_ratio < 1e-9) fail_numeric("witt: signed completion failed");
    out.col(static_cast<Eigen::Index>(signs.size())) =
        best / std::sqrt(std::abs(best_nu));
    signs.push_back(target);
  }
  return out;
}

// Completes Darboux columns with respect to omega(x, y) = x^T (I kron K) y to
// a full symplectic-type matrix whose Gram is I kron K.
CMatrix complete_darboux(const CMatrix& F, const CMatrix& K, Rng& rng) {
  const int k = static_cast<int>(F.rows());
  const Complex kappa = K(0, 1);
  auto omega = [&](const CVector& x, const CVector& y) {
    Complex s = 0.0;
    for (int i = 0; i < k / 2; ++i) {
      s += x(2 * i) * K(0, 1) * y(2 * i + 1) + x(2 * i + 1) * K(1, 0) * y(2 * i);
    }
    return s;
  };
  CMatrix out(k, k);
  out.leftCols(F.cols()) = F;
  int have = static_cast<int>(F.cols());
  auto project = [&](CVector v) {
    for (int p = 0; p < have / 2; ++p) {
      const CVector a = out.col(2 * p);
      const CVector b = out.col(2 * p + 1);
      v -= (omega(v, b) / kappa) * a;
      v -= (omega(a, v) / kappa) * b;
    }
    return v;
  };
  while (have < k) {
    CVector best_a, best_b;
    Complex best_s = 0.0;
    double best_ratio = -1.0;
    for (int attempt = 0; attempt < 64; ++attempt) {
      CVector a = project(rng.matrix(k, 1));
      if (a.norm() < 1e-9) continue;
      a.normalize();
      const CVector b = project(rng.matrix(k, 1));
      const Complex s = omega(a, b);
      const double ratio = std::abs(s) / (b.norm() + 1e-300);
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best_a = a;
        best_b = b;
        best_s = s;
      }
      if (ratio > 0.05) break;
    }
    if (best_ratio < 1e-9) fail_numeric("witt: symplectic completion failed");
    out.col(have) = best_a;
    out.col(have + 1) = best_b * (kappa / best_s);
    have += 2;
  }
  return out;
}

// Completes a dual pair (A1, A2) with A2^T A1 = I (bilinear) or
// A2^T conj(A1) = I (sesquilinear) to square matrices with the same relation.
void complete_dual_pair(CMatrix& A1, CMatrix& A2, bool sesquilinear,
                        const Tol& tol) {
  const int k = static_cast<int>(A1.rows());
  const int n = static_cast<int>(A1.cols());
  if (n == k) return;
  const CMatrix N = sesquilinear ? nullspace(CMatrix(A2.adjoint()), tol)
                                 : nullspace(CMatrix(A2.transpose()), tol);
  if (N.cols() != k - n) fail_numeric("witt: dual-pair completion rank mismatch");
  CMatrix A1f(k, k);
  A1f << A1, N;
  if (!is_invertible(A1f, tol)) fail_numeric("witt: dual-pair completion singular");
  const CMatrix A2f = sesquilinear ? CMatrix(A1f.adjoint().inverse())
                                   : CMatrix(A1f.transpose().inverse());
  A1 = A1f;
  A2 = A2f;
}

std::vector<int> slot_signs_of(const IsotypicSpec& spec) {
  std::vector<int> signs;
  for (int t = 0; t < spec.n; ++t) signs.push_back(1);
  for (int t = 0; t < spec.m; ++t) signs.push_back(-1);
  return signs;
}

}  // namespace

CMatrix standard_embedding(const Catalog& catalog, const IsotypicSpec& from,
                           const IsotypicSpec& to) {
  const CatalogEntry& entry = catalog.entries.at(from.entry);
  const int d = entry.s.dim();
  const int kf = from.n + from.m;
  const int kt = to.n + to.m;
  CMatrix F = CMatrix::Zero(kt, kf);
  for (int t = 0; t < from.n; ++t) F(t, t) = 1.0;
  for (int t = 0; t < from.m; ++t) F(to.n + t, from.n + t) = 1.0;
  return inject_scalar(F, d);
}

CMatrix random_isometric_embedding(const Catalog& catalog,
                                   const IsotypicSpec& from,
                                   const IsotypicSpec& to, std::uint64_t seed,
                                   const Tol& tol) {
  const CatalogEntry& entry = catalog.entries.at(from.entry);
  if (from.entry != to.entry) fail_validation("random_isometric_embedding: entries differ");
  const MultLayout lay = layout_of(catalog, entry);
  Rng rng(seed);
  const int n = from.n + from.m;
  const int k = to.n + to.m;
  if (from.n > to.n || from.m > to.m) {
    fail_validation("random_isometric_embedding: target too small");
  }
  switch (lay.kind) {
    case MultKind::scalar: {
      const CMatrix O = complete_bilinear(CMatrix(k, 0), rng);
      return inject_scalar(O.leftCols(n), lay.d);
    }
    case MultKind::signed_scalar: {
      // Draw columns with the prescribed signature pattern.
      const auto to_signs = slot_signs_of(to);
      const auto from_signs = slot_signs_of(from);
      CMatrix seedcols(k, 0);
      CMatrix full = complete_signed(seedcols, {}, to_signs, rng);
      // complete_signed fills slot signs in order (+ then -); reorder the
      // columns so that their signs match the `from` slot pattern.
      CMatrix F(k, n);
      int plus_at = 0;
      int minus_at = to.n;
      for (int t = 0; t < n; ++t) {
        if (from_signs[t] > 0) {
          F.col(t) = full.col(plus_at++);
        } else {
          F.col(t) = full.col(minus_at++);
        }
      }
      return inject_scalar(F, lay.d);
    }
    case MultKind::quaternion: {
      const CMatrix O = complete_darboux(CMatrix(2 * k, 0), lay.Kform, rng);
      return inject_quaternion(O.leftCols(2 * n), lay.d1);
    }
    case MultKind::pair_diag: {
      CMatrix A1 = rng.matrix(k, n);
      while (numerical_rank(A1, tol) < n) A1 = rng.matrix(k, n);
      const bool sesq = lay.invol == Involution::conjugation;
      CMatrix A2;
      if (sesq) {
        A2 = A1 * (A1.adjoint() * A1).inverse();
      } else {
        A2 = A1.conjugate() *
             CMatrix((A1.adjoint() * A1).transpose()).inverse();
      }
      // Generic kernel component keeps the pairing intact.
      const CMatrix N = sesq ? nullspace(CMatrix(A1.adjoint()), tol)
                             : nullspace(CMatrix(A1.transpose()), tol);
      if (N.cols() > 0) A2 += N * rng.matrix(static_cast<int>(N.cols()), n);
      return inject_pair(A1, A2, lay.d1, lay.d2);
    }
  }
  fail_numeric("random_isometric_embedding: unreachable");
}

WittResult witt_extend(const CMatrix& f, const Catalog& catalog,
                       const IsotypicSpec& from, const IsotypicSpec& to,
                       std::uint64_t seed, const Tol& tol) {
  const CatalogEntry& entry = catalog.entries.at(from.entry);
  if (from.entry != to.entry) fail_validation("witt_extend: entries differ");
  if (from.n > to.n || from.m > to.m) fail_validation("witt_extend: target too small");
  const MultLayout lay = layout_of(catalog, entry);
  const int n = from.n + from.m;
  const int k = to.n + to.m;
  const StructureWithAmbient target = build_isotypic(catalog, to);
  const StructureWithAmbient source = build_isotypic(catalog, from);
  {
    const auto pre = morphism_test(f, source.s, target.s, tol);
    if (!pre.ok) fail_validation("witt_extend: input is not an isometric embedding");
  }
  Rng rng(seed);
  CMatrix T_full;
  switch (lay.kind) {
    case MultKind::scalar: {
      const CMatrix F = extract_scalar(f, lay.d, k, n);
      T_full = inject_scalar(complete_bilinear(F, rng), lay.d);
      break;
    }
    case MultKind::signed_scalar: {
      const CMatrix F = extract_scalar(f, lay.d, k, n);
      const auto to_signs = slot_signs_of(to);
      auto sdot = [&](const CVector& a, const CVector& b) {
        Complex s = 0.0;
        for (int i = 0; i < k; ++i) {
          s += std::conj(a(i)) * Complex(to_signs[i], 0) * b(i);
        }
        return s;
      };
      // T's column at a target slot is pinned by T std = f on the embedded
      // slots; the remaining slots are filled with sign-matched vectors.
      CMatrix T = CMatrix::Zero(k, k);
      std::vector<char> filled(k, 0);
      for (int t = 0; t < from.n; ++t) {
        T.col(t) = F.col(t);
        filled[t] = 1;
      }
      for (int s = 0; s < from.m; ++s) {
        T.col(to.n + s) = F.col(from.n + s);
        filled[to.n + s] = 1;
      }
      for (int slot = 0; slot < k; ++slot) {
        if (filled[slot]) continue;
        CVector best;
        double best_nu = 0.0;
        double best_ratio = -1.0;
        for (int attempt = 0; attempt < 256; ++attempt) {
          CVector v = rng.matrix(k, 1);
          for (int j = 0; j < k; ++j) {
            if (!filled[j]) continue;
            const CVector u = T.col(j);
            v -= u * (sdot(u, v) * Complex(to_signs[j], 0));
          }
          const double nu = sdot(v, v).real();
          if ((nu > 0 ? 1 : -1) != to_signs[slot]) continue;
          const double ratio = std::abs(nu) / (v.squaredNorm() + 1e-300);
          if (ratio > best_ratio) {
            best_ratio = ratio;
            best = v;
            best_nu = nu;
          }
          if (ratio > 0.05) break;
        }
        if (best_ratio < 1e-9) fail_numeric("witt: signed completion failed");
        T.col(slot) = best / std::sqrt(std::abs(best_nu));
        filled[slot] = 1;
      }
      T_full = inject_scalar(T, lay.d);
      break;
    }
    case MultKind::quaternion: {
      const CMatrix F = extract_quaternion(f, lay.d1, k, n);
      T_full = inject_quaternion(complete_darboux(F, lay.Kform, rng), lay.d1);
      break;
    }
    case MultKind::pair_diag: {
      CMatrix A1, A2;
      extract_pair(f, lay.d1, lay.d2, k, n, A1, A2);
      complete_dual_pair(A1, A2, lay.invol == Involution::conjugation, tol);
      T_full = inject_pair(A1, A2, lay.d1, lay.d2);
      break;
    }
  }
  const CMatrix std_emb = standard_embedding(catalog, from, to);
  WittResult out;
  out.T = T_full;
  out.residual = (T_full * std_emb - f).cwiseAbs().maxCoeff();
  const auto check = morphism_test(T_full, target.s, target.s, tol);
  if (!check.ok || !check.bijective) {
    fail_numeric("witt_extend: completion is not a categorical automorphism");
  }
  if (out.residual > std::max(tol.residual * 100.0, 1e-8)) {
    fail_numeric("witt_extend: extension does not restrict to the embedding");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Census
// ---------------------------------------------------------------------------

CensusReport bijection_census(ContextPtr ctx, std::uint64_t seed, const Tol& tol) {
  CensusReport rep;
  const Catalog lcat = irreducible_catalog(ctx, Theory::L, seed, tol);
  const Catalog hcat = irreducible_catalog(ctx, Theory::H, seed, tol);
  const auto& simples = lcat.even_irreps;
  rep.simples_even = static_cast<int>(simples.size());

  // A-carriers, counted independently of the L-catalog construction: orbits
  // of the antilinear duality W -> w . conj(W) on the simple characters.
  {
    const GroupTable& t = ctx->gg.table;
    std::vector<Character> chars;
    for (const auto& s : simples) chars.push_back(character_of(s));
    auto tau = [&](int i) {
      Character twisted;
      twisted.values.resize(chars[i].values.size());
      for (int g = 0; g < ctx->even->order; ++g) {
        const int conj = ctx->even_index(t.conjugate(ctx->w0, ctx->even_to_hat[g]));
        twisted.values[g] = std::conj(chars[i].values[conj]);
      }
      for (size_t j = 0; j < chars.size(); ++j) {
        if (characters_equal(chars[j], twisted)) return static_cast<int>(j);
      }
      fail_numeric("census: duality image not found among simples");
    };
    std::vector<char> seen(simples.size(), 0);
    for (size_t i = 0; i < simples.size(); ++i) {
      if (seen[i]) continue;
      seen[i] = 1;
      const int j = tau(static_cast<int>(i));
      if (j != static_cast<int>(i)) seen[j] = 1;
      ++rep.a_carriers;
    }
  }

  rep.l_entries = static_cast<int>(lcat.entries.size());
  for (const auto& e : lcat.entries) rep.l_types.push_back(to_string(e.label.l));
  rep.hat_irreps = static_cast<int>(hcat.hat_irreps.size());
  rep.h_entries = static_cast<int>(hcat.entries.size());
  for (const auto& e : hcat.entries) {
    std::string label = to_string(e.label.h);
    if (e.label.h == HType::Type1) label += e.label.sign > 0 ? "+" : "-";
    rep.h_types.push_back(label);
  }

  std::vector<Character> hat_chars;
  for (const auto& r : hcat.hat_irreps) hat_chars.push_back(character_of(r));
  auto pi_twist = [&](const Character& chi) {
    Character out = chi;
    for (int g = 0; g < ctx->hat->order; ++g) {
      out.values[g] *= static_cast<double>(ctx->parity(g));
    }
    return out;
  };
  std::vector<char> counted(hat_chars.size(), 0);
  for (size_t i = 0; i < hat_chars.size(); ++i) {
    if (characters_equal(hat_chars[i], pi_twist(hat_chars[i]))) {
      ++rep.q_self_paired;
    } else if (!counted[i]) {
      counted[i] = 1;
      for (size_t j = 0; j < hat_chars.size(); ++j) {
        if (j != i && characters_equal(hat_chars[j], pi_twist(hat_chars[i]))) {
          counted[j] = 1;
        }
      }
      ++rep.p_pairs;
    }
  }

  // Table rows: restriction / induction behaviour of every hat simple.
  std::vector<Character> simple_chars;
  for (const auto& s : simples) simple_chars.push_back(character_of(s));
  for (size_t i = 0; i < hcat.hat_irreps.size(); ++i) {
    CensusReport::Table2Row row;
    row.hat_irrep = static_cast<int>(i);
    row.pi_self = characters_equal(hat_chars[i], pi_twist(hat_chars[i]));
    const Rep restricted = restrict_rep(hcat.hat_irreps[i], *ctx);
    const Character rchi = character_of(restricted);
    int total_mult = 0;
    int first_summand = -1;
    for (size_t kk = 0; kk < simples.size(); ++kk) {
      const Complex mm = char_inner(rchi, simple_chars[kk]);
      const int m = static_cast<int>(round_integer(mm.real(), "census multiplicity"));
      if (m > 0 && first_summand < 0) first_summand = static_cast<int>(kk);
      total_mult += m;
    }
    row.restriction_simple = total_mult == 1;
    {
      const GroupTable& t = ctx->gg.table;
      Character twisted;
      twisted.values.resize(simple_chars[first_summand].values.size());
      for (int g = 0; g < ctx->even->order; ++g) {
        const int conj = ctx->even_index(t.conjugate(ctx->w0, ctx->even_to_hat[g]));
        twisted.values[g] = simple_chars[first_summand].values[conj];
      }
      row.w_self = characters_equal(simple_chars[first_summand], twisted);
    }
    // Induction column: W induced is V + V.pi (restriction simple) or V.
    const Rep induced = induce_rep(lcat.even_irreps[first_summand], *ctx);
    const Character ichi = character_of(induced);
    Character expect = hat_chars[i];
    if (row.restriction_simple) {
      const Character tw = pi_twist(hat_chars[i]);
      for (size_t g = 0; g < expect.values.size(); ++g) {
        expect.values[g] += tw.values[g];
      }
    }
    row.induction_matches = characters_equal(ichi, expect);
    row.consistent = (row.restriction_simple == !row.pi_self) &&
                     (row.restriction_simple == row.w_self) &&
                     row.induction_matches;
    rep.table2.push_back(row);
  }
  return rep;
}

}  // namespace realrep
