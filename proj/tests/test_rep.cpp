#include <doctest.h>

#include <algorithm>
#include <map>

#include "realrep/rep.hpp"

using namespace realrep;

namespace {

std::shared_ptr<const GroupTable> named(const char* spec) {
  return std::make_shared<const GroupTable>(make_named(spec));
}

ContextPtr graded(const char* spec, int grading = 0) {
  const GroupTable t = make_named(spec);
  const auto gs = find_gradings(t);
  REQUIRE(grading < static_cast<int>(gs.size()));
  return make_context(GradedGroup{t, gs[grading]});
}

std::vector<int> dims_of(const std::vector<Rep>& irreps) {
  std::vector<int> dims;
  for (const auto& r : irreps) dims.push_back(r.dim);
  std::sort(dims.begin(), dims.end());
  return dims;
}

}  // namespace

TEST_SUITE_BEGIN("rep");

TEST_CASE("regular representation basics") {
  {
    const Rep r = regular_rep(named("c2"));
    CHECK(validate_rep(r) == 0.0);
    CMatrix swap(2, 2);
    swap << 0, 1, 1, 0;
    CHECK((r.mats[1] - swap).cwiseAbs().maxCoeff() == 0.0);
  }
  {
    const Rep r = regular_rep(named("d3"));
    CHECK(r.dim == 6);
    CHECK(validate_rep(r) == 0.0);
    const Character chi = character_of(r);
    CHECK(chi.values[0] == Complex(6, 0));
    for (int g = 1; g < 6; ++g) CHECK(std::abs(chi.values[g]) < 1e-14);
  }
}

TEST_CASE("validate_rep detects corruption") {
  Rep r = regular_rep(named("c4"));
  r.mats[1](0, 0) += 0.1;
  CHECK(validate_rep(r) >= 0.05);
}

TEST_CASE("irreducibles of the catalog groups") {
  const Tol tol;
  CHECK(dims_of(irreducibles(named("d3"), 1, tol)) == std::vector<int>{1, 1, 2});
  CHECK(dims_of(irreducibles(named("q8"), 1, tol)) ==
        std::vector<int>{1, 1, 1, 1, 2});
  CHECK(dims_of(irreducibles(named("c4"), 1, tol)) ==
        std::vector<int>{1, 1, 1, 1});
  CHECK(dims_of(irreducibles(named("s4"), 1, tol)) ==
        std::vector<int>{1, 1, 2, 3, 3});
}

TEST_CASE("completeness and orthogonality over several groups") {
  const Tol tol;
  for (const char* name : {"c2", "c6", "d4", "d5", "q8", "q16", "s4"}) {
    auto g = named(name);
    const auto irreps = irreducibles(g, 1, tol);
    long dimsq = 0;
    for (const auto& r : irreps) {
      dimsq += static_cast<long>(r.dim) * r.dim;
      CHECK(validate_rep(r, tol) < 1e-10);
      CHECK(is_irreducible(r, tol));
    }
    CHECK(dimsq == g->order);
    for (size_t i = 0; i < irreps.size(); ++i) {
      for (size_t j = 0; j < irreps.size(); ++j) {
        const Complex inner =
            char_inner(character_of(irreps[i]), character_of(irreps[j]));
        CHECK(std::abs(inner - (i == j ? 1.0 : 0.0)) < 1e-8);
      }
    }
  }
}

TEST_CASE("character inner products") {
  const auto g = named("d3");
  const Rep reg = regular_rep(g);
  const auto irreps = irreducibles(g, 1);
  // trivial rep appears exactly once in the regular representation
  Rep trivial;
  trivial.group = g;
  trivial.dim = 1;
  trivial.mats.assign(6, CMatrix::Identity(1, 1));
  CHECK(std::abs(char_inner(character_of(reg), character_of(trivial)) - 1.0) <
        1e-12);
  // 2-dim irrep of d3 is irreducible by the character test
  for (const auto& r : irreps) {
    if (r.dim == 2) {
      CHECK(std::abs(char_inner(character_of(r), character_of(r)) - 1.0) < 1e-8);
    }
  }
  // regular rep of c4: sum of squared multiplicities is 4
  const Rep reg4 = regular_rep(named("c4"));
  CHECK(std::abs(char_inner(character_of(reg4), character_of(reg4)) - 4.0) <
        1e-8);
}

TEST_CASE("decompose against a catalog") {
  const Tol tol;
  const auto g = named("d3");
  const auto irreps = irreducibles(g, 1, tol);
  const Rep reg = regular_rep(g);
  const IsoDecomp dec = decompose(reg, irreps, 17, tol);
  std::map<int, int> mults;
  for (const auto& p : dec.parts) mults[p.irrep] = p.multiplicity;
  for (size_t i = 0; i < irreps.size(); ++i) {
    CHECK(mults[static_cast<int>(i)] == irreps[i].dim);
  }
  // embeddings intertwine
  for (const auto& p : dec.parts) {
    const Rep& V = irreps[p.irrep];
    for (int copy = 0; copy < p.multiplicity; ++copy) {
      const CMatrix f = p.embedding.middleCols(copy * V.dim, V.dim);
      for (int e = 0; e < g->order; ++e) {
        CHECK((f * V.mats[e] - reg.mats[e] * f).cwiseAbs().maxCoeff() < 1e-8);
      }
    }
  }
  // direct sum V + V doubles multiplicities
  const Rep& two = irreps.back();
  Rep doubled;
  doubled.group = g;
  doubled.dim = 2 * two.dim;
  for (int e = 0; e < g->order; ++e) {
    CMatrix m = CMatrix::Zero(doubled.dim, doubled.dim);
    m.topLeftCorner(two.dim, two.dim) = two.mats[e];
    m.bottomRightCorner(two.dim, two.dim) = two.mats[e];
    doubled.mats.push_back(m);
  }
  const IsoDecomp dd = decompose(doubled, irreps, 3, tol);
  REQUIRE(dd.parts.size() == 1);
  CHECK(dd.parts[0].multiplicity == 2);

  Rep trivial;
  trivial.group = g;
  trivial.dim = 1;
  trivial.mats.assign(6, CMatrix::Identity(1, 1));
  const IsoDecomp dt = decompose(trivial, irreps, 3, tol);
  REQUIRE(dt.parts.size() == 1);
  CHECK(dt.parts[0].multiplicity == 1);
  CHECK(irreps[dt.parts[0].irrep].dim == 1);
}

TEST_CASE("intertwiner dimensions follow Schur") {
  const Tol tol;
  const auto g = named("d3");
  const auto irreps = irreducibles(g, 1, tol);
  const Rep* two = nullptr;
  const Rep* triv = nullptr;
  const Rep* sign = nullptr;
  for (const auto& r : irreps) {
    if (r.dim == 2) two = &r;
    if (r.dim == 1) {
      if (std::abs(r.mats[5](0, 0) - Complex(1, 0)) < 1e-9) {
        triv = &r;
      } else {
        sign = &r;
      }
    }
  }
  REQUIRE((two && triv && sign));
  {
    const auto basis = intertwiner_basis(*two, *two, tol);
    REQUIRE(basis.size() == 1);
    // proportional to the identity
    const Complex c = basis[0](0, 0);
    CHECK((basis[0] - c * CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-8);
  }
  CHECK(intertwiner_basis(*triv, *sign, tol).empty());
  {
    Rep doubled;
    doubled.group = g;
    doubled.dim = 4;
    for (int e = 0; e < 6; ++e) {
      CMatrix m = CMatrix::Zero(4, 4);
      m.topLeftCorner(2, 2) = two->mats[e];
      m.bottomRightCorner(2, 2) = two->mats[e];
      doubled.mats.push_back(m);
    }
    CHECK(intertwiner_basis(*two, doubled, tol).size() == 2);
  }
}

TEST_CASE("transforms and their involutivity") {
  const Tol tol;
  auto ctx = graded("q8", 0);
  const auto evens = irreducibles(ctx->even, 1, tol);
  // the faithful character chi(x) = i of the even kernel
  const Rep* chi = nullptr;
  for (const auto& r : evens) {
    if (r.dim == 1 && std::abs(r.mats[1](0, 0) - Complex(0, 1)) < 1e-9) chi = &r;
  }
  REQUIRE(chi);
  // twist by the odd w: (w . chi)(x) = chi(x^{-1}) = conj(chi(x))
  const Rep twisted = transform_twist(*chi, *ctx, ctx->w0);
  CHECK(std::abs(twisted.mats[1](0, 0) - Complex(0, -1)) < 1e-12);
  CHECK(std::abs(transform_conjugate(*chi).mats[1](0, 0) - Complex(0, -1)) <
        1e-12);

  // twist by a central odd element is the identity transform
  auto cyc = graded("c8", 0);
  const auto cevens = irreducibles(cyc->even, 1, tol);
  for (const auto& r : cevens) {
    const Rep tw = transform_twist(r, *cyc, cyc->w0);
    for (size_t e = 0; e < r.mats.size(); ++e) {
      CHECK((tw.mats[e] - r.mats[e]).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  // conjugate twice / dual twice / tensor_sign twice
  const Rep reg = regular_rep(ctx->hat);
  const Rep cc = transform_conjugate(transform_conjugate(reg));
  for (size_t e = 0; e < reg.mats.size(); ++e) {
    CHECK((cc.mats[e] - reg.mats[e]).cwiseAbs().maxCoeff() == 0.0);
  }
  const Rep dd = transform_dual(transform_dual(reg));
  CHECK(characters_equal(character_of(dd), character_of(reg)));
  const Rep ss = transform_tensor_sign(transform_tensor_sign(reg, ctx->gg), ctx->gg);
  for (size_t e = 0; e < reg.mats.size(); ++e) {
    CHECK((ss.mats[e] - reg.mats[e]).cwiseAbs().maxCoeff() == 0.0);
  }
  // dual character is the conjugate character
  CHECK(characters_equal(character_of(transform_dual(reg)),
                         character_of(transform_conjugate(reg))));
}

TEST_CASE("unitarize") {
  const auto g = named("d3");
  const Rep reg = regular_rep(g);  // permutation matrices are unitary
  const InvariantInner inner = unitarize(reg);
  CHECK((inner.H - CMatrix::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-12);

  // conjugated rep S mats S^{-1}: substituting into the average gives
  // H = (S^{-1})^* [avg M(g)^* (S^* S) M(g)] S^{-1}, which collapses to
  // (S^{-1})^* S^{-1} exactly when the bracket is the identity (unitary S).
  Rng rng(9);
  const CMatrix S = rng.invertible(6);
  Rep conj_rep;
  conj_rep.group = g;
  conj_rep.dim = 6;
  const CMatrix Sinv = S.inverse();
  for (const auto& m : reg.mats) conj_rep.mats.push_back(S * m * Sinv);
  const InvariantInner inner2 = unitarize(conj_rep);
  for (const auto& m : conj_rep.mats) {
    CHECK((m.adjoint() * inner2.H * m - inner2.H).cwiseAbs().maxCoeff() < 1e-9);
  }
  CMatrix bracket = CMatrix::Zero(6, 6);
  for (const auto& m : reg.mats) bracket += m.adjoint() * S.adjoint() * S * m;
  bracket /= 6.0;
  CHECK((inner2.H - Sinv.adjoint() * bracket * Sinv).cwiseAbs().maxCoeff() <
        1e-9);
  Eigen::HouseholderQR<CMatrix> qr(rng.matrix(6, 6));
  const CMatrix U = qr.householderQ();
  Rep uconj;
  uconj.group = g;
  uconj.dim = 6;
  for (const auto& m : reg.mats) uconj.mats.push_back(U * m * U.adjoint());
  const InvariantInner inner3 = unitarize(uconj);
  CHECK((inner3.H - U * U.adjoint()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("restriction and induction at index 2") {
  const Tol tol;
  auto ctx = graded("d3", 0);
  const auto hat_irreps = irreducibles(ctx->hat, 1, tol);
  const auto even_irreps = irreducibles(ctx->even, 1, tol);

  // restrict the 2-dim irrep of d3 to c3: character (2, -1, -1)
  const Rep* two = nullptr;
  for (const auto& r : hat_irreps) {
    if (r.dim == 2) two = &r;
  }
  REQUIRE(two);
  const Rep res = restrict_rep(*two, *ctx);
  const Character rchi = character_of(res);
  CHECK(std::abs(rchi.values[0] - Complex(2, 0)) < 1e-9);
  CHECK(std::abs(rchi.values[1] - Complex(-1, 0)) < 1e-9);
  CHECK(std::abs(rchi.values[2] - Complex(-1, 0)) < 1e-9);

  // induce the trivial rep of c3: character (2,2,2,0,0,0) = trivial + sign
  const Rep* ctriv = nullptr;
  const Rep* omega = nullptr;
  for (const auto& r : even_irreps) {
    if (std::abs(r.mats[1](0, 0) - Complex(1, 0)) < 1e-9) {
      ctriv = &r;
    } else if (!omega) {
      omega = &r;
    }
  }
  REQUIRE((ctriv && omega));
  const Rep ind = induce_rep(*ctriv, *ctx);
  CHECK(validate_rep(ind, tol) < 1e-10);
  const Character ichi = character_of(ind);
  for (int e = 0; e < 6; ++e) {
    const double expect = ctx->parity(e) == 1 ? 2.0 : 0.0;
    CHECK(std::abs(ichi.values[e] - Complex(expect, 0)) < 1e-9);
  }
  // induce a nontrivial character of c3: the 2-dim irrep
  const Rep ind2 = induce_rep(*omega, *ctx);
  CHECK(characters_equal(character_of(ind2), character_of(*two)));
}

TEST_CASE("Frobenius reciprocity and the induction-restriction table") {
  const Tol tol;
  for (const char* name : {"d3", "q8", "s4"}) {
    for (int gi = 0;; ++gi) {
      const GroupTable t = make_named(name);
      const auto gs = find_gradings(t);
      if (gi >= static_cast<int>(gs.size())) break;
      auto ctx = make_context(GradedGroup{t, gs[gi]});
      const auto hats = irreducibles(ctx->hat, 1, tol);
      const auto evens = irreducibles(ctx->even, 1, tol);
      for (const auto& W : evens) {
        const Character up = character_of(induce_rep(W, *ctx));
        for (const auto& V : hats) {
          const Character down = character_of(restrict_rep(V, *ctx));
          const Complex lhs = char_inner(up, character_of(V));
          const Complex rhs = char_inner(character_of(W), down);
          CHECK(std::abs(lhs - rhs) < 1e-8);
        }
      }
      // restriction of a simple V is simple iff V is not isomorphic to
      // V tensor pi, iff the simple summand W satisfies W iso w.W
      for (const auto& V : hats) {
        const Character chiV = character_of(V);
        const Character chiVpi = character_of(transform_tensor_sign(V, ctx->gg));
        const bool pi_self = characters_equal(chiV, chiVpi);
        const Rep down = restrict_rep(V, *ctx);
        const Character dchi = character_of(down);
        const double norm = char_inner(dchi, dchi).real();
        const bool simple = std::abs(norm - 1.0) < 1e-8;
        CHECK(simple == !pi_self);
        // W iso w.W test on the first simple summand
        for (const auto& W : evens) {
          const Complex mult = char_inner(dchi, character_of(W));
          if (std::abs(mult) < 0.5) continue;
          const Rep tw = transform_twist(W, *ctx, ctx->w0);
          const bool w_self = characters_equal(character_of(W), character_of(tw));
          CHECK(w_self == simple);
          break;
        }
      }
    }
  }
}

TEST_SUITE_END();
