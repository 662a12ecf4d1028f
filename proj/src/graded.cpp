#include "realrep/graded.hpp"

#include <algorithm>
#include <cmath>

namespace realrep {

namespace {

CMatrix sigma_of(const CMatrix& M, Involution invol) {
  return invol == Involution::trivial ? M : CMatrix(M.conjugate());
}

// A^{*iota}: transpose for the trivial involution, adjoint for conjugation.
CMatrix star_i(const CMatrix& M, Involution invol) {
  return invol == Involution::trivial ? CMatrix(M.transpose())
                                      : CMatrix(M.adjoint());
}

double rel_residual(const CMatrix& lhs, const CMatrix& rhs) {
  const double scale = 1.0 + rhs.cwiseAbs().maxCoeff();
  return (lhs - rhs).cwiseAbs().maxCoeff() / scale;
}

// Orthonormal basis of { X : left(g) X right(g) = X for all even g }, with
// the constraint generated over a generating set of the even kernel.
template <typename LeftFn, typename RightFn>
std::vector<CMatrix> equivariance_space(int rows, int cols,
                                        const GroupTable& even, LeftFn left,
                                        RightFn right, const Tol& tol) {
  const auto gens = even.generators();
  const int unknowns = rows * cols;
  const int nsys = std::max<int>(1, static_cast<int>(gens.size()));
  CMatrix A = CMatrix::Zero(static_cast<Eigen::Index>(nsys) * unknowns, unknowns);
  int row0 = 0;
  for (int g : gens) {
    const CMatrix X = left(g);   // rows x rows
    const CMatrix Y = right(g);  // cols x cols
    // vec(X B Y), column-major: coefficient of B(k,l) in entry (i,j) is
    // X(i,k) Y(l,j).
    for (int j = 0; j < cols; ++j) {
      for (int l = 0; l < cols; ++l) {
        for (int i = 0; i < rows; ++i) {
          for (int k = 0; k < rows; ++k) {
            A(row0 + j * rows + i, l * rows + k) += X(i, k) * Y(l, j);
          }
        }
      }
    }
    for (int e = 0; e < unknowns; ++e) A(row0 + e, e) -= 1.0;
    row0 += unknowns;
  }
  if (gens.empty()) {
    // trivial group: no constraints
    A.setZero();
  }
  const CMatrix null = nullspace(A, tol);
  std::vector<CMatrix> out;
  out.reserve(null.cols());
  for (int c = 0; c < null.cols(); ++c) {
    CMatrix B(rows, cols);
    for (int j = 0; j < cols; ++j) B.col(j) = null.col(c).segment(j * rows, rows);
    out.push_back(std::move(B));
  }
  return out;
}

Character twisted_char(const Character& chi, const GradedContext& ctx, int w) {
  const GroupTable& t = ctx.gg.table;
  Character out;
  out.values.resize(chi.values.size());
  for (int g = 0; g < ctx.even->order; ++g) {
    const int conj = ctx.even_index(t.conjugate(w, ctx.even_to_hat[g]));
    out.values[g] = chi.values[conj];
  }
  return out;
}

Character conj_char(const Character& chi) {
  Character out = chi;
  for (auto& v : out.values) v = std::conj(v);
  return out;
}

int find_simple(const std::vector<Rep>& simples, const Character& chi) {
  for (size_t i = 0; i < simples.size(); ++i) {
    if (characters_equal(character_of(simples[i]), chi)) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

}  // namespace

CMatrix ARep::J(int w) const {
  const GroupTable& t = ctx->gg.table;
  if (ctx->parity(w) != -1) fail_validation("ARep::J: element must be odd");
  if (w == ctx->w0) return J0;
  // w = g w0 with g = w w0^{-1};  J(g w0) = M(g) J(w0)
  const int g = ctx->even_index(t.at(w, t.inverse(ctx->w0)));
  return even.mats[g] * J0;
}

CMatrix GradedFormRep::B(int w) const {
  const GroupTable& t = ctx->gg.table;
  if (ctx->parity(w) != -1) fail_validation("GradedFormRep::B: element must be odd");
  if (w == ctx->w0) return B0;
  // w = w0 g with g = w0^{-1} w; odd-even corner: B(w0 g) = B(w0) sigma(M(g))
  const int g = ctx->even_index(t.at(t.inverse(ctx->w0), w));
  return involution() == Involution::trivial
             ? CMatrix(B0 * even.mats[g])
             : CMatrix(B0 * even.mats[g].conjugate());
}

Complex form_value(const GradedFormRep& s, int w, const CVector& u,
                   const CVector& v) {
  const CMatrix Bw = s.B(w);
  const CVector uu =
      s.involution() == Involution::trivial ? u : CVector(u.conjugate());
  return (v.transpose() * Bw * uu)(0, 0);
}

GradedResidual validate_graded_detail(const GradedFormRep& s, const Tol& tol) {
  const GradedContext& ctx = *s.ctx;
  const GroupTable& t = ctx.gg.table;
  const Involution invol = s.involution();
  GradedResidual res;
  res.even = validate_rep(s.even, tol);
  const int nodd = static_cast<int>(ctx.odd.size());
  std::vector<CMatrix> B(nodd);
  for (int a = 0; a < nodd; ++a) {
    B[a] = s.B(ctx.odd[a]);
    if (!is_invertible(B[a], tol)) {
      fail_validation("graded structure: a form matrix is singular");
    }
  }
  std::vector<int> odd_pos(t.order, -1);
  for (int a = 0; a < nodd; ++a) odd_pos[ctx.odd[a]] = a;

  auto M = [&](int hat_even) -> const CMatrix& {
    return s.even.mats[ctx.even_index(hat_even)];
  };

  for (int a = 0; a < nodd; ++a) {
    const int w = ctx.odd[a];
    for (int ge = 0; ge < ctx.even->order; ++ge) {
      const int g = ctx.even_to_hat[ge];
      // even-odd corner, B_{gw}(u,v) = B_w(u, g^{-1} v):
      //   B(g w) = M(g^{-1})^T B(w)
      res.corner = std::max(
          res.corner, rel_residual(B[odd_pos[t.at(g, w)]],
                                   M(t.inverse(g)).transpose() * B[a]));
      // odd-even corner, B_{wg}(u,v) = B_w(g u, v):
      //   B(w g) = B(w) sigma(M(g))
      res.corner = std::max(
          res.corner, rel_residual(B[odd_pos[t.at(w, g)]],
                                   B[a] * sigma_of(M(g), invol)));
      // w-invariance: M(w g w^{-1})^T B(w) sigma(M(g)) = B(w)
      const CMatrix lhs =
          M(t.conjugate(w, g)).transpose() * B[a] * sigma_of(M(g), invol);
      res.lemma = std::max(res.lemma, rel_residual(lhs, B[a]));
    }
    // w-hermitian: M(w^2)^T B(w) = B(w)^{*iota}
    res.lemma = std::max(res.lemma, rel_residual(M(t.at(w, w)).transpose() * B[a],
                                                 star_i(B[a], invol)));
  }
  for (int a = 0; a < nodd; ++a) {
    const int w1 = ctx.odd[a];
    for (int b = 0; b < nodd; ++b) {
      const int w2 = ctx.odd[b];
      // odd-odd corner, sigma(B_{w1}(u,v)) = B_{w2}((w1 w2)^{-1} v, u):
      //   B(w2) sigma(M((w1 w2)^{-1})) = B(w1)^{*iota}
      res.corner = std::max(
          res.corner,
          rel_residual(B[b] * sigma_of(M(t.inverse(t.at(w1, w2))), invol),
                       star_i(B[a], invol)));
      // cross-consistency: B(w1) = M(w2 w1^{-1})^T B(w2)
      res.lemma = std::max(
          res.lemma,
          rel_residual(M(t.at(w2, t.inverse(w1))).transpose() * B[b], B[a]));
    }
  }
  return res;
}

GradedResidual validate_graded_detail(const ARep& a, const Tol& tol) {
  const GradedContext& ctx = *a.ctx;
  const GroupTable& t = ctx.gg.table;
  GradedResidual res;
  res.even = validate_rep(a.even, tol);
  const int nodd = static_cast<int>(ctx.odd.size());
  std::vector<CMatrix> J(nodd);
  for (int i = 0; i < nodd; ++i) {
    J[i] = a.J(ctx.odd[i]);
    if (!is_invertible(J[i], tol)) {
      fail_validation("A-structure: a J matrix is singular");
    }
  }
  std::vector<int> odd_pos(t.order, -1);
  for (int i = 0; i < nodd; ++i) odd_pos[ctx.odd[i]] = i;
  auto M = [&](int hat_even) -> const CMatrix& {
    return a.even.mats[ctx.even_index(hat_even)];
  };

  for (int i = 0; i < nodd; ++i) {
    const int z = ctx.odd[i];
    for (int ge = 0; ge < ctx.even->order; ++ge) {
      const int g = ctx.even_to_hat[ge];
      res.corner = std::max(
          res.corner,
          rel_residual(J[odd_pos[t.at(z, g)]], J[i] * M(g).conjugate()));
      res.corner = std::max(res.corner,
                            rel_residual(J[odd_pos[t.at(g, z)]], M(g) * J[i]));
    }
    for (int j = 0; j < nodd; ++j) {
      res.lemma = std::max(
          res.lemma,
          rel_residual(J[i] * J[j].conjugate(), M(t.at(z, ctx.odd[j]))));
    }
  }
  return res;
}

double validate_graded(const GradedFormRep& s, const Tol& tol) {
  return validate_graded_detail(s, tol).max();
}

double validate_graded(const ARep& a, const Tol& tol) {
  return validate_graded_detail(a, tol).max();
}

std::vector<CMatrix> invariant_form_space(const Rep& W, const GradedContext& ctx,
                                          int w, Involution invol,
                                          const Tol& tol) {
  if (ctx.parity(w) != -1) fail_validation("invariant_form_space: w must be odd");
  const GroupTable& t = ctx.gg.table;
  // M(w g w^{-1})^T B sigma(M(g)) = B
  return equivariance_space(
      W.dim, W.dim, *ctx.even,
      [&](int ge) {
        const int conj = ctx.even_index(t.conjugate(w, ctx.even_to_hat[ge]));
        return CMatrix(W.mats[conj].transpose());
      },
      [&](int ge) { return sigma_of(W.mats[ge], invol); }, tol);
}

namespace detail {

Complex proportionality(const CMatrix& X, const CMatrix& Y, double* residual) {
  const Complex denom = (Y.conjugate().cwiseProduct(Y)).sum();
  if (std::abs(denom) == 0.0) {
    if (residual) *residual = X.cwiseAbs().maxCoeff();
    return 0.0;
  }
  const Complex c = (Y.conjugate().cwiseProduct(X)).sum() / denom;
  if (residual) {
    *residual =
        (X - c * Y).cwiseAbs().maxCoeff() / (1.0 + X.cwiseAbs().maxCoeff());
  }
  return c;
}

GradedFormRep direct_sum(const std::vector<const GradedFormRep*>& parts) {
  if (parts.empty()) fail_validation("direct_sum: empty");
  GradedFormRep out;
  out.ctx = parts[0]->ctx;
  out.theory = parts[0]->theory;
  int dim = 0;
  for (const auto* p : parts) dim += p->dim();
  out.even.group = parts[0]->even.group;
  out.even.dim = dim;
  out.even.mats.resize(parts[0]->even.mats.size());
  for (size_t g = 0; g < out.even.mats.size(); ++g) {
    CMatrix m = CMatrix::Zero(dim, dim);
    int off = 0;
    for (const auto* p : parts) {
      m.block(off, off, p->dim(), p->dim()) = p->even.mats[g];
      off += p->dim();
    }
    out.even.mats[g] = std::move(m);
  }
  out.B0 = CMatrix::Zero(dim, dim);
  int off = 0;
  for (const auto* p : parts) {
    out.B0.block(off, off, p->dim(), p->dim()) = p->B0;
    off += p->dim();
  }
  return out;
}

ARep direct_sum_arep(const std::vector<const ARep*>& parts) {
  if (parts.empty()) fail_validation("direct_sum_arep: empty");
  ARep out;
  out.ctx = parts[0]->ctx;
  int dim = 0;
  for (const auto* p : parts) dim += p->dim();
  out.even.group = parts[0]->even.group;
  out.even.dim = dim;
  out.even.mats.resize(parts[0]->even.mats.size());
  for (size_t g = 0; g < out.even.mats.size(); ++g) {
    CMatrix m = CMatrix::Zero(dim, dim);
    int off = 0;
    for (const auto* p : parts) {
      m.block(off, off, p->dim(), p->dim()) = p->even.mats[g];
      off += p->dim();
    }
    out.even.mats[g] = std::move(m);
  }
  out.J0 = CMatrix::Zero(dim, dim);
  int off = 0;
  for (const auto* p : parts) {
    out.J0.block(off, off, p->dim(), p->dim()) = p->J0;
    off += p->dim();
  }
  return out;
}

GradedFormRep conjugate_structure(const GradedFormRep& s, const CMatrix& S,
                                  const Tol& tol) {
  if (!is_invertible(S, tol)) {
    fail_validation("conjugate_structure: singular change of basis");
  }
  const CMatrix Sinv = S.inverse();
  GradedFormRep out;
  out.ctx = s.ctx;
  out.theory = s.theory;
  out.even.group = s.even.group;
  out.even.dim = s.even.dim;
  out.even.mats.reserve(s.even.mats.size());
  for (const auto& m : s.even.mats) out.even.mats.push_back(Sinv * m * S);
  out.B0 = S.transpose() * s.B0 * sigma_of(S, s.involution());
  return out;
}

}  // namespace detail

Complex lambda_of(const Rep& W, const GradedContext& ctx, int w,
                  const CMatrix& B, Involution invol, const Tol& tol) {
  const GroupTable& t = ctx.gg.table;
  const int w2 = ctx.even_index(t.at(w, w));
  const CMatrix lhs = W.mats[w2].transpose() * B;
  const CMatrix rhs = star_i(B, invol);
  double res = 0.0;
  Complex lambda = detail::proportionality(lhs, rhs, &res);
  if (res > std::max(tol.residual * 1e3, 1e-8)) {
    fail_numeric("lambda_of: inconsistent lambda across entries");
  }
  if (invol == Involution::trivial) {
    if (std::abs(lambda - Complex(1, 0)) < kIntegerGap) return Complex(1, 0);
    if (std::abs(lambda + Complex(1, 0)) < kIntegerGap) return Complex(-1, 0);
    fail_numeric("lambda_of: bilinear lambda is not +-1");
  }
  if (std::abs(std::abs(lambda) - 1.0) > kIntegerGap) {
    fail_numeric("lambda_of: sesquilinear lambda is not unimodular");
  }
  return lambda;
}

const char* to_string(LType t) {
  switch (t) {
    case LType::R: return "R";
    case LType::C: return "C";
    case LType::H: return "H";
  }
  return "?";
}

const char* to_string(HType t) {
  return t == HType::Type1 ? "Type1" : "Type2";
}

TypeLabel classify_simple(const Rep& W, const GradedContext& ctx, Theory theory,
                          const std::vector<Rep>& simples, int index,
                          const Tol& tol) {
  if (!is_irreducible(W, tol)) {
    fail_validation("classify_simple: module is not simple");
  }
  const Character chi = character_of(W);
  const Character wchi = twisted_char(chi, ctx, ctx.w0);
  TypeLabel label;
  label.theory = theory;
  if (theory == Theory::L) {
    if (!characters_equal(conj_char(chi), wchi)) {
      label.l = LType::C;
      label.partner_simple = find_simple(simples, conj_char(wchi));
      if (label.partner_simple < 0) {
        fail_numeric("classify_simple: partner module not found");
      }
      label.carrier_simples = {index, label.partner_simple};
      return label;
    }
    const auto forms =
        invariant_form_space(W, ctx, ctx.w0, Involution::trivial, tol);
    if (forms.size() != 1) {
      fail_numeric("classify_simple: invariant form space is not 1-dimensional");
    }
    const Complex lambda =
        lambda_of(W, ctx, ctx.w0, forms[0], Involution::trivial, tol);
    if (lambda.real() > 0) {
      label.l = LType::R;
      label.carrier_simples = {index};
    } else {
      label.l = LType::H;
      label.carrier_simples = {index, index};
    }
    return label;
  }
  if (theory != Theory::H) {
    fail_validation("classify_simple: theory must be L or H");
  }
  if (characters_equal(chi, wchi)) {
    label.h = HType::Type1;
    label.carrier_simples = {index};
  } else {
    label.h = HType::Type2;
    label.partner_simple = find_simple(simples, wchi);
    if (label.partner_simple < 0) {
      fail_numeric("classify_simple: twisted partner module not found");
    }
    label.carrier_simples = {index, label.partner_simple};
  }
  return label;
}

double fs_indicator_graded(const Character& chi, const GradedContext& ctx) {
  const GroupTable& t = ctx.gg.table;
  Complex sum = 0.0;
  for (int z : ctx.odd) {
    sum += chi.values[ctx.even_index(t.at(z, z))];
  }
  sum /= static_cast<double>(ctx.odd.size());
  for (double c : {-1.0, 0.0, 1.0}) {
    if (std::abs(sum - Complex(c, 0)) < kIntegerGap) return c;
  }
  fail_numeric("fs_indicator_graded: indicator is not in {-1, 0, +1}");
}

ARep build_A_irrep(const Rep& W, LType type, ContextPtr ctx, std::uint64_t seed,
                   const Tol& tol) {
  const GroupTable& t = ctx->gg.table;
  const int w0 = ctx->w0;
  const int w0sq = ctx->even_index(t.at(w0, w0));
  const int d = W.dim;

  if (type == LType::C) {
    // Carrier W + W', W' the twisted conjugate partner; swap-shaped J.
    Rep carrier;
    carrier.group = ctx->even;
    carrier.dim = 2 * d;
    carrier.mats.resize(ctx->even->order);
    for (int g = 0; g < ctx->even->order; ++g) {
      const int conj = ctx->even_index(t.conjugate(w0, ctx->even_to_hat[g]));
      CMatrix m = CMatrix::Zero(2 * d, 2 * d);
      m.topLeftCorner(d, d) = W.mats[g];
      m.bottomRightCorner(d, d) = W.mats[conj].conjugate();
      carrier.mats[g] = std::move(m);
    }
    CMatrix J = CMatrix::Zero(2 * d, 2 * d);
    J.topRightCorner(d, d) = CMatrix::Identity(d, d);
    J.bottomLeftCorner(d, d) = W.mats[w0sq].conjugate();
    return ARep{std::move(ctx), std::move(carrier), std::move(J)};
  }

  // Types R and H carry an antilinear intertwiner on W itself:
  //   J conj(M(g)) = M(w0 g w0^{-1}) J,
  // rewritten as M(w0 g w0^{-1})^{-1} J conj(M(g)) = J for the solver.
  const auto basis = equivariance_space(
      d, d, *ctx->even,
      [&](int ge) {
        const int conj =
            ctx->even_index(t.conjugate(w0, ctx->even_to_hat[ge]));
        return W.mats[ctx->even->inverse(conj)];
      },
      [&](int ge) { return CMatrix(W.mats[ge].conjugate()); }, tol);
  if (basis.size() != 1) {
    fail_numeric("build_A_irrep: antilinear intertwiner space is not 1-dim");
  }
  double res = 0.0;
  const Complex c = detail::proportionality(
      CMatrix(basis[0] * basis[0].conjugate()), W.mats[w0sq], &res);
  if (res > std::max(tol.residual * 1e3, 1e-8) ||
      std::abs(c.imag()) > kIntegerGap * std::abs(c)) {
    fail_numeric("build_A_irrep: J conj(J) is not a real multiple of M(w0^2)");
  }
  const double creal = c.real();
  if (type == LType::R) {
    if (creal <= 0) fail_numeric("build_A_irrep: type R expected positive sign");
    CMatrix J = basis[0] / std::sqrt(creal);
    return ARep{std::move(ctx), W, std::move(J)};
  }
  if (type != LType::H) fail_validation("build_A_irrep: bad type");
  if (creal >= 0) fail_numeric("build_A_irrep: type H expected negative sign");
  const CMatrix Jw = basis[0] / std::sqrt(-creal);  // Jw conj(Jw) = -M(w0^2)
  Rep carrier;
  carrier.group = ctx->even;
  carrier.dim = 2 * d;
  carrier.mats.resize(ctx->even->order);
  for (int g = 0; g < ctx->even->order; ++g) {
    CMatrix m = CMatrix::Zero(2 * d, 2 * d);
    m.topLeftCorner(d, d) = W.mats[g];
    m.bottomRightCorner(d, d) = W.mats[g];
    carrier.mats[g] = std::move(m);
  }
  CMatrix J = CMatrix::Zero(2 * d, 2 * d);
  J.topRightCorner(d, d) = -Jw;
  J.bottomLeftCorner(d, d) = Jw;
  (void)seed;
  return ARep{std::move(ctx), std::move(carrier), std::move(J)};
}

namespace {

void check_inner(const Rep& even, const InvariantInner& inner, const Tol& tol) {
  const double scale = 1.0 + inner.H.cwiseAbs().maxCoeff();
  if ((inner.H - inner.H.adjoint()).cwiseAbs().maxCoeff() > 1e-8 * scale) {
    fail_validation("structure_from_inner: inner form is not Hermitian");
  }
  auto [vals, vecs] = hermitian_eig(inner.H, tol);
  if (vals(0) <= 0) {
    fail_validation("structure_from_inner: inner form is not positive definite");
  }
  for (const auto& m : even.mats) {
    if ((m.adjoint() * inner.H * m - inner.H).cwiseAbs().maxCoeff() >
        1e-8 * scale) {
      fail_validation("structure_from_inner: inner form is not invariant");
    }
  }
}

}  // namespace

GradedFormRep structure_from_inner(const ARep& a, const InvariantInner& inner,
                                   const Tol& tol) {
  check_inner(a.even, inner, tol);
  const GroupTable& t = a.ctx->gg.table;
  const int w0 = a.ctx->w0;
  // B_w(u,v) = <u, w^{-1} v> + <v, w u> with <u,v> = v^* H u:
  // B(w) = J(w^{-1})^* H + H^T conj(J(w)).
  const CMatrix Jw = a.J(w0);
  const CMatrix Jwinv = a.J(t.inverse(w0));
  GradedFormRep s;
  s.ctx = a.ctx;
  s.theory = Theory::L;
  s.even = a.even;
  s.B0 = Jwinv.adjoint() * inner.H + inner.H.transpose() * Jw.conjugate();
  const double res = validate_graded(s, tol);
  if (res > tol.residual * 1e3) {
    fail_numeric("structure_from_inner: linear structure fails coherence");
  }
  return s;
}

GradedFormRep structure_from_inner(const Rep& hat_rep, ContextPtr ctx,
                                   const InvariantInner& inner, const Tol& tol) {
  if (hat_rep.group->order != ctx->hat->order) {
    fail_validation("structure_from_inner: expected a hat-group module");
  }
  Rep even = restrict_rep(hat_rep, *ctx);
  check_inner(even, inner, tol);
  const GroupTable& t = ctx->gg.table;
  const int w0 = ctx->w0;
  // B_w(u,v) = <w^{-1} v, u> + <v, w u>: B(w) = (H M(w^{-1}) + M(w)^* H)^T.
  const CMatrix& Mw = hat_rep.mats[w0];
  const CMatrix& Mwinv = hat_rep.mats[t.inverse(w0)];
  GradedFormRep s;
  s.ctx = std::move(ctx);
  s.theory = Theory::H;
  s.even = std::move(even);
  s.B0 = (inner.H * Mwinv + Mw.adjoint() * inner.H).transpose();
  const double res = validate_graded(s, tol);
  if (res > tol.residual * 1e3) {
    fail_numeric("structure_from_inner: hermitian structure fails coherence");
  }
  return s;
}

namespace {

// Deterministic sign convention for hermitian Type1 representatives: the "+"
// member has its first resolvable diagonal entry of (B + B^*)/2 positive.
// Returns 0 when no diagonal entry is resolvable.
int herm_diag_sign(const CMatrix& B) {
  const CMatrix H = (B + B.adjoint()) / 2.0;
  const double scale = 1.0 + H.cwiseAbs().maxCoeff();
  for (int i = 0; i < H.rows(); ++i) {
    const double v = H(i, i).real();
    if (std::abs(v) > 1e-8 * scale) return v > 0 ? 1 : -1;
  }
  return 0;
}

}  // namespace

Catalog irreducible_catalog(ContextPtr ctx, Theory theory, std::uint64_t seed,
                            const Tol& tol) {
  Catalog cat;
  cat.theory = theory;
  cat.ctx = ctx;
  cat.even_irreps = irreducibles(ctx->even, seed, tol);
  const int nsimple = static_cast<int>(cat.even_irreps.size());
  for (int i = 0; i < nsimple; ++i) {
    cat.simple_labels.push_back(classify_simple(cat.even_irreps[i], *ctx,
                                                theory == Theory::H ? Theory::H
                                                                    : Theory::L,
                                                cat.even_irreps, i, tol));
  }

  if (theory == Theory::L || theory == Theory::A) {
    std::vector<char> consumed(nsimple, 0);
    for (int i = 0; i < nsimple; ++i) {
      if (consumed[i]) continue;
      consumed[i] = 1;
      const TypeLabel& label = cat.simple_labels[i];
      if (label.l == LType::C) consumed[label.partner_simple] = 1;
      ARep arep = build_A_irrep(cat.even_irreps[i], label.l, ctx, seed, tol);
      const InvariantInner inner = unitarize(arep.even);
      CatalogEntry entry;
      entry.s = structure_from_inner(arep, inner, tol);
      entry.s.B0 /= spectral_norm(entry.s.B0);
      entry.label = label;
      entry.amb0 = arep.J0;
      const int d = cat.even_irreps[i].dim;
      switch (label.l) {
        case LType::R: entry.block_dims = {d}; break;
        case LType::H: entry.block_dims = {d, d}; break;
        case LType::C:
          entry.block_dims = {d, cat.even_irreps[label.partner_simple].dim};
          break;
      }
      cat.entries.push_back(std::move(entry));
    }
    return cat;
  }

  // Hermitian theory: one entry per hat-irreducible, built through the
  // invariant-inner formula; Type1 partners carry opposite forms.
  cat.hat_irreps = irreducibles(ctx->hat, seed, tol);
  const int nhat = static_cast<int>(cat.hat_irreps.size());
  std::vector<Character> hat_chars;
  hat_chars.reserve(nhat);
  for (const auto& r : cat.hat_irreps) hat_chars.push_back(character_of(r));
  auto pi_partner = [&](int i) {
    Character twisted = hat_chars[i];
    for (int g = 0; g < ctx->hat->order; ++g) {
      twisted.values[g] *= static_cast<double>(ctx->parity(g));
    }
    for (int j = 0; j < nhat; ++j) {
      if (characters_equal(hat_chars[j], twisted)) return j;
    }
    fail_numeric("irreducible_catalog: pi-twisted module not found");
  };

  for (int i = 0; i < nhat; ++i) {
    const int partner = pi_partner(i);
    if (partner < i) {
      // Second member of a Type1 pair: the exact sign flip on the same
      // carrier (V tensor pi negates the odd action, hence the form).
      CatalogEntry entry = cat.entries[partner];
      entry.s.B0 = -entry.s.B0;
      entry.amb0 = -entry.amb0;
      entry.hat_irrep = i;
      entry.partner_entry = partner;
      cat.entries.push_back(std::move(entry));
      continue;
    }
    const Rep& V = cat.hat_irreps[i];
    const InvariantInner inner = unitarize(restrict_rep(V, *ctx));
    CatalogEntry entry;
    entry.s = structure_from_inner(V, ctx, inner, tol);
    entry.hat_irrep = i;
    entry.partner_entry = partner;
    entry.amb0 = V.mats[ctx->w0];

    // Identify the carrier blocks among the even simples.
    const Character rchi = character_of(entry.s.even);
    int first = -1;
    for (int k = 0; k < nsimple; ++k) {
      const Complex m = char_inner(rchi, character_of(cat.even_irreps[k]));
      if (std::abs(m) > 0.5) {
        first = k;
        break;
      }
    }
    if (first < 0) fail_numeric("irreducible_catalog: carrier not identified");
    entry.label = cat.simple_labels[first];
    entry.label.theory = Theory::H;

    if (entry.label.h == HType::Type2) {
      // Put the carrier into explicit block form W + (w.W), the W named by
      // the label first.
      auto pieces = detail::split_irreducible(entry.s.even, seed, tol);
      if (pieces.size() != 2) {
        fail_numeric("irreducible_catalog: Type2 carrier did not split in two");
      }
      const Character want_first =
          character_of(cat.even_irreps[entry.label.carrier_simples[0]]);
      if (!characters_equal(character_of(pieces[0].second), want_first)) {
        std::swap(pieces[0], pieces[1]);
      }
      CMatrix S(entry.s.even.dim, entry.s.even.dim);
      S << pieces[0].first, pieces[1].first;
      entry.s = detail::conjugate_structure(entry.s, S, tol);
      entry.amb0 = S.inverse() * entry.amb0 * S;
      entry.block_dims = {static_cast<int>(pieces[0].first.cols()),
                          static_cast<int>(pieces[1].first.cols())};
    } else {
      entry.block_dims = {entry.s.even.dim};
    }
    cat.entries.push_back(std::move(entry));
  }

  // Resolve partner links from hat indices to entry indices (identity here,
  // one entry per hat irrep) and fix Type1 signs.
  for (int e = 0; e < nhat; ++e) {
    CatalogEntry& entry = cat.entries[e];
    entry.s.B0 /= spectral_norm(entry.s.B0);
    if (entry.label.h != HType::Type1) {
      entry.label.sign = 0;
      continue;
    }
    entry.label.sign = herm_diag_sign(entry.s.B0);
  }
  for (int e = 0; e < nhat; ++e) {
    CatalogEntry& entry = cat.entries[e];
    if (entry.label.h != HType::Type1) continue;
    if (entry.label.sign == 0) {
      // No resolvable diagonal: the earlier pair member is "+" by convention.
      entry.label.sign = e < entry.partner_entry ? 1 : -1;
    }
  }
  return cat;
}

MorphismResult morphism_test(const CMatrix& f, const GradedFormRep& V,
                             const GradedFormRep& W, const Tol& tol) {
  if (V.theory != W.theory) fail_validation("morphism_test: theory mismatch");
  if (f.rows() != W.dim() || f.cols() != V.dim()) {
    fail_validation("morphism_test: shape mismatch");
  }
  MorphismResult out;
  double res = 0.0;
  for (size_t g = 0; g < V.even.mats.size(); ++g) {
    res = std::max(res, rel_residual(f * V.even.mats[g], W.even.mats[g] * f));
  }
  const Involution invol = V.involution();
  for (int w : V.ctx->odd) {
    res = std::max(
        res, rel_residual(f.transpose() * W.B(w) * sigma_of(f, invol), V.B(w)));
  }
  out.residual = res;
  out.ok = res <= std::max(tol.residual * 100.0, 1e-8);
  out.bijective = f.rows() == f.cols() && is_invertible(f, tol);
  return out;
}

MorphismResult morphism_test(const CMatrix& f, const ARep& V, const ARep& W,
                             const Tol& tol) {
  if (f.rows() != W.dim() || f.cols() != V.dim()) {
    fail_validation("morphism_test: shape mismatch");
  }
  MorphismResult out;
  double res = 0.0;
  for (size_t g = 0; g < V.even.mats.size(); ++g) {
    res = std::max(res, rel_residual(f * V.even.mats[g], W.even.mats[g] * f));
  }
  for (int w : V.ctx->odd) {
    res = std::max(res, rel_residual(f * V.J(w), W.J(w) * f.conjugate()));
  }
  out.residual = res;
  out.ok = res <= std::max(tol.residual * 100.0, 1e-8);
  out.bijective = f.rows() == f.cols() && is_invertible(f, tol);
  return out;
}

namespace detail {

std::optional<CMatrix> iso_irreducible(const GradedFormRep& V,
                                       const GradedFormRep& W,
                                       const std::vector<int>& V_block_dims,
                                       const Tol& tol) {
  if (V.dim() != W.dim()) return std::nullopt;
  if (!characters_equal(character_of(V.even), character_of(W.even))) {
    return std::nullopt;
  }
  const auto homs = intertwiner_basis(V.even, W.even, tol);
  if (homs.empty()) return std::nullopt;
  const CMatrix f0 = invertible_combination(homs, 0xC0FFEEULL, tol);
  const Involution invol = V.involution();
  const CMatrix pull = f0.transpose() * W.B0 * sigma_of(f0, invol);

  CMatrix T;
  if (V.theory == Theory::L) {
    double res = 0.0;
    const Complex alpha = proportionality(pull, V.B0, &res);
    if (res > 1e-6 || std::abs(alpha) == 0.0) {
      fail_numeric("iso_irreducible: pulled-back form is not proportional");
    }
    T = f0 / principal_sqrt(alpha);
  } else if (V_block_dims.size() <= 1) {
    // Hermitian, simple carrier: real proportionality, sign obstruction.
    double res = 0.0;
    const Complex alpha = proportionality(pull, V.B0, &res);
    if (res > 1e-6 || std::abs(alpha) == 0.0) {
      fail_numeric("iso_irreducible: pulled-back form is not proportional");
    }
    if (std::abs(alpha.imag()) > kIntegerGap * std::abs(alpha)) {
      fail_numeric("iso_irreducible: hermitian ratio is not real");
    }
    if (alpha.real() < 0) return std::nullopt;
    T = f0 / std::sqrt(alpha.real());
  } else {
    // Hermitian, two-block carrier: match the (2,1) pairing block, the (1,2)
    // block follows from the w-hermitian symmetry.
    const int d1 = V_block_dims[0];
    const int d2 = V_block_dims[1];
    double res = 0.0;
    const Complex c = proportionality(pull.block(d1, 0, d2, d1),
                                      V.B0.block(d1, 0, d2, d1), &res);
    if (res > 1e-6 || std::abs(c) == 0.0) {
      fail_numeric("iso_irreducible: pairing block is not proportional");
    }
    CMatrix D = CMatrix::Identity(V.dim(), V.dim());
    D.block(d1, d1, d2, d2) *= 1.0 / c;
    T = f0 * D;
  }
  const auto check = morphism_test(T, V, W, tol);
  if (!check.ok || !check.bijective) {
    fail_numeric("iso_irreducible: constructed map fails the morphism test");
  }
  return T;
}

}  // namespace detail

}  // namespace realrep
