#include "realrep/rep.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace realrep {

int Character::dim() const {
  const double d = values.empty() ? 0.0 : values[0].real();
  return static_cast<int>(round_integer(d, "character dimension"));
}

double validate_rep(const Rep& r, const Tol& tol) {
  const GroupTable& t = *r.group;
  if (r.mats.size() != static_cast<size_t>(t.order)) {
    fail_validation("rep: one matrix per group element required");
  }
  for (const auto& m : r.mats) {
    if (m.rows() != r.dim || m.cols() != r.dim) {
      fail_validation("rep: matrix shape mismatch");
    }
    if (!m.allFinite()) fail_validation("rep: non-finite entries");
  }
  double res = (r.mats[0] - CMatrix::Identity(r.dim, r.dim)).cwiseAbs().maxCoeff();
  for (int a = 0; a < t.order; ++a) {
    for (int b = 0; b < t.order; ++b) {
      const double d =
          (r.mats[a] * r.mats[b] - r.mats[t.at(a, b)]).cwiseAbs().maxCoeff();
      res = std::max(res, d);
    }
  }
  for (int g = 0; g < t.order; ++g) {
    if (!is_invertible(r.mats[g], tol)) {
      fail_validation("rep: singular matrix at element " + std::to_string(g));
    }
  }
  return res;
}

Rep regular_rep(std::shared_ptr<const GroupTable> g) {
  Rep r;
  r.group = std::move(g);
  const GroupTable& t = *r.group;
  r.dim = t.order;
  r.mats.resize(t.order);
  for (int a = 0; a < t.order; ++a) {
    CMatrix m = CMatrix::Zero(t.order, t.order);
    for (int x = 0; x < t.order; ++x) m(t.at(a, x), x) = 1.0;
    r.mats[a] = std::move(m);
  }
  return r;
}

Character character_of(const Rep& r) {
  Character c;
  c.values.reserve(r.mats.size());
  for (const auto& m : r.mats) c.values.push_back(m.trace());
  return c;
}

Complex char_inner(const Character& c1, const Character& c2) {
  if (c1.values.size() != c2.values.size()) {
    fail_validation("char_inner: length mismatch");
  }
  Complex s = 0.0;
  for (size_t g = 0; g < c1.values.size(); ++g) {
    s += c1.values[g] * std::conj(c2.values[g]);
  }
  return s / static_cast<double>(c1.values.size());
}

bool characters_equal(const Character& c1, const Character& c2, double tol) {
  if (c1.values.size() != c2.values.size()) return false;
  for (size_t g = 0; g < c1.values.size(); ++g) {
    if (std::abs(c1.values[g] - c2.values[g]) > tol) return false;
  }
  return true;
}

bool is_irreducible(const Rep& r, const Tol&) {
  const Character c = character_of(r);
  return std::abs(char_inner(c, c) - Complex(1.0, 0.0)) < kIntegerGap;
}

namespace detail {

bool char_order(const Character& a, const Character& b) {
  auto key = [](const Character& c) {
    std::vector<std::pair<long long, long long>> k;
    k.reserve(c.values.size() + 1);
    k.emplace_back(std::llround(c.values[0].real()), 0);
    for (const auto& v : c.values) {
      k.emplace_back(std::llround(v.real() * 1e8), std::llround(v.imag() * 1e8));
    }
    return k;
  };
  return key(a) < key(b);
}

CMatrix invertible_combination(const std::vector<CMatrix>& basis,
                               std::uint64_t seed, const Tol& tol) {
  if (basis.empty()) fail_numeric("invertible_combination: empty basis");
  Rng rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    CMatrix f = CMatrix::Zero(basis[0].rows(), basis[0].cols());
    for (const auto& b : basis) f += rng.cgaussian() * b;
    if (f.rows() == f.cols() && is_invertible(f, tol)) return f;
  }
  fail_numeric("invertible_combination: no invertible element found");
}

namespace {

// Restriction of r to an invariant subspace with orthonormal basis U.
Rep restrict_to(const Rep& r, const CMatrix& U) {
  Rep s;
  s.group = r.group;
  s.dim = static_cast<int>(U.cols());
  s.mats.reserve(r.mats.size());
  for (const auto& m : r.mats) s.mats.push_back(U.adjoint() * m * U);
  return s;
}

void split_rec(const Rep& unitary, const CMatrix& basis, Rng& rng,
               const Tol& tol, int depth,
               std::vector<std::pair<CMatrix, Rep>>& out) {
  const Rep sub = restrict_to(unitary, basis);
  if (is_irreducible(sub, tol)) {
    out.emplace_back(basis, sub);
    return;
  }
  if (depth > 32) fail_numeric("split_irreducible: recursion limit reached");
  const int d = sub.dim;
  const GroupTable& t = *sub.group;
  for (int attempt = 0; attempt < 8; ++attempt) {
    // Random Hermitian element of the commutant.
    const CMatrix Q = rng.hermitian(d);
    CMatrix T = CMatrix::Zero(d, d);
    for (int g = 0; g < t.order; ++g) {
      T += sub.mats[g] * Q * sub.mats[g].adjoint();
    }
    T /= static_cast<double>(t.order);
    auto [vals, vecs] = hermitian_eig(T, tol);
    // Group eigenvalues into clusters separated by a relative gap.
    const double scale = std::max(1.0, std::abs(vals(d - 1) - vals(0)));
    std::vector<std::pair<int, int>> clusters;  // [begin, end)
    int begin = 0;
    for (int i = 1; i <= d; ++i) {
      if (i == d || vals(i) - vals(i - 1) > 1e-6 * scale) {
        clusters.emplace_back(begin, i);
        begin = i;
      }
    }
    if (clusters.size() < 2) continue;
    for (const auto& [lo, hi] : clusters) {
      const CMatrix block = vecs.middleCols(lo, hi - lo);
      split_rec(unitary, basis * block, rng, tol, depth + 1, out);
    }
    return;
  }
  fail_numeric("split_irreducible: eigenvalue splitting failed to converge");
}

}  // namespace

std::vector<std::pair<CMatrix, Rep>> split_irreducible(const Rep& r,
                                                       std::uint64_t seed,
                                                       const Tol& tol) {
  // Work in coordinates where the representation is unitary.
  const InvariantInner inner = unitarize(r);
  const CMatrix S = herm_power(inner.H, 0.5, tol);
  const CMatrix Sinv = herm_power(inner.H, -0.5, tol);
  Rep unitary;
  unitary.group = r.group;
  unitary.dim = r.dim;
  unitary.mats.reserve(r.mats.size());
  for (const auto& m : r.mats) unitary.mats.push_back(S * m * Sinv);

  Rng rng(seed);
  std::vector<std::pair<CMatrix, Rep>> pieces;
  split_rec(unitary, CMatrix::Identity(r.dim, r.dim), rng, tol, 0, pieces);
  // Back to the original coordinates; re-orthonormalize for conditioning.
  std::vector<std::pair<CMatrix, Rep>> out;
  out.reserve(pieces.size());
  for (auto& [basis, subrep] : pieces) {
    CMatrix B = orthonormalize(Sinv * basis, nullptr, tol);
    out.emplace_back(B, restrict_to(r, B));
  }
  return out;
}

}  // namespace detail

std::vector<Rep> irreducibles(std::shared_ptr<const GroupTable> g,
                              std::uint64_t seed, const Tol& tol) {
  const Rep reg = regular_rep(g);
  Rng seeds(seed);
  for (int attempt = 0; attempt < 8; ++attempt) {
    auto pieces = detail::split_irreducible(reg, seeds.next_seed(), tol);
    std::vector<Rep> irreps;
    std::vector<Character> chars;
    for (auto& [basis, sub] : pieces) {
      const Character c = character_of(sub);
      bool known = false;
      for (const auto& seen : chars) {
        if (characters_equal(seen, c)) {
          known = true;
          break;
        }
      }
      if (!known) {
        chars.push_back(c);
        irreps.push_back(std::move(sub));
      }
    }
    long dimsq = 0;
    for (const auto& r : irreps) dimsq += static_cast<long>(r.dim) * r.dim;
    if (dimsq != g->order) continue;  // splitting collided; retry
    std::sort(irreps.begin(), irreps.end(), [](const Rep& a, const Rep& b) {
      return detail::char_order(character_of(a), character_of(b));
    });
    return irreps;
  }
  fail_numeric("irreducibles: randomized splitting did not converge");
}

IsoDecomp decompose(const Rep& r, const std::vector<Rep>& catalog,
                    std::uint64_t seed, const Tol& tol) {
  const Character chi = character_of(r);
  std::vector<Character> cat_chars;
  cat_chars.reserve(catalog.size());
  long total = 0;
  std::vector<int> mults(catalog.size(), 0);
  for (size_t i = 0; i < catalog.size(); ++i) {
    cat_chars.push_back(character_of(catalog[i]));
    const Complex m = char_inner(chi, cat_chars.back());
    if (std::abs(m.imag()) > kIntegerGap) {
      fail_numeric("decompose: non-real multiplicity");
    }
    mults[i] = static_cast<int>(round_integer(m.real(), "multiplicity"));
    if (mults[i] < 0) fail_numeric("decompose: negative multiplicity");
    total += static_cast<long>(mults[i]) * catalog[i].dim;
  }
  if (total != r.dim) {
    fail_numeric("decompose: catalog is incomplete for this representation");
  }

  auto pieces = detail::split_irreducible(r, seed, tol);
  IsoDecomp out;
  std::map<int, std::vector<const std::pair<CMatrix, Rep>*>> by_irrep;
  for (const auto& piece : pieces) {
    const Character c = character_of(piece.second);
    int match = -1;
    for (size_t i = 0; i < catalog.size(); ++i) {
      if (characters_equal(c, cat_chars[i])) {
        match = static_cast<int>(i);
        break;
      }
    }
    if (match < 0) fail_numeric("decompose: piece not found in catalog");
    by_irrep[match].push_back(&piece);
  }
  Rng rng(seed ^ 0x5bd1e995u);
  for (auto& [idx, list] : by_irrep) {
    IsoDecomp::Part part;
    part.irrep = idx;
    part.multiplicity = static_cast<int>(list.size());
    if (part.multiplicity != mults[idx]) {
      fail_numeric("decompose: splitting disagrees with character multiplicities");
    }
    const int d = catalog[idx].dim;
    part.embedding.resize(r.dim, static_cast<Eigen::Index>(list.size()) * d);
    for (size_t k = 0; k < list.size(); ++k) {
      // Intertwiner from the catalog representative into the piece.
      const auto basis = intertwiner_basis(catalog[idx], list[k]->second, tol);
      const CMatrix f = detail::invertible_combination(basis, rng.next_seed(), tol);
      part.embedding.middleCols(static_cast<Eigen::Index>(k) * d, d) =
          list[k]->first * f;
    }
    out.parts.push_back(std::move(part));
  }
  return out;
}

std::vector<CMatrix> intertwiner_basis(const Rep& V, const Rep& W,
                                       const Tol& tol) {
  if (V.group->order != W.group->order) {
    fail_validation("intertwiner_basis: representations of different groups");
  }
  const auto gens = V.group->generators();
  const int dv = V.dim;
  const int dw = W.dim;
  const int unknowns = dv * dw;
  const int rows = std::max<int>(1, static_cast<int>(gens.size())) * unknowns;
  CMatrix A = CMatrix::Zero(rows, unknowns);
  // vec(f M_V(g) - M_W(g) f) = (M_V(g)^T kron I - I kron M_W(g)) vec(f),
  // with column-major vec.
  int row0 = 0;
  for (int g : gens) {
    const CMatrix& mv = V.mats[g];
    const CMatrix& mw = W.mats[g];
    for (int j = 0; j < dv; ++j) {
      for (int l = 0; l < dv; ++l) {
        for (int i = 0; i < dw; ++i) {
          A(row0 + j * dw + i, l * dw + i) += mv(l, j);
        }
      }
      for (int i = 0; i < dw; ++i) {
        for (int k = 0; k < dw; ++k) {
          A(row0 + j * dw + i, j * dw + k) -= mw(i, k);
        }
      }
    }
    row0 += unknowns;
  }
  const CMatrix null = nullspace(A, tol);
  std::vector<CMatrix> out;
  out.reserve(null.cols());
  for (int c = 0; c < null.cols(); ++c) {
    CMatrix f(dw, dv);
    for (int j = 0; j < dv; ++j) f.col(j) = null.col(c).segment(j * dw, dw);
    out.push_back(std::move(f));
  }
  return out;
}

Rep transform_conjugate(const Rep& r) {
  Rep s = r;
  for (auto& m : s.mats) m = m.conjugate();
  return s;
}

Rep transform_dual(const Rep& r) {
  Rep s;
  s.group = r.group;
  s.dim = r.dim;
  s.mats.resize(r.mats.size());
  for (int g = 0; g < r.group->order; ++g) {
    s.mats[g] = r.mats[r.group->inverse(g)].transpose();
  }
  return s;
}

Rep transform_twist(const Rep& r, const GradedContext& ctx, int w) {
  if (ctx.parity(w) != -1) fail_validation("twist: element must be odd");
  if (r.group.get() != ctx.even.get() && r.group->order != ctx.even->order) {
    fail_validation("twist: representation must be of the even kernel");
  }
  Rep s;
  s.group = r.group;
  s.dim = r.dim;
  s.mats.resize(r.mats.size());
  for (int g = 0; g < ctx.even->order; ++g) {
    const int hat_g = ctx.even_to_hat[g];
    const int twisted = ctx.gg.table.conjugate(w, hat_g);
    s.mats[g] = r.mats[ctx.even_index(twisted)];
  }
  return s;
}

Rep transform_tensor_sign(const Rep& r, const GradedGroup& gg) {
  if (r.group->order != gg.table.order) {
    fail_validation("tensor_sign: representation must be of the full group");
  }
  Rep s = r;
  for (int g = 0; g < gg.table.order; ++g) {
    s.mats[g] = static_cast<double>(gg.parity(g)) * r.mats[g];
  }
  return s;
}

InvariantInner unitarize(const Rep& r) {
  CMatrix H = CMatrix::Zero(r.dim, r.dim);
  for (const auto& m : r.mats) H += m.adjoint() * m;
  H /= static_cast<double>(r.mats.size());
  return InvariantInner{(H + H.adjoint()) / 2.0};
}

Rep restrict_rep(const Rep& hat_rep, const GradedContext& ctx) {
  if (hat_rep.group->order != ctx.hat->order) {
    fail_validation("restrict: representation must be of the full group");
  }
  Rep s;
  s.group = ctx.even;
  s.dim = hat_rep.dim;
  s.mats.reserve(ctx.even->order);
  for (int g = 0; g < ctx.even->order; ++g) {
    s.mats.push_back(hat_rep.mats[ctx.even_to_hat[g]]);
  }
  return s;
}

Rep induce_rep(const Rep& even_rep, const GradedContext& ctx) {
  if (even_rep.group->order != ctx.even->order) {
    fail_validation("induce: representation must be of the even kernel");
  }
  const int d = even_rep.dim;
  const int w0 = ctx.w0;
  const GroupTable& t = ctx.gg.table;
  Rep s;
  s.group = ctx.hat;
  s.dim = 2 * d;
  s.mats.resize(t.order);
  for (int z = 0; z < t.order; ++z) {
    CMatrix m = CMatrix::Zero(2 * d, 2 * d);
    if (ctx.parity(z) == 1) {
      m.topLeftCorner(d, d) = even_rep.mats[ctx.even_index(z)];
      m.bottomRightCorner(d, d) =
          even_rep.mats[ctx.even_index(t.at(t.at(t.inverse(w0), z), w0))];
    } else {
      m.topRightCorner(d, d) = even_rep.mats[ctx.even_index(t.at(z, w0))];
      m.bottomLeftCorner(d, d) =
          even_rep.mats[ctx.even_index(t.at(t.inverse(w0), z))];
    }
    s.mats[z] = std::move(m);
  }
  return s;
}

}  // namespace realrep
