#include "realrep/group.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace realrep {

namespace {

int checked_order(int order) {
  if (order < 1 || order > kMaxGroupOrder) {
    fail_validation("group order " + std::to_string(order) +
                    " outside supported range [1, " +
                    std::to_string(kMaxGroupOrder) + "]");
  }
  return order;
}

}  // namespace

int GroupTable::element_order(int g) const {
  int n = 1;
  int x = g;
  while (x != 0) {
    x = at(x, g);
    ++n;
    if (n > order) fail_validation("element_order: table is not a group");
  }
  return n;
}

int GroupTable::conjugate(int w, int x) const {
  return at(at(w, x), inv[w]);
}

void GroupTable::validate() const {
  checked_order(order);
  if (mul.size() != static_cast<size_t>(order) * order ||
      inv.size() != static_cast<size_t>(order)) {
    fail_validation("group table: inconsistent sizes");
  }
  for (int v : mul) {
    if (v < 0 || v >= order) fail_validation("group table: entry out of range");
  }
  for (int g = 0; g < order; ++g) {
    if (at(0, g) != g || at(g, 0) != g) {
      fail_validation("group table: element 0 is not the identity");
    }
    if (at(g, inv[g]) != 0 || at(inv[g], g) != 0) {
      fail_validation("group table: bad inverse");
    }
  }
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      for (int c = 0; c < order; ++c) {
        if (at(at(a, b), c) != at(a, at(b, c))) {
          fail_validation("group table: associativity fails");
        }
      }
    }
  }
}

std::vector<int> GroupTable::generators() const {
  std::vector<int> gens;
  std::vector<char> in_closure(order, 0);
  in_closure[0] = 1;
  int closure_size = 1;
  auto grow = [&](int g) {
    // closure of <gens + g> by BFS over products
    std::vector<int> frontier{g};
    if (!in_closure[g]) {
      in_closure[g] = 1;
      ++closure_size;
    }
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int x = 0; x < order; ++x) {
        if (!in_closure[x]) continue;
        for (int f : frontier) {
          for (int p : {at(x, f), at(f, x)}) {
            if (!in_closure[p]) {
              in_closure[p] = 1;
              ++closure_size;
              next.push_back(p);
            }
          }
        }
      }
      frontier = std::move(next);
    }
  };
  for (int g = 1; g < order && closure_size < order; ++g) {
    if (in_closure[g]) continue;
    gens.push_back(g);
    grow(g);
  }
  return gens;
}

std::vector<std::vector<int>> GroupTable::conjugacy_classes() const {
  std::vector<std::vector<int>> classes;
  std::vector<char> seen(order, 0);
  for (int g = 0; g < order; ++g) {
    if (seen[g]) continue;
    std::set<int> cls;
    for (int w = 0; w < order; ++w) cls.insert(conjugate(w, g));
    std::vector<int> v(cls.begin(), cls.end());
    for (int x : v) seen[x] = 1;
    classes.push_back(std::move(v));
  }
  return classes;
}

GroupTable table_from_mul(int order, std::vector<int> mul, std::string name) {
  GroupTable t;
  t.order = checked_order(order);
  t.mul = std::move(mul);
  t.name = std::move(name);
  t.inv.assign(order, -1);
  for (int g = 0; g < order; ++g) {
    for (int h = 0; h < order; ++h) {
      if (t.at(g, h) == 0) {
        t.inv[g] = h;
        break;
      }
    }
    if (t.inv[g] < 0) fail_validation("group table: no inverse for element");
  }
  t.validate();
  return t;
}

namespace {

GroupTable cyclic_group(int n) {
  checked_order(n);
  std::vector<int> mul(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mul[static_cast<size_t>(a) * n + b] = (a + b) % n;
  return table_from_mul(n, std::move(mul), "c" + std::to_string(n));
}

// Order 2n; element (a, b) = r^a s^b at index a + n*b.
GroupTable dihedral_group(int n) {
  const int order = checked_order(2 * n);
  std::vector<int> mul(static_cast<size_t>(order) * order);
  auto idx = [n](int a, int b) { return ((a % n) + n) % n + n * b; };
  for (int a1 = 0; a1 < n; ++a1)
    for (int b1 = 0; b1 < 2; ++b1)
      for (int a2 = 0; a2 < n; ++a2)
        for (int b2 = 0; b2 < 2; ++b2) {
          const int a = b1 ? a1 - a2 : a1 + a2;
          const int b = (b1 + b2) % 2;
          mul[static_cast<size_t>(idx(a1, b1)) * order + idx(a2, b2)] =
              idx(a, b);
        }
  return table_from_mul(order, std::move(mul), "d" + std::to_string(n));
}

// Generalized quaternion group of order 4m: x of order 2m, y^2 = x^m,
// y x y^{-1} = x^{-1}. Element (a, b) = x^a y^b at index a + 2m*b.
GroupTable quaternion_group(int order4m) {
  if (order4m % 4 != 0 || order4m < 8) {
    fail_validation("quaternion group order must be a multiple of 4, >= 8");
  }
  const int m = order4m / 4;
  const int n = 2 * m;
  const int order = checked_order(order4m);
  std::vector<int> mul(static_cast<size_t>(order) * order);
  auto idx = [n](int a, int b) { return ((a % n) + n) % n + n * b; };
  for (int a1 = 0; a1 < n; ++a1)
    for (int b1 = 0; b1 < 2; ++b1)
      for (int a2 = 0; a2 < n; ++a2)
        for (int b2 = 0; b2 < 2; ++b2) {
          int a = b1 ? a1 - a2 : a1 + a2;
          if (b1 == 1 && b2 == 1) a += m;  // y^2 = x^m
          const int b = (b1 + b2) % 2;
          mul[static_cast<size_t>(idx(a1, b1)) * order + idx(a2, b2)] =
              idx(a, b);
        }
  return table_from_mul(order, std::move(mul), "q" + std::to_string(order));
}

GroupTable direct_product(const GroupTable& A, const GroupTable& B) {
  const int order = checked_order(A.order * B.order);
  std::vector<int> mul(static_cast<size_t>(order) * order);
  auto idx = [&](int a, int b) { return a + A.order * b; };
  for (int a1 = 0; a1 < A.order; ++a1)
    for (int b1 = 0; b1 < B.order; ++b1)
      for (int a2 = 0; a2 < A.order; ++a2)
        for (int b2 = 0; b2 < B.order; ++b2) {
          mul[static_cast<size_t>(idx(a1, b1)) * order + idx(a2, b2)] =
              idx(A.at(a1, a2), B.at(b1, b2));
        }
  return table_from_mul(order, std::move(mul), A.name + "x" + B.name);
}

std::string normalize_spec(const std::string& spec) {
  std::string s;
  for (char c : spec) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  return s;
}

GroupTable make_atom(const std::string& atom) {
  auto numeric_suffix = [&](size_t pos) -> int {
    if (pos >= atom.size()) fail_validation("group spec: missing size in '" + atom + "'");
    for (size_t i = pos; i < atom.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(atom[i]))) {
        fail_validation("group spec: malformed '" + atom + "'");
      }
    }
    return std::stoi(atom.substr(pos));
  };
  if (atom == "s3") {
    GroupTable t = from_generators({{1, 2, 0}, {1, 0, 2}});
    t.name = "s3";
    return t;
  }
  if (atom == "s4") {
    GroupTable t = from_generators({{1, 2, 3, 0}, {1, 0, 2, 3}});
    t.name = "s4";
    return t;
  }
  if (atom.rfind("cyclic", 0) == 0) return cyclic_group(numeric_suffix(6));
  if (atom.rfind("dihedral", 0) == 0) {
    const int n = numeric_suffix(8);
    if (n < 2 || n > 16) fail_validation("dihedral n must be in [2, 16]");
    return dihedral_group(n);
  }
  if (atom.rfind("quaternion", 0) == 0) return quaternion_group(numeric_suffix(10));
  if (atom[0] == 'c') {
    const int n = numeric_suffix(1);
    if (n < 1 || n > 32) fail_validation("cyclic n must be in [1, 32]");
    return cyclic_group(n);
  }
  if (atom[0] == 'd') {
    const int n = numeric_suffix(1);
    if (n < 2 || n > 16) fail_validation("dihedral n must be in [2, 16]");
    return dihedral_group(n);
  }
  if (atom[0] == 'q') {
    const int n = numeric_suffix(1);
    if (n != 8 && n != 16) fail_validation("quaternion groups available: q8, q16");
    return quaternion_group(n);
  }
  fail_validation("unknown group spec '" + atom + "'");
}

}  // namespace

GroupTable make_named(const std::string& spec) {
  const std::string s = normalize_spec(spec);
  if (s.empty()) fail_validation("empty group spec");
  std::vector<std::string> atoms;
  size_t start = 0;
  while (true) {
    const size_t pos = s.find('x', start);
    if (pos == std::string::npos) {
      atoms.push_back(s.substr(start));
      break;
    }
    atoms.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  GroupTable result = make_atom(atoms[0]);
  for (size_t i = 1; i < atoms.size(); ++i) {
    result = direct_product(result, make_atom(atoms[i]));
  }
  return result;
}

GroupTable from_generators(const std::vector<std::vector<int>>& perms) {
  size_t npoints = 0;
  for (const auto& p : perms) npoints = std::max(npoints, p.size());
  if (npoints == 0) npoints = 1;
  std::vector<std::vector<int>> gens;
  for (const auto& p : perms) {
    std::vector<int> q(npoints);
    std::vector<char> hit(npoints, 0);
    for (size_t i = 0; i < npoints; ++i) {
      const int img = i < p.size() ? p[i] : static_cast<int>(i);
      if (img < 0 || img >= static_cast<int>(npoints) || hit[img]) {
        fail_validation("from_generators: input is not a permutation");
      }
      hit[img] = 1;
      q[i] = img;
    }
    gens.push_back(std::move(q));
  }
  std::vector<int> identity(npoints);
  for (size_t i = 0; i < npoints; ++i) identity[i] = static_cast<int>(i);

  auto compose = [&](const std::vector<int>& a, const std::vector<int>& b) {
    // (a*b)(i) = a(b(i))
    std::vector<int> c(npoints);
    for (size_t i = 0; i < npoints; ++i) c[i] = a[b[i]];
    return c;
  };

  std::vector<std::vector<int>> elems{identity};
  std::map<std::vector<int>, int> index{{identity, 0}};
  for (size_t head = 0; head < elems.size(); ++head) {
    for (const auto& g : gens) {
      const auto prod = compose(elems[head], g);
      if (!index.count(prod)) {
        if (static_cast<int>(elems.size()) >= kMaxGroupOrder) {
          fail_validation("from_generators: closure exceeds the order bound");
        }
        index[prod] = static_cast<int>(elems.size());
        elems.push_back(prod);
      }
    }
  }
  const int order = static_cast<int>(elems.size());
  std::vector<int> mul(static_cast<size_t>(order) * order);
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      mul[static_cast<size_t>(a) * order + b] = index.at(compose(elems[a], elems[b]));
    }
  }
  return table_from_mul(order, std::move(mul));
}

std::vector<Grading> find_gradings(const GroupTable& table) {
  const int n = table.order;
  if (n % 2 != 0) return {};
  const auto gens = table.generators();
  const int k = static_cast<int>(gens.size());
  std::set<std::vector<int>> found;
  // Assign signs on a generating set, then propagate over the whole group by
  // closure; reject assignments that are inconsistent or non-surjective.
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    std::vector<int> parity(n, 0);
    parity[0] = 1;
    for (int i = 0; i < k; ++i) {
      parity[gens[i]] = (mask >> i) & 1 ? -1 : 1;
    }
    bool ok = true;
    bool grew = true;
    while (grew && ok) {
      grew = false;
      for (int a = 0; a < n && ok; ++a) {
        if (parity[a] == 0) continue;
        for (int b = 0; b < n && ok; ++b) {
          if (parity[b] == 0) continue;
          const int p = parity[a] * parity[b];
          int& slot = parity[table.at(a, b)];
          if (slot == 0) {
            slot = p;
            grew = true;
          } else if (slot != p) {
            ok = false;
          }
        }
      }
    }
    if (!ok) continue;
    int minus = 0;
    bool total = true;
    for (int g = 0; g < n; ++g) {
      if (parity[g] == 0) total = false;
      if (parity[g] == -1) ++minus;
    }
    if (!total || minus != n / 2) continue;
    found.insert(parity);
  }
  std::vector<Grading> out;
  for (const auto& p : found) out.push_back(Grading{p});
  // lexicographic with +1 before -1: sort by vector descending
  std::sort(out.begin(), out.end(), [](const Grading& a, const Grading& b) {
    return a.parity > b.parity;
  });
  return out;
}

std::vector<int> GradedGroup::odd_coset() const {
  std::vector<int> odd;
  for (int g = 0; g < table.order; ++g) {
    if (grading.parity[g] == -1) odd.push_back(g);
  }
  return odd;
}

void GradedGroup::validate() const {
  table.validate();
  if (grading.parity.size() != static_cast<size_t>(table.order)) {
    fail_validation("grading: parity vector has wrong length");
  }
  int minus = 0;
  for (int g = 0; g < table.order; ++g) {
    const int p = grading.parity[g];
    if (p != 1 && p != -1) fail_validation("grading: parity entries must be +-1");
    if (p == -1) ++minus;
    for (int h = 0; h < table.order; ++h) {
      if (grading.parity[table.at(g, h)] != p * grading.parity[h]) {
        fail_validation("grading: parity is not a homomorphism");
      }
    }
  }
  if (minus != table.order / 2) {
    fail_validation("grading: parity is not surjective with index-2 kernel");
  }
}

ContextPtr make_context(GradedGroup gg) {
  gg.validate();
  auto ctx = std::make_shared<GradedContext>();
  ctx->gg = std::move(gg);
  const GroupTable& t = ctx->gg.table;
  ctx->hat = std::make_shared<const GroupTable>(t);
  ctx->hat_to_even.assign(t.order, -1);
  for (int g = 0; g < t.order; ++g) {
    if (ctx->gg.parity(g) == 1) {
      ctx->hat_to_even[g] = static_cast<int>(ctx->even_to_hat.size());
      ctx->even_to_hat.push_back(g);
    } else {
      ctx->odd.push_back(g);
    }
  }
  ctx->w0 = ctx->odd.front();
  const int m = static_cast<int>(ctx->even_to_hat.size());
  std::vector<int> mul(static_cast<size_t>(m) * m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      mul[static_cast<size_t>(a) * m + b] =
          ctx->hat_to_even[t.at(ctx->even_to_hat[a], ctx->even_to_hat[b])];
    }
  }
  GroupTable sub = table_from_mul(m, std::move(mul),
                                  t.name.empty() ? "" : t.name + ".even");
  ctx->even = std::make_shared<const GroupTable>(std::move(sub));
  return ctx;
}

}  // namespace realrep
