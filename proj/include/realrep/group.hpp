#ifndef REALREP_GROUP_HPP
#define REALREP_GROUP_HPP

#include <memory>
#include <string>
#include <vector>

#include "realrep/tol.hpp"

namespace realrep {

inline constexpr int kMaxGroupOrder = 256;

// A finite group given by its full multiplication table. Element 0 is the
// identity. Values are immutable after validation.
struct GroupTable {
  int order = 0;
  std::vector<int> mul;  // row-major order x order
  std::vector<int> inv;
  std::string name;

  int at(int a, int b) const { return mul[static_cast<size_t>(a) * order + b]; }
  int inverse(int a) const { return inv[a]; }
  int element_order(int g) const;
  int conjugate(int w, int x) const;  // w x w^{-1}

  // Exhaustive check of the group axioms; throws on failure.
  void validate() const;

  // A small generating set, found greedily (deterministic).
  std::vector<int> generators() const;

  // Conjugacy classes, each sorted ascending; classes ordered by least element.
  std::vector<std::vector<int>> conjugacy_classes() const;
};

// Builds the table from `inv`-free data: mul only; fills inv and validates.
GroupTable table_from_mul(int order, std::vector<int> mul, std::string name = "");

// Named constructions: "c<n>"/"cyclic <n>", "d<n>"/"dihedral <n>", "q8",
// "q16", "s3", "s4", and 'x'-separated direct products such as "c2xq8".
GroupTable make_named(const std::string& spec);

// Closure of a permutation group; each permutation is the image vector of
// {0..m-1}. Element 0 of the result is the identity.
GroupTable from_generators(const std::vector<std::vector<int>>& perms);

struct Grading {
  std::vector<int> parity;  // entries in {+1, -1}
};

// All surjective homomorphisms to {+-1}, as parity vectors, sorted
// lexicographically (+1 before -1). Empty when no index-2 subgroup exists.
std::vector<Grading> find_gradings(const GroupTable& table);

struct GradedGroup {
  GroupTable table;
  Grading grading;

  int parity(int g) const { return grading.parity[g]; }
  std::vector<int> odd_coset() const;
  void validate() const;
};

// Immutable shared view of a graded group together with its even kernel as a
// standalone table and the index maps between the two labelings.
struct GradedContext {
  GradedGroup gg;
  std::shared_ptr<const GroupTable> hat;   // full group
  std::shared_ptr<const GroupTable> even;  // kernel, re-labeled 0..n/2-1
  std::vector<int> even_to_hat;
  std::vector<int> hat_to_even;  // -1 on odd elements
  std::vector<int> odd;          // odd elements, ascending
  int w0 = -1;                   // first odd element

  int parity(int g) const { return gg.parity(g); }
  // Index in the even kernel table of an even hat-element.
  int even_index(int hat_g) const { return hat_to_even[hat_g]; }
};

using ContextPtr = std::shared_ptr<const GradedContext>;
ContextPtr make_context(GradedGroup gg);

}  // namespace realrep

#endif
