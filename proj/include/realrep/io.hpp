#ifndef REALREP_IO_HPP
#define REALREP_IO_HPP

#include <string>

#include <json.hpp>

#include "realrep/graded.hpp"

namespace realrep {

using Json = nlohmann::json;

// Complex numbers serialize as two-element arrays [re, im] at full double
// precision; matrices as row-major arrays of pairs.

Json complex_to_json(const Complex& z);
Complex complex_from_json(const Json& j);
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j, int rows, int cols);

// Group file: fields `order`, `mul` (row-major), optional `parity`, optional
// `name`.
Json group_to_json(const GroupTable& t);
Json graded_group_to_json(const GradedGroup& gg);
GroupTable group_from_json(const Json& j);
// Parity is required here.
GradedGroup graded_group_from_json(const Json& j);

// Rep file: `group` (inline object or name string), `dim`, `mats`.
Json rep_to_json(const Rep& r);
Rep rep_from_json(const Json& j);

// Graded-structure file: `theory` in {A, L, H}, `group` (with parity), even
// `mats` in increasing even hat-index order, and `J` or `B` blocks for odd
// elements in increasing odd hat-index order.
struct LoadedStructure {
  Theory theory = Theory::L;
  ContextPtr ctx;
  ARep a;           // valid when theory == A
  GradedFormRep s;  // valid when theory != A
  // Max deviation of the odd blocks in the file from the family derived from
  // the w0 block (zero for files we wrote).
  double family_residual = 0.0;

  int dim() const { return theory == Theory::A ? a.dim() : s.dim(); }
};

Json structure_to_json(const GradedFormRep& s);
Json structure_to_json(const ARep& a);
LoadedStructure structure_from_json(const Json& j);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace realrep

#endif
