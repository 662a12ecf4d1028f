#ifndef REALREP_COMMANDS_HPP
#define REALREP_COMMANDS_HPP

#include <cstdint>
#include <string>

#include "realrep/io.hpp"
#include "realrep/structure.hpp"

namespace realrep {

// One CLI invocation. `group` is a built-in name (e.g. "q8", "c2xc4") or a
// path to a group file; `structure_file` feeds verify/decompose.
struct RunConfig {
  std::string command;
  std::string group;
  std::string structure_file;
  int grading = 0;
  char theory = 'L';  // A | L | H
  std::uint64_t seed = 1;
  Tol tol;
  std::string format = "text";  // text | json
  std::string out;              // optional output file
};

struct RunResult {
  int exit_code = 0;    // 0 ok, 1 validation, 2 numeric, 3 io/parse
  std::string output;   // rendered report
  std::string error;    // diagnostics (empty on success)
};

// Executes a command; never throws. Identical configs (including seed)
// produce byte-identical JSON reports.
RunResult run_command(const RunConfig& cfg);

// Report builders, exposed for tests and the C API.
Json catalog_report(ContextPtr ctx, Theory theory, std::uint64_t seed,
                    const Tol& tol, int gradings_available);
Json classify_report(ContextPtr ctx, std::uint64_t seed, const Tol& tol);
Json irreps_report(const GroupTable& table, const ContextPtr& ctx_or_null,
                   std::uint64_t seed, const Tol& tol);
Json census_report(ContextPtr ctx, std::uint64_t seed, const Tol& tol);
Json tables_report(ContextPtr ctx, std::uint64_t seed, const Tol& tol);
Json verify_report(const LoadedStructure& s, const Tol& tol);
Json decompose_report(const LoadedStructure& s, std::uint64_t seed,
                      const Tol& tol);

std::string render_text(const Json& report);

}  // namespace realrep

#endif
