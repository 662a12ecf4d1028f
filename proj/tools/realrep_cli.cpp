// realrep command line: classification, decomposition and verification of
// Real representations of C2-graded groups, through the C API.
//
// Commands:
//   catalog    - irreducible L/H/A structures with type labels
//   classify   - type of every simple even-kernel module + oracle indicator
//   irreps     - plain irreducibles of the group (and even kernel)
//   decompose  - Krull-Remak-Schmidt decomposition of a structure file
//   verify     - coherence residuals of a structure file
//   census     - bijection counts and induction/restriction table
//   tables     - automorphism-group dimension checks

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "realrep.h"

namespace {

int run(const std::string& command, const std::string& group,
        const std::string& structure, const rr_options& opt,
        const std::string& out_path) {
  char* report = nullptr;
  rr_status status = RR_OK;

  if (command == "verify" || command == "decompose") {
    std::ifstream in(structure, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot open structure file: " << structure << "\n";
      return 3;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    rr_structure* s = nullptr;
    status = rr_structure_create_from_json(text.c_str(), &s);
    if (status == RR_OK) {
      status = command == "verify" ? rr_run_verify(s, &opt, &report)
                                   : rr_run_decompose(s, &opt, &report);
    }
    rr_structure_destroy(s);
  } else {
    rr_group* g = nullptr;
    const bool is_path = group.find('.') != std::string::npos ||
                         group.find('/') != std::string::npos;
    if (is_path) {
      std::ifstream in(group, std::ios::binary);
      if (!in) {
        std::cerr << "error: cannot open group file: " << group << "\n";
        return 3;
      }
      std::ostringstream ss;
      ss << in.rdbuf();
      status = rr_group_create_from_json(ss.str().c_str(), &g);
    } else {
      status = rr_group_create_named(group.c_str(), &g);
    }
    if (status == RR_OK) {
      if (command == "catalog") {
        status = rr_run_catalog(g, &opt, &report);
      } else if (command == "classify") {
        status = rr_run_classify(g, &opt, &report);
      } else if (command == "irreps") {
        status = rr_run_irreps(g, &opt, &report);
      } else if (command == "census") {
        status = rr_run_census(g, &opt, &report);
      } else if (command == "tables") {
        status = rr_run_tables(g, &opt, &report);
      }
    }
    rr_group_destroy(g);
  }

  if (report) {
    if (!out_path.empty()) {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        rr_string_free(report);
        return 3;
      }
      out << report;
    } else {
      std::cout << report;
    }
    rr_string_free(report);
  }
  if (status != RR_OK) {
    std::cerr << "error: " << rr_last_error() << "\n";
  }
  switch (status) {
    case RR_OK: return 0;
    case RR_ERR_VALIDATION: return 1;
    case RR_ERR_NUMERIC: return 2;
    case RR_ERR_IO: return 3;
    case RR_ERR_ARGUMENT: return 1;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Real representations of C2-graded groups"};
  app.require_subcommand(1);

  std::string group, structure, theory = "L", format = "text", out;
  int grading = 0;
  std::uint64_t seed = 1;
  double tol = -1.0;

  auto add_common = [&](CLI::App* cmd, bool needs_group) {
    if (needs_group) {
      cmd->add_option("--group", group, "built-in group name or group file")
          ->required();
      cmd->add_option("--grading", grading, "grading index (default 0)");
    } else {
      cmd->add_option("--structure", structure, "structure file (JSON)")
          ->required();
    }
    cmd->add_option("--seed", seed, "seed for randomized algorithms");
    cmd->add_option("--tol", tol, "coherence residual tolerance");
    cmd->add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--out", out, "write the report to a file");
  };

  auto* catalog = app.add_subcommand("catalog", "irreducible structure catalog");
  add_common(catalog, true);
  catalog->add_option("--theory", theory, "A, L or H")
      ->check(CLI::IsMember({"A", "L", "H"}));
  auto* classify = app.add_subcommand("classify", "classify simple modules");
  add_common(classify, true);
  auto* irreps = app.add_subcommand("irreps", "plain irreducibles");
  add_common(irreps, true);
  auto* census = app.add_subcommand("census", "bijection and restriction census");
  add_common(census, true);
  auto* tables = app.add_subcommand("tables", "automorphism dimension tables");
  add_common(tables, true);
  auto* verify = app.add_subcommand("verify", "coherence residuals of a structure");
  add_common(verify, false);
  auto* decompose = app.add_subcommand("decompose", "decompose a structure");
  add_common(decompose, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  rr_options opt;
  rr_options_init(&opt);
  opt.grading = grading;
  opt.theory = theory.empty() ? 'L' : theory[0];
  opt.seed = seed;
  if (tol > 0) opt.tol_residual = tol;
  opt.json_format = format == "json" ? 1 : 0;

  const std::string command = app.get_subcommands().front()->get_name();
  return run(command, group, structure, opt, out);
}
