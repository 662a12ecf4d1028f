#include "realrep.h"

#include <cstring>
#include <string>

#include "realrep/commands.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

rr_status status_of(const realrep::Error& e) {
  switch (e.kind()) {
    case realrep::ErrorKind::validation: return RR_ERR_VALIDATION;
    case realrep::ErrorKind::numeric: return RR_ERR_NUMERIC;
    case realrep::ErrorKind::io: return RR_ERR_IO;
  }
  return RR_ERR_NUMERIC;
}

realrep::Tol tol_of(const rr_options* opt) {
  realrep::Tol tol;
  if (opt) {
    if (opt->tol_residual > 0) tol.residual = opt->tol_residual;
    if (opt->tol_rank > 0) tol.rank_cut = opt->tol_rank;
  }
  return tol;
}

template <typename Fn>
rr_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const realrep::Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RR_ERR_NUMERIC;
  }
}

}  // namespace

struct rr_group {
  realrep::GroupTable table;
  std::vector<realrep::Grading> gradings;
};

struct rr_structure {
  realrep::LoadedStructure loaded;
};

extern "C" {

const char* rr_version(void) { return "realrep 1.0.0"; }

const char* rr_last_error(void) { return g_last_error.c_str(); }

void rr_options_init(rr_options* opt) {
  if (!opt) return;
  opt->grading = 0;
  opt->theory = 0;
  opt->seed = 1;
  opt->tol_residual = -1.0;
  opt->tol_rank = -1.0;
  opt->json_format = 0;
}

void rr_string_free(char* s) { delete[] s; }

rr_status rr_group_create_named(const char* name, rr_group** out) {
  if (!name || !out) {
    g_last_error = "null argument";
    return RR_ERR_ARGUMENT;
  }
  return guarded([&]() {
    auto g = std::make_unique<rr_group>();
    g->table = realrep::make_named(name);
    g->gradings = realrep::find_gradings(g->table);
    *out = g.release();
    return RR_OK;
  });
}

rr_status rr_group_create_from_json(const char* json_text, rr_group** out) {
  if (!json_text || !out) {
    g_last_error = "null argument";
    return RR_ERR_ARGUMENT;
  }
  return guarded([&]() {
    realrep::Json parsed;
    try {
      parsed = realrep::Json::parse(json_text);
    } catch (const realrep::Json::exception& e) {
      realrep::fail_io(std::string("cannot parse group JSON: ") + e.what());
    }
    auto g = std::make_unique<rr_group>();
    g->table = realrep::group_from_json(parsed);
    g->gradings = realrep::find_gradings(g->table);
    *out = g.release();
    return RR_OK;
  });
}

void rr_group_destroy(rr_group* g) { delete g; }

int32_t rr_group_order(const rr_group* g) { return g ? g->table.order : -1; }

int32_t rr_group_grading_count(const rr_group* g) {
  return g ? static_cast<int32_t>(g->gradings.size()) : -1;
}

rr_status rr_group_to_json(const rr_group* g, char** json_out) {
  if (!g || !json_out) {
    g_last_error = "null argument";
    return RR_ERR_ARGUMENT;
  }
  return guarded([&]() {
    *json_out = dup_string(realrep::group_to_json(g->table).dump(2));
    return RR_OK;
  });
}

rr_status rr_structure_create_from_json(const char* json_text,
                                        rr_structure** out) {
  if (!json_text || !out) {
    g_last_error = "null argument";
    return RR_ERR_ARGUMENT;
  }
  return guarded([&]() {
    realrep::Json parsed;
    try {
      parsed = realrep::Json::parse(json_text);
    } catch (const realrep::Json::exception& e) {
      realrep::fail_io(std::string("cannot parse structure JSON: ") + e.what());
    }
    auto s = std::make_unique<rr_structure>();
    s->loaded = realrep::structure_from_json(parsed);
    *out = s.release();
    return RR_OK;
  });
}

void rr_structure_destroy(rr_structure* s) { delete s; }

int32_t rr_structure_dim(const rr_structure* s) {
  return s ? s->loaded.dim() : -1;
}

char rr_structure_theory(const rr_structure* s) {
  if (!s) return 0;
  switch (s->loaded.theory) {
    case realrep::Theory::A: return 'A';
    case realrep::Theory::L: return 'L';
    case realrep::Theory::H: return 'H';
  }
  return 0;
}

namespace {

rr_status run_group_command(const char* command, const rr_group* g,
                            const rr_options* opt, char** report_out) {
  if (!g || !report_out) {
    g_last_error = "null argument";
    return RR_ERR_ARGUMENT;
  }
  return guarded([&]() -> rr_status {
    const realrep::Tol tol = tol_of(opt);
    const std::uint64_t seed = opt ? opt->seed : 1;
    const int grading = opt ? opt->grading : 0;
    realrep::Json report;
    if (std::string(command) == "irreps") {
      realrep::ContextPtr ctx;
      if (!g->gradings.empty() && grading >= 0 &&
          grading < static_cast<int>(g->gradings.size())) {
        ctx = realrep::make_context(
            realrep::GradedGroup{g->table, g->gradings[grading]});
      }
      report = realrep::irreps_report(g->table, ctx, seed, tol);
      report["grading"] = ctx ? realrep::Json(grading) : realrep::Json();
    } else {
      if (g->gradings.empty()) {
        realrep::fail_validation("group admits no grading");
      }
      if (grading < 0 || grading >= static_cast<int>(g->gradings.size())) {
        realrep::fail_validation("grading index out of range");
      }
      auto ctx = realrep::make_context(
          realrep::GradedGroup{g->table, g->gradings[grading]});
      const std::string cmd(command);
      if (cmd == "catalog") {
        const char t = opt && opt->theory ? opt->theory : 'L';
        realrep::Theory theory = t == 'A'   ? realrep::Theory::A
                                 : t == 'H' ? realrep::Theory::H
                                            : realrep::Theory::L;
        report = realrep::catalog_report(
            ctx, theory, seed, tol, static_cast<int>(g->gradings.size()));
      } else if (cmd == "classify") {
        report = realrep::classify_report(ctx, seed, tol);
      } else if (cmd == "census") {
        report = realrep::census_report(ctx, seed, tol);
      } else if (cmd == "tables") {
        report = realrep::tables_report(ctx, seed, tol);
      } else {
        realrep::fail_validation("unknown command");
      }
      report["grading"] = grading;
    }
    report["command"] = command;
    report["group"] = g->table.name;
    report["seed"] = seed;
    report["tolerances"] =
        realrep::Json{{"residual", tol.residual}, {"rank_cut", tol.rank_cut}};
    const bool pass = report.value("pass", false);
    const std::string rendered = (opt && opt->json_format)
                                     ? report.dump(2) + "\n"
                                     : realrep::render_text(report);
    *report_out = dup_string(rendered);
    if (!pass) {
      g_last_error = "report checks failed";
      return RR_ERR_VALIDATION;
    }
    return RR_OK;
  });
}

rr_status run_structure_command(const char* command, const rr_structure* s,
                                const rr_options* opt, char** report_out) {
  if (!s || !report_out) {
    g_last_error = "null argument";
    return RR_ERR_ARGUMENT;
  }
  return guarded([&]() -> rr_status {
    const realrep::Tol tol = tol_of(opt);
    const std::uint64_t seed = opt ? opt->seed : 1;
    realrep::Json report;
    if (std::string(command) == "verify") {
      report = realrep::verify_report(s->loaded, tol);
    } else {
      report = realrep::decompose_report(s->loaded, seed, tol);
    }
    report["command"] = command;
    report["group"] = s->loaded.ctx->gg.table.name;
    report["grading"] = realrep::Json();
    report["seed"] = seed;
    report["tolerances"] =
        realrep::Json{{"residual", tol.residual}, {"rank_cut", tol.rank_cut}};
    const bool pass = report.value("pass", false);
    const std::string rendered = (opt && opt->json_format)
                                     ? report.dump(2) + "\n"
                                     : realrep::render_text(report);
    *report_out = dup_string(rendered);
    if (!pass) {
      g_last_error = "report checks failed";
      return RR_ERR_VALIDATION;
    }
    return RR_OK;
  });
}

}  // namespace

rr_status rr_run_catalog(const rr_group* g, const rr_options* opt,
                         char** report_out) {
  return run_group_command("catalog", g, opt, report_out);
}

rr_status rr_run_classify(const rr_group* g, const rr_options* opt,
                          char** report_out) {
  return run_group_command("classify", g, opt, report_out);
}

rr_status rr_run_irreps(const rr_group* g, const rr_options* opt,
                        char** report_out) {
  return run_group_command("irreps", g, opt, report_out);
}

rr_status rr_run_census(const rr_group* g, const rr_options* opt,
                        char** report_out) {
  return run_group_command("census", g, opt, report_out);
}

rr_status rr_run_tables(const rr_group* g, const rr_options* opt,
                        char** report_out) {
  return run_group_command("tables", g, opt, report_out);
}

rr_status rr_run_verify(const rr_structure* s, const rr_options* opt,
                        char** report_out) {
  return run_structure_command("verify", s, opt, report_out);
}

rr_status rr_run_decompose(const rr_structure* s, const rr_options* opt,
                           char** report_out) {
  return run_structure_command("decompose", s, opt, report_out);
}

}  // extern "C"
