#include "realrep/commands.hpp"

#include <algorithm>
#include <sstream>

namespace realrep {

namespace {

constexpr const char* kConsequenceNote =
    "consequence-level verification: the categorical equivalences are "
    "certified through Lie-algebra dimensions, maximal-compact "
    "identifications and hom-space homogeneity, not re-proved as such";

Json tol_json(const Tol& tol) {
  return Json{{"residual", tol.residual}, {"rank_cut", tol.rank_cut}};
}

Json character_json(const Character& c) {
  Json out = Json::array();
  for (const auto& v : c.values) out.push_back(complex_to_json(v));
  return out;
}

Theory theory_of_char(char c) {
  switch (c) {
    case 'A': return Theory::A;
    case 'L': return Theory::L;
    case 'H': return Theory::H;
  }
  fail_validation("theory must be one of A, L, H");
}

}  // namespace

Json catalog_report(ContextPtr ctx, Theory theory, std::uint64_t seed,
                    const Tol& tol, int gradings_available) {
  const Catalog cat = irreducible_catalog(ctx, theory, seed, tol);
  Json entries = Json::array();
  double max_res = 0.0;
  for (size_t e = 0; e < cat.entries.size(); ++e) {
    const CatalogEntry& entry = cat.entries[e];
    Json je;
    je["id"] = e;
    je["dim"] = entry.s.dim();
    je["carrier_simples"] = entry.label.carrier_simples;
    if (theory == Theory::H) {
      je["type"] = to_string(entry.label.h);
      je["hat_irrep"] = entry.hat_irrep;
      if (entry.label.h == HType::Type1) {
        je["sign"] = entry.label.sign;
        je["partner"] = entry.partner_entry;
      }
    } else {
      je["type"] = to_string(entry.label.l);
    }
    if (theory == Theory::A) {
      const ARep a{ctx, entry.s.even, entry.amb0};
      max_res = std::max(max_res, validate_graded(a, tol));
      je["structure"] = structure_to_json(a);
    } else {
      max_res = std::max(max_res, validate_graded(entry.s, tol));
      je["structure"] = structure_to_json(entry.s);
    }
    entries.push_back(std::move(je));
  }
  Json simples = Json::array();
  for (size_t i = 0; i < cat.even_irreps.size(); ++i) {
    simples.push_back(Json{{"id", i}, {"dim", cat.even_irreps[i].dim}});
  }
  Json results;
  results["gradings_available"] = gradings_available;
  results["theory"] = theory == Theory::A ? "A" : (theory == Theory::L ? "L" : "H");
  results["entries"] = entries;
  results["even_simples"] = simples;
  Json report;
  report["results"] = results;
  report["residuals"] = Json{{"max_coherence", max_res}};
  report["pass"] = max_res <= tol.residual;
  return report;
}

Json classify_report(ContextPtr ctx, std::uint64_t seed, const Tol& tol) {
  const auto simples = irreducibles(ctx->even, seed, tol);
  Json rows = Json::array();
  bool all_agree = true;
  for (size_t i = 0; i < simples.size(); ++i) {
    const TypeLabel l_label = classify_simple(simples[i], *ctx, Theory::L,
                                              simples, static_cast<int>(i), tol);
    const TypeLabel h_label = classify_simple(simples[i], *ctx, Theory::H,
                                              simples, static_cast<int>(i), tol);
    const double fs = fs_indicator_graded(character_of(simples[i]), *ctx);
    const double expected =
        l_label.l == LType::R ? 1.0 : (l_label.l == LType::C ? 0.0 : -1.0);
    const bool agree = fs == expected;
    all_agree = all_agree && agree;
    Json row;
    row["id"] = i;
    row["dim"] = simples[i].dim;
    row["l_type"] = to_string(l_label.l);
    row["h_type"] = to_string(h_label.h);
    if (l_label.partner_simple >= 0) row["l_partner"] = l_label.partner_simple;
    if (h_label.partner_simple >= 0) row["h_partner"] = h_label.partner_simple;
    row["fs_indicator"] = fs;
    row["oracle_agrees"] = agree;
    rows.push_back(std::move(row));
  }
  Json report;
  report["results"] = Json{{"simples", rows}};
  report["residuals"] = Json::object();
  report["pass"] = all_agree;
  return report;
}

Json irreps_report(const GroupTable& table, const ContextPtr& ctx,
                   std::uint64_t seed, const Tol& tol) {
  auto list_json = [&](const std::vector<Rep>& irreps, int order) {
    Json rows = Json::array();
    long dimsq = 0;
    for (size_t i = 0; i < irreps.size(); ++i) {
      dimsq += static_cast<long>(irreps[i].dim) * irreps[i].dim;
      rows.push_back(Json{{"id", i},
                          {"dim", irreps[i].dim},
                          {"character", character_json(character_of(irreps[i]))}});
    }
    return std::pair<Json, bool>(rows, dimsq == order);
  };
  auto hat = std::make_shared<const GroupTable>(table);
  const auto hat_irreps = irreducibles(hat, seed, tol);
  auto [hat_rows, hat_ok] = list_json(hat_irreps, table.order);
  Json results;
  results["order"] = table.order;
  results["irreps"] = hat_rows;
  bool pass = hat_ok;
  if (ctx) {
    const auto even_irreps = irreducibles(ctx->even, seed, tol);
    auto [even_rows, even_ok] = list_json(even_irreps, ctx->even->order);
    results["even_irreps"] = even_rows;
    pass = pass && even_ok;
  }
  Json report;
  report["results"] = results;
  report["residuals"] = Json::object();
  report["pass"] = pass;
  return report;
}

Json census_report(ContextPtr ctx, std::uint64_t seed, const Tol& tol) {
  const CensusReport census = bijection_census(ctx, seed, tol);
  Json rows = Json::array();
  bool table_ok = true;
  for (const auto& row : census.table2) {
    table_ok = table_ok && row.consistent;
    rows.push_back(Json{{"hat_irrep", row.hat_irrep},
                        {"restriction_simple", row.restriction_simple},
                        {"pi_self_paired", row.pi_self},
                        {"w_twist_self", row.w_self},
                        {"induction_matches", row.induction_matches},
                        {"consistent", row.consistent}});
  }
  Json results;
  results["simples_even"] = census.simples_even;
  results["a_carriers"] = census.a_carriers;
  results["l_entries"] = census.l_entries;
  results["l_types"] = census.l_types;
  results["hat_irreps"] = census.hat_irreps;
  results["h_entries"] = census.h_entries;
  results["h_types"] = census.h_types;
  results["pi_pairs"] = census.p_pairs;
  results["pi_self_paired"] = census.q_self_paired;
  results["table2"] = rows;
  results["note"] = kConsequenceNote;
  Json report;
  report["results"] = results;
  report["residuals"] = Json::object();
  report["pass"] = census.counts_consistent() && table_ok;
  return report;
}

Json tables_report(ContextPtr ctx, std::uint64_t seed, const Tol& tol) {
  Json rows = Json::array();
  bool all_pass = true;
  auto add_row = [&](Theory th, const std::string& type, int n, int m,
                     const AutGroupLabel& expect, const AutDims& got) {
    const bool ok = got.d_cat == expect.dims.d_cat &&
                    got.d_star == expect.dims.d_star &&
                    got.d_amb == expect.dims.d_amb;
    all_pass = all_pass && ok;
    rows.push_back(Json{{"theory", th == Theory::L ? "L" : "H"},
                        {"type", type},
                        {"n", n},
                        {"m", m},
                        {"labels", Json::array({expect.cat, expect.star, expect.amb})},
                        {"dims", Json::array({got.d_cat, got.d_star, got.d_amb})},
                        {"expected", Json::array({expect.dims.d_cat,
                                                  expect.dims.d_star,
                                                  expect.dims.d_amb})},
                        {"pass", ok}});
  };

  const Catalog lcat = irreducible_catalog(ctx, Theory::L, seed, tol);
  bool seen[3] = {false, false, false};
  for (size_t e = 0; e < lcat.entries.size(); ++e) {
    const LType t = lcat.entries[e].label.l;
    if (seen[static_cast<int>(t)]) continue;
    seen[static_cast<int>(t)] = true;
    for (int n = 1; n <= 3; ++n) {
      const auto built = build_isotypic(lcat, IsotypicSpec{static_cast<int>(e), n, 0});
      const AutDims dims = aut_lie_dims(built, tol);
      add_row(Theory::L, to_string(t), n, 0,
              closed_form_label(Theory::L, t, HType::Type1, n, 0), dims);
    }
  }

  const Catalog hcat = irreducible_catalog(ctx, Theory::H, seed, tol);
  bool seen_t2 = false;
  bool seen_t1 = false;
  for (size_t e = 0; e < hcat.entries.size(); ++e) {
    const CatalogEntry& entry = hcat.entries[e];
    if (entry.label.h == HType::Type2 && !seen_t2) {
      seen_t2 = true;
      for (int n = 1; n <= 2; ++n) {
        const auto built = build_isotypic(hcat, IsotypicSpec{static_cast<int>(e), n, 0});
        const AutDims dims = aut_lie_dims(built, tol);
        add_row(Theory::H, "Type2", n, 0,
                closed_form_label(Theory::H, LType::R, HType::Type2, n, 0), dims);
      }
    }
    if (entry.label.h == HType::Type1 && entry.label.sign > 0 && !seen_t1) {
      seen_t1 = true;
      for (int n = 1; n <= 2; ++n) {
        for (int m = 1; m <= 2; ++m) {
          const auto built =
              build_isotypic(hcat, IsotypicSpec{static_cast<int>(e), n, m});
          const AutDims dims = aut_lie_dims(built, tol);
          add_row(Theory::H, "Type1", n, m,
                  closed_form_label(Theory::H, LType::R, HType::Type1, n, m),
                  dims);
        }
      }
    }
  }

  Json report;
  report["results"] = Json{{"rows", rows}, {"note", kConsequenceNote}};
  report["residuals"] = Json::object();
  report["pass"] = all_pass;
  return report;
}

Json verify_report(const LoadedStructure& s, const Tol& tol) {
  GradedResidual res;
  int dim = 0;
  std::string theory;
  if (s.theory == Theory::A) {
    res = validate_graded_detail(s.a, tol);
    dim = s.a.dim();
    theory = "A";
  } else {
    res = validate_graded_detail(s.s, tol);
    dim = s.s.dim();
    theory = s.theory == Theory::L ? "L" : "H";
  }
  const double overall = std::max(res.max(), s.family_residual);
  Json report;
  report["results"] = Json{{"theory", theory}, {"dim", dim}};
  report["residuals"] = Json{{"even", res.even},
                             {"corner", res.corner},
                             {"lemma", res.lemma},
                             {"family", s.family_residual},
                             {"max", overall}};
  report["pass"] = overall <= tol.residual;
  return report;
}

Json decompose_report(const LoadedStructure& s, std::uint64_t seed,
                      const Tol& tol) {
  if (s.theory == Theory::A) {
    fail_validation("decompose expects an L or H structure");
  }
  const Catalog cat = irreducible_catalog(s.ctx, s.theory, seed, tol);
  const KrsResult krs = krs_decompose(s.s, cat, seed, tol);
  Json parts = Json::array();
  double max_res = 0.0;
  for (const auto& p : krs.parts) {
    const auto check = morphism_test(p.embedding, cat.entries[p.catalog_id].s,
                                     s.s, tol);
    max_res = std::max(max_res, check.residual);
    Json jp;
    jp["catalog_id"] = p.catalog_id;
    jp["dim"] = cat.entries[p.catalog_id].s.dim();
    jp["type"] = s.theory == Theory::H
                     ? std::string(to_string(cat.entries[p.catalog_id].label.h))
                     : std::string(to_string(cat.entries[p.catalog_id].label.l));
    parts.push_back(std::move(jp));
  }
  Json multiset = Json::object();
  for (const auto& [id, count] : krs.multiset()) {
    multiset[std::to_string(id)] = count;
  }
  Json report;
  report["results"] = Json{{"parts", parts}, {"multiset", multiset}};
  report["residuals"] = Json{{"max_embedding", max_res}};
  report["pass"] = max_res <= std::max(tol.residual * 100.0, 1e-8);
  return report;
}

namespace {

void render_value(std::ostringstream& out, const std::string& key,
                  const Json& v, int indent) {
  const std::string pad(indent, ' ');
  if (v.is_object()) {
    out << pad << key << ":\n";
    for (auto it = v.begin(); it != v.end(); ++it) {
      render_value(out, it.key(), it.value(), indent + 2);
    }
  } else if (v.is_array() && !v.empty() && v[0].is_object()) {
    out << pad << key << ":\n";
    for (size_t i = 0; i < v.size(); ++i) {
      out << pad << "  - ";
      bool first = true;
      for (auto it = v[i].begin(); it != v[i].end(); ++it) {
        if (!first) out << ", ";
        first = false;
        out << it.key() << "=" << it.value().dump();
      }
      out << "\n";
    }
  } else {
    out << pad << key << ": " << v.dump() << "\n";
  }
}

}  // namespace

std::string render_text(const Json& report) {
  std::ostringstream out;
  out << "== " << report.value("command", std::string("report")) << " ==\n";
  for (const auto& key : {"group", "grading", "seed"}) {
    if (report.contains(key)) out << key << ": " << report[key].dump() << "\n";
  }
  if (report.contains("results")) {
    const Json& r = report["results"];
    for (auto it = r.begin(); it != r.end(); ++it) {
      if (it.key() == "entries" || it.key() == "structure") {
        // matrices are JSON-only payload
        if (it.value().is_array()) {
          for (size_t i = 0; i < it.value().size(); ++i) {
            Json slim = it.value()[i];
            slim.erase("structure");
            std::ostringstream line;
            bool first = true;
            for (auto f = slim.begin(); f != slim.end(); ++f) {
              if (!first) line << ", ";
              first = false;
              line << f.key() << "=" << f.value().dump();
            }
            out << "entry " << i << ": " << line.str() << "\n";
          }
        }
        continue;
      }
      render_value(out, it.key(), it.value(), 0);
    }
  }
  if (report.contains("residuals") && !report["residuals"].empty()) {
    render_value(out, "residuals", report["residuals"], 0);
  }
  out << (report.value("pass", false) ? "PASS" : "FAIL") << "\n";
  return out.str();
}

RunResult run_command(const RunConfig& cfg) {
  RunResult result;
  try {
    Json report;
    std::string group_name = cfg.group;
    if (cfg.command == "verify" || cfg.command == "decompose") {
      if (cfg.structure_file.empty()) {
        fail_validation(cfg.command + " requires --structure <path>");
      }
      Json parsed;
      try {
        parsed = Json::parse(read_text_file(cfg.structure_file));
      } catch (const Json::exception& e) {
        fail_io(std::string("cannot parse structure file: ") + e.what());
      }
      const LoadedStructure s = structure_from_json(parsed);
      report = cfg.command == "verify" ? verify_report(s, cfg.tol)
                                       : decompose_report(s, cfg.seed, cfg.tol);
      group_name = s.ctx->gg.table.name;
      report["grading"] = Json();
    } else {
      if (cfg.group.empty()) {
        fail_validation(cfg.command + " requires --group <name|path>");
      }
      GroupTable table;
      const bool is_path = cfg.group.find('.') != std::string::npos ||
                           cfg.group.find('/') != std::string::npos;
      if (is_path) {
        Json parsed;
        try {
          parsed = Json::parse(read_text_file(cfg.group));
        } catch (const Json::exception& e) {
          fail_io(std::string("cannot parse group file: ") + e.what());
        }
        table = group_from_json(parsed);
        if (table.name.empty()) table.name = cfg.group;
      } else {
        table = make_named(cfg.group);
      }
      group_name = table.name;

      if (cfg.command == "irreps") {
        ContextPtr ctx;
        const auto gradings = find_gradings(table);
        if (!gradings.empty() && cfg.grading >= 0 &&
            cfg.grading < static_cast<int>(gradings.size())) {
          ctx = make_context(GradedGroup{table, gradings[cfg.grading]});
        }
        report = irreps_report(table, ctx, cfg.seed, cfg.tol);
        report["grading"] = ctx ? Json(cfg.grading) : Json();
      } else {
        const auto gradings = find_gradings(table);
        if (gradings.empty()) {
          fail_validation("group " + group_name + " admits no grading");
        }
        if (cfg.grading < 0 || cfg.grading >= static_cast<int>(gradings.size())) {
          fail_validation("grading index out of range; group has " +
                          std::to_string(gradings.size()) + " gradings");
        }
        ContextPtr ctx = make_context(GradedGroup{table, gradings[cfg.grading]});
        if (cfg.command == "catalog") {
          report = catalog_report(ctx, theory_of_char(cfg.theory), cfg.seed,
                                  cfg.tol, static_cast<int>(gradings.size()));
        } else if (cfg.command == "classify") {
          report = classify_report(ctx, cfg.seed, cfg.tol);
        } else if (cfg.command == "census") {
          report = census_report(ctx, cfg.seed, cfg.tol);
        } else if (cfg.command == "tables") {
          report = tables_report(ctx, cfg.seed, cfg.tol);
        } else {
          fail_validation("unknown command: " + cfg.command);
        }
        report["grading"] = cfg.grading;
      }
    }
    report["command"] = cfg.command;
    report["group"] = group_name;
    report["seed"] = cfg.seed;
    report["tolerances"] = tol_json(cfg.tol);
    result.output =
        cfg.format == "json" ? report.dump(2) + "\n" : render_text(report);
    result.exit_code = report.value("pass", false) ? 0 : 1;
    if (!cfg.out.empty()) write_text_file(cfg.out, result.output);
  } catch (const Error& e) {
    result.error = e.what();
    switch (e.kind()) {
      case ErrorKind::validation: result.exit_code = 1; break;
      case ErrorKind::numeric: result.exit_code = 2; break;
      case ErrorKind::io: result.exit_code = 3; break;
    }
  } catch (const std::exception& e) {
    result.error = e.what();
    result.exit_code = 2;
  }
  return result;
}

}  // namespace realrep
