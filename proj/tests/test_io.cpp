#include <doctest.h>

#include "realrep/commands.hpp"

using namespace realrep;

namespace {

ContextPtr graded(const char* spec, int grading = 0) {
  const GroupTable t = make_named(spec);
  const auto gs = find_gradings(t);
  REQUIRE(grading < static_cast<int>(gs.size()));
  return make_context(GradedGroup{t, gs[grading]});
}

}  // namespace

TEST_SUITE_BEGIN("io");

TEST_CASE("complex and matrix serialization round-trips exactly") {
  Rng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const Complex z = rng.cgaussian() * 1e3;
    const Json j = complex_to_json(z);
    CHECK(complex_from_json(Json::parse(j.dump())) == z);
  }
  const CMatrix m = rng.matrix(3, 3);
  const CMatrix back = matrix_from_json(Json::parse(matrix_to_json(m).dump()), 3, 3);
  CHECK((m - back).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("group file round-trip, flat and nested mul") {
  const GroupTable q8 = make_named("q8");
  const Json j = group_to_json(q8);
  const GroupTable back = group_from_json(j);
  CHECK(back.order == 8);
  CHECK(back.mul == q8.mul);
  CHECK(back.name == "q8");
  // nested row form is accepted
  Json nested = j;
  Json rows = Json::array();
  for (int a = 0; a < 8; ++a) {
    Json row = Json::array();
    for (int b = 0; b < 8; ++b) row.push_back(q8.at(a, b));
    rows.push_back(row);
  }
  nested["mul"] = rows;
  CHECK(group_from_json(nested).mul == q8.mul);
  // malformed tables are io errors
  Json bad = j;
  bad["mul"][3] = 7;
  bad["mul"][4] = 7;
  CHECK_THROWS_AS(group_from_json(bad), Error);
}

TEST_CASE("graded group round-trip") {
  auto ctx = graded("q8", 1);
  const Json j = graded_group_to_json(ctx->gg);
  const GradedGroup back = graded_group_from_json(j);
  CHECK(back.grading.parity == ctx->gg.grading.parity);
  Json bad = j;
  bad["parity"][0] = -1;
  CHECK_THROWS_AS(graded_group_from_json(bad), Error);
}

TEST_CASE("rep file round-trip") {
  const auto g = std::make_shared<const GroupTable>(make_named("d3"));
  const Rep reg = regular_rep(g);
  const Json j = rep_to_json(reg);
  const Rep back = rep_from_json(Json::parse(j.dump()));
  CHECK(back.dim == 6);
  CHECK(validate_rep(back) == 0.0);
  for (int e = 0; e < 6; ++e) {
    CHECK((back.mats[e] - reg.mats[e]).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("structure files round-trip with residual intact") {
  for (const char* name : {"q8", "d3"}) {
    auto ctx = graded(name);
    for (Theory theory : {Theory::L, Theory::H}) {
      const Catalog cat = irreducible_catalog(ctx, theory, 1);
      for (const auto& entry : cat.entries) {
        const Json j = structure_to_json(entry.s);
        const LoadedStructure back = structure_from_json(Json::parse(j.dump()));
        CHECK(back.theory == theory);
        CHECK(back.family_residual < 1e-12);
        const double r0 = validate_graded(entry.s);
        const double r1 = validate_graded(back.s);
        CHECK(std::abs(r0 - r1) < 1e-12);
        // byte-identical re-dump
        CHECK(structure_to_json(back.s).dump() == j.dump());
      }
    }
    // antilinear structures
    const Catalog acat = irreducible_catalog(ctx, Theory::A, 1);
    for (const auto& entry : acat.entries) {
      const ARep a{ctx, entry.s.even, entry.amb0};
      const Json j = structure_to_json(a);
      const LoadedStructure back = structure_from_json(Json::parse(j.dump()));
      CHECK(back.theory == Theory::A);
      CHECK(back.family_residual < 1e-12);
      CHECK(validate_graded(back.a) < 1e-10);
    }
  }
}

TEST_CASE("verify and decompose reports") {
  auto ctx = graded("d3");
  const Catalog cat = irreducible_catalog(ctx, Theory::H, 1);
  const GradedFormRep sum =
      detail::direct_sum({&cat.entries[0].s, &cat.entries[2].s});
  const Json sj = structure_to_json(sum);
  const LoadedStructure loaded = structure_from_json(sj);
  const Tol tol;
  {
    const Json report = verify_report(loaded, tol);
    CHECK(report["pass"].get<bool>());
    CHECK(report["residuals"]["max"].get<double>() <= 1e-10);
  }
  {
    const Json report = decompose_report(loaded, 1, tol);
    CHECK(report["pass"].get<bool>());
    CHECK(report["results"]["parts"].size() == 2);
  }
  {
    // corrupt an odd block: the loader reports the family deviation
    Json bad = sj;
    bad["B"][1][0][0] = bad["B"][1][0][0].get<double>() + 0.25;
    const LoadedStructure badl = structure_from_json(bad);
    CHECK(badl.family_residual > 0.1);
    const Json report = verify_report(badl, tol);
    CHECK_FALSE(report["pass"].get<bool>());
  }
}

TEST_CASE("reports are byte-identical across runs") {
  auto ctx = graded("s3");
  const Tol tol;
  const Json a = census_report(ctx, 1, tol);
  const Json b = census_report(ctx, 1, tol);
  CHECK(a.dump() == b.dump());
  const Json c = catalog_report(ctx, Theory::L, 5, tol, 1);
  const Json d = catalog_report(ctx, Theory::L, 5, tol, 1);
  CHECK(c.dump() == d.dump());
}

TEST_CASE("run_command end to end") {
  {
    RunConfig cfg;
    cfg.command = "catalog";
    cfg.group = "q8";
    cfg.grading = 0;
    cfg.theory = 'L';
    cfg.format = "json";
    const RunResult r = run_command(cfg);
    CHECK(r.exit_code == 0);
    const Json report = Json::parse(r.output);
    CHECK(report["results"]["gradings_available"].get<int>() == 3);
    CHECK(report["results"]["entries"].size() == 4);
    CHECK(report["pass"].get<bool>());
  }
  {
    RunConfig cfg;
    cfg.command = "tables";
    cfg.group = "s3";
    const RunResult r = run_command(cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("PASS") != std::string::npos);
  }
  {
    RunConfig cfg;
    cfg.command = "census";
    cfg.group = "c3";
    const RunResult r = run_command(cfg);
    CHECK(r.exit_code == 1);  // no grading exists
    CHECK(!r.error.empty());
  }
  {
    RunConfig cfg;
    cfg.command = "verify";
    cfg.structure_file = "/nonexistent/file.json";
    const RunResult r = run_command(cfg);
    CHECK(r.exit_code == 3);
  }
}

TEST_SUITE_END();
