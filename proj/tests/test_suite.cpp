#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "wlab/io.hpp"

using namespace wlab;

namespace {

GroupContext make_ctx(const char* cat, long p, int n_check = 8) {
  return GroupContext(group_from_catalog_string(cat, p), n_check);
}

ZpElt rand_elt(const GroupContext& C, const BasisSpec& b, std::uint64_t salt) {
  std::mt19937_64 rng(C.prec().seed * 1315423911u + salt);
  ZpElt a = zp_zero(b, C.prec());
  for (auto& v : a.c) v = Zp(C.prec(), static_cast<long>(rng() % 1000003));
  return a;
}

SuiteConfig quick_config(const char* cat, long p, int n_check = 8) {
  SuiteConfig cfg;
  cfg.group = group_from_catalog_string(cat, p);
  cfg.n_check = n_check;
  cfg.unit_samples = 6;
  cfg.pair_samples = 3;
  cfg.tuple_samples = 3;
  cfg.lattice_samples = 12;
  return cfg;
}

const CheckResult& check_named(const SuiteReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return c;
  REQUIRE(false);
  return r.checks.front();
}

}  // namespace

TEST_CASE("group specs parse from catalog and generator documents") {
  FiniteGroup d4 = group_from_spec_text(
      R"({"p": 2, "catalog": "dihedral", "params": [4]})");
  CHECK(d4.order == 8);
  CHECK(d4.name == "dihedral:4");

  FiniteGroup c8 = group_from_spec_text(
      R"({"p": 2, "catalog": "cyclic", "params": {"order": 8}})");
  CHECK(c8.order == 8);

  FiniteGroup q8 = group_from_spec_text(
      R"({"p": 2, "catalog": "quaternion", "params": {"order": 8}})");
  CHECK(q8.order == 8);

  FiniteGroup v4 = group_from_spec_text(
      R"({"p": 2, "catalog": "elementary_abelian", "params": {"rank": 2}})");
  CHECK(v4.order == 4);

  FiniteGroup prod = group_from_spec_text(
      R"({"p": 3, "catalog": "product",
          "factors": [{"name": "cyclic", "params": [3]},
                      {"name": "cyclic", "params": [9]}]})");
  CHECK(prod.order == 27);

  // The same D4 presented by permutation generators: a 4-cycle and a flip.
  FiniteGroup gen = group_from_spec_text(
      R"({"p": 2, "generators": [[[1,2,3,4]], [[2,4]]]})");
  CHECK(gen.order == 8);
  CHECK(gen.name == "custom:8");

  FiniteGroup named = group_from_spec_text(
      R"({"p": 2, "name": "flip4", "generators": [[[1,2,3,4]], [[2,4]]]})");
  CHECK(named.name == "flip4");
}

TEST_CASE("group spec rejections") {
  CHECK_THROWS_AS(group_from_spec_text("not json"), Error);
  CHECK_THROWS_AS(group_from_spec_text(R"({"p": 2})"), Error);
  CHECK_THROWS_AS(group_from_spec_text(R"({"generators": []})"), Error);
  CHECK_THROWS_AS(
      group_from_spec_text(R"({"p": 3, "generators": [[[1,2]]]})"), Error);
  CHECK_THROWS_AS(
      group_from_spec_text(R"({"p": 2, "catalog": "nonsense"})"), Error);
  CHECK_THROWS_AS(
      group_from_spec_text(R"({"p": 2, "catalog": "cyclic", "params": [3]})"),
      Error);
  CHECK_THROWS_AS(
      group_from_spec_text(
          R"({"p": 2, "generators": [[[0,1]]]})"),
      Error);
}

TEST_CASE("catalog shorthand strings") {
  CHECK(group_from_catalog_string("catalog:cyclic:8", 2).order == 8);
  CHECK(group_from_catalog_string("catalog:heisenberg", 3).order == 27);
  CHECK(group_from_catalog_string("catalog:elementary_abelian:2", 2).order == 4);
  FiniteGroup prod =
      group_from_catalog_string("catalog:product:cyclic.3,cyclic.3", 3);
  CHECK(prod.order == 9);
  CHECK_THROWS_AS(group_from_catalog_string("catalog:", 2), Error);
  CHECK_THROWS_AS(group_from_catalog_string("cyclic:8", 2), Error);
  CHECK_THROWS_AS(group_from_catalog_string("catalog:cyclic:7", 2), Error);
}

TEST_CASE("group info document") {
  GroupContext C = make_ctx("catalog:dihedral:4", 2);
  Json j = group_info_json(C);
  CHECK(j["schema"] == kSchemaTag);
  CHECK(j["name"] == "dihedral:4");
  CHECK(j["p"] == 2);
  CHECK(j["order"] == 8);
  CHECK(j["classes"].size() == 5);
  CHECK(j["subgroups"].size() == 10);
  CHECK(j["element_orders"].size() == 8);

  size_t normal = 0, cyclic = 0;
  for (const auto& s : j["subgroups"]) {
    if (s["normal"].get<bool>()) ++normal;
    if (s["cyclic"].get<bool>()) ++cyclic;
  }
  CHECK(normal == 6);
  CHECK(cyclic == 7);

  // Hash depends on the Cayley table alone, so rebuilding gives the same one.
  GroupContext C2 = make_ctx("catalog:dihedral:4", 2, 10);
  CHECK(group_info_json(C2)["cayley_hash"] == j["cayley_hash"]);
  GroupContext Q = make_ctx("catalog:quaternion:8", 2);
  CHECK(group_info_json(Q)["cayley_hash"] != j["cayley_hash"]);
}

TEST_CASE("element documents round trip on every basis family") {
  GroupContext C = make_ctx("catalog:dihedral:4", 2);
  std::vector<const BasisSpec*> bases = {&C.group_basis(), &C.conj_basis()};
  for (size_t hi = 0; hi < C.lat().size(); ++hi) {
    bases.push_back(&C.sub_basis(hi));
    bases.push_back(&C.ab_basis(hi));
  }
  for (const BasisSpec* b : bases) {
    ZpElt x = rand_elt(C, *b, b - bases.front());
    Json j = element_to_json(x);
    CHECK(j["schema"] == kSchemaTag);
    CHECK(j["basis"]["kind"] == b->label);
    ZpElt y = element_from_json(C, j);
    CHECK(y.basis == b);
    REQUIRE(y.c.size() == x.c.size());
    for (size_t i = 0; i < x.c.size(); ++i)
      CHECK(x.c[i].residue() == y.c[i].residue());
  }
}

TEST_CASE("element documents omit zero coefficients") {
  GroupContext C = make_ctx("catalog:cyclic:4", 2);
  ZpElt x = zp_zero(C.conj_basis(), C.prec());
  x.c[2] = Zp(C.prec(), 5);
  Json j = element_to_json(x);
  CHECK(j["coeffs"].size() == 1);
  ZpElt y = element_from_json(C, j);
  CHECK(residual_valuation(x, y) >= C.prec().n_work);
}

TEST_CASE("element document rejections") {
  GroupContext C = make_ctx("catalog:cyclic:4", 2);
  ZpElt x = rand_elt(C, C.conj_basis(), 7);
  Json good = element_to_json(x);

  Json j = good;
  j["schema"] = "whitehead-lab/2";
  CHECK_THROWS_AS(element_from_json(C, j), Error);

  j = good;
  j["p"] = 3;
  CHECK_THROWS_AS(element_from_json(C, j), Error);

  j = good;
  j["basis"]["group"] = "other";
  CHECK_THROWS_AS(element_from_json(C, j), Error);

  j = good;
  j["basis"]["kind"] = "sub:99";
  CHECK_THROWS_AS(element_from_json(C, j), Error);

  j = good;
  j["coeffs"]["12345"] = "1";
  CHECK_THROWS_AS(element_from_json(C, j), Error);

  j = good;
  j["coeffs"]["0"] = 17;  // numbers lose precision, only strings are accepted
  CHECK_THROWS_AS(element_from_json(C, j), Error);

  j = good;
  j["coeffs"]["0"] = "12x";
  CHECK_THROWS_AS(element_from_json(C, j), Error);
}

TEST_CASE("restriction tuples round trip in both shapes") {
  GroupContext C = make_ctx("catalog:quaternion:8", 2);
  ZpElt a = rand_elt(C, C.conj_basis(), 11);

  PhiTuple all = beta_all(C, a);
  Json j = tuple_to_json(all);
  CHECK(j["schema"] == kSchemaTag);
  CHECK(j["shape"] == "all-subgroups");
  PhiTuple back = tuple_from_json(C, j);
  CHECK(back.shape == PhiShape::AllSubgroups);
  CHECK(tuple_eq_at(all, back, C.prec().n_work));

  PhiTuple cyc = beta_cyclic(C, a);
  Json jc = tuple_to_json(cyc);
  CHECK(jc["shape"] == "cyclic-only");
  PhiTuple backc = tuple_from_json(C, jc);
  CHECK(tuple_eq_at(cyc, backc, C.prec().n_work));

  Json bad = j;
  bad["shape"] = "cyclic-only";
  CHECK_THROWS_AS(tuple_from_json(C, bad), Error);
  bad = j;
  bad["entries"].erase(0);
  CHECK_THROWS_AS(tuple_from_json(C, bad), Error);
}

TEST_CASE("norm tuples round trip") {
  GroupContext C = make_ctx("catalog:dihedral:4", 2);
  ZpElt u = random_unit(C, UnitShape::General, 42);
  PsiTuple t = theta_all(C, u);
  Json j = psi_to_json(t);
  CHECK(j["schema"] == kSchemaTag);
  PsiTuple back = psi_from_json(C, j);
  REQUIRE(back.entries.size() == t.entries.size());
  for (size_t i = 0; i < t.entries.size(); ++i)
    CHECK(residual_valuation(t.entries[i], back.entries[i]) >=
          C.prec().n_work);

  Json bad = j;
  bad["entries"].erase(bad["entries"].size() - 1);
  CHECK_THROWS_AS(psi_from_json(C, bad), Error);
}

TEST_CASE("condition reports serialize names and witnesses") {
  GroupContext C = make_ctx("catalog:cyclic:4", 2);
  ZpElt a = rand_elt(C, C.conj_basis(), 3);
  ConditionReport r = check_phi_conditions(C, beta_all(C, a));
  CHECK(r.pass);
  Json j = report_to_json(r);
  CHECK(j["schema"] == kSchemaTag);
  CHECK(j["pass"] == true);
  CHECK(j["conditions"].size() == r.names.size());
  CHECK(j["witnesses"].empty());

  // A tuple that ignores the compatibility conditions produces witnesses.
  PhiTuple t = beta_all(C, a);
  t.entries[t.entries.size() / 2].c[0] += Zp(C.prec(), 1);
  ConditionReport bad = check_phi_conditions(C, t);
  CHECK_FALSE(bad.pass);
  Json jb = report_to_json(bad);
  CHECK(jb["pass"] == false);
  CHECK(!jb["witnesses"].empty());
  CHECK(jb["witnesses"][0].contains("condition"));
}

TEST_CASE("howell basis documents carry pivots and rows") {
  GroupContext C = make_ctx("catalog:cyclic:4", 2);
  HowellBasis b = phi_module_basis(C, PhiShape::CyclicOnly);
  Json j = howell_to_json(b);
  CHECK(j["schema"] == kSchemaTag);
  CHECK(j["ncols"].get<size_t>() == b.ncols);
  CHECK(j["rows"].size() == b.rows.size());
  CHECK(j["pivots"].size() == b.rows.size());
  for (const auto& row : j["rows"]) CHECK(row.size() == b.ncols);
}

TEST_CASE("suite passes on small two-groups") {
  SuiteReport r = run_suite(quick_config("catalog:cyclic:4", 2));
  CHECK(r.pass);
  CHECK(r.checks.size() == 20);
  CHECK(r.group_name == "cyclic:4");
  CHECK(r.p == 2);
  CHECK(r.order == 4);
  for (const auto& c : r.checks) {
    INFO(c.name, ": ", c.detail);
    CHECK(c.pass);
    CHECK(c.residual >= r.n_check);
  }
}

TEST_CASE("suite passes on a nonabelian group") {
  SuiteReport r = run_suite(quick_config("catalog:quaternion:8", 2));
  CHECK(r.pass);
  for (const auto& c : r.checks) {
    INFO(c.name, ": ", c.detail);
    CHECK(c.pass);
  }
}

TEST_CASE("suite passes at an odd prime") {
  SuiteConfig cfg = quick_config("catalog:cyclic:9", 3);
  SuiteReport r = run_suite(cfg);
  CHECK(r.pass);
  CHECK(check_named(r, "alpha-character-choice").pass);
}

TEST_CASE("family filter selects and orders checks") {
  SuiteConfig cfg = quick_config("catalog:cyclic:4", 2);
  cfg.families = {"additive"};
  SuiteReport r = run_suite(cfg);
  CHECK(r.pass);
  CHECK(r.checks.size() == 7);
  for (const auto& c : r.checks) CHECK(c.family == "additive");

  cfg.families = {"lattice"};
  SuiteReport rl = run_suite(cfg);
  CHECK(rl.checks.size() == 1);
  CHECK(rl.checks[0].name == "image-lattice");
}

TEST_CASE("corrupted tuples are caught and named") {
  SuiteConfig cfg = quick_config("catalog:cyclic:4", 2);
  cfg.corrupt = "phi-tuple";
  SuiteReport r = run_suite(cfg);
  CHECK_FALSE(r.pass);
  const CheckResult& c = check_named(r, "beta-conditions");
  CHECK_FALSE(c.pass);
  CHECK(c.detail.find("A") != std::string::npos);

  cfg.corrupt = "psi-tuple";
  SuiteReport r2 = run_suite(cfg);
  CHECK_FALSE(r2.pass);
  CHECK_FALSE(check_named(r2, "theta-conditions").pass);

  cfg.corrupt = "bogus";
  CHECK_THROWS_AS(run_suite(cfg), Error);
}

TEST_CASE("suite config validation") {
  SuiteConfig cfg = quick_config("catalog:cyclic:4", 2);
  cfg.n_check = 0;
  CHECK_THROWS_AS(run_suite(cfg), Error);

  cfg = quick_config("catalog:cyclic:4", 2);
  cfg.n_work = 4;  // below the check precision
  CHECK_THROWS_AS(run_suite(cfg), Error);

  cfg = quick_config("catalog:cyclic:4", 2);
  cfg.unit_samples = 0;
  CHECK_THROWS_AS(run_suite(cfg), Error);

  cfg = quick_config("catalog:cyclic:4", 2);
  cfg.families = {"additive", "bogus"};
  CHECK_THROWS_AS(run_suite(cfg), Error);
}

TEST_CASE("suite reports are deterministic") {
  SuiteConfig cfg = quick_config("catalog:dihedral:4", 2);
  std::string a = suite_report_to_json(run_suite(cfg)).dump(2);
  std::string b = suite_report_to_json(run_suite(cfg)).dump(2);
  CHECK(a == b);

  cfg.seed = 99;
  std::string c = suite_report_to_json(run_suite(cfg)).dump(2);
  CHECK(c != a);  // seed is part of the report
}

TEST_CASE("raising work precision leaves verdicts and residuals fixed") {
  SuiteConfig cfg = quick_config("catalog:cyclic:4", 2);
  SuiteReport base = run_suite(cfg);
  cfg.n_work = base.n_work + 10;
  SuiteReport deep = run_suite(cfg);
  CHECK(deep.n_work == base.n_work + 10);
  Json jb = suite_report_to_json(base)["checks"];
  Json jd = suite_report_to_json(deep)["checks"];
  CHECK(jb.dump() == jd.dump());
}

TEST_CASE("logarithm images saturate the kernel lattice on prime cyclics") {
  for (auto [cat, p] : {std::pair{"catalog:cyclic:2", 2L},
                        std::pair{"catalog:cyclic:3", 3L}}) {
    SuiteConfig cfg = quick_config(cat, p, 8);
    cfg.families = {"lattice"};
    cfg.lattice_samples = 200;
    SuiteReport r = run_suite(cfg);
    INFO(cat);
    CHECK(r.pass);
    CHECK(r.checks[0].detail.find("saturated") == 0);
  }
}

TEST_CASE("suite report text names every check") {
  SuiteReport r = run_suite(quick_config("catalog:cyclic:4", 2));
  std::string text = suite_report_text(r);
  for (const auto& c : r.checks)
    CHECK(text.find(c.name) != std::string::npos);
  CHECK(text.find("overall: PASS") != std::string::npos);
}
