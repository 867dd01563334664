#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wlab/io.hpp"

namespace {

using wlab::Json;

struct GlobalOpts {
  long p = 2;
  int n_work = -1;
  int n_check = 16;
  std::uint64_t seed = 1;
  std::string group;
  int samples = 20;
  std::string format = "text";
  std::string out;
};

wlab::FiniteGroup resolve_group(const GlobalOpts& opt) {
  if (opt.group.empty())
    wlab::raise(wlab::ErrorCode::BadInput,
                "no group given; use --group <file|catalog:name[:params]>");
  if (opt.group.rfind("catalog:", 0) == 0)
    return wlab::group_from_catalog_string(opt.group, opt.p);
  return wlab::group_from_spec_text(wlab::read_text_file(opt.group));
}

void emit(const GlobalOpts& opt, const std::string& text) {
  if (opt.out.empty())
    std::cout << text;
  else
    wlab::write_text_file(opt.out, text);
}

void emit_json(const GlobalOpts& opt, const Json& j) {
  emit(opt, j.dump(2) + "\n");
}

Json load_json(const std::string& path) {
  Json j = Json::parse(wlab::read_text_file(path), nullptr, false);
  if (j.is_discarded())
    wlab::raise(wlab::ErrorCode::BadInput, path + " is not valid JSON");
  return j;
}

std::string render_report(const wlab::ConditionReport& r) {
  std::string out;
  for (size_t i = 0; i < r.names.size(); ++i)
    out += "  [" + std::string(r.passed[i] ? "PASS" : "FAIL") + "] " + r.names[i] + "\n";
  for (const wlab::Witness& w : r.witnesses)
    out += "    " + w.condition + " at subgroup " + std::to_string(w.hi) +
           " pair " + std::to_string(w.h1i) + " residual " +
           std::to_string(w.residual) + "\n";
  out += std::string("  overall: ") + (r.pass ? "PASS" : "FAIL") + " at p^" +
         std::to_string(r.precision) + "\n";
  return out;
}

int run(int argc, char** argv) {
  GlobalOpts opt;
  CLI::App app{"Class-module and Whitehead-unit descriptions of p-group rings"};
  app.require_subcommand(1);
  app.add_option("--p", opt.p, "prime")->capture_default_str();
  app.add_option("--precision", opt.n_work, "working precision (digits of p)");
  app.add_option("--check-precision", opt.n_check, "comparison precision")
      ->capture_default_str();
  app.add_option("--seed", opt.seed, "sampling seed")->capture_default_str();
  app.add_option("--group", opt.group, "group spec file or catalog:name[:params]");
  app.add_option("--samples", opt.samples, "sample count")->capture_default_str();
  app.add_option("--format", opt.format, "json|text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--out", opt.out, "write output to a file");

  auto subcmd = [](CLI::App* parent, const char* name, const char* desc) {
    CLI::App* c = parent->add_subcommand(name, desc);
    c->fallthrough();
    return c;
  };

  auto* group_cmd = subcmd(&app, "group", "group inspection");
  auto* group_info = subcmd(group_cmd, "info", "canonical description");
  auto* group_list = subcmd(group_cmd, "list", "catalog inventory");
  group_cmd->require_subcommand(1);

  std::string in_path;
  std::string shape = "all";
  auto* additive_cmd = subcmd(&app, "additive", "class-module maps");
  auto* add_beta = subcmd(additive_cmd, "beta", "restriction tuple of an element");
  auto* add_tau = subcmd(additive_cmd, "tau", "inverse of beta on a tuple");
  auto* add_check = subcmd(additive_cmd, "check", "compatibility conditions A1-A3");
  auto* add_basis = subcmd(additive_cmd, "basis", "solution module of A1-A3");
  additive_cmd->require_subcommand(1);
  for (auto* c : {add_beta, add_tau, add_check})
    c->add_option("--in", in_path, "input JSON file");
  for (auto* c : {add_beta, add_basis})
    c->add_option("--shape", shape, "all|cyclic")
        ->check(CLI::IsMember({"all", "cyclic"}));

  auto* k1_cmd = subcmd(&app, "k1", "unit-group maps");
  auto* k1_theta = subcmd(k1_cmd, "theta", "norm tuple of a unit");
  auto* k1_log = subcmd(k1_cmd, "L", "integral logarithm of a unit");
  auto* k1_check = subcmd(k1_cmd, "check", "compatibility conditions M1-M4");
  auto* k1_identity = subcmd(k1_cmd, "identity", "cross-path identities on sampled units");
  k1_cmd->require_subcommand(1);
  for (auto* c : {k1_theta, k1_log, k1_check})
    c->add_option("--in", in_path, "input JSON file");

  auto* verify_cmd = subcmd(&app, "verify", "verification suites");
  auto* verify_all = subcmd(verify_cmd, "all", "every check family");
  verify_cmd->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (group_list->parsed()) {
    Json j;
    j["schema"] = wlab::kSchemaTag;
    j["catalog"] = {"cyclic:<order>", "elementary_abelian:<rank>",
                    "dihedral:<rotation order>", "quaternion:<order>",
                    "heisenberg", "product:<name>.<param>,..."};
    Json suite = Json::array();
    for (const wlab::FiniteGroup& g : wlab::default_suite_groups()) {
      Json e;
      e["name"] = g.name;
      e["p"] = g.prime;
      e["order"] = g.order;
      suite.push_back(std::move(e));
    }
    j["default_suite"] = std::move(suite);
    if (opt.format == "json") {
      emit_json(opt, j);
    } else {
      std::string text = "catalog entries:\n";
      for (const auto& e : j["catalog"]) text += "  " + e.get<std::string>() + "\n";
      text += "default suite:\n";
      for (const auto& e : j["default_suite"])
        text += "  " + e["name"].get<std::string>() + "  (p=" +
                std::to_string(e["p"].get<long>()) + ", order " +
                std::to_string(e["order"].get<int>()) + ")\n";
      emit(opt, text);
    }
    return 0;
  }

  if (verify_all->parsed()) {
    std::vector<wlab::FiniteGroup> groups;
    if (opt.group.empty())
      groups = wlab::default_suite_groups();
    else
      groups.push_back(resolve_group(opt));

    bool all_pass = true;
    Json reports = Json::array();
    std::string text;
    for (const wlab::FiniteGroup& g : groups) {
      wlab::SuiteConfig cfg;
      cfg.group = g;
      cfg.n_check = opt.n_check;
      cfg.n_work = opt.n_work;
      cfg.seed = opt.seed;
      cfg.pair_samples = opt.samples;
      cfg.tuple_samples = opt.samples;
      cfg.unit_samples = 5 * opt.samples;
      cfg.lattice_samples = 10 * opt.samples;
      wlab::SuiteReport rep = wlab::run_suite(cfg);
      all_pass = all_pass && rep.pass;
      reports.push_back(wlab::suite_report_to_json(rep));
      text += wlab::suite_report_text(rep);
    }
    if (opt.format == "json")
      emit_json(opt, reports);
    else
      emit(opt, text);
    return all_pass ? 0 : 1;
  }

  wlab::GroupContext C(resolve_group(opt), opt.n_check, opt.n_work, opt.seed);

  if (group_info->parsed()) {
    Json j = wlab::group_info_json(C);
    if (opt.format == "json") {
      emit_json(opt, j);
    } else {
      std::string text = j["name"].get<std::string>() + ": order " +
                         std::to_string(j["order"].get<int>()) + ", " +
                         std::to_string(j["classes"].size()) + " classes, " +
                         std::to_string(j["subgroups"].size()) +
                         " subgroups, cayley hash " +
                         j["cayley_hash"].get<std::string>() + "\n";
      emit(opt, text);
    }
    return 0;
  }

  auto phi_shape = [&] {
    return shape == "cyclic" ? wlab::PhiShape::CyclicOnly
                             : wlab::PhiShape::AllSubgroups;
  };

  if (add_beta->parsed()) {
    wlab::ZpElt a = in_path.empty()
                        ? [&] {
                            std::mt19937_64 rng(C.prec().seed);
                            wlab::ZpElt r = wlab::zp_zero(C.conj_basis(), C.prec());
                            for (auto& v : r.c) v = wlab::Zp(C.prec(), mpz_class(rng()));
                            return r;
                          }()
                        : wlab::element_from_json(C, load_json(in_path));
    wlab::PhiTuple t = phi_shape() == wlab::PhiShape::AllSubgroups
                           ? wlab::beta_all(C, a)
                           : wlab::beta_cyclic(C, a);
    emit_json(opt, wlab::tuple_to_json(t));
    return 0;
  }

  if (add_tau->parsed()) {
    if (in_path.empty())
      wlab::raise(wlab::ErrorCode::BadInput, "tau needs --in <tuple.json>");
    wlab::PhiTuple t = wlab::tuple_from_json(C, load_json(in_path));
    if (t.shape != wlab::PhiShape::CyclicOnly)
      t = wlab::proj_tuple(C, t);
    emit_json(opt, wlab::element_to_json(wlab::to_zp(wlab::tau(C, t))));
    return 0;
  }

  if (add_check->parsed()) {
    if (in_path.empty())
      wlab::raise(wlab::ErrorCode::BadInput, "check needs --in <tuple.json>");
    wlab::ConditionReport r =
        wlab::check_phi_conditions(C, wlab::tuple_from_json(C, load_json(in_path)));
    if (opt.format == "json")
      emit_json(opt, wlab::report_to_json(r));
    else
      emit(opt, render_report(r));
    return r.pass ? 0 : 1;
  }

  if (add_basis->parsed()) {
    emit_json(opt, wlab::howell_to_json(wlab::phi_module_basis(C, phi_shape())));
    return 0;
  }

  auto unit_input = [&]() {
    return in_path.empty()
               ? wlab::random_unit(C, wlab::UnitShape::General, 0)
               : wlab::element_from_json(C, load_json(in_path));
  };

  if (k1_theta->parsed()) {
    emit_json(opt, wlab::psi_to_json(wlab::theta_all(C, unit_input())));
    return 0;
  }

  if (k1_log->parsed()) {
    emit_json(opt, wlab::element_to_json(wlab::integral_log_L(C, unit_input())));
    return 0;
  }

  if (k1_check->parsed()) {
    if (in_path.empty())
      wlab::raise(wlab::ErrorCode::BadInput, "check needs --in <tuple.json>");
    wlab::ConditionReport r =
        wlab::check_psi_conditions(C, wlab::psi_from_json(C, load_json(in_path)));
    if (opt.format == "json")
      emit_json(opt, wlab::report_to_json(r));
    else
      emit(opt, render_report(r));
    return r.pass ? 0 : 1;
  }

  if (k1_identity->parsed()) {
    int key_worst = C.prec().n_work;
    int cross_worst = C.prec().n_work;
    for (int i = 0; i < opt.samples; ++i) {
      wlab::ZpElt u = wlab::random_unit(C, wlab::UnitShape::General, i);
      for (size_t hi = 0; hi < C.lat().size(); ++hi) {
        key_worst = std::min(key_worst, wlab::key_identity_check(C, hi, u));
        cross_worst = std::min(cross_worst, wlab::oliver_taylor_check(C, hi, u));
      }
    }
    bool pass = key_worst >= opt.n_check && cross_worst >= opt.n_check;
    Json j;
    j["schema"] = wlab::kSchemaTag;
    j["check_precision"] = opt.n_check;
    j["samples"] = opt.samples;
    j["key_identity_residual"] = std::min(key_worst, opt.n_check);
    j["norm_cross_path_residual"] = std::min(cross_worst, opt.n_check);
    j["pass"] = pass;
    if (opt.format == "json")
      emit_json(opt, j);
    else
      emit(opt, std::string(pass ? "PASS" : "FAIL") + ": key identity residual>=" +
                    std::to_string(j["key_identity_residual"].get<int>()) +
                    ", norm cross-path residual>=" +
                    std::to_string(j["norm_cross_path_residual"].get<int>()) + "\n");
    return pass ? 0 : 1;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const wlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case wlab::ErrorCode::PrecisionExhausted:
        return 3;
      case wlab::ErrorCode::BadInput:
      case wlab::ErrorCode::BadParams:
      case wlab::ErrorCode::UnknownCatalogEntry:
      case wlab::ErrorCode::NotAPGroup:
      case wlab::ErrorCode::GroupTooLarge:
      case wlab::ErrorCode::NonIntegralInput:
        return 2;
      default:
        return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
