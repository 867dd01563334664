#include "wlab/io.hpp"

#include <fstream>
#include <sstream>

namespace wlab {

namespace {

const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    raise(ErrorCode::BadInput, std::string("missing field \"") + key + "\"");
  return *it;
}

void require_schema(const Json& j) {
  auto it = j.find("schema");
  if (it == j.end() || !it->is_string() || it->get<std::string>() != kSchemaTag)
    raise(ErrorCode::BadInput,
          std::string("document does not carry schema \"") + kSchemaTag + "\"");
}

long int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer())
    raise(ErrorCode::BadInput, std::string("field \"") + key + "\" must be an integer");
  return v.get<long>();
}

std::string str_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string())
    raise(ErrorCode::BadInput, std::string("field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

std::vector<long> params_of(const Json& spec, const std::string& name) {
  auto it = spec.find("params");
  if (it == spec.end()) return {};
  if (it->is_array()) {
    std::vector<long> out;
    for (const auto& v : *it) {
      if (!v.is_number_integer())
        raise(ErrorCode::BadInput, "params entries must be integers");
      out.push_back(v.get<long>());
    }
    return out;
  }
  if (it->is_object()) {
    const char* key = nullptr;
    if (name == "cyclic" || name == "quaternion") key = "order";
    if (name == "dihedral") key = "rotation";
    if (name == "elementary_abelian") key = "rank";
    if (key == nullptr) {
      if (it->empty()) return {};
      raise(ErrorCode::BadInput, "catalog entry takes no named params");
    }
    return {int_field(*it, key)};
  }
  raise(ErrorCode::BadInput, "params must be an array or object");
}

mpz_class mpz_from_decimal(const std::string& s) {
  if (s.empty()) raise(ErrorCode::BadInput, "empty coefficient string");
  size_t start = s[0] == '-' ? 1 : 0;
  if (start == s.size()) raise(ErrorCode::BadInput, "bad coefficient string");
  for (size_t i = start; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9')
      raise(ErrorCode::BadInput, "coefficient is not a decimal integer");
  return mpz_class(s, 10);
}

int label_index(const std::string& label, size_t colon) {
  int idx = 0;
  for (size_t i = colon + 1; i < label.size(); ++i) {
    if (label[i] < '0' || label[i] > '9')
      raise(ErrorCode::BadInput, "malformed basis label " + label);
    idx = idx * 10 + (label[i] - '0');
  }
  return idx;
}

Json entry_list_to_json(const std::vector<size_t>& indices,
                        const std::vector<ZpElt>& entries) {
  Json out = Json::array();
  for (size_t i = 0; i < indices.size(); ++i) {
    Json e;
    e["subgroup"] = indices[i];
    e["elt"] = element_to_json(entries[i]);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

FiniteGroup group_from_spec(const Json& spec) {
  if (!spec.is_object()) raise(ErrorCode::BadInput, "group spec must be an object");
  long p = int_field(spec, "p");

  if (spec.contains("catalog")) {
    const Json& cat = field(spec, "catalog");
    if (!cat.is_string()) raise(ErrorCode::BadInput, "catalog must be a string");
    std::string name = cat.get<std::string>();
    if (name == "product" || name == "direct_product") {
      std::vector<std::pair<std::string, std::vector<long>>> factors;
      for (const auto& f : field(spec, "factors")) {
        std::string fname = str_field(f, "name");
        factors.emplace_back(fname, params_of(f, fname));
      }
      return catalog_product(factors, p);
    }
    return catalog_group(name, params_of(spec, name), p);
  }

  const Json& gens = field(spec, "generators");
  if (!gens.is_array()) raise(ErrorCode::BadInput, "generators must be an array");
  std::vector<std::vector<std::vector<int>>> cycles;
  for (const auto& g : gens) {
    std::vector<std::vector<int>> gen;
    for (const auto& cyc : g) {
      std::vector<int> c;
      for (const auto& pt : cyc) {
        if (!pt.is_number_integer() || pt.get<long>() < 1)
          raise(ErrorCode::BadInput, "cycle points must be positive integers");
        c.push_back(pt.get<int>());
      }
      gen.push_back(std::move(c));
    }
    cycles.push_back(std::move(gen));
  }
  FiniteGroup G = build_group(cycles, p);
  if (spec.contains("name") && field(spec, "name").is_string())
    G.name = spec["name"].get<std::string>();
  if (G.name.empty()) G.name = "custom:" + std::to_string(G.order);
  return G;
}

FiniteGroup group_from_spec_text(const std::string& text) {
  Json spec = Json::parse(text, nullptr, false);
  if (spec.is_discarded()) raise(ErrorCode::BadInput, "group spec is not valid JSON");
  return group_from_spec(spec);
}

FiniteGroup group_from_catalog_string(const std::string& s, long p) {
  const std::string prefix = "catalog:";
  if (s.rfind(prefix, 0) != 0)
    raise(ErrorCode::BadInput, "catalog shorthand must start with " + prefix);
  std::string rest = s.substr(prefix.size());
  size_t colon = rest.find(':');
  std::string name = rest.substr(0, colon);
  if (name.empty()) raise(ErrorCode::BadInput, "catalog shorthand names no entry");

  auto split = [](const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, sep)) out.push_back(piece);
    return out;
  };
  auto as_long = [](const std::string& text) {
    if (text.empty()) raise(ErrorCode::BadInput, "empty catalog parameter");
    return mpz_get_si(mpz_from_decimal(text).get_mpz_t());
  };

  if (name == "product" || name == "direct_product") {
    if (colon == std::string::npos)
      raise(ErrorCode::BadInput, "product shorthand needs factors");
    std::vector<std::pair<std::string, std::vector<long>>> factors;
    for (const std::string& f : split(rest.substr(colon + 1), ',')) {
      std::vector<std::string> parts = split(f, '.');
      if (parts.empty() || parts[0].empty())
        raise(ErrorCode::BadInput, "malformed product factor " + f);
      std::vector<long> params;
      for (size_t i = 1; i < parts.size(); ++i) params.push_back(as_long(parts[i]));
      factors.emplace_back(parts[0], std::move(params));
    }
    return catalog_product(factors, p);
  }

  std::vector<long> params;
  if (colon != std::string::npos)
    for (const std::string& v : split(rest.substr(colon + 1), ','))
      params.push_back(as_long(v));
  return catalog_group(name, params, p);
}

Json group_info_json(const GroupContext& C) {
  const FiniteGroup& G = C.group();
  const Lattice& L = C.lat();

  std::uint64_t h = 1469598103934665603ull;
  for (const auto& row : G.cayley)
    for (int v : row) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ull;
    }
  char hex[19];
  std::snprintf(hex, sizeof hex, "0x%016llx", static_cast<unsigned long long>(h));

  Json j;
  j["schema"] = kSchemaTag;
  j["name"] = G.name;
  j["p"] = G.prime;
  j["order"] = G.order;
  j["generators"] = G.generator_ids;
  j["cayley_hash"] = hex;

  Json orders = Json::array();
  for (int g = 0; g < G.order; ++g) orders.push_back(G.element_order(g));
  j["element_orders"] = std::move(orders);

  Json classes = Json::array();
  for (size_t c = 0; c < L.classes.count(); ++c) {
    Json e;
    e["rep"] = L.classes.representatives[c];
    e["size"] = L.classes.sizes[c];
    classes.push_back(std::move(e));
  }
  j["classes"] = std::move(classes);

  Json subs = Json::array();
  for (size_t i = 0; i < L.size(); ++i) {
    const Subgroup& S = L.subs[i];
    Json e;
    e["id"] = i;
    e["order"] = S.order;
    e["cyclic"] = S.cyclic;
    e["normal"] = L.normalizers[i].order == G.order;
    e["generator"] = S.canonical_generator;
    e["members"] = S.members;
    subs.push_back(std::move(e));
  }
  j["subgroups"] = std::move(subs);
  return j;
}

const BasisSpec& basis_by_label(const GroupContext& C, const std::string& label) {
  if (label == "group") return C.group_basis();
  if (label == "conj") return C.conj_basis();
  size_t colon = label.find(':');
  if (colon != std::string::npos) {
    std::string kind = label.substr(0, colon);
    int idx = label_index(label, colon);
    if (idx >= 0 && static_cast<size_t>(idx) < C.lat().size()) {
      if (kind == "sub") return C.sub_basis(static_cast<size_t>(idx));
      if (kind == "ab") return C.ab_basis(static_cast<size_t>(idx));
      if (kind == "subconj") return C.sub_conj_basis(static_cast<size_t>(idx));
    }
  }
  raise(ErrorCode::BadInput, "no basis labeled " + label + " in this context");
}

Json element_to_json(const ZpElt& x) {
  Json j;
  j["schema"] = kSchemaTag;
  j["basis"] = {{"kind", x.basis->label}, {"group", x.basis->G->name}};
  j["p"] = x.ctx->p;
  j["precision"] = x.ctx->n_work;
  j["check_precision"] = x.ctx->n_check;
  Json coeffs = Json::object();
  for (size_t m = 0; m < x.c.size(); ++m) {
    if (x.c[m].is_zero()) continue;
    coeffs[std::to_string(x.basis->display_id(static_cast<int>(m)))] =
        x.c[m].residue().get_str();
  }
  j["coeffs"] = std::move(coeffs);
  return j;
}

ZpElt element_from_json(const GroupContext& C, const Json& j) {
  require_schema(j);
  if (int_field(j, "p") != C.prec().p)
    raise(ErrorCode::BadInput, "element prime does not match the context");
  const Json& bj = field(j, "basis");
  const BasisSpec& basis = basis_by_label(C, str_field(bj, "kind"));
  if (str_field(bj, "group") != C.group().name)
    raise(ErrorCode::BadInput, "element group does not match the context");

  ZpElt out = zp_zero(basis, C.prec());
  for (const auto& [key, val] : field(j, "coeffs").items()) {
    if (!val.is_string())
      raise(ErrorCode::BadInput, "coefficients must be decimal strings");
    int gid = static_cast<int>(mpz_get_si(mpz_from_decimal(key).get_mpz_t()));
    int m = gid >= 0 && gid < C.group().order ? basis.index_of_global(gid) : -1;
    if (m < 0)
      raise(ErrorCode::BadInput, "coefficient label " + key + " is outside the basis");
    out.c[static_cast<size_t>(m)] +=
        Zp(C.prec(), mpz_from_decimal(val.get<std::string>()));
  }
  return out;
}

Json tuple_to_json(const PhiTuple& t) {
  Json j;
  j["schema"] = kSchemaTag;
  j["shape"] = t.shape == PhiShape::AllSubgroups ? "all-subgroups" : "cyclic-only";
  j["entries"] = entry_list_to_json(t.indices, t.entries);
  return j;
}

PhiTuple tuple_from_json(const GroupContext& C, const Json& j) {
  require_schema(j);
  std::string shape = str_field(j, "shape");
  PhiTuple t;
  if (shape == "all-subgroups")
    t.shape = PhiShape::AllSubgroups;
  else if (shape == "cyclic-only")
    t.shape = PhiShape::CyclicOnly;
  else
    raise(ErrorCode::BadInput, "unknown tuple shape " + shape);

  for (const auto& e : field(j, "entries")) {
    t.indices.push_back(static_cast<size_t>(int_field(e, "subgroup")));
    t.entries.push_back(element_from_json(C, field(e, "elt")));
  }

  std::vector<size_t> expect;
  for (size_t hi = 0; hi < C.lat().size(); ++hi)
    if (t.shape == PhiShape::AllSubgroups || C.lat().subs[hi].cyclic)
      expect.push_back(hi);
  if (t.indices != expect)
    raise(ErrorCode::BadInput, "tuple entries do not cover the expected subgroups");
  for (size_t i = 0; i < t.indices.size(); ++i) {
    const BasisSpec* want = t.shape == PhiShape::AllSubgroups
                                ? &C.ab_basis(t.indices[i])
                                : &C.sub_basis(t.indices[i]);
    if (t.entries[i].basis != want)
      raise(ErrorCode::BadInput, "tuple entry carries the wrong basis for its slot");
  }
  return t;
}

Json psi_to_json(const PsiTuple& t) {
  Json j;
  j["schema"] = kSchemaTag;
  j["entries"] = entry_list_to_json(t.indices, t.entries);
  return j;
}

PsiTuple psi_from_json(const GroupContext& C, const Json& j) {
  require_schema(j);
  PsiTuple t;
  for (const auto& e : field(j, "entries")) {
    t.indices.push_back(static_cast<size_t>(int_field(e, "subgroup")));
    t.entries.push_back(element_from_json(C, field(e, "elt")));
  }
  if (t.indices.size() != C.lat().size())
    raise(ErrorCode::BadInput, "tuple entries do not cover the subgroup lattice");
  for (size_t i = 0; i < t.indices.size(); ++i) {
    if (t.indices[i] != i)
      raise(ErrorCode::BadInput, "tuple entries out of order");
    if (t.entries[i].basis != &C.ab_basis(i))
      raise(ErrorCode::BadInput, "tuple entry carries the wrong basis for its slot");
  }
  return t;
}

Json report_to_json(const ConditionReport& r) {
  Json j;
  j["schema"] = kSchemaTag;
  j["precision"] = r.precision;
  j["pass"] = r.pass;
  Json conds = Json::array();
  for (size_t i = 0; i < r.names.size(); ++i) {
    Json c;
    c["name"] = r.names[i];
    c["pass"] = r.passed[i] != 0;
    conds.push_back(std::move(c));
  }
  j["conditions"] = std::move(conds);
  Json wits = Json::array();
  for (const Witness& w : r.witnesses) {
    Json e;
    e["condition"] = w.condition;
    e["subgroup"] = w.hi;
    e["pair"] = w.h1i;
    e["generator"] = w.gen;
    e["residual"] = w.residual;
    wits.push_back(std::move(e));
  }
  j["witnesses"] = std::move(wits);
  return j;
}

Json howell_to_json(const HowellBasis& b) {
  Json j;
  j["schema"] = kSchemaTag;
  j["p"] = b.ctx->p;
  j["precision"] = b.ctx->n_work;
  j["ncols"] = b.ncols;
  Json rows = Json::array();
  for (const ZVec& r : b.rows) {
    Json row = Json::array();
    for (const Zp& z : r) row.push_back(z.residue().get_str());
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  Json pivots = Json::array();
  for (size_t i = 0; i < b.pivot_col.size(); ++i) {
    Json p;
    p["col"] = b.pivot_col[i];
    p["val"] = b.pivot_val[i];
    pivots.push_back(std::move(p));
  }
  j["pivots"] = std::move(pivots);
  return j;
}

Json suite_report_to_json(const SuiteReport& r) {
  Json j;
  j["schema"] = kSchemaTag;
  j["group"] = r.group_name;
  j["p"] = r.p;
  j["order"] = r.order;
  j["check_precision"] = r.n_check;
  j["work_precision"] = r.n_work;
  j["seed"] = r.seed;
  j["pass"] = r.pass;
  Json checks = Json::array();
  for (const CheckResult& c : r.checks) {
    Json e;
    e["name"] = c.name;
    e["family"] = c.family;
    e["pass"] = c.pass;
    e["residual"] = c.residual;
    e["detail"] = c.detail;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  return j;
}

std::string suite_report_text(const SuiteReport& r) {
  std::ostringstream out;
  out << r.group_name << " (p=" << r.p << ", order " << r.order << ", N_check "
      << r.n_check << ", seed " << r.seed << ")\n";
  for (const CheckResult& c : r.checks) {
    out << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name << " ("
        << c.family << ") residual>=" << c.residual;
    if (!c.detail.empty()) out << "  " << c.detail;
    out << "\n";
  }
  out << "  overall: " << (r.pass ? "PASS" : "FAIL") << "\n";
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::BadInput, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::BadInput, "cannot write " + path);
  out << text;
}

}  // namespace wlab
