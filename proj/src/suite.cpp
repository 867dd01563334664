#include "wlab/suite.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <random>
#include <sstream>

#include "wlab/additive.hpp"
#include "wlab/k1.hpp"

namespace wlab {

namespace {

constexpr const char* kFamilies[] = {"additive", "k1", "lattice"};

void validate(const SuiteConfig& cfg) {
  if (cfg.n_check < 1)
    raise(ErrorCode::BadInput, "check precision must be at least 1");
  if (cfg.n_work >= 0 && cfg.n_work <= cfg.n_check)
    raise(ErrorCode::BadInput, "working precision must exceed check precision");
  if (cfg.unit_samples < 1 || cfg.pair_samples < 1 || cfg.tuple_samples < 1 ||
      cfg.lattice_samples < 1)
    raise(ErrorCode::BadInput, "sample counts must be at least 1");
  for (const std::string& f : cfg.families)
    if (std::find(std::begin(kFamilies), std::end(kFamilies), f) ==
        std::end(kFamilies))
      raise(ErrorCode::BadInput, "unknown check family " + f);
  if (!cfg.corrupt.empty() && cfg.corrupt != "phi-tuple" && cfg.corrupt != "psi-tuple")
    raise(ErrorCode::BadInput, "unknown corruption hook " + cfg.corrupt);
}

std::uint64_t check_seed(const SuiteConfig& cfg, const char* name) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(cfg.seed);
  for (const char* c = name; *c; ++c) {
    h ^= static_cast<unsigned char>(*c);
    h *= 1099511628211ull;
  }
  mix(static_cast<std::uint64_t>(cfg.group.order));
  return h;
}

int tuple_residual(const PhiTuple& a, const PhiTuple& b) {
  int out = a.entries.empty() ? 0 : a.entries[0].ctx->n_work;
  for (size_t i = 0; i < a.entries.size(); ++i)
    out = std::min(out, residual_valuation(a.entries[i], b.entries[i]));
  return out;
}

ZpElt class_monomial(const GroupContext& C, size_t c) {
  return zp_monomial(C.conj_basis(), C.prec(), static_cast<int>(c),
                     Zp(C.prec(), 1));
}

ZpElt random_class_elt(const GroupContext& C, std::mt19937_64& rng) {
  ZpElt a = zp_zero(C.conj_basis(), C.prec());
  for (auto& v : a.c) v = Zp(C.prec(), mpz_class(rng()));
  return a;
}

// Unit of Z_p[H^ab] with rng-driven coefficients.
ZpElt random_quotient_unit(const GroupContext& C, size_t hi,
                           std::mt19937_64& rng) {
  ZpElt x = zp_zero(C.ab_basis(hi), C.prec());
  for (auto& v : x.c) v = Zp(C.prec(), mpz_class(rng()));
  while (!is_unit(x)) x.c[0] += Zp(C.prec(), 1);
  return x;
}

void append_thickening(const PrecisionContext& ctx, ZMat& rows, size_t n, int k) {
  Zp shift(ctx, ctx.pow(k));
  for (size_t i = 0; i < n; ++i) {
    ZVec r = zvec(ctx, n);
    r[i] = shift;
    rows.push_back(std::move(r));
  }
}

struct CheckDef {
  const char* name;
  const char* family;
  std::function<void(CheckResult&)> fn;
};

}  // namespace

SuiteReport run_suite(const SuiteConfig& cfg) {
  validate(cfg);
  GroupContext C(cfg.group, cfg.n_check, cfg.n_work, cfg.seed);
  const PrecisionContext& ctx = C.prec();
  const FiniteGroup& G = C.group();
  const int nc = ctx.n_check;
  const long p = ctx.p;
  size_t nsub = C.lat().size();
  size_t nclass = C.conj_basis().size;

  auto cap = [nc](int v) { return std::min(v, nc); };
  auto count = [](size_t n, const char* what) {
    return std::to_string(n) + " " + what;
  };

  std::vector<CheckDef> defs;

  defs.push_back({"tau-beta-identity", "additive", [&](CheckResult& res) {
    int worst = ctx.n_work;
    for (size_t c = 0; c < nclass; ++c) {
      ZpElt a = class_monomial(C, c);
      QpElt back = tau(C, beta_cyclic(C, a));
      to_zp(back);
      worst = std::min(worst, residual_valuation(back, to_qp(a)));
    }
    res.pass = worst >= nc;
    res.residual = cap(worst);
    res.detail = count(nclass, "class vectors, tau integral");
  }});

  defs.push_back({"beta-conditions", "additive", [&](CheckResult& res) {
    res.pass = true;
    for (size_t c = 0; c < nclass; ++c) {
      PhiTuple t = beta_all(C, class_monomial(C, c));
      if (cfg.corrupt == "phi-tuple" && c == 0)
        t.entries[t.entries.size() / 2].c[0] += Zp(ctx, 1);
      ConditionReport r = check_phi_conditions(C, t);
      if (!r.pass) {
        res.pass = false;
        const Witness& w = r.witnesses.front();
        res.detail = w.condition + " violated at subgroup " + std::to_string(w.hi);
        break;
      }
    }
    res.residual = nc;
    if (res.pass) res.detail = count(nclass, "class images satisfy A1-A3");
  }});

  auto span_matches = [&](PhiShape shape, CheckResult& res) {
    std::vector<size_t> off = tuple_offsets(C, shape);
    size_t D = off.back();
    ZMat rows;
    for (size_t c = 0; c < nclass; ++c) {
      ZpElt a = class_monomial(C, c);
      PhiTuple t = shape == PhiShape::AllSubgroups ? beta_all(C, a)
                                                   : beta_cyclic(C, a);
      rows.push_back(tuple_flatten(C, t));
    }
    append_thickening(ctx, rows, D, nc);
    HowellBasis image = howell_form(ctx, std::move(rows), D);
    HowellBasis solved = phi_module_basis(C, shape);
    res.pass = submodule_equal(image, solved);
    res.residual = nc;
    res.detail = "rank " + std::to_string(image.rank()) + " in dimension " +
                 std::to_string(D);
  };
  defs.push_back({"phi-module-cyclic", "additive",
                  [&, span_matches](CheckResult& res) {
                    span_matches(PhiShape::CyclicOnly, res);
                  }});
  defs.push_back({"phi-module-full", "additive",
                  [&, span_matches](CheckResult& res) {
                    span_matches(PhiShape::AllSubgroups, res);
                  }});

  defs.push_back({"projection-roundtrip", "additive", [&](CheckResult& res) {
    int worst = ctx.n_work;
    for (size_t c = 0; c < nclass; ++c) {
      PhiTuple all = beta_all(C, class_monomial(C, c));
      PhiTuple cyc = proj_tuple(C, all);
      PhiTuple lifted = q_map(C, cyc);
      worst = std::min(worst, tuple_residual(lifted, all));
      worst = std::min(worst, tuple_residual(proj_tuple(C, lifted), cyc));
    }
    res.pass = worst >= nc;
    res.residual = cap(worst);
    res.detail = count(nclass, "class images, both compositions");
  }});

  defs.push_back({"v-power-square", "additive", [&](CheckResult& res) {
    int worst = ctx.n_work;
    for (size_t c = 0; c < nclass; ++c) {
      ZpElt a = class_monomial(C, c);
      worst = std::min(worst, tuple_residual(v_map(C, beta_cyclic(C, a)),
                                             beta_cyclic(C, phi_power(C, a))));
    }
    res.pass = worst >= nc;
    res.residual = cap(worst);
    res.detail = count(nclass, "class vectors");
  }});

  defs.push_back({"v-formula-agreement", "additive", [&](CheckResult& res) {
    std::mt19937_64 rng(check_seed(cfg, "v-formula-agreement"));
    int worst = ctx.n_work;
    for (int i = 0; i < cfg.tuple_samples; ++i) {
      ZpElt a = random_class_elt(C, rng);
      PhiTuple w = v_G_map(C, beta_all(C, a));
      worst = std::min(worst, tuple_residual(w, beta_all(C, phi_power(C, a))));
    }
    res.pass = worst >= nc;
    res.residual = cap(worst);
    res.detail = count(static_cast<size_t>(cfg.tuple_samples),
                       "members, composite vs explicit form");
  }});

  defs.push_back({"log-integrality", "k1", [&](CheckResult& res) {
    for (int i = 0; i < cfg.unit_samples; ++i) {
      UnitShape shape = i % 4 == 3 ? UnitShape::Principal : UnitShape::General;
      integral_log_L(C, random_unit(C, shape, 1000000 + i));
    }
    res.pass = true;
    res.residual = nc;
    res.detail = count(static_cast<size_t>(cfg.unit_samples),
                       "units, every coefficient integral");
  }});

  defs.push_back({"log-additivity", "k1", [&](CheckResult& res) {
    int worst = ctx.n_work;
    for (int i = 0; i < cfg.unit_samples; ++i) {
      ZpElt u = random_unit(C, UnitShape::General, 2000000 + 2 * i);
      ZpElt v = random_unit(C, UnitShape::General, 2000001 + 2 * i);
      ZpElt sum = gr_add(integral_log_L(C, u), integral_log_L(C, v));
      worst = std::min(worst,
                       residual_valuation(integral_log_L(C, gr_mul(u, v)), sum));
    }
    res.pass = worst >= nc;
    res.residual = cap(worst);
    res.detail = count(static_cast<size_t>(cfg.unit_samples), "unit pairs");
  }});

  defs.push_back({"log-torsion", "k1", [&](CheckResult& res) {
    res.pass = true;
    for (long a = 1; a < p; ++a) {
      ZpElt u = zp_monomial(C.group_basis(), ctx, 0, teichmueller(ctx, a));
      if (!is_zero(integral_log_L(C, u))) res.pass = false;
    }
    res.residual = nc;
    res.detail = count(static_cast<size_t>(p - 1), "torsion scalars, exact zero");
  }});

  defs.push_back({"log-omega-trivial", "k1", [&](CheckResult& res) {
    res.pass = true;
    for (int i = 0; i < cfg.unit_samples; ++i) {
      ZpElt u = random_unit(C, UnitShape::General, 3000000 + i);
      if (!(omega_map(C, integral_log_L(C, u)) == OmegaValue{})) res.pass = false;
    }
    res.residual = nc;
    res.detail = count(static_cast<size_t>(cfg.unit_samples), "units");
  }});

  defs.push_back({"log-naturality", "k1", [&](CheckResult& res) {
    if (G.order == 1) {
      res.pass = true;
      res.residual = nc;
      res.detail = "trivial group, nothing to quotient";
      return;
    }
    size_t zi = 0;
    for (size_t i = 0; i < nsub; ++i)
      if (C.lat().subs[i].order == p &&
          C.lat().normalizers[i].order == G.order) {
        zi = i;
        break;
      }
    QuotientGroup Q = quotient(G, full_subgroup(G), C.lat().subs[zi]);
    FiniteGroup Gq = quotient_as_group(Q);
    Gq.name = G.name + "/center";
    GroupContext CQ(Gq, nc, -1, cfg.seed);

    int worst = ctx.n_work;
    for (int i = 0; i < cfg.pair_samples; ++i) {
      ZpElt u = random_unit(C, UnitShape::General, 4000000 + i);
      ZpElt uq = zp_zero(CQ.group_basis(), CQ.prec());
      for (int g = 0; g < G.order; ++g)
        uq.c[static_cast<size_t>(Q.project(g))] +=
            Zp(CQ.prec(), u.c[static_cast<size_t>(g)].residue());
      ZpElt lu = integral_log_L(C, u);
      ZpElt pushed = zp_zero(CQ.conj_basis(), CQ.prec());
      for (size_t c = 0; c < lu.c.size(); ++c) {
        int rep = C.conj_basis().display_id(static_cast<int>(c));
        int idx = CQ.conj_basis().index_of_global(Q.project(rep));
        pushed.c[static_cast<size_t>(idx)] += Zp(CQ.prec(), lu.c[c].residue());
      }
      worst = std::min(worst,
                       residual_valuation(pushed, integral_log_L(CQ, uq)));
    }
    res.pass = worst >= nc;
    res.residual = cap(worst);
    res.detail = "quotient by a central order-" + std::to_string(p) + " subgroup";
  }});

  defs.push_back({"norm-cross-path", "k1", [&](CheckResult& res) {
    int worst = ctx.n_work;
    for (int i = 0; i < cfg.pair_samples; ++i) {
      ZpElt u = random_unit(C, UnitShape::General, 5000000 + i);
      for (size_t hi = 0; hi < nsub; ++hi)
        worst = std::min(worst, oliver_taylor_check(C, hi, u));
    }
    res.pass = worst >= nc;
    res.residual = cap(worst);
    res.detail = count(static_cast<size_t>(cfg.pair_samples) * nsub,
                       "subgroup-unit pairs");
  }});

  defs.push_back({"key-identity", "k1", [&](CheckResult& res) {
    int worst = ctx.n_work;
    for (int i = 0; i < cfg.pair_samples; ++i) {
      ZpElt u = random_unit(C, UnitShape::General, 6000000 + i);
      for (size_t hi = 0; hi < nsub; ++hi)
        worst = std::min(worst, key_identity_check(C, hi, u));
    }
    res.pass = worst >= nc;
    res.residual = cap(worst);
    res.detail = count(static_cast<size_t>(cfg.pair_samples) * nsub,
                       "subgroup-unit pairs");
  }});

  defs.push_back({"theta-conditions", "k1", [&](CheckResult& res) {
    res.pass = true;
    for (int i = 0; i < cfg.pair_samples; ++i) {
      PsiTuple t = theta_all(C, random_unit(C, UnitShape::General, 7000000 + i));
      if (cfg.corrupt == "psi-tuple" && i == 0) {
        size_t mid = nsub / 2;
        ZpElt bump = zp_one(C.ab_basis(mid), ctx);
        bump.c[bump.c.size() - 1] += Zp(ctx, p);
        t.entries[mid] = gr_mul(t.entries[mid], bump);
      }
      ConditionReport r = check_psi_conditions(C, t);
      if (!r.pass) {
        res.pass = false;
        const Witness& w = r.witnesses.front();
        res.detail = w.condition + " violated at subgroup " + std::to_string(w.hi);
        break;
      }
    }
    res.residual = nc;
    if (res.pass)
      res.detail = count(static_cast<size_t>(cfg.pair_samples),
                         "norm tuples satisfy M1-M4");
  }});

  defs.push_back({"script-l-square", "k1", [&](CheckResult& res) {
    int worst = ctx.n_work;
    for (int i = 0; i < cfg.pair_samples; ++i) {
      ZpElt u = random_unit(C, UnitShape::General, 8000000 + i);
      worst = std::min(worst, tuple_residual(script_L(C, theta_all(C, u)),
                                             beta_all(C, integral_log_L(C, u))));
    }
    res.pass = worst >= nc;
    res.residual = cap(worst);
    res.detail = count(static_cast<size_t>(cfg.pair_samples), "units");
  }});

  defs.push_back({"theta-kernel", "k1", [&](CheckResult& res) {
    res.pass = true;
    int worst = ctx.n_work;
    for (long a = 1; a < p; ++a) {
      ZpElt u = zp_monomial(C.group_basis(), ctx, 0, teichmueller(ctx, a));
      PsiTuple t = theta_all(C, u);
      if (!check_psi_conditions(C, t).pass) res.pass = false;
      for (const ZpElt& e : script_L(C, t).entries)
        for (const Zp& z : e.c) worst = std::min(worst, z.valuation());
    }
    for (int i = 0; i < cfg.pair_samples; ++i) {
      ZpElt u = random_unit(C, UnitShape::General, 9000000 + 2 * i);
      ZpElt v = random_unit(C, UnitShape::General, 9000001 + 2 * i);
      ZpElt w = gr_mul(gr_mul(u, v), invert_unit(gr_mul(v, u)));
      PsiTuple t = theta_all(C, w);
      for (size_t hi = 0; hi < nsub; ++hi)
        if (!is_zero(gr_sub(t.entries[hi], zp_one(C.ab_basis(hi), ctx))))
          res.pass = false;
      for (const Zp& z : integral_log_L(C, w).c)
        worst = std::min(worst, z.valuation());
    }
    if (worst < nc) res.pass = false;
    res.residual = cap(worst);
    res.detail = "torsion tuples and commutator quotients";
  }});

  defs.push_back({"aug-congruence", "k1", [&](CheckResult& res) {
    res.pass = true;
    for (int i = 0; i < cfg.pair_samples; ++i) {
      PsiTuple t = theta_all(C, random_unit(C, UnitShape::General, 10000000 + i));
      Zp base = augmentation(t.entries[0]);
      for (size_t hi = 0; hi < nsub; ++hi) {
        unsigned long m = static_cast<unsigned long>(p) *
                          static_cast<unsigned long>(C.lat().subs[hi].order);
        if (!(augmentation(t.entries[hi]).pow(m) - base).divisible(1))
          res.pass = false;
      }
    }
    res.residual = nc;
    res.detail = count(static_cast<size_t>(cfg.pair_samples) * nsub,
                       "subgroup-unit pairs mod p");
  }});

  defs.push_back({"alpha-character-choice", "k1", [&](CheckResult& res) {
    if (p == 2) {
      res.pass = true;
      res.residual = nc;
      res.detail = "single order-2 character";
      return;
    }
    std::mt19937_64 rng(check_seed(cfg, "alpha-character-choice"));
    int worst = ctx.n_work;
    size_t tried = 0;
    for (size_t pi : C.lat().cyclic_indices) {
      if (C.lat().subs[pi].order == 1) continue;
      for (int s = 0; s < 3; ++s) {
        ZpElt x = random_quotient_unit(C, pi, rng);
        ZpElt base = alpha(C, pi, x);
        for (long j = 2; j < p; ++j) {
          CyElt d = char_twist(x, 0);
          for (long k = 1; k < p; ++k) d = gr_mul(d, char_twist(x, (j * k) % p));
          ZpElt den{x.basis, x.ctx, {}};
          den.c.reserve(d.c.size());
          for (const auto& cy : d.c) den.c.push_back(cy.base_part());
          ZpElt other = gr_mul(gr_pow(x, static_cast<unsigned long>(p)),
                               invert_unit(den));
          worst = std::min(worst, residual_valuation(base, other));
          ++tried;
        }
      }
    }
    res.pass = worst >= nc;
    res.residual = cap(worst);
    res.detail = count(tried, "character replacements");
  }});

  defs.push_back({"image-lattice", "lattice", [&](CheckResult& res) {
    const QuotientGroup& ab = C.lat().ab[C.full_index()];
    AbelianDecomp dec = abelian_decomposition(C.ab_group(C.full_index()));

    ZMat conds;
    for (size_t j = 0; j < dec.orders.size(); ++j) {
      int e = 0;
      for (long m = dec.orders[j]; m > 1; m /= p) ++e;
      ZVec row = zvec(ctx, nclass);
      for (size_t c = 0; c < nclass; ++c) {
        int rep = C.conj_basis().display_id(static_cast<int>(c));
        long coord = dec.coords[static_cast<size_t>(ab.project(rep))][j];
        row[c] = Zp(ctx, ctx.pow(ctx.n_work - e) * coord);
      }
      conds.push_back(std::move(row));
    }
    if (p == 2) {
      ZVec row = zvec(ctx, nclass);
      for (auto& z : row) z = Zp(ctx, ctx.pow(ctx.n_work - 1));
      conds.push_back(std::move(row));
    }
    HowellBasis kernel = kernel_mod(ctx, std::move(conds), nclass);

    bool contained = true;
    ZMat span;
    for (int i = 0; i < cfg.lattice_samples; ++i) {
      ZpElt L = integral_log_L(C, random_unit(C, UnitShape::General, 11000000 + i));
      ZVec v = L.c;
      if (!kernel.reduce(v)) contained = false;
      span.push_back(std::move(L.c));
    }

    int reduced = nc - 2;
    append_thickening(ctx, span, nclass, reduced);
    HowellBasis span_basis = howell_form(ctx, std::move(span), nclass);
    ZMat kr = kernel.rows;
    append_thickening(ctx, kr, nclass, reduced);
    HowellBasis kernel_red = howell_form(ctx, std::move(kr), nclass);
    bool saturated = submodule_equal(span_basis, kernel_red);

    res.pass = contained;
    res.residual = nc;
    std::ostringstream d;
    d << (saturated ? "saturated" : "unsaturated") << " at modulus p^" << reduced
      << " with " << cfg.lattice_samples << " samples";
    res.detail = d.str();
  }});

  std::vector<size_t> enabled;
  for (size_t i = 0; i < defs.size(); ++i) {
    if (!cfg.families.empty() &&
        std::find(cfg.families.begin(), cfg.families.end(),
                  std::string(defs[i].family)) == cfg.families.end())
      continue;
    enabled.push_back(i);
  }

  std::vector<std::future<CheckResult>> futures;
  for (size_t i : enabled)
    futures.push_back(std::async(std::launch::async, [&defs, i]() {
      const CheckDef& def = defs[i];
      CheckResult res;
      res.name = def.name;
      res.family = def.family;
      try {
        def.fn(res);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::PrecisionExhausted)
          raise(ErrorCode::PrecisionExhausted,
                std::string(def.name) + ": " + e.what());
        res.pass = false;
        res.residual = 0;
        res.detail = e.what();
      }
      return res;
    }));

  SuiteReport rep;
  rep.group_name = G.name;
  rep.p = p;
  rep.order = G.order;
  rep.n_check = nc;
  rep.n_work = ctx.n_work;
  rep.seed = cfg.seed;
  rep.pass = true;
  for (auto& f : futures) {
    rep.checks.push_back(f.get());
    rep.pass = rep.pass && rep.checks.back().pass;
  }
  return rep;
}

std::vector<FiniteGroup> default_suite_groups() {
  std::vector<FiniteGroup> out;
  out.push_back(catalog_group("cyclic", {2}, 2));
  out.push_back(catalog_group("cyclic", {4}, 2));
  out.push_back(catalog_group("cyclic", {8}, 2));
  out.push_back(catalog_group("elementary_abelian", {2}, 2));
  out.push_back(catalog_group("dihedral", {4}, 2));
  out.push_back(catalog_group("quaternion", {8}, 2));
  out.push_back(catalog_group("cyclic", {3}, 3));
  out.push_back(catalog_group("cyclic", {9}, 3));
  out.push_back(catalog_group("elementary_abelian", {2}, 3));
  out.push_back(catalog_group("heisenberg", {}, 3));
  out.push_back(catalog_group("cyclic", {5}, 5));
  out.push_back(catalog_group("cyclic", {25}, 5));
  return out;
}

}  // namespace wlab
