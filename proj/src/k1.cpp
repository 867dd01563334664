#include "wlab/k1.hpp"

#include <algorithm>
#include <random>

namespace wlab {

namespace {

bool nested(const Subgroup& inner, const Subgroup& outer) {
  return std::all_of(inner.members.begin(), inner.members.end(),
                     [&](int m) { return outer.contains(m); });
}

std::uint64_t derive_seed(const GroupContext& C, UnitShape shape,
                          std::uint64_t index) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(C.prec().seed);
  mix(static_cast<std::uint64_t>(C.prec().p));
  mix(static_cast<std::uint64_t>(C.group().order));
  mix(static_cast<std::uint64_t>(shape));
  mix(index);
  return h;
}

void check_psi_tuple(const GroupContext& C, const PsiTuple& t) {
  if (t.indices.size() != C.lat().size() ||
      t.entries.size() != C.lat().size())
    raise(ErrorCode::BadInput, "tuple does not match the subgroup lattice");
  for (size_t i = 0; i < t.indices.size(); ++i) {
    if (t.indices[i] != i)
      raise(ErrorCode::BadInput, "tuple indices out of order");
    if (t.entries[i].basis != &C.ab_basis(i))
      raise(ErrorCode::BasisMismatch, "tuple entry on the wrong basis");
    if (!is_unit(t.entries[i]))
      raise(ErrorCode::NotAUnit, "tuple entry is not a unit");
  }
}

// Push g -> g^p into Z_p[H^ab], then raise to |P^p|. Requires P^p <= H.
ZpElt ver_power(const GroupContext& C, size_t pi, size_t hi, const ZpElt& a) {
  const FiniteGroup& G = C.group();
  const BasisSpec& target = C.ab_basis(hi);
  ZpElt out = zp_zero(target, C.prec());
  for (size_t m = 0; m < a.c.size(); ++m) {
    if (a.c[m].is_zero()) continue;
    int g = a.basis->display_id(static_cast<int>(m));
    int idx = target.index_of_global(G.pow(g, G.prime));
    if (idx < 0)
      raise(ErrorCode::InternalMismatch, "power image escapes the subgroup");
    out.c[static_cast<size_t>(idx)] += a.c[m];
  }
  long pp = C.lat().subs[static_cast<size_t>(C.lat().power_sub[pi])].order;
  return gr_pow(out, static_cast<unsigned long>(pp));
}

int min_residual(const PrecisionContext& ctx, const ZVec& v) {
  int out = ctx.n_work;
  for (const auto& z : v) out = std::min(out, z.valuation());
  return out;
}

}  // namespace

ZpElt random_unit(const GroupContext& C, UnitShape shape,
                  std::uint64_t index) {
  const auto& ctx = C.prec();
  const FiniteGroup& G = C.group();
  std::mt19937_64 rng(derive_seed(C, shape, index));
  long p = ctx.p;
  auto draw = [&](long bound) {
    return static_cast<long>(rng() % static_cast<std::uint64_t>(bound));
  };
  long bound = p * p * p;

  if (shape == UnitShape::Trivial)
    return zp_monomial(C.group_basis(), ctx, static_cast<int>(draw(G.order)),
                       Zp(ctx, 1));

  if (shape == UnitShape::Principal) {
    ZpElt u = zp_one(C.group_basis(), ctx);
    for (auto& v : u.c) v += Zp(ctx, p * draw(bound));
    return u;
  }

  Zp scalar = teichmueller(ctx, 1 + draw(p - 1));
  int mono = static_cast<int>(draw(G.order));
  ZpElt w = zp_zero(C.group_basis(), ctx);
  for (auto& v : w.c) v = Zp(ctx, draw(bound));
  // Pull the augmentation into pZ_p so 1 + w stays principal.
  mpz_class ag = augmentation(w).residue() % p;
  w.c[0] = w.c[0] - Zp(ctx, ag);
  ZpElt u = gr_add(zp_one(C.group_basis(), ctx), w);
  return scalar_mul(scalar, gr_mul(zp_monomial(C.group_basis(), ctx, mono,
                                               Zp(ctx, 1)),
                                   u));
}

ZpElt theta_H(const GroupContext& C, size_t hi, const ZpElt& u) {
  if (u.basis != &C.group_basis())
    raise(ErrorCode::BasisMismatch, "unit must live on the group basis");
  if (!is_unit(u)) raise(ErrorCode::NotAUnit, "theta needs a unit");
  const FiniteGroup& G = C.group();
  const Subgroup& H = C.lat().subs[hi];
  const BasisSpec& ab = C.ab_basis(hi);

  // Right-coset system H x_i, so right multiplication is left-H-linear and
  // the matrix is multiplicative in u.
  std::vector<int> reps;
  for (int x : C.lat().cosets[hi]) reps.push_back(G.inv(x));

  size_t n = reps.size();
  std::vector<std::vector<ZpElt>> m(n, std::vector<ZpElt>(n, zp_zero(ab, C.prec())));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      for (int g = 0; g < G.order; ++g) {
        if (u.c[static_cast<size_t>(g)].is_zero()) continue;
        int t = G.mul(G.mul(reps[i], g), G.inv(reps[j]));
        if (!H.contains(t)) continue;
        int idx = ab.index_of_global(t);
        m[i][j].c[static_cast<size_t>(idx)] += u.c[static_cast<size_t>(g)];
      }
    }
  return det_local(std::move(m));
}

PsiTuple theta_all(const GroupContext& C, const ZpElt& u) {
  PsiTuple out;
  for (size_t hi = 0; hi < C.lat().size(); ++hi) {
    out.indices.push_back(hi);
    out.entries.push_back(theta_H(C, hi, u));
  }
  return out;
}

ZpElt nr_map(const GroupContext& C, size_t hi, size_t h1i, const ZpElt& x) {
  if (!C.pair_admissible(hi, h1i))
    raise(ErrorCode::PreconditionViolated, "nr needs an admissible pair");
  if (x.basis != &C.ab_basis(h1i))
    raise(ErrorCode::BasisMismatch, "nr input must live on the upper quotient");
  if (!is_unit(x)) raise(ErrorCode::NotAUnit, "nr needs a unit");
  const auto& sq = C.subquot(hi, h1i);
  const QuotientGroup& Qab = C.lat().ab[h1i];

  std::vector<int> reps;
  std::vector<char> seen(static_cast<size_t>(Qab.order), 0);
  for (int m = 0; m < Qab.order; ++m) {
    if (seen[static_cast<size_t>(m)]) continue;
    reps.push_back(m);
    for (int e : sq.embed) seen[static_cast<size_t>(Qab.mul(m, e))] = 1;
  }

  size_t n = reps.size();
  std::vector<std::vector<ZpElt>> m(
      n, std::vector<ZpElt>(n, zp_zero(sq.basis, C.prec())));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      int base = Qab.mul(Qab.inv(reps[j]), reps[i]);
      for (size_t k = 0; k < x.c.size(); ++k) {
        if (x.c[k].is_zero()) continue;
        int t = Qab.mul(base, static_cast<int>(k));
        int s = sq.unembed[static_cast<size_t>(t)];
        if (s < 0) continue;
        m[i][j].c[static_cast<size_t>(s)] += x.c[k];
      }
    }
  return det_local(std::move(m));
}

ZpElt alpha(const GroupContext& C, size_t pi, const ZpElt& x) {
  const Subgroup& P = C.lat().subs[pi];
  if (!P.cyclic) raise(ErrorCode::NotCyclic, "alpha needs a cyclic subgroup");
  if (!is_unit(x)) raise(ErrorCode::NotAUnit, "alpha needs a unit");
  if (P.order == 1) return x;
  long p = C.prec().p;

  CyElt d = char_twist(x, 0);
  for (long k = 1; k < p; ++k) d = gr_mul(d, char_twist(x, k));
  ZpElt den{x.basis, x.ctx, {}};
  den.c.reserve(d.c.size());
  for (const auto& cy : d.c) den.c.push_back(cy.base_part());
  return gr_mul(gr_pow(x, static_cast<unsigned long>(p)), invert_unit(den));
}

ZpElt u_map(const GroupContext& C, size_t hi, const PsiTuple& t) {
  check_psi_tuple(C, t);
  ZpElt acc = zp_one(C.ab_basis(hi), C.prec());
  for (size_t pi : C.lat().cyclic_indices) {
    size_t ppi = static_cast<size_t>(C.lat().power_sub[pi]);
    if (!nested(C.lat().subs[ppi], C.lat().subs[hi])) continue;
    acc = gr_mul(acc, ver_power(C, pi, hi, alpha(C, pi, t.entries[pi])));
  }
  return acc;
}

ZpElt integral_log_L(const GroupContext& C, const ZpElt& u) {
  if (u.basis != &C.group_basis())
    raise(ErrorCode::BasisMismatch, "unit must live on the group basis");
  const FiniteGroup& G = C.group();
  const BasisSpec& conj = C.conj_basis();
  QpElt l = conj_project(log_unit(u), conj);

  QpElt phi = qp_zero(conj, C.prec());
  for (size_t c = 0; c < l.c.size(); ++c) {
    int rep = conj.display_id(static_cast<int>(c));
    int tc = conj.index_of_global(G.pow(rep, G.prime));
    phi.c[static_cast<size_t>(tc)] = phi.c[static_cast<size_t>(tc)] + l.c[c];
  }

  QpElt out = qp_zero(conj, C.prec());
  for (size_t c = 0; c < l.c.size(); ++c) {
    out.c[c] = l.c[c] - phi.c[c].div_int(C.prec().p);
    if (!out.c[c].is_integral())
      raise(ErrorCode::IntegralityViolation,
            "integral logarithm produced a fractional coefficient");
  }
  return to_zp(out);
}

PhiTuple script_L(const GroupContext& C, const PsiTuple& t) {
  check_psi_tuple(C, t);
  const auto& ctx = C.prec();
  PhiTuple out;
  out.shape = PhiShape::AllSubgroups;
  for (size_t pi = 0; pi < C.lat().size(); ++pi) {
    long m = ctx.p * C.lat().subs[pi].order;
    ZpElt num = gr_pow(t.entries[pi], static_cast<unsigned long>(m));
    ZpElt y = gr_mul(num, invert_unit(u_map(C, pi, t)));
    if (!(augmentation(y) - Zp(ctx, 1)).divisible(1))
      raise(ErrorCode::M3Violation,
            "quotient is not congruent to one modulo p");
    QpElt l = log_unit(y);
    ZpElt entry = zp_zero(C.ab_basis(pi), ctx);
    for (size_t i = 0; i < l.c.size(); ++i) {
      Qp v = l.c[i].div_int(m);
      if (!v.is_integral())
        raise(ErrorCode::IntegralityViolation,
              "normalized log produced a fractional coefficient");
      entry.c[i] = v.to_zp();
    }
    out.indices.push_back(pi);
    out.entries.push_back(std::move(entry));
  }
  return out;
}

ConditionReport check_psi_conditions(const GroupContext& C, const PsiTuple& t) {
  check_psi_tuple(C, t);
  const FiniteGroup& G = C.group();
  const auto& ctx = C.prec();
  int nc = ctx.n_check;
  ConditionReport R;
  R.precision = nc;
  R.names = {"M1", "M2", "M3", "M4"};
  R.passed = {1, 1, 1, 1};

  for (size_t hi = 0; hi < C.lat().size(); ++hi)
    for (size_t h1i = 0; h1i < C.lat().size(); ++h1i) {
      if (!C.pair_admissible(hi, h1i)) continue;
      ZpElt lhs = nr_map(C, hi, h1i, t.entries[h1i]);
      ZpElt rhs = pi_sub(C, hi, h1i, t.entries[hi]);
      int rv = residual_valuation(lhs, rhs);
      if (rv < nc) {
        R.passed[0] = 0;
        R.witnesses.push_back({"M1", hi, h1i, -1, rv});
      }
    }

  for (int g : G.generator_ids)
    for (size_t hi = 0; hi < C.lat().size(); ++hi) {
      int src = C.lat().find(conjugate_subgroup(G, C.lat().subs[hi], G.inv(g)));
      ZpElt moved = conj_transport(C, g, t.entries[static_cast<size_t>(src)]);
      int rv = residual_valuation(moved, t.entries[hi]);
      if (rv < nc) {
        R.passed[1] = 0;
        R.witnesses.push_back({"M2", hi, static_cast<size_t>(src), g, rv});
      }
    }

  for (size_t pi = 0; pi < C.lat().size(); ++pi) {
    long m = ctx.p * C.lat().subs[pi].order;
    ZpElt num = gr_pow(t.entries[pi], static_cast<unsigned long>(m));
    ZpElt den = u_map(C, pi, t);
    int av = (augmentation(num) - augmentation(den)).valuation();
    if (av < 1) {
      R.passed[2] = 0;
      R.witnesses.push_back({"M3", pi, pi, -1, av});
    }
    if (!C.lat().subs[pi].cyclic) continue;

    ZpElt diff = gr_sub(gr_mul(num, invert_unit(den)),
                        zp_one(C.ab_basis(pi), ctx));
    HowellBasis T = trace_ideal(C, pi);
    ZMat rows;
    Zp fac(ctx, m);
    for (const auto& r : T.rows) {
      ZVec s = r;
      for (auto& z : s) z = z * fac;
      rows.push_back(std::move(s));
    }
    Zp shift(ctx, ctx.pow(nc));
    for (size_t i = 0; i < T.ncols; ++i) {
      ZVec r = zvec(ctx, T.ncols);
      r[i] = shift;
      rows.push_back(std::move(r));
    }
    HowellBasis scaled = howell_form(ctx, std::move(rows), T.ncols);
    ZVec rem = diff.c;
    if (!scaled.reduce(rem)) {
      R.passed[3] = 0;
      R.witnesses.push_back({"M4", pi, pi, -1, min_residual(ctx, rem)});
    }
  }

  R.pass = R.passed[0] && R.passed[1] && R.passed[2] && R.passed[3];
  return R;
}

int key_identity_check(const GroupContext& C, size_t hi, const ZpElt& u) {
  const auto& ctx = C.prec();
  ZpElt L = integral_log_L(C, u);
  ZpElt lhs = beta_H(C, C.full_index(), hi, L, PhiShape::AllSubgroups);

  PsiTuple t = theta_all(C, u);
  long m = ctx.p * C.lat().subs[hi].order;
  ZpElt y = gr_mul(gr_pow(t.entries[hi], static_cast<unsigned long>(m)),
                   invert_unit(u_map(C, hi, t)));
  QpElt rhs = log_unit(y);
  for (auto& v : rhs.c) v = v.div_int(m);
  return residual_valuation(to_qp(lhs), rhs);
}

int oliver_taylor_check(const GroupContext& C, size_t hi, const ZpElt& u) {
  const auto& ctx = C.prec();
  QpElt a = conj_project(log_unit(u), C.conj_basis());
  int s = std::max(0, -min_valuation(a));
  mpz_class shift = ctx.pow(s);
  ZpElt za = to_zp(scalar_mul(Qp::from_integer(ctx, shift), a));
  ZpElt bz = beta_H(C, C.full_index(), hi, za, PhiShape::AllSubgroups);
  QpElt lhs = to_qp(bz);
  for (auto& v : lhs.c) v = v.div_int(shift);
  QpElt rhs = log_unit(theta_H(C, hi, u));
  return residual_valuation(lhs, rhs);
}

}  // namespace wlab
