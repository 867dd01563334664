#include "wlab/additive.hpp"

#include <algorithm>

namespace wlab {

namespace {

const BasisSpec& conj_basis_of(const GroupContext& C, size_t amb) {
  return amb == C.full_index() ? C.conj_basis() : C.sub_conj_basis(amb);
}

bool nested(const Subgroup& inner, const Subgroup& outer) {
  return std::all_of(inner.members.begin(), inner.members.end(),
                     [&](int m) { return outer.contains(m); });
}

// |N_H(P)| for lattice indices
long normalizer_order_in(const GroupContext& C, size_t hi, size_t pi) {
  const FiniteGroup& G = C.group();
  const Subgroup& H = C.lat().subs[hi];
  const Subgroup& P = C.lat().subs[pi];
  long count = 0;
  for (int h : H.members) {
    bool norm = true;
    for (int x : P.members)
      norm = norm && P.contains(G.mul(G.mul(h, x), G.inv(h)));
    if (norm) ++count;
  }
  return count;
}

std::vector<int> tuple_positions(const GroupContext& C, const PhiTuple& t) {
  std::vector<int> pos(C.lat().size(), -1);
  for (size_t i = 0; i < t.indices.size(); ++i)
    pos[t.indices[i]] = static_cast<int>(i);
  return pos;
}

std::vector<size_t> shape_indices(const GroupContext& C, PhiShape shape) {
  if (shape == PhiShape::AllSubgroups) {
    std::vector<size_t> all(C.lat().size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = i;
    return all;
  }
  return C.lat().cyclic_indices;
}

const BasisSpec& entry_basis(const GroupContext& C, PhiShape shape, size_t hi) {
  return shape == PhiShape::AllSubgroups ? C.ab_basis(hi) : C.sub_basis(hi);
}

void check_tuple(const GroupContext& C, const PhiTuple& t) {
  std::vector<size_t> want = shape_indices(C, t.shape);
  if (t.indices != want || t.entries.size() != want.size())
    raise(ErrorCode::BadInput, "tuple does not match the subgroup lattice");
  for (size_t i = 0; i < want.size(); ++i)
    if (t.entries[i].basis != &entry_basis(C, t.shape, want[i]))
      raise(ErrorCode::BasisMismatch, "tuple entry on the wrong basis");
}

template <typename C>
Elt<C> transport_impl(const Elt<C>& x, const BasisSpec& to, Elt<C> out) {
  for (size_t m = 0; m < x.c.size(); ++m) {
    bool zero = x.c[m].is_zero();
    int idx = to.index_of_global(x.basis->display_id(static_cast<int>(m)));
    if (idx < 0) {
      if (zero) continue;
      raise(ErrorCode::BasisMismatch, "coefficient has no target monomial");
    }
    out.c[static_cast<size_t>(idx)] += x.c[m];
  }
  return out;
}

ZMat trace_rows(const GroupContext& C, size_t hi) {
  const FiniteGroup& G = C.group();
  const BasisSpec& ab = C.ab_basis(hi);
  const auto& weyl = C.lat().weyl[hi];
  ZMat rows;
  for (size_t m = 0; m < ab.size; ++m) {
    ZVec row = zvec(C.prec(), ab.size);
    int u = ab.display_id(static_cast<int>(m));
    for (int g : weyl) {
      int y = ab.index_of_global(G.mul(G.mul(g, u), G.inv(g)));
      if (y < 0) raise(ErrorCode::InternalMismatch, "Weyl rep leaves the subgroup");
      row[static_cast<size_t>(y)] += Zp(C.prec(), 1);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// T_H thickened by p^n_check, so contains() decides membership at check
// precision.
HowellBasis trace_ideal_at_check(const GroupContext& C, size_t hi) {
  ZMat rows = trace_rows(C, hi);
  size_t n = C.ab_basis(hi).size;
  Zp shift(C.prec(), C.prec().pow(C.prec().n_check));
  for (size_t i = 0; i < n; ++i) {
    ZVec row = zvec(C.prec(), n);
    row[i] = shift;
    rows.push_back(std::move(row));
  }
  return howell_form(C.prec(), std::move(rows), n);
}

int min_residual_valuation(const ZVec& v) {
  int best = v.empty() ? 0 : v[0].ctx().n_work;
  for (const auto& e : v) best = std::min(best, e.valuation());
  return best;
}

}  // namespace

ZpElt transport(const ZpElt& x, const BasisSpec& to) {
  return transport_impl(x, to, zp_zero(to, *x.ctx));
}

QpElt transport(const QpElt& x, const BasisSpec& to) {
  return transport_impl(x, to, qp_zero(to, *x.ctx));
}

ZpElt conj_transport(const GroupContext& C, int g, const ZpElt& x) {
  const BasisSpec* b = x.basis;
  if (b->kind != BasisKind::Quotient || b->sub_index < 0)
    raise(ErrorCode::BasisMismatch, "conjugation transport needs a subgroup basis");
  size_t hi = static_cast<size_t>(b->sub_index);
  bool sub_family = b == &C.sub_basis(hi);
  if (!sub_family && b != &C.ab_basis(hi))
    raise(ErrorCode::BasisMismatch, "unsupported basis family");
  const FiniteGroup& G = C.group();
  int hj = C.lat().find(conjugate_subgroup(G, C.lat().subs[hi], g));
  if (hj < 0) raise(ErrorCode::InternalMismatch, "conjugate subgroup missing");
  const BasisSpec& to = sub_family ? C.sub_basis(static_cast<size_t>(hj))
                                   : C.ab_basis(static_cast<size_t>(hj));
  std::vector<int> image(b->size);
  for (size_t m = 0; m < b->size; ++m)
    image[m] = G.mul(G.mul(g, b->display_id(static_cast<int>(m))), G.inv(g));
  return pushforward(make_monomial_map(*b, to, image), x);
}

ZpElt t_map(const GroupContext& C, size_t amb, size_t hi, const ZpElt& a) {
  const FiniteGroup& G = C.group();
  const Subgroup& A = C.lat().subs[amb];
  const Subgroup& H = C.lat().subs[hi];
  if (!nested(H, A))
    raise(ErrorCode::PreconditionViolated, "subgroup not inside the ambient");
  if (a.basis != &conj_basis_of(C, amb))
    raise(ErrorCode::BasisMismatch, "input not on the ambient class basis");

  const BasisSpec& target = C.sub_conj_basis(hi);
  std::vector<int> reps = coset_reps_in(G, A.members, H);
  ZpElt out = zp_zero(target, C.prec());
  for (size_t c = 0; c < a.c.size(); ++c) {
    if (a.c[c].is_zero()) continue;
    int g = a.basis->display_id(static_cast<int>(c));
    for (int x : reps) {
      int y = G.conj_by(g, x);
      if (!H.contains(y)) continue;
      out.c[static_cast<size_t>(target.index_of_global(y))] += a.c[c];
    }
  }
  return out;
}

ZpElt beta_H(const GroupContext& C, size_t amb, size_t hi, const ZpElt& a,
             PhiShape shape) {
  if (shape == PhiShape::CyclicOnly && !C.lat().subs[hi].cyclic)
    raise(ErrorCode::NotCyclic, "cyclic-shape component needs a cyclic subgroup");
  return transport(t_map(C, amb, hi, a), entry_basis(C, shape, hi));
}

PhiTuple beta_all(const GroupContext& C, const ZpElt& a) {
  PhiTuple t;
  t.shape = PhiShape::AllSubgroups;
  t.indices = shape_indices(C, t.shape);
  for (size_t hi : t.indices)
    t.entries.push_back(beta_H(C, C.full_index(), hi, a, t.shape));
  return t;
}

PhiTuple beta_cyclic(const GroupContext& C, const ZpElt& a) {
  PhiTuple t;
  t.shape = PhiShape::CyclicOnly;
  t.indices = shape_indices(C, t.shape);
  for (size_t hi : t.indices)
    t.entries.push_back(beta_H(C, C.full_index(), hi, a, t.shape));
  return t;
}

PhiTuple proj_tuple(const GroupContext& C, const PhiTuple& t) {
  if (t.shape != PhiShape::AllSubgroups)
    raise(ErrorCode::BadInput, "projection expects an all-subgroups tuple");
  check_tuple(C, t);
  PhiTuple out;
  out.shape = PhiShape::CyclicOnly;
  out.indices = shape_indices(C, out.shape);
  for (size_t hi : out.indices)
    out.entries.push_back(transport(t.entries[hi], C.sub_basis(hi)));
  return out;
}

PhiTuple tuple_add(const PhiTuple& a, const PhiTuple& b) {
  if (a.shape != b.shape || a.indices != b.indices)
    raise(ErrorCode::BadInput, "tuple shapes differ");
  PhiTuple out = a;
  for (size_t i = 0; i < out.entries.size(); ++i)
    out.entries[i] = gr_add(out.entries[i], b.entries[i]);
  return out;
}

PhiTuple tuple_sub(const PhiTuple& a, const PhiTuple& b) {
  if (a.shape != b.shape || a.indices != b.indices)
    raise(ErrorCode::BadInput, "tuple shapes differ");
  PhiTuple out = a;
  for (size_t i = 0; i < out.entries.size(); ++i)
    out.entries[i] = gr_sub(out.entries[i], b.entries[i]);
  return out;
}

PhiTuple tuple_scalar(const Zp& s, const PhiTuple& t) {
  PhiTuple out = t;
  for (auto& e : out.entries) e = scalar_mul(s, e);
  return out;
}

bool tuple_eq_at(const PhiTuple& a, const PhiTuple& b, int prec) {
  if (a.shape != b.shape || a.indices != b.indices) return false;
  for (size_t i = 0; i < a.entries.size(); ++i)
    if (residual_valuation(a.entries[i], b.entries[i]) < prec) return false;
  return true;
}

ZpElt eta(const GroupContext& C, size_t pi, const ZpElt& x) {
  const Subgroup& P = C.lat().subs[pi];
  if (!P.cyclic) raise(ErrorCode::NotCyclic, "eta needs a cyclic subgroup");
  if (x.basis != &C.sub_basis(pi))
    raise(ErrorCode::BasisMismatch, "input not on the subgroup basis");
  ZpElt out = x;
  for (size_t m = 0; m < out.c.size(); ++m) {
    int g = x.basis->display_id(static_cast<int>(m));
    if (C.group().element_order(g) != P.order) out.c[m] = Zp(C.prec(), 0);
  }
  return out;
}

QpElt tau(const GroupContext& C, const PhiTuple& t) {
  if (t.shape != PhiShape::CyclicOnly)
    raise(ErrorCode::BadInput, "tau expects a cyclic-shape tuple");
  check_tuple(C, t);
  const auto& ctx = C.prec();
  QpElt out = qp_zero(C.conj_basis(), ctx);
  for (size_t i = 0; i < t.indices.size(); ++i) {
    size_t hi = t.indices[i];
    long idx_n = C.group().order / C.lat().normalizers[hi].order;
    long weyl = static_cast<long>(C.lat().weyl[hi].size());
    Qp factor = Qp::from_rational(ctx, 1, mpz_class(idx_n) * weyl);
    ZpElt kept = eta(C, hi, t.entries[i]);
    for (size_t m = 0; m < kept.c.size(); ++m) {
      if (kept.c[m].is_zero()) continue;
      int cls = C.conj_basis().index_of_global(kept.basis->display_id(static_cast<int>(m)));
      out.c[static_cast<size_t>(cls)] += Qp::from_zp(kept.c[m]) * factor;
    }
  }
  return out;
}

ZpElt trace_sub(const GroupContext& C, size_t hi, size_t h1i, const ZpElt& x) {
  const auto& sq = C.subquot(hi, h1i);
  if (x.basis != &C.ab_basis(h1i))
    raise(ErrorCode::BasisMismatch, "trace input not on the outer abelianization");
  // Free module over the embedded subring: every diagonal entry of the
  // multiplication matrix is the fiber coefficient, once per coset rep.
  long mult = C.lat().ab[h1i].order / static_cast<long>(sq.embed.size());
  Zp factor(C.prec(), mult);
  ZpElt out = zp_zero(sq.basis, C.prec());
  for (size_t u = 0; u < x.c.size(); ++u) {
    int s = sq.unembed[u];
    if (s < 0) continue;
    out.c[static_cast<size_t>(s)] += x.c[u] * factor;
  }
  return out;
}

ZpElt pi_sub(const GroupContext& C, size_t hi, size_t h1i, const ZpElt& x) {
  const auto& sq = C.subquot(hi, h1i);
  if (x.basis != &C.ab_basis(hi))
    raise(ErrorCode::BasisMismatch, "projection input not on the inner abelianization");
  return transport(x, sq.basis);
}

HowellBasis trace_ideal(const GroupContext& C, size_t hi) {
  return howell_form(C.prec(), trace_rows(C, hi), C.ab_basis(hi).size);
}

ConditionReport check_phi_conditions(const GroupContext& C, const PhiTuple& t) {
  check_tuple(C, t);
  const FiniteGroup& G = C.group();
  int nc = C.prec().n_check;
  ConditionReport R;
  R.precision = nc;
  R.names = {"A1", "A2", "A3"};
  R.passed = {1, 1, 1};

  std::vector<int> pos = tuple_positions(C, t);

  if (t.shape == PhiShape::CyclicOnly) {
    for (size_t i = 0; i < t.indices.size(); ++i)
      for (size_t j = 0; j < t.indices.size(); ++j) {
        size_t hi = t.indices[i], h1i = t.indices[j];
        if (!nested(C.lat().subs[hi], C.lat().subs[h1i])) continue;
        ZpElt cv = transport(t.entries[j], conj_basis_of(C, h1i));
        ZpElt down = beta_H(C, h1i, hi, cv, PhiShape::CyclicOnly);
        int rv = residual_valuation(down, t.entries[i]);
        if (rv < nc) {
          R.passed[0] = 0;
          R.witnesses.push_back({"A1", hi, h1i, -1, rv});
        }
      }
  } else {
    for (size_t hi = 0; hi < C.lat().size(); ++hi)
      for (size_t h1i = 0; h1i < C.lat().size(); ++h1i) {
        if (!C.pair_admissible(hi, h1i)) continue;
        ZpElt lhs = trace_sub(C, hi, h1i, t.entries[h1i]);
        ZpElt rhs = pi_sub(C, hi, h1i, t.entries[hi]);
        int rv = residual_valuation(lhs, rhs);
        if (rv < nc) {
          R.passed[0] = 0;
          R.witnesses.push_back({"A1", hi, h1i, -1, rv});
        }
      }
  }

  for (int g : G.generator_ids)
    for (size_t i = 0; i < t.indices.size(); ++i) {
      size_t hi = t.indices[i];
      int src = C.lat().find(conjugate_subgroup(G, C.lat().subs[hi], G.inv(g)));
      int j = pos[static_cast<size_t>(src)];
      if (j < 0) raise(ErrorCode::InternalMismatch, "conjugate component missing");
      ZpElt moved = conj_transport(C, g, t.entries[static_cast<size_t>(j)]);
      int rv = residual_valuation(moved, t.entries[i]);
      if (rv < nc) {
        R.passed[1] = 0;
        R.witnesses.push_back({"A2", hi, static_cast<size_t>(src), g, rv});
      }
    }

  for (size_t i = 0; i < t.indices.size(); ++i) {
    size_t hi = t.indices[i];
    if (!C.lat().subs[hi].cyclic) continue;
    ZpElt on_ab = t.shape == PhiShape::CyclicOnly
                      ? transport(t.entries[i], C.ab_basis(hi))
                      : t.entries[i];
    HowellBasis T = trace_ideal_at_check(C, hi);
    ZVec v = on_ab.c;
    if (!T.reduce(v)) {
      R.passed[2] = 0;
      R.witnesses.push_back({"A3", hi, hi, -1, min_residual_valuation(v)});
    }
  }

  R.pass = R.passed[0] && R.passed[1] && R.passed[2];
  return R;
}

std::vector<size_t> tuple_offsets(const GroupContext& C, PhiShape shape) {
  std::vector<size_t> idx = shape_indices(C, shape);
  std::vector<size_t> off;
  size_t acc = 0;
  for (size_t hi : idx) {
    off.push_back(acc);
    acc += entry_basis(C, shape, hi).size;
  }
  off.push_back(acc);
  return off;
}

ZVec tuple_flatten(const GroupContext& C, const PhiTuple& t) {
  check_tuple(C, t);
  std::vector<size_t> off = tuple_offsets(C, t.shape);
  ZVec v = zvec(C.prec(), off.back());
  for (size_t i = 0; i < t.entries.size(); ++i)
    for (size_t m = 0; m < t.entries[i].c.size(); ++m)
      v[off[i] + m] = t.entries[i].c[m];
  return v;
}

PhiTuple tuple_from_flat(const GroupContext& C, PhiShape shape, const ZVec& v) {
  std::vector<size_t> off = tuple_offsets(C, shape);
  if (v.size() != off.back())
    raise(ErrorCode::DimensionMismatch, "flat vector has the wrong length");
  PhiTuple t;
  t.shape = shape;
  t.indices = shape_indices(C, shape);
  for (size_t i = 0; i < t.indices.size(); ++i) {
    ZpElt e = zp_zero(entry_basis(C, shape, t.indices[i]), C.prec());
    for (size_t m = 0; m < e.c.size(); ++m) e.c[m] = v[off[i] + m];
    t.entries.push_back(std::move(e));
  }
  return t;
}

HowellBasis phi_module_basis(const GroupContext& C, PhiShape shape) {
  const FiniteGroup& G = C.group();
  const auto& ctx = C.prec();
  std::vector<size_t> idx = shape_indices(C, shape);
  std::vector<size_t> off = tuple_offsets(C, shape);
  size_t D = off.back();
  Zp one(ctx, 1);

  std::vector<int> pos(C.lat().size(), -1);
  for (size_t i = 0; i < idx.size(); ++i) pos[idx[i]] = static_cast<int>(i);

  ZMat rows;
  auto monomial_on = [&](const BasisSpec& b, size_t m) {
    return zp_monomial(b, ctx, static_cast<int>(m), Zp(ctx, 1));
  };

  if (shape == PhiShape::CyclicOnly) {
    for (size_t i = 0; i < idx.size(); ++i)
      for (size_t j = 0; j < idx.size(); ++j) {
        size_t hi = idx[i], h1i = idx[j];
        if (!nested(C.lat().subs[hi], C.lat().subs[h1i])) continue;
        const BasisSpec& src = C.sub_basis(h1i);
        std::vector<ZpElt> cols;
        for (size_t m = 0; m < src.size; ++m) {
          ZpElt cv = transport(monomial_on(src, m), conj_basis_of(C, h1i));
          cols.push_back(beta_H(C, h1i, hi, cv, shape));
        }
        for (size_t tgt = 0; tgt < C.sub_basis(hi).size; ++tgt) {
          ZVec r = zvec(ctx, D);
          for (size_t m = 0; m < src.size; ++m) r[off[j] + m] += cols[m].c[tgt];
          r[off[i] + tgt] = r[off[i] + tgt] - one;
          rows.push_back(std::move(r));
        }
      }
  } else {
    for (size_t hi = 0; hi < C.lat().size(); ++hi)
      for (size_t h1i = 0; h1i < C.lat().size(); ++h1i) {
        if (!C.pair_admissible(hi, h1i)) continue;
        const BasisSpec& sq = C.subquot(hi, h1i).basis;
        const BasisSpec& outer = C.ab_basis(h1i);
        const BasisSpec& inner = C.ab_basis(hi);
        std::vector<ZpElt> tr_cols, pi_cols;
        for (size_t m = 0; m < outer.size; ++m)
          tr_cols.push_back(trace_sub(C, hi, h1i, monomial_on(outer, m)));
        for (size_t m = 0; m < inner.size; ++m)
          pi_cols.push_back(pi_sub(C, hi, h1i, monomial_on(inner, m)));
        for (size_t tgt = 0; tgt < sq.size; ++tgt) {
          ZVec r = zvec(ctx, D);
          for (size_t m = 0; m < outer.size; ++m)
            r[off[h1i] + m] += tr_cols[m].c[tgt];
          for (size_t m = 0; m < inner.size; ++m)
            r[off[hi] + m] = r[off[hi] + m] - pi_cols[m].c[tgt];
          rows.push_back(std::move(r));
        }
      }
  }

  for (int g : G.generator_ids)
    for (size_t i = 0; i < idx.size(); ++i) {
      size_t hi = idx[i];
      int src = C.lat().find(conjugate_subgroup(G, C.lat().subs[hi], G.inv(g)));
      int j = pos[static_cast<size_t>(src)];
      const BasisSpec& sb = entry_basis(C, shape, static_cast<size_t>(src));
      for (size_t m = 0; m < sb.size; ++m) {
        ZpElt moved = conj_transport(C, g, monomial_on(sb, m));
        for (size_t tgt = 0; tgt < moved.c.size(); ++tgt) {
          if (moved.c[tgt].is_zero()) continue;
          ZVec r = zvec(ctx, D);
          r[off[static_cast<size_t>(j)] + m] += moved.c[tgt];
          r[off[i] + tgt] = r[off[i] + tgt] - one;
          rows.push_back(std::move(r));
        }
      }
    }

  for (size_t i = 0; i < idx.size(); ++i) {
    size_t hi = idx[i];
    if (!C.lat().subs[hi].cyclic) continue;
    HowellBasis T = trace_ideal(C, hi);
    ZMat conds = membership_conditions(ctx, T.rows, T.ncols);
    for (const auto& cond : conds) {
      ZVec r = zvec(ctx, D);
      for (size_t m = 0; m < cond.size(); ++m) r[off[i] + m] = cond[m];
      rows.push_back(std::move(r));
    }
  }

  // Exact kernel at working precision, then cut down to the check modulus.
  // Solving the congruences directly at N_check would admit solutions that
  // do not lift, once a condition coefficient shares a factor with p.
  ZMat gens = kernel_mod(ctx, std::move(rows), D).rows;
  Zp shift(ctx, ctx.pow(ctx.n_check));
  for (size_t i = 0; i < D; ++i) {
    ZVec r = zvec(ctx, D);
    r[i] = shift;
    gens.push_back(std::move(r));
  }
  return howell_form(ctx, std::move(gens), D);
}

PhiTuple q_map(const GroupContext& C, const PhiTuple& t) {
  if (t.shape != PhiShape::CyclicOnly)
    raise(ErrorCode::BadInput, "q expects a cyclic-shape tuple");
  check_tuple(C, t);
  const auto& ctx = C.prec();
  std::vector<int> pos = tuple_positions(C, t);

  PhiTuple out;
  out.shape = PhiShape::AllSubgroups;
  out.indices = shape_indices(C, out.shape);
  for (size_t hi : out.indices) {
    const Subgroup& H = C.lat().subs[hi];
    QpElt acc = qp_zero(C.ab_basis(hi), ctx);
    for (size_t pi : C.lat().cyclic_indices) {
      if (!nested(C.lat().subs[pi], H)) continue;
      long nh = normalizer_order_in(C, hi, pi);
      long denom = (H.order / nh) * (nh / C.lat().subs[pi].order);
      Qp factor = Qp::from_rational(ctx, 1, denom);
      ZpElt kept = eta(C, pi, t.entries[static_cast<size_t>(pos[pi])]);
      for (size_t m = 0; m < kept.c.size(); ++m) {
        if (kept.c[m].is_zero()) continue;
        int tgt = C.ab_basis(hi).index_of_global(
            kept.basis->display_id(static_cast<int>(m)));
        acc.c[static_cast<size_t>(tgt)] += Qp::from_zp(kept.c[m]) * factor;
      }
    }
    out.entries.push_back(to_zp(acc));
  }
  return out;
}

PhiTuple v_map(const GroupContext& C, const PhiTuple& t) {
  if (t.shape != PhiShape::CyclicOnly)
    raise(ErrorCode::BadInput, "v expects a cyclic-shape tuple");
  check_tuple(C, t);
  const FiniteGroup& G = C.group();
  const auto& ctx = C.prec();
  std::vector<int> pos = tuple_positions(C, t);

  PhiTuple out;
  out.shape = PhiShape::CyclicOnly;
  out.indices = shape_indices(C, out.shape);
  for (size_t hi : out.indices) {
    const Subgroup& H = C.lat().subs[hi];
    QpElt acc = qp_zero(C.sub_basis(hi), ctx);
    for (size_t pi : C.lat().cyclic_indices) {
      int ppi = C.lat().power_sub[pi];
      const Subgroup& PP = C.lat().subs[static_cast<size_t>(ppi)];
      if (!nested(PP, H)) continue;
      long num = C.lat().subs[pi].order / PP.order;
      long den = H.order / PP.order;
      Qp factor = Qp::from_rational(ctx, num, den);
      ZpElt kept = eta(C, pi, t.entries[static_cast<size_t>(pos[pi])]);
      for (size_t m = 0; m < kept.c.size(); ++m) {
        if (kept.c[m].is_zero()) continue;
        int gp = G.pow(kept.basis->display_id(static_cast<int>(m)), num);
        int tgt = C.sub_basis(hi).index_of_global(gp);
        acc.c[static_cast<size_t>(tgt)] += Qp::from_zp(kept.c[m]) * factor;
      }
    }
    out.entries.push_back(to_zp(acc));
  }
  return out;
}

PhiTuple v_G_map(const GroupContext& C, const PhiTuple& t) {
  if (t.shape != PhiShape::AllSubgroups)
    raise(ErrorCode::BadInput, "v_G expects an all-subgroups tuple");
  check_tuple(C, t);
  const FiniteGroup& G = C.group();
  const auto& ctx = C.prec();

  PhiTuple cyc = proj_tuple(C, t);
  PhiTuple composite = q_map(C, v_map(C, cyc));

  std::vector<int> pos = tuple_positions(C, cyc);
  PhiTuple expl;
  expl.shape = PhiShape::AllSubgroups;
  expl.indices = shape_indices(C, expl.shape);
  for (size_t hi : expl.indices) {
    const Subgroup& H = C.lat().subs[hi];
    QpElt acc = qp_zero(C.ab_basis(hi), ctx);
    for (size_t pi : C.lat().cyclic_indices) {
      int ppi = C.lat().power_sub[pi];
      const Subgroup& PP = C.lat().subs[static_cast<size_t>(ppi)];
      if (!nested(PP, H)) continue;
      long num = C.lat().subs[pi].order / PP.order;
      long nh = normalizer_order_in(C, hi, static_cast<size_t>(ppi));
      long denom = (H.order / nh) * (nh / PP.order);
      Qp factor = Qp::from_rational(ctx, num, denom);
      ZpElt kept = eta(C, pi, cyc.entries[static_cast<size_t>(pos[pi])]);
      for (size_t m = 0; m < kept.c.size(); ++m) {
        if (kept.c[m].is_zero()) continue;
        int gp = G.pow(kept.basis->display_id(static_cast<int>(m)), num);
        int tgt = C.ab_basis(hi).index_of_global(gp);
        acc.c[static_cast<size_t>(tgt)] += Qp::from_zp(kept.c[m]) * factor;
      }
    }
    expl.entries.push_back(to_zp(acc));
  }

  if (!tuple_eq_at(composite, expl, ctx.n_check))
    raise(ErrorCode::InternalMismatch, "composite and explicit forms disagree");
  return composite;
}

ZpElt phi_power(const GroupContext& C, const ZpElt& a) {
  if (a.basis != &C.conj_basis())
    raise(ErrorCode::BasisMismatch, "input not on the class basis");
  const FiniteGroup& G = C.group();
  ZpElt out = zp_zero(C.conj_basis(), C.prec());
  for (size_t c = 0; c < a.c.size(); ++c) {
    if (a.c[c].is_zero()) continue;
    int g = a.basis->display_id(static_cast<int>(c));
    int tgt = a.basis->index_of_global(G.pow(g, G.prime));
    out.c[static_cast<size_t>(tgt)] += a.c[c];
  }
  return out;
}

OmegaValue omega_map(const GroupContext& C, const ZpElt& a) {
  if (a.basis != &C.conj_basis())
    raise(ErrorCode::BasisMismatch, "input not on the class basis");
  const QuotientGroup& ab = C.lat().ab[C.full_index()];
  OmegaValue w;
  if (C.group().prime == 2) {
    mpz_class total = augmentation(a).residue();
    w.sign = mpz_odd_p(total.get_mpz_t()) ? -1 : 1;
  }
  int acc = 0;
  for (size_t c = 0; c < a.c.size(); ++c) {
    if (a.c[c].is_zero()) continue;
    int g = a.basis->display_id(static_cast<int>(c));
    int coset = ab.project(g);
    long ord = 1;
    for (int t = coset; t != 0; t = ab.mul(t, coset)) ++ord;
    unsigned long e = mpz_fdiv_ui(a.c[c].residue().get_mpz_t(),
                                  static_cast<unsigned long>(ord));
    acc = ab.mul(acc, ab.pow(coset, static_cast<long>(e)));
  }
  w.ab_coset = acc;
  return w;
}

OmegaValue omega_map(const GroupContext& C, const QpElt& a) {
  for (const auto& v : a.c)
    if (!v.is_integral())
      raise(ErrorCode::NonIntegralInput, "class coefficients must be integral");
  return omega_map(C, to_zp(a));
}

}  // namespace wlab
