#include "wlab/groupring.hpp"

#include <algorithm>
#include <functional>

namespace wlab {

int BasisSpec::mul(int a, int b) const {
  switch (kind) {
    case BasisKind::Group:
      return G->mul(a, b);
    case BasisKind::Quotient:
      return Q->mul(a, b);
    default:
      raise(ErrorCode::BasisMismatch, "class-module basis has no product");
  }
}

int BasisSpec::inv(int a) const {
  switch (kind) {
    case BasisKind::Group:
      return G->inv(a);
    case BasisKind::Quotient:
      return Q->inv(a);
    default:
      raise(ErrorCode::BasisMismatch, "class-module basis has no inverses");
  }
}

int BasisSpec::display_id(int m) const {
  switch (kind) {
    case BasisKind::Group:
      return m;
    case BasisKind::Quotient:
      return Q->coset_rep[static_cast<size_t>(m)];
    default:
      return classes->representatives[static_cast<size_t>(m)];
  }
}

int BasisSpec::index_of_global(int g) const {
  if (g < 0 || g >= G->order) return -1;
  switch (kind) {
    case BasisKind::Group:
      return g;
    case BasisKind::Quotient:
      return Q->coset_of[static_cast<size_t>(g)];
    default:
      return classes->class_of[static_cast<size_t>(g)];
  }
}

ZpElt zp_zero(const BasisSpec& b, const PrecisionContext& ctx) {
  return {&b, &ctx, std::vector<Zp>(b.size, Zp(ctx, 0))};
}

QpElt qp_zero(const BasisSpec& b, const PrecisionContext& ctx) {
  return {&b, &ctx, std::vector<Qp>(b.size, Qp(ctx))};
}

CyElt cy_zero(const BasisSpec& b, const PrecisionContext& ctx) {
  return {&b, &ctx, std::vector<Cyclo>(b.size, Cyclo(ctx))};
}

ZpElt zp_one(const BasisSpec& b, const PrecisionContext& ctx) {
  ZpElt x = zp_zero(b, ctx);
  x.c[0] = Zp(ctx, 1);
  return x;
}

ZpElt zp_monomial(const BasisSpec& b, const PrecisionContext& ctx, int m,
                  const Zp& coeff) {
  ZpElt x = zp_zero(b, ctx);
  x.c.at(static_cast<size_t>(m)) = coeff;
  return x;
}

bool is_zero(const ZpElt& x) {
  return std::all_of(x.c.begin(), x.c.end(), [](const Zp& v) { return v.is_zero(); });
}

bool is_zero(const QpElt& x) {
  return std::all_of(x.c.begin(), x.c.end(), [](const Qp& v) { return v.is_zero(); });
}

ZpElt gr_pow(const ZpElt& x, unsigned long e) {
  ZpElt acc = zp_one(*x.basis, *x.ctx);
  ZpElt base = x;
  while (e) {
    if (e & 1) acc = gr_mul(acc, base);
    e >>= 1;
    if (e) base = gr_mul(base, base);
  }
  return acc;
}

namespace {

// Monomial image table of h -> g h g^-1, validated fiberwise.
std::vector<int> conj_monomial_map(int g, const BasisSpec& b) {
  const FiniteGroup& G = *b.G;
  auto image = [&](int h) { return G.mul(G.mul(g, h), G.inv(g)); };
  std::vector<int> map(b.size, -1);
  std::vector<char> hit(b.size, 0);
  for (size_t m = 0; m < b.size; ++m) {
    int y = b.index_of_global(image(b.display_id(static_cast<int>(m))));
    if (y < 0)
      raise(ErrorCode::ActionUndefined, "conjugation leaves the basis support");
    map[m] = y;
    hit[static_cast<size_t>(y)] = 1;
  }
  for (char h : hit)
    if (!h) raise(ErrorCode::ActionUndefined, "conjugation not bijective on basis");
  // Reps determine the map only if whole fibers travel together.
  for (int s = 0; s < G.order; ++s) {
    int m = b.index_of_global(s);
    if (m < 0) continue;
    if (b.index_of_global(image(s)) != map[static_cast<size_t>(m)])
      raise(ErrorCode::ActionUndefined, "conjugation tears a fiber apart");
  }
  return map;
}

}  // namespace

template <typename C>
Elt<C> conj_action(int g, const Elt<C>& x) {
  std::vector<int> map = conj_monomial_map(g, *x.basis);
  Elt<C> out = x;
  for (size_t m = 0; m < x.c.size(); ++m)
    out.c[static_cast<size_t>(map[m])] = x.c[m];
  return out;
}

template ZpElt conj_action<Zp>(int, const ZpElt&);
template QpElt conj_action<Qp>(int, const QpElt&);

MonomialMap make_monomial_map(const BasisSpec& from, const BasisSpec& to,
                              const std::vector<int>& global_image) {
  if (global_image.size() != from.size)
    raise(ErrorCode::DimensionMismatch, "image table size mismatch");
  MonomialMap f;
  f.from = &from;
  f.to = &to;
  f.map.resize(from.size);
  for (size_t m = 0; m < from.size; ++m) {
    int t = to.index_of_global(global_image[m]);
    if (t < 0) raise(ErrorCode::BadInput, "image outside target basis");
    f.map[m] = t;
  }
  if (from.multiplicative() && to.multiplicative()) {
    for (size_t a = 0; a < from.size; ++a)
      for (size_t b = 0; b < from.size; ++b)
        if (f.map[static_cast<size_t>(from.mul(static_cast<int>(a), static_cast<int>(b)))] !=
            to.mul(f.map[a], f.map[b]))
          raise(ErrorCode::NotAHomomorphism, "monomial map breaks products");
  }
  return f;
}

bool is_unit(const ZpElt& x) { return augmentation(x).is_unit(); }

namespace {

// Nilpotency index of the augmentation ideal of F_p[basis group].
int radical_index_basis_mul(size_t size, long p,
                            const std::function<int(int, int)>& mul) {
  if (size == 1) return 1;
  size_t n = size;
  auto reduce_into = [&](std::vector<std::vector<long>>& rows,
                         std::vector<long> v) {
    for (auto& r : rows) {
      size_t lead = 0;
      while (lead < n && r[lead] == 0) ++lead;
      if (lead == n) continue;
      if (v[lead] == 0) continue;
      long f = v[lead];
      for (size_t j = 0; j < n; ++j) v[j] = ((v[j] - f * r[j]) % p + p) % p;
    }
    size_t lead = 0;
    while (lead < n && v[lead] == 0) ++lead;
    if (lead == n) return;
    // Normalize the leading entry to 1.
    long inv = 1;
    for (long t = 1; t < p; ++t)
      if (v[lead] * t % p == 1) inv = t;
    for (size_t j = 0; j < n; ++j) v[j] = v[j] * inv % p;
    rows.push_back(std::move(v));
  };

  std::vector<std::vector<long>> basis;
  for (size_t m = 1; m < n; ++m) {
    std::vector<long> v(n, 0);
    v[m] = 1;
    v[0] = p - 1;
    reduce_into(basis, std::move(v));
  }
  int e = 1;
  while (!basis.empty()) {
    ++e;
    std::vector<std::vector<long>> next;
    for (const auto& v : basis)
      for (size_t m = 1; m < n; ++m) {
        std::vector<long> w(n, 0);
        for (size_t i = 0; i < n; ++i) {
          if (v[i] == 0) continue;
          size_t shifted = static_cast<size_t>(mul(static_cast<int>(i), static_cast<int>(m)));
          w[shifted] = (w[shifted] + v[i]) % p;
          w[i] = ((w[i] - v[i]) % p + p) % p;
        }
        reduce_into(next, std::move(w));
      }
    basis = std::move(next);
    if (e > static_cast<int>(n) * static_cast<int>(n))
      raise(ErrorCode::PreconditionViolated, "augmentation ideal not nilpotent");
  }
  return e;
}

int radical_of(const BasisSpec& b, long p) {
  if (b.radical > 0) return b.radical;
  return radical_index_basis_mul(b.size, p, [&](int x, int y) { return b.mul(x, y); });
}

}  // namespace

int radical_index(const FiniteGroup& G) {
  return radical_index_basis_mul(static_cast<size_t>(G.order), G.prime,
                                 [&](int a, int b) { return G.mul(a, b); });
}

ZpElt invert_unit(const ZpElt& x) {
  const PrecisionContext& ctx = *x.ctx;
  Zp aug = augmentation(x);
  if (!aug.is_unit()) raise(ErrorCode::NotAUnit, "augmentation divisible by p");
  int e = radical_of(*x.basis, ctx.p);

  // Inverse mod p by the nilpotent geometric series of w = 1 - x/aug.
  ZpElt one = zp_one(*x.basis, ctx);
  Zp cinv = aug.inverse();
  ZpElt w = gr_sub(one, scalar_mul(cinv, x));
  ZpElt inv = one;
  ZpElt wk = one;
  for (int k = 1; k < e; ++k) {
    wk = gr_mul(wk, w);
    inv = gr_add(inv, wk);
  }
  inv = scalar_mul(cinv, inv);

  // Hensel doubling to full working precision.
  int steps = 1;
  while ((1 << steps) < ctx.n_work) ++steps;
  ZpElt two = scalar_mul(Zp(ctx, 2), one);
  for (int s = 0; s < steps; ++s)
    inv = gr_mul(inv, gr_sub(two, gr_mul(x, inv)));

  if (!is_zero(gr_sub(gr_mul(x, inv), one)))
    raise(ErrorCode::InternalMismatch, "inverse verification failed");
  return inv;
}

QpElt log_unit(const ZpElt& u) {
  const PrecisionContext& ctx = *u.ctx;
  Zp aug = augmentation(u);
  if (!aug.is_unit()) raise(ErrorCode::NotAUnit, "augmentation divisible by p");
  // Strip the Teichmueller scalar; log kills it exactly.
  Zp c = teichmueller(ctx, aug.residue());
  ZpElt v = scalar_mul(c.inverse(), u);
  ZpElt one = zp_one(*u.basis, ctx);
  ZpElt w = gr_sub(v, one);

  int e = radical_of(*u.basis, ctx.p);
  long cap = static_cast<long>(e) * ctx.n_work + 8;

  QpElt acc = qp_zero(*u.basis, ctx);
  ZpElt wk = one;
  for (long k = 1; k <= cap; ++k) {
    wk = gr_mul(wk, w);
    if (is_zero(wk)) return acc;
    for (size_t i = 0; i < wk.c.size(); ++i) {
      if (wk.c[i].is_zero()) continue;
      Qp term = Qp::from_zp(wk.c[i]).div_int(k);
      if (k % 2 == 0) term = -term;
      acc.c[i] += term;
    }
  }
  raise(ErrorCode::PrecisionExhausted, "log series did not terminate");
}

namespace {

template <typename C>
Elt<C> conj_project_impl(const Elt<C>& x, const BasisSpec& conj, Elt<C> out) {
  if (!conj.classes || conj.G != x.basis->G)
    raise(ErrorCode::BasisMismatch, "target is not a class module of this group");
  for (size_t m = 0; m < x.c.size(); ++m) {
    int cls = conj.index_of_global(x.basis->display_id(static_cast<int>(m)));
    if (cls < 0) raise(ErrorCode::BasisMismatch, "monomial outside the class set");
    out.c[static_cast<size_t>(cls)] += x.c[m];
  }
  return out;
}

}  // namespace

ZpElt conj_project(const ZpElt& x, const BasisSpec& conj) {
  return conj_project_impl(x, conj, zp_zero(conj, *x.ctx));
}

QpElt conj_project(const QpElt& x, const BasisSpec& conj) {
  return conj_project_impl(x, conj, qp_zero(conj, *x.ctx));
}

namespace {

// Samuelson-Berkowitz characteristic polynomial; division-free.
ZpElt berkowitz_det(const std::vector<std::vector<ZpElt>>& m) {
  size_t n = m.size();
  const BasisSpec& b = *m[0][0].basis;
  const PrecisionContext& ctx = *m[0][0].ctx;
  ZpElt one = zp_one(b, ctx);

  std::vector<ZpElt> pv{one, gr_neg(m[0][0])};
  for (size_t r = 2; r <= n; ++r) {
    std::vector<ZpElt> c(r + 1, zp_zero(b, ctx));
    c[0] = one;
    c[1] = gr_neg(m[r - 1][r - 1]);
    std::vector<ZpElt> vec(r - 1, zp_zero(b, ctx));
    for (size_t i = 0; i + 1 < r; ++i) vec[i] = m[i][r - 1];
    for (size_t k = 2; k <= r; ++k) {
      ZpElt dot = zp_zero(b, ctx);
      for (size_t i = 0; i + 1 < r; ++i)
        dot = gr_add(dot, gr_mul(m[r - 1][i], vec[i]));
      c[k] = gr_neg(dot);
      if (k == r) break;
      std::vector<ZpElt> nxt(r - 1, zp_zero(b, ctx));
      for (size_t i = 0; i + 1 < r; ++i)
        for (size_t j = 0; j + 1 < r; ++j)
          nxt[i] = gr_add(nxt[i], gr_mul(m[i][j], vec[j]));
      vec = std::move(nxt);
    }
    std::vector<ZpElt> next(r + 1, zp_zero(b, ctx));
    for (size_t i = 0; i <= r; ++i)
      for (size_t j = 0; j < r && j <= i; ++j)
        if (i - j <= r) next[i] = gr_add(next[i], gr_mul(c[i - j], pv[j]));
    pv = std::move(next);
  }
  ZpElt det = pv[n];
  if (n % 2 == 1) det = gr_neg(det);
  return det;
}

}  // namespace

ZpElt det_local(std::vector<std::vector<ZpElt>> m) {
  size_t n = m.size();
  if (n == 0) raise(ErrorCode::BadInput, "empty matrix");
  for (const auto& row : m)
    if (row.size() != n) raise(ErrorCode::DimensionMismatch, "matrix not square");
  const BasisSpec& b = *m[0][0].basis;
  const PrecisionContext& ctx = *m[0][0].ctx;

  ZpElt det = zp_one(b, ctx);
  bool flip = false;
  for (size_t i = 0; i < n; ++i) {
    size_t piv = n;
    for (size_t r = i; r < n; ++r)
      if (is_unit(m[r][i])) {
        piv = r;
        break;
      }
    if (piv == n) {
      // No unit pivot: finish with the division-free expansion of the
      // uneliminated trailing block.
      std::vector<std::vector<ZpElt>> rest;
      for (size_t r = i; r < n; ++r)
        rest.emplace_back(m[r].begin() + static_cast<long>(i), m[r].end());
      ZpElt tail = berkowitz_det(rest);
      det = gr_mul(det, tail);
      return flip ? gr_neg(det) : det;
    }
    if (piv != i) {
      std::swap(m[piv], m[i]);
      flip = !flip;
    }
    det = gr_mul(det, m[i][i]);
    ZpElt pinv = invert_unit(m[i][i]);
    for (size_t r = i + 1; r < n; ++r) {
      if (is_zero(m[r][i])) continue;
      ZpElt f = gr_mul(m[r][i], pinv);
      for (size_t j = i; j < n; ++j)
        m[r][j] = gr_sub(m[r][j], gr_mul(f, m[i][j]));
    }
  }
  return flip ? gr_neg(det) : det;
}

CyElt char_twist(const ZpElt& x, long k) {
  const BasisSpec& b = *x.basis;
  const PrecisionContext& ctx = *x.ctx;
  size_t n = b.size;
  // Locate the canonical generator inside the basis group itself.
  int gen = -1;
  for (size_t m = 1; m < n; ++m) {
    int t = static_cast<int>(m);
    size_t ord = 1;
    while (t != 0) {
      t = b.mul(t, static_cast<int>(m));
      ++ord;
    }
    if (ord == n) {
      gen = static_cast<int>(m);
      break;
    }
  }
  if (n > 1 && gen < 0) raise(ErrorCode::NotCyclic, "basis group is not cyclic");
  std::vector<long> dlog(n, 0);
  int t = 0;
  for (size_t j = 0; j < n; ++j) {
    dlog[static_cast<size_t>(t)] = static_cast<long>(j);
    if (gen >= 0) t = b.mul(t, gen);
  }
  CyElt out = cy_zero(b, ctx);
  for (size_t m = 0; m < n; ++m) {
    if (x.c[m].is_zero()) continue;
    out.c[m] = Cyclo::zeta_pow(ctx, k * dlog[m]) * Cyclo::from_zp(x.c[m]);
  }
  return out;
}

int residual_valuation(const ZpElt& x, const ZpElt& y) {
  check_same(x, y);
  int v = x.ctx->n_work;
  for (size_t i = 0; i < x.c.size(); ++i)
    v = std::min(v, (x.c[i] - y.c[i]).valuation());
  return v;
}

int residual_valuation(const QpElt& x, const QpElt& y) {
  check_same(x, y);
  int v = x.ctx->n_work;
  for (size_t i = 0; i < x.c.size(); ++i)
    v = std::min(v, (x.c[i] - y.c[i]).val_or_cap());
  return v;
}

int min_valuation(const QpElt& x) {
  int v = x.ctx->n_work;
  for (const auto& q : x.c) v = std::min(v, q.val_or_cap());
  return v;
}

ZpElt to_zp(const QpElt& x) {
  ZpElt out = zp_zero(*x.basis, *x.ctx);
  for (size_t i = 0; i < x.c.size(); ++i) out.c[i] = x.c[i].to_zp();
  return out;
}

QpElt to_qp(const ZpElt& x) {
  QpElt out = qp_zero(*x.basis, *x.ctx);
  for (size_t i = 0; i < x.c.size(); ++i) out.c[i] = Qp::from_zp(x.c[i]);
  return out;
}

GroupContext::GroupContext(FiniteGroup g, int n_check, int n_work,
                           std::uint64_t seed)
    : g_(std::make_unique<FiniteGroup>(std::move(g))) {
  long p = g_->prime;
  if (n_work < 0) n_work = default_n_work(p, g_->order, n_check);
  prec_ = std::make_unique<PrecisionContext>(p, n_work, n_check, seed);
  lat_ = build_lattice(*g_);
  size_t n = lat_.size();

  full_index_ = n - 1;
  if (lat_.subs[full_index_].order != g_->order)
    raise(ErrorCode::InternalMismatch, "full subgroup not last in lattice order");

  plain_.reserve(n);
  ab_group_.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    plain_.push_back(quotient(*g_, lat_.subs[i], trivial_subgroup(*g_)));
    ab_group_.push_back(quotient_as_group(lat_.ab[i]));
  }

  group_basis_ = {BasisKind::Group, g_.get(), nullptr, nullptr, static_cast<int>(full_index_),
                  static_cast<size_t>(g_->order), -1, "group"};
  group_basis_.radical = radical_index(*g_);
  conj_basis_ = {BasisKind::Conj, g_.get(), nullptr, &lat_.classes, static_cast<int>(full_index_),
                 lat_.classes.count(), -1, "conj"};

  sub_basis_.reserve(n);
  ab_basis_.reserve(n);
  sub_conj_basis_.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    BasisSpec sb{BasisKind::Quotient, g_.get(), &plain_[i], nullptr, static_cast<int>(i),
                 static_cast<size_t>(plain_[i].order), -1, "sub:" + std::to_string(i)};
    sb.radical = radical_index_basis_mul(sb.size, p,
                                         [&](int a, int b) { return sb.mul(a, b); });
    sub_basis_.push_back(std::move(sb));

    BasisSpec ab{BasisKind::Quotient, g_.get(), &lat_.ab[i], nullptr, static_cast<int>(i),
                 static_cast<size_t>(lat_.ab[i].order), -1, "ab:" + std::to_string(i)};
    ab.radical = radical_index_basis_mul(ab.size, p,
                                         [&](int a, int b) { return ab.mul(a, b); });
    ab_basis_.push_back(std::move(ab));

    sub_conj_basis_.push_back({BasisKind::Conj, g_.get(), nullptr, &lat_.sub_classes[i],
                               static_cast<int>(i), lat_.sub_classes[i].count(), -1,
                               "subconj:" + std::to_string(i)});
  }

  subquot_.assign(n, std::vector<SubquotData>(n));
  for (size_t hi = 0; hi < n; ++hi)
    for (size_t h1i = 0; h1i < n; ++h1i) {
      const Subgroup& H = lat_.subs[hi];
      const Subgroup& H1 = lat_.subs[h1i];
      bool nested = std::all_of(H.members.begin(), H.members.end(),
                                [&](int m) { return H1.contains(m); });
      if (!nested) continue;
      const Subgroup& K = lat_.ab[h1i].kernel;
      bool k_inside = std::all_of(K.members.begin(), K.members.end(),
                                  [&](int m) { return H.contains(m); });
      if (!k_inside) continue;
      SubquotData& s = subquot_[hi][h1i];
      s.valid = true;
      s.sq = quotient(*g_, H, K);
      s.embed = embed_subquotient(s.sq, lat_.ab[h1i]);
      s.unembed.assign(static_cast<size_t>(lat_.ab[h1i].order), -1);
      for (size_t c = 0; c < s.embed.size(); ++c)
        s.unembed[static_cast<size_t>(s.embed[c])] = static_cast<int>(c);
      s.basis = {BasisKind::Quotient, g_.get(), &s.sq, nullptr, static_cast<int>(hi),
                 static_cast<size_t>(s.sq.order), -1,
                 "sq:" + std::to_string(hi) + ":" + std::to_string(h1i)};
      s.basis.radical = radical_index_basis_mul(
          s.basis.size, p, [&](int a, int b) { return s.basis.mul(a, b); });
    }
}

bool GroupContext::pair_admissible(size_t hi, size_t h1i) const {
  return subquot_[hi][h1i].valid;
}

const GroupContext::SubquotData& GroupContext::subquot(size_t hi, size_t h1i) const {
  const SubquotData& s = subquot_[hi][h1i];
  if (!s.valid)
    raise(ErrorCode::PreconditionViolated, "pair does not admit a subquotient");
  return s;
}

}  // namespace wlab
