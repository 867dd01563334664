#include "wlab/group.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace wlab {

namespace {

bool is_p_power(long p, long n) {
  while (n % p == 0) n /= p;
  return n == 1;
}

std::vector<int> compose(const std::vector<int>& f, const std::vector<int>& g) {
  std::vector<int> h(f.size());
  for (size_t i = 0; i < f.size(); ++i)
    h[i] = f[static_cast<size_t>(g[i])];
  return h;
}

std::vector<int> greedy_generators(const FiniteGroup& G) {
  std::vector<int> gens;
  Subgroup S = trivial_subgroup(G);
  for (int g = 1; g < G.order && S.order < G.order; ++g) {
    if (S.contains(g)) continue;
    gens.push_back(g);
    S = generated_subgroup(G, gens);
  }
  return gens;
}

}  // namespace

int FiniteGroup::pow(int g, long e) const {
  long ord = element_order(g);
  long r = ((e % ord) + ord) % ord;
  int out = 0;
  for (long i = 0; i < r; ++i) out = mul(out, g);
  return out;
}

int FiniteGroup::element_order(int g) const {
  int x = g;
  int ord = 1;
  while (x != 0) {
    x = mul(x, g);
    ++ord;
  }
  return ord;
}

FiniteGroup build_group_perms(const std::vector<std::vector<int>>& gens, long p,
                              int cap) {
  size_t npoints = gens.empty() ? 1 : gens[0].size();
  for (const auto& g : gens) {
    if (g.size() != npoints) raise(ErrorCode::BadInput, "generator degrees differ");
    std::vector<char> seen(npoints, 0);
    for (int v : g) {
      if (v < 0 || static_cast<size_t>(v) >= npoints || seen[static_cast<size_t>(v)])
        raise(ErrorCode::BadInput, "generator is not a permutation");
      seen[static_cast<size_t>(v)] = 1;
    }
  }

  std::vector<int> identity(npoints);
  for (size_t i = 0; i < npoints; ++i) identity[i] = static_cast<int>(i);

  std::vector<std::vector<int>> elems{identity};
  std::map<std::vector<int>, int> id_of{{identity, 0}};
  for (size_t head = 0; head < elems.size(); ++head) {
    for (const auto& g : gens) {
      std::vector<int> y = compose(elems[head], g);
      if (id_of.emplace(y, static_cast<int>(elems.size())).second) {
        elems.push_back(std::move(y));
        if (static_cast<int>(elems.size()) > cap)
          raise(ErrorCode::GroupTooLarge, "closure exceeds element cap");
      }
    }
  }

  int order = static_cast<int>(elems.size());
  if (!is_p_power(p, order))
    raise(ErrorCode::NotAPGroup, "closure order " + std::to_string(order) +
                                     " is not a power of " + std::to_string(p));

  FiniteGroup G;
  G.prime = p;
  G.order = order;
  G.perms = elems;
  G.cayley.assign(static_cast<size_t>(order), std::vector<int>(static_cast<size_t>(order)));
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      G.cayley[static_cast<size_t>(a)][static_cast<size_t>(b)] =
          id_of.at(compose(elems[static_cast<size_t>(a)], elems[static_cast<size_t>(b)]));
  G.inverse.assign(static_cast<size_t>(order), 0);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      if (G.mul(a, b) == 0) {
        G.inverse[static_cast<size_t>(a)] = b;
        break;
      }
  for (const auto& g : gens) G.generator_ids.push_back(id_of.at(g));
  std::sort(G.generator_ids.begin(), G.generator_ids.end());
  G.generator_ids.erase(std::unique(G.generator_ids.begin(), G.generator_ids.end()),
                        G.generator_ids.end());
  return G;
}

FiniteGroup build_group(const std::vector<std::vector<std::vector<int>>>& gen_cycles,
                        long p, int cap) {
  int maxpt = 1;
  for (const auto& cycles : gen_cycles)
    for (const auto& c : cycles)
      for (int v : c) {
        if (v < 1) raise(ErrorCode::BadInput, "cycle points are 1-based");
        maxpt = std::max(maxpt, v);
      }
  std::vector<std::vector<int>> gens;
  for (const auto& cycles : gen_cycles) {
    std::vector<int> perm(static_cast<size_t>(maxpt));
    for (int i = 0; i < maxpt; ++i) perm[static_cast<size_t>(i)] = i;
    for (const auto& c : cycles) {
      for (size_t i = 0; i < c.size(); ++i) {
        int from = c[i] - 1;
        int to = c[(i + 1) % c.size()] - 1;
        perm[static_cast<size_t>(from)] = to;
      }
    }
    gens.push_back(std::move(perm));
  }
  return build_group_perms(gens, p, cap);
}

namespace {

// Left multiplications of a group given by an abstract label product.
template <typename Mul>
std::vector<std::vector<int>> regular_perms(int n, const std::vector<int>& gens,
                                            Mul mul) {
  std::vector<std::vector<int>> out;
  for (int g : gens) {
    std::vector<int> perm(static_cast<size_t>(n));
    for (int x = 0; x < n; ++x) perm[static_cast<size_t>(x)] = mul(g, x);
    out.push_back(std::move(perm));
  }
  return out;
}

std::vector<std::vector<int>> catalog_perms(const std::string& name,
                                            const std::vector<long>& params,
                                            long p) {
  if (name == "cyclic") {
    if (params.size() != 1 || params[0] < 1)
      raise(ErrorCode::BadParams, "cyclic needs an order >= 1");
    long n = params[0];
    if (n == 1) return {};
    std::vector<int> perm(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = static_cast<int>((i + 1) % n);
    return {perm};
  }
  if (name == "elementary_abelian") {
    if (params.size() != 1 || params[0] < 0)
      raise(ErrorCode::BadParams, "elementary_abelian needs a rank >= 0");
    long rank = params[0];
    if (rank == 0) return {};
    long n = rank * p;
    std::vector<std::vector<int>> gens;
    for (long b = 0; b < rank; ++b) {
      std::vector<int> perm(static_cast<size_t>(n));
      for (long i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = static_cast<int>(i);
      for (long i = 0; i < p; ++i)
        perm[static_cast<size_t>(b * p + i)] = static_cast<int>(b * p + (i + 1) % p);
      gens.push_back(std::move(perm));
    }
    return gens;
  }
  if (name == "dihedral") {
    if (params.size() != 1 || params[0] < 2)
      raise(ErrorCode::BadParams, "dihedral needs a rotation order >= 2");
    long n = params[0];
    if (n == 2) {
      // Order 4 case degenerates to the Klein four group.
      return {{1, 0, 2, 3}, {0, 1, 3, 2}};
    }
    std::vector<int> r(static_cast<size_t>(n)), s(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) {
      r[static_cast<size_t>(i)] = static_cast<int>((i + 1) % n);
      s[static_cast<size_t>(i)] = static_cast<int>((n - i) % n);
    }
    return {r, s};
  }
  if (name == "quaternion") {
    if (params.size() != 1 || params[0] < 8 || params[0] % 4 != 0)
      raise(ErrorCode::BadParams, "quaternion needs an order >= 8 divisible by 4");
    long m = params[0];
    long h = m / 2;
    // Labels i*2+j encode a^i b^j with b^2 = a^(h/2), b a b^-1 = a^-1.
    auto mul = [h](int u, int v) {
      long i = u / 2, j = u % 2, k = v / 2, l = v % 2;
      long ii, jj;
      if (j == 0) {
        ii = (i + k) % h;
        jj = l;
      } else {
        ii = ((i - k) % h + h) % h;
        jj = 1 + l;
      }
      if (jj == 2) {
        ii = (ii + h / 2) % h;
        jj = 0;
      }
      return static_cast<int>(ii * 2 + jj);
    };
    return regular_perms(static_cast<int>(m), {2, 1}, mul);  // a = label 2, b = label 1
  }
  if (name == "heisenberg") {
    if (!params.empty() && !(params.size() == 1 && params[0] == p))
      raise(ErrorCode::BadParams, "heisenberg takes no params beyond the prime");
    long n = p * p * p;
    auto unpack = [&](int u, long& a, long& b, long& c) {
      a = u / (p * p);
      b = (u / p) % p;
      c = u % p;
    };
    auto mul = [&, p](int u, int v) {
      long a, b, c, a2, b2, c2;
      unpack(u, a, b, c);
      unpack(v, a2, b2, c2);
      long a3 = (a + a2) % p, b3 = (b + b2) % p, c3 = (c + c2 + a * b2) % p;
      return static_cast<int>(a3 * p * p + b3 * p + c3);
    };
    int x = static_cast<int>(p * p);  // (1,0,0)
    int y = static_cast<int>(p);      // (0,1,0)
    return regular_perms(static_cast<int>(n), {x, y}, mul);
  }
  raise(ErrorCode::UnknownCatalogEntry, "no catalog entry named " + name);
}

}  // namespace

FiniteGroup catalog_group(const std::string& name, const std::vector<long>& params,
                          long p, int cap) {
  FiniteGroup G = build_group_perms(catalog_perms(name, params, p), p, cap);
  G.name = name;
  for (size_t i = 0; i < params.size(); ++i)
    G.name += (i ? "," : ":") + std::to_string(params[i]);
  return G;
}

FiniteGroup catalog_product(
    const std::vector<std::pair<std::string, std::vector<long>>>& factors, long p,
    int cap) {
  if (factors.empty()) raise(ErrorCode::BadParams, "product needs factors");
  std::vector<std::vector<std::vector<int>>> blocks;
  std::vector<size_t> widths;
  for (const auto& [name, params] : factors) {
    auto gens = catalog_perms(name, params, p);
    widths.push_back(gens.empty() ? 1 : gens[0].size());
    blocks.push_back(std::move(gens));
  }
  size_t total = 0;
  for (size_t w : widths) total += w;
  std::vector<std::vector<int>> gens;
  size_t offset = 0;
  for (size_t f = 0; f < blocks.size(); ++f) {
    for (const auto& g : blocks[f]) {
      std::vector<int> perm(total);
      for (size_t i = 0; i < total; ++i) perm[i] = static_cast<int>(i);
      for (size_t i = 0; i < g.size(); ++i)
        perm[offset + i] = static_cast<int>(offset) + g[i];
      gens.push_back(std::move(perm));
    }
    offset += widths[f];
  }
  FiniteGroup G = build_group_perms(gens, p, cap);
  G.name = "product";
  for (const auto& [name, params] : factors) {
    G.name += ":" + name;
    for (long v : params) G.name += "." + std::to_string(v);
  }
  return G;
}

Subgroup subgroup_from_members(const FiniteGroup& G, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  Subgroup S;
  S.member.assign(static_cast<size_t>(G.order), 0);
  for (int m : members) S.member[static_cast<size_t>(m)] = 1;
  S.members = std::move(members);
  S.order = static_cast<int>(S.members.size());
  for (int m : S.members)
    if (G.element_order(m) == S.order) {
      S.cyclic = true;
      S.canonical_generator = m;
      break;
    }
  return S;
}

Subgroup generated_subgroup(const FiniteGroup& G, const std::vector<int>& gens) {
  std::vector<char> in(static_cast<size_t>(G.order), 0);
  std::vector<int> queue{0};
  in[0] = 1;
  for (size_t head = 0; head < queue.size(); ++head)
    for (int g : gens) {
      int y = G.mul(queue[head], g);
      if (!in[static_cast<size_t>(y)]) {
        in[static_cast<size_t>(y)] = 1;
        queue.push_back(y);
      }
    }
  return subgroup_from_members(G, std::move(queue));
}

Subgroup trivial_subgroup(const FiniteGroup& G) { return subgroup_from_members(G, {0}); }

Subgroup full_subgroup(const FiniteGroup& G) {
  std::vector<int> all(static_cast<size_t>(G.order));
  for (int i = 0; i < G.order; ++i) all[static_cast<size_t>(i)] = i;
  return subgroup_from_members(G, std::move(all));
}

Subgroup cyclic_subgroup(const FiniteGroup& G, int g) {
  return generated_subgroup(G, {g});
}

std::vector<Subgroup> all_subgroups(const FiniteGroup& G) {
  std::set<std::vector<int>> seen;
  std::vector<Subgroup> subs;
  auto add = [&](Subgroup S) {
    if (seen.insert(S.members).second) subs.push_back(std::move(S));
  };
  for (int g = 0; g < G.order; ++g) add(cyclic_subgroup(G, g));
  bool grew = true;
  while (grew) {
    grew = false;
    size_t n = subs.size();
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) {
        std::vector<int> u = subs[i].members;
        u.insert(u.end(), subs[j].members.begin(), subs[j].members.end());
        Subgroup J = generated_subgroup(G, u);
        if (!seen.count(J.members)) {
          add(std::move(J));
          grew = true;
        }
      }
  }
  std::sort(subs.begin(), subs.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order != b.order) return a.order < b.order;
    return a.members < b.members;
  });
  return subs;
}

ConjClassSet subgroup_classes(const FiniteGroup& G, const Subgroup& S) {
  ConjClassSet C;
  C.class_of.assign(static_cast<size_t>(G.order), -1);
  for (int g : S.members) {
    if (C.class_of[static_cast<size_t>(g)] >= 0) continue;
    int idx = static_cast<int>(C.representatives.size());
    C.representatives.push_back(g);
    int size = 0;
    for (int x : S.members) {
      int y = G.conj_by(g, x);
      if (C.class_of[static_cast<size_t>(y)] < 0) {
        C.class_of[static_cast<size_t>(y)] = idx;
        ++size;
      }
    }
    C.sizes.push_back(size);
  }
  return C;
}

ConjClassSet conjugacy_classes(const FiniteGroup& G) {
  return subgroup_classes(G, full_subgroup(G));
}

Subgroup normalizer(const FiniteGroup& G, const Subgroup& H) {
  std::vector<int> members;
  for (int g = 0; g < G.order; ++g) {
    bool ok = true;
    for (int h : H.members)
      if (!H.contains(G.mul(G.mul(g, h), G.inv(g)))) {
        ok = false;
        break;
      }
    if (ok) members.push_back(g);
  }
  return subgroup_from_members(G, std::move(members));
}

std::vector<int> coset_reps_in(const FiniteGroup& G,
                               const std::vector<int>& ambient_members,
                               const Subgroup& H) {
  std::vector<char> covered(static_cast<size_t>(G.order), 0);
  std::vector<int> reps;
  for (int x : ambient_members) {
    if (covered[static_cast<size_t>(x)]) continue;
    reps.push_back(x);
    for (int h : H.members) covered[static_cast<size_t>(G.mul(x, h))] = 1;
  }
  return reps;
}

std::vector<int> weyl_reps(const FiniteGroup& G, const Subgroup& H) {
  return coset_reps_in(G, normalizer(G, H).members, H);
}

std::vector<int> coset_reps(const FiniteGroup& G, const Subgroup& H) {
  return coset_reps_in(G, full_subgroup(G).members, H);
}

Subgroup commutator_subgroup(const FiniteGroup& G, const Subgroup& S) {
  std::vector<int> gens;
  for (int a : S.members)
    for (int b : S.members)
      gens.push_back(G.mul(G.mul(G.inv(a), G.inv(b)), G.mul(a, b)));
  return generated_subgroup(G, gens);
}

Subgroup conjugate_subgroup(const FiniteGroup& G, const Subgroup& H, int g) {
  std::vector<int> members;
  for (int h : H.members) members.push_back(G.mul(G.mul(g, h), G.inv(g)));
  return subgroup_from_members(G, std::move(members));
}

std::vector<std::vector<size_t>> subgroup_orbits(const FiniteGroup& G,
                                                 const std::vector<Subgroup>& subs) {
  std::map<std::vector<int>, size_t> index;
  for (size_t i = 0; i < subs.size(); ++i) index[subs[i].members] = i;
  std::vector<char> done(subs.size(), 0);
  std::vector<std::vector<size_t>> orbits;
  for (size_t i = 0; i < subs.size(); ++i) {
    if (done[i]) continue;
    std::vector<size_t> orbit{i};
    done[i] = 1;
    for (size_t head = 0; head < orbit.size(); ++head)
      for (int g = 0; g < G.order; ++g) {
        Subgroup c = conjugate_subgroup(G, subs[orbit[head]], g);
        auto it = index.find(c.members);
        if (it == index.end())
          raise(ErrorCode::PreconditionViolated, "list not closed under conjugation");
        if (!done[it->second]) {
          done[it->second] = 1;
          orbit.push_back(it->second);
        }
      }
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

Subgroup power_subgroup(const FiniteGroup& G, const Subgroup& P) {
  if (!P.cyclic) raise(ErrorCode::NotCyclic, "power subgroup needs a cyclic group");
  return cyclic_subgroup(G, G.pow(P.canonical_generator, G.prime));
}

int QuotientGroup::project(int g) const {
  int c = coset_of[static_cast<size_t>(g)];
  if (c < 0) raise(ErrorCode::PreconditionViolated, "element outside quotient source");
  return c;
}

int QuotientGroup::pow(int a, long e) const {
  int ord = 1;
  int t = a;
  while (t != 0) {
    t = mul(t, a);
    ++ord;
  }
  long r = ((e % ord) + ord) % ord;
  int x = 0;
  for (long i = 0; i < r; ++i) x = mul(x, a);
  return x;
}

QuotientGroup quotient(const FiniteGroup& G, const Subgroup& S, const Subgroup& K) {
  for (int k : K.members)
    if (!S.contains(k))
      raise(ErrorCode::PreconditionViolated, "kernel not inside source");
  for (int s : S.members)
    for (int k : K.members)
      if (!K.contains(G.mul(G.mul(s, k), G.inv(s))))
        raise(ErrorCode::PreconditionViolated, "kernel not normal in source");

  QuotientGroup Q;
  Q.G = &G;
  Q.source = S;
  Q.kernel = K;
  Q.coset_of.assign(static_cast<size_t>(G.order), -1);
  for (int s : S.members) {
    if (Q.coset_of[static_cast<size_t>(s)] >= 0) continue;
    int c = static_cast<int>(Q.coset_rep.size());
    Q.coset_rep.push_back(s);
    for (int k : K.members) Q.coset_of[static_cast<size_t>(G.mul(s, k))] = c;
  }
  Q.order = static_cast<int>(Q.coset_rep.size());
  Q.cayley.assign(static_cast<size_t>(Q.order), std::vector<int>(static_cast<size_t>(Q.order)));
  for (int a = 0; a < Q.order; ++a)
    for (int b = 0; b < Q.order; ++b)
      Q.cayley[static_cast<size_t>(a)][static_cast<size_t>(b)] =
          Q.coset_of[static_cast<size_t>(G.mul(Q.coset_rep[static_cast<size_t>(a)],
                                               Q.coset_rep[static_cast<size_t>(b)]))];
  Q.inverse.assign(static_cast<size_t>(Q.order), 0);
  for (int a = 0; a < Q.order; ++a)
    for (int b = 0; b < Q.order; ++b)
      if (Q.mul(a, b) == 0) {
        Q.inverse[static_cast<size_t>(a)] = b;
        break;
      }
  return Q;
}

QuotientGroup abelianization(const FiniteGroup& G, const Subgroup& S) {
  return quotient(G, S, commutator_subgroup(G, S));
}

QuotientGroup subquotient(const FiniteGroup& G, const Subgroup& H,
                          const Subgroup& H1) {
  for (int h : H.members)
    if (!H1.contains(h))
      raise(ErrorCode::PreconditionViolated, "H not inside H1");
  Subgroup K = commutator_subgroup(G, H1);
  for (int k : K.members)
    if (!H.contains(k))
      raise(ErrorCode::PreconditionViolated, "[H1,H1] not inside H");
  return quotient(G, H, K);
}

std::vector<int> embed_subquotient(const QuotientGroup& sub,
                                   const QuotientGroup& amb) {
  if (sub.kernel.members != amb.kernel.members)
    raise(ErrorCode::PreconditionViolated, "kernels differ");
  std::vector<int> map(static_cast<size_t>(sub.order));
  std::vector<char> hit(static_cast<size_t>(amb.order), 0);
  for (int c = 0; c < sub.order; ++c) {
    int image = amb.coset_of[static_cast<size_t>(sub.coset_rep[static_cast<size_t>(c)])];
    if (image < 0 || hit[static_cast<size_t>(image)])
      raise(ErrorCode::PreconditionViolated, "subquotient does not embed");
    hit[static_cast<size_t>(image)] = 1;
    map[static_cast<size_t>(c)] = image;
  }
  return map;
}

EmbeddedGroup subgroup_as_group(const FiniteGroup& G, const Subgroup& S) {
  EmbeddedGroup E;
  E.to_parent = S.members;
  E.from_parent.assign(static_cast<size_t>(G.order), -1);
  for (size_t i = 0; i < S.members.size(); ++i)
    E.from_parent[static_cast<size_t>(S.members[i])] = static_cast<int>(i);

  FiniteGroup& H = E.group;
  H.prime = G.prime;
  H.order = S.order;
  H.cayley.assign(static_cast<size_t>(S.order), std::vector<int>(static_cast<size_t>(S.order)));
  for (int a = 0; a < S.order; ++a)
    for (int b = 0; b < S.order; ++b)
      H.cayley[static_cast<size_t>(a)][static_cast<size_t>(b)] =
          E.from_parent[static_cast<size_t>(G.mul(E.to_parent[static_cast<size_t>(a)],
                                                  E.to_parent[static_cast<size_t>(b)]))];
  H.inverse.assign(static_cast<size_t>(S.order), 0);
  for (int a = 0; a < S.order; ++a)
    H.inverse[static_cast<size_t>(a)] = E.from_parent[static_cast<size_t>(
        G.inv(E.to_parent[static_cast<size_t>(a)]))];
  H.generator_ids = greedy_generators(H);
  return E;
}

FiniteGroup quotient_as_group(const QuotientGroup& Q) {
  FiniteGroup H;
  H.prime = Q.G->prime;
  H.order = Q.order;
  H.cayley = Q.cayley;
  H.inverse = Q.inverse;
  H.generator_ids = greedy_generators(H);
  return H;
}

AbelianDecomp abelian_decomposition(const FiniteGroup& A) {
  for (int a = 0; a < A.order; ++a)
    for (int b = a + 1; b < A.order; ++b)
      if (A.mul(a, b) != A.mul(b, a))
        raise(ErrorCode::PreconditionViolated, "group is not abelian");

  AbelianDecomp D;
  if (A.order == 1) {
    D.coords = {{}};
    return D;
  }

  int g = 0, best = 1;
  for (int x = 0; x < A.order; ++x) {
    int ord = A.element_order(x);
    if (ord > best) {
      best = ord;
      g = x;
    }
  }
  Subgroup C = cyclic_subgroup(A, g);
  D.gens.push_back(g);
  D.orders.push_back(C.order);

  if (C.order == A.order) {
    D.coords.assign(static_cast<size_t>(A.order), {});
    int x = 0;
    for (long i = 0; i < C.order; ++i) {
      D.coords[static_cast<size_t>(x)] = {i};
      x = A.mul(x, g);
    }
    return D;
  }

  // A maximal-order cyclic subgroup of an abelian p-group is a direct factor.
  Subgroup complement;
  bool found = false;
  for (const Subgroup& K : all_subgroups(A)) {
    if (K.order * C.order != A.order) continue;
    bool trivial_meet = true;
    for (int m : K.members)
      if (m != 0 && C.contains(m)) {
        trivial_meet = false;
        break;
      }
    if (trivial_meet) {
      complement = K;
      found = true;
      break;
    }
  }
  if (!found)
    raise(ErrorCode::PreconditionViolated, "no direct complement found");

  EmbeddedGroup E = subgroup_as_group(A, complement);
  AbelianDecomp rec = abelian_decomposition(E.group);
  for (int rg : rec.gens) D.gens.push_back(E.to_parent[static_cast<size_t>(rg)]);
  for (long o : rec.orders) D.orders.push_back(o);

  D.coords.assign(static_cast<size_t>(A.order), {});
  int gi = 0;
  for (long i = 0; i < C.order; ++i) {
    for (int k = 0; k < complement.order; ++k) {
      int elem = A.mul(gi, E.to_parent[static_cast<size_t>(k)]);
      std::vector<long> coord{i};
      coord.insert(coord.end(), rec.coords[static_cast<size_t>(k)].begin(),
                   rec.coords[static_cast<size_t>(k)].end());
      D.coords[static_cast<size_t>(elem)] = std::move(coord);
    }
    gi = A.mul(gi, g);
  }
  return D;
}

int Lattice::find(const Subgroup& S) const {
  for (size_t i = 0; i < subs.size(); ++i)
    if (subs[i].members == S.members) return static_cast<int>(i);
  return -1;
}

Lattice build_lattice(const FiniteGroup& G) {
  Lattice L;
  L.G = &G;
  L.subs = all_subgroups(G);
  L.classes = conjugacy_classes(G);
  size_t n = L.subs.size();
  L.sub_classes.reserve(n);
  L.normalizers.reserve(n);
  L.weyl.reserve(n);
  L.cosets.reserve(n);
  L.ab.reserve(n);
  L.power_sub.assign(n, -1);
  for (size_t i = 0; i < n; ++i) {
    const Subgroup& H = L.subs[i];
    L.sub_classes.push_back(subgroup_classes(G, H));
    L.normalizers.push_back(normalizer(G, H));
    L.weyl.push_back(coset_reps_in(G, L.normalizers.back().members, H));
    L.cosets.push_back(coset_reps(G, H));
    L.ab.push_back(abelianization(G, H));
    if (H.cyclic) {
      L.cyclic_indices.push_back(i);
      L.power_sub[i] = L.find(power_subgroup(G, H));
    }
  }
  return L;
}

}  // namespace wlab
