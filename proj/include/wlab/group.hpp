#pragma once

#include <string>
#include <vector>

#include "wlab/errors.hpp"

namespace wlab {

/// Cayley-table model of a finite p-group.  Element ids are BFS discovery
/// order from the generating permutations, id 0 is the identity.
struct FiniteGroup {
  long prime = 2;
  int order = 1;
  std::vector<std::vector<int>> cayley;
  std::vector<int> inverse;
  std::vector<int> generator_ids;
  std::vector<std::vector<int>> perms;  // one-line permutation per element
  std::string name;

  int mul(int a, int b) const { return cayley[static_cast<size_t>(a)][static_cast<size_t>(b)]; }
  int inv(int a) const { return inverse[static_cast<size_t>(a)]; }
  /// x^-1 g x, the conjugation convention used by every class formula here.
  int conj_by(int g, int x) const { return mul(mul(inv(x), g), x); }
  int pow(int g, long e) const;
  int element_order(int g) const;
};

/// Closure of the given one-line permutations (images 0-based).
FiniteGroup build_group_perms(const std::vector<std::vector<int>>& gens, long p,
                              int cap = 256);

/// Generators as cycle lists over 1-based points, e.g. {{1,2,3,4},{5,6}}.
FiniteGroup build_group(const std::vector<std::vector<std::vector<int>>>& gen_cycles,
                        long p, int cap = 256);

/// name in {cyclic, elementary_abelian, dihedral, quaternion, heisenberg};
/// params: cyclic/quaternion take the group order, dihedral the rotation
/// order, elementary_abelian the rank, heisenberg nothing.
FiniteGroup catalog_group(const std::string& name, const std::vector<long>& params,
                          long p, int cap = 256);

/// Direct product of catalog factors on disjoint point sets.
FiniteGroup catalog_product(
    const std::vector<std::pair<std::string, std::vector<long>>>& factors, long p,
    int cap = 256);

struct Subgroup {
  std::vector<char> member;  // indicator over element ids
  std::vector<int> members;  // ascending
  int order = 0;
  bool cyclic = false;
  int canonical_generator = -1;  // smallest generating member when cyclic

  bool contains(int g) const { return member[static_cast<size_t>(g)] != 0; }
  bool operator==(const Subgroup& o) const { return members == o.members; }
};

Subgroup subgroup_from_members(const FiniteGroup& G, std::vector<int> members);
Subgroup generated_subgroup(const FiniteGroup& G, const std::vector<int>& gens);
Subgroup trivial_subgroup(const FiniteGroup& G);
Subgroup full_subgroup(const FiniteGroup& G);
Subgroup cyclic_subgroup(const FiniteGroup& G, int g);

/// Every subgroup, sorted by (order, member list).
std::vector<Subgroup> all_subgroups(const FiniteGroup& G);

/// Conjugation orbits of S acting on itself; representatives are the smallest
/// member of each orbit, listed in ascending order.
struct ConjClassSet {
  std::vector<int> class_of;  // element id -> class index, -1 outside S
  std::vector<int> representatives;
  std::vector<int> sizes;
  size_t count() const { return representatives.size(); }
};

ConjClassSet subgroup_classes(const FiniteGroup& G, const Subgroup& S);
ConjClassSet conjugacy_classes(const FiniteGroup& G);

Subgroup normalizer(const FiniteGroup& G, const Subgroup& H);
/// One rep per coset xH of H inside N_G H, smallest id first.
std::vector<int> weyl_reps(const FiniteGroup& G, const Subgroup& H);
/// Left cosets: ambient = sqcup x H, rep = smallest member of each coset.
std::vector<int> coset_reps_in(const FiniteGroup& G,
                               const std::vector<int>& ambient_members,
                               const Subgroup& H);
std::vector<int> coset_reps(const FiniteGroup& G, const Subgroup& H);

Subgroup commutator_subgroup(const FiniteGroup& G, const Subgroup& S);
Subgroup conjugate_subgroup(const FiniteGroup& G, const Subgroup& H, int g);
/// Orbits of the listed subgroups under conjugation, as index lists.
std::vector<std::vector<size_t>> subgroup_orbits(const FiniteGroup& G,
                                                 const std::vector<Subgroup>& subs);
/// P^p for cyclic P.
Subgroup power_subgroup(const FiniteGroup& G, const Subgroup& P);

/// S/K with cosets labeled by ascending smallest member (identity coset = 0).
struct QuotientGroup {
  const FiniteGroup* G = nullptr;
  Subgroup source;
  Subgroup kernel;
  int order = 0;
  std::vector<int> coset_of;   // element id -> coset id, -1 outside source
  std::vector<int> coset_rep;  // coset id -> smallest member
  std::vector<std::vector<int>> cayley;
  std::vector<int> inverse;

  int mul(int a, int b) const { return cayley[static_cast<size_t>(a)][static_cast<size_t>(b)]; }
  int inv(int a) const { return inverse[static_cast<size_t>(a)]; }
  int project(int g) const;
  int pow(int a, long e) const;
};

QuotientGroup quotient(const FiniteGroup& G, const Subgroup& S, const Subgroup& K);
QuotientGroup abelianization(const FiniteGroup& G, const Subgroup& S);
/// H/[H1,H1] for [H1,H1] <= H <= H1.
QuotientGroup subquotient(const FiniteGroup& G, const Subgroup& H,
                          const Subgroup& H1);
/// Coset map sub -> amb for sub = H/[H1,H1], amb = H1^ab; checked injective.
std::vector<int> embed_subquotient(const QuotientGroup& sub,
                                   const QuotientGroup& amb);

/// A subgroup relabeled as a group of its own (ids in member order).
struct EmbeddedGroup {
  FiniteGroup group;
  std::vector<int> to_parent;    // new id -> parent id
  std::vector<int> from_parent;  // parent id -> new id, -1 outside
};
EmbeddedGroup subgroup_as_group(const FiniteGroup& G, const Subgroup& S);
FiniteGroup quotient_as_group(const QuotientGroup& Q);

/// Direct decomposition of an abelian group into cyclic factors, with the
/// exponent coordinates of every element.
struct AbelianDecomp {
  std::vector<int> gens;
  std::vector<long> orders;
  std::vector<std::vector<long>> coords;  // element id -> exponents
};
AbelianDecomp abelian_decomposition(const FiniteGroup& A);

/// Subgroup lattice with the per-subgroup data every map needs.
struct Lattice {
  const FiniteGroup* G = nullptr;
  std::vector<Subgroup> subs;
  ConjClassSet classes;
  std::vector<ConjClassSet> sub_classes;
  std::vector<Subgroup> normalizers;
  std::vector<std::vector<int>> weyl;
  std::vector<std::vector<int>> cosets;  // reps of H in G
  std::vector<QuotientGroup> ab;         // H^ab
  std::vector<int> power_sub;            // index of P^p for cyclic P, -1 else
  std::vector<size_t> cyclic_indices;

  int find(const Subgroup& S) const;
  size_t size() const { return subs.size(); }
};

Lattice build_lattice(const FiniteGroup& G);

}  // namespace wlab
