#pragma once

#include <memory>
#include <string>
#include <vector>

#include "wlab/group.hpp"
#include "wlab/linalg.hpp"
#include "wlab/precision.hpp"

namespace wlab {

enum class BasisKind { Group, Quotient, Conj };

/// Monomial basis of one of the ambient modules: the full group ring, a
/// (sub)quotient ring, or the conjugacy-class module.  Instances live inside
/// a GroupContext; elements refer to them by pointer, so identity is pointer
/// identity.
struct BasisSpec {
  BasisKind kind = BasisKind::Group;
  const FiniteGroup* G = nullptr;         // ambient group of the global ids
  const QuotientGroup* Q = nullptr;       // Quotient kind
  const ConjClassSet* classes = nullptr;  // Conj kind
  int sub_index = -1;  // lattice index of the underlying subgroup, -1 for G
  size_t size = 0;
  int radical = -1;  // nilpotency index of the augmentation ideal mod p
  std::string label;

  bool multiplicative() const { return kind != BasisKind::Conj; }
  int mul(int a, int b) const;
  int inv(int a) const;
  /// Global element id displayed for a monomial (rep of coset or class).
  int display_id(int m) const;
  /// Monomial whose fiber holds the global id; -1 when outside.
  int index_of_global(int g) const;
};

template <typename C>
struct Elt {
  const BasisSpec* basis = nullptr;
  const PrecisionContext* ctx = nullptr;
  std::vector<C> c;
};

using ZpElt = Elt<Zp>;
using QpElt = Elt<Qp>;
using CyElt = Elt<Cyclo>;

ZpElt zp_zero(const BasisSpec& b, const PrecisionContext& ctx);
QpElt qp_zero(const BasisSpec& b, const PrecisionContext& ctx);
CyElt cy_zero(const BasisSpec& b, const PrecisionContext& ctx);
ZpElt zp_one(const BasisSpec& b, const PrecisionContext& ctx);
ZpElt zp_monomial(const BasisSpec& b, const PrecisionContext& ctx, int m,
                  const Zp& coeff);

template <typename C>
void check_same(const Elt<C>& x, const Elt<C>& y) {
  if (x.basis != y.basis || x.ctx != y.ctx)
    raise(ErrorCode::BasisMismatch, "elements live on different bases");
}

template <typename C>
Elt<C> gr_add(const Elt<C>& x, const Elt<C>& y) {
  check_same(x, y);
  Elt<C> out = x;
  for (size_t i = 0; i < out.c.size(); ++i) out.c[i] += y.c[i];
  return out;
}

template <typename C>
Elt<C> gr_sub(const Elt<C>& x, const Elt<C>& y) {
  check_same(x, y);
  Elt<C> out = x;
  for (size_t i = 0; i < out.c.size(); ++i) out.c[i] = out.c[i] - y.c[i];
  return out;
}

template <typename C>
Elt<C> gr_neg(const Elt<C>& x) {
  Elt<C> out = x;
  for (auto& v : out.c) v = -v;
  return out;
}

template <typename C>
Elt<C> scalar_mul(const C& s, const Elt<C>& x) {
  Elt<C> out = x;
  for (auto& v : out.c) v = v * s;
  return out;
}

template <typename C>
Elt<C> gr_mul(const Elt<C>& x, const Elt<C>& y) {
  check_same(x, y);
  if (!x.basis->multiplicative())
    raise(ErrorCode::BasisMismatch, "class-module basis has no product");
  Elt<C> out = x;
  for (auto& v : out.c) v = v - v;  // zero of the coefficient type
  for (size_t i = 0; i < x.c.size(); ++i)
    for (size_t j = 0; j < y.c.size(); ++j)
      out.c[static_cast<size_t>(x.basis->mul(static_cast<int>(i), static_cast<int>(j)))] +=
          x.c[i] * y.c[j];
  return out;
}

template <typename C>
C augmentation(const Elt<C>& x) {
  C s = x.c.at(0) - x.c.at(0);
  for (const auto& v : x.c) s += v;
  return s;
}

bool is_zero(const ZpElt& x);
bool is_zero(const QpElt& x);
ZpElt gr_pow(const ZpElt& x, unsigned long e);

/// Monomial h -> g h g^-1, coefficients carried along.
template <typename C>
Elt<C> conj_action(int g, const Elt<C>& x);

/// Monomial-level homomorphism between multiplicative bases (or a linear
/// relabeling when either side is a class module).
struct MonomialMap {
  const BasisSpec* from = nullptr;
  const BasisSpec* to = nullptr;
  std::vector<int> map;
};

/// global_image maps the display id of a `from` monomial to a global id that
/// must land inside a fiber of `to`; multiplicative bases are verified to get
/// a homomorphism.
MonomialMap make_monomial_map(const BasisSpec& from, const BasisSpec& to,
                              const std::vector<int>& global_image);

template <typename C>
Elt<C> pushforward(const MonomialMap& f, const Elt<C>& x) {
  if (x.basis != f.from) raise(ErrorCode::BasisMismatch, "map source mismatch");
  Elt<C> out;
  out.basis = f.to;
  out.ctx = x.ctx;
  C zero = x.c.at(0) - x.c.at(0);
  out.c.assign(f.to->size, zero);
  for (size_t i = 0; i < x.c.size(); ++i)
    out.c[static_cast<size_t>(f.map[i])] += x.c[i];
  return out;
}

bool is_unit(const ZpElt& x);
ZpElt invert_unit(const ZpElt& x);

int radical_index(const FiniteGroup& G);

/// p-adic log of a unit after stripping its Teichmueller scalar part, as a
/// Q_p-coefficient element on the same basis.
QpElt log_unit(const ZpElt& u);

/// Sum coefficients over conjugacy classes: group basis -> class basis.
ZpElt conj_project(const ZpElt& x, const BasisSpec& conj);
QpElt conj_project(const QpElt& x, const BasisSpec& conj);

/// Determinant over a commutative local group ring; unit-pivot elimination
/// with a division-free fallback.
ZpElt det_local(std::vector<std::vector<ZpElt>> m);

/// x over Z_p[P], P cyclic: multiply the coefficient of gen^j by zeta^(k*j).
CyElt char_twist(const ZpElt& x, long k);

int residual_valuation(const ZpElt& x, const ZpElt& y);
int residual_valuation(const QpElt& x, const QpElt& y);
int min_valuation(const QpElt& x);
ZpElt to_zp(const QpElt& x);  // NonIntegralResult when a coefficient has val < 0
QpElt to_qp(const ZpElt& x);

/// Everything derived from one group at one precision: the lattice, the
/// quotient/class structures, and stable BasisSpec instances for them.
class GroupContext {
 public:
  GroupContext(FiniteGroup g, int n_check = 16, int n_work = -1,
               std::uint64_t seed = 0);
  GroupContext(const GroupContext&) = delete;
  GroupContext& operator=(const GroupContext&) = delete;

  const FiniteGroup& group() const { return *g_; }
  const Lattice& lat() const { return lat_; }
  const PrecisionContext& prec() const { return *prec_; }

  const BasisSpec& group_basis() const { return group_basis_; }
  const BasisSpec& conj_basis() const { return conj_basis_; }
  const BasisSpec& sub_basis(size_t hi) const { return sub_basis_[hi]; }
  const BasisSpec& ab_basis(size_t hi) const { return ab_basis_[hi]; }
  const BasisSpec& sub_conj_basis(size_t hi) const { return sub_conj_basis_[hi]; }

  /// H/[H1,H1] data for nested pairs with [H1,H1] <= H <= H1.
  struct SubquotData {
    bool valid = false;
    QuotientGroup sq;
    BasisSpec basis;
    std::vector<int> embed;    // sq coset -> H1^ab coset
    std::vector<int> unembed;  // H1^ab coset -> sq coset, -1 outside image
  };
  bool pair_admissible(size_t hi, size_t h1i) const;
  const SubquotData& subquot(size_t hi, size_t h1i) const;

  /// H^ab relabeled as a standalone group (for module decompositions).
  const FiniteGroup& ab_group(size_t hi) const { return ab_group_[hi]; }

  size_t full_index() const { return full_index_; }

 private:
  std::unique_ptr<FiniteGroup> g_;
  std::unique_ptr<PrecisionContext> prec_;
  Lattice lat_;
  std::vector<QuotientGroup> plain_;
  std::vector<FiniteGroup> ab_group_;
  BasisSpec group_basis_, conj_basis_;
  std::vector<BasisSpec> sub_basis_, ab_basis_, sub_conj_basis_;
  std::vector<std::vector<SubquotData>> subquot_;
  size_t full_index_ = 0;
};

}  // namespace wlab
