#pragma once

#include <string>
#include <vector>

#include "wlab/groupring.hpp"

namespace wlab {

/// Index shape of a compatibility tuple: one entry per subgroup (on H^ab) or
/// one entry per cyclic subgroup (on H itself).
enum class PhiShape { AllSubgroups, CyclicOnly };

struct PhiTuple {
  PhiShape shape = PhiShape::AllSubgroups;
  std::vector<size_t> indices;  // lattice indices, ascending
  std::vector<ZpElt> entries;   // entry i on the basis matching indices[i]
};

struct Witness {
  std::string condition;
  size_t hi = 0, h1i = 0;  // subgroup pair involved (h1i may repeat hi)
  int gen = -1;            // conjugating element when one is involved
  int residual = 0;        // valuation of the residual that should vanish
};

struct ConditionReport {
  std::vector<std::string> names;
  std::vector<char> passed;  // aligned with names
  std::vector<Witness> witnesses;
  int precision = 0;
  bool pass = false;
};

/// Move coefficients along global display ids into another basis over the
/// same group; fibers may merge.  BasisMismatch when a nonzero coefficient
/// has no target monomial.
ZpElt transport(const ZpElt& x, const BasisSpec& to);
QpElt transport(const QpElt& x, const BasisSpec& to);

/// Conjugation by g carrying an element on the basis of S to the matching
/// basis of gSg^-1 (sub or ab family, picked by the source basis).
ZpElt conj_transport(const GroupContext& C, int g, const ZpElt& x);

/// Class-sum restriction Conj(ambient) -> Conj(H) over coset reps of H.
ZpElt t_map(const GroupContext& C, size_t amb, size_t hi, const ZpElt& a);

/// t_map followed by collapse onto H^ab (AllSubgroups) or H (CyclicOnly;
/// requires cyclic H).
ZpElt beta_H(const GroupContext& C, size_t amb, size_t hi, const ZpElt& a,
             PhiShape shape);

PhiTuple beta_all(const GroupContext& C, const ZpElt& a);
PhiTuple beta_cyclic(const GroupContext& C, const ZpElt& a);

/// Forget the non-cyclic components and relabel H^ab as H.
PhiTuple proj_tuple(const GroupContext& C, const PhiTuple& t);

PhiTuple tuple_add(const PhiTuple& a, const PhiTuple& b);
PhiTuple tuple_sub(const PhiTuple& a, const PhiTuple& b);
PhiTuple tuple_scalar(const Zp& s, const PhiTuple& t);
/// Entrywise agreement to at least p^prec.
bool tuple_eq_at(const PhiTuple& a, const PhiTuple& b, int prec);

/// Kill coefficients of monomials that do not generate the cyclic P.
ZpElt eta(const GroupContext& C, size_t pi, const ZpElt& x);

/// Sum over cyclic H of the class of eta(a_H) weighted by
/// 1/([G:N_G H]|W_G H|); integral exactly on tuples satisfying the
/// compatibility conditions.
QpElt tau(const GroupContext& C, const PhiTuple& t);

/// Module trace of multiplication for H/[H1,H1] inside H1^ab.
ZpElt trace_sub(const GroupContext& C, size_t hi, size_t h1i, const ZpElt& x);
/// Natural surjection H^ab -> H/[H1,H1].
ZpElt pi_sub(const GroupContext& C, size_t hi, size_t h1i, const ZpElt& x);

/// Span of x -> sum over Weyl reps of g x g^-1 inside Z_p[H^ab].
HowellBasis trace_ideal(const GroupContext& C, size_t hi);

/// A1 (restriction compatibility), A2 (conjugation equivariance on group
/// generators), A3 (trace-ideal membership for cyclic components), all
/// compared at check precision.
ConditionReport check_phi_conditions(const GroupContext& C, const PhiTuple& t);

/// Flat coordinates of a tuple inside the product of its component rings.
std::vector<size_t> tuple_offsets(const GroupContext& C, PhiShape shape);
ZVec tuple_flatten(const GroupContext& C, const PhiTuple& t);
PhiTuple tuple_from_flat(const GroupContext& C, PhiShape shape, const ZVec& v);

/// Canonical basis of the solution module of A1-A3 at check precision
/// (contains p^n_check times the ambient product).
HowellBasis phi_module_basis(const GroupContext& C, PhiShape shape);

/// Reassemble an all-subgroups tuple from a cyclic one; inverse of
/// proj_tuple on compatible tuples.
PhiTuple q_map(const GroupContext& C, const PhiTuple& t);

/// v_H = sum over cyclic P with P^p <= H of [P:P^p]/[H:P^p] ver(eta(a_P)).
PhiTuple v_map(const GroupContext& C, const PhiTuple& t);

/// q . v . proj on all-subgroups tuples, cross-checked against the explicit
/// per-component formula.
PhiTuple v_G_map(const GroupContext& C, const PhiTuple& t);

/// Linear extension of class(g) -> class(g^p) on the class module.
ZpElt phi_power(const GroupContext& C, const ZpElt& a);

struct OmegaValue {
  int sign = 1;      // -1 only possible at p = 2
  int ab_coset = 0;  // coset id inside G^ab
  bool operator==(const OmegaValue& o) const {
    return sign == o.sign && ab_coset == o.ab_coset;
  }
};

/// omega(sum a_i g_i) = (eps^{sum a_i}, prod gbar_i^{a_i}) with eps = -1
/// exactly when p = 2.
OmegaValue omega_map(const GroupContext& C, const ZpElt& a);
OmegaValue omega_map(const GroupContext& C, const QpElt& a);

}  // namespace wlab
