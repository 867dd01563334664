#pragma once

#include <cstdint>
#include <vector>

#include "wlab/additive.hpp"

namespace wlab {

// One unit representative per subgroup, entry H on Z_p[H^ab]. Indices cover
// the whole lattice in ascending order.
struct PsiTuple {
  std::vector<size_t> indices;
  std::vector<ZpElt> entries;
};

enum class UnitShape { General, Trivial, Principal };

// Deterministic unit derived from the context seed and the index; shape
// selects a Teichmueller-scalar times monomial times principal unit, a bare
// monomial, or 1 + p*(bounded element).
ZpElt random_unit(const GroupContext& C, UnitShape shape, std::uint64_t index);

// Determinant of right multiplication by u on Z_p[G] as a free module over
// Z_p[H], entries pushed to Z_p[H^ab].
ZpElt theta_H(const GroupContext& C, size_t hi, const ZpElt& u);
PsiTuple theta_all(const GroupContext& C, const ZpElt& u);

// Determinant of multiplication by x on Z_p[H1^ab] as a free module over the
// embedded copy of Z_p[H/[H1,H1]]; pairs with pi_sub.
ZpElt nr_map(const GroupContext& C, size_t hi, size_t h1i, const ZpElt& x);

// x^p divided by the full product of character twists of x; the product is
// Galois-stable, so it descends to the base ring. Identity on the trivial
// subgroup. x may live on any cyclic multiplicative basis for P.
ZpElt alpha(const GroupContext& C, size_t pi, const ZpElt& x);

// Product over cyclic P with P^p <= H of ver(alpha(x_P)) raised to |P^p|,
// pushed into Z_p[H^ab].
ZpElt u_map(const GroupContext& C, size_t hi, const PsiTuple& t);

// log followed by class projection, minus 1/p times its power-map image.
// Integral by construction on honest units; raises IntegralityViolation
// otherwise.
ZpElt integral_log_L(const GroupContext& C, const ZpElt& u);

// Componentwise log(x_P^{p|P|} / u_{G,P}) scaled by 1/(p|P|), one entry per
// subgroup; the scaling is what makes the square with beta_all commute.
PhiTuple script_L(const GroupContext& C, const PsiTuple& t);

// M1 norm compatibility, M2 conjugation equivariance, M3 augmentation
// congruence mod p, M4 membership of the quotient minus one in p|P| times the
// trace ideal.
ConditionReport check_psi_conditions(const GroupContext& C, const PsiTuple& t);

// Residual valuation between beta_H(L(u)) and the normalized log of the
// theta quotient, evaluated through independent paths.
int key_identity_check(const GroupContext& C, size_t hi, const ZpElt& u);

// Residual valuation between beta_H of the projected log and the log of
// theta_H; doubles as the oracle for the determinant-based norm.
int oliver_taylor_check(const GroupContext& C, size_t hi, const ZpElt& u);

}  // namespace wlab
