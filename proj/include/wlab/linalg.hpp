#pragma once

#include <vector>

#include "wlab/precision.hpp"

namespace wlab {

using ZVec = std::vector<Zp>;
using ZMat = std::vector<ZVec>;

ZVec zvec(const PrecisionContext& ctx, size_t n);
ZMat zmat(const PrecisionContext& ctx, size_t rows, size_t cols);
ZMat zmat_identity(const PrecisionContext& ctx, size_t n);
ZVec mat_vec(const ZMat& m, const ZVec& v);

/// Re-reduce a value into another context's modulus.
Zp rebase(const PrecisionContext& to, const Zp& x);
ZVec rebase(const PrecisionContext& to, const ZVec& v);

/// Canonical echelon basis of a row span over Z/p^n_work.  Pivot entries are
/// pure p-powers, entries above a pivot p^a are reduced mod p^a, and the span
/// is shift-closed so membership is decided by straight reduction.
struct HowellBasis {
  const PrecisionContext* ctx = nullptr;
  size_t ncols = 0;
  ZMat rows;
  std::vector<size_t> pivot_col;
  std::vector<int> pivot_val;  // rows[i][pivot_col[i]] = p^pivot_val[i]

  /// Reduce v against the basis in place; true iff v lands on zero.
  bool reduce(ZVec& v) const;
  bool contains(const ZVec& v) const;
  size_t rank() const { return rows.size(); }
};

HowellBasis howell_form(const PrecisionContext& ctx, ZMat gens, size_t ncols);

bool submodule_contains(const HowellBasis& b, const ZVec& v);
bool submodule_equal(const HowellBasis& a, const HowellBasis& b);

/// Canonical generators of {x : A x = 0} over Z/p^n_work.
HowellBasis kernel_mod(const PrecisionContext& ctx, ZMat a, size_t ncols);

/// Rows B with: x lies in the row span of S  <=>  B x = 0.  Exact over
/// Z/p^n_work because the span equals its double annihilator there.
ZMat membership_conditions(const PrecisionContext& ctx, const ZMat& span_rows,
                           size_t ncols);

}  // namespace wlab
