#include "wlab/linalg.hpp"

#include <algorithm>

namespace wlab {

ZVec zvec(const PrecisionContext& ctx, size_t n) { return ZVec(n, Zp(ctx, 0)); }

ZMat zmat(const PrecisionContext& ctx, size_t rows, size_t cols) {
  return ZMat(rows, zvec(ctx, cols));
}

ZMat zmat_identity(const PrecisionContext& ctx, size_t n) {
  ZMat m = zmat(ctx, n, n);
  for (size_t i = 0; i < n; ++i) m[i][i] = Zp(ctx, 1);
  return m;
}

ZVec mat_vec(const ZMat& m, const ZVec& v) {
  if (m.empty()) return {};
  const PrecisionContext& ctx = m[0][0].ctx();
  ZVec out = zvec(ctx, m.size());
  for (size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != v.size())
      raise(ErrorCode::DimensionMismatch, "matrix/vector size mismatch");
    for (size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  }
  return out;
}

Zp rebase(const PrecisionContext& to, const Zp& x) { return Zp(to, x.residue()); }

ZVec rebase(const PrecisionContext& to, const ZVec& v) {
  ZVec out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(rebase(to, x));
  return out;
}

namespace {

bool is_zero_vec(const ZVec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

// v -= q * w, exact mod p^n_work.
void submul(ZVec& v, const mpz_class& q, const ZVec& w) {
  if (q == 0) return;
  const PrecisionContext& ctx = w[0].ctx();
  for (size_t j = 0; j < v.size(); ++j)
    v[j] = Zp(ctx, v[j].residue() - q * w[j].residue());
}

void scale_vec(ZVec& v, const mpz_class& c) {
  if (v.empty()) return;
  const PrecisionContext& ctx = v[0].ctx();
  for (auto& x : v) x = Zp(ctx, x.residue() * c);
}

}  // namespace

HowellBasis howell_form(const PrecisionContext& ctx, ZMat gens, size_t ncols) {
  const int n = ctx.n_work;
  HowellBasis out;
  out.ctx = &ctx;
  out.ncols = ncols;

  std::vector<ZVec> work;
  for (auto& r : gens) {
    if (r.size() != ncols)
      raise(ErrorCode::DimensionMismatch, "generator width mismatch");
    if (!is_zero_vec(r)) work.push_back(std::move(r));
  }

  for (size_t col = 0; col < ncols; ++col) {
    int best = -1;
    int besta = n;
    for (size_t i = 0; i < work.size(); ++i) {
      int a = work[i][col].valuation();
      if (a < besta) {
        besta = a;
        best = static_cast<int>(i);
      }
    }
    if (best < 0 || besta >= n) continue;

    ZVec pivot = std::move(work[static_cast<size_t>(best)]);
    work.erase(work.begin() + best);

    // Scale so the pivot entry is exactly p^a.
    mpz_class u;
    mpz_divexact(u.get_mpz_t(), pivot[col].residue().get_mpz_t(),
                 ctx.pow(besta).get_mpz_t());
    mpz_class uinv;
    mpz_invert(uinv.get_mpz_t(), u.get_mpz_t(), ctx.modulus.get_mpz_t());
    scale_vec(pivot, uinv);

    for (auto& r : work) {
      if (r[col].is_zero()) continue;
      mpz_class q;
      mpz_divexact(q.get_mpz_t(), r[col].residue().get_mpz_t(),
                   ctx.pow(besta).get_mpz_t());
      submul(r, q, pivot);
    }
    // Shift row keeps the span closed when the pivot is not a unit: it spans
    // the part of the column-col annihilator that lives in later columns.
    if (besta > 0) {
      ZVec shifted = pivot;
      scale_vec(shifted, ctx.pow(n - besta));
      if (!is_zero_vec(shifted)) work.push_back(std::move(shifted));
    }
    out.rows.push_back(std::move(pivot));
    out.pivot_col.push_back(col);
    out.pivot_val.push_back(besta);
  }

  // Reduce entries above each pivot into [0, p^a).
  for (size_t i = 0; i < out.rows.size(); ++i) {
    size_t c = out.pivot_col[i];
    const mpz_class& pa = ctx.pow(out.pivot_val[i]);
    for (size_t j = 0; j < i; ++j) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), out.rows[j][c].residue().get_mpz_t(),
                 pa.get_mpz_t());
      submul(out.rows[j], q, out.rows[i]);
    }
  }
  return out;
}

bool HowellBasis::reduce(ZVec& v) const {
  if (v.size() != ncols)
    raise(ErrorCode::DimensionMismatch, "vector width mismatch");
  for (size_t i = 0; i < rows.size(); ++i) {
    const Zp& e = v[pivot_col[i]];
    if (e.is_zero()) continue;
    if (e.valuation() < pivot_val[i]) return false;
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), e.residue().get_mpz_t(),
                 ctx->pow(pivot_val[i]).get_mpz_t());
    submul(v, q, rows[i]);
  }
  return is_zero_vec(v);
}

bool HowellBasis::contains(const ZVec& v) const {
  ZVec w = v;
  return reduce(w);
}

bool submodule_contains(const HowellBasis& b, const ZVec& v) {
  return b.contains(v);
}

bool submodule_equal(const HowellBasis& a, const HowellBasis& b) {
  if (a.ncols != b.ncols)
    raise(ErrorCode::DimensionMismatch, "ambient dimensions differ");
  if (a.pivot_col != b.pivot_col || a.pivot_val != b.pivot_val) return false;
  for (size_t i = 0; i < a.rows.size(); ++i)
    for (size_t j = 0; j < a.ncols; ++j)
      if (a.rows[i][j] != b.rows[i][j]) return false;
  return true;
}

HowellBasis kernel_mod(const PrecisionContext& ctx, ZMat a, size_t ncols) {
  const int n = ctx.n_work;
  for (auto& r : a)
    if (r.size() != ncols)
      raise(ErrorCode::DimensionMismatch, "matrix width mismatch");

  size_t nrows = a.size();
  ZMat c = zmat_identity(ctx, ncols);
  std::vector<int> diag_val;

  size_t pos = 0;
  while (pos < nrows && pos < ncols) {
    int besta = n;
    size_t bi = pos, bj = pos;
    bool found = false;
    for (size_t i = pos; i < nrows; ++i)
      for (size_t j = pos; j < ncols; ++j) {
        int v = a[i][j].valuation();
        if (v < besta) {
          besta = v;
          bi = i;
          bj = j;
          found = true;
        }
      }
    if (!found || besta >= n) break;

    std::swap(a[pos], a[bi]);
    if (bj != pos) {
      for (auto& row : a) std::swap(row[pos], row[bj]);
      for (auto& row : c) std::swap(row[pos], row[bj]);
    }

    mpz_class u;
    mpz_divexact(u.get_mpz_t(), a[pos][pos].residue().get_mpz_t(),
                 ctx.pow(besta).get_mpz_t());
    mpz_class uinv;
    mpz_invert(uinv.get_mpz_t(), u.get_mpz_t(), ctx.modulus.get_mpz_t());
    scale_vec(a[pos], uinv);

    for (size_t i = 0; i < nrows; ++i) {
      if (i == pos || a[i][pos].is_zero()) continue;
      mpz_class q;
      mpz_divexact(q.get_mpz_t(), a[i][pos].residue().get_mpz_t(),
                   ctx.pow(besta).get_mpz_t());
      submul(a[i], q, a[pos]);
    }
    for (size_t j = 0; j < ncols; ++j) {
      if (j == pos || a[pos][j].is_zero()) continue;
      mpz_class q;
      mpz_divexact(q.get_mpz_t(), a[pos][j].residue().get_mpz_t(),
                   ctx.pow(besta).get_mpz_t());
      // Column op col_j -= q * col_pos, mirrored on the accumulator.
      for (size_t i = 0; i < nrows; ++i)
        a[i][j] = Zp(ctx, a[i][j].residue() - q * a[i][pos].residue());
      for (size_t i = 0; i < ncols; ++i)
        c[i][j] = Zp(ctx, c[i][j].residue() - q * c[i][pos].residue());
    }
    diag_val.push_back(besta);
    ++pos;
  }

  // Kernel of the diagonal form: p^(n-a_i) e_i for pivot slots, e_j for free
  // columns; pull back through the accumulated column operations.
  ZMat gens;
  for (size_t i = 0; i < diag_val.size(); ++i) {
    if (diag_val[i] == 0) continue;
    ZVec g = zvec(ctx, ncols);
    for (size_t r = 0; r < ncols; ++r)
      g[r] = Zp(ctx, c[r][i].residue() * ctx.pow(n - diag_val[i]));
    if (!is_zero_vec(g)) gens.push_back(std::move(g));
  }
  for (size_t j = diag_val.size(); j < ncols; ++j) {
    ZVec g = zvec(ctx, ncols);
    for (size_t r = 0; r < ncols; ++r) g[r] = c[r][j];
    if (!is_zero_vec(g)) gens.push_back(std::move(g));
  }
  return howell_form(ctx, std::move(gens), ncols);
}

ZMat membership_conditions(const PrecisionContext& ctx, const ZMat& span_rows,
                           size_t ncols) {
  HowellBasis dual = kernel_mod(ctx, span_rows, ncols);
  return dual.rows;
}

}  // namespace wlab
