#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "wlab/errors.hpp"

namespace wlab {

/// Fixed-precision model of Z_p: all ring arithmetic happens modulo p^n_work,
/// all comparisons and integrality assertions happen at p^n_check.  The gap
/// between the two absorbs the valuation losses of the maps that divide by
/// p-powers (tau, q, v, the integral logarithm).
struct PrecisionContext {
  long p = 2;
  int n_work = 24;
  int n_check = 16;
  std::uint64_t seed = 0;

  mpz_class modulus;             // p^n_work
  std::vector<mpz_class> p_pow;  // p^0 .. p^n_work

  PrecisionContext(long p_, int n_work_, int n_check_, std::uint64_t seed_ = 0);

  const mpz_class& pow(int k) const { return p_pow.at(static_cast<size_t>(k)); }
};

/// Default working precision for a group of the given order:
/// n_work = n_check + 2*ceil(log_p order) + 4.
int default_n_work(long p, int group_order, int n_check);

/// v_p(x) clamped to `cap` (v_p(0) := cap).
int valuation_of(const mpz_class& x, long p, int cap);

class Zp {
 public:
  Zp() = default;
  Zp(const PrecisionContext& ctx, const mpz_class& value) : ctx_(&ctx) {
    mpz_mod(r_.get_mpz_t(), value.get_mpz_t(), ctx.modulus.get_mpz_t());
  }
  Zp(const PrecisionContext& ctx, long value) : Zp(ctx, mpz_class(value)) {}

  const PrecisionContext& ctx() const { return *ctx_; }
  const mpz_class& residue() const { return r_; }
  bool is_zero() const { return r_ == 0; }

  Zp operator+(const Zp& o) const { return Zp(same(o), r_ + o.r_); }
  Zp operator-(const Zp& o) const { return Zp(same(o), r_ - o.r_); }
  Zp operator*(const Zp& o) const { return Zp(same(o), r_ * o.r_); }
  Zp operator-() const { return Zp(*ctx_, -r_); }
  Zp& operator+=(const Zp& o) { return *this = *this + o; }
  Zp& operator-=(const Zp& o) { return *this = *this - o; }
  Zp& operator*=(const Zp& o) { return *this = *this * o; }
  bool operator==(const Zp& o) const { return r_ == o.r_; }
  bool operator!=(const Zp& o) const { return r_ != o.r_; }

  bool is_unit() const { return ctx_ && r_ % ctx_->p != 0; }

  Zp inverse() const;
  Zp pow(unsigned long e) const;

  /// v_p of the residue, clamped to n_work (zero residue reports n_work).
  int valuation() const { return valuation_of(r_, ctx_->p, ctx_->n_work); }

  /// Residue reduced mod p^k, k <= n_work.
  mpz_class reduced(int k) const;

  /// True iff the residue is divisible by p^k.
  bool divisible(int k) const { return valuation() >= k; }

 private:
  const PrecisionContext& same(const Zp& o) const {
    if (ctx_ != o.ctx_) raise(ErrorCode::BasisMismatch, "Zp precision contexts differ");
    return *ctx_;
  }

  mpz_class r_;
  const PrecisionContext* ctx_ = nullptr;
};

/// Valued approximation of Q_p: value = unit * p^val with the unit part kept
/// modulo p^n_work, plus an explicit exact-zero flag.  Addition renormalizes;
/// if cancellation wipes the unit at working precision the value collapses to
/// the zero flag.
class Qp {
 public:
  Qp() = default;
  explicit Qp(const PrecisionContext& ctx) : ctx_(&ctx), zero_(true) {}
  Qp(const PrecisionContext& ctx, long val, const mpz_class& unit);

  static Qp from_zp(const Zp& z);
  static Qp from_integer(const PrecisionContext& ctx, const mpz_class& v) {
    return from_zp(Zp(ctx, v));
  }
  /// Exact rational num/den (den nonzero).
  static Qp from_rational(const PrecisionContext& ctx, const mpz_class& num,
                          const mpz_class& den);

  const PrecisionContext& ctx() const { return *ctx_; }
  bool is_zero() const { return zero_; }
  long val() const { return zero_ ? ctx_->n_work : val_; }
  const mpz_class& unit() const { return unit_; }

  Qp operator+(const Qp& o) const;
  Qp operator-(const Qp& o) const { return *this + (-o); }
  Qp operator-() const;
  Qp operator*(const Qp& o) const;
  Qp& operator+=(const Qp& o) { return *this = *this + o; }
  Qp& operator-=(const Qp& o) { return *this = *this - o; }
  Qp& operator*=(const Qp& o) { return *this = *this * o; }

  Qp inverse() const;
  Qp div_int(const mpz_class& k) const;  // exact division by a nonzero integer

  /// Integral at check precision: val >= 0, or zero.
  bool is_integral() const { return zero_ || val_ >= 0; }

  /// Convert to Zp; raises NonIntegralResult when val < 0.
  Zp to_zp() const;

  /// Valuation of (*this - o), clamped to n_work.
  int residual_valuation(const Qp& o) const { return (*this - o).val_or_cap(); }
  int val_or_cap() const {
    if (zero_) return ctx_->n_work;
    return static_cast<int>(std::min<long>(val_, ctx_->n_work));
  }

 private:
  void normalize();

  const PrecisionContext* ctx_ = nullptr;
  bool zero_ = true;
  long val_ = 0;
  mpz_class unit_;
};

/// Z_p[zeta_p] as dense polynomials of degree < p-1 modulo the p-th
/// cyclotomic polynomial 1 + x + ... + x^(p-1).  Only alpha_P needs this
/// ring, and only transiently; elements are reduced back to the base ring
/// before any comparison.
class Cyclo {
 public:
  Cyclo() = default;
  explicit Cyclo(const PrecisionContext& ctx);
  static Cyclo from_zp(const Zp& z);
  static Cyclo zeta_pow(const PrecisionContext& ctx, long k);

  const PrecisionContext& ctx() const { return *ctx_; }
  const std::vector<Zp>& coeffs() const { return c_; }

  Cyclo operator+(const Cyclo& o) const;
  Cyclo operator-(const Cyclo& o) const;
  Cyclo operator*(const Cyclo& o) const;
  Cyclo operator-() const;
  Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
  Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }
  bool operator==(const Cyclo& o) const;

  bool is_zero() const;
  /// Lies in Z_p (all non-constant coefficients vanish)?
  bool in_base() const;
  /// Constant coefficient; raises GaloisDescentFailure unless in_base().
  Zp base_part() const;

 private:
  const PrecisionContext* ctx_ = nullptr;
  std::vector<Zp> c_;  // degree p-2 polynomial in zeta
};

/// The unique (p-1)-th root of unity in Z/p^n_work congruent to a mod p,
/// via iterated p-th powering to the fixpoint.
Zp teichmueller(const PrecisionContext& ctx, const mpz_class& a);

}  // namespace wlab
