#include "wlab/precision.hpp"

#include <algorithm>

namespace wlab {

PrecisionContext::PrecisionContext(long p_, int n_work_, int n_check_,
                                   std::uint64_t seed_)
    : p(p_), n_work(n_work_), n_check(n_check_), seed(seed_) {
  if (p < 2) raise(ErrorCode::BadParams, "prime must be >= 2");
  if (n_check < 1 || n_work <= n_check)
    raise(ErrorCode::BadParams, "need n_work > n_check >= 1");
  p_pow.resize(static_cast<size_t>(n_work) + 1);
  p_pow[0] = 1;
  for (int k = 1; k <= n_work; ++k) p_pow[k] = p_pow[k - 1] * p;
  modulus = p_pow[static_cast<size_t>(n_work)];
}

int default_n_work(long p, int group_order, int n_check) {
  int logp = 0;
  long v = 1;
  while (v < group_order) {
    v *= p;
    ++logp;
  }
  return n_check + 2 * logp + 4;
}

int valuation_of(const mpz_class& x, long p, int cap) {
  if (x == 0) return cap;
  mpz_class t = x;
  int v = 0;
  while (v < cap && mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(p));
    ++v;
  }
  return v;
}

Zp Zp::inverse() const {
  if (!is_unit()) raise(ErrorCode::NotAUnit, "Zp residue divisible by p");
  mpz_class inv;
  if (!mpz_invert(inv.get_mpz_t(), r_.get_mpz_t(), ctx_->modulus.get_mpz_t()))
    raise(ErrorCode::NotAUnit, "no inverse mod p^n");
  return Zp(*ctx_, inv);
}

Zp Zp::pow(unsigned long e) const {
  mpz_class out;
  mpz_powm_ui(out.get_mpz_t(), r_.get_mpz_t(), e, ctx_->modulus.get_mpz_t());
  return Zp(*ctx_, out);
}

mpz_class Zp::reduced(int k) const {
  mpz_class out;
  mpz_mod(out.get_mpz_t(), r_.get_mpz_t(), ctx_->pow(k).get_mpz_t());
  return out;
}

Qp::Qp(const PrecisionContext& ctx, long val, const mpz_class& unit)
    : ctx_(&ctx), zero_(false), val_(val) {
  mpz_mod(unit_.get_mpz_t(), unit.get_mpz_t(), ctx.modulus.get_mpz_t());
  normalize();
}

Qp Qp::from_zp(const Zp& z) { return Qp(z.ctx(), 0, z.residue()); }

Qp Qp::from_rational(const PrecisionContext& ctx, const mpz_class& num,
                     const mpz_class& den) {
  if (den == 0) raise(ErrorCode::BadParams, "zero denominator");
  Qp n = from_integer(ctx, num);
  mpz_class d = den;
  long dval = 0;
  while (mpz_divisible_ui_p(d.get_mpz_t(), static_cast<unsigned long>(ctx.p))) {
    mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(ctx.p));
    ++dval;
  }
  mpz_class dinv;
  mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), ctx.modulus.get_mpz_t());
  if (n.zero_) return n;
  return Qp(ctx, n.val_ - dval, n.unit_ * dinv);
}

void Qp::normalize() {
  if (zero_) return;
  if (unit_ == 0) {
    zero_ = true;
    val_ = 0;
    return;
  }
  while (mpz_divisible_ui_p(unit_.get_mpz_t(), static_cast<unsigned long>(ctx_->p))) {
    mpz_divexact_ui(unit_.get_mpz_t(), unit_.get_mpz_t(),
                    static_cast<unsigned long>(ctx_->p));
    ++val_;
    if (unit_ == 0) {  // cannot happen (unit_ != 0 stays != 0), kept for clarity
      zero_ = true;
      val_ = 0;
      return;
    }
  }
}

Qp Qp::operator-() const {
  if (zero_) return *this;
  return Qp(*ctx_, val_, ctx_->modulus - unit_);
}

Qp Qp::operator+(const Qp& o) const {
  if (ctx_ != o.ctx_) raise(ErrorCode::BasisMismatch, "Qp precision contexts differ");
  if (zero_) return o;
  if (o.zero_) return *this;
  long base = std::min(val_, o.val_);
  int sa = static_cast<int>(std::min<long>(val_ - base, ctx_->n_work));
  int sb = static_cast<int>(std::min<long>(o.val_ - base, ctx_->n_work));
  mpz_class a = unit_ * ctx_->pow(sa);
  mpz_class b = o.unit_ * ctx_->pow(sb);
  return Qp(*ctx_, base, a + b);
}

Qp Qp::operator*(const Qp& o) const {
  if (ctx_ != o.ctx_) raise(ErrorCode::BasisMismatch, "Qp precision contexts differ");
  if (zero_ || o.zero_) return Qp(*ctx_);
  return Qp(*ctx_, val_ + o.val_, unit_ * o.unit_);
}

Qp Qp::inverse() const {
  if (zero_) raise(ErrorCode::NotAUnit, "inverse of zero");
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), unit_.get_mpz_t(), ctx_->modulus.get_mpz_t());
  return Qp(*ctx_, -val_, inv);
}

Qp Qp::div_int(const mpz_class& k) const {
  if (k == 0) raise(ErrorCode::BadParams, "division by zero");
  return *this * from_rational(*ctx_, 1, k);
}

Zp Qp::to_zp() const {
  if (zero_) return Zp(*ctx_, 0);
  if (val_ < 0)
    raise(ErrorCode::NonIntegralResult, "negative valuation in Qp->Zp conversion");
  long v = std::min<long>(val_, ctx_->n_work);
  return Zp(*ctx_, unit_ * ctx_->pow(static_cast<int>(v)));
}

Cyclo::Cyclo(const PrecisionContext& ctx)
    : ctx_(&ctx),
      c_(static_cast<size_t>(ctx.p - 1), Zp(ctx, 0)) {}

Cyclo Cyclo::from_zp(const Zp& z) {
  Cyclo out(z.ctx());
  out.c_[0] = z;
  return out;
}

Cyclo Cyclo::zeta_pow(const PrecisionContext& ctx, long k) {
  Cyclo out(ctx);
  long d = ctx.p;
  long e = ((k % d) + d) % d;
  if (e < d - 1) {
    out.c_[static_cast<size_t>(e)] = Zp(ctx, 1);
  } else {
    // zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2))
    for (auto& c : out.c_) c = Zp(ctx, -1);
  }
  return out;
}

Cyclo Cyclo::operator+(const Cyclo& o) const {
  Cyclo out(*ctx_);
  for (size_t i = 0; i < c_.size(); ++i) out.c_[i] = c_[i] + o.c_[i];
  return out;
}

Cyclo Cyclo::operator-(const Cyclo& o) const {
  Cyclo out(*ctx_);
  for (size_t i = 0; i < c_.size(); ++i) out.c_[i] = c_[i] - o.c_[i];
  return out;
}

Cyclo Cyclo::operator-() const {
  Cyclo out(*ctx_);
  for (size_t i = 0; i < c_.size(); ++i) out.c_[i] = -c_[i];
  return out;
}

Cyclo Cyclo::operator*(const Cyclo& o) const {
  size_t d = c_.size();  // = p-1
  std::vector<Zp> prod(2 * d - 1, Zp(*ctx_, 0));
  for (size_t i = 0; i < d; ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < d; ++j) {
      if (o.c_[j].is_zero()) continue;
      prod[i + j] += c_[i] * o.c_[j];
    }
  }
  // Reduce x^m for m >= p-1 via x^(p-1) = -(1 + x + ... + x^(p-2)).
  for (size_t m = prod.size(); m-- > d;) {
    if (prod[m].is_zero()) continue;
    Zp v = prod[m];
    prod[m] = Zp(*ctx_, 0);
    for (size_t i = 0; i < d; ++i) prod[m - d + i] -= v;
  }
  Cyclo out(*ctx_);
  for (size_t i = 0; i < d; ++i) out.c_[i] = prod[i];
  return out;
}

bool Cyclo::operator==(const Cyclo& o) const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != o.c_[i]) return false;
  return true;
}

bool Cyclo::is_zero() const {
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

bool Cyclo::in_base() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return false;
  return true;
}

Zp Cyclo::base_part() const {
  if (!in_base())
    raise(ErrorCode::GaloisDescentFailure, "cyclotomic element not in base ring");
  return c_[0];
}

Zp teichmueller(const PrecisionContext& ctx, const mpz_class& a) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), ctx.modulus.get_mpz_t());
  if (mpz_divisible_ui_p(r.get_mpz_t(), static_cast<unsigned long>(ctx.p)))
    raise(ErrorCode::ZeroResidue, "teichmueller of residue divisible by p");
  Zp x(ctx, r);
  for (int i = 0; i < ctx.n_work + 1; ++i) {
    Zp next = x.pow(static_cast<unsigned long>(ctx.p));
    if (next == x) break;
    x = next;
  }
  return x;
}

}  // namespace wlab
