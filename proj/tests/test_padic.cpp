#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "wlab/precision.hpp"

using namespace wlab;

namespace {

// Independent fixpoint iteration straight on mpz values.
mpz_class teich_oracle(long p, int n, long a) {
  mpz_class mod;
  mpz_ui_pow_ui(mod.get_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(n));
  mpz_class x = a;
  for (int i = 0; i < 4 * n; ++i) {
    mpz_class next;
    mpz_powm_ui(next.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p),
                mod.get_mpz_t());
    if (next == x) break;
    x = next;
  }
  return x;
}

}  // namespace

TEST_CASE("context validation") {
  CHECK_THROWS_AS(PrecisionContext(2, 4, 4), Error);
  CHECK_THROWS_AS(PrecisionContext(2, 3, 0), Error);
  PrecisionContext ctx(3, 10, 5);
  CHECK(ctx.modulus == 59049);  // 3^10
  CHECK(ctx.pow(0) == 1);
  CHECK(ctx.pow(3) == 27);
}

TEST_CASE("default working precision") {
  CHECK(default_n_work(2, 8, 16) == 16 + 2 * 3 + 4);
  CHECK(default_n_work(3, 27, 16) == 16 + 2 * 3 + 4);
  CHECK(default_n_work(5, 1, 16) == 20);
}

TEST_CASE("Zp ring arithmetic") {
  PrecisionContext ctx(5, 8, 4);
  Zp a(ctx, 7), b(ctx, -3);
  CHECK((a + b) == Zp(ctx, 4));
  CHECK((a * b).residue() == mpz_class(ctx.modulus - 21));
  CHECK((a - a).is_zero());
  CHECK(a.is_unit());
  CHECK(!Zp(ctx, 10).is_unit());
  CHECK((a * a.inverse()) == Zp(ctx, 1));
  CHECK(Zp(ctx, 2).pow(3) == Zp(ctx, 8));
  CHECK(Zp(ctx, 50).valuation() == 2);
  CHECK(Zp(ctx, 0).valuation() == ctx.n_work);
  CHECK(Zp(ctx, 126).reduced(2) == 1);
  CHECK(Zp(ctx, 75).divisible(2));
  CHECK(!Zp(ctx, 75).divisible(3));
}

TEST_CASE("Zp residues exceed 64 bits cleanly") {
  PrecisionContext ctx(5, 34, 16);
  Zp x(ctx, 2);
  Zp y = x.pow(90);
  CHECK((y * y.inverse()) == Zp(ctx, 1));
  CHECK(ctx.modulus > mpz_class("18446744073709551615"));
}

TEST_CASE("Qp valued arithmetic") {
  PrecisionContext ctx(3, 12, 6);
  Qp x = Qp::from_integer(ctx, 18);  // 2 * 3^2
  CHECK(x.val() == 2);
  CHECK(x.unit() == 2);
  Qp y = Qp::from_rational(ctx, 1, 3);
  CHECK(y.val() == -1);
  CHECK(!y.is_integral());
  CHECK((y * Qp::from_integer(ctx, 3) - Qp::from_integer(ctx, 1)).is_zero());
  CHECK((x - x).is_zero());
  CHECK((x + y).val() == -1);
  CHECK_THROWS_AS(y.to_zp(), Error);
  CHECK(x.to_zp() == Zp(ctx, 18));
  Qp z = Qp::from_rational(ctx, 7, 5);
  CHECK((z * z.inverse() - Qp::from_integer(ctx, 1)).is_zero());
  CHECK((x.div_int(9) - Qp::from_integer(ctx, 2)).is_zero());
  CHECK(Qp(ctx).is_zero());
  CHECK(Qp(ctx).val_or_cap() == ctx.n_work);
}

TEST_CASE("Qp addition with far-apart valuations stays sane") {
  PrecisionContext ctx(2, 8, 4);
  Qp lo = Qp::from_rational(ctx, 1, 1024);  // val -10
  Qp hi = Qp::from_integer(ctx, 4);
  Qp s = lo + hi;
  CHECK(s.val() == -10);
}

TEST_CASE("teichmueller representatives") {
  PrecisionContext c3(3, 10, 5);
  CHECK(teichmueller(c3, 1) == Zp(c3, 1));
  CHECK(teichmueller(c3, 2) == Zp(c3, -1));
  CHECK_THROWS_AS(teichmueller(c3, 3), Error);

  PrecisionContext c5(5, 12, 6);
  for (long a = 1; a < 5; ++a) {
    Zp t = teichmueller(c5, a);
    CHECK(t.pow(4) == Zp(c5, 1));
    CHECK(t.reduced(1) == a);
    CHECK(t.residue() == teich_oracle(5, 12, a));
  }

  // Same value when computed at twice the precision and reduced back.
  PrecisionContext wide(5, 24, 6);
  Zp t = teichmueller(c5, 2);
  Zp tw = teichmueller(wide, 2);
  CHECK(tw.reduced(12) == t.residue());
}

TEST_CASE("cyclotomic quotient ring") {
  PrecisionContext ctx(5, 10, 5);
  // 1 + zeta + ... + zeta^(p-1) = 0.
  Cyclo phi(ctx);
  for (long k = 0; k < 5; ++k) phi += Cyclo::zeta_pow(ctx, k);
  CHECK(phi.is_zero());

  Cyclo z = Cyclo::zeta_pow(ctx, 1);
  Cyclo z5 = z;
  for (int i = 0; i < 4; ++i) z5 *= z;
  CHECK(z5 == Cyclo::from_zp(Zp(ctx, 1)));

  CHECK(Cyclo::zeta_pow(ctx, 7) == Cyclo::zeta_pow(ctx, 2));
  CHECK((z * Cyclo::zeta_pow(ctx, 4)) == Cyclo::from_zp(Zp(ctx, 1)));

  Cyclo c = Cyclo::from_zp(Zp(ctx, 7));
  CHECK(c.in_base());
  CHECK(c.base_part() == Zp(ctx, 7));
  CHECK(!z.in_base());
  CHECK_THROWS_AS(z.base_part(), Error);
}

TEST_CASE("galois norm of a cyclotomic element lies in the base") {
  PrecisionContext ctx(5, 10, 5);
  // sigma_k maps zeta to zeta^k; the norm is the product over k in (Z/5)^*.
  auto galois = [&](const Cyclo& x, long k) {
    Cyclo out(ctx);
    for (size_t i = 0; i < x.coeffs().size(); ++i)
      out += Cyclo::zeta_pow(ctx, static_cast<long>(i) * k) *
             Cyclo::from_zp(x.coeffs()[i]);
    return out;
  };
  Cyclo x = Cyclo::from_zp(Zp(ctx, 3)) + Cyclo::zeta_pow(ctx, 1) +
            Cyclo::zeta_pow(ctx, 3) * Cyclo::from_zp(Zp(ctx, 2));
  Cyclo norm = Cyclo::from_zp(Zp(ctx, 1));
  for (long k = 1; k < 5; ++k) norm *= galois(x, k);
  CHECK(norm.in_base());

  // On a base element every conjugate is itself.
  Cyclo c = Cyclo::from_zp(Zp(ctx, 7));
  Cyclo cn = Cyclo::from_zp(Zp(ctx, 1));
  for (long k = 1; k < 5; ++k) cn *= galois(c, k);
  CHECK(cn.base_part() == Zp(ctx, 7).pow(4));
}
