#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "seqper/padic.hpp"
#include "seqper/primes.hpp"

using namespace seqper;

TEST_CASE("sieve windows") {
    auto w = sieve_primes(5, 20);
    CHECK(w.primes == std::vector<u64>{5, 7, 11, 13, 17, 19});
    CHECK(sieve_primes(14, 16).empty());
    CHECK_THROWS_AS(sieve_primes(14, 16, true), usage_error);
    CHECK(sieve_primes(2, 2).primes == std::vector<u64>{2});
    CHECK_THROWS_AS(sieve_primes(1, 5), usage_error);
    CHECK_THROWS_AS(sieve_primes(7, 5), usage_error);
    CHECK(w.index_of(13).value() == 3);
    CHECK(!w.index_of(12).has_value());
}

TEST_CASE("u128 modular arithmetic against GMP") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        u128 m = (u128(rng()) << 60 | rng()) % (modulus_cap - 2) + 2;
        u128 a = (u128(rng()) << 60 | rng()) % m;
        u128 b = (u128(rng()) << 60 | rng()) % m;
        mpz_class za, zb, zm;
        mpz_import(za.get_mpz_t(), 1, 1, sizeof(u128), 0, 0, &a);
        mpz_import(zb.get_mpz_t(), 1, 1, sizeof(u128), 0, 0, &b);
        mpz_import(zm.get_mpz_t(), 1, 1, sizeof(u128), 0, 0, &m);
        CHECK(mulmod(a, b, m) == oracles::mpz_mod_u128(za * zb, m));
        mpz_class zp;
        mpz_powm_ui(zp.get_mpz_t(), za.get_mpz_t(), 12345, zm.get_mpz_t());
        CHECK(powmod(a, 12345, m) == oracles::mpz_mod_u128(zp, m));
    }
}

TEST_CASE("modulus cap") {
    CHECK_THROWS_AS(pow_checked(2, 127), precision_error);
    CHECK_THROWS_AS(pow_checked(100'000'000, 16), precision_error);
    CHECK(pow_checked(2, 126) == u128(1) << 126);
}

TEST_CASE("primality testing") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(1093));
    CHECK(is_prime_u64(1'000'000'007ull));
    CHECK(is_prime_u64(18446744073709551557ull)); // largest 64-bit prime
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(1093 * 3511ull));
    CHECK_FALSE(is_prime_u64(3215031751ull)); // strong pseudoprime to 2,3,5,7
}

TEST_CASE("reduce_rational examples") {
    PadicValue v = reduce_rational(1, 6, 7, 2);
    CHECK(v.shift() == 0);
    CHECK(v.mantissa() == 41);
    CHECK(v.rel_prec() == 2);

    PadicValue h = reduce_rational(1, 2, 2, 4);
    CHECK(h.shift() == -1);
    CHECK(h.mantissa() == 1);

    PadicValue z = reduce_rational(0, 5, 7, 3);
    CHECK(z.is_zero());
    CHECK(z.valuation_lower_bound() == 3);

    CHECK_THROWS_AS(reduce_rational(1, 0, 7, 3), usage_error);
}

TEST_CASE("reduce_rational reciprocal identity") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        u64 p = std::vector<u64>{5, 7, 11, 13, 101, 65537}[rng() % 6];
        i64 a = i64(rng() % 5000) + 1;
        i64 b = i64(rng() % 5000) + 1;
        if (u64(a) % p == 0 || u64(b) % p == 0) continue;
        PadicValue x = reduce_rational(a, b, p, 4);
        PadicValue y = reduce_rational(b, a, p, 4);
        CHECK(same_at_shared_precision(padic_mul(x, y), PadicValue::one(p, 4)));
    }
}

TEST_CASE("padic arithmetic examples") {
    const u64 p = 5;
    // p*1 + p*(p-1) = p^2, all mod p^3
    PadicValue a = PadicValue::from_parts(p, 1, 1, 2);
    PadicValue b = PadicValue::from_parts(p, 1, p - 1, 2);
    PadicValue sum = padic_add(a, b);
    CHECK(sum.shift() == 2);
    CHECK(sum.mantissa() == 1);
    CHECK(sum.abs_prec() == 3);

    PadicValue x = reduce_rational(7, 3, p, 3);
    CHECK(same_at_shared_precision(padic_mul(x, PadicValue::one(p, 3)), x));
    CHECK(padic_add(x, padic_neg(x)).is_zero());
    CHECK(padic_add(x, padic_neg(x)).valuation_lower_bound() == x.abs_prec());

    PadicValue other = reduce_rational(1, 1, 7, 3);
    CHECK_THROWS_AS(padic_add(x, other), usage_error);
}

TEST_CASE("canonical form under random construction") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        u64 p = std::vector<u64>{3, 5, 13, 97}[rng() % 4];
        unsigned n = 1 + rng() % 6;
        PadicValue v = PadicValue::from_parts(p, int(rng() % 7) - 3, u128(rng()), n);
        u128 pn = pow_checked(p, v.rel_prec());
        CHECK(v.mantissa() < pn);
        if (!v.is_zero()) CHECK(v.mantissa() % p != 0);
    }
}

TEST_CASE("precision tracking: add absolute, mul relative") {
    const u64 p = 7;
    PadicValue a = PadicValue::from_parts(p, 0, 3, 5);  // abs 5, rel 5
    PadicValue b = PadicValue::from_parts(p, 2, 2, 2);  // abs 4, rel 2
    CHECK(padic_add(a, b).abs_prec() == 4);
    CHECK(padic_mul(a, b).rel_prec() == 2);
    CHECK(padic_mul(a, b).shift() == 2);
}

TEST_CASE("arithmetic agrees with exact rationals at the tracked precision") {
    std::mt19937_64 rng(271828);
    for (int trial = 0; trial < 400; ++trial) {
        const u64 p = std::vector<u64>{5, 7, 13, 101}[rng() % 4];
        const unsigned prec = 2 + rng() % 4;
        i64 an = i64(rng() % 2000) - 1000, ad = i64(rng() % 999) + 1;
        i64 bn = i64(rng() % 2000) - 1000, bd = i64(rng() % 999) + 1;
        if (an == 0 || bn == 0) continue;
        mpq_class a(an, ad), b(bn, bd);
        a.canonicalize();
        b.canonicalize();
        PadicValue pa = reduce_rational(an, ad, p, prec);
        PadicValue pb = reduce_rational(bn, bd, p, prec);

        auto check_match = [&](const PadicValue& got, mpq_class exact) {
            // compare the exact value against the tracked window of `got`:
            // shift by -got.shift() and reduce the unit part mod p^rel_prec
            mpz_class pe;
            int sh = got.is_zero() ? got.abs_prec() - 1 : got.shift();
            unsigned rel = got.rel_prec();
            if (sh >= 0) {
                mpz_ui_pow_ui(pe.get_mpz_t(), static_cast<unsigned long>(p),
                              static_cast<unsigned long>(sh));
                exact /= mpq_class(pe);
            } else {
                mpz_ui_pow_ui(pe.get_mpz_t(), static_cast<unsigned long>(p),
                              static_cast<unsigned long>(-sh));
                exact *= mpq_class(pe);
            }
            if (got.is_zero()) {
                // a zero at absolute precision A means v_p(exact) >= A
                CHECK(oracles::mpq_mod_p(exact, p) == 0);
                return;
            }
            mpz_class prel;
            mpz_ui_pow_ui(prel.get_mpz_t(), static_cast<unsigned long>(p), rel);
            // unit-part congruence mod p^rel
            mpz_class num = exact.get_num() % prel, den = exact.get_den() % prel;
            if (num < 0) num += prel;
            mpz_class inv;
            REQUIRE(mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), prel.get_mpz_t()));
            mpz_class want = num * inv % prel;
            CHECK(oracles::mpz_mod_u128(want, pow_checked(p, rel)) == got.mantissa());
        };

        check_match(padic_add(pa, pb), a + b);
        check_match(padic_mul(pa, pb), a * b);
        check_match(padic_sub(pa, pb), a - b);
        check_match(padic_pow(pa, 3), a * a * a);
    }
}

TEST_CASE("fermat quotient") {
    PadicValue q = fermat_quotient(Rational(2), 5, 1);
    CHECK(q.shift() == 0);
    CHECK(q.mantissa() == 3); // 2^4 = 16 = 1 + 3*5

    CHECK(fermat_quotient(Rational(1), 13, 3).is_zero());
    CHECK(fermat_quotient(Rational(-1), 13, 3).is_zero());

    // Wieferich prime to base 2: quotient vanishes mod p
    PadicValue w = fermat_quotient(Rational(2), 1093, 1);
    CHECK((w.is_zero() || w.shift() >= 1));

    CHECK_THROWS_AS(fermat_quotient(Rational(10), 5, 2), exceptional_prime);
    CHECK_THROWS_AS(fermat_quotient(Rational(1, 5), 5, 2), exceptional_prime);

    // random agreement with the direct mod-p^2 oracle
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        u64 p = std::vector<u64>{5, 7, 11, 13, 17, 101, 499}[rng() % 7];
        long num = long(rng() % 400) + 2, den = long(rng() % 400) + 1;
        if (u64(num) % p == 0 || u64(den) % p == 0 || num == den) continue;
        u64 expect = oracles::fermat_quotient_oracle(num, den, p);
        PadicValue got = fermat_quotient(Rational(num, den), p, 1);
        CHECK(u64(got.residue_mod(1)) == expect % p);
    }
}

TEST_CASE("p-adic logarithm") {
    // log(1) = 0
    CHECK(padic_log_unit(PadicValue::one(5, 3), 3).is_zero());

    // log_5(16) = 15 mod 25, which equals p * q_p(2)
    PadicValue u = PadicValue::from_parts(5, 0, 16, 2);
    PadicValue lg = padic_log_unit(u, 2);
    CHECK(lg.residue_mod(2) == 15);

    CHECK_THROWS_AS(padic_log_unit(PadicValue::from_parts(5, 0, 2, 3), 3), usage_error);
    CHECK_THROWS_AS(padic_log_unit(PadicValue::from_parts(2, 0, 3, 3), 3), usage_error);
}

TEST_CASE("log is a homomorphism on units (1000 pairs per prime)") {
    auto w = sieve_primes(5, 50);
    for (u64 p : w.primes) {
        const unsigned N = 4;
        const u128 pn = pow_checked(p, N);
        std::mt19937_64 rng(p);
        for (int trial = 0; trial < 1000; ++trial) {
            u128 xu = 1 + p * (u128(rng()) % (pn / p));
            u128 yu = 1 + p * (u128(rng()) % (pn / p));
            PadicValue x = PadicValue::from_parts(p, 0, xu, N);
            PadicValue y = PadicValue::from_parts(p, 0, yu, N);
            PadicValue lhs = padic_log_unit(padic_mul(x, y).truncate_abs(int(N)), N);
            PadicValue rhs = padic_add(padic_log_unit(x, N), padic_log_unit(y, N));
            CHECK(same_at_shared_precision(lhs, rhs));
        }
    }
}

TEST_CASE("fermat quotient matches log(r^(p-1))/p mod p") {
    auto w = sieve_primes(5, 200);
    for (u64 p : w.primes) {
        for (long r : {2L, 3L, 10L}) {
            if (u64(r) % p == 0) continue;
            PadicValue base = reduce_rational(r, 1, p, 2);
            u128 p2 = pow_checked(p, 2);
            PadicValue upow = PadicValue::from_parts(p, 0, powmod(base.mantissa(), p - 1, p2), 2);
            PadicValue lg = padic_log_unit(upow, 2);
            PadicValue q = fermat_quotient(Rational(r), p, 1);
            // log has valuation >= 1; compare its p-shifted digit with q mod p
            u64 lhs = lg.is_zero() ? 0 : u64(lg.with_shift_added(-1).residue_mod(1));
            u64 rhs = q.is_zero() ? 0 : u64(q.residue_mod(1));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("binomial coefficients p-adically") {
    IntPoly two_x = IntPoly::parse("2x");
    IntPoly x = IntPoly::parse("x");
    PadicValue b = binomial_padic(two_x, x, 5, 3);
    CHECK(b.shift() == 0);
    CHECK(b.residue_mod(3) == 2); // C(10,5) = 252 = 2 mod 125

    PadicValue c = binomial_padic(x, IntPoly::parse("1"), 13, 3);
    CHECK(c.shift() == 1);
    CHECK(c.mantissa() == 1); // C(p, 1) = p

    PadicValue d = binomial_padic(IntPoly::parse("x-1"), IntPoly::parse("2"), 7, 3);
    CHECK(d.residue_mod(3) == 15); // C(6,2) = 15

    CHECK_THROWS_AS(binomial_padic_int(3, 5, 7, 2), usage_error);
    CHECK_THROWS_AS(binomial_padic_int(-1, 0, 7, 2), usage_error);
}

TEST_CASE("binomial agrees with the exact big-integer oracle, p <= 100, n <= 3p") {
    auto w = sieve_primes(2, 100);
    const unsigned N = 3;
    for (u64 p : w.primes) {
        const u128 pn = pow_checked(p, N);
        for (u64 n = 0; n <= 3 * p; ++n) {
            for (u64 k = 0; k <= n; ++k) {
                mpz_class exact = oracles::binomial_exact(n, k);
                u128 expect = oracles::mpz_mod_u128(exact, pn);
                PadicValue got = binomial_padic_int(i128(n), i128(k), p, N);
                u128 have = got.abs_prec() >= int(N)
                                ? got.residue_mod(N)
                                : got.residue_mod(unsigned(got.abs_prec()));
                u128 want = got.abs_prec() >= int(N)
                                ? expect
                                : expect % pow_checked(p, unsigned(got.abs_prec()));
                CHECK(have == want);
            }
        }
    }
}
