#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "seqper/bernoulli.hpp"

using namespace seqper;

namespace {

std::shared_ptr<const PrimeWindow> window(u64 lo, u64 hi) {
    return std::make_shared<const PrimeWindow>(sieve_primes(lo, hi));
}

} // namespace

TEST_CASE("bernoulli residue examples") {
    CHECK(bernoulli_mod_p(0, 7) == 1);
    CHECK(bernoulli_mod_p(2, 7) == 6);  // B_2 = 1/6, inv(6) = 6 mod 7
    CHECK(bernoulli_mod_p(4, 7) == 3);  // B_4 = -1/30 = -inv(2) = 3 mod 7
    CHECK_THROWS_AS(bernoulli_mod_p(6, 7), bernoulli_pole);
    CHECK_THROWS_AS(bernoulli_mod_p(3, 7), usage_error);
    CHECK_THROWS_AS(bernoulli_mod_p(8, 7), usage_error);
}

TEST_CASE("power-sum method agrees with the exact recurrence, p <= 100") {
    for (u64 p : sieve_primes(5, 100).primes) {
        for (u64 m = 0; m + 3 <= p; m += 2) {
            u64 expect = oracles::mpq_mod_p(oracles::bernoulli_exact(unsigned(m)), p);
            CHECK(bernoulli_mod_p(m, p) == expect);
        }
    }
}

TEST_CASE("kummer congruence spot check on exact rationals, p <= 50") {
    for (u64 p : sieve_primes(5, 50).primes) {
        for (u64 m = 2; m + 3 <= p; m += 2) {
            if ((m + p - 1) % (p - 1) == 0) continue;
            mpq_class lhs = oracles::bernoulli_exact(unsigned(m)) / mpq_class(long(m));
            mpq_class rhs =
                oracles::bernoulli_exact(unsigned(m + p - 1)) / mpq_class(long(m + p - 1));
            CHECK(oracles::mpq_mod_p(lhs, p) == oracles::mpq_mod_p(rhs, p));
            // and the index-reduced library value matches the exact B_{m+p-1}
            CHECK(bernoulli_mod_p_any(m + p - 1, p) ==
                  oracles::mpq_mod_p(oracles::bernoulli_exact(unsigned(m + p - 1)), p));
        }
    }
}

TEST_CASE("irregular pair census: k=5 flags exactly p=37 in [7,100]") {
    auto [seq, rec] = bseq_census(5, window(7, 100));
    CHECK(rec.zero_primes == std::vector<u64>{37});
    auto idx = seq.window().index_of(37).value();
    CHECK(seq.at_index(idx).value.is_zero());
    CHECK(rec.subject == "B[p-5]");
}

TEST_CASE("k=3 census: entry values and absence of zeros") {
    auto [seq, rec] = bseq_census(3, window(5, 2000));
    CHECK(rec.zero_primes.empty());
    auto idx = seq.window().index_of(7).value();
    CHECK(seq.at_index(idx).value.residue_mod(1) == 3); // B_4 mod 7
    CHECK(seq.at_index(seq.window().index_of(5).value()).exceptional); // 5 <= k+2
}

TEST_CASE("census input validation") {
    CHECK_THROWS_AS(bseq_census(4, window(7, 50)), usage_error);
    CHECK_THROWS_AS(bseq_census(1, window(7, 50)), usage_error);
}

TEST_CASE("polynomial censuses") {
    auto w = sieve_primes(7, 100);

    CensusRecord constant = poly_census(MultiPoly::parse("1"), w);
    CHECK(constant.zero_primes.empty());

    // f = x1 evaluates B_{p-3}: same zero set as the k=3 census (empty here)
    CensusRecord x1 = poly_census(MultiPoly::parse("x1"), w);
    auto [seq3, rec3] = bseq_census(3, window(7, 100));
    CHECK(x1.zero_primes == rec3.zero_primes);

    // f = x2 evaluates B_{p-5}: catches the irregular pair at 37
    CensusRecord x2 = poly_census(MultiPoly::parse("x2"), w);
    CHECK(x2.zero_primes == std::vector<u64>{37});

    CHECK_THROWS_AS(poly_census(MultiPoly::parse("x1*x2 - x2*x1"), w), usage_error);

    // a monomial's zero set is the union of its factors' zero sets
    CensusRecord prod = poly_census(MultiPoly::parse("x1*x2"), w);
    std::vector<u64> expected = rec3.zero_primes;
    expected.insert(expected.end(), x2.zero_primes.begin(), x2.zero_primes.end());
    std::sort(expected.begin(), expected.end());
    expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
    CHECK(prod.zero_primes == expected);
}

TEST_CASE("denominator primes of census coefficients are exceptional") {
    auto w = sieve_primes(7, 60);
    CensusRecord rec = poly_census(MultiPoly::parse("1/11*x1"), w);
    CHECK(rec.exceptional >= 1); // p = 11 cannot evaluate the coefficient
    CHECK(rec.checked == w.size() - rec.exceptional);
}

TEST_CASE("bernoulli table construction") {
    BernoulliTable t = bernoulli_table(13);
    CHECK(t.residues.at(0) == 1);
    CHECK(t.residues.size() == 6); // m = 0, 2, 4, 6, 8, 10
    for (const auto& [m, r] : t.residues)
        CHECK(r == oracles::mpq_mod_p(oracles::bernoulli_exact(unsigned(m)), 13));
}
