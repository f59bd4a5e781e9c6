#pragma once

#include "seqper/polynomial.hpp"
#include "seqper/seq.hpp"

namespace seqper {

/*
 * Bernoulli residues B_m mod p via the power-sum congruence
 *
 *     S_m(p) = sum_{a=1}^{p-1} a^m  =  p * B_m  (mod p^2),   0 <= m <= p-3,
 *
 * each sum taken mod p^2 so a single division by p leaves the residue.
 * (p-1) | m is the von Staudt-Clausen pole and is rejected.
 */

// B_m mod p for even m with 0 <= m <= p-3; bernoulli_pole on (p-1) | m.
u64 bernoulli_mod_p(u64 m, u64 p);

// Arbitrary even m >= 0: reduces the index with the Kummer congruence
// B_m/m = B_{m'}/m' mod p where m' = m mod (p-1).
u64 bernoulli_mod_p_any(u64 m, u64 p);

struct BernoulliTable {
    u64 p = 0;
    std::map<u64, u64> residues; // even m -> B_m mod p
};

// Residues for every even 0 <= m <= p-3 of one prime.
BernoulliTable bernoulli_table(u64 p);

struct CensusRecord {
    std::string subject;  // "B[p-k]" or the census polynomial
    u64 window_lo = 0, window_hi = 0;
    std::vector<u64> zero_primes; // primes where the value vanished mod p
    std::size_t checked = 0;
    std::size_t exceptional = 0;
};

// The sequence (B_{p-k} mod p)_p for odd k >= 3, with a zero census.
// Primes p <= k + 2 are exceptional.
std::pair<SeqElement, CensusRecord> bseq_census(u64 k, std::shared_ptr<const PrimeWindow> window,
                                                const ExecPolicy& policy = {});

// Census of f(B_{p-3}, B_{p-5}, ..., B_{p-2n-1}) mod p for nonzero
// f in Q[x1..xn]; primes p <= 2n + 3 or dividing a coefficient denominator
// are exceptional.
CensusRecord poly_census(const MultiPoly& f, const PrimeWindow& window,
                         const ExecPolicy& policy = {});

} // namespace seqper
