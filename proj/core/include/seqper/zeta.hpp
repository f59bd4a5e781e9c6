#pragma once

#include "seqper/composition.hpp"
#include "seqper/mhs.hpp"
#include "seqper/seq.hpp"

namespace seqper {

/*
 * Depth-1 p-adic zeta values mod p^M. Even weights vanish (the weight-2
 * value is zero in this normalization and even weights are rational
 * multiples of its powers). Odd weights come from back-substituting the
 * depth-1 series expansion of harmonic numbers,
 *
 *   p^s H_{p-1}(s) = zeta(s) + (-1)^s sum_{l>=0} C(s+l-1, l) zeta(s+l),
 *
 * at odd s = w-2, descending: only odd weights survive on the right, the
 * system is triangular with leading coefficient -C(w-1, 2), and weights
 * >= M drop because zeta(w) lies in p^w Z_p for p > w. That bound is why
 * the table demands p > M. Every entry satisfies v_p(zeta(w)) >= w.
 */
struct PadicZetaTable {
    u64 p = 0;
    unsigned M = 0;
    std::vector<PadicValue> entries; // index w in [2, M-1] -> zeta_p(w)

    // zeta_p(w) at absolute precision M; w = 1 and w >= M give zero
    // (weight-1 is killed by regularization, tails by the valuation bound).
    PadicValue zeta(unsigned w) const;
};

PadicZetaTable zeta_table(u64 p, unsigned M);

struct CheckResult {
    bool holds = false;
    std::string subject;
    std::string detail; // filled on failure
};

// Forward check of the full identity
//   p^s sum_{n<=pr, p !| n} n^-s = sum_k (-1)^k C(r+k,k+1) r^(k+1) zeta_p(s+k+1)
// with an independently summed left side, exact mod p^M.
CheckResult washington_check(unsigned r, unsigned s, u64 p, unsigned M);
CheckResult washington_check(unsigned r, unsigned s, const PadicZetaTable& table);

// Depth-1 series expansion of H in zeta values:
//   p^s H_{p-1}(s) = zeta_p(s) + (-1)^s sum_{l>=0} C(s+l-1, l) zeta_p(s+l),
// exact mod p^M. For odd s the weight-s terms cancel, making this an
// independent consistency identity rather than a tautology.
CheckResult jarossay_depth1_check(unsigned s, u64 p, unsigned M);
CheckResult jarossay_depth1_check(unsigned s, const PadicZetaTable& table);

// The mod-p image of the weight-graded symmetrized element attached to s;
// entrywise it is zeta_A(s).
SeqElement sym_image(const Composition& s, std::shared_ptr<const PrimeWindow> window,
                     const ExecPolicy& policy = {});
CongruenceReport sym_reversal_check(const Composition& s, std::shared_ptr<const PrimeWindow> window,
                                    u64 cutoff, const ExecPolicy& policy = {});

// One term of a valuation-filtered series: coeff * p^b * H_{p-1}(s).
struct AhatTerm {
    Rational coeff;
    int b = 0;
    Composition s;
};

// A truncatable series: stored b's must be nondecreasing (the finite
// truncation of a sequence with b_n -> infinity).
struct AhatSeries {
    std::vector<AhatTerm> terms;
    void validate() const;
};

// Truncated evaluation mod p^M per prime: terms with b >= M are dropped
// (the harmonic factor is p-integral, so they cannot reach below p^M).
SeqElement eval_ahat_series(const AhatSeries& series, std::shared_ptr<const PrimeWindow> window,
                            unsigned M, const ExecPolicy& policy = {});

} // namespace seqper
