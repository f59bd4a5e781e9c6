#pragma once

#include "seqper/composition.hpp"
#include "seqper/seq.hpp"

namespace seqper {

/*
 * Multiple harmonic sums
 *
 *     H_N(s_1,...,s_k) = sum over N >= n_1 > ... > n_k >= 1 of
 *                        1 / (n_1^{s_1} * ... * n_k^{s_k})
 *
 * computed to fixed p-adic precision, with s_1 attached to the largest
 * index. mhs_direct enumerates every decreasing index tuple (the oracle,
 * O(N^depth)); mhs_fast runs the suffix DP in O(depth * p) per prime with
 * one batched inversion. The two agree exactly wherever both run.
 */

// H_N(s) mod p^prec by brute-force tuple enumeration. Throws
// exceptional_prime if some index in [1, N] is divisible by p.
PadicValue mhs_direct(const Composition& s, u64 N, u64 p, unsigned prec);

// H_{p-1}(s) mod p^prec. Enforces the headroom policy p > |s| + prec.
PadicValue mhs_fast(const Composition& s, u64 p, unsigned prec);

// Windowed H_{p-1}(s); primes failing the headroom policy become
// exceptional markers.
SeqElement mhs_window(const Composition& s, std::shared_ptr<const PrimeWindow> window,
                      unsigned prec, const ExecPolicy& policy = {});

// zeta_A(s): the mod-p sequence (H_{p-1}(s) mod p)_p; primes <= |s| + 1
// are exceptional.
SeqElement finite_mzv(const Composition& s, std::shared_ptr<const PrimeWindow> window,
                      const ExecPolicy& policy = {});

// zeta_A(s) = (-1)^{|s|} zeta_A(reverse s), checked mod p over the window.
CongruenceReport reversal_check(const Composition& s, std::shared_ptr<const PrimeWindow> window,
                                u64 cutoff, const ExecPolicy& policy = {});

namespace detail {
// DP kernel without the headroom policy; requires p > 2 and prec >= 1 and
// inverts only units (indices 1..p-1).
u128 mhs_core(const Composition& s, u64 p, unsigned prec);
// Inverses of 1..p-1 mod p^prec via one prefix-product inversion; memoized
// process-wide keyed by (p, prec).
std::shared_ptr<const std::vector<u128>> inverse_table(u64 p, unsigned prec);
} // namespace detail

} // namespace seqper
