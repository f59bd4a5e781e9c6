#pragma once

#include <span>

#include "seqper/composition.hpp"
#include "seqper/seq.hpp"

namespace seqper {

/*
 * Empirical Q-linear relation discovery among mod-p sequences.
 *
 * Method: take the residue row of the input sequences at a reconstruction
 * prime P (the largest non-exceptional window prime with a nonzero row),
 * compute the reduced-echelon basis of its nullspace over F_P, rationally
 * reconstruct each basis coordinate under the height bound, and keep only
 * candidates that verify sum_j c_j a_{j,p} = 0 mod p at every
 * non-exceptional window prime >= cutoff. Failures are conservative:
 * relations can be missed, never fabricated.
 */
struct RelationCandidate {
    std::vector<std::string> labels;
    std::vector<i64> coeff_num; // gcd 1, first nonzero entry positive
    i64 coeff_den = 1;          // > 0
    u64 reconstruction_prime = 0;
    bool unique_reconstruction = true; // every coordinate had 2|n|d < P
    CongruenceReport verification;
};

struct FindRelationsResult {
    std::vector<RelationCandidate> relations;
    u64 reconstruction_prime = 0;
    std::size_t usable_rows = 0;
    bool well_posed = true; // usable rows >= sequences + 10
    std::vector<std::string> dropped; // reconstruction-failure diagnostics
};

FindRelationsResult find_relations(std::span<const SeqElement> seqs, u64 height_bound, u64 cutoff);

// Exact check of sum_j (num_j / den) a_{j,p} = 0 mod p^n over the window.
CongruenceReport verify_relation(std::span<const SeqElement> seqs, std::span<const i64> nums,
                                 i64 den, unsigned n, u64 cutoff);
CongruenceReport verify_relation(const RelationCandidate& cand, std::span<const SeqElement> seqs,
                                 unsigned n, u64 cutoff);

// Rational reconstruction of x mod P: all coprime pairs (num, den) with
// den in [1, height], |num| <= height, num = den * x mod P. The classical
// 2|num|den < P bound marks the unique-window candidates.
struct ReconstructedRational {
    i64 num = 0;
    i64 den = 1;
    bool unique = false;
};
std::vector<ReconstructedRational> reconstruct_rational(u64 x, u64 P, u64 height);

struct RankTable {
    unsigned weight = 0;
    std::vector<Composition> compositions;
    unsigned rank = 0; // max over sample primes
    std::vector<std::pair<u64, unsigned>> per_prime_rank;
    std::vector<std::string> relation_labels; // verified relations found
    bool stable = true; // identical rank over two disjoint half-samples
    std::string note;
};

// Empirical rank of {zeta_A(s) : |s| = w} over the window; the rank numbers
// are measurements, the conjectural reading lives in `note` only.
RankTable rank_by_weight(unsigned w, std::shared_ptr<const PrimeWindow> window, u64 cutoff,
                         const ExecPolicy& policy = {});

// Shared helper: empirical rank of an arbitrary family (sequences count
// minus independent verified relations, maximized over sample primes).
unsigned empirical_rank(std::span<const SeqElement> seqs, std::span<const u64> sample_primes,
                        u64 height_bound, u64 cutoff,
                        std::vector<std::pair<u64, unsigned>>* per_prime = nullptr,
                        std::vector<RelationCandidate>* relations = nullptr);

} // namespace seqper
