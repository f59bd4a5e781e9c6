#pragma once

#include "seqper/rational.hpp"
#include "seqper/seq.hpp"

namespace seqper {

/*
 * Per-prime square matrices with a Hodge level attached to each basis
 * column. The divisibility law these model: entries of a column at Hodge
 * level n lie in p^n Z_p at every good prime, so a Tate twist by n rescales
 * entries by p^-n and shifts every level by -n.
 */
class FrobeniusMatrixSeq {
public:
    struct Entry {
        bool exceptional = false;
        std::vector<PadicValue> mat; // row-major dim x dim
        std::string reason;
    };

    FrobeniusMatrixSeq() = default;
    FrobeniusMatrixSeq(unsigned dim, std::vector<int> hodge_levels,
                       std::shared_ptr<const PrimeWindow> window, std::vector<Entry> entries,
                       std::string label);

    unsigned dim() const { return dim_; }
    const std::vector<int>& hodge_levels() const { return hodge_; }
    const PrimeWindow& window() const { return *window_; }
    std::shared_ptr<const PrimeWindow> window_ptr() const { return window_; }
    const std::vector<Entry>& entries() const { return entries_; }
    const std::string& label() const { return label_; }

    FrobeniusMatrixSeq with_hodge_levels(std::vector<int> levels) const; // test control knob

    // Determinant sequence (Laplace expansion; dimensions here are tiny).
    SeqElement det() const;

private:
    unsigned dim_ = 0;
    std::vector<int> hodge_;
    std::shared_ptr<const PrimeWindow> window_;
    std::vector<Entry> entries_;
    std::string label_;
};

// Rank-2 matrix [[1, log_p(r^(p-1))], [0, p]] with Hodge levels (0, 1);
// primes dividing r (and p = 2) are exceptional. r must not be 0 or +-1.
FrobeniusMatrixSeq kummer_frobenius(const Rational& r, std::shared_ptr<const PrimeWindow> window,
                                    unsigned rel_prec, const ExecPolicy& policy = {});

// 1x1 matrix (p) at Hodge level 1: the top cohomology of the line.
FrobeniusMatrixSeq projective_line_h2(std::shared_ptr<const PrimeWindow> window, unsigned rel_prec);

FrobeniusMatrixSeq tensor_product(const FrobeniusMatrixSeq& a, const FrobeniusMatrixSeq& b);
FrobeniusMatrixSeq tate_twist(const FrobeniusMatrixSeq& a, int n);

// Small exact rational matrix for intertwining checks.
struct RatMatrix {
    unsigned rows = 0, cols = 0;
    std::vector<Rational> data; // row-major
    const Rational& at(unsigned r, unsigned c) const { return data[r * cols + c]; }
    // "1,0;0,1" rows separated by ';'
    static RatMatrix parse(const std::string& s);
};

// Does A intertwine: A * F_p = G_p * A at every usable prime, at shared
// available precision.
CongruenceReport hom_check(const RatMatrix& A, const FrobeniusMatrixSeq& F,
                           const FrobeniusMatrixSeq& G, u64 cutoff);

struct HodgeCheckResult {
    bool holds = false;
    std::vector<Violation> violations;
    std::size_t checked = 0;
    std::size_t skipped_exceptional = 0;
    std::string subject;
};

// Every entry of a level-n column has valuation >= n, for all
// non-exceptional p >= cutoff.
HodgeCheckResult hodge_divisibility_check(const FrobeniusMatrixSeq& F, u64 cutoff);

// Primes p in the window with r^(p-1) = 1 mod p^2 (p not dividing r).
std::vector<u64> wieferich_search(const Rational& r, const PrimeWindow& window,
                                  const ExecPolicy& policy = {});

struct EllipticResult {
    SeqElement ap;               // trace sequence
    FrobeniusMatrixSeq frobenius; // [[a_p, -p], [1, 0]], Hodge levels (0, 1)
    bool hasse_ok = true;
    struct CharPoly {
        u64 p;
        i64 trace; // T^2 - trace*T + p
    };
    std::vector<CharPoly> char_polys; // good primes only, ascending
};

// y^2 = x^3 + a4 x + a6 over the window: a_p = p + 1 - #E(F_p) by a
// quadratic-character point count; bad-reduction primes (and p = 2, 3)
// are exceptional. Violating the Hasse bound is a hard error.
EllipticResult elliptic_ap(i64 a4, i64 a6, std::shared_ptr<const PrimeWindow> window,
                           unsigned rel_prec, const ExecPolicy& policy = {});

// Ramanujan tau at window primes from the exact q-expansion of
// q * prod (1-q^n)^24, sparse pentagonal-number products, cached.
SeqElement tau_window(std::shared_ptr<const PrimeWindow> window, unsigned rel_prec);

// tau(1..n) as exact integers.
std::shared_ptr<const std::vector<i128>> delta_q_expansion(std::size_t n);

// (1 + p + ... + p^n)_p, the point count of n-space's projective closure.
SeqElement projective_counts(unsigned n, std::shared_ptr<const PrimeWindow> window,
                             unsigned rel_prec);

} // namespace seqper
