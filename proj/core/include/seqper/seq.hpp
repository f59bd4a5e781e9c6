#pragma once

#include <memory>
#include <string>
#include <vector>

#include "seqper/padic.hpp"
#include "seqper/parallel.hpp"
#include "seqper/primes.hpp"
#include "seqper/rational.hpp"

namespace seqper {

/*
 * Prime-window truncation of a prime-indexed sequence of p-adic numbers.
 * Every window prime carries exactly one entry: a PadicValue, or an
 * exceptional-prime marker (bad reduction, p dividing a denominator, p too
 * small). Exceptional primes are data, not errors: verdicts quotient them
 * away the same way the ambient ring quotients away finitely many primes.
 */
class SeqElement {
public:
    struct Entry {
        bool exceptional = false;
        PadicValue value;
        std::string reason;

        static Entry of(PadicValue v) { return Entry{false, std::move(v), {}}; }
        static Entry exceptional_mark(std::string why) { return Entry{true, {}, std::move(why)}; }
    };

    SeqElement() = default;
    SeqElement(std::shared_ptr<const PrimeWindow> window, std::vector<Entry> entries,
               std::string label, std::string provenance);

    static SeqElement constant(const Rational& value, std::shared_ptr<const PrimeWindow> window,
                               unsigned rel_prec);

    // Builds one entry per prime; `make` may throw exceptional_prime to mark.
    template <typename Fn>
    static SeqElement build(std::shared_ptr<const PrimeWindow> window, std::string label,
                            std::string provenance, const ExecPolicy& policy, Fn&& make) {
        std::vector<Entry> entries(window->size());
        const auto& primes = window->primes;
        parallel_for(primes.size(), policy, [&](std::size_t i) {
            try {
                entries[i] = Entry::of(make(primes[i]));
            } catch (const exceptional_prime& e) {
                entries[i] = Entry::exceptional_mark(e.reason);
            }
        });
        return SeqElement(std::move(window), std::move(entries), std::move(label),
                          std::move(provenance));
    }

    const PrimeWindow& window() const { return *window_; }
    std::shared_ptr<const PrimeWindow> window_ptr() const { return window_; }
    const std::vector<Entry>& entries() const { return entries_; }
    const Entry& at_index(std::size_t i) const { return entries_[i]; }
    const std::string& label() const { return label_; }
    const std::string& provenance() const { return provenance_; }
    SeqElement relabeled(std::string label, std::string provenance) const;

    std::size_t exceptional_count() const;

private:
    std::shared_ptr<const PrimeWindow> window_;
    std::vector<Entry> entries_;
    std::string label_;
    std::string provenance_;
};

struct ValuationEntry {
    u64 p = 0;
    int value = 0;    // exact valuation, or lower bound when !exact
    bool exact = true;
    bool exceptional = false;
    std::string reason;
};

struct ValuationProfile {
    std::vector<ValuationEntry> entries;
};

struct Violation {
    u64 p = 0;
    std::string detail;
};

struct CongruenceReport {
    int modulus_exponent = -1; // -1: compared at full shared precision
    u64 cutoff = 0;
    bool holds = false;
    std::vector<Violation> violations;
    std::size_t checked = 0;
    std::size_t skipped_exceptional = 0;
    std::string subject;
};

// Empirical filtration level: min valuation over non-exceptional p >= cutoff.
struct FilLevel {
    int level = 0;
    u64 witness_prime = 0;
    bool witness_exact = true; // false: every entry was a lower bound only
};

SeqElement seq_add(const SeqElement& a, const SeqElement& b);
SeqElement seq_mul(const SeqElement& a, const SeqElement& b);
SeqElement seq_scale(const SeqElement& a, const Rational& scalar);
SeqElement seq_shift_p_power(const SeqElement& a, int k);

ValuationProfile valuation_profile(const SeqElement& a);
FilLevel empirical_fil_level(const SeqElement& a, u64 cutoff);

CongruenceReport eq_in_R(const SeqElement& a, const SeqElement& b, u64 cutoff);
CongruenceReport congruent_mod_pn(const SeqElement& a, const SeqElement& b, unsigned n, u64 cutoff);

// Reduction mod p (shift 0, precision 1). not_in_fil0 when some entry has
// negative valuation; precision_error when an entry cannot resolve mod p.
SeqElement project_to_A(const SeqElement& a);

} // namespace seqper
