#pragma once

#include <optional>
#include <vector>

#include "seqper/arith.hpp"

namespace seqper {

// A contiguous prime window [lo, hi]. `primes` is exactly the sieve output.
struct PrimeWindow {
    u64 lo = 0;
    u64 hi = 0;
    std::vector<u64> primes;

    std::size_t size() const { return primes.size(); }
    bool empty() const { return primes.empty(); }
    bool same_range(const PrimeWindow& o) const { return lo == o.lo && hi == o.hi; }
    std::optional<std::size_t> index_of(u64 p) const;
};

// All primes in [lo, hi], 2 <= lo <= hi <= 10^8. With strict_nonempty set,
// a window containing no primes is an error instead of an empty result.
PrimeWindow sieve_primes(u64 lo, u64 hi, bool strict_nonempty = false);

} // namespace seqper
