#include "seqper/primes.hpp"

#include <algorithm>

namespace seqper {

std::optional<std::size_t> PrimeWindow::index_of(u64 p) const {
    auto it = std::lower_bound(primes.begin(), primes.end(), p);
    if (it == primes.end() || *it != p) return std::nullopt;
    return std::size_t(it - primes.begin());
}

PrimeWindow sieve_primes(u64 lo, u64 hi, bool strict_nonempty) {
    if (lo < 2 || lo > hi || hi > 100'000'000ull)
        throw usage_error("sieve_primes: need 2 <= lo <= hi <= 10^8, got [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
    PrimeWindow w;
    w.lo = lo;
    w.hi = hi;
    std::vector<bool> composite(hi + 1, false);
    for (u64 i = 2; i * i <= hi; ++i) {
        if (composite[i]) continue;
        for (u64 j = i * i; j <= hi; j += i) composite[j] = true;
    }
    for (u64 n = lo; n <= hi; ++n)
        if (!composite[n]) w.primes.push_back(n);
    if (strict_nonempty && w.primes.empty())
        throw usage_error("sieve_primes: no primes in [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
    return w;
}

} // namespace seqper
