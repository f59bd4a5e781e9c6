#pragma once

#include <optional>
#include <string>

#include "seqper/arith.hpp"

namespace seqper {

// Identifies one computation. Equal keys mean identical requests; the
// canonical encoding is order-stable so hashing is reproducible.
struct CacheKey {
    std::string kind;   // mhs | bernoulli | zeta_table | tau | ap | custom
    std::string params; // canonical parameter encoding, e.g. "s=1,2;prec=4"
    u64 window_lo = 0;
    u64 window_hi = 0;
    unsigned precision = 0;

    std::string canonical() const;
};

/*
 * Content-addressed on-disk store. Entries embed their own key and a schema
 * version; a mismatch, tamper, or parse failure reads as a miss (the caller
 * recomputes). Writes go through a temp file and an atomic rename. An
 * unusable directory disables the cache with a warning instead of failing
 * the computation.
 */
class DiskCache {
public:
    DiskCache() = default; // disabled
    explicit DiskCache(std::string directory);

    bool enabled() const { return enabled_; }
    const std::string& directory() const { return dir_; }

    std::optional<std::string> load(const CacheKey& key) const;
    void store(const CacheKey& key, const std::string& payload) const;

    static constexpr const char* schema_version = "1";

private:
    std::string dir_;
    bool enabled_ = false;
};

u64 fnv1a64(const std::string& data);

} // namespace seqper
