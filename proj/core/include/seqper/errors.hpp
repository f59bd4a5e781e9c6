#pragma once

#include <stdexcept>
#include <string>

namespace seqper {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input, bad parameters, mismatched windows. CLI exit code 2.
struct usage_error : error {
    using error::error;
};

// A verdict was requested beyond the precision actually carried by the
// operands. Congruence tests raise this instead of reporting "holds".
struct precision_error : error {
    using error::error;
};

// Scalar operations raise this when the prime cannot support the requested
// computation (p divides a denominator, p too small, bad reduction).
// Windowed operations catch it and store an exceptional-prime marker.
struct exceptional_prime : error {
    explicit exceptional_prime(std::string why)
        : error("exceptional prime: " + why), reason(std::move(why)) {}
    std::string reason;
};

// Element has negative valuation at some prime, so no image mod p exists.
struct not_in_fil0 : error {
    using error::error;
};

// (p-1) | m: von Staudt-Clausen pole, p divides the denominator of B_m.
struct bernoulli_pole : error {
    using error::error;
};

} // namespace seqper
