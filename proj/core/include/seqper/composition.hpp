#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "seqper/arith.hpp"

namespace seqper {

// Finite ordered list of positive integers; the empty composition is the
// multiplicative unit for the quasi-shuffle product.
struct Composition {
    std::vector<unsigned> parts;

    Composition() = default;
    explicit Composition(std::vector<unsigned> p);

    unsigned weight() const;
    unsigned depth() const { return unsigned(parts.size()); }
    bool empty() const { return parts.empty(); }
    Composition reversed() const;

    std::string to_string() const;        // "1,2" ("" for empty)
    static Composition parse(const std::string& s);

    auto operator<=>(const Composition&) const = default;
};

// Integer-linear combination of compositions, finitely supported.
using CompositionSum = std::map<Composition, i64>;

// Quasi-shuffle expansion: H_N(s) * H_N(t) = sum of coeff * H_N(u) exactly,
// for every truncation length N, by partitioning index interleavings.
CompositionSum stuffle_expand(const Composition& s, const Composition& t);

// All 2^(w-1) compositions of weight w, lexicographically ordered.
std::vector<Composition> compositions_of_weight(unsigned w);

} // namespace seqper
