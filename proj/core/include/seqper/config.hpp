#pragma once

#include <string>

#include "seqper/arith.hpp"

namespace seqper {

enum class OutputFormat { json, csv, text };

// Validated run parameters; every report embeds these for reproducibility.
struct RunConfig {
    u64 window_lo = 5;
    u64 window_hi = 2000;
    unsigned precision = 4;
    u64 cutoff = 50;
    OutputFormat format = OutputFormat::json;
    std::string cache_dir; // empty: caching off
    unsigned jobs = 1;

    void validate() const;
    std::string describe() const; // one-line reproducibility header
};

OutputFormat parse_format(const std::string& s);

} // namespace seqper
