#include "seqper/config.hpp"

namespace seqper {

void RunConfig::validate() const {
    if (window_lo < 2 || window_lo > window_hi || window_hi > 100'000'000ull)
        throw usage_error("window must satisfy 2 <= lo <= hi <= 10^8");
    if (precision == 0 || precision > 16) throw usage_error("precision must be in [1, 16]");
    if (jobs == 0 || jobs > 256) throw usage_error("jobs must be in [1, 256]");
}

std::string RunConfig::describe() const {
    std::string fmt = format == OutputFormat::json ? "json"
                       : format == OutputFormat::csv ? "csv"
                                                     : "text";
    // Exactly the parameters that determine the result. Worker count and
    // cache location only affect scheduling and speed, and reports must be
    // byte-identical across parallelism degrees.
    return "window=" + std::to_string(window_lo) + ":" + std::to_string(window_hi) +
           " precision=" + std::to_string(precision) + " cutoff=" + std::to_string(cutoff) +
           " format=" + fmt;
}

OutputFormat parse_format(const std::string& s) {
    if (s == "json") return OutputFormat::json;
    if (s == "csv") return OutputFormat::csv;
    if (s == "text") return OutputFormat::text;
    throw usage_error("unknown output format \"" + s + "\" (expected json, csv, or text)");
}

} // namespace seqper
