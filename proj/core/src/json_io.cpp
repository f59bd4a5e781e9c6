#include "seqper/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace seqper {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json value_to_json(const PadicValue& v) {
    ordered_json j;
    j["shift"] = v.shift();
    j["mantissa"] = to_string_u128(v.mantissa());
    j["rel_prec"] = v.rel_prec();
    return j;
}

PadicValue value_from_json(u64 p, const ordered_json& j) {
    return PadicValue::from_parts(p, j.at("shift").get<int>(),
                                  parse_u128(j.at("mantissa").get<std::string>()),
                                  j.at("rel_prec").get<unsigned>());
}

ordered_json window_to_json(const PrimeWindow& w) {
    ordered_json j;
    j["lo"] = w.lo;
    j["hi"] = w.hi;
    return j;
}

std::shared_ptr<const PrimeWindow> window_from_json(const ordered_json& j) {
    return std::make_shared<const PrimeWindow>(
        sieve_primes(j.at("lo").get<u64>(), j.at("hi").get<u64>()));
}

ordered_json parse_text(const std::string& text) {
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded()) throw usage_error("malformed JSON input");
    return j;
}

} // namespace

std::string seq_to_json(const SeqElement& s) {
    ordered_json j;
    j["label"] = s.label();
    j["provenance"] = s.provenance();
    j["window"] = window_to_json(s.window());
    unsigned default_prec = 0;
    for (const auto& e : s.entries())
        if (!e.exceptional) default_prec = std::max(default_prec, e.value.rel_prec());
    j["default_precision"] = default_prec;
    ordered_json entries = ordered_json::array();
    const auto& primes = s.window().primes;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const auto& e = s.at_index(i);
        ordered_json row;
        row["p"] = primes[i];
        if (e.exceptional) {
            row["exceptional"] = e.reason;
        } else {
            row["shift"] = e.value.shift();
            row["mantissa"] = to_string_u128(e.value.mantissa());
            row["rel_prec"] = e.value.rel_prec();
        }
        entries.push_back(std::move(row));
    }
    j["entries"] = std::move(entries);
    return j.dump(2) + "\n";
}

SeqElement seq_from_json(const std::string& text) {
    ordered_json j = parse_text(text);
    auto window = window_from_json(j.at("window"));
    std::vector<SeqElement::Entry> entries(window->size());
    std::vector<bool> seen(window->size(), false);
    for (const auto& row : j.at("entries")) {
        u64 p = row.at("p").get<u64>();
        auto idx = window->index_of(p);
        if (!idx) throw usage_error("sequence entry at p=" + std::to_string(p) + " outside window");
        if (seen[*idx]) throw usage_error("duplicate sequence entry at p=" + std::to_string(p));
        seen[*idx] = true;
        if (row.contains("exceptional"))
            entries[*idx] = SeqElement::Entry::exceptional_mark(row.at("exceptional").get<std::string>());
        else
            entries[*idx] = SeqElement::Entry::of(value_from_json(p, row));
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i])
            throw usage_error("sequence missing entry at p=" + std::to_string(window->primes[i]));
    return SeqElement(std::move(window), std::move(entries), j.at("label").get<std::string>(),
                      j.at("provenance").get<std::string>());
}

std::string matrix_to_json(const FrobeniusMatrixSeq& m) {
    ordered_json j;
    j["label"] = m.label();
    j["dim"] = m.dim();
    j["hodge_levels"] = m.hodge_levels();
    j["window"] = window_to_json(m.window());
    ordered_json rows = ordered_json::array();
    const auto& primes = m.window().primes;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const auto& e = m.entries()[i];
        ordered_json row;
        row["p"] = primes[i];
        if (e.exceptional) {
            row["exceptional"] = e.reason;
        } else {
            ordered_json cells = ordered_json::array();
            for (const auto& v : e.mat) cells.push_back(value_to_json(v));
            row["entries"] = std::move(cells);
        }
        rows.push_back(std::move(row));
    }
    j["primes"] = std::move(rows);
    return j.dump(2) + "\n";
}

FrobeniusMatrixSeq matrix_from_json(const std::string& text) {
    ordered_json j = parse_text(text);
    auto window = window_from_json(j.at("window"));
    unsigned dim = j.at("dim").get<unsigned>();
    std::vector<int> hodge = j.at("hodge_levels").get<std::vector<int>>();
    std::vector<FrobeniusMatrixSeq::Entry> entries(window->size());
    for (const auto& row : j.at("primes")) {
        u64 p = row.at("p").get<u64>();
        auto idx = window->index_of(p);
        if (!idx) throw usage_error("matrix entry at p=" + std::to_string(p) + " outside window");
        auto& e = entries[*idx];
        if (row.contains("exceptional")) {
            e = {true, {}, row.at("exceptional").get<std::string>()};
        } else {
            e.exceptional = false;
            for (const auto& cell : row.at("entries")) e.mat.push_back(value_from_json(p, cell));
        }
    }
    return FrobeniusMatrixSeq(dim, std::move(hodge), std::move(window), std::move(entries),
                              j.at("label").get<std::string>());
}

std::string zeta_table_to_json(const PadicZetaTable& t) {
    ordered_json j;
    j["p"] = t.p;
    j["M"] = t.M;
    ordered_json entries = ordered_json::array();
    for (unsigned w = 2; w < t.M; ++w) {
        const PadicValue& z = t.zeta(w);
        ordered_json row;
        row["w"] = w;
        row["shift"] = z.shift();
        row["mantissa"] = to_string_u128(z.mantissa());
        entries.push_back(std::move(row));
    }
    j["entries"] = std::move(entries);
    return j.dump(2) + "\n";
}

PadicZetaTable zeta_table_from_json(const std::string& text) {
    ordered_json j = parse_text(text);
    PadicZetaTable t;
    t.p = j.at("p").get<u64>();
    t.M = j.at("M").get<unsigned>();
    t.entries.assign(t.M, PadicValue::zero(t.p, int(t.M)));
    for (const auto& row : j.at("entries")) {
        unsigned w = row.at("w").get<unsigned>();
        if (w < 2 || w >= t.M) throw usage_error("zeta table weight out of range");
        int shift = row.at("shift").get<int>();
        u128 mantissa = parse_u128(row.at("mantissa").get<std::string>());
        // rel_prec is implied: entries are stored mod p^M
        if (mantissa == 0 || shift >= int(t.M))
            t.entries[w] = PadicValue::zero(t.p, int(t.M));
        else
            t.entries[w] = PadicValue::from_parts(t.p, shift, mantissa, unsigned(int(t.M) - shift));
    }
    return t;
}

std::string relation_to_json(const RelationCandidate& r) {
    ordered_json j;
    j["labels"] = r.labels;
    j["coeff_numerators"] = r.coeff_num;
    j["coeff_denominator"] = r.coeff_den;
    j["reconstruction_prime"] = r.reconstruction_prime;
    j["unique_reconstruction"] = r.unique_reconstruction;
    ordered_json v;
    v["lo"] = r.verification.cutoff;
    v["checked"] = r.verification.checked;
    v["holds"] = r.verification.holds;
    j["verified_window"] = std::move(v);
    ordered_json violations = ordered_json::array();
    for (const auto& viol : r.verification.violations) {
        ordered_json row;
        row["p"] = viol.p;
        row["detail"] = viol.detail;
        violations.push_back(std::move(row));
    }
    j["violations"] = std::move(violations);
    return j.dump(2) + "\n";
}

RelationCandidate relation_from_json(const std::string& text) {
    ordered_json j = parse_text(text);
    RelationCandidate r;
    r.labels = j.at("labels").get<std::vector<std::string>>();
    r.coeff_num = j.at("coeff_numerators").get<std::vector<i64>>();
    r.coeff_den = j.at("coeff_denominator").get<i64>();
    if (j.contains("reconstruction_prime")) r.reconstruction_prime = j["reconstruction_prime"].get<u64>();
    if (j.contains("unique_reconstruction")) r.unique_reconstruction = j["unique_reconstruction"].get<bool>();
    if (r.labels.size() != r.coeff_num.size())
        throw usage_error("relation file: label/coefficient count mismatch");
    if (r.coeff_den == 0) throw usage_error("relation file: zero denominator");
    return r;
}

AhatSeries ahat_series_from_json(const std::string& text) {
    ordered_json j = parse_text(text);
    AhatSeries s;
    const ordered_json& terms = j.contains("terms") ? j.at("terms") : j;
    for (const auto& t : terms) {
        AhatTerm term;
        term.coeff = Rational(t.at("coeff_num").get<i64>(), t.at("coeff_den").get<i64>());
        term.b = t.at("b").get<int>();
        std::vector<unsigned> parts = t.at("composition").get<std::vector<unsigned>>();
        term.s = Composition{std::move(parts)};
        s.terms.push_back(std::move(term));
    }
    s.validate();
    return s;
}

std::string census_to_json(const CensusRecord& c) {
    ordered_json j;
    j["subject"] = c.subject;
    ordered_json w;
    w["lo"] = c.window_lo;
    w["hi"] = c.window_hi;
    j["window"] = std::move(w);
    j["zero_primes"] = c.zero_primes;
    j["zero_count"] = c.zero_primes.size();
    j["checked"] = c.checked;
    j["exceptional"] = c.exceptional;
    if (c.checked > 0) {
        std::ostringstream density;
        density.precision(6);
        density << std::fixed
                << double(c.checked - c.zero_primes.size()) / double(c.checked);
        j["nonzero_density"] = density.str();
    }
    return j.dump(2) + "\n";
}

std::string census_to_csv(const SeqElement& seq, const CensusRecord&) {
    std::string out = "p,value,flag\n";
    const auto& primes = seq.window().primes;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const auto& e = seq.at_index(i);
        out += std::to_string(primes[i]) + ",";
        if (e.exceptional)
            out += ",EXCEPTIONAL";
        else if (e.value.is_zero())
            out += "0,ZERO";
        else
            out += to_string_u128(e.value.residue_mod(1)) + ",";
        out += "\n";
    }
    return out;
}

std::string congruence_report_to_json(const CongruenceReport& r) {
    ordered_json j;
    j["subject"] = r.subject;
    if (r.modulus_exponent >= 0) j["modulus_exponent"] = r.modulus_exponent;
    else j["modulus_exponent"] = "available-precision";
    j["cutoff"] = r.cutoff;
    j["verdict"] = r.holds ? "holds-on-window" : "fails";
    j["checked"] = r.checked;
    j["skipped_exceptional"] = r.skipped_exceptional;
    ordered_json violations = ordered_json::array();
    for (const auto& v : r.violations) {
        ordered_json row;
        row["p"] = v.p;
        row["detail"] = v.detail;
        violations.push_back(std::move(row));
    }
    j["violations"] = std::move(violations);
    return j.dump(2) + "\n";
}

std::string valuation_profile_to_json(const SeqElement& s) {
    ValuationProfile prof = valuation_profile(s);
    ordered_json j;
    j["label"] = s.label();
    ordered_json entries = ordered_json::array();
    for (const auto& e : prof.entries) {
        ordered_json row;
        row["p"] = e.p;
        if (e.exceptional) {
            row["exceptional"] = e.reason;
        } else {
            row["valuation"] = e.value;
            row["exact"] = e.exact;
        }
        entries.push_back(std::move(row));
    }
    j["entries"] = std::move(entries);
    return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw usage_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw usage_error("cannot write " + path);
    out << content;
    if (!out) throw usage_error("short write to " + path);
}

} // namespace seqper
