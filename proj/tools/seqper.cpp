// seqper: prime-window computations with p-adic sequences. Subcommands map
// one-to-one onto the library surface; every report embeds the run
// configuration so outputs are reproducible byte-for-byte.

#include <cstdlib>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "seqper/bernoulli.hpp"
#include "seqper/cache.hpp"
#include "seqper/config.hpp"
#include "seqper/frobenius.hpp"
#include "seqper/json_io.hpp"
#include "seqper/mhs.hpp"
#include "seqper/relations.hpp"
#include "seqper/zeta.hpp"

using namespace seqper;
using ordered_json = nlohmann::ordered_json;

namespace {

struct Options {
    RunConfig cfg;
    std::string window_text = "5:2000";
    std::string format_text = "json";
    std::string cache_flag;
};

void finalize_config(Options& opt) {
    auto colon = opt.window_text.find(':');
    if (colon == std::string::npos)
        throw usage_error("window must be lo:hi, e.g. 5:2000");
    opt.cfg.window_lo = std::stoull(opt.window_text.substr(0, colon));
    opt.cfg.window_hi = std::stoull(opt.window_text.substr(colon + 1));
    opt.cfg.format = parse_format(opt.format_text);
    // flag wins over environment, environment wins over the (empty) default
    if (!opt.cache_flag.empty()) {
        opt.cfg.cache_dir = opt.cache_flag;
    } else if (const char* env = std::getenv("SEQPER_CACHE")) {
        opt.cfg.cache_dir = env;
    }
    opt.cfg.validate();
}

std::shared_ptr<const PrimeWindow> make_window(const RunConfig& cfg) {
    return std::make_shared<const PrimeWindow>(sieve_primes(cfg.window_lo, cfg.window_hi));
}

ExecPolicy policy(const RunConfig& cfg) { return ExecPolicy{cfg.jobs}; }

// Emit a report with the reproducibility header in the requested format.
void emit(const RunConfig& cfg, const std::string& body_json, const std::string& body_text) {
    if (cfg.format == OutputFormat::json) {
        ordered_json j;
        j["config"] = cfg.describe();
        j["result"] = ordered_json::parse(body_json);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "# config: " << cfg.describe() << "\n" << body_text;
        if (!body_text.empty() && body_text.back() != '\n') std::cout << "\n";
    }
}

void emit_json_or_text(const RunConfig& cfg, const std::string& body_json) {
    emit(cfg, body_json, body_json);
}

// Rebuild a sequence from one of the labels this tool itself emits.
std::optional<SeqElement> resolve_label(const std::string& label, const RunConfig& cfg,
                                        const std::shared_ptr<const PrimeWindow>& w) {
    auto inner = [&](const std::string& prefix) -> std::optional<std::string> {
        if (label.rfind(prefix + "(", 0) == 0 && label.back() == ')')
            return label.substr(prefix.size() + 1, label.size() - prefix.size() - 2);
        return std::nullopt;
    };
    if (auto s = inner("zetaA")) return finite_mzv(Composition::parse(*s), w, policy(cfg));
    if (auto s = inner("zetaSym")) return sym_image(Composition::parse(*s), w, policy(cfg));
    if (auto s = inner("H"))
        return mhs_window(Composition::parse(*s), w, cfg.precision, policy(cfg));
    if (auto s = inner("Bseq")) return bseq_census(std::stoull(*s), w, policy(cfg)).first;
    if (auto s = inner("pcount"))
        return projective_counts(unsigned(std::stoul(*s)), w, cfg.precision);
    if (auto s = inner("const")) return SeqElement::constant(Rational::parse(*s), w, cfg.precision);
    if (auto s = inner("ap")) {
        auto comma = s->find(',');
        if (comma == std::string::npos) throw usage_error("ap(a4,a6) label needs two integers");
        return elliptic_ap(std::stoll(s->substr(0, comma)), std::stoll(s->substr(comma + 1)), w,
                           cfg.precision, policy(cfg))
            .ap;
    }
    if (label == "tau") return tau_window(w, cfg.precision);
    return std::nullopt;
}

std::vector<SeqElement> gather_sequences(const std::vector<std::string>& labels,
                                         const std::vector<std::string>& files,
                                         const RunConfig& cfg,
                                         const std::shared_ptr<const PrimeWindow>& w) {
    std::vector<SeqElement> seqs;
    for (const auto& f : files) seqs.push_back(seq_from_json(read_file(f)));
    for (const auto& l : labels) {
        auto s = resolve_label(l, cfg, w);
        if (!s) throw usage_error("unknown sequence label \"" + l + "\"");
        seqs.push_back(std::move(*s));
    }
    if (seqs.empty()) throw usage_error("no input sequences (use --seq and/or --input)");
    return seqs;
}

std::string congruence_text(const CongruenceReport& r) {
    std::string out = r.subject + ": " + (r.holds ? "holds-on-window" : "FAILS") + " (checked " +
                      std::to_string(r.checked) + ", skipped " +
                      std::to_string(r.skipped_exceptional) + ")\n";
    for (const auto& v : r.violations)
        out += "  violation at p=" + std::to_string(v.p) + ": " + v.detail + "\n";
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"prime-indexed p-adic sequence computations"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand
    Options opt;
    app.add_option("--window", opt.window_text, "prime window lo:hi")->capture_default_str();
    app.add_option("--precision", opt.cfg.precision, "p-adic working precision")
        ->capture_default_str();
    app.add_option("--cutoff", opt.cfg.cutoff, "ignore primes below this in verdicts")
        ->capture_default_str();
    app.add_option("--format", opt.format_text, "output format: json, csv, or text")
        ->capture_default_str();
    app.add_option("--cache-dir", opt.cache_flag,
                   "result cache directory (overrides SEQPER_CACHE)");
    app.add_option("--jobs", opt.cfg.jobs, "worker threads for windowed computations")
        ->capture_default_str();

    // primes
    bool strict_window = false;
    auto* cmd_primes = app.add_subcommand("primes", "list the primes of the window");
    cmd_primes->add_flag("--strict", strict_window, "error out when the window has no primes");

    // mhs / fmzv
    std::string comp_text;
    auto* cmd_mhs = app.add_subcommand("mhs", "windowed multiple harmonic sums H_{p-1}(s)");
    cmd_mhs->add_option("--s", comp_text, "composition, e.g. 1,2")->required();
    auto* cmd_fmzv = app.add_subcommand("fmzv", "finite multiple zeta value sequence zeta_A(s)");
    cmd_fmzv->add_option("--s", comp_text, "composition, e.g. 1,2")->required();

    // zetap
    u64 zeta_p = 0;
    unsigned zeta_M = 0;
    auto* cmd_zetap = app.add_subcommand("zetap", "depth-1 p-adic zeta table mod p^M");
    cmd_zetap->add_option("--p", zeta_p, "prime")->required();
    cmd_zetap->add_option("--M", zeta_M, "precision / weight ceiling (default: --precision)");

    // bernoulli-census
    u64 census_k = 3;
    auto* cmd_bcensus =
        app.add_subcommand("bernoulli-census", "census of (B_{p-k} mod p)_p zeros");
    cmd_bcensus->add_option("--k", census_k, "odd k >= 3")->required();

    // poly-census
    std::string poly_text;
    auto* cmd_pcensus = app.add_subcommand(
        "poly-census", "census of f(B_{p-3}, B_{p-5}, ...) mod p for rational f");
    cmd_pcensus->add_option("--f", poly_text, "polynomial in x1..xn, e.g. \"x1*x2 - 1/2\"")
        ->required();

    // wieferich
    std::string base_text = "2";
    auto* cmd_wief = app.add_subcommand("wieferich", "primes with r^(p-1) = 1 mod p^2");
    cmd_wief->add_option("--base", base_text, "rational base r != 0, +-1")->capture_default_str();

    // relations
    std::vector<std::string> seq_labels, seq_files;
    u64 height = 50;
    std::string out_path;
    auto* cmd_rel = app.add_subcommand("relations", "discover Q-linear relations mod p");
    cmd_rel->add_option("--seq", seq_labels, "sequence labels, e.g. zetaA(1,2)");
    cmd_rel->add_option("--input", seq_files, "sequence JSON files");
    cmd_rel->add_option("--height", height, "coefficient height bound")->capture_default_str();
    cmd_rel->add_option("--out", out_path, "also write the first relation to this file");

    // verify
    std::string relation_file;
    unsigned verify_n = 1;
    auto* cmd_verify = app.add_subcommand("verify", "verify a relation file mod p^n");
    cmd_verify->add_option("--relation", relation_file, "RelationCandidate JSON file")->required();
    cmd_verify->add_option("--n", verify_n, "congruence exponent")->capture_default_str();
    cmd_verify->add_option("--input", seq_files, "sequence JSON files for unknown labels");

    // fil
    std::string fil_label, fil_file;
    auto* cmd_fil = app.add_subcommand("fil", "valuation profile and empirical filtration level");
    cmd_fil->add_option("--seq", fil_label, "sequence label");
    cmd_fil->add_option("--input", fil_file, "sequence JSON file");

    // kummer
    std::string kummer_base = "2";
    bool kummer_check = false;
    auto* cmd_kummer = app.add_subcommand("kummer", "rank-2 Kummer Frobenius matrices");
    cmd_kummer->add_option("--r", kummer_base, "rational base")->capture_default_str();
    cmd_kummer->add_flag("--check", kummer_check, "run the Hodge divisibility check instead");

    // elliptic
    i64 a4 = 0, a6 = 0;
    auto* cmd_ell = app.add_subcommand("elliptic", "trace sequence of y^2 = x^3 + a4 x + a6");
    cmd_ell->add_option("--a4", a4, "coefficient a4")->required();
    cmd_ell->add_option("--a6", a6, "coefficient a6")->required();

    // tau
    auto* cmd_tau = app.add_subcommand("tau", "Ramanujan tau at window primes");

    // pcount
    unsigned pdim = 2;
    auto* cmd_pcount = app.add_subcommand("pcount", "projective space point counts");
    cmd_pcount->add_option("--n", pdim, "dimension")->capture_default_str();

    // span
    std::string span_op, span_a, span_b, span_matrix;
    int twist_n = 1;
    auto* cmd_span = app.add_subcommand("span", "tensor / twist / homcheck on matrix files");
    cmd_span->add_option("--op", span_op, "tensor | twist | homcheck")->required();
    cmd_span->add_option("--a", span_a, "first matrix JSON file")->required();
    cmd_span->add_option("--b", span_b, "second matrix JSON file");
    cmd_span->add_option("--twist", twist_n, "Tate twist exponent")->capture_default_str();
    cmd_span->add_option("--matrix", span_matrix, "rational intertwiner, rows a,b;c,d");

    CLI11_PARSE(app, argc, argv);
    finalize_config(opt);
    const RunConfig& cfg = opt.cfg;
    DiskCache cache(cfg.cache_dir);

    if (cmd_primes->parsed()) {
        auto w = std::make_shared<const PrimeWindow>(
            sieve_primes(cfg.window_lo, cfg.window_hi, strict_window));
        if (cfg.format == OutputFormat::json) {
            ordered_json j;
            j["lo"] = w->lo;
            j["hi"] = w->hi;
            j["count"] = w->size();
            j["primes"] = w->primes;
            emit(cfg, j.dump(), "");
        } else {
            std::string text;
            for (u64 p : w->primes) text += std::to_string(p) + "\n";
            emit(cfg, "", text);
        }
        return 0;
    }

    if (cmd_mhs->parsed() || cmd_fmzv->parsed()) {
        auto w = make_window(cfg);
        Composition s = Composition::parse(comp_text);
        SeqElement seq = cmd_mhs->parsed() ? mhs_window(s, w, cfg.precision, policy(cfg))
                                           : finite_mzv(s, w, policy(cfg));
        emit_json_or_text(cfg, seq_to_json(seq));
        return 0;
    }

    if (cmd_zetap->parsed()) {
        if (!is_prime_u64(zeta_p)) throw usage_error("zetap: --p must be prime");
        unsigned M = zeta_M ? zeta_M : cfg.precision;
        CacheKey key{"zeta_table", "p=" + std::to_string(zeta_p) + ";M=" + std::to_string(M), 0, 0,
                     M};
        std::string body;
        if (auto hit = cache.load(key)) {
            body = *hit;
        } else {
            body = zeta_table_to_json(zeta_table(zeta_p, M));
            cache.store(key, body);
        }
        emit_json_or_text(cfg, body);
        return 0;
    }

    if (cmd_bcensus->parsed()) {
        auto w = make_window(cfg);
        auto [seq, rec] = bseq_census(census_k, w, policy(cfg));
        if (cfg.format == OutputFormat::csv)
            emit(cfg, census_to_json(rec), census_to_csv(seq, rec));
        else
            emit(cfg, census_to_json(rec), census_to_json(rec));
        return 0;
    }

    if (cmd_pcensus->parsed()) {
        auto w = make_window(cfg);
        CensusRecord rec = poly_census(MultiPoly::parse(poly_text), *w, policy(cfg));
        emit_json_or_text(cfg, census_to_json(rec));
        return 0;
    }

    if (cmd_wief->parsed()) {
        auto w = make_window(cfg);
        std::vector<u64> found = wieferich_search(Rational::parse(base_text), *w, policy(cfg));
        ordered_json j;
        j["base"] = base_text;
        j["primes"] = found;
        std::string text;
        for (u64 p : found) text += std::to_string(p) + "\n";
        emit(cfg, j.dump(), text);
        return 0;
    }

    if (cmd_rel->parsed()) {
        auto w = make_window(cfg);
        std::vector<SeqElement> seqs = gather_sequences(seq_labels, seq_files, cfg, w);
        FindRelationsResult res = find_relations(seqs, height, cfg.cutoff);
        ordered_json j;
        j["reconstruction_prime"] = res.reconstruction_prime;
        j["usable_rows"] = res.usable_rows;
        j["well_posed"] = res.well_posed;
        j["dropped"] = res.dropped;
        ordered_json rels = ordered_json::array();
        for (const auto& r : res.relations) rels.push_back(ordered_json::parse(relation_to_json(r)));
        j["relations"] = std::move(rels);
        std::string text;
        for (const auto& r : res.relations) {
            for (std::size_t i = 0; i < r.labels.size(); ++i)
                if (r.coeff_num[i] != 0)
                    text += (text.empty() || text.back() == '\n' ? "" : " + ") +
                            std::to_string(r.coeff_num[i]) + "*" + r.labels[i];
            text += " = 0\n";
        }
        if (!out_path.empty() && !res.relations.empty())
            write_file(out_path, relation_to_json(res.relations.front()));
        emit(cfg, j.dump(), text.empty() ? "no relations found\n" : text);
        return 0;
    }

    if (cmd_verify->parsed()) {
        auto w = make_window(cfg);
        RelationCandidate cand = relation_from_json(read_file(relation_file));
        std::vector<SeqElement> from_files;
        for (const auto& f : seq_files) from_files.push_back(seq_from_json(read_file(f)));
        std::vector<SeqElement> seqs;
        for (const auto& label : cand.labels) {
            bool found = false;
            for (const auto& s : from_files)
                if (s.label() == label) {
                    seqs.push_back(s);
                    found = true;
                    break;
                }
            if (found) continue;
            auto s = resolve_label(label, cfg, w);
            if (!s)
                throw usage_error("cannot resolve label \"" + label +
                                  "\"; provide it with --input");
            seqs.push_back(std::move(*s));
        }
        CongruenceReport rep = verify_relation(cand, seqs, verify_n, cfg.cutoff);
        emit(cfg, congruence_report_to_json(rep), congruence_text(rep));
        return rep.holds ? 0 : 1;
    }

    if (cmd_fil->parsed()) {
        auto w = make_window(cfg);
        std::optional<SeqElement> seq;
        if (!fil_file.empty()) seq = seq_from_json(read_file(fil_file));
        else if (!fil_label.empty()) seq = resolve_label(fil_label, cfg, w);
        if (!seq) throw usage_error("fil needs --seq or --input");
        FilLevel level = empirical_fil_level(*seq, std::max<u64>(cfg.cutoff, 50));
        ordered_json j;
        j["label"] = seq->label();
        j["cutoff"] = std::max<u64>(cfg.cutoff, 50);
        j["level"] = level.level;
        j["witness_prime"] = level.witness_prime;
        j["witness_exact"] = level.witness_exact;
        j["profile"] = ordered_json::parse(valuation_profile_to_json(*seq));
        std::string text = "empirical filtration level " + std::to_string(level.level) +
                           " (witness p=" + std::to_string(level.witness_prime) + ", " +
                           (level.witness_exact ? "exact" : "lower bound only") + ")\n";
        emit(cfg, j.dump(), text);
        return 0;
    }

    if (cmd_kummer->parsed()) {
        auto w = make_window(cfg);
        FrobeniusMatrixSeq m = kummer_frobenius(Rational::parse(kummer_base), w, cfg.precision,
                                                policy(cfg));
        if (kummer_check) {
            HodgeCheckResult res = hodge_divisibility_check(m, cfg.cutoff);
            ordered_json j;
            j["subject"] = res.subject;
            j["holds"] = res.holds;
            j["checked"] = res.checked;
            j["violations"] = res.violations.size();
            emit(cfg, j.dump(),
                 res.subject + ": " + (res.holds ? "holds" : "FAILS") + "\n");
            return res.holds ? 0 : 1;
        }
        emit_json_or_text(cfg, matrix_to_json(m));
        return 0;
    }

    if (cmd_ell->parsed()) {
        auto w = make_window(cfg);
        EllipticResult e = elliptic_ap(a4, a6, w, cfg.precision, policy(cfg));
        ordered_json j;
        j["ap"] = ordered_json::parse(seq_to_json(e.ap));
        j["hasse_ok"] = e.hasse_ok;
        ordered_json cps = ordered_json::array();
        for (const auto& cp : e.char_polys) {
            ordered_json row;
            row["p"] = cp.p;
            row["char_poly"] = "T^2 - (" + std::to_string(cp.trace) + ")T + " + std::to_string(cp.p);
            cps.push_back(std::move(row));
        }
        j["char_polys"] = std::move(cps);
        std::string text;
        for (const auto& cp : e.char_polys)
            text += std::to_string(cp.p) + " " + std::to_string(cp.trace) + "\n";
        emit(cfg, j.dump(), text);
        return 0;
    }

    if (cmd_tau->parsed()) {
        auto w = make_window(cfg);
        CacheKey key{"tau", "", cfg.window_lo, cfg.window_hi, cfg.precision};
        std::string body;
        if (auto hit = cache.load(key)) {
            body = *hit;
        } else {
            body = seq_to_json(tau_window(w, cfg.precision));
            cache.store(key, body);
        }
        emit_json_or_text(cfg, body);
        return 0;
    }

    if (cmd_pcount->parsed()) {
        auto w = make_window(cfg);
        emit_json_or_text(cfg, seq_to_json(projective_counts(pdim, w, cfg.precision)));
        return 0;
    }

    if (cmd_span->parsed()) {
        FrobeniusMatrixSeq A = matrix_from_json(read_file(span_a));
        if (span_op == "twist") {
            emit_json_or_text(cfg, matrix_to_json(tate_twist(A, twist_n)));
            return 0;
        }
        if (span_op == "tensor") {
            if (span_b.empty()) throw usage_error("span --op tensor needs --b");
            FrobeniusMatrixSeq B = matrix_from_json(read_file(span_b));
            emit_json_or_text(cfg, matrix_to_json(tensor_product(A, B)));
            return 0;
        }
        if (span_op == "homcheck") {
            if (span_b.empty() || span_matrix.empty())
                throw usage_error("span --op homcheck needs --b and --matrix");
            FrobeniusMatrixSeq B = matrix_from_json(read_file(span_b));
            CongruenceReport rep =
                hom_check(RatMatrix::parse(span_matrix), A, B, cfg.cutoff);
            emit(cfg, congruence_report_to_json(rep), congruence_text(rep));
            return rep.holds ? 0 : 1;
        }
        throw usage_error("unknown span op \"" + span_op + "\"");
    }

    throw usage_error("no subcommand selected");
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const precision_error& e) {
        std::cerr << "precision error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
