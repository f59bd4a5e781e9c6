#pragma once

#include <string>

#include "seqper/bernoulli.hpp"
#include "seqper/frobenius.hpp"
#include "seqper/relations.hpp"
#include "seqper/zeta.hpp"

namespace seqper {

/*
 * Canonical JSON encodings. Order-stable (primes ascending, fixed key
 * order) so that exported objects diff meaningfully and round-trip
 * byte-exactly. Mantissas are decimal strings: they can exceed 64 bits.
 */

std::string seq_to_json(const SeqElement& s);
SeqElement seq_from_json(const std::string& text);

std::string matrix_to_json(const FrobeniusMatrixSeq& m);
FrobeniusMatrixSeq matrix_from_json(const std::string& text);

std::string zeta_table_to_json(const PadicZetaTable& t);
PadicZetaTable zeta_table_from_json(const std::string& text);

std::string relation_to_json(const RelationCandidate& r);
RelationCandidate relation_from_json(const std::string& text);

// {"terms": [{"coeff_num": .., "coeff_den": .., "b": .., "composition": [..]}, ..]}
AhatSeries ahat_series_from_json(const std::string& text);

std::string census_to_json(const CensusRecord& c);
std::string census_to_csv(const SeqElement& seq, const CensusRecord& c);

std::string congruence_report_to_json(const CongruenceReport& r);
std::string valuation_profile_to_json(const SeqElement& s);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace seqper
