#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fptrace/core.hpp"
#include "fptrace/rational.hpp"

namespace fptrace {

enum class Property { hamming_ltc, euclidean_ltc, independence_2t };

std::string property_name(Property p);

// Violating coalition pair, reported with its exact delta statistics.
struct PairWitness {
    Coalition i1;
    Coalition i2;
    DeltaStats stats;
};

struct VerificationReport {
    Property property = Property::hamming_ltc;
    int t = 0;
    long long T = 0;           // hamming
    Rational delta_sq;         // euclidean
    bool holds = false;
    std::optional<PairWitness> witness;
    std::optional<std::vector<int>> dependent_columns;  // independence (1-based)
    std::uint64_t pairs_checked = 0;
    std::string note;
};

std::string report_to_json(const VerificationReport& report);

// All coalitions of size 1..t over M columns, ordered by (size, lex indices).
std::vector<Coalition> enumerate_coalitions(int M, int t);

VerificationReport is_hamming_ltc(const BinaryCode& code, int t, long long T, int threads = 1);

VerificationReport is_euclidean_ltc(const BinaryCode& code, int t, const Rational& delta_sq,
                                    int threads = 1);

VerificationReport check_2t_independence(const BinaryCode& code, int t);

}  // namespace fptrace
