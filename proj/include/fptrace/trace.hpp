#pragma once

#include <optional>
#include <string>
#include <utility>

#include "fptrace/attack.hpp"
#include "fptrace/core.hpp"

namespace fptrace {

struct TraceResult {
    Coalition coalition;
    double score = 0.0;  // euclidean: squared distance; hamming: match count
    std::optional<std::pair<Coalition, double>> runner_up;
    double margin = 0.0;
    bool ambiguous = false;
    std::string metric;
    std::uint64_t candidates = 0;
};

std::string trace_result_to_json(const TraceResult& result);

// Nearest signature over all coalitions of size <= t, squared Euclidean distance.
TraceResult trace_euclidean(const BinaryCode& code, const Syndrome& s, int t);

// Maximum coordinate-match count; tolerance below half the minimum signature gap.
TraceResult trace_hamming(const BinaryCode& code, const Syndrome& s, int t,
                          std::optional<double> match_tol = std::nullopt);

double default_match_tol(int t);

}  // namespace fptrace
