#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>

#include "fptrace/core.hpp"
#include "fptrace/rational.hpp"
#include "fptrace/verify.hpp"

namespace fptrace {

enum class PModelKind { conservative, asymptotic, empirical };

// Per-coalition-size bad-row probability model used by the rate bounds.
struct PModel {
    PModelKind kind = PModelKind::conservative;
    std::map<int, double> table;  // empirical cache
    bool clamped = false;         // empirical value exceeded 1/2 and was clamped

    double p(int q);

    static PModel conservative() { return {PModelKind::conservative}; }
    static PModel asymptotic() { return {PModelKind::asymptotic}; }
    static PModel empirical() { return {PModelKind::empirical}; }
};

const char* pmodel_name(PModelKind kind);
PModel pmodel_from_name(const std::string& name);

struct RateEstimate {
    double r_hat = 0.0;
    int argmin_q = 1;
    double tau = 0.0;
    PModelKind model = PModelKind::conservative;
};

struct McEstimate {
    double frequency = 0.0;
    double std_err = 0.0;
};

// Exact probability that a random row is bad for coalitions of sizes q >= r
// sharing k columns, via the split into shared / only-I1 / only-I2 counts.
Rational exact_bad_row_prob(int q, int r, int k);

McEstimate mc_bad_row_prob(int q, int r, int k, long long trials, std::uint64_t seed);

RateEstimate rate_lower_bound(int t, double tau, PModel model);

// log2 of the union-bound on the expected number of bad coalition pairs;
// -infinity when T = floor(tau*n) is zero (the bound is empty).
double expected_bad_pairs_log2(int n, int M, int t, double tau, PModel model);

struct FindCodeResult {
    BinaryCode code;
    int attempts_used = 0;
};

std::optional<FindCodeResult> find_code(int n, int M, int t, long long T, int max_attempts,
                                        std::uint64_t seed, int threads = 1);

}  // namespace fptrace
