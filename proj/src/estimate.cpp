#include "fptrace/estimate.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fptrace/construct.hpp"
#include "fptrace/splitmix64.hpp"

namespace fptrace {

namespace {

void check_bad_row_domain(int q, int r, int k) {
    if (r < 1 || q < r)
        throw std::invalid_argument("need q >= r >= 1");
    if (k < 0 || k > r)
        throw std::invalid_argument("need 0 <= k <= r");
    if (q == r && k == r)
        throw std::invalid_argument("coalitions must be distinct: (q,q,q) is excluded");
}

}  // namespace

Rational exact_bad_row_prob(int q, int r, int k) {
    check_bad_row_domain(q, r, k);
    // A row is bad iff the ones-fractions coincide: r*(x_s+x1) = q*(x_s+x2),
    // where x_s, x1, x2 count ones among shared / only-I1 / only-I2 columns.
    BigInt favorable = 0;
    for (int xs = 0; xs <= k; ++xs)
        for (int x1 = 0; x1 <= q - k; ++x1)
            for (int x2 = 0; x2 <= r - k; ++x2)
                if (static_cast<long long>(r) * (xs + x1) == static_cast<long long>(q) * (xs + x2))
                    favorable += binomial(k, xs) * binomial(q - k, x1) * binomial(r - k, x2);
    return Rational(favorable, BigInt(1) << (q + r - k));
}

McEstimate mc_bad_row_prob(int q, int r, int k, long long trials, std::uint64_t seed) {
    check_bad_row_domain(q, r, k);
    if (trials < 1)
        throw std::invalid_argument("trials must be positive");
    const int total_bits = q + r - k;
    if (total_bits > 63)
        throw std::invalid_argument("q + r - k too large for the bit-sampling harness");
    const std::uint64_t mask_shared = (1ULL << k) - 1;
    const std::uint64_t mask_only1 = ((1ULL << (q - k)) - 1) << k;
    const std::uint64_t mask_only2 = ((1ULL << (r - k)) - 1) << q;

    SplitMix64 rng(seed);
    long long hits = 0;
    for (long long trial = 0; trial < trials; ++trial) {
        std::uint64_t word = rng.next();
        int xs = std::popcount(word & mask_shared);
        int x1 = std::popcount(word & mask_only1);
        int x2 = std::popcount(word & mask_only2);
        if (static_cast<long long>(r) * (xs + x1) == static_cast<long long>(q) * (xs + x2))
            ++hits;
    }
    McEstimate est;
    est.frequency = static_cast<double>(hits) / trials;
    est.std_err = std::sqrt(est.frequency * (1.0 - est.frequency) / trials);
    if (est.std_err == 0.0)
        est.std_err = 0.5 / std::sqrt(static_cast<double>(trials));
    return est;
}

double PModel::p(int q) {
    switch (kind) {
        case PModelKind::conservative:
            return 0.5;
        case PModelKind::asymptotic:
            return std::min(0.5, std::pow(static_cast<double>(q), -1.0 / 3.0));
        case PModelKind::empirical: {
            auto it = table.find(q);
            if (it != table.end())
                return it->second;
            Rational worst = 0;
            for (int r = 1; r <= q; ++r)
                for (int k = 0; k <= r; ++k) {
                    if (q == r && k == r)
                        continue;
                    Rational p = exact_bad_row_prob(q, r, k);
                    if (p > worst)
                        worst = p;
                }
            if (worst > Rational(1, 2)) {
                worst = Rational(1, 2);
                clamped = true;
            }
            double value = worst.convert_to<double>();
            table[q] = value;
            return value;
        }
    }
    throw std::logic_error("unknown p-model kind");
}

const char* pmodel_name(PModelKind kind) {
    switch (kind) {
        case PModelKind::conservative: return "conservative";
        case PModelKind::asymptotic: return "asymptotic";
        case PModelKind::empirical: return "empirical";
    }
    return "?";
}

PModel pmodel_from_name(const std::string& name) {
    if (name == "conservative")
        return PModel::conservative();
    if (name == "asymptotic")
        return PModel::asymptotic();
    if (name == "empirical")
        return PModel::empirical();
    throw std::invalid_argument("unknown p-model: " + name);
}

RateEstimate rate_lower_bound(int t, double tau, PModel model) {
    if (t < 1)
        throw std::invalid_argument("t must be positive");
    if (!(tau >= 0.0 && tau < 0.5))
        throw std::invalid_argument("tau must lie in [0, 1/2)");
    const double h_tau = binary_entropy(tau);
    RateEstimate est;
    est.tau = tau;
    est.model = model.kind;
    est.r_hat = std::numeric_limits<double>::infinity();
    for (int q = 1; q <= t; ++q) {
        double p = model.p(q);
        if (tau >= 1.0 - p)
            throw std::invalid_argument("bound is vacuous: tau >= 1 - p(q) at q = " + std::to_string(q));
        double value = -(std::log2(p) + h_tau + tau * std::log2((1.0 - p) / p)) / (2.0 * q);
        if (value < est.r_hat) {
            est.r_hat = value;
            est.argmin_q = q;
        }
    }
    return est;
}

double expected_bad_pairs_log2(int n, int M, int t, double tau, PModel model) {
    if (n < 1 || M < 1 || t < 1)
        throw std::invalid_argument("parameters must be positive");
    if (!(tau >= 0.0 && tau < 0.5))
        throw std::invalid_argument("tau must lie in [0, 1/2)");
    const long long T = static_cast<long long>(std::floor(tau * n));
    for (int q = 1; q <= t; ++q)
        if (static_cast<double>(T) > (1.0 - model.p(q)) * n)
            throw std::invalid_argument("side condition T <= (1-p(q))n violated at q = " +
                                        std::to_string(q));
    if (T == 0)
        return -std::numeric_limits<double>::infinity();

    // log2 of C(n, T)
    double log2_binom = 0.0;
    for (long long i = 0; i < T; ++i)
        log2_binom += std::log2(static_cast<double>(n - i)) - std::log2(static_cast<double>(i + 1));

    // log-sum-exp over q of  q * M^{2q} * T * C(n,T) * (1-p)^T * p^{n-T}
    double max_term = -std::numeric_limits<double>::infinity();
    std::vector<double> terms(t);
    for (int q = 1; q <= t; ++q) {
        double p = model.p(q);
        double term = std::log2(static_cast<double>(q)) + 2.0 * q * std::log2(static_cast<double>(M)) +
                      std::log2(static_cast<double>(T)) + log2_binom + T * std::log2(1.0 - p) +
                      (n - T) * std::log2(p);
        terms[q - 1] = term;
        max_term = std::max(max_term, term);
    }
    double sum = 0.0;
    for (double term : terms)
        sum += std::exp2(term - max_term);
    return max_term + std::log2(sum);
}

std::optional<FindCodeResult> find_code(int n, int M, int t, long long T, int max_attempts,
                                        std::uint64_t seed, int threads) {
    if (max_attempts < 1)
        throw std::invalid_argument("max_attempts must be positive");
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        BinaryCode code = random_code(n, M, seed ^ static_cast<std::uint64_t>(attempt));
        if (is_hamming_ltc(code, t, T, threads).holds)
            return FindCodeResult{std::move(code), attempt + 1};
    }
    return std::nullopt;
}

}  // namespace fptrace
