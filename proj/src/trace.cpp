#include "fptrace/trace.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "fptrace/verify.hpp"

namespace fptrace {

std::string trace_result_to_json(const TraceResult& result) {
    nlohmann::json j;
    j["coalition"] = result.coalition.indices();
    j["score"] = result.score;
    j["margin"] = result.margin;
    j["ambiguous"] = result.ambiguous;
    j["metric"] = result.metric;
    j["candidates"] = result.candidates;
    return j.dump();
}

double default_match_tol(int t) {
    long long gap_denom = std::max<long long>(static_cast<long long>(t) * (t - 1), 1);
    return 1.0 / (4.0 * static_cast<double>(gap_denom));
}

namespace {

// Exhaustive argbest over the canonical coalition order. better(a, b) means a
// strictly beats b; ties are resolved toward the earlier coalition.
template <typename Score, typename Better>
TraceResult search(const BinaryCode& code, int t, const std::string& metric, Score&& score_of,
                   Better&& better) {
    if (t < 1 || t > code.cols())
        throw std::invalid_argument("coalition bound t must lie in [1, M]");
    std::vector<Coalition> coalitions = enumerate_coalitions(code.cols(), t);

    std::size_t best = 0;
    double best_score = score_of(coalitions[0]);
    bool tie_at_best = false;
    std::optional<std::size_t> second;
    double second_score = 0.0;
    for (std::size_t i = 1; i < coalitions.size(); ++i) {
        double sc = score_of(coalitions[i]);
        if (better(sc, best_score)) {
            second = best;
            second_score = best_score;
            best = i;
            best_score = sc;
            tie_at_best = false;
        } else {
            if (sc == best_score)
                tie_at_best = true;
            if (!second || better(sc, second_score)) {
                second = i;
                second_score = sc;
            }
        }
    }

    TraceResult result{coalitions[best]};
    result.score = best_score;
    result.metric = metric;
    result.candidates = coalitions.size();
    result.ambiguous = tie_at_best;
    if (second) {
        result.runner_up = std::make_pair(coalitions[*second], second_score);
        result.margin = std::abs(best_score - second_score);
    }
    return result;
}

}  // namespace

TraceResult trace_euclidean(const BinaryCode& code, const Syndrome& s, int t) {
    if (static_cast<int>(s.s.size()) != code.rows())
        throw std::invalid_argument("syndrome length does not match code length");
    auto score_of = [&](const Coalition& c) {
        Signature sig = average_signature(code, c);
        double dist_sq = 0.0;
        for (int row = 0; row < code.rows(); ++row) {
            double diff = s.s[row] - static_cast<double>(sig.counts[row]) / sig.size;
            dist_sq += diff * diff;
        }
        return dist_sq;
    };
    return search(code, t, "euclidean", score_of, [](double a, double b) { return a < b; });
}

TraceResult trace_hamming(const BinaryCode& code, const Syndrome& s, int t,
                          std::optional<double> match_tol) {
    if (static_cast<int>(s.s.size()) != code.rows())
        throw std::invalid_argument("syndrome length does not match code length");
    double tol = match_tol.value_or(default_match_tol(t));
    if (tol <= 0)
        throw std::invalid_argument("match tolerance must be positive");
    double half_gap = 2.0 * default_match_tol(t);
    if (tol >= half_gap)
        throw std::invalid_argument(
            "match tolerance must stay below half the minimum signature gap 1/(2*t*(t-1)); "
            "a larger tolerance could confuse two distinct candidate values");
    auto score_of = [&](const Coalition& c) {
        Signature sig = average_signature(code, c);
        int matches = 0;
        for (int row = 0; row < code.rows(); ++row) {
            double diff = s.s[row] - static_cast<double>(sig.counts[row]) / sig.size;
            if (std::abs(diff) <= tol)
                ++matches;
        }
        return static_cast<double>(matches);
    };
    return search(code, t, "hamming", score_of, [](double a, double b) { return a > b; });
}

}  // namespace fptrace
