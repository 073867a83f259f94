#include <doctest.h>

#include <cmath>

#include "fptrace/estimate.hpp"
#include "fptrace/splitmix64.hpp"

using namespace fptrace;

namespace {

// Brute-force oracle: enumerate all assignments of the q + r - k column bits.
Rational brute_force_bad_row_prob(int q, int r, int k) {
    const int bits = q + r - k;
    long long favorable = 0;
    for (long long word = 0; word < (1LL << bits); ++word) {
        int xs = 0, x1 = 0, x2 = 0;
        for (int b = 0; b < k; ++b)
            xs += (word >> b) & 1;
        for (int b = k; b < q; ++b)
            x1 += (word >> b) & 1;
        for (int b = q; b < bits; ++b)
            x2 += (word >> b) & 1;
        if (static_cast<long long>(r) * (xs + x1) == static_cast<long long>(q) * (xs + x2))
            ++favorable;
    }
    return Rational(favorable, BigInt(1) << bits);
}

}  // namespace

TEST_CASE("exact bad-row probability: pinned values") {
    CHECK(exact_bad_row_prob(1, 1, 0) == Rational(1, 2));
    CHECK(exact_bad_row_prob(2, 2, 0) == Rational(3, 8));
    CHECK(exact_bad_row_prob(2, 1, 0) == Rational(1, 4));
    CHECK(exact_bad_row_prob(2, 1, 1) == Rational(1, 2));
}

TEST_CASE("exact bad-row probability: equal disjoint coalitions give C(2q,q)/4^q") {
    for (int q = 1; q <= 6; ++q)
        CHECK(exact_bad_row_prob(q, q, 0) == Rational(binomial(2 * q, q), BigInt(1) << (2 * q)));
}

TEST_CASE("exact bad-row probability matches brute-force enumeration") {
    for (int q = 1; q <= 4; ++q)
        for (int r = 1; r <= q; ++r)
            for (int k = 0; k <= r; ++k) {
                if (q == r && k == r)
                    continue;
                CHECK(exact_bad_row_prob(q, r, k) == brute_force_bad_row_prob(q, r, k));
            }
}

TEST_CASE("bad-row probability never exceeds 1/2") {
    for (int q = 1; q <= 6; ++q)
        for (int r = 1; r <= q; ++r)
            for (int k = 0; k <= r; ++k) {
                if (q == r && k == r)
                    continue;
                CHECK(exact_bad_row_prob(q, r, k) <= Rational(1, 2));
            }
}

TEST_CASE("bad-row domain validation") {
    CHECK_THROWS_AS(exact_bad_row_prob(1, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(exact_bad_row_prob(2, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(exact_bad_row_prob(2, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(exact_bad_row_prob(2, 0, 0), std::invalid_argument);
}

TEST_CASE("Monte Carlo agrees with the exact oracle") {
    McEstimate est = mc_bad_row_prob(1, 1, 0, 100000, 1);
    CHECK(std::abs(est.frequency - 0.5) <= 3 * est.std_err);
    McEstimate est33 = mc_bad_row_prob(3, 3, 0, 100000, 2);
    CHECK(std::abs(est33.frequency - 20.0 / 64.0) <= 3 * est33.std_err);
}

TEST_CASE("Monte Carlo degenerate sample") {
    McEstimate est = mc_bad_row_prob(1, 1, 0, 1, 9);
    CHECK((est.frequency == 0.0 || est.frequency == 1.0));
    CHECK(est.std_err == doctest::Approx(0.5));
}

TEST_CASE("empirical p-model maximizes over opposing coalition shapes") {
    PModel model = PModel::empirical();
    // (q, q, q-1) forces 1/2 for every q
    for (int q = 1; q <= 4; ++q)
        CHECK(model.p(q) == doctest::Approx(0.5));
}

TEST_CASE("conservative rate bound reduces to (1-h(tau))/(2t)") {
    for (int t : {1, 2, 7, 32})
        for (double tau : {0.0, 0.1, 0.25, 0.4}) {
            RateEstimate est = rate_lower_bound(t, tau, PModel::conservative());
            CHECK(est.r_hat ==
                  doctest::Approx((1.0 - binary_entropy(tau)) / (2.0 * t)).epsilon(1e-12));
            CHECK(est.argmin_q == t);
        }
    CHECK(rate_lower_bound(2, 0.0, PModel::conservative()).r_hat == doctest::Approx(0.25));
    CHECK(rate_lower_bound(2, 0.25, PModel::conservative()).r_hat ==
          doctest::Approx((1.0 - binary_entropy(0.25)) / 4.0).epsilon(1e-9));
}

TEST_CASE("asymptotic rate bound tracks (1-tau) log2(t) / (6t)") {
    RateEstimate est = rate_lower_bound(1024, 0.1, PModel::asymptotic());
    double target = 0.9 * std::log2(1024.0) / (6.0 * 1024.0);
    CHECK(std::abs(est.r_hat - target) / target < 0.20);
}

TEST_CASE("rate bound is monotone in tau and t") {
    for (PModel model : {PModel::conservative(), PModel::asymptotic()}) {
        double prev = rate_lower_bound(4, 0.0, model).r_hat;
        for (double tau : {0.1, 0.2, 0.3, 0.4}) {
            double cur = rate_lower_bound(4, tau, model).r_hat;
            CHECK(cur <= prev);
            prev = cur;
        }
        prev = rate_lower_bound(1, 0.1, model).r_hat;
        for (int t = 2; t <= 16; t *= 2) {
            double cur = rate_lower_bound(t, 0.1, model).r_hat;
            CHECK(cur <= prev);
            prev = cur;
        }
    }
}

TEST_CASE("rate bound input validation") {
    CHECK_THROWS_AS(rate_lower_bound(2, 0.5, PModel::conservative()), std::invalid_argument);
    CHECK_THROWS_AS(rate_lower_bound(0, 0.1, PModel::conservative()), std::invalid_argument);
}

TEST_CASE("expected bad pairs bound against a direct rational product") {
    // t = 1, conservative: bound = M^2 * T * C(n,T) * (1/2)^n exactly
    const int n = 10, M = 2;
    const double tau = 0.35;  // T = 3
    double got = expected_bad_pairs_log2(n, M, 1, tau, PModel::conservative());
    Rational direct = Rational(BigInt(M) * M * 3 * binomial(n, 3), BigInt(1) << n);
    CHECK(got == doctest::Approx(std::log2(direct.convert_to<double>())).epsilon(1e-10));
}

TEST_CASE("expected bad pairs bound is empty at T = 0") {
    CHECK(expected_bad_pairs_log2(10, 2, 1, 0.0, PModel::conservative()) ==
          -std::numeric_limits<double>::infinity());
}

TEST_CASE("expected bad pairs bound grows with M") {
    PModel model = PModel::conservative();
    double small = expected_bad_pairs_log2(30, 4, 2, 0.1, model);
    double large = expected_bad_pairs_log2(30, 16, 2, 0.1, model);
    CHECK(large > small);
}

TEST_CASE("rates below r_hat give a vanishing expectation bound") {
    PModel model = PModel::conservative();
    const int t = 2;
    const double tau = 0.1;
    double r_hat = rate_lower_bound(t, tau, model).r_hat;
    const int n = 200;
    const int M = static_cast<int>(std::floor(std::exp2(0.8 * r_hat * n)));
    CHECK(expected_bad_pairs_log2(n, M, t, tau, model) < 0.0);
}

TEST_CASE("find_code returns a verified code") {
    auto found = find_code(24, 6, 2, 1, 500, 1);
    REQUIRE(found.has_value());
    CHECK(is_hamming_ltc(found->code, 2, 1).holds);
    CHECK(found->attempts_used >= 1);
}

TEST_CASE("find_code exhausts cleanly in an impossible regime") {
    // pigeonhole: 100 columns of height 2 force duplicates
    auto found = find_code(2, 100, 2, 1, 10, 1);
    CHECK_FALSE(found.has_value());
}
