#include <doctest.h>

#include <map>

#include "fptrace/construct.hpp"
#include "fptrace/splitmix64.hpp"
#include "fptrace/verify.hpp"

using namespace fptrace;

namespace {

// identity columns (1,0), (0,1)
BinaryCode identity2() {
    BinaryCode code(2, 2);
    code.set_bit(0, 0, 1);
    code.set_bit(1, 1, 1);
    return code;
}

// Naive reference: materialize every signature as a vector of reduced
// fractions and compare all pairs directly. Independent of the scan path.
struct NaiveReference {
    std::vector<std::pair<Coalition, std::vector<Rational>>> sigs;

    NaiveReference(const BinaryCode& code, int t) {
        for (const auto& c : enumerate_coalitions(code.cols(), t)) {
            std::vector<Rational> values;
            for (int row = 0; row < code.rows(); ++row) {
                Rational sum = 0;
                for (int user : c.indices())
                    sum += code.bit(row, user - 1);
                values.push_back(sum / c.size());
            }
            sigs.emplace_back(c, values);
        }
    }

    bool hamming_holds(long long T) const {
        for (std::size_t a = 0; a < sigs.size(); ++a)
            for (std::size_t b = a + 1; b < sigs.size(); ++b) {
                long long support = 0;
                for (std::size_t i = 0; i < sigs[a].second.size(); ++i)
                    if (sigs[a].second[i] != sigs[b].second[i])
                        ++support;
                if (support <= 2 * T)
                    return false;
            }
        return true;
    }

    bool euclidean_holds(const Rational& delta_sq) const {
        for (std::size_t a = 0; a < sigs.size(); ++a)
            for (std::size_t b = a + 1; b < sigs.size(); ++b) {
                Rational norm_sq = 0;
                for (std::size_t i = 0; i < sigs[a].second.size(); ++i) {
                    Rational d = sigs[a].second[i] - sigs[b].second[i];
                    norm_sq += d * d;
                }
                if (norm_sq <= 4 * delta_sq)
                    return false;
            }
        return true;
    }
};

}  // namespace

TEST_CASE("coalition enumeration order and count") {
    auto coalitions = enumerate_coalitions(3, 2);
    REQUIRE(coalitions.size() == 6);
    CHECK(coalitions[0].indices() == std::vector<int>{1});
    CHECK(coalitions[2].indices() == std::vector<int>{3});
    CHECK(coalitions[3].indices() == std::vector<int>{1, 2});
    CHECK(coalitions[5].indices() == std::vector<int>{2, 3});
}

TEST_CASE("hamming verification on the identity-columns code") {
    BinaryCode code = identity2();
    VerificationReport ok = is_hamming_ltc(code, 2, 0);
    CHECK(ok.holds);
    CHECK(ok.pairs_checked == 3);

    VerificationReport bad = is_hamming_ltc(code, 2, 1);
    CHECK_FALSE(bad.holds);
    REQUIRE(bad.witness.has_value());
    CHECK(bad.witness->i1.indices() == std::vector<int>{1});
    CHECK(bad.witness->i2.indices() == std::vector<int>{2});
    CHECK(bad.witness->stats.support_size == 2);
}

TEST_CASE("duplicate columns always violate") {
    BinaryCode code(3, 3);
    for (int r = 0; r < 3; ++r) {
        code.set_bit(r, 0, r % 2);
        code.set_bit(r, 2, r % 2);
        code.set_bit(r, 1, 1);
    }
    for (long long T : {0, 1, 5}) {
        VerificationReport report = is_hamming_ltc(code, 1, T);
        CHECK_FALSE(report.holds);
        REQUIRE(report.witness.has_value());
        CHECK(report.witness->stats.support_size <= 2 * T);
    }
    // at T = 0 the only zero-delta pair is the duplicate pair
    VerificationReport at_zero = is_hamming_ltc(code, 1, 0);
    REQUIRE(at_zero.witness.has_value());
    CHECK(at_zero.witness->i1.indices() == std::vector<int>{1});
    CHECK(at_zero.witness->i2.indices() == std::vector<int>{3});
    CHECK_FALSE(is_euclidean_ltc(code, 1, Rational(0)).holds);
}

TEST_CASE("euclidean verification on the identity-columns code") {
    BinaryCode code = identity2();
    // pair ({1},{1,2}) has norm_sq = 1/2 <= 4 * 1/4
    VerificationReport report = is_euclidean_ltc(code, 2, Rational(1, 4));
    CHECK_FALSE(report.holds);
    REQUIRE(report.witness.has_value());
    CHECK(report.witness->i1.indices() == std::vector<int>{1});
    CHECK(report.witness->i2.indices() == std::vector<int>{1, 2});
    CHECK(report.witness->stats.norm_sq == Rational(1, 2));

    // all signatures distinct, so delta_sq = 0 passes
    CHECK(is_euclidean_ltc(code, 2, Rational(0)).holds);
}

TEST_CASE("verification rejects t out of range") {
    BinaryCode code = identity2();
    CHECK_THROWS_AS(is_hamming_ltc(code, 3, 0), std::invalid_argument);
    CHECK_THROWS_AS(is_euclidean_ltc(code, 0, Rational(0)), std::invalid_argument);
    CHECK_THROWS_AS(is_euclidean_ltc(code, 1, Rational(-1)), std::invalid_argument);
}

TEST_CASE("2t-independence of the Hamming parity check") {
    BinaryCode code = bch_parity_matrix(3, 1);
    VerificationReport report = check_2t_independence(code, 1);
    CHECK(report.holds);
    CHECK(report.pairs_checked == 21);
}

TEST_CASE("zero column is always dependent") {
    BinaryCode code(3, 3);
    code.set_bit(0, 1, 1);
    code.set_bit(1, 2, 1);
    VerificationReport report = check_2t_independence(code, 1);
    CHECK_FALSE(report.holds);
    REQUIRE(report.dependent_columns.has_value());
    CHECK(*report.dependent_columns == std::vector<int>{1, 2});
}

TEST_CASE("independence bounds") {
    BinaryCode code(2, 3);
    code.set_bit(0, 0, 1);
    code.set_bit(1, 1, 1);
    code.set_bit(0, 2, 1);
    code.set_bit(1, 2, 1);
    CHECK(check_2t_independence(code, 1).holds);
    // 2t = 4 exceeds n = 2: flagged false, not an exception
    VerificationReport flagged = check_2t_independence(BinaryCode(2, 4), 2);
    CHECK_FALSE(flagged.holds);
    CHECK_FALSE(flagged.note.empty());
    CHECK_THROWS_AS(check_2t_independence(code, 2), std::invalid_argument);
}

TEST_CASE("hamming-euclidean implications on random codes") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        int t = 2 + static_cast<int>(rng.next_below(2));
        BinaryCode code = random_code(6 + static_cast<int>(rng.next_below(8)),
                                      3 + static_cast<int>(rng.next_below(4)), rng.next());
        for (long long T = 0; T <= 2; ++T)
            if (is_hamming_ltc(code, t, T).holds)
                CHECK(is_euclidean_ltc(code, t, delta_from_T(t, T).delta_sq).holds);
        for (const Rational& delta_sq : {Rational(1, 8), Rational(1, 2), Rational(1)})
            if (is_euclidean_ltc(code, t, delta_sq).holds)
                CHECK(is_hamming_ltc(code, t, T_from_delta(delta_sq)).holds);
    }
}

TEST_CASE("monotonicity in T and t") {
    SplitMix64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        BinaryCode code = random_code(10, 5, rng.next());
        for (long long T = 2; T >= 1; --T)
            if (is_hamming_ltc(code, 3, T).holds) {
                CHECK(is_hamming_ltc(code, 3, T - 1).holds);
                CHECK(is_hamming_ltc(code, 2, T).holds);
            }
    }
}

TEST_CASE("deterministic reports across worker counts") {
    SplitMix64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        BinaryCode code = random_code(6, 6, rng.next());
        VerificationReport serial = is_hamming_ltc(code, 2, 1, 1);
        for (int threads : {2, 3, 8}) {
            VerificationReport parallel = is_hamming_ltc(code, 2, 1, threads);
            CHECK(parallel.holds == serial.holds);
            CHECK(parallel.pairs_checked == serial.pairs_checked);
            CHECK(parallel.witness.has_value() == serial.witness.has_value());
            if (serial.witness) {
                CHECK(parallel.witness->i1 == serial.witness->i1);
                CHECK(parallel.witness->i2 == serial.witness->i2);
            }
        }
    }
}

TEST_CASE("oracle equivalence on small codes") {
    SplitMix64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        BinaryCode code = random_code(1 + static_cast<int>(rng.next_below(6)),
                                      2 + static_cast<int>(rng.next_below(4)), rng.next());
        int t = 1 + static_cast<int>(rng.next_below(2));
        if (t > code.cols())
            t = code.cols();
        NaiveReference ref(code, t);
        for (long long T = 0; T <= 2; ++T)
            CHECK(is_hamming_ltc(code, t, T).holds == ref.hamming_holds(T));
        for (const Rational& d : {Rational(0), Rational(1, 16), Rational(1, 4), Rational(1)})
            CHECK(is_euclidean_ltc(code, t, d).holds == ref.euclidean_holds(d));
    }
}

TEST_CASE("report JSON shape") {
    VerificationReport report = is_hamming_ltc(identity2(), 2, 1);
    std::string json = report_to_json(report);
    CHECK(json.find("\"property\":\"hamming_ltc\"") != std::string::npos);
    CHECK(json.find("\"holds\":false") != std::string::npos);
    CHECK(json.find("\"I1\":[1]") != std::string::npos);
}
