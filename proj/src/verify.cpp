#include "fptrace/verify.hpp"

#include <atomic>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace fptrace {

std::string property_name(Property p) {
    switch (p) {
        case Property::hamming_ltc: return "hamming_ltc";
        case Property::euclidean_ltc: return "euclidean_ltc";
        case Property::independence_2t: return "independence_2t";
    }
    return "?";
}

std::string report_to_json(const VerificationReport& report) {
    nlohmann::json j;
    j["property"] = property_name(report.property);
    j["t"] = report.t;
    if (report.property == Property::hamming_ltc)
        j["T"] = report.T;
    if (report.property == Property::euclidean_ltc)
        j["delta_sq"] = to_string(report.delta_sq);
    j["holds"] = report.holds;
    j["pairs_checked"] = report.pairs_checked;
    if (report.witness) {
        j["witness"]["I1"] = report.witness->i1.indices();
        j["witness"]["I2"] = report.witness->i2.indices();
        j["witness"]["support_size"] = report.witness->stats.support_size;
        j["witness"]["norm_sq"] = to_string(report.witness->stats.norm_sq);
    } else if (report.dependent_columns) {
        j["witness"]["columns"] = *report.dependent_columns;
    } else {
        j["witness"] = nullptr;
    }
    if (!report.note.empty())
        j["note"] = report.note;
    return j.dump();
}

std::vector<Coalition> enumerate_coalitions(int M, int t) {
    std::vector<Coalition> out;
    std::vector<int> current;
    for (int size = 1; size <= t; ++size) {
        current.assign(size, 0);
        for (int i = 0; i < size; ++i)
            current[i] = i + 1;
        while (true) {
            out.emplace_back(current);
            int pos = size - 1;
            while (pos >= 0 && current[pos] == M - (size - 1 - pos))
                --pos;
            if (pos < 0)
                break;
            ++current[pos];
            for (int i = pos + 1; i < size; ++i)
                current[i] = current[i - 1] + 1;
        }
    }
    return out;
}

namespace {

struct PairScan {
    const std::vector<Signature>* sigs;
    int rows;
    // returns true when the pair VIOLATES the property
    virtual bool violates(const Signature& a, const Signature& b) const = 0;
    virtual ~PairScan() = default;
};

struct HammingScan : PairScan {
    long long T;
    bool violates(const Signature& a, const Signature& b) const override {
        long long support = 0;
        for (int row = 0; row < rows; ++row) {
            long long cross =
                static_cast<long long>(b.size) * a.counts[row] - static_cast<long long>(a.size) * b.counts[row];
            if (cross != 0 && ++support > 2 * T)
                return false;  // early exit: pair is good
        }
        return true;
    }
};

struct EuclideanScan : PairScan {
    Rational four_delta_sq;
    bool violates(const Signature& a, const Signature& b) const override {
        // norm_sq > 4*delta_sq  <=>  sum_sq * den > num * (qr)^2
        BigInt denom = BigInt(a.size) * b.size;
        BigInt threshold = boost::multiprecision::numerator(four_delta_sq) * denom * denom;
        BigInt scale = boost::multiprecision::denominator(four_delta_sq);
        BigInt sum_sq = 0;
        for (int row = 0; row < rows; ++row) {
            long long cross =
                static_cast<long long>(b.size) * a.counts[row] - static_cast<long long>(a.size) * b.counts[row];
            sum_sq += BigInt(cross) * cross;
            if (sum_sq * scale > threshold)
                return false;  // early exit: pair is good
        }
        return true;
    }
};

// Scans all unordered coalition pairs in canonical order; returns the index of
// the minimal violating pair, or the pair count when the property holds.
// Deterministic for any worker count.
std::uint64_t scan_pairs(const PairScan& scan, std::uint64_t pair_count, std::size_t K, int threads) {
    auto pair_at = [K](std::uint64_t p, std::size_t& a, std::size_t& b) {
        std::uint64_t offset = 0;
        for (a = 0; a < K; ++a) {
            std::uint64_t width = K - 1 - a;
            if (p < offset + width) {
                b = a + 1 + static_cast<std::size_t>(p - offset);
                return;
            }
            offset += width;
        }
        throw std::logic_error("pair index out of range");
    };

    std::atomic<std::uint64_t> best{pair_count};
    auto worker = [&](std::uint64_t lo, std::uint64_t hi) {
        if (lo >= hi)
            return;
        std::size_t a, b;
        pair_at(lo, a, b);
        for (std::uint64_t p = lo; p < hi; ++p) {
            if (p >= best.load(std::memory_order_relaxed))
                break;
            if (scan.violates((*scan.sigs)[a], (*scan.sigs)[b])) {
                std::uint64_t current = best.load();
                while (p < current && !best.compare_exchange_weak(current, p)) {
                }
                break;
            }
            if (++b == K) {
                ++a;
                b = a + 1;
            }
        }
    };

    if (threads <= 1 || pair_count < 64) {
        worker(0, pair_count);
    } else {
        std::vector<std::thread> pool;
        std::uint64_t chunk = (pair_count + threads - 1) / threads;
        for (int w = 0; w < threads; ++w) {
            std::uint64_t lo = w * chunk;
            std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, pair_count);
            pool.emplace_back(worker, lo, hi);
        }
        for (auto& th : pool)
            th.join();
    }
    return best.load();
}

VerificationReport run_pair_property(const BinaryCode& code, int t, PairScan& scan,
                                     VerificationReport report, int threads) {
    if (t < 1 || t > code.cols())
        throw std::invalid_argument("coalition bound t must lie in [1, M]");
    std::vector<Coalition> coalitions = enumerate_coalitions(code.cols(), t);
    std::vector<Signature> sigs;
    sigs.reserve(coalitions.size());
    for (const auto& c : coalitions)
        sigs.push_back(average_signature(code, c));
    scan.sigs = &sigs;
    scan.rows = code.rows();

    const std::size_t K = coalitions.size();
    const std::uint64_t pair_count = static_cast<std::uint64_t>(K) * (K - 1) / 2;
    std::uint64_t first_bad = scan_pairs(scan, pair_count, K, threads);

    if (first_bad == pair_count) {
        report.holds = true;
        report.pairs_checked = pair_count;
    } else {
        report.holds = false;
        report.pairs_checked = first_bad + 1;
        std::uint64_t offset = 0;
        for (std::size_t a = 0; a < K; ++a) {
            std::uint64_t width = K - 1 - a;
            if (first_bad < offset + width) {
                std::size_t b = a + 1 + static_cast<std::size_t>(first_bad - offset);
                report.witness = PairWitness{coalitions[a], coalitions[b],
                                             delta_stats(code, coalitions[a], coalitions[b])};
                break;
            }
            offset += width;
        }
    }
    return report;
}

}  // namespace

VerificationReport is_hamming_ltc(const BinaryCode& code, int t, long long T, int threads) {
    if (T < 0)
        throw std::invalid_argument("T must be nonnegative");
    HammingScan scan;
    scan.T = T;
    VerificationReport report;
    report.property = Property::hamming_ltc;
    report.t = t;
    report.T = T;
    return run_pair_property(code, t, scan, std::move(report), threads);
}

VerificationReport is_euclidean_ltc(const BinaryCode& code, int t, const Rational& delta_sq,
                                    int threads) {
    if (delta_sq < 0)
        throw std::invalid_argument("delta_sq must be nonnegative");
    EuclideanScan scan;
    scan.four_delta_sq = Rational(4) * delta_sq;
    VerificationReport report;
    report.property = Property::euclidean_ltc;
    report.t = t;
    report.delta_sq = delta_sq;
    return run_pair_property(code, t, scan, std::move(report), threads);
}

namespace {

// Rank of a 0/1 matrix given by column indices, exact over the rationals
// (fraction-free Bareiss elimination on integers).
int exact_column_rank(const BinaryCode& code, const std::vector<int>& columns) {
    const int rows = code.rows();
    const int cols = static_cast<int>(columns.size());
    std::vector<std::vector<BigInt>> a(rows, std::vector<BigInt>(cols));
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            a[r][c] = code.bit(r, columns[c] - 1);

    int rank = 0;
    BigInt prev_pivot = 1;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int pivot_row = -1;
        for (int r = rank; r < rows; ++r)
            if (a[r][c] != 0) {
                pivot_row = r;
                break;
            }
        if (pivot_row < 0)
            continue;
        std::swap(a[rank], a[pivot_row]);
        for (int r = rank + 1; r < rows; ++r) {
            for (int cc = c + 1; cc < cols; ++cc)
                a[r][cc] = (a[rank][c] * a[r][cc] - a[r][c] * a[rank][cc]) / prev_pivot;
            a[r][c] = 0;
        }
        prev_pivot = a[rank][c];
        ++rank;
    }
    return rank;
}

}  // namespace

VerificationReport check_2t_independence(const BinaryCode& code, int t) {
    if (t < 1)
        throw std::invalid_argument("t must be at least 1");
    if (2 * t > code.cols())
        throw std::invalid_argument("2t exceeds the number of columns");
    VerificationReport report;
    report.property = Property::independence_2t;
    report.t = t;
    if (2 * t > code.rows()) {
        report.holds = false;
        report.note = "rank 2t is impossible: 2t exceeds the row count";
        return report;
    }

    const int M = code.cols();
    const int k = 2 * t;
    std::vector<int> subset(k);
    for (int i = 0; i < k; ++i)
        subset[i] = i + 1;
    while (true) {
        ++report.pairs_checked;
        if (exact_column_rank(code, subset) < k) {
            report.holds = false;
            report.dependent_columns = subset;
            return report;
        }
        int pos = k - 1;
        while (pos >= 0 && subset[pos] == M - (k - 1 - pos))
            --pos;
        if (pos < 0)
            break;
        ++subset[pos];
        for (int i = pos + 1; i < k; ++i)
            subset[i] = subset[i - 1] + 1;
    }
    report.holds = true;
    return report;
}

}  // namespace fptrace
