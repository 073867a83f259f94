#include "fptrace/core.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fptrace {

BinaryCode::BinaryCode(int n, int M) : n_(n), m_(M) {
    if (n < 1 || M < 1)
        throw std::invalid_argument("code dimensions must be positive");
    bits_.assign(static_cast<std::size_t>(n) * M, 0);
}

BinaryCode::BinaryCode(int n, int M, std::vector<std::uint8_t> bits) : n_(n), m_(M), bits_(std::move(bits)) {
    if (n < 1 || M < 1)
        throw std::invalid_argument("code dimensions must be positive");
    if (bits_.size() != static_cast<std::size_t>(n) * M)
        throw std::invalid_argument("bit buffer size mismatch");
    for (auto b : bits_)
        if (b > 1)
            throw std::invalid_argument("code entries must be 0 or 1");
}

void BinaryCode::set_bit(int row, int col, std::uint8_t v) {
    if (v > 1)
        throw std::invalid_argument("code entries must be 0 or 1");
    bits_[static_cast<std::size_t>(row) * m_ + col] = v;
}

Coalition::Coalition(std::vector<int> indices) : indices_(std::move(indices)) {
    if (indices_.empty())
        throw std::invalid_argument("coalition must be nonempty");
    for (std::size_t i = 0; i < indices_.size(); ++i) {
        if (indices_[i] < 1)
            throw std::invalid_argument("coalition indices are 1-based");
        if (i > 0 && indices_[i] <= indices_[i - 1])
            throw std::invalid_argument("coalition indices must be strictly increasing");
    }
}

void Coalition::validate_for(const BinaryCode& code) const {
    if (indices_.back() > code.cols())
        throw std::out_of_range("coalition index exceeds column count");
}

Signature average_signature(const BinaryCode& code, const Coalition& coalition) {
    coalition.validate_for(code);
    Signature sig;
    sig.size = coalition.size();
    sig.counts.assign(code.rows(), 0);
    for (int row = 0; row < code.rows(); ++row)
        for (int user : coalition.indices())
            sig.counts[row] += code.bit(row, user - 1);
    return sig;
}

DeltaStats delta_stats(const BinaryCode& code, const Coalition& i1, const Coalition& i2) {
    if (i1 == i2)
        throw std::invalid_argument("delta_stats requires distinct coalitions");
    Signature s1 = average_signature(code, i1);
    Signature s2 = average_signature(code, i2);
    const long long q = s1.size;
    const long long r = s2.size;

    DeltaStats stats;
    BigInt sum_sq = 0;
    BigInt min_abs = 0;
    for (int row = 0; row < code.rows(); ++row) {
        // Delta_row = counts1/q - counts2/r, compared via r*counts1 - q*counts2
        BigInt cross = BigInt(r) * s1.counts[row] - BigInt(q) * s2.counts[row];
        if (cross == 0)
            continue;
        ++stats.support_size;
        BigInt a = abs(cross);
        sum_sq += a * a;
        if (min_abs == 0 || a < min_abs)
            min_abs = a;
    }
    BigInt denom = BigInt(q) * r;
    stats.norm_sq = Rational(sum_sq, denom * denom);
    if (stats.support_size > 0)
        stats.min_nonzero_abs = Rational(min_abs, denom);
    return stats;
}

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error("binary_entropy argument must lie in [0,1]");
    if (x == 0.0 || x == 1.0)
        return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

BinaryCode parse_code(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header))
        throw std::invalid_argument("empty code file");
    std::istringstream hs(header);
    int n = 0, M = 0;
    char extra;
    if (!(hs >> n >> M) || hs >> extra || n < 1 || M < 1)
        throw std::invalid_argument("malformed code header: " + header);
    BinaryCode code(n, M);
    std::string line;
    for (int row = 0; row < n; ++row) {
        if (!std::getline(in, line))
            throw std::invalid_argument("truncated code file");
        if (static_cast<int>(line.size()) != M)
            throw std::invalid_argument("wrong row length at row " + std::to_string(row + 1));
        for (int col = 0; col < M; ++col) {
            if (line[col] != '0' && line[col] != '1')
                throw std::invalid_argument("illegal character in code row");
            code.set_bit(row, col, line[col] == '1' ? 1 : 0);
        }
    }
    if (std::getline(in, line))
        throw std::invalid_argument("trailing content after code rows");
    return code;
}

std::string format_code(const BinaryCode& code) {
    std::string out = std::to_string(code.rows()) + " " + std::to_string(code.cols()) + "\n";
    for (int row = 0; row < code.rows(); ++row) {
        for (int col = 0; col < code.cols(); ++col)
            out.push_back(code.bit(row, col) ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

BinaryCode load_code(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open code file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_code(buf.str());
}

void save_code(const BinaryCode& code, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write code file: " + path);
    out << format_code(code);
}

}  // namespace fptrace
