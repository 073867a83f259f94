#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fptrace/rational.hpp"

namespace fptrace {

// Binary n x M matrix whose columns are user fingerprints.
class BinaryCode {
public:
    BinaryCode(int n, int M);
    BinaryCode(int n, int M, std::vector<std::uint8_t> bits);

    int rows() const { return n_; }
    int cols() const { return m_; }

    // row in [0, n), col in [0, M)
    std::uint8_t bit(int row, int col) const { return bits_[static_cast<std::size_t>(row) * m_ + col]; }
    void set_bit(int row, int col, std::uint8_t v);

    bool operator==(const BinaryCode&) const = default;

private:
    int n_;
    int m_;
    std::vector<std::uint8_t> bits_;  // row-major
};

// Strictly increasing 1-based column indices; never empty.
class Coalition {
public:
    explicit Coalition(std::vector<int> indices);

    const std::vector<int>& indices() const { return indices_; }
    int size() const { return static_cast<int>(indices_.size()); }

    void validate_for(const BinaryCode& code) const;

    bool operator==(const Coalition&) const = default;

private:
    std::vector<int> indices_;
};

// Averaged column sum sigma(H|I) held exactly as integer counts over |I|.
struct Signature {
    std::vector<int> counts;  // counts[i] = sum of row i over the coalition
    int size = 0;             // |I|

    bool operator==(const Signature&) const = default;
};

// Exact statistics of Delta = sigma(H|I1) - sigma(H|I2).
struct DeltaStats {
    int support_size = 0;
    Rational norm_sq;
    std::optional<Rational> min_nonzero_abs;
};

Signature average_signature(const BinaryCode& code, const Coalition& coalition);

DeltaStats delta_stats(const BinaryCode& code, const Coalition& i1, const Coalition& i2);

// h(x) = -x log2 x - (1-x) log2 (1-x), with 0 log2 0 = 0.
double binary_entropy(double x);

BinaryCode load_code(const std::string& path);
void save_code(const BinaryCode& code, const std::string& path);

BinaryCode parse_code(const std::string& text);
std::string format_code(const BinaryCode& code);

}  // namespace fptrace
