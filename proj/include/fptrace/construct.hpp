#pragma once

#include <cstdint>
#include <vector>

#include "fptrace/core.hpp"
#include "fptrace/rational.hpp"

namespace fptrace {

// GF(2^m) with log/antilog tables over a primitive polynomial.
class Gf2mField {
public:
    Gf2mField(int m, std::uint32_t primitive_poly);
    explicit Gf2mField(int m);  // default polynomial for m

    int m() const { return m_; }
    std::uint32_t order() const { return order_; }  // 2^m - 1

    std::uint32_t alpha_pow(std::uint32_t e) const { return antilog_[e % order_]; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;

    static std::uint32_t default_primitive_poly(int m);

private:
    int m_;
    std::uint32_t order_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> antilog_;
};

struct ConversionResult {
    int t = 0;
    long long T = 0;
    Rational delta_sq;
};

// Seeded Bernoulli(1/2) matrix: one SplitMix64 word per 64 entries in
// row-major order, bits taken LSB first.
BinaryCode random_code(int n, int M, std::uint64_t seed);

// Binary expansion of the narrow-sense BCH parity-check matrix with designed
// distance 2t+1: t*m rows, 2^m - 1 columns.
BinaryCode bch_parity_matrix(int m, int t);
BinaryCode bch_parity_matrix(int m, int t, std::uint32_t primitive_poly);

ConversionResult delta_from_T(int t, long long T);
long long T_from_delta(const Rational& delta_sq);

}  // namespace fptrace
