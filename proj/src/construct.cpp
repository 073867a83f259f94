#include "fptrace/construct.hpp"

#include <stdexcept>

#include "fptrace/splitmix64.hpp"

namespace fptrace {

std::uint32_t Gf2mField::default_primitive_poly(int m) {
    switch (m) {
        case 2: return 0b111;
        case 3: return 0b1011;
        case 4: return 0b10011;
        case 5: return 0b100101;
        case 6: return 0b1000011;
        case 7: return 0b10001001;
        case 8: return 0b100011101;
        case 9: return 0x211;    // x^9 + x^4 + 1
        case 10: return 0x409;   // x^10 + x^3 + 1
        case 11: return 0x805;   // x^11 + x^2 + 1
        case 12: return 0x1053;  // x^12 + x^6 + x^4 + x + 1
        case 13: return 0x201b;  // x^13 + x^4 + x^3 + x + 1
        case 14: return 0x4443;  // x^14 + x^10 + x^6 + x + 1
        case 15: return 0x8003;  // x^15 + x + 1
        case 16: return 0x1100b; // x^16 + x^12 + x^3 + x + 1
        default:
            throw std::invalid_argument("field degree m must lie in [2,16]");
    }
}

Gf2mField::Gf2mField(int m) : Gf2mField(m, default_primitive_poly(m)) {}

Gf2mField::Gf2mField(int m, std::uint32_t primitive_poly) : m_(m) {
    if (m < 2 || m > 16)
        throw std::invalid_argument("field degree m must lie in [2,16]");
    order_ = (1u << m) - 1;
    if (primitive_poly >> m != 1u)
        throw std::invalid_argument("primitive polynomial must have degree m");
    log_.assign(order_ + 1, 0);
    antilog_.assign(order_, 0);
    std::uint32_t x = 1;
    for (std::uint32_t e = 0; e < order_; ++e) {
        if (e > 0 && x == 1)
            throw std::invalid_argument("polynomial is not primitive: alpha has short order");
        antilog_[e] = x;
        log_[x] = e;
        x <<= 1;
        if (x >> m)
            x ^= primitive_poly;
    }
    if (x != 1)
        throw std::invalid_argument("polynomial does not define a field representation");
}

std::uint32_t Gf2mField::mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0)
        return 0;
    return antilog_[(log_[a] + log_[b]) % order_];
}

BinaryCode random_code(int n, int M, std::uint64_t seed) {
    if (n < 1 || M < 1)
        throw std::invalid_argument("code dimensions must be positive");
    BinaryCode code(n, M);
    SplitMix64 rng(seed);
    const std::size_t total = static_cast<std::size_t>(n) * M;
    std::uint64_t word = 0;
    for (std::size_t e = 0; e < total; ++e) {
        if (e % 64 == 0)
            word = rng.next();
        std::uint8_t bit = static_cast<std::uint8_t>((word >> (e % 64)) & 1u);
        code.set_bit(static_cast<int>(e / M), static_cast<int>(e % M), bit);
    }
    return code;
}

BinaryCode bch_parity_matrix(int m, int t) {
    return bch_parity_matrix(m, t, Gf2mField::default_primitive_poly(m));
}

BinaryCode bch_parity_matrix(int m, int t, std::uint32_t primitive_poly) {
    if (t < 1)
        throw std::invalid_argument("t must be at least 1");
    Gf2mField field(m, primitive_poly);
    if (2u * t + 1 > field.order())
        throw std::invalid_argument("designed distance 2t+1 exceeds field size 2^m-1");
    const int M = static_cast<int>(field.order());
    BinaryCode code(t * m, M);
    for (int block = 0; block < t; ++block) {
        const std::uint32_t i = 2u * block + 1;  // odd conjugate-class representative
        for (int col = 0; col < M; ++col) {
            std::uint32_t elem = field.alpha_pow(i * static_cast<std::uint32_t>(col));
            for (int l = 0; l < m; ++l)
                code.set_bit(block * m + l, col, static_cast<std::uint8_t>((elem >> l) & 1u));
        }
    }
    return code;
}

ConversionResult delta_from_T(int t, long long T) {
    if (t < 2)
        throw std::invalid_argument("delta_from_T requires t >= 2");
    if (T < 0)
        throw std::invalid_argument("T must be nonnegative");
    ConversionResult result;
    result.t = t;
    result.T = T;
    BigInt denom = BigInt(2) * t * (t - 1);
    result.delta_sq = Rational(BigInt(2) * T, denom * denom);
    return result;
}

long long T_from_delta(const Rational& delta_sq) {
    if (delta_sq < 0)
        throw std::invalid_argument("delta_sq must be nonnegative");
    return static_cast<long long>(floor_rational(Rational(2) * delta_sq));
}

}  // namespace fptrace
