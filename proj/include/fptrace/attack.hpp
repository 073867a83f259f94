#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fptrace/core.hpp"

namespace fptrace {

// n orthonormal carrier vectors of length N.
struct CarrierBasis {
    int n = 0;
    int N = 0;
    std::vector<std::vector<double>> vectors;  // n rows of length N
};

enum class NoiseKind { none, ball, sparse };

struct NoiseSpec {
    NoiseKind kind = NoiseKind::none;
    double delta = 0.0;      // ball radius
    long long T = 0;         // sparse support bound
    double magnitude = 1.0;  // sparse per-coordinate bound
    std::uint64_t seed = 0;

    static NoiseSpec parse(const std::string& text, std::uint64_t seed);
    std::string to_string() const;
};

struct Syndrome {
    std::vector<double> s;
};

CarrierBasis make_carriers(int n, int N, std::uint64_t seed);

std::vector<double> embed(const std::vector<double>& host, const CarrierBasis& carriers,
                          const BinaryCode& code, int user);

std::vector<double> forge(const BinaryCode& code, const Coalition& coalition,
                          const std::vector<double>& host, const CarrierBasis& carriers,
                          const NoiseSpec& noise);

Syndrome extract_syndrome(const std::vector<double>& y, const std::vector<double>& host,
                          const CarrierBasis& carriers);

// Seeded Gaussian host scaled to ||x|| = 100*sqrt(n).
std::vector<double> make_host(int N, int n, std::uint64_t seed);

}  // namespace fptrace
