#pragma once

#include <cstdint>

namespace fptrace {

// SplitMix64 with the standard published constants; the pinned generator
// for every stochastic routine in this project.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in (0,1)
    double next_unit() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1p-53; }

    // uniform integer in [0, bound)
    std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

private:
    std::uint64_t state_;
};

}  // namespace fptrace
