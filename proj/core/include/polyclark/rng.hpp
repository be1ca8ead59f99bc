#pragma once

#include <complex>
#include <cstdint>

namespace polyclark {

// Deterministic splittable RNG. All randomness in the library flows from a
// single 64-bit seed; independent streams are derived by hashing (seed, tag,
// index), so results depend only on the seed and never on thread count or
// evaluation order.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // standard normal via Box-Muller; self-contained so streams are
    // bit-reproducible across standard libraries
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        constexpr double two_pi = 6.283185307179586476925286766559;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

    std::complex<double> complex_normal() {
        double re = normal();
        double im = normal();
        return {re, im};
    }

    std::complex<double> unit_circle() {
        constexpr double two_pi = 6.283185307179586476925286766559;
        double t = two_pi * uniform();
        return {std::cos(t), std::sin(t)};
    }
};

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
    SplitMix64 h(seed ^ (0x632be59bd9b4e019ULL * (tag + 1)));
    h.state += 0xd1b54a32d192ed03ULL * index;
    h.next();
    return h.next();
}

// substream for element `index` of the stream tagged `tag`
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
    return SplitMix64(mix_seed(seed, tag, index));
}

}  // namespace polyclark
