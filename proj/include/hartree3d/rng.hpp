#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace hartree3d {

// Deterministic random source. Only mt19937_64 plus explicit arithmetic is
// used (std::uniform_real_distribution / normal_distribution are
// implementation-defined, which would break byte-identical reruns).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    std::complex<double> complex_uniform() {
        double re = uniform(-1.0, 1.0);
        double im = uniform(-1.0, 1.0);
        return {re, im};
    }

    // Uniform integer in [0, n).
    std::uint64_t index(std::uint64_t n) {
        // Rejection-free modulo bias is irrelevant for n << 2^64 lattice sizes,
        // but keep the draw well-defined and reproducible.
        return gen_() % n;
    }

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

} // namespace hartree3d
