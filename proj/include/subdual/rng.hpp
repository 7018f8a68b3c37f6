#ifndef SUBDUAL_RNG_HPP
#define SUBDUAL_RNG_HPP

#include <cstdint>
#include <random>

#include "subdual/rational.hpp"

namespace subdual {

/// Deterministic seeded source of rationals. Built on the standardized
/// mt19937_64 bit stream so that identical seeds give identical values on
/// every platform; no std::*_distribution is used because those are
/// implementation defined.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_raw() { return gen_(); }

    /// Uniform integer in [0, n), n > 0, via rejection sampling.
    std::uint64_t next_index(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t raw = gen_();
        while (raw >= limit) raw = gen_();
        return raw % n;
    }

    bool next_bool() { return (gen_() & 1u) != 0; }

    /// Uniform rational on the grid lo + k*(hi-lo)/granularity, k = 0..granularity.
    Rational rational_in(const Rational& lo, const Rational& hi, std::uint64_t granularity = 4096) {
        std::uint64_t k = next_index(granularity + 1);
        return lo + (hi - lo) * Rational(k) / Rational(granularity);
    }

private:
    std::mt19937_64 gen_;
};

} // namespace subdual

#endif // SUBDUAL_RNG_HPP
