// prng.hpp - counter-based deterministic random number generator.
//
// Every random decision in the project flows through one of these, derived
// from a single 64-bit seed plus a stream name. No global state, identical
// output on every platform.

#ifndef SPANNER_PRNG_HPP
#define SPANNER_PRNG_HPP

#include <cstdint>
#include <string_view>

namespace spanner {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// FNV-1a, used to turn stream names into salt values.
inline uint64_t hash_name(std::string_view name) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : name) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Counter-based generator: value i of stream (seed, salt) is a pure function
// of (seed, salt, i), so state never has to be serialized.
class Prng {
public:
    Prng(uint64_t seed, std::string_view stream)
        : seed_(seed), salt_(hash_name(stream)) {}
    Prng(uint64_t seed, uint64_t salt) : seed_(seed), salt_(salt) {}

    uint64_t next_u64() {
        return splitmix64(seed_ ^ (salt_ * 0xd1342543de82ef95ULL) ^ splitmix64(counter_++));
    }

    // Uniform in [0, bound). Rejection sampling keeps it exactly uniform.
    uint64_t below(uint64_t bound) {
        if (bound <= 1) return 0;
        uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % bound;
    }

    // Uniform in [0,1) with 53 bits of precision.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_unit() < p; }

    // Independent child stream, e.g. one per protocol phase.
    Prng fork(std::string_view stream) const {
        return Prng(splitmix64(seed_ ^ salt_), hash_name(stream));
    }

private:
    uint64_t seed_;
    uint64_t salt_;
    uint64_t counter_ = 0;
};

} // namespace spanner

#endif
