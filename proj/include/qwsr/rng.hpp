#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace qwsr {

// Deterministic random source. The engine is std::mt19937_64 (fully specified
// by the standard); uniform and normal variates are derived by hand so runs
// reproduce bit-for-bit and reference oracles can mirror the stream.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next_u64() { return eng_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller. Consumes exactly two engine draws,
    // no cached spare.
    double normal();

    // Uniform integer in [0, n). n must be > 0.
    int uniform_int(int n);

    void fill_normal(std::vector<double>& out, double sigma = 1.0);

    std::string save_state() const;
    void restore_state(const std::string& s);

private:
    std::mt19937_64 eng_;
};

// splitmix64 step; used to derive independent per-item seeds from a base seed.
uint64_t mix_seed(uint64_t base, uint64_t stream);

// FNV-1a over arbitrary bytes; stable across platforms.
uint64_t fnv1a(const void* data, size_t n, uint64_t h = 0xcbf29ce484222325ull);
uint64_t fnv1a_str(const std::string& s, uint64_t h = 0xcbf29ce484222325ull);

}  // namespace qwsr
