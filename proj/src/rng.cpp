#include "qwsr/rng.hpp"

#include <cmath>
#include <sstream>

#include "qwsr/common.hpp"

namespace qwsr {

double Rng::normal() {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

int Rng::uniform_int(int n) {
    require(n > 0, "uniform_int: n must be positive");
    // Rejection-free modulo is fine here: n is tiny compared to 2^64.
    return static_cast<int>(eng_() % static_cast<uint64_t>(n));
}

void Rng::fill_normal(std::vector<double>& out, double sigma) {
    for (double& x : out) x = sigma * normal();
}

std::string Rng::save_state() const {
    std::ostringstream os;
    os << eng_;
    return os.str();
}

void Rng::restore_state(const std::string& s) {
    std::istringstream is(s);
    is >> eng_;
    require(!is.fail(), "Rng: bad serialized state");
}

uint64_t mix_seed(uint64_t base, uint64_t stream) {
    uint64_t z = base + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

uint64_t fnv1a(const void* data, size_t n, uint64_t h) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

uint64_t fnv1a_str(const std::string& s, uint64_t h) {
    return fnv1a(s.data(), s.size(), h);
}

}  // namespace qwsr
