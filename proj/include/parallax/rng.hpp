#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace parallax {

// Counter-seeded generator with platform-independent output. All sampling in
// the engine goes through this so that a (seed, stream) pair reproduces the
// same values regardless of thread count or standard library.
class rng {
public:
    explicit rng(uint64_t seed, uint64_t stream = 0) {
        // splitmix64 expansion of the (seed, stream) pair into xoshiro state
        uint64_t x = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
        for (auto& s : state_) {
            x += 0x9e3779b97f4a7c15ULL;
            uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            s = z ^ (z >> 31);
        }
        have_spare_ = false;
        spare_ = 0.0;
    }

    uint64_t next_u64() {
        // xoshiro256**
        auto rotl = [](uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
        uint64_t result = rotl(state_[1] * 5, 7) * 9;
        uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform in [0, 1)
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // standard normal via Box-Muller (deterministic, no library distribution)
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform01();
        } while (u1 <= 0.0);
        double u2 = uniform01();
        double mag = std::sqrt(-2.0 * std::log(u1));
        double two_pi = 6.283185307179586476925286766559;
        spare_ = mag * std::sin(two_pi * u2);
        have_spare_ = true;
        return mag * std::cos(two_pi * u2);
    }

    // uniform direction on the unit sphere in R^dim
    std::vector<double> unit_vector(std::size_t dim) {
        std::vector<double> v(dim);
        while (true) {
            double norm2 = 0.0;
            for (auto& c : v) {
                c = normal();
                norm2 += c * c;
            }
            if (norm2 > 1e-24) {
                double inv = 1.0 / std::sqrt(norm2);
                for (auto& c : v) c *= inv;
                return v;
            }
        }
    }

    // uniform point in the closed ball of given radius in R^dim
    std::vector<double> in_ball(std::size_t dim, double radius) {
        auto v = unit_vector(dim);
        double r = radius * std::pow(uniform01(), 1.0 / static_cast<double>(dim));
        for (auto& c : v) c *= r;
        return v;
    }

private:
    uint64_t state_[4];
    bool have_spare_;
    double spare_;
};

// Stable derivation of per-task streams from a master seed. Tasks indexed by
// (phase, item) draw from independent streams, so parallel schedules and
// nested budget reruns see identical sample prefixes.
inline uint64_t derive_stream(uint64_t phase, uint64_t item) {
    return phase * 0x100000001b3ULL + item;
}

} // namespace parallax
