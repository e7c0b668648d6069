#ifndef COPTAIL_RNG_HPP
#define COPTAIL_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace coptail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double normal_quantile(double p); // normal.hpp

// Seeded stream of variates. Independent streams for the same seed are
// derived by hashing (seed, stream_id), so workers can own disjoint streams
// and the output never depends on the worker count. All transforms are
// explicit inverse-CDF style, so sequences are identical across platforms.
class rng_stream {
public:
    explicit rng_stream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : gen_(splitmix64(splitmix64(seed) ^ splitmix64(~stream_id))) {}

    // uniform on the open interval (0,1)
    double uniform01() {
        return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double exponential(double rate) {
        return -std::log(uniform01()) / rate;
    }

    double normal() { return normal_quantile(uniform01()); }

    // Marsaglia-Tsang; shape < 1 handled by the boost trick.
    double gamma(double shape) {
        if (shape < 1.0) {
            double u = uniform01();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        while (true) {
            double x = normal();
            double v = 1.0 + c * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            double u = uniform01();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

} // namespace coptail

#endif
