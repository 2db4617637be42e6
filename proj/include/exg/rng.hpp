#pragma once

// Seedable variate generation.
//
// Generator: xoshiro256**, state seeded from a 64-bit
// seed through splitmix64. Sub-streams are produced with the generator's
// jump function, which advances the state by 2^128 draws, so streams split
// from one root never overlap in practice.
//
// Variates:
//   drand        53 high bits of the next output, times 2^-53, in [0, 1)
//   drand_exp    -tau * log1p(-drand)             (inverse CDF)
//   drand_gauss  mu + sigma * Phi^-1((k + 1/2) 2^-53), k the 53 high bits
//                (inverse CDF, AS 241 quantile; one output per variate)
//   drand_exg    drand_gauss(mu, sigma) + drand_exp(tau), drawn in that
//                order from the same stream

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "exg/error.hpp"
#include "exg/params.hpp"
#include "exg/special.hpp"

namespace exg {

class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : seed_(seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next() noexcept {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Advance by 2^128 draws.
    void jump() noexcept {
        constexpr std::array<std::uint64_t, 4> poly = {0x180ec6d33cfd0aba, 0xd5a61266f0c9392c,
                                                       0xa9582618e03fc9aa, 0x39abdc4529b1661c};
        std::array<std::uint64_t, 4> acc{};
        for (const auto word : poly) {
            for (int bit = 0; bit < 64; ++bit) {
                if (word & (std::uint64_t{1} << bit)) {
                    for (int i = 0; i < 4; ++i) acc[i] ^= state_[i];
                }
                next();
            }
        }
        state_ = acc;
    }

    /// `count` independent streams: the first is this stream jumped once,
    /// each following one is jumped once more. This stream is left jumped
    /// past all of them.
    std::vector<RngStream> split(std::size_t count) {
        std::vector<RngStream> out;
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            jump();
            out.push_back(*this);
        }
        return out;
    }

    friend bool operator==(const RngStream&, const RngStream&) = default;

private:
    static std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

    static std::uint64_t splitmix64(std::uint64_t& x) noexcept {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9;
        z = (z ^ (z >> 27)) * 0x94d049bb133111eb;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::array<std::uint64_t, 4> state_{};
};

/// Uniform on [0, 1).
inline double drand(RngStream& rng) noexcept {
    return static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
}

/// Exponential with mean `tau`.
inline double drand_exp(RngStream& rng, double tau) {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw parameter_error("drand_exp: tau must be positive");
    return -tau * std::log1p(-drand(rng));
}

/// Gaussian with mean `mu` and standard deviation `sigma`.
inline double drand_gauss(RngStream& rng, double mu, double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw parameter_error("drand_gauss: sigma must be positive");
    const double u = (static_cast<double>(rng.next() >> 11) + 0.5) * 0x1.0p-53;
    return mu + sigma * normal_quantile(u);
}

/// Ex-Gaussian variate as the sum of a Gaussian and an exponential draw.
inline double drand_exg(RngStream& rng, const ExGaussParams& p) {
    const double g = drand_gauss(rng, p.mu(), p.sigma());
    return g + drand_exp(rng, p.tau());
}

/// `n` ex-Gaussian variates.
inline std::vector<double> sample_exg(RngStream& rng, const ExGaussParams& p, std::size_t n) {
    std::vector<double> out(n);
    for (auto& x : out) x = drand_exg(rng, p);
    return out;
}

}  // namespace exg
