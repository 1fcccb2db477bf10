#include "polarbp/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace polarbp {

double noise_variance(double ebn0_db, double rate) {
    if (!(rate > 0.0 && rate <= 1.0))
        throw std::invalid_argument("noise_variance: rate must be in (0,1]");
    if (!std::isfinite(ebn0_db))
        throw std::invalid_argument("noise_variance: ebn0_db must be finite");
    return 1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0));
}

namespace {

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

}  // namespace

TrialRng::TrialRng(std::uint64_t master_seed, std::uint64_t trial)
    : gen_(mix64(master_seed + 0x9E3779B97F4A7C15ULL * (trial + 1))) {}

double TrialRng::gaussian() {
    // u1 in (0,1], u2 in [0,1); 53-bit mantissas
    const double u1 = static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
    const double u2 = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint8_t TrialRng::bit() { return static_cast<std::uint8_t>(gen_() >> 63); }

std::vector<double> modulate_bpsk(const Bits& x) {
    std::vector<double> s(x.size());
    for (size_t i = 0; i < x.size(); ++i) s[i] = x[i] ? -1.0 : 1.0;
    return s;
}

std::vector<double> transmit_awgn(std::span<const double> symbols,
                                  const ChannelConfig& config, TrialRng& rng) {
    const double sigma2 = noise_variance(config.ebn0_db, config.rate);
    const double sigma = std::sqrt(sigma2);
    const double scale = 2.0 / sigma2;
    std::vector<double> llr(symbols.size());
    for (size_t i = 0; i < symbols.size(); ++i) {
        const double y = config.noiseless ? symbols[i] : symbols[i] + sigma * rng.gaussian();
        llr[i] = scale * y;
    }
    return llr;
}

}  // namespace polarbp
