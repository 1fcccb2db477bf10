#pragma once
// BPSK over AWGN with deterministic per-trial random streams. Positive LLR
// favors bit 0.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "polarbp/polar_code.hpp"

namespace polarbp {

struct ChannelConfig {
    double ebn0_db = 0.0;
    double rate = 0.5;
    bool noiseless = false;  // test hook: LLRs computed from clean symbols
};

// sigma^2 = 1 / (2 * rate * 10^(ebn0_db/10)), Eb/N0 convention.
double noise_variance(double ebn0_db, double rate);

// Independent stream per (master seed, trial index): a splitmix64-style
// mix of the pair seeds one mt19937_64. Changing the trial index changes
// the whole stream; worker scheduling cannot affect it.
class TrialRng {
public:
    TrialRng(std::uint64_t master_seed, std::uint64_t trial);

    // Standard normal via Box-Muller, cosine branch only. Two engine draws
    // per sample, so the stream layout is fixed.
    double gaussian();
    std::uint8_t bit();
    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

// 0 -> +1.0, 1 -> -1.0
std::vector<double> modulate_bpsk(const Bits& x);

// y = s + sigma*g, LLR = 2y/sigma^2. With config.noiseless, g = 0.
std::vector<double> transmit_awgn(std::span<const double> symbols,
                                  const ChannelConfig& config, TrialRng& rng);

}  // namespace polarbp
