#pragma once
// Min-sum belief propagation on the polar factor graph: message storage,
// the scaled processing-element update, stage sweeps, hard decisions, the
// fixed-iteration decoder and G-matrix early stopping.
//
// Conventions (0-based internally): rows r in [0,n); node stages s in
// [0,m], where s=0 holds the channel LLRs and s=m faces the source word.
// PE stage s in [0,m) couples rows (r, r+d), d = n>>(s+1), for every r
// with (r & d) == 0, and connects node stages s and s+1.

#include <cstdint>
#include <span>
#include <vector>

#include "polarbp/polar_code.hpp"

namespace polarbp {

// Saturation value standing in for +-infinity; large enough to dominate
// any finite channel LLR, finite so that sums never produce NaN.
inline constexpr double LLR_CAP = 1e30;

struct PeInputs {
    double l_top, l_bot;  // L at stage s+1, rows r and r+d (previous iteration)
    double r_top, r_bot;  // R at stage s, rows r and r+d (current iteration)
};

struct PeOutputs {
    double l_top, l_bot;  // L at stage s, rows r and r+d
    double r_top, r_bot;  // R at stage s+1, rows r and r+d
};

// Scaled min-sum update. alpha multiplies only the min-sum product terms,
// never the pass-through summands. All outputs clamped to +-LLR_CAP.
// sign(0) = +1.
PeOutputs pe_update(const PeInputs& in, double alpha);

struct MessageState {
    int n = 0, m = 0;
    std::vector<double> l_msg, r_msg;  // (m+1)*n each, stage-major

    double& l(int stage, int row) { return l_msg[static_cast<size_t>(stage) * n + row]; }
    const double& l(int stage, int row) const { return l_msg[static_cast<size_t>(stage) * n + row]; }
    double& r(int stage, int row) { return r_msg[static_cast<size_t>(stage) * n + row]; }
    const double& r(int stage, int row) const { return r_msg[static_cast<size_t>(stage) * n + row]; }
};

enum class StopReason { max_iter, gmatrix_converged, csfg_complete };
const char* to_string(StopReason reason);

struct DecodeOutcome {
    Bits u_hat;                    // 0 at every frozen position
    Bits info_bits;                // u_hat at unfrozen positions, ascending
    int iterations_used = 0;
    long long pe_activations = 0;
    StopReason stop_reason = StopReason::max_iter;
};

struct FreezeState;  // csfg_freeze.hpp

// R at stage 0 = channel LLRs; L at stage m = +LLR_CAP at frozen rows,
// 0 at information rows; everything else 0.
MessageState init_state(const PolarCode& code, std::span<const double> channel_llrs);

// One pass over the PEs of a single stage, computing all four outputs per
// active PE. Returns the number of PEs executed. freeze == nullptr means
// every PE is active.
long long stage_pass(MessageState& state, double alpha, int stage,
                     const FreezeState* freeze);

// One full iteration: stages 0..m-1 in order, so R consumed at stage s is
// already current for this iteration while L comes from the previous one.
// Never touches R at stage 0 or L at stage m.
long long sweep(MessageState& state, double alpha,
                const FreezeState* freeze = nullptr);

// u_hat[r] = 0 if frozen, else 0 iff R(m, r) >= 0.
Bits hard_output(const MessageState& state, const PolarCode& code);

// Early-stop test: u_hat from hard_output, x_hat[r] from the sign of
// R(0,r) + L(0,r); converged iff x_hat == u_hat * F^{(x)m}.
bool gmatrix_converged(const MessageState& state, const PolarCode& code);

DecodeOutcome decode_baseline(const PolarCode& code, std::span<const double> llrs,
                              double alpha, int max_iter);
DecodeOutcome decode_gmatrix(const PolarCode& code, std::span<const double> llrs,
                             double alpha, int max_iter);

}  // namespace polarbp
