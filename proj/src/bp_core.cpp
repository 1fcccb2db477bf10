#include "polarbp/bp_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polarbp/csfg_freeze.hpp"

namespace polarbp {

namespace {

inline double sgn(double v) { return v < 0.0 ? -1.0 : 1.0; }
inline double clamp_llr(double v) { return std::clamp(v, -LLR_CAP, LLR_CAP); }

}  // namespace

PeOutputs pe_update(const PeInputs& in, double alpha) {
    // cross couples the two straight-through lines; sum_bot is the bottom
    // line's combined belief seen from the top line.
    const double cross = alpha * sgn(in.l_top) * sgn(in.r_top) *
                         std::min(std::fabs(in.l_top), std::fabs(in.r_top));
    const double sum_bot = in.l_bot + in.r_bot;
    PeOutputs out;
    out.l_top = clamp_llr(alpha * sgn(in.l_top) * sgn(sum_bot) *
                          std::min(std::fabs(in.l_top), std::fabs(sum_bot)));
    out.l_bot = clamp_llr(in.l_bot + cross);
    out.r_top = clamp_llr(alpha * sgn(in.r_top) * sgn(sum_bot) *
                          std::min(std::fabs(in.r_top), std::fabs(sum_bot)));
    out.r_bot = clamp_llr(in.r_bot + cross);
    return out;
}

const char* to_string(StopReason reason) {
    switch (reason) {
        case StopReason::max_iter: return "max_iter";
        case StopReason::gmatrix_converged: return "gmatrix_converged";
        case StopReason::csfg_complete: return "csfg_complete";
    }
    return "?";
}

MessageState init_state(const PolarCode& code, std::span<const double> channel_llrs) {
    if (static_cast<int>(channel_llrs.size()) != code.n)
        throw std::invalid_argument("init_state: LLR length != n");
    MessageState st;
    st.n = code.n;
    st.m = code.m;
    st.l_msg.assign(static_cast<size_t>(code.m + 1) * code.n, 0.0);
    st.r_msg.assign(static_cast<size_t>(code.m + 1) * code.n, 0.0);
    for (int r = 0; r < code.n; ++r) {
        st.r(0, r) = clamp_llr(channel_llrs[r]);
        if (code.frozen[r]) st.l(code.m, r) = LLR_CAP;
    }
    return st;
}

long long stage_pass(MessageState& state, double alpha, int stage,
                     const FreezeState* freeze) {
    const int n = state.n;
    const int d = n >> (stage + 1);
    double* ls = &state.l(stage, 0);
    double* ls1 = &state.l(stage + 1, 0);
    double* rs = &state.r(stage, 0);
    double* rs1 = &state.r(stage + 1, 0);
    long long count = 0;
    for (int base = 0; base < n; base += 2 * d) {
        for (int r = base; r < base + d; ++r) {
            if (freeze && !is_pe_active(*freeze, stage, r)) continue;
            const PeOutputs out =
                pe_update({ls1[r], ls1[r + d], rs[r], rs[r + d]}, alpha);
            ls[r] = out.l_top;
            ls[r + d] = out.l_bot;
            rs1[r] = out.r_top;
            rs1[r + d] = out.r_bot;
            ++count;
        }
    }
    return count;
}

long long sweep(MessageState& state, double alpha, const FreezeState* freeze) {
    long long count = 0;
    for (int s = 0; s < state.m; ++s) count += stage_pass(state, alpha, s, freeze);
    return count;
}

Bits hard_output(const MessageState& state, const PolarCode& code) {
    Bits u(code.n, 0);
    for (int r = 0; r < code.n; ++r)
        if (!code.frozen[r] && state.r(code.m, r) < 0.0) u[r] = 1;
    return u;
}

bool gmatrix_converged(const MessageState& state, const PolarCode& code) {
    Bits x = polar_transform(hard_output(state, code));
    for (int r = 0; r < code.n; ++r) {
        const std::uint8_t x_hat = (state.r(0, r) + state.l(0, r)) < 0.0 ? 1 : 0;
        if (x_hat != x[r]) return false;
    }
    return true;
}

namespace {

DecodeOutcome finish(const PolarCode& code, const MessageState& state, int iters,
                     long long activations, StopReason reason) {
    DecodeOutcome out;
    out.u_hat = hard_output(state, code);
    out.info_bits = extract_info_bits(code, out.u_hat);
    out.iterations_used = iters;
    out.pe_activations = activations;
    out.stop_reason = reason;
    return out;
}

}  // namespace

DecodeOutcome decode_baseline(const PolarCode& code, std::span<const double> llrs,
                              double alpha, int max_iter) {
    MessageState st = init_state(code, llrs);
    long long activations = 0;
    for (int t = 1; t <= max_iter; ++t) activations += sweep(st, alpha);
    return finish(code, st, max_iter, activations, StopReason::max_iter);
}

DecodeOutcome decode_gmatrix(const PolarCode& code, std::span<const double> llrs,
                             double alpha, int max_iter) {
    MessageState st = init_state(code, llrs);
    long long activations = 0;
    for (int t = 1; t <= max_iter; ++t) {
        activations += sweep(st, alpha);
        if (gmatrix_converged(st, code))
            return finish(code, st, t, activations, StopReason::gmatrix_converged);
    }
    return finish(code, st, max_iter, activations, StopReason::max_iter);
}

}  // namespace polarbp
