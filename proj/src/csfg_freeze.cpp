#include "polarbp/csfg_freeze.hpp"

#include <cassert>
#include <stdexcept>

namespace polarbp {

BlockRef candidate_block(const FreezeState& freeze, int stage) {
    assert(freeze.frontier < freeze.n);
    BlockRef blk;
    blk.stage = stage;
    blk.size = freeze.n >> (stage + 1);
    blk.index = freeze.frontier / blk.size;
    blk.start = blk.index * blk.size;
    return blk;
}

std::optional<CsfgDecision> freeze_decision(std::span<const double> r_block,
                                            std::span<const std::uint8_t> frozen_block) {
    const size_t len = r_block.size();
    if (len != frozen_block.size())
        throw std::invalid_argument("freeze_decision: span length mismatch");
    CsfgDecision dec;
    dec.x_hat.resize(len);
    for (size_t i = 0; i < len; ++i) dec.x_hat[i] = r_block[i] < 0.0 ? 1 : 0;
    dec.u_hat = polar_transform(dec.x_hat);
    for (size_t i = 0; i < len; ++i)
        if (frozen_block[i] && dec.u_hat[i] != 0) return std::nullopt;
    return dec;
}

std::optional<CsfgDecision> check_csfg(const MessageState& state,
                                       const PolarCode& code, const BlockRef& block) {
    const std::span<const double> r_block{&state.r(block.stage + 1, block.start),
                                          static_cast<size_t>(block.size)};
    const std::span<const std::uint8_t> frozen_block{code.frozen.data() + block.start,
                                                     static_cast<size_t>(block.size)};
    return freeze_decision(r_block, frozen_block);
}

Bits mld_oracle(std::span<const double> r_block,
                std::span<const std::uint8_t> frozen_block, long long max_candidates) {
    const int len = static_cast<int>(r_block.size());
    if (len != static_cast<int>(frozen_block.size()))
        throw std::invalid_argument("mld_oracle: span length mismatch");
    if (!is_power_of_two(len)) throw std::invalid_argument("mld_oracle: length must be a power of two");

    std::vector<int> free_pos;
    for (int i = 0; i < len; ++i)
        if (!frozen_block[i]) free_pos.push_back(i);
    const int nfree = static_cast<int>(free_pos.size());
    if (nfree >= 62 || (1ll << nfree) > max_candidates)
        throw std::invalid_argument("mld_oracle: candidate budget exceeded");

    Bits best_u;
    double best_score = 0.0;
    Bits u(len, 0);
    // Counter bits map MSB-first onto the free positions in index order, so
    // candidates come out in lexicographic u order and keeping only strict
    // improvements leaves the lexicographically smallest maximizer.
    for (long long c = 0; c < (1ll << nfree); ++c) {
        for (int q = 0; q < nfree; ++q)
            u[free_pos[q]] = static_cast<std::uint8_t>((c >> (nfree - 1 - q)) & 1);
        const Bits x = polar_transform(u);
        double score = 0.0;
        for (int i = 0; i < len; ++i) score += (x[i] ? -1.0 : 1.0) * r_block[i];
        if (best_u.empty() || score > best_score) {
            best_u = u;
            best_score = score;
        }
    }
    return best_u;
}

Bits mld_oracle(std::span<const double> r_block, const PolarCode& code,
                const BlockRef& block, long long max_candidates) {
    const std::span<const std::uint8_t> frozen_block{code.frozen.data() + block.start,
                                                     static_cast<size_t>(block.size)};
    return mld_oracle(r_block, frozen_block, max_candidates);
}

void apply_freeze(MessageState& state, FreezeState& freeze, const BlockRef& block,
                  const CsfgDecision& decision, int iteration) {
    for (int i = 0; i < block.size; ++i) {
        const int r = block.start + i;
        state.l(block.stage + 1, r) = decision.x_hat[i] ? -LLR_CAP : LLR_CAP;
        freeze.freeze_stage[r] = std::min(freeze.freeze_stage[r], block.stage);
        freeze.decided_u[r] = decision.u_hat[i];
    }
    freeze.frontier = block.start + block.size;
    freeze.events.push_back({iteration, block.stage, block.index, block.start,
                             block.size, decision.x_hat});
}

bool is_pe_active(const FreezeState& freeze, int stage, int top_row) {
    return stage <= freeze.freeze_stage[top_row];
}

DecodeOutcome decode_csfg(const PolarCode& code, std::span<const double> llrs,
                          double alpha, int max_iter,
                          std::vector<FreezeEvent>* events) {
    MessageState st = init_state(code, llrs);
    FreezeState fz(code.n);
    long long activations = 0;
    int iters = 0;
    bool converged = false;
    for (int t = 1; t <= max_iter && fz.frontier < code.n && !converged; ++t) {
        iters = t;
        for (int s = 0; s < code.m && fz.frontier < code.n; ++s) {
            activations += stage_pass(st, alpha, s, &fz);
            // The stage-s pass has just refreshed R(s+1, .) over every
            // still-undecided row, so the candidate decision uses current
            // values. One decision per stage per iteration; the candidate
            // after a success waits until a later pass has folded the new
            // saturations into its inputs.
            const BlockRef blk = candidate_block(fz, s);
            if (const auto dec = check_csfg(st, code, blk))
                apply_freeze(st, fz, blk, *dec, t);
        }
        if (fz.frontier < code.n) {
            // Convergence test of decode_gmatrix with decided rows pinned:
            // stop when the running source word re-encodes to the
            // channel-side hard decisions.
            Bits u_now = hard_output(st, code);
            for (int r = 0; r < fz.frontier; ++r) u_now[r] = fz.decided_u[r];
            const Bits x_now = polar_transform(u_now);
            converged = true;
            for (int r = 0; r < code.n; ++r) {
                const std::uint8_t x_ch = st.r(0, r) + st.l(0, r) < 0.0 ? 1 : 0;
                if (x_ch != x_now[r]) {
                    converged = false;
                    break;
                }
            }
        }
    }

    DecodeOutcome out;
    out.iterations_used = iters;
    out.pe_activations = activations;
    if (fz.frontier >= code.n) {
        out.stop_reason = StopReason::csfg_complete;
        out.u_hat = fz.decided_u;
    } else {
        out.stop_reason = converged ? StopReason::gmatrix_converged : StopReason::max_iter;
        out.u_hat = hard_output(st, code);
        for (int r = 0; r < fz.frontier; ++r) out.u_hat[r] = fz.decided_u[r];
    }
    out.info_bits = extract_info_bits(code, out.u_hat);
    if (events) *events = std::move(fz.events);
    return out;
}

}  // namespace polarbp
