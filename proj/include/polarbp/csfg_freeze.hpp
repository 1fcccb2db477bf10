#pragma once
// Connected-sub-factor-graph freezing. The sub-graph rooted at PE stage s
// spans rows [b*sz, (b+1)*sz), sz = n>>(s+1), over node stages s+1..m; its
// inputs are R(s+1, .) on those rows and it computes a self-contained polar
// code of length sz. When the hard decision of those inputs maps to a
// source block that satisfies every frozen position, that block is the
// exact block-wise ML decision, so it is committed, the boundary L messages
// are saturated, and the interior PEs go quiet.

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "polarbp/bp_core.hpp"
#include "polarbp/polar_code.hpp"

namespace polarbp {

struct BlockRef {
    int stage = 0;  // PE stage s, 0-based
    int index = 0;  // block index at this stage, 0-based, < 2^(s+1)
    int start = 0;  // first row, 0-based
    int size = 0;   // rows covered, n >> (stage+1)
};

struct FreezeEvent {
    int iteration = 0;  // 1-based
    int stage = 0;      // 0-based
    int block = 0;      // 0-based
    int start = 0;      // 0-based row
    int size = 0;
    Bits x_hat;         // hard-decision sub-graph input committed at freeze time
};

inline constexpr int kNotFrozen = std::numeric_limits<int>::max();

struct FreezeState {
    int n = 0;
    int frontier = 0;               // decided source rows form the prefix [0, frontier)
    std::vector<int> freeze_stage;  // per row: shallowest stage that froze it, else kNotFrozen
    Bits decided_u;
    std::vector<FreezeEvent> events;

    explicit FreezeState(int n_)
        : n(n_), freeze_stage(n_, kNotFrozen), decided_u(n_, 0) {}
};

// The stage-s block containing the first undecided row. Requires
// frontier < n.
BlockRef candidate_block(const FreezeState& freeze, int stage);

struct CsfgDecision {
    Bits x_hat;  // hard decision of the block's R inputs
    Bits u_hat;  // x_hat * F^{(x)log2(size)}, the block's source word
};

// Hard-decide r_block, transform to the source side, accept iff every
// frozen position in the block came out 0. The accepted u_hat is the ML
// decision for the sub-code under the input LLRs, with likelihood metric
// sum(|r_block|).
std::optional<CsfgDecision> freeze_decision(std::span<const double> r_block,
                                            std::span<const std::uint8_t> frozen_block);

// freeze_decision applied to R(block.stage+1, .) over the block's rows.
std::optional<CsfgDecision> check_csfg(const MessageState& state,
                                       const PolarCode& code, const BlockRef& block);

// Brute-force block ML decision: enumerate every source word that is 0 at
// the frozen positions, score sum((1-2x[i]) * r_block[i]) with
// x = u * F^{(x)log2(size)}, return the maximizer; ties pick the
// lexicographically smallest u. Test oracle, not used by the decoder.
// Throws if the candidate count exceeds max_candidates.
Bits mld_oracle(std::span<const double> r_block,
                std::span<const std::uint8_t> frozen_block,
                long long max_candidates = 1ll << 20);
Bits mld_oracle(std::span<const double> r_block, const PolarCode& code,
                const BlockRef& block, long long max_candidates = 1ll << 20);

// Commit a decision: saturate L(stage+1, r) to +LLR_CAP where x_hat is 0
// and -LLR_CAP where it is 1, lower freeze_stage to this stage, overwrite
// decided_u over the block (an enclosing freeze supersedes earlier
// sub-block decisions), and advance the frontier to the block end.
void apply_freeze(MessageState& state, FreezeState& freeze, const BlockRef& block,
                  const CsfgDecision& decision, int iteration);

// A PE is inactive iff it lies strictly inside a frozen sub-graph: stage s
// is inactive at top row r iff s > freeze_stage[r]. Boundary PEs (s equal
// to the freeze stage) keep running and feed the saturated L back toward
// the channel.
bool is_pe_active(const FreezeState& freeze, int stage, int top_row);

// BP decoding with progressive sub-graph freezing. Per iteration, per
// stage: run the stage's active PEs, then test the candidate block at this
// stage against the fresh R values, freezing and advancing the frontier on
// success. At most one candidate is decided per stage per iteration; the
// next candidate at the same stage is not visited until a later pass has
// folded the saturated feedback of the previous freeze into its inputs.
// Checking an unconditioned sibling immediately would commit hard
// decisions that are missing half their evidence, which wrecks the frame
// error rate while saving almost nothing.
//
// Terminates once the frontier covers every row (stop_reason
// csfg_complete), when the running word re-encodes to the channel-side
// hard decisions (gmatrix_converged, same test decode_gmatrix uses but
// with decided rows pinned), or after max_iter iterations. In the latter
// two cases rows past the frontier fall back to hard_output.
DecodeOutcome decode_csfg(const PolarCode& code, std::span<const double> llrs,
                          double alpha, int max_iter,
                          std::vector<FreezeEvent>* events = nullptr);

}  // namespace polarbp
