#pragma once
// Monte Carlo comparison harness. Every decoder sees the identical channel
// realization for a given (seed, trial), trials are aggregated in index
// order in fixed-size batches, and the stop rule is evaluated on batch
// boundaries, so results are byte-identical for any worker count.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "polarbp/bp_core.hpp"
#include "polarbp/csfg_freeze.hpp"
#include "polarbp/polar_code.hpp"

namespace polarbp {

enum class DecoderKind { baseline, gmatrix, csfg };
const char* to_string(DecoderKind kind);
DecoderKind parse_decoder(const std::string& name);

struct SimConfig {
    PolarCode code;
    std::string code_source;  // how the frozen set was obtained, for the JSON report
    std::vector<DecoderKind> decoders{DecoderKind::baseline, DecoderKind::gmatrix,
                                      DecoderKind::csfg};
    std::vector<double> snr_db;      // Eb/N0 points
    double alpha = 0.9375;
    int max_iter = 40;
    int min_frame_errors = 100;      // per decoder; stop rule
    long long max_frames = 100000;   // hard cap per SNR point
    std::uint64_t seed = 1;
    int workers = 1;
    bool noiseless = false;
};

struct PointStats {
    DecoderKind decoder = DecoderKind::baseline;
    double snr_db = 0.0;
    long long frames = 0;
    long long bit_errors = 0;    // over information positions only
    long long frame_errors = 0;
    double ber = 0.0;
    double fer = 0.0;
    double fer_ci95 = 0.0;
    double avg_iters = 0.0;
    double iters_ci95 = 0.0;
    double avg_pe_activations = 0.0;
    double norm_computations = 0.0;  // avg_pe_activations / (max_iter * m * n/2)
    bool low_confidence = false;     // stopped by max_frames short of min_frame_errors
};

// Called per freeze event of csfg decodes when tracing; forces the point
// to run single-threaded.
using TraceSink = std::function<void(long long trial, const FreezeEvent&)>;

// One SNR point, all configured decoders, paired trials. Rows follow the
// configured decoder order.
std::vector<PointStats> run_point(const SimConfig& config, double snr_db,
                                  const TraceSink* trace = nullptr);
std::vector<PointStats> run_sweep(const SimConfig& config,
                                  const TraceSink* trace = nullptr);

std::string results_csv(std::span<const PointStats> rows);
std::vector<PointStats> parse_results_csv(const std::string& text);
std::string results_json(const SimConfig& config, std::span<const PointStats> rows);

struct SavingsRow {
    double snr_db = 0.0;
    double iters_vs_baseline = 0.0;  // 1 - avg_iters(csfg)/avg_iters(baseline)
    double iters_vs_gmatrix = 0.0;
    double comp_vs_baseline = 0.0;   // 1 - avg_pe(csfg)/avg_pe(baseline)
    double comp_vs_gmatrix = 0.0;
};

// Savings of csfg relative to the other two decoders at each SNR that has
// a csfg row. Throws if a counterpart row is missing.
std::vector<SavingsRow> compute_savings(std::span<const PointStats> rows);
std::string savings_table(std::span<const SavingsRow> rows);

}  // namespace polarbp
