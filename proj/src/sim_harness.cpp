#include "polarbp/sim_harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "polarbp/channel.hpp"

namespace polarbp {

namespace {

// Trials are aggregated on fixed batch boundaries so the stop rule sees the
// same frame counts no matter how many workers ran the batch.
constexpr long long kBatchSize = 256;

std::string fmt_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace

const char* to_string(DecoderKind kind) {
    switch (kind) {
        case DecoderKind::baseline: return "baseline";
        case DecoderKind::gmatrix: return "gmatrix";
        case DecoderKind::csfg: return "csfg";
    }
    return "?";
}

DecoderKind parse_decoder(const std::string& name) {
    if (name == "baseline") return DecoderKind::baseline;
    if (name == "gmatrix") return DecoderKind::gmatrix;
    if (name == "csfg") return DecoderKind::csfg;
    throw std::invalid_argument("unknown decoder '" + name + "'");
}

namespace {

struct TrialCell {
    long long bit_errors = 0;
    int iters = 0;
    long long pe = 0;
    std::uint8_t frame_error = 0;
};

struct Accumulator {
    long long frames = 0;
    long long bit_errors = 0;
    long long frame_errors = 0;
    long long sum_iters = 0;
    long long sum_iters_sq = 0;
    long long sum_pe = 0;
};

void decode_trial(const SimConfig& cfg, const ChannelConfig& ch, long long trial,
                  std::span<TrialCell> cells, const TraceSink* trace) {
    TrialRng rng(cfg.seed, static_cast<std::uint64_t>(trial));
    const PolarCode& code = cfg.code;
    Bits info(code.k);
    for (int b = 0; b < code.k; ++b) info[b] = rng.bit();
    const Codeword cw = encode(code, info);
    const std::vector<double> symbols = modulate_bpsk(cw.x);
    const std::vector<double> llrs = transmit_awgn(symbols, ch, rng);

    for (size_t d = 0; d < cfg.decoders.size(); ++d) {
        DecodeOutcome oc;
        switch (cfg.decoders[d]) {
            case DecoderKind::baseline:
                oc = decode_baseline(code, llrs, cfg.alpha, cfg.max_iter);
                break;
            case DecoderKind::gmatrix:
                oc = decode_gmatrix(code, llrs, cfg.alpha, cfg.max_iter);
                break;
            case DecoderKind::csfg: {
                std::vector<FreezeEvent> events;
                oc = decode_csfg(code, llrs, cfg.alpha, cfg.max_iter,
                                 trace ? &events : nullptr);
                if (trace)
                    for (const FreezeEvent& ev : events) (*trace)(trial, ev);
                break;
            }
        }
        long long be = 0;
        for (int b = 0; b < code.k; ++b)
            if (oc.info_bits[b] != info[b]) ++be;
        cells[d] = {be, oc.iterations_used, oc.pe_activations,
                    static_cast<std::uint8_t>(be > 0 ? 1 : 0)};
    }
}

PointStats make_stats(const SimConfig& cfg, DecoderKind kind, double snr,
                      const Accumulator& acc) {
    PointStats row;
    row.decoder = kind;
    row.snr_db = snr;
    row.frames = acc.frames;
    row.bit_errors = acc.bit_errors;
    row.frame_errors = acc.frame_errors;
    const double frames = static_cast<double>(acc.frames);
    row.ber = static_cast<double>(acc.bit_errors) / (frames * cfg.code.k);
    row.fer = static_cast<double>(acc.frame_errors) / frames;
    row.fer_ci95 = 1.96 * std::sqrt(row.fer * (1.0 - row.fer) / frames);
    row.avg_iters = static_cast<double>(acc.sum_iters) / frames;
    if (acc.frames > 1) {
        const double mean = row.avg_iters;
        const double var = (static_cast<double>(acc.sum_iters_sq) - frames * mean * mean) /
                           (frames - 1.0);
        row.iters_ci95 = 1.96 * std::sqrt(std::max(var, 0.0) / frames);
    }
    row.avg_pe_activations = static_cast<double>(acc.sum_pe) / frames;
    const double full = static_cast<double>(cfg.max_iter) * cfg.code.m * (cfg.code.n / 2);
    row.norm_computations = full > 0.0 ? row.avg_pe_activations / full : 0.0;
    row.low_confidence = acc.frame_errors < cfg.min_frame_errors;
    return row;
}

}  // namespace

std::vector<PointStats> run_point(const SimConfig& cfg, double snr_db,
                                  const TraceSink* trace) {
    if (cfg.decoders.empty()) throw std::invalid_argument("run_point: no decoders");
    if (cfg.max_frames < 1) throw std::invalid_argument("run_point: max_frames < 1");
    const size_t d_count = cfg.decoders.size();
    const ChannelConfig ch{snr_db, static_cast<double>(cfg.code.k) / cfg.code.n,
                           cfg.noiseless};
    const int workers = trace ? 1 : std::max(1, cfg.workers);

    std::vector<Accumulator> acc(d_count);
    long long frames = 0;
    std::vector<TrialCell> cells;
    while (frames < cfg.max_frames) {
        const long long batch = std::min(kBatchSize, cfg.max_frames - frames);
        cells.assign(static_cast<size_t>(batch) * d_count, TrialCell{});
        if (workers <= 1 || batch == 1) {
            for (long long t = 0; t < batch; ++t)
                decode_trial(cfg, ch, frames + t,
                             {cells.data() + t * d_count, d_count}, trace);
        } else {
            std::atomic<long long> next{0};
            auto work = [&]() {
                long long t;
                while ((t = next.fetch_add(1)) < batch)
                    decode_trial(cfg, ch, frames + t,
                                 {cells.data() + t * d_count, d_count}, nullptr);
            };
            std::vector<std::thread> pool;
            const int spawn = static_cast<int>(std::min<long long>(workers, batch));
            pool.reserve(spawn);
            for (int w = 0; w < spawn; ++w) pool.emplace_back(work);
            for (std::thread& th : pool) th.join();
        }
        // merge in trial order
        for (long long t = 0; t < batch; ++t) {
            for (size_t d = 0; d < d_count; ++d) {
                const TrialCell& c = cells[t * d_count + d];
                acc[d].frames += 1;
                acc[d].bit_errors += c.bit_errors;
                acc[d].frame_errors += c.frame_error;
                acc[d].sum_iters += c.iters;
                acc[d].sum_iters_sq += static_cast<long long>(c.iters) * c.iters;
                acc[d].sum_pe += c.pe;
            }
        }
        frames += batch;
        bool enough = true;
        for (const Accumulator& a : acc)
            if (a.frame_errors < cfg.min_frame_errors) enough = false;
        if (enough) break;
    }

    std::vector<PointStats> rows;
    rows.reserve(d_count);
    for (size_t d = 0; d < d_count; ++d)
        rows.push_back(make_stats(cfg, cfg.decoders[d], snr_db, acc[d]));
    return rows;
}

std::vector<PointStats> run_sweep(const SimConfig& cfg, const TraceSink* trace) {
    if (cfg.snr_db.empty()) throw std::invalid_argument("run_sweep: no SNR points");
    std::vector<PointStats> rows;
    for (double snr : cfg.snr_db) {
        std::vector<PointStats> point = run_point(cfg, snr, trace);
        rows.insert(rows.end(), point.begin(), point.end());
    }
    return rows;
}

std::string results_csv(std::span<const PointStats> rows) {
    std::ostringstream out;
    out << "decoder,snr_db,frames,bit_errors,frame_errors,ber,fer,fer_ci95,"
           "avg_iters,iters_ci95,avg_pe_activations,norm_computations\n";
    for (const PointStats& r : rows) {
        out << to_string(r.decoder) << ',' << fmt_g(r.snr_db) << ',' << r.frames << ','
            << r.bit_errors << ',' << r.frame_errors << ',' << fmt_g(r.ber) << ','
            << fmt_g(r.fer) << ',' << fmt_g(r.fer_ci95) << ',' << fmt_g(r.avg_iters)
            << ',' << fmt_g(r.iters_ci95) << ',' << fmt_g(r.avg_pe_activations) << ','
            << fmt_g(r.norm_computations) << '\n';
    }
    return out.str();
}

std::vector<PointStats> parse_results_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("results CSV: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string expected =
        "decoder,snr_db,frames,bit_errors,frame_errors,ber,fer,fer_ci95,"
        "avg_iters,iters_ci95,avg_pe_activations,norm_computations";
    if (line != expected) throw std::runtime_error("results CSV: unexpected header");

    std::vector<PointStats> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() != 12)
            throw std::runtime_error("results CSV: expected 12 fields, got line '" + line + "'");
        PointStats r;
        r.decoder = parse_decoder(fields[0]);
        r.snr_db = std::stod(fields[1]);
        r.frames = std::stoll(fields[2]);
        r.bit_errors = std::stoll(fields[3]);
        r.frame_errors = std::stoll(fields[4]);
        r.ber = std::stod(fields[5]);
        r.fer = std::stod(fields[6]);
        r.fer_ci95 = std::stod(fields[7]);
        r.avg_iters = std::stod(fields[8]);
        r.iters_ci95 = std::stod(fields[9]);
        r.avg_pe_activations = std::stod(fields[10]);
        r.norm_computations = std::stod(fields[11]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string results_json(const SimConfig& cfg, std::span<const PointStats> rows) {
    nlohmann::json j;
    std::vector<int> frozen_1based;
    for (int pos : cfg.code.frozen_positions()) frozen_1based.push_back(pos + 1);
    std::vector<std::string> decoder_names;
    for (DecoderKind d : cfg.decoders) decoder_names.emplace_back(to_string(d));
    j["config"] = {
        {"n", cfg.code.n},
        {"k", cfg.code.k},
        {"frozen", frozen_1based},
        {"code_source", cfg.code_source},
        {"decoders", decoder_names},
        {"snr_db", cfg.snr_db},
        {"alpha", cfg.alpha},
        {"max_iter", cfg.max_iter},
        {"min_frame_errors", cfg.min_frame_errors},
        {"max_frames", cfg.max_frames},
        {"seed", cfg.seed},
        {"workers", cfg.workers},
        {"noiseless", cfg.noiseless},
    };
    j["results"] = nlohmann::json::array();
    for (const PointStats& r : rows) {
        j["results"].push_back({
            {"decoder", to_string(r.decoder)},
            {"snr_db", r.snr_db},
            {"frames", r.frames},
            {"bit_errors", r.bit_errors},
            {"frame_errors", r.frame_errors},
            {"ber", r.ber},
            {"fer", r.fer},
            {"fer_ci95", r.fer_ci95},
            {"avg_iters", r.avg_iters},
            {"iters_ci95", r.iters_ci95},
            {"avg_pe_activations", r.avg_pe_activations},
            {"norm_computations", r.norm_computations},
            {"low_confidence", r.low_confidence},
        });
    }
    return j.dump(2) + "\n";
}

std::vector<SavingsRow> compute_savings(std::span<const PointStats> rows) {
    std::map<double, std::map<DecoderKind, const PointStats*>> by_snr;
    for (const PointStats& r : rows) by_snr[r.snr_db][r.decoder] = &r;

    std::vector<SavingsRow> out;
    for (const auto& [snr, decs] : by_snr) {
        const auto csfg = decs.find(DecoderKind::csfg);
        if (csfg == decs.end()) continue;
        const auto baseline = decs.find(DecoderKind::baseline);
        const auto gmatrix = decs.find(DecoderKind::gmatrix);
        if (baseline == decs.end() || gmatrix == decs.end())
            throw std::runtime_error("savings: missing baseline or gmatrix row at snr_db=" +
                                     fmt_g(snr));
        SavingsRow s;
        s.snr_db = snr;
        s.iters_vs_baseline = 1.0 - csfg->second->avg_iters / baseline->second->avg_iters;
        s.iters_vs_gmatrix = 1.0 - csfg->second->avg_iters / gmatrix->second->avg_iters;
        s.comp_vs_baseline =
            1.0 - csfg->second->avg_pe_activations / baseline->second->avg_pe_activations;
        s.comp_vs_gmatrix =
            1.0 - csfg->second->avg_pe_activations / gmatrix->second->avg_pe_activations;
        out.push_back(s);
    }
    if (out.empty()) throw std::runtime_error("savings: no csfg rows to report");
    return out;
}

std::string savings_table(std::span<const SavingsRow> rows) {
    std::ostringstream out;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%8s  %18s  %17s  %17s  %16s\n", "snr_db",
                  "iters_vs_baseline", "iters_vs_gmatrix", "comp_vs_baseline",
                  "comp_vs_gmatrix");
    out << buf;
    for (const SavingsRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%8s  %17.1f%%  %16.1f%%  %16.1f%%  %15.1f%%\n",
                      fmt_g(r.snr_db).c_str(), 100.0 * r.iters_vs_baseline,
                      100.0 * r.iters_vs_gmatrix, 100.0 * r.comp_vs_baseline,
                      100.0 * r.comp_vs_gmatrix);
        out << buf;
    }
    return out.str();
}

}  // namespace polarbp
