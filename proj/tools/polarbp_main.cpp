// polarbp: polar-code construction, encoding, BP decoding and Monte Carlo
// simulation from the command line. Machine-readable results go to stdout
// (or --out/--json files); diagnostics and trace lines go to stderr.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polarbp/bp_core.hpp"
#include "polarbp/channel.hpp"
#include "polarbp/csfg_freeze.hpp"
#include "polarbp/polar_code.hpp"
#include "polarbp/sim_harness.hpp"

namespace {

using namespace polarbp;

struct CodeSourceOpts {
    int n = 0;
    int k = 0;
    double design_z = 0.5;
    std::string frozen_file;
};

void add_code_source(CLI::App* cmd, CodeSourceOpts& opts) {
    auto* n_opt = cmd->add_option("--n", opts.n, "block length (power of two)");
    auto* k_opt = cmd->add_option("--k", opts.k, "information bits");
    cmd->add_option("--design-z", opts.design_z,
                    "design-channel parameter for the frozen-set construction")
        ->capture_default_str();
    auto* file_opt =
        cmd->add_option("--frozen-file", opts.frozen_file, "frozen-set file to load");
    file_opt->excludes(n_opt)->excludes(k_opt);
    n_opt->needs(k_opt);
    k_opt->needs(n_opt);
}

PolarCode resolve_code(const CodeSourceOpts& opts, std::string* source = nullptr) {
    if (!opts.frozen_file.empty()) {
        if (source) *source = "file:" + opts.frozen_file;
        return load_frozen_set_file(opts.frozen_file);
    }
    if (opts.n == 0)
        throw std::runtime_error("specify either --frozen-file or --n/--k");
    if (source) {
        std::ostringstream s;
        s << "bhattacharyya design_z=" << opts.design_z;
        *source = s.str();
    }
    return PolarCode::construct(opts.n, opts.k, opts.design_z);
}

Bits parse_bit_string(const std::string& text, int expected, const char* what) {
    if (static_cast<int>(text.size()) != expected)
        throw std::runtime_error(std::string(what) + ": expected " +
                                 std::to_string(expected) + " bits, got " +
                                 std::to_string(text.size()));
    Bits bits(text.size());
    for (size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '0' && text[i] != '1')
            throw std::runtime_error(std::string(what) + ": bits must be 0 or 1");
        bits[i] = static_cast<std::uint8_t>(text[i] - '0');
    }
    return bits;
}

std::string bits_to_string(const Bits& bits) {
    std::string s(bits.size(), '0');
    for (size_t i = 0; i < bits.size(); ++i) s[i] = bits[i] ? '1' : '0';
    return s;
}

std::vector<double> read_llr_file(const std::string& path, int expected) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::vector<double> llrs;
    double v;
    while (in >> v) llrs.push_back(v);
    if (!in.eof()) throw std::runtime_error("llr file: non-numeric content in " + path);
    if (static_cast<int>(llrs.size()) != expected)
        throw std::runtime_error("llr file: expected " + std::to_string(expected) +
                                 " values, got " + std::to_string(llrs.size()));
    return llrs;
}

// "a,b,c" or "start:stop:step" (inclusive endpoints, half-step slack)
std::vector<double> parse_snr_list(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double start, stop, step;
        char c1, c2;
        std::istringstream in(text);
        if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' ||
            !(in >> std::ws).eof())
            throw std::runtime_error("bad --snr range '" + text + "' (want start:stop:step)");
        if (step <= 0.0) throw std::runtime_error("--snr step must be positive");
        if (stop < start) throw std::runtime_error("--snr stop below start");
        for (double v = start; v <= stop + step / 2.0; v += step) out.push_back(v);
    } else {
        std::istringstream in(text);
        std::string item;
        while (std::getline(in, item, ',')) {
            if (item.empty()) throw std::runtime_error("empty --snr entry");
            size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size())
                throw std::runtime_error("bad --snr value '" + item + "'");
        }
    }
    if (out.empty()) throw std::runtime_error("--snr produced no points");
    return out;
}

std::vector<DecoderKind> parse_decoder_list(const std::string& text) {
    std::vector<DecoderKind> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const DecoderKind kind = parse_decoder(item);
        bool seen = false;
        for (DecoderKind existing : out) seen = seen || existing == kind;
        if (!seen) out.push_back(kind);
    }
    if (out.empty()) throw std::runtime_error("--decoders produced no decoders");
    return out;
}

void print_freeze_event(const FreezeEvent& ev) {
    std::fprintf(stderr, "iter=%d stage=%d block=%d range=%d-%d\n", ev.iteration,
                 ev.stage + 1, ev.block + 1, ev.start + 1, ev.start + ev.size);
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for write: " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

int run(int argc, char** argv) {
    CLI::App app{"polar-code BP decoding with sub-graph freezing"};
    app.require_subcommand(1);

    // construct
    auto* construct_cmd = app.add_subcommand("construct", "build a frozen set");
    int c_n = 0, c_k = 0;
    double c_design_z = 0.5;
    std::string c_out;
    construct_cmd->add_option("--n", c_n, "block length (power of two)")->required();
    construct_cmd->add_option("--k", c_k, "information bits")->required();
    construct_cmd->add_option("--design-z", c_design_z, "design-channel parameter")
        ->capture_default_str();
    construct_cmd->add_option("--out", c_out, "write the frozen-set file here");

    // encode
    auto* encode_cmd = app.add_subcommand("encode", "encode an information word");
    CodeSourceOpts e_code;
    add_code_source(encode_cmd, e_code);
    std::string e_info;
    encode_cmd->add_option("--info", e_info, "information bits, e.g. 1011")->required();

    // decode
    auto* decode_cmd = app.add_subcommand("decode", "decode one LLR vector");
    CodeSourceOpts d_code;
    add_code_source(decode_cmd, d_code);
    std::string d_llr_file, d_decoder = "csfg";
    double d_alpha = 0.9375;
    int d_max_iter = 40;
    bool d_trace = false;
    decode_cmd->add_option("--llr-file", d_llr_file, "one channel LLR per line")
        ->required();
    decode_cmd->add_option("--decoder", d_decoder, "baseline|gmatrix|csfg")
        ->capture_default_str();
    decode_cmd->add_option("--alpha", d_alpha, "min-sum scaling factor")
        ->capture_default_str();
    decode_cmd->add_option("--max-iter", d_max_iter, "iteration cap")
        ->capture_default_str();
    decode_cmd->add_flag("--trace", d_trace, "freeze events to stderr");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo decoder comparison");
    CodeSourceOpts s_code;
    add_code_source(sim_cmd, s_code);
    std::string s_snr, s_decoders = "baseline,gmatrix,csfg";
    std::string s_out, s_json;
    SimConfig sim;
    bool s_trace = false;
    sim_cmd->add_option("--snr", s_snr, "Eb/N0 points: a,b,c or start:stop:step")
        ->required();
    sim_cmd->add_option("--decoders", s_decoders, "comma list of decoders")
        ->capture_default_str();
    sim_cmd->add_option("--alpha", sim.alpha, "min-sum scaling factor")
        ->capture_default_str();
    sim_cmd->add_option("--max-iter", sim.max_iter, "iteration cap")
        ->capture_default_str();
    sim_cmd->add_option("--seed", sim.seed, "master seed")
        ->envname("POLARBP_SEED")
        ->capture_default_str();
    sim_cmd->add_option("--workers", sim.workers, "worker threads")
        ->check(CLI::Range(1, 256))
        ->capture_default_str();
    sim_cmd->add_option("--min-frame-errors", sim.min_frame_errors,
                        "stop a point after this many frame errors per decoder")
        ->capture_default_str();
    sim_cmd->add_option("--max-frames", sim.max_frames, "frame cap per point")
        ->capture_default_str();
    sim_cmd->add_option("--out", s_out, "write the results CSV here (default stdout)");
    sim_cmd->add_option("--json", s_json, "also write a JSON report here");
    sim_cmd->add_flag("--trace", s_trace, "freeze events to stderr (forces 1 worker)");
    sim_cmd->add_flag("--noiseless", sim.noiseless, "disable channel noise (test hook)");

    // report
    auto* report_cmd = app.add_subcommand("report", "savings table from a results CSV");
    std::string r_in;
    report_cmd->add_option("--in", r_in, "results CSV produced by simulate")->required();

    CLI11_PARSE(app, argc, argv);

    if (construct_cmd->parsed()) {
        const PolarCode code = PolarCode::construct(c_n, c_k, c_design_z);
        const std::string text = format_frozen_set(code);
        if (c_out.empty()) {
            std::cout << text;
        } else {
            write_text_file(c_out, text);
            std::cerr << "wrote " << c_out << " (n=" << code.n << ", k=" << code.k
                      << ", " << (code.n - code.k) << " frozen)\n";
        }
        return 0;
    }

    if (encode_cmd->parsed()) {
        const PolarCode code = resolve_code(e_code);
        const Codeword cw = encode(code, parse_bit_string(e_info, code.k, "--info"));
        std::cout << "u=" << bits_to_string(cw.u) << "\n";
        std::cout << "x=" << bits_to_string(cw.x) << "\n";
        return 0;
    }

    if (decode_cmd->parsed()) {
        const PolarCode code = resolve_code(d_code);
        const std::vector<double> llrs = read_llr_file(d_llr_file, code.n);
        const DecoderKind kind = parse_decoder(d_decoder);
        DecodeOutcome out;
        switch (kind) {
            case DecoderKind::baseline:
                out = decode_baseline(code, llrs, d_alpha, d_max_iter);
                break;
            case DecoderKind::gmatrix:
                out = decode_gmatrix(code, llrs, d_alpha, d_max_iter);
                break;
            case DecoderKind::csfg: {
                std::vector<FreezeEvent> events;
                out = decode_csfg(code, llrs, d_alpha, d_max_iter,
                                  d_trace ? &events : nullptr);
                if (d_trace)
                    for (const FreezeEvent& ev : events) print_freeze_event(ev);
                break;
            }
        }
        std::cout << "u_hat=" << bits_to_string(out.u_hat) << "\n";
        std::cout << "info_bits=" << bits_to_string(out.info_bits) << "\n";
        std::cout << "iterations_used=" << out.iterations_used << "\n";
        std::cout << "pe_activations=" << out.pe_activations << "\n";
        std::cout << "stop_reason=" << to_string(out.stop_reason) << "\n";
        return 0;
    }

    if (sim_cmd->parsed()) {
        sim.code = resolve_code(s_code, &sim.code_source);
        sim.snr_db = parse_snr_list(s_snr);
        sim.decoders = parse_decoder_list(s_decoders);
        TraceSink sink = [](long long, const FreezeEvent& ev) { print_freeze_event(ev); };
        const std::vector<PointStats> rows = run_sweep(sim, s_trace ? &sink : nullptr);
        for (const PointStats& r : rows)
            if (r.low_confidence)
                std::fprintf(stderr,
                             "note: decoder=%s snr_db=%g under-sampled "
                             "(%lld frame errors in %lld frames)\n",
                             to_string(r.decoder), r.snr_db, r.frame_errors, r.frames);
        const std::string csv = results_csv(rows);
        if (s_out.empty())
            std::cout << csv;
        else
            write_text_file(s_out, csv);
        if (!s_json.empty()) write_text_file(s_json, results_json(sim, rows));
        return 0;
    }

    if (report_cmd->parsed()) {
        std::ifstream in(r_in);
        if (!in) throw std::runtime_error("cannot open: " + r_in);
        std::ostringstream buf;
        buf << in.rdbuf();
        const std::vector<PointStats> rows = parse_results_csv(buf.str());
        std::cout << savings_table(compute_savings(rows));
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
}
