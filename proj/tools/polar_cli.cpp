/*
Command line front end: stream generator rows, encode, decode, run Monte
Carlo sweeps, run the property suite and trace the partial sum units.

Exit codes: 0 on success, 1 when a verification or runtime step fails,
2 on usage errors.
*/

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "polar/polar.hpp"

namespace {

std::uint64_t env_seed_default() {
    if (const char* text = std::getenv("POLAR_SEED")) {
        try {
            return polar::detail::parse_u64(text);
        } catch (const std::exception&) {
            throw std::invalid_argument("POLAR_SEED must be a non-negative integer");
        }
    }
    return 1;
}

void with_input(const std::string& path, const std::function<void(std::istream&)>& fn) {
    if (path.empty() || path == "-") {
        fn(std::cin);
        return;
    }
    std::ifstream file(path);
    if (!file)
        throw std::runtime_error("cannot open input file: " + path);
    fn(file);
}

void with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        return;
    }
    std::ofstream file(path);
    if (!file)
        throw std::runtime_error("cannot open output file: " + path);
    fn(file);
}

std::vector<polar::BitVec> read_bit_lines(std::istream& in) {
    std::vector<polar::BitVec> frames;
    std::string line;
    while (std::getline(in, line)) {
        const polar::BitVec bits = polar::parse_bit_string(line);
        if (!bits.empty())
            frames.push_back(bits);
    }
    return frames;
}

std::vector<polar::LlrFrame> read_llr_lines(std::istream& in, std::size_t block_length) {
    std::vector<polar::LlrFrame> frames;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        polar::LlrFrame frame;
        double v = 0;
        while (ss >> v)
            frame.channel.push_back(v);
        if (!ss.eof())
            throw std::invalid_argument("LLR line " + std::to_string(lineno) +
                                        ": not a number");
        if (frame.channel.empty())
            continue;
        if (frame.channel.size() != block_length)
            throw std::invalid_argument("LLR line " + std::to_string(lineno) + ": expected " +
                                        std::to_string(block_length) + " values, got " +
                                        std::to_string(frame.channel.size()));
        frames.push_back(std::move(frame));
    }
    return frames;
}

std::string format_reads(const std::vector<polar::ReadEvent>& reads) {
    std::string out;
    for (const polar::ReadEvent& r : reads) {
        if (!out.empty())
            out += ';';
        out += std::to_string(r.row) + ':' + std::to_string(r.col) + ':' +
               std::to_string(int(r.value));
    }
    return out;
}

int run_gen_matrix(unsigned m, std::uint64_t rows, const std::string& out_path) {
    polar::GeneratorRowStream stream(m);
    const std::uint64_t count = rows ? rows : stream.width();
    with_output(out_path, [&](std::ostream& out) {
        for (std::uint64_t t = 0; t < count; ++t)
            out << polar::to_bit_string(stream.step()) << "\n";
    });
    return 0;
}

int run_encode(unsigned n, std::optional<std::size_t> k, double design_erasure,
               const std::string& in_path, const std::string& out_path) {
    const std::size_t size = std::size_t{1} << n;
    const polar::CodeParams params =
        k ? polar::make_code(n, *k, design_erasure)
          : polar::CodeParams(n, {});
    std::vector<polar::BitVec> inputs;
    with_input(in_path, [&](std::istream& in) { inputs = read_bit_lines(in); });
    with_output(out_path, [&](std::ostream& out) {
        for (std::size_t f = 0; f < inputs.size(); ++f) {
            polar::BitVec u;
            if (k) {
                if (inputs[f].size() != params.info_length())
                    throw std::invalid_argument(
                        "input line " + std::to_string(f + 1) + ": expected " +
                        std::to_string(params.info_length()) + " information bits");
                u.assign(size, 0);
                std::size_t next = 0;
                for (std::size_t i = 0; i < size; ++i)
                    if (!params.is_frozen(i))
                        u[i] = inputs[f][next++];
            } else {
                if (inputs[f].size() != size)
                    throw std::invalid_argument("input line " + std::to_string(f + 1) +
                                                ": expected " + std::to_string(size) +
                                                " bits");
                u = inputs[f];
            }
            out << polar::to_bit_string(polar::encode(u, params)) << "\n";
        }
    });
    return 0;
}

int run_decode(unsigned n, std::size_t k, double design_erasure,
               const std::string& llr_path, const std::string& psu_name,
               const std::string& trace_path, const std::string& out_path) {
    const polar::CodeParams params = polar::make_code(n, k, design_erasure);
    std::vector<polar::LlrFrame> frames;
    with_input(llr_path,
               [&](std::istream& in) { frames = read_llr_lines(in, params.block_length()); });
    polar::ScDecoder decoder(params);
    const auto psu = polar::make_psu(polar::parse_psu_model(psu_name), n);
    const bool tracing = !trace_path.empty();

    std::ostringstream trace;
    if (tracing)
        trace << "frame,t,frozen,llr,u_t,reads\n";
    with_output(out_path, [&](std::ostream& out) {
        for (std::size_t f = 0; f < frames.size(); ++f) {
            const polar::DecodeResult res = decoder.decode(frames[f], *psu, tracing);
            out << polar::to_bit_string(res.info_bits) << "\n";
            for (const polar::TraceRecord& rec : res.trace) {
                char llr_text[40];
                std::snprintf(llr_text, sizeof llr_text, "%.9g", rec.decision_llr);
                trace << f << ',' << rec.t << ',' << int(rec.frozen) << ',' << llr_text
                      << ',' << int(rec.bit) << ',' << format_reads(rec.reads) << "\n";
            }
        }
    });
    if (tracing)
        with_output(trace_path, [&](std::ostream& out) { out << trace.str(); });
    return 0;
}

int run_simulate(const polar::SimConfig& cfg) {
    const polar::SimResult result = polar::run_simulation(cfg);
    std::ostringstream csv;
    polar::write_csv(result, csv);
    std::cout << csv.str();
    if (!cfg.out_csv.empty())
        with_output(cfg.out_csv, [&](std::ostream& out) { out << csv.str(); });
    if (!cfg.out_json.empty())
        with_output(cfg.out_json, [&](std::ostream& out) { polar::write_json(result, out); });
    return 0;
}

int run_verify_psu(unsigned n_max, std::size_t frames, std::uint64_t seed) {
    const polar::VerificationReport report = polar::run_verification(n_max, frames, seed);
    for (const polar::VerificationCheck& check : report.checks) {
        std::cout << (check.passed ? "PASS" : "FAIL") << "  " << check.name;
        if (!check.detail.empty())
            std::cout << "  (" << check.detail << ")";
        std::cout << "\n";
    }
    if (!report.all_passed()) {
        std::cout << "verification FAILED\n";
        return 1;
    }
    std::cout << "all checks passed\n";
    return 0;
}

int run_trace_psu(unsigned n, const std::string& input, const std::string& out_path) {
    const polar::BitVec u = polar::parse_bit_string(input);
    const std::size_t size = std::size_t{1} << n;
    if (u.size() != size)
        throw std::invalid_argument("trace input must hold exactly " + std::to_string(size) +
                                    " bits");

    polar::RegisterPsu reg(n);
    polar::ShiftRegisterPsu shift(n);
    polar::GeneratorRowStream rows(n);

    std::vector<std::vector<polar::PartialSumRequest>> schedule(size);
    for (unsigned j = 0; j < n; ++j)
        for (std::size_t i = 0; i < size; ++i)
            if (polar::branch_bit(i, j) == 0)
                schedule[polar::tau(i, j)].push_back({i, j});

    with_output(out_path, [&](std::ostream& out) {
        out << "t,u_t,row_bits,regs_register_psu,regs_shift_psu,reads\n";
        for (std::size_t t = 0; t < size; ++t) {
            reg.update(u[t]);
            shift.update(u[t]);
            const polar::BitVec& row = rows.step();
            std::vector<polar::ReadEvent> reads;
            for (const polar::PartialSumRequest& req : schedule[t]) {
                const polar::Bit a = reg.read(req);
                const polar::Bit b = shift.read(req);
                if (a != b)
                    throw std::runtime_error("partial sum units disagree at S_{" +
                                             std::to_string(req.row) + "," +
                                             std::to_string(req.col) + "}");
                reads.push_back({req.row, req.col, a});
            }
            out << t << ',' << int(u[t]) << ',' << polar::to_bit_string(row) << ','
                << polar::to_hex(reg.registers()) << ',' << polar::to_hex(shift.registers())
                << ',' << format_reads(reads) << "\n";
        }
    });
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"polar code toolkit: streaming generator rows, encoding, successive"
                 " cancellation decoding and partial sum unit verification"};
    app.require_subcommand(1);
    int exit_code = 0;

    // gen-matrix
    auto* gen = app.add_subcommand("gen-matrix", "print kernel power rows, one per line");
    unsigned gen_m = 0;
    std::uint64_t gen_rows = 0;
    std::string gen_out;
    gen->add_option("--n", gen_m, "kernel power exponent")->required()->check(CLI::Range(0, 20));
    gen->add_option("--rows", gen_rows,
                    "rows to emit; more than 2^n keeps streaming cyclically (default 2^n)");
    gen->add_option("--out", gen_out, "output file (default stdout)");
    gen->callback([&]() { exit_code = run_gen_matrix(gen_m, gen_rows, gen_out); });

    // encode
    auto* enc = app.add_subcommand("encode", "encode bit strings, one frame per line");
    unsigned enc_n = 0;
    std::size_t enc_k = 0;
    double enc_erasure = 0.5;
    std::string enc_in, enc_out;
    enc->add_option("--n", enc_n, "code exponent, block length 2^n")->required()->check(CLI::Range(1, 20));
    auto* enc_k_opt = enc->add_option(
        "--k", enc_k, "information bits per frame; omit to encode full 2^n-bit vectors");
    enc->add_option("--design-erasure", enc_erasure, "channel design parameter for the frozen set");
    enc->add_option("--input", enc_in, "input file (default stdin)");
    enc->add_option("--out", enc_out, "output file (default stdout)");
    enc->callback([&]() {
        std::optional<std::size_t> k;
        if (*enc_k_opt)
            k = enc_k;
        exit_code = run_encode(enc_n, k, enc_erasure, enc_in, enc_out);
    });

    // decode
    auto* dec = app.add_subcommand("decode",
                                   "successive cancellation decode, one LLR frame per line");
    unsigned dec_n = 0;
    std::size_t dec_k = 0;
    double dec_erasure = 0.5;
    std::string dec_llrs, dec_psu = "shift", dec_trace, dec_out;
    dec->add_option("--n", dec_n, "code exponent, block length 2^n")->required()->check(CLI::Range(1, 16));
    dec->add_option("--k", dec_k, "information bits per frame")->required();
    dec->add_option("--llrs", dec_llrs, "file of channel LLRs, 2^n per line ('-' for stdin)")
        ->required();
    dec->add_option("--psu", dec_psu, "partial sum unit: matrix, register or shift");
    dec->add_option("--design-erasure", dec_erasure, "channel design parameter for the frozen set");
    dec->add_option("--trace", dec_trace, "write a per-step decode trace CSV to this file");
    dec->add_option("--out", dec_out, "output file (default stdout)");
    dec->callback([&]() {
        exit_code = run_decode(dec_n, dec_k, dec_erasure, dec_llrs, dec_psu, dec_trace, dec_out);
    });

    // simulate
    auto* sim = app.add_subcommand("simulate", "Monte Carlo error-rate sweep");
    std::string sim_config;
    unsigned sim_n = 0, sim_workers = 0;
    std::size_t sim_k = 0;
    std::string sim_channel, sim_psu, sim_out, sim_json;
    std::vector<double> sim_params;
    std::uint64_t sim_frames = 0, sim_target = 0, sim_max_frames = 0, sim_seed = 0;
    double sim_erasure = 0.5;
    sim->add_option("--config", sim_config, "key = value configuration file");
    sim->add_option("--n", sim_n, "code exponent, block length 2^n");
    sim->add_option("--k", sim_k, "information bits per frame");
    sim->add_option("--channel", sim_channel, "bsc or awgn");
    sim->add_option("--params", sim_params,
                    "channel parameters to sweep: crossover for bsc, Eb/N0 dB for awgn");
    sim->add_option("--frames", sim_frames, "exact frames per sweep point");
    sim->add_option("--target-errors", sim_target,
                    "stop a point once this many frame errors accumulate (default 100)");
    sim->add_option("--max-frames", sim_max_frames, "frame cap for the error-target mode");
    sim->add_option("--seed", sim_seed, "base seed (default $POLAR_SEED, then 1)");
    sim->add_option("--psu", sim_psu, "partial sum unit: matrix, register or shift");
    sim->add_option("--workers", sim_workers, "worker threads; results do not depend on this");
    sim->add_option("--design-erasure", sim_erasure, "channel design parameter for the frozen set");
    sim->add_option("--out", sim_out, "also write the CSV report to this file");
    sim->add_option("--json", sim_json, "also write a JSON report to this file");
    sim->callback([&]() {
        polar::SimConfig cfg;
        cfg.seed = env_seed_default();
        if (!sim_config.empty()) {
            std::ifstream file(sim_config);
            if (!file)
                throw std::runtime_error("cannot open config file: " + sim_config);
            polar::load_config(cfg, file);
        }
        if (sim->count("--n")) cfg.n = sim_n;
        if (sim->count("--k")) cfg.k = sim_k;
        if (sim->count("--channel")) {
            if (sim_channel == "bsc")
                cfg.channel = polar::ChannelSpec::Kind::Bsc;
            else if (sim_channel == "awgn")
                cfg.channel = polar::ChannelSpec::Kind::AwgnBpsk;
            else
                throw std::invalid_argument("unknown channel: '" + sim_channel + "'");
        }
        if (sim->count("--params")) cfg.sweep = sim_params;
        if (sim->count("--frames")) cfg.frames = sim_frames;
        if (sim->count("--target-errors")) cfg.target_errors = sim_target;
        if (sim->count("--max-frames")) cfg.max_frames = sim_max_frames;
        if (sim->count("--seed")) cfg.seed = sim_seed;
        if (sim->count("--psu")) cfg.psu = polar::parse_psu_model(sim_psu);
        if (sim->count("--workers")) cfg.workers = sim_workers;
        if (sim->count("--design-erasure")) cfg.design_erasure = sim_erasure;
        if (sim->count("--out")) cfg.out_csv = sim_out;
        if (sim->count("--json")) cfg.out_json = sim_json;
        exit_code = run_simulate(cfg);
    });

    // verify-psu
    auto* ver = app.add_subcommand("verify-psu",
                                   "run the structural property suite and report each check");
    unsigned ver_n = 10;
    std::size_t ver_frames = 100;
    std::uint64_t ver_seed = 0;
    ver->add_option("--n", ver_n, "largest exponent to cover (default 10)")->check(CLI::Range(1, 10));
    ver->add_option("--frames", ver_frames, "random decided sequences per block size (default 100)");
    ver->add_option("--seed", ver_seed, "base seed (default $POLAR_SEED, then 1)");
    ver->callback([&]() {
        const std::uint64_t seed = ver->count("--seed") ? ver_seed : env_seed_default();
        exit_code = run_verify_psu(ver_n, ver_frames, seed);
    });

    // trace-psu
    auto* tr = app.add_subcommand("trace-psu",
                                  "drive both register units through a decided sequence and"
                                  " dump their state per step as CSV");
    unsigned tr_n = 0;
    std::string tr_input, tr_out;
    tr->add_option("--n", tr_n, "code exponent, block length 2^n")->required()->check(CLI::Range(1, 16));
    tr->add_option("--input", tr_input, "decided bits, a string of 2^n 0s and 1s")->required();
    tr->add_option("--out", tr_out, "output file (default stdout)");
    tr->callback([&]() { exit_code = run_trace_psu(tr_n, tr_input, tr_out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
