/*
Monte Carlo driver: encode random messages, push them through a channel,
decode, count. The per-frame seed schedule and the in-order merge make
every number in the result a pure function of the configuration, whatever
the worker count.
*/

#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "polar/channel.hpp"
#include "polar/code_params.hpp"
#include "polar/encode.hpp"
#include "polar/psu.hpp"
#include "polar/sc_decoder.hpp"

namespace polar {

struct SimConfig {
    unsigned n = 10;
    std::size_t k = 512;
    ChannelSpec::Kind channel = ChannelSpec::Kind::AwgnBpsk;
    std::vector<double> sweep = {1.0, 2.0, 3.0};
    std::uint64_t frames = 0;          // exact frame count per point when set
    std::uint64_t target_errors = 0;   // early-stop frame-error target when set
    std::uint64_t max_frames = 100000; // frame cap for the early-stop mode
    std::uint64_t seed = 1;
    PsuModel psu = PsuModel::ShiftRegister;
    unsigned workers = 1;
    double design_erasure = 0.5;
    std::string out_csv;  // optional file copies of the two report formats
    std::string out_json;

    void validate() const {
        if (n < 1 || n > 16)
            throw std::invalid_argument("simulation exponent must be in [1, 16]");
        const std::size_t size = std::size_t{1} << n;
        if (k < 1 || k > size)
            throw std::invalid_argument("information length must be in [1, N]");
        if (frames && target_errors)
            throw std::invalid_argument("choose either an exact frame count or an error target");
        if (!frames && max_frames < 1)
            throw std::invalid_argument("the early-stop mode needs a positive frame cap");
        if (sweep.empty())
            throw std::invalid_argument("the sweep needs at least one channel parameter");
        if (workers < 1 || workers > 64)
            throw std::invalid_argument("worker count must be in [1, 64]");
        for (double parameter : sweep)
            spec_for(parameter).validate();
    }

    ChannelSpec spec_for(double parameter) const {
        if (channel == ChannelSpec::Kind::Bsc)
            return ChannelSpec::bsc(parameter);
        return ChannelSpec::awgn(parameter,
                                 static_cast<double>(k) / static_cast<double>(std::size_t{1} << n));
    }
};

struct SimPoint {
    double parameter = 0.0;
    std::uint64_t frames = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t frame_errors = 0;
    double ber = 0.0;
    double fer = 0.0;
    double seconds = 0.0;
    std::uint64_t digest = 0; // order-sensitive hash of the decoded info bits
};

struct SimResult {
    std::vector<SimPoint> points;
};

namespace detail {

struct FrameOutcome {
    std::uint32_t bit_errors = 0;
    std::uint8_t frame_error = 0;
    std::uint64_t info_hash = 0;
};

inline std::uint64_t fnv1a(const BitVec& bits) {
    std::uint64_t h = 1469598103934665603ull;
    for (Bit b : bits) {
        h ^= (b & 1);
        h *= 1099511628211ull;
    }
    return h;
}

inline FrameOutcome simulate_frame(const CodeParams& params, const ChannelSpec& spec,
                                   ScDecoder& decoder, PartialSumUnit& psu,
                                   std::uint64_t seed, std::uint64_t frame_index) {
    Rng rng(seed ^ frame_index);
    BitVec u(params.block_length(), 0);
    for (std::size_t i = 0; i < u.size(); ++i)
        if (!params.is_frozen(i))
            u[i] = rng.bit();
    const BitVec x = encode(u, params);
    const LlrFrame frame = transmit(x, spec, rng);
    const DecodeResult res = decoder.decode(frame, psu);
    const ErrorCounts counts = count_errors(res.u_hat, u, params);
    FrameOutcome outcome;
    outcome.bit_errors = static_cast<std::uint32_t>(counts.bit_errors);
    outcome.frame_error = counts.frame_error ? 1 : 0;
    outcome.info_hash = fnv1a(res.info_bits);
    return outcome;
}

} // namespace detail

// Frames are assigned to workers by stride within fixed chunks and merged
// back in frame order, so counts, stop decision and digest never depend on
// scheduling. Early-stop cuts at the exact frame where the target is met.
inline SimResult run_simulation(const SimConfig& cfg) {
    cfg.validate();
    const CodeParams params = make_code(cfg.n, cfg.k, cfg.design_erasure);
    const unsigned workers = cfg.workers;

    std::vector<ScDecoder> decoders;
    std::vector<std::unique_ptr<PartialSumUnit>> psus;
    decoders.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        decoders.emplace_back(params);
        psus.push_back(make_psu(cfg.psu, cfg.n));
    }

    SimResult result;
    for (double parameter : cfg.sweep) {
        const ChannelSpec spec = cfg.spec_for(parameter);
        const auto start = std::chrono::steady_clock::now();

        SimPoint point;
        point.parameter = parameter;
        point.digest = 1469598103934665603ull;

        const std::uint64_t limit = cfg.frames ? cfg.frames : cfg.max_frames;
        const std::uint64_t target =
            cfg.frames ? 0 : (cfg.target_errors ? cfg.target_errors : 100);
        const std::uint64_t chunk_max = std::max<std::uint64_t>(64 * workers, 256);

        std::vector<detail::FrameOutcome> outcomes;
        std::uint64_t issued = 0;
        bool stop = false;
        while (!stop && issued < limit) {
            const std::uint64_t chunk = std::min<std::uint64_t>(chunk_max, limit - issued);
            outcomes.assign(static_cast<std::size_t>(chunk), {});
            std::vector<std::string> worker_errors(workers);
            auto body = [&](unsigned w) {
                try {
                    for (std::uint64_t off = w; off < chunk; off += workers)
                        outcomes[static_cast<std::size_t>(off)] = detail::simulate_frame(
                            params, spec, decoders[w], *psus[w], cfg.seed, issued + off);
                } catch (const std::exception& e) {
                    worker_errors[w] = e.what();
                }
            };
            if (workers == 1) {
                body(0);
            } else {
                std::vector<std::thread> pool;
                pool.reserve(workers - 1);
                for (unsigned w = 1; w < workers; ++w)
                    pool.emplace_back(body, w);
                body(0);
                for (std::thread& th : pool)
                    th.join();
            }
            for (const std::string& err : worker_errors)
                if (!err.empty())
                    throw std::runtime_error("simulation worker failed: " + err);

            for (std::uint64_t off = 0; off < chunk; ++off) {
                const detail::FrameOutcome& oc = outcomes[static_cast<std::size_t>(off)];
                ++point.frames;
                point.bit_errors += oc.bit_errors;
                point.frame_errors += oc.frame_error;
                point.digest ^= oc.info_hash;
                point.digest *= 1099511628211ull;
                if (target && point.frame_errors >= target) {
                    stop = true;
                    break;
                }
            }
            issued += chunk;
        }

        const auto elapsed = std::chrono::steady_clock::now() - start;
        point.seconds = std::chrono::duration<double>(elapsed).count();
        const double info_bits_sent =
            static_cast<double>(point.frames) * static_cast<double>(cfg.k);
        point.ber = info_bits_sent > 0
                        ? static_cast<double>(point.bit_errors) / info_bits_sent
                        : 0.0;
        point.fer = point.frames > 0
                        ? static_cast<double>(point.frame_errors) /
                              static_cast<double>(point.frames)
                        : 0.0;
        result.points.push_back(point);
    }
    return result;
}

inline void write_csv(const SimResult& result, std::ostream& out) {
    out << "param,frames,bit_errors,frame_errors,ber,fer,seconds\n";
    for (const SimPoint& p : result.points) {
        char buf[192];
        std::snprintf(buf, sizeof buf, "%.6g,%llu,%llu,%llu,%.8e,%.8e,%.3f\n",
                      p.parameter,
                      static_cast<unsigned long long>(p.frames),
                      static_cast<unsigned long long>(p.bit_errors),
                      static_cast<unsigned long long>(p.frame_errors),
                      p.ber, p.fer, p.seconds);
        out << buf;
    }
}

inline void write_json(const SimResult& result, std::ostream& out) {
    nlohmann::json doc;
    doc["points"] = nlohmann::json::array();
    for (const SimPoint& p : result.points)
        doc["points"].push_back({{"param", p.parameter},
                                 {"frames", p.frames},
                                 {"bit_errors", p.bit_errors},
                                 {"frame_errors", p.frame_errors},
                                 {"ber", p.ber},
                                 {"fer", p.fer},
                                 {"seconds", p.seconds}});
    out << doc.dump(2) << "\n";
}

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        return "";
    std::size_t last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

inline std::string unquote(const std::string& s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                          (s.front() == '\'' && s.back() == '\'')))
        return s.substr(1, s.size() - 2);
    return s;
}

inline double parse_double(const std::string& s) {
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    if (pos != s.size())
        throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

inline std::uint64_t parse_u64(const std::string& s) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a non-negative integer: '" + s + "'");
    }
    if (pos != s.size())
        throw std::invalid_argument("not a non-negative integer: '" + s + "'");
    return v;
}

inline std::vector<double> parse_number_list(const std::string& raw) {
    std::string body = raw;
    if (!body.empty() && body.front() == '[') {
        if (body.back() != ']')
            throw std::invalid_argument("unterminated list: '" + raw + "'");
        body = body.substr(1, body.size() - 2);
    }
    std::vector<double> values;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw std::invalid_argument("empty list entry in '" + raw + "'");
        values.push_back(parse_double(item));
    }
    if (values.empty())
        throw std::invalid_argument("empty list: '" + raw + "'");
    return values;
}

} // namespace detail

inline void apply_config_value(SimConfig& cfg, const std::string& key,
                               const std::string& raw_value) {
    const std::string value = detail::unquote(detail::trim(raw_value));
    if (key == "n")
        cfg.n = static_cast<unsigned>(detail::parse_u64(value));
    else if (key == "k")
        cfg.k = static_cast<std::size_t>(detail::parse_u64(value));
    else if (key == "channel") {
        if (value == "bsc")
            cfg.channel = ChannelSpec::Kind::Bsc;
        else if (value == "awgn")
            cfg.channel = ChannelSpec::Kind::AwgnBpsk;
        else
            throw std::invalid_argument("unknown channel: '" + value + "'");
    } else if (key == "params")
        cfg.sweep = detail::parse_number_list(value);
    else if (key == "frames")
        cfg.frames = detail::parse_u64(value);
    else if (key == "target_errors")
        cfg.target_errors = detail::parse_u64(value);
    else if (key == "max_frames")
        cfg.max_frames = detail::parse_u64(value);
    else if (key == "seed")
        cfg.seed = detail::parse_u64(value);
    else if (key == "psu")
        cfg.psu = parse_psu_model(value);
    else if (key == "workers")
        cfg.workers = static_cast<unsigned>(detail::parse_u64(value));
    else if (key == "design_erasure")
        cfg.design_erasure = detail::parse_double(value);
    else if (key == "out")
        cfg.out_csv = value;
    else if (key == "json")
        cfg.out_json = value;
    else
        throw std::invalid_argument("unknown configuration key: '" + key + "'");
}

// Flat "key = value" file: blank lines and '#' comments ignored, values may
// be numbers, bare or quoted strings, or [a, b, c] lists.
inline void load_config(SimConfig& cfg, std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty())
            continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected 'key = value'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = line.substr(eq + 1);
        try {
            apply_config_value(cfg, key, value);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": " +
                                        e.what());
        }
    }
}

} // namespace polar
