#include "qec/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <regex>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

namespace qec {

namespace {

long long parse_int(const std::string& tok, const char* what) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("bad integer '") + tok + "' for " + what);
    }
}

double parse_num(const std::string& tok, const char* what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("bad number '") + tok + "' for " + what);
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t p = s.find(sep, start);
        out.push_back(s.substr(start, p - start));
        if (p == std::string::npos) break;
        start = p + 1;
    }
    return out;
}

}  // namespace

std::vector<double> parse_eps_list(const std::string& s) {
    std::vector<double> out;
    if (s.find(':') != std::string::npos) {
        auto f = split(s, ':');
        if (f.size() != 3)
            throw std::invalid_argument("epsilon range must be start:stop:step");
        double start = parse_num(f[0], "--eps"), stop = parse_num(f[1], "--eps"),
               step = parse_num(f[2], "--eps");
        if (step <= 0 || stop < start)
            throw std::invalid_argument("epsilon range needs step > 0 and stop >= start");
        long long count = static_cast<long long>(std::floor((stop - start) / step + 1e-9)) + 1;
        for (long long i = 0; i < count; ++i) out.push_back(start + double(i) * step);
    } else {
        for (const std::string& tok : split(s, ','))
            out.push_back(parse_num(tok, "--eps"));
    }
    if (out.empty()) throw std::invalid_argument("empty epsilon list");
    for (double e : out)
        if (!(e >= 0.0 && e <= 1.0))
            throw std::invalid_argument("epsilon " + std::to_string(e) + " outside [0,1]");
    return out;
}

std::vector<int> parse_d_list(const std::string& s) {
    std::vector<int> out;
    for (const std::string& tok : split(s, ','))
        out.push_back(static_cast<int>(parse_int(tok, "--d")));
    if (out.empty()) throw std::invalid_argument("empty --d list");
    return out;
}

StabilizerCode build_family(const std::string& family, int d) {
    if (family == "toric") return toric_code(d);
    if (family == "surface") return surface_code(d);
    if (family == "color666") return color_code_666(d);
    if (family == "xzzx") return xzzx_code(d);
    throw std::invalid_argument("unknown family '" + family +
                                "' (toric, surface, color666, xzzx)");
}

DecoderConfig parse_decoder_spec(const std::string& spec, const std::string& alpha,
                                 std::size_t max_iterations) {
    DecoderConfig cfg;
    cfg.bp.max_iterations = max_iterations;

    std::string base = spec, post;
    if (std::size_t p = spec.find('+'); p != std::string::npos) {
        base = spec.substr(0, p);
        post = spec.substr(p + 1);
    }
    if (base == "bp4") {
        cfg.bp.alpha_mode = AlphaMode::plain;
        if (!alpha.empty())
            throw std::invalid_argument("--alpha applies to mbp4 decoder specs only");
    } else if (base == "mbp4") {
        if (alpha.empty()) {
            cfg.bp.alpha_mode = AlphaMode::fixed;
            cfg.bp.alpha = 1.6;
        } else if (alpha == "eps") {
            cfg.bp.alpha_mode = AlphaMode::epsilon_scaled;
        } else {
            cfg.bp.alpha_mode = AlphaMode::fixed;
            cfg.bp.alpha = parse_num(alpha, "--alpha");
        }
    } else {
        throw std::invalid_argument("decoder spec must start with bp4 or mbp4, got '" +
                                    spec + "'");
    }
    if (post.empty()) {
        cfg.use_osd = false;
    } else {
        static const std::regex re("^(osd|mosd)([0-9]+)$");
        std::smatch m;
        if (!std::regex_match(post, m, re))
            throw std::invalid_argument(
                "bad post-processor '" + post +
                "' (use osd<w> or mosd<w>; the digit is the OSD4 order w, so osd2 "
                "means OSD4 with w=2)");
        cfg.use_osd = true;
        cfg.osd_mode = m[1] == "osd" ? OsdMode::osd4 : OsdMode::mosd4;
        cfg.osd_order = static_cast<std::size_t>(parse_int(m[2], "osd order"));
    }
    return cfg;
}

namespace {

struct CodeSet {
    std::vector<StabilizerCode> codes;
    nlohmann::json manifest_code;
    bool from_file = false;
};

CodeSet make_codes(const std::string& family, const std::string& dlist,
                   const std::string& code_file, bool multi_d) {
    if (!family.empty() && !code_file.empty())
        throw std::invalid_argument("give either --family or --code-file, not both");
    CodeSet cs;
    if (!code_file.empty()) {
        cs.codes.push_back(load_code_file(code_file));
        cs.manifest_code = {{"file", code_file}};
        cs.from_file = true;
        return cs;
    }
    if (family.empty())
        throw std::invalid_argument("one of --family or --code-file is required");
    if (dlist.empty()) throw std::invalid_argument("--family requires --d");
    std::vector<int> ds = parse_d_list(dlist);
    if (!multi_d && ds.size() != 1)
        throw std::invalid_argument("this command takes a single --d value");
    for (int d : ds) cs.codes.push_back(build_family(family, d));
    cs.manifest_code = {{"family", family}, {"d", ds}};
    return cs;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

struct SimArgs {
    std::string family, d, code_file;
    std::string decoder = "bp4+osd2", alpha;
    std::string eps;
    std::uint64_t events = 100, max_trials = 1000000, seed = 0;
    unsigned workers = 1;
    std::string out, format = "csv";
};

void add_sim_options(CLI::App* cmd, SimArgs& a) {
    cmd->add_option("--family", a.family, "code family (toric, surface, color666, xzzx)");
    cmd->add_option("--d", a.d, "distance or comma list, e.g. 3,5,7");
    cmd->add_option("--code-file", a.code_file, "check-matrix file instead of a family");
    cmd->add_option("--decoder", a.decoder,
                    "bp4 | mbp4, optionally +osd<w> or +mosd<w> (w = OSD4 order)");
    cmd->add_option("--alpha", a.alpha, "mbp4 memory parameter: number or 'eps'");
    cmd->add_option("--eps", a.eps, "epsilon list: start:stop:step or comma list")
        ->required();
    cmd->add_option("--events", a.events, "stop after this many logical errors");
    cmd->add_option("--max-trials", a.max_trials, "hard cap on trials per point");
    cmd->add_option("--seed", a.seed, "base RNG seed")->envname("QEC_BPOSD_SEED");
    cmd->add_option("--workers", a.workers, "worker threads (results are identical)");
    cmd->add_option("--out", a.out, "output path ('-' or empty = stdout)");
    cmd->add_option("--format", a.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

int cmd_gen_code(const std::string& family, const std::string& d,
                 const std::string& code_file, const std::string& out) {
    CodeSet cs = make_codes(family, d, code_file, false);
    const StabilizerCode& code = cs.codes.front();
    if (!out.empty()) write_code_file(code, out);
    std::printf("%s: n=%zu k=%zu rank=%zu\n", code.name.c_str(), code.n, code.k,
                code.n - code.k);
    return 0;
}

int cmd_decode(const SimArgs& a, const std::string& syndrome_str,
               const std::string& error_str) {
    CodeSet cs = make_codes(a.family, a.d, a.code_file, false);
    const StabilizerCode& code = cs.codes.front();

    DecoderConfig cfg = parse_decoder_spec(a.decoder, a.alpha, cs.from_file ? 100 : 60);
    double prior = 0.1;
    if (!a.eps.empty()) {
        std::vector<double> es = parse_eps_list(a.eps);
        if (es.size() != 1)
            throw std::invalid_argument("decode takes a single --eps value");
        prior = es[0];
    }
    if (!(prior > 0.0 && prior < 1.0))
        throw std::invalid_argument("decode prior epsilon must be in (0,1)");
    cfg.bp.prior_epsilon = prior;

    if (syndrome_str.empty() == error_str.empty())
        throw std::invalid_argument("give exactly one of --syndrome or --error");

    BitVec z;
    PauliVector injected;
    bool have_error = !error_str.empty();
    if (have_error) {
        injected = PauliVector::from_string(error_str);
        if (injected.num_qubits() != code.n)
            throw std::invalid_argument("error string has " +
                                        std::to_string(injected.num_qubits()) +
                                        " qubits, code has " + std::to_string(code.n));
        z = code.checks.syndrome_of(injected);
    } else {
        z = BitVec::from_string(syndrome_str);
        if (z.size() != code.checks.num_checks())
            throw std::invalid_argument(
                "syndrome has " + std::to_string(z.size()) + " bits, expected " +
                std::to_string(code.checks.num_checks()));
    }

    TrialRunner runner(code, cfg);
    SingleShot shot = runner.decode_syndrome(z);

    std::printf("code=%s n=%zu k=%zu\n", code.name.c_str(), code.n, code.k);
    std::printf("converged=%s iters=%zu\n", shot.bp_converged ? "true" : "false",
                shot.iterations);
    std::printf("osd_invoked=%s\n", shot.osd_invoked ? "true" : "false");
    std::printf("estimate=%s\n", shot.estimate.str().c_str());
    std::printf("weight=%zu\n", shot.weight);
    std::printf("valid=%s\n", shot.estimate_valid ? "true" : "false");
    if (have_error) {
        const char* cls;
        if (!shot.estimate_valid) {
            cls = "invalid-estimate";
        } else {
            BitVec residual = shot.estimate.bits() ^ injected.bits();
            cls = code.member_of_rowspace(residual) ? "stabilizer-equivalent"
                                                    : "logical-error";
        }
        std::printf("classification=%s\n", cls);
    }
    return 0;
}

int cmd_sweep(const SimArgs& a, bool threshold) {
    CodeSet cs = make_codes(a.family, a.d, a.code_file, true);
    std::vector<double> eps = parse_eps_list(a.eps);
    DecoderConfig cfg = parse_decoder_spec(a.decoder, a.alpha, cs.from_file ? 100 : 60);
    StopRule stop{a.events, a.max_trials};

    nlohmann::json manifest = {{"command", threshold ? "threshold" : "sweep"},
                               {"code", cs.manifest_code},
                               {"decoder", a.decoder},
                               {"eps", eps},
                               {"stop", {{"events", a.events}, {"max_trials", a.max_trials}}},
                               {"seed", a.seed},
                               {"out", a.out.empty() ? "-" : a.out},
                               {"format", a.format}};
    if (a.decoder.rfind("mbp4", 0) == 0)
        manifest["alpha"] = a.alpha.empty() ? "1.6" : a.alpha;
    std::string manifest_str = manifest.dump();

    std::vector<RunStats> rows;
    rows.reserve(cs.codes.size() * eps.size());
    for (std::size_t ci = 0; ci < cs.codes.size(); ++ci) {
        for (std::size_t ei = 0; ei < eps.size(); ++ei) {
            RunStats rs = run_point(cs.codes[ci], cfg, eps[ei], stop, a.seed,
                                    ci * eps.size() + ei, a.workers);
            std::fprintf(stderr, "point code=%s eps=%g trials=%llu ler=%.4g\n",
                         rs.code.c_str(), rs.epsilon,
                         static_cast<unsigned long long>(rs.trials), rs.ler);
            rows.push_back(std::move(rs));
        }
    }

    CrossingEstimate est;
    if (threshold) est = estimate_threshold(rows);

    std::string payload;
    if (a.format == "csv") {
        payload = run_stats_csv(rows, manifest_str);
        if (threshold) {
            for (const PairCrossing& pc : est.pairs) {
                char buf[128];
                if (pc.found)
                    std::snprintf(buf, sizeof buf, "# pair d=%d/d=%d: crossing=%.6g\n",
                                  pc.d_low, pc.d_high, pc.epsilon);
                else
                    std::snprintf(buf, sizeof buf, "# pair d=%d/d=%d: no-crossing\n",
                                  pc.d_low, pc.d_high);
                payload += buf;
            }
            char buf[128];
            if (est.found)
                std::snprintf(buf, sizeof buf, "# threshold: mean=%.6g spread=%.6g\n",
                              est.mean, est.spread);
            else
                std::snprintf(buf, sizeof buf, "# threshold: no-crossing\n");
            payload += buf;
        }
    } else {
        if (threshold) {
            nlohmann::json doc = nlohmann::json::parse(run_stats_json(rows, manifest_str));
            nlohmann::json pairs = nlohmann::json::array();
            for (const PairCrossing& pc : est.pairs) {
                nlohmann::json pj = {{"d_low", pc.d_low},
                                     {"d_high", pc.d_high},
                                     {"found", pc.found}};
                if (pc.found) pj["epsilon"] = pc.epsilon;
                pairs.push_back(std::move(pj));
            }
            doc["threshold"] = {{"found", est.found}, {"pairs", std::move(pairs)}};
            if (est.found) {
                doc["threshold"]["mean"] = est.mean;
                doc["threshold"]["spread"] = est.spread;
            }
            payload = doc.dump(2) + "\n";
        } else {
            payload = run_stats_json(rows, manifest_str);
        }
    }
    write_output(a.out, payload);

    if (threshold && !est.found) {
        std::fprintf(stderr, "threshold: no crossing in the given epsilon range\n");
        return 1;
    }
    if (threshold)
        std::fprintf(stderr, "threshold: mean=%.6g spread=%.6g\n", est.mean, est.spread);
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"quaternary belief-propagation + ordered-statistics decoding toolkit",
                 "bposd"};
    app.require_subcommand(1);

    std::string gc_family, gc_d, gc_file, gc_out;
    CLI::App* gen = app.add_subcommand("gen-code", "build or validate a check matrix");
    gen->add_option("--family", gc_family, "toric, surface, color666, xzzx");
    gen->add_option("--d", gc_d, "distance");
    gen->add_option("--code-file", gc_file, "validate an existing file");
    gen->add_option("--out", gc_out, "write the check-matrix text format here");

    SimArgs dec;
    std::string dec_syndrome, dec_error;
    CLI::App* decode = app.add_subcommand("decode", "decode one syndrome");
    decode->add_option("--family", dec.family, "code family");
    decode->add_option("--d", dec.d, "distance");
    decode->add_option("--code-file", dec.code_file, "check-matrix file");
    decode->add_option("--decoder", dec.decoder, "decoder spec, e.g. bp4+osd2");
    decode->add_option("--alpha", dec.alpha, "mbp4 memory parameter");
    decode->add_option("--eps", dec.eps, "prior epsilon (default 0.1)");
    decode->add_option("--syndrome", dec_syndrome, "syndrome bitstring");
    decode->add_option("--error", dec_error, "Pauli string to inject, e.g. IXZYI");

    SimArgs sw, th;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "logical-error-rate grid");
    add_sim_options(sweep_cmd, sw);
    CLI::App* th_cmd = app.add_subcommand("threshold", "sweep plus crossing estimate");
    add_sim_options(th_cmd, th);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(std::move(rev));
    } catch (const CLI::Success& e) {
        app.exit(e);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(gen)) return cmd_gen_code(gc_family, gc_d, gc_file, gc_out);
        if (app.got_subcommand(decode)) return cmd_decode(dec, dec_syndrome, dec_error);
        if (app.got_subcommand(sweep_cmd)) return cmd_sweep(sw, false);
        return cmd_sweep(th, true);
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}

}  // namespace qec
