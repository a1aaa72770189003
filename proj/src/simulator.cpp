#include "qec/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace qec {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;
constexpr std::uint64_t kBatchSize = 512;
}  // namespace

std::uint64_t splitmix_fin(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
}

std::uint64_t derive_stream_seed(std::uint64_t base_seed, std::uint64_t point_id,
                                 std::uint64_t trial_index) {
    std::uint64_t z = splitmix_fin(base_seed + kGolden * (point_id + 1));
    return splitmix_fin(z + kGolden * (trial_index + 1));
}

PauliVector sample_depolarizing(std::size_t n, double epsilon, RngStream& rng) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("sample_depolarizing: epsilon must be in [0,1]");
    PauliVector e(n);
    for (std::size_t i = 0; i < n; ++i) {
        double u = rng.next_double();
        double v = rng.next_double();
        if (u < epsilon) {
            Pauli p = v < 1.0 / 3.0 ? Pauli::X : (v < 2.0 / 3.0 ? Pauli::Y : Pauli::Z);
            e.set(i, p);
        }
    }
    return e;
}

TrialRunner::TrialRunner(const StabilizerCode& code, DecoderConfig config)
    : code_(&code), cfg_(std::move(config)), bp_(code, cfg_.bp) {}

TrialResult TrialRunner::run(double epsilon, RngStream& rng) {
    PauliVector e = sample_depolarizing(code_->n, epsilon, rng);
    return decode_against(e);
}

TrialResult TrialRunner::decode_against(const PauliVector& error) {
    BitVec z = code_->checks.syndrome_of(error);
    DecodeOutcome out = bp_.decode(z, scratch_);

    TrialResult tr;
    tr.bp_converged = out.status == BpStatus::converged;
    tr.iterations_used = out.iterations_used;

    PauliVector est;
    bool valid;
    if (tr.bp_converged) {
        est = std::move(out.estimate);
        valid = true;
    } else if (cfg_.use_osd) {
        OsdSolution sol = osd_w(code_->checks, z, out.estimate, out.beliefs, out.ell,
                                cfg_.osd_order, cfg_.osd_mode, code_->n - code_->k);
        tr.osd_invoked = true;
        est = std::move(sol.estimate);
        if (!(code_->checks.syndrome_of(est) == z))
            throw std::logic_error("decode: post-processed estimate violates the syndrome");
        valid = true;
    } else {
        est = std::move(out.estimate);
        valid = code_->checks.syndrome_of(est) == z;
    }

    tr.estimate_weight = est.weight();
    if (valid) {
        BitVec residual = est.bits() ^ error.bits();
        tr.logical_failure = code_->residual_is_logical(residual);
    } else {
        tr.logical_failure = true;  // wrong syndrome can never be degenerate success
    }
    return tr;
}

SingleShot TrialRunner::decode_syndrome(const BitVec& syndrome) {
    DecodeOutcome out = bp_.decode(syndrome, scratch_);
    SingleShot s;
    s.bp_converged = out.status == BpStatus::converged;
    s.iterations = out.iterations_used;
    if (!s.bp_converged && cfg_.use_osd) {
        OsdSolution sol = osd_w(code_->checks, syndrome, out.estimate, out.beliefs,
                                out.ell, cfg_.osd_order, cfg_.osd_mode,
                                code_->n - code_->k);
        s.osd_invoked = true;
        s.estimate = std::move(sol.estimate);
    } else {
        s.estimate = std::move(out.estimate);
    }
    s.weight = s.estimate.weight();
    s.estimate_valid = code_->checks.syndrome_of(s.estimate) == syndrome;
    return s;
}

TrialResult run_trial(const StabilizerCode& code, const DecoderConfig& config,
                      double epsilon, RngStream& rng) {
    TrialRunner runner(code, config);
    return runner.run(epsilon, rng);
}

namespace {

struct BatchStats {
    std::uint64_t trials = 0, errors = 0, converged = 0, osd = 0, iters = 0;
};

}  // namespace

RunStats run_point(const StabilizerCode& code, const DecoderConfig& config,
                   double epsilon, StopRule stop, std::uint64_t seed,
                   std::uint64_t point_id, unsigned workers) {
    if (stop.min_logical_errors < 1)
        throw std::invalid_argument("run_point: min_logical_errors must be >= 1");
    if (stop.max_trials < 1)
        throw std::invalid_argument("run_point: max_trials must be >= 1");

    DecoderConfig cfg = config;
    if (epsilon > 0.0 && epsilon < 1.0) cfg.bp.prior_epsilon = epsilon;

    const std::uint64_t max_batches = (stop.max_trials + kBatchSize - 1) / kBatchSize;
    std::vector<BatchStats> results(max_batches);
    std::unique_ptr<std::atomic<bool>[]> done(new std::atomic<bool>[max_batches]);
    for (std::uint64_t b = 0; b < max_batches; ++b) done[b].store(false);

    std::atomic<std::uint64_t> claim{0};
    std::atomic<bool> stop_flag{false};
    std::mutex mx;
    std::uint64_t frontier = 0, pre_trials = 0, pre_errors = 0;
    std::uint64_t final_batches = max_batches;
    bool decided = false;

    auto worker_fn = [&]() {
        TrialRunner runner(code, cfg);
        while (!stop_flag.load(std::memory_order_relaxed)) {
            std::uint64_t b = claim.fetch_add(1);
            if (b >= max_batches) break;
            BatchStats bs;
            std::uint64_t t1 = std::min((b + 1) * kBatchSize, stop.max_trials);
            for (std::uint64_t t = b * kBatchSize; t < t1; ++t) {
                RngStream rng(derive_stream_seed(seed, point_id, t));
                TrialResult tr = runner.run(epsilon, rng);
                ++bs.trials;
                bs.errors += tr.logical_failure ? 1 : 0;
                bs.converged += tr.bp_converged ? 1 : 0;
                bs.osd += tr.osd_invoked ? 1 : 0;
                bs.iters += tr.iterations_used;
            }
            results[b] = bs;
            done[b].store(true, std::memory_order_release);
            std::lock_guard<std::mutex> lk(mx);
            while (frontier < max_batches &&
                   done[frontier].load(std::memory_order_acquire)) {
                pre_trials += results[frontier].trials;
                pre_errors += results[frontier].errors;
                ++frontier;
                if (!decided && (pre_errors >= stop.min_logical_errors ||
                                 pre_trials >= stop.max_trials)) {
                    decided = true;
                    final_batches = frontier;
                    stop_flag.store(true);
                }
            }
        }
    };

    unsigned nw = std::max(1u, workers);
    if (nw == 1) {
        worker_fn();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(nw);
        for (unsigned i = 0; i < nw; ++i) threads.emplace_back(worker_fn);
        for (auto& t : threads) t.join();
    }

    BatchStats tot;
    for (std::uint64_t b = 0; b < final_batches; ++b) {
        tot.trials += results[b].trials;
        tot.errors += results[b].errors;
        tot.converged += results[b].converged;
        tot.osd += results[b].osd;
        tot.iters += results[b].iters;
    }

    RunStats rs;
    rs.code = code.name;
    rs.n = code.n;
    rs.k = code.k;
    rs.d = code.distance;
    rs.epsilon = epsilon;
    rs.trials = tot.trials;
    rs.logical_errors = tot.errors;
    rs.bp_converged = tot.converged;
    rs.osd_invoked = tot.osd;
    rs.mean_iters = tot.trials ? double(tot.iters) / double(tot.trials) : 0.0;
    rs.ler = tot.trials ? double(tot.errors) / double(tot.trials) : 0.0;
    rs.ler_stderr = tot.trials ? std::sqrt(rs.ler * (1.0 - rs.ler) / double(tot.trials)) : 0.0;
    return rs;
}

std::vector<RunStats> sweep(const std::vector<const StabilizerCode*>& codes,
                            const std::vector<double>& epsilons,
                            const DecoderConfig& config, StopRule stop,
                            std::uint64_t seed, unsigned workers) {
    if (codes.empty() || epsilons.empty())
        throw std::invalid_argument("sweep: code and epsilon lists must be non-empty");
    std::vector<RunStats> out;
    out.reserve(codes.size() * epsilons.size());
    for (std::size_t ci = 0; ci < codes.size(); ++ci)
        for (std::size_t ei = 0; ei < epsilons.size(); ++ei)
            out.push_back(run_point(*codes[ci], config, epsilons[ei], stop, seed,
                                    ci * epsilons.size() + ei, workers));
    return out;
}

CrossingEstimate estimate_threshold(const std::vector<RunStats>& table) {
    // d -> (epsilon -> row), epsilons ascending per distance
    std::map<int, std::map<double, const RunStats*>> by_d;
    for (const RunStats& r : table) by_d[r.d][r.epsilon] = &r;
    if (by_d.size() < 2)
        throw std::invalid_argument("estimate_threshold: need at least two distances");

    std::vector<int> ds;
    for (auto& [d, rows] : by_d) ds.push_back(d);

    CrossingEstimate est;
    double lo = 0, hi = 0, sum = 0;
    std::size_t found_pairs = 0;
    for (std::size_t i = 0; i + 1 < ds.size(); ++i) {
        PairCrossing pc;
        pc.d_low = ds[i];
        pc.d_high = ds[i + 1];

        // usable grid: both curves present with at least one logical event
        std::vector<std::pair<double, double>> delta;  // (epsilon, log-ler gap)
        for (auto& [eps, ra] : by_d[ds[i]]) {
            auto it = by_d[ds[i + 1]].find(eps);
            if (it == by_d[ds[i + 1]].end()) continue;
            const RunStats* rb = it->second;
            if (ra->logical_errors == 0 || rb->logical_errors == 0) continue;
            delta.emplace_back(eps, std::log(ra->ler) - std::log(rb->ler));
        }
        for (std::size_t a = 0; a + 1 < delta.size() && !pc.found; ++a) {
            auto [ea, da] = delta[a];
            auto [eb, db] = delta[a + 1];
            if (da == 0.0) {
                pc.found = true;
                pc.epsilon = ea;
            } else if (da * db < 0.0) {
                pc.found = true;
                pc.epsilon = ea + da * (eb - ea) / (da - db);
            }
        }
        if (!pc.found && !delta.empty() && delta.back().second == 0.0) {
            pc.found = true;
            pc.epsilon = delta.back().first;
        }
        if (pc.found) {
            ++found_pairs;
            sum += pc.epsilon;
            lo = found_pairs == 1 ? pc.epsilon : std::min(lo, pc.epsilon);
            hi = found_pairs == 1 ? pc.epsilon : std::max(hi, pc.epsilon);
        }
        est.pairs.push_back(pc);
    }
    if (found_pairs > 0) {
        est.found = true;
        est.mean = sum / double(found_pairs);
        est.spread = hi - lo;
    }
    return est;
}

namespace {

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

}  // namespace

std::string run_stats_csv(const std::vector<RunStats>& rows,
                          const std::string& manifest_json) {
    std::string out;
    if (!manifest_json.empty()) out += "# manifest: " + manifest_json + "\n";
    out += "code,n,k,d,epsilon,trials,logical_errors,bp_converged,osd_invoked,"
           "mean_iters,ler,ler_stderr\n";
    for (const RunStats& r : rows) {
        out += r.code + "," + std::to_string(r.n) + "," + std::to_string(r.k) + "," +
               std::to_string(r.d) + "," + fmt("%g", r.epsilon) + "," +
               std::to_string(r.trials) + "," + std::to_string(r.logical_errors) + "," +
               std::to_string(r.bp_converged) + "," + std::to_string(r.osd_invoked) +
               "," + fmt("%.6f", r.mean_iters) + "," + fmt("%.9g", r.ler) + "," +
               fmt("%.9g", r.ler_stderr) + "\n";
    }
    return out;
}

std::string run_stats_json(const std::vector<RunStats>& rows,
                           const std::string& manifest_json) {
    nlohmann::json doc;
    if (!manifest_json.empty()) doc["manifest"] = nlohmann::json::parse(manifest_json);
    nlohmann::json points = nlohmann::json::array();
    for (const RunStats& r : rows) {
        points.push_back({{"code", r.code},
                          {"n", r.n},
                          {"k", r.k},
                          {"d", r.d},
                          {"epsilon", r.epsilon},
                          {"trials", r.trials},
                          {"logical_errors", r.logical_errors},
                          {"bp_converged", r.bp_converged},
                          {"osd_invoked", r.osd_invoked},
                          {"mean_iters", r.mean_iters},
                          {"ler", r.ler},
                          {"ler_stderr", r.ler_stderr}});
    }
    doc["points"] = std::move(points);
    return doc.dump(2) + "\n";
}

}  // namespace qec
