#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qec/bp4.hpp"
#include "qec/code.hpp"
#include "qec/osd4.hpp"

namespace qec {

// Counter-derived SplitMix64 stream: one independent stream per trial, so
// results do not depend on how trials are distributed over workers.
std::uint64_t splitmix_fin(std::uint64_t z);

struct RngStream {
    std::uint64_t state = 0;
    explicit RngStream(std::uint64_t seed) : state(seed) {}
    std::uint64_t next_u64() {
        state += 0x9e3779b97f4a7c15ull;
        return splitmix_fin(state);
    }
    double next_double() {  // [0, 1), 53 bits
        return double(next_u64() >> 11) * 0x1.0p-53;
    }
};

std::uint64_t derive_stream_seed(std::uint64_t base_seed, std::uint64_t point_id,
                                 std::uint64_t trial_index);

// Each qubit draws (error?, letter) uniforms in a fixed order.
PauliVector sample_depolarizing(std::size_t n, double epsilon, RngStream& rng);

struct DecoderConfig {
    BpConfig bp;
    bool use_osd = true;
    std::size_t osd_order = 2;  // the w of OSD4-w
    OsdMode osd_mode = OsdMode::osd4;
};

struct TrialResult {
    bool bp_converged = false;
    bool osd_invoked = false;
    bool logical_failure = false;
    std::size_t iterations_used = 0;
    std::size_t estimate_weight = 0;
};

struct SingleShot {
    bool bp_converged = false;
    bool osd_invoked = false;
    std::size_t iterations = 0;
    PauliVector estimate;
    std::size_t weight = 0;
    bool estimate_valid = false;  // estimate reproduces the syndrome
};

// Reusable per-worker decode pipeline (BP graph built once, scratch reused).
class TrialRunner {
public:
    TrialRunner(const StabilizerCode& code, DecoderConfig config);

    TrialResult run(double epsilon, RngStream& rng);
    TrialResult decode_against(const PauliVector& error);
    SingleShot decode_syndrome(const BitVec& syndrome);

    const DecoderConfig& config() const { return cfg_; }

private:
    const StabilizerCode* code_;
    DecoderConfig cfg_;
    Bp4Decoder bp_;
    BeliefState scratch_;
};

// Convenience single-trial entry point; loops should hold a TrialRunner.
TrialResult run_trial(const StabilizerCode& code, const DecoderConfig& config,
                      double epsilon, RngStream& rng);

struct StopRule {
    std::uint64_t min_logical_errors = 100;
    std::uint64_t max_trials = 1000000;
};

struct RunStats {
    std::string code;
    std::size_t n = 0, k = 0;
    int d = 0;
    double epsilon = 0;
    std::uint64_t trials = 0, logical_errors = 0;
    std::uint64_t bp_converged = 0, osd_invoked = 0;
    double mean_iters = 0, ler = 0, ler_stderr = 0;
};

// Runs trials in fixed-size batches and finalizes at the smallest
// batch-aligned prefix satisfying the stop rule, so the result is
// byte-identical for any worker count.
RunStats run_point(const StabilizerCode& code, const DecoderConfig& config,
                   double epsilon, StopRule stop, std::uint64_t seed,
                   std::uint64_t point_id = 0, unsigned workers = 1);

// Cartesian grid, point_id = code index * #epsilons + epsilon index.
std::vector<RunStats> sweep(const std::vector<const StabilizerCode*>& codes,
                            const std::vector<double>& epsilons,
                            const DecoderConfig& config, StopRule stop,
                            std::uint64_t seed, unsigned workers = 1);

struct PairCrossing {
    int d_low = 0, d_high = 0;
    bool found = false;
    double epsilon = 0;
};

struct CrossingEstimate {
    bool found = false;
    double mean = 0, spread = 0;
    std::vector<PairCrossing> pairs;
};

// Pairwise log-linear interpolation of ler(epsilon) per adjacent distance
// pair; grid points with zero logical errors are skipped.
CrossingEstimate estimate_threshold(const std::vector<RunStats>& table);

// CSV with the fixed header and an optional leading "# manifest: ..." line;
// JSON as {"manifest": ..., "points": [...]}.
std::string run_stats_csv(const std::vector<RunStats>& rows,
                          const std::string& manifest_json);
std::string run_stats_json(const std::vector<RunStats>& rows,
                           const std::string& manifest_json);

}  // namespace qec
