#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "qec/code.hpp"

namespace qec {

// Per-qubit distribution over {I, X, Y, Z}, indexed by Pauli.
struct QuaternaryDist {
    std::array<double, 4> p{1.0, 0.0, 0.0, 0.0};

    double operator[](Pauli e) const { return p[static_cast<int>(e)]; }
    double& operator[](Pauli e) { return p[static_cast<int>(e)]; }
    double sum() const { return p[0] + p[1] + p[2] + p[3]; }
};

enum class Schedule { serial, parallel };
enum class AlphaMode { plain, fixed, epsilon_scaled };

struct BpConfig {
    std::size_t max_iterations = 60;
    Schedule schedule = Schedule::serial;
    AlphaMode alpha_mode = AlphaMode::plain;
    double alpha = 1.0;       // used by AlphaMode::fixed
    double alpha_c1 = -0.16;  // epsilon_scaled: alpha = c1 * log10(eps) + c0
    double alpha_c0 = -0.48;
    double prior_epsilon = 0.1;

    double resolve_alpha() const;
    void validate() const;  // throws std::invalid_argument
};

// Mutable per-decode state. `gamma` holds the log-domain beliefs all
// messages are derived from; `beliefs` is its normalized counterpart,
// refreshed after every iteration. Message arrays are indexed by Tanner
// edge id (one entry per non-identity check-matrix position).
struct BeliefState {
    std::vector<QuaternaryDist> beliefs;
    std::vector<std::array<double, 4>> gamma;
    std::vector<double> lambda;     // qubit-to-check log-ratios
    std::vector<double> tanh_half;  // cached tanh(lambda/2)
    std::vector<double> delta;      // check-to-qubit log-ratios
    std::vector<std::uint32_t> ell;
    PauliVector last_decision;  // W0
    std::size_t iteration_count = 0;
};

enum class BpStatus { converged, exhausted };

struct DecodeOutcome {
    BpStatus status = BpStatus::exhausted;
    PauliVector estimate;  // hard decision at the final iteration
    std::vector<QuaternaryDist> beliefs;
    std::vector<std::uint32_t> ell;
    std::size_t iterations_used = 0;
};

// Argmax letter per qubit; ties prefer I, then X, then Y, then Z.
PauliVector hard_decision(const std::vector<QuaternaryDist>& beliefs);

// Incremental reliability update: ell_i += 1 where w1_i == w0_i, else 1.
void update_reliability_vec(const PauliVector& w0, const PauliVector& w1,
                            std::vector<std::uint32_t>& ell);

// (phi_x, phi_z): phi_x = max(q_X+q_Y, q_I+q_Z), phi_z = max(q_Z+q_Y, q_I+q_X).
std::pair<double, double> soft_reliability(const QuaternaryDist& q);

// Scalar-message quaternary belief propagation on the Tanner graph of a
// check matrix, with an optional memory exponent alpha (MBP). The graph and
// prior are precomputed once; decodes reuse them and are independent.
//
// Message rule: the qubit-to-check message on edge (m,i) is
//   lambda = log(sum of belief weights commuting with S_mi
//                / sum anticommuting), beliefs excluding edge (m,i);
// the check-to-qubit reply is
//   delta = (-1)^{z_m} * 2 atanh( prod_{i' != i} tanh(lambda_{i'->m} / 2) );
// the log-belief is the log prior plus (1/alpha) * sum of +-delta/2, signed
// by commutation of the letter with the edge's Pauli. lambda is clamped to
// |lambda| <= 30 and atanh arguments kept below 1 - 1e-12.
class Bp4Decoder {
public:
    Bp4Decoder(const StabilizerCode& code, BpConfig config);

    const StabilizerCode& code() const { return *code_; }
    const BpConfig& config() const { return cfg_; }
    double alpha() const { return alpha_; }
    std::size_t num_edges() const { return edge_check_.size(); }

    void init(BeliefState& s) const;
    BeliefState init() const;

    // One full sweep under the configured schedule (messages, then log and
    // normalized beliefs); increments iteration_count. ell and W0 are left
    // to the decode loop.
    void iterate(BeliefState& s, const BitVec& syndrome) const;

    DecodeOutcome decode(const BitVec& syndrome) const;
    DecodeOutcome decode(const BitVec& syndrome, BeliefState& scratch) const;

private:
    void refresh_delta_edge(BeliefState& s, const BitVec& z, std::uint32_t e0) const;
    void update_gamma(BeliefState& s, std::size_t i) const;
    void update_lambdas(BeliefState& s, std::size_t i) const;
    void normalize_beliefs(BeliefState& s) const;

    const StabilizerCode* code_;
    BpConfig cfg_;
    double alpha_;
    std::size_t n_, m_;
    std::vector<std::uint32_t> edge_check_, edge_qubit_;
    std::vector<std::uint8_t> edge_letter_;  // 1 = X, 2 = Y, 3 = Z
    std::vector<std::uint32_t> check_off_, check_eid_;
    std::vector<std::uint32_t> qubit_off_, qubit_eid_;
    std::array<double, 4> log_prior_;
    std::array<double, 4> prior_lambda_;  // initial message, by edge letter
};

}  // namespace qec
