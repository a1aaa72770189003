#include "qec/bp4.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace qec {

namespace {

constexpr double kLambdaClamp = 30.0;
constexpr double kAtanhGuard = 1.0 - 1e-12;

double lse2(double a, double b) {
    double hi = a > b ? a : b;
    double lo = a > b ? b : a;
    return hi + std::log1p(std::exp(lo - hi));
}

double clamp_sym(double v, double lim) {
    if (v > lim) return lim;
    if (v < -lim) return -lim;
    return v;
}

// the two non-identity letters different from L (L in {1,2,3})
constexpr int kOther[4][2] = {{0, 0}, {2, 3}, {1, 3}, {1, 2}};

}  // namespace

double BpConfig::resolve_alpha() const {
    switch (alpha_mode) {
        case AlphaMode::plain: return 1.0;
        case AlphaMode::fixed: return alpha;
        case AlphaMode::epsilon_scaled:
            return alpha_c1 * std::log10(prior_epsilon) + alpha_c0;
    }
    return 1.0;
}

void BpConfig::validate() const {
    if (max_iterations < 1)
        throw std::invalid_argument("BpConfig: max_iterations must be >= 1");
    if (!(prior_epsilon > 0.0 && prior_epsilon < 1.0))
        throw std::invalid_argument("BpConfig: prior_epsilon must be in (0,1)");
    double a = resolve_alpha();
    if (!(a > 0.0))
        throw std::invalid_argument("BpConfig: resolved alpha is " + std::to_string(a) +
                                    ", must be positive");
}

PauliVector hard_decision(const std::vector<QuaternaryDist>& beliefs) {
    PauliVector w(beliefs.size());
    for (std::size_t i = 0; i < beliefs.size(); ++i) {
        int best = 0;
        for (int e = 1; e < 4; ++e)
            if (beliefs[i].p[e] > beliefs[i].p[best]) best = e;
        w.set(i, static_cast<Pauli>(best));
    }
    return w;
}

void update_reliability_vec(const PauliVector& w0, const PauliVector& w1,
                            std::vector<std::uint32_t>& ell) {
    if (w0.num_qubits() != w1.num_qubits() || ell.size() != w0.num_qubits())
        throw std::invalid_argument("update_reliability_vec: length mismatch");
    for (std::size_t i = 0; i < ell.size(); ++i) {
        if (w1.at(i) == w0.at(i)) ++ell[i];
        else ell[i] = 1;
    }
}

std::pair<double, double> soft_reliability(const QuaternaryDist& q) {
    double qi = q[Pauli::I], qx = q[Pauli::X], qy = q[Pauli::Y], qz = q[Pauli::Z];
    double phi_x = std::max(qx + qy, qi + qz);
    double phi_z = std::max(qz + qy, qi + qx);
    return {phi_x, phi_z};
}

Bp4Decoder::Bp4Decoder(const StabilizerCode& code, BpConfig config)
    : code_(&code), cfg_(config) {
    cfg_.validate();
    alpha_ = cfg_.resolve_alpha();
    n_ = code.n;
    m_ = code.checks.num_checks();

    for (std::size_t m = 0; m < m_; ++m) {
        for (std::size_t q = 0; q < n_; ++q) {
            Pauli s = code.checks.at(m, q);
            if (s == Pauli::I) continue;
            edge_check_.push_back(static_cast<std::uint32_t>(m));
            edge_qubit_.push_back(static_cast<std::uint32_t>(q));
            edge_letter_.push_back(static_cast<std::uint8_t>(s));
        }
    }
    std::size_t ne = edge_check_.size();

    check_off_.assign(m_ + 1, 0);
    for (std::size_t e = 0; e < ne; ++e) ++check_off_[edge_check_[e] + 1];
    for (std::size_t m = 0; m < m_; ++m) check_off_[m + 1] += check_off_[m];
    check_eid_.resize(ne);
    {
        std::vector<std::uint32_t> pos(check_off_.begin(), check_off_.end() - 1);
        for (std::size_t e = 0; e < ne; ++e)
            check_eid_[pos[edge_check_[e]]++] = static_cast<std::uint32_t>(e);
    }
    qubit_off_.assign(n_ + 1, 0);
    for (std::size_t e = 0; e < ne; ++e) ++qubit_off_[edge_qubit_[e] + 1];
    for (std::size_t q = 0; q < n_; ++q) qubit_off_[q + 1] += qubit_off_[q];
    qubit_eid_.resize(ne);
    {
        std::vector<std::uint32_t> pos(qubit_off_.begin(), qubit_off_.end() - 1);
        for (std::size_t e = 0; e < ne; ++e)
            qubit_eid_[pos[edge_qubit_[e]]++] = static_cast<std::uint32_t>(e);
    }

    double eps = cfg_.prior_epsilon;
    std::array<double, 4> prior{1.0 - eps, eps / 3.0, eps / 3.0, eps / 3.0};
    for (int e = 0; e < 4; ++e) log_prior_[e] = std::log(prior[e]);
    prior_lambda_[0] = 0.0;
    for (int l = 1; l < 4; ++l) {
        double comm = prior[0] + prior[l];
        double anti = prior[kOther[l][0]] + prior[kOther[l][1]];
        prior_lambda_[l] = clamp_sym(std::log(comm / anti), kLambdaClamp);
    }
}

void Bp4Decoder::init(BeliefState& s) const {
    std::size_t ne = edge_check_.size();
    s.beliefs.assign(n_, QuaternaryDist{});
    s.gamma.assign(n_, log_prior_);
    for (std::size_t i = 0; i < n_; ++i) {
        double eps = cfg_.prior_epsilon;
        s.beliefs[i].p = {1.0 - eps, eps / 3.0, eps / 3.0, eps / 3.0};
    }
    s.lambda.resize(ne);
    s.tanh_half.resize(ne);
    for (std::size_t e = 0; e < ne; ++e) {
        s.lambda[e] = prior_lambda_[edge_letter_[e]];
        s.tanh_half[e] = std::tanh(0.5 * s.lambda[e]);
    }
    s.delta.assign(ne, 0.0);
    s.ell.assign(n_, 1);
    s.last_decision = PauliVector(n_);
    s.iteration_count = 0;
}

BeliefState Bp4Decoder::init() const {
    BeliefState s;
    init(s);
    return s;
}

void Bp4Decoder::refresh_delta_edge(BeliefState& s, const BitVec& z,
                                    std::uint32_t e0) const {
    std::uint32_t m = edge_check_[e0];
    double prod = 1.0;
    for (std::uint32_t t = check_off_[m]; t < check_off_[m + 1]; ++t) {
        std::uint32_t e = check_eid_[t];
        if (e != e0) prod *= s.tanh_half[e];
    }
    prod = clamp_sym(prod, kAtanhGuard);
    double d = 2.0 * std::atanh(prod);
    s.delta[e0] = z.get(m) ? -d : d;
}

void Bp4Decoder::update_gamma(BeliefState& s, std::size_t i) const {
    double half_sum = 0.0;
    double by_letter[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::uint32_t t = qubit_off_[i]; t < qubit_off_[i + 1]; ++t) {
        std::uint32_t e = qubit_eid_[t];
        half_sum += s.delta[e];
        by_letter[edge_letter_[e]] += s.delta[e];
    }
    half_sum *= 0.5;
    double inv_a = 1.0 / alpha_;
    s.gamma[i][0] = log_prior_[0] + inv_a * half_sum;
    for (int l = 1; l < 4; ++l)
        s.gamma[i][l] = log_prior_[l] + inv_a * (by_letter[l] - half_sum);
}

void Bp4Decoder::update_lambdas(BeliefState& s, std::size_t i) const {
    const auto& g = s.gamma[i];
    double inv_a = 1.0 / alpha_;
    for (std::uint32_t t = qubit_off_[i]; t < qubit_off_[i + 1]; ++t) {
        std::uint32_t e = qubit_eid_[t];
        int l = edge_letter_[e];
        double d2a = 0.5 * inv_a * s.delta[e];
        // remove this edge's contribution: commuting letters carried +d2a
        double comm = lse2(g[0] - d2a, g[l] - d2a);
        double anti = lse2(g[kOther[l][0]] + d2a, g[kOther[l][1]] + d2a);
        double lam = clamp_sym(comm - anti, kLambdaClamp);
        s.lambda[e] = lam;
        s.tanh_half[e] = std::tanh(0.5 * lam);
    }
}

void Bp4Decoder::normalize_beliefs(BeliefState& s) const {
    for (std::size_t i = 0; i < n_; ++i) {
        const auto& g = s.gamma[i];
        double mx = std::max(std::max(g[0], g[1]), std::max(g[2], g[3]));
        double w[4], sum = 0.0;
        for (int e = 0; e < 4; ++e) {
            w[e] = std::exp(g[e] - mx);
            sum += w[e];
        }
        for (int e = 0; e < 4; ++e) s.beliefs[i].p[e] = w[e] / sum;
    }
}

void Bp4Decoder::iterate(BeliefState& s, const BitVec& syndrome) const {
    assert(syndrome.size() == m_);
    if (cfg_.schedule == Schedule::serial) {
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::uint32_t t = qubit_off_[i]; t < qubit_off_[i + 1]; ++t)
                refresh_delta_edge(s, syndrome, qubit_eid_[t]);
            update_gamma(s, i);
            update_lambdas(s, i);
        }
    } else {
        std::size_t ne = edge_check_.size();
        for (std::uint32_t e = 0; e < ne; ++e) refresh_delta_edge(s, syndrome, e);
        for (std::size_t i = 0; i < n_; ++i) update_gamma(s, i);
        for (std::size_t i = 0; i < n_; ++i) update_lambdas(s, i);
    }
    normalize_beliefs(s);
    ++s.iteration_count;
}

DecodeOutcome Bp4Decoder::decode(const BitVec& syndrome) const {
    BeliefState s;
    return decode(syndrome, s);
}

DecodeOutcome Bp4Decoder::decode(const BitVec& syndrome, BeliefState& scratch) const {
    if (syndrome.size() != m_)
        throw std::invalid_argument("decode: syndrome length " +
                                    std::to_string(syndrome.size()) + ", expected " +
                                    std::to_string(m_));
    init(scratch);
    DecodeOutcome out;
    PauliVector w1;
    for (std::size_t it = 1; it <= cfg_.max_iterations; ++it) {
        iterate(scratch, syndrome);
        w1 = hard_decision(scratch.beliefs);
        if (code_->checks.syndrome_of(w1) == syndrome) {
            out.status = BpStatus::converged;
            out.estimate = std::move(w1);
            out.beliefs = scratch.beliefs;
            out.ell = scratch.ell;
            out.iterations_used = it;
            return out;
        }
        update_reliability_vec(scratch.last_decision, w1, scratch.ell);
        scratch.last_decision = w1;
    }
    out.status = BpStatus::exhausted;
    out.estimate = std::move(w1);
    out.beliefs = scratch.beliefs;
    out.ell = scratch.ell;
    out.iterations_used = cfg_.max_iterations;
    return out;
}

}  // namespace qec
