#include "qec/osd4.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>
#include <tuple>

namespace qec {

std::vector<std::size_t> sort_reliability(const std::vector<std::uint32_t>& ell,
                                          const std::vector<QuaternaryDist>& beliefs,
                                          OsdMode mode) {
    std::size_t n = beliefs.size();
    if (ell.size() != n)
        throw std::invalid_argument("sort_reliability: ell/beliefs length mismatch");

    std::vector<ReliabilityKey> keys(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        auto [phi_x, phi_z] = soft_reliability(beliefs[i]);
        keys[i] = {i, false, ell[i], phi_x};
        keys[n + i] = {i, true, ell[i], phi_z};
    }
    std::vector<std::size_t> pi(2 * n);
    for (std::size_t p = 0; p < 2 * n; ++p) pi[p] = p;
    auto less = [&](std::size_t a, std::size_t b) {
        const ReliabilityKey &ka = keys[a], &kb = keys[b];
        if (mode == OsdMode::osd4 && ka.ell != kb.ell) return ka.ell < kb.ell;
        return std::tie(ka.phi, ka.qubit, ka.z_half) <
               std::tie(kb.phi, kb.qubit, kb.z_half);
    };
    std::sort(pi.begin(), pi.end(), less);
    return pi;
}

namespace {

void swap_columns(BitMatrix& m, std::size_t a, std::size_t b) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        bool va = m.get(r, a), vb = m.get(r, b);
        m.set(r, a, vb);
        m.set(r, b, va);
    }
}

}  // namespace

GaussResult gaussian_eliminate(const BitMatrix& matrix, const BitVec& syndrome,
                               std::size_t expected_rank) {
    if (syndrome.size() != matrix.rows())
        throw std::invalid_argument("gaussian_eliminate: syndrome length mismatch");
    std::size_t m = matrix.rows(), cols = matrix.cols();
    BitMatrix w = matrix;
    BitVec z = syndrome;

    GaussResult out;
    out.mu.resize(cols);
    for (std::size_t c = 0; c < cols; ++c) out.mu[c] = c;

    std::size_t p = 0;
    while (p < m && p < cols) {
        std::size_t piv = m;
        for (std::size_t r = p; r < m; ++r)
            if (w.get(r, p)) { piv = r; break; }
        if (piv == m) {
            // dependent column: pull in the first later column with a pivot
            std::size_t cc = cols;
            for (std::size_t c = p + 1; c < cols && cc == cols; ++c)
                for (std::size_t r = p; r < m; ++r)
                    if (w.get(r, c)) { cc = c; piv = r; break; }
            if (cc == cols) break;  // rank exhausted
            swap_columns(w, p, cc);
            std::swap(out.mu[p], out.mu[cc]);
        }
        if (piv != p) {
            w.swap_rows(piv, p);
            bool t = z.get(piv);
            z.set(piv, z.get(p));
            z.set(p, t);
        }
        for (std::size_t r = 0; r < m; ++r) {
            if (r == p || !w.get(r, p)) continue;
            w.xor_row_into(p, r);
            z.set(r, z.get(r) ^ z.get(p));
        }
        ++p;
    }
    out.pivot_count = p;
    if (expected_rank != kUndeclared && p != expected_rank)
        throw ValidationError("gaussian_eliminate: rank " + std::to_string(p) +
                              ", expected " + std::to_string(expected_rank));

    out.A = BitMatrix(p, cols - p);
    for (std::size_t r = 0; r < p; ++r)
        for (std::size_t c = p; c < cols; ++c)
            if (w.get(r, c)) out.A.set(r, c - p, true);
    out.z_prime = BitVec(p);
    for (std::size_t r = 0; r < p; ++r) out.z_prime.set(r, z.get(r));
    for (std::size_t r = p; r < m; ++r)
        if (z.get(r)) out.consistent = false;
    return out;
}

BitVec osd_solve_base(const GaussResult& gauss, const BitVec& reliable_bits) {
    std::size_t p = gauss.pivot_count;
    if (reliable_bits.size() != gauss.A.cols())
        throw std::invalid_argument("osd_solve_base: reliable part length mismatch");
    BitVec out(p + gauss.A.cols());
    for (std::size_t r = 0; r < p; ++r)
        out.set(r, gauss.z_prime.get(r) ^ gauss.A.row_dot(r, reliable_bits));
    for (std::size_t j = 0; j < reliable_bits.size(); ++j)
        out.set(p + j, reliable_bits.get(j));
    return out;
}

namespace {

// Candidate walker over flip patterns: keeps the unreliable part, the
// flipped reliable part, and per-qubit Pauli support counters in sync so
// each flip costs O(popcount of the A column).
struct FlipSearch {
    std::size_t n, p, width;
    const BitMatrix& at;  // A transposed: row j = column j of A
    const std::vector<std::size_t>& qubit_of;  // by permuted position
    BitVec u;       // unreliable part, current
    BitVec r;       // reliable part, current
    std::vector<std::uint8_t> cnt;  // per original qubit, 0..2
    std::size_t weight = 0;
    std::uint64_t tried = 0;
    std::size_t best_weight;
    BitVec best_u, best_r;

    FlipSearch(std::size_t n_, const BitMatrix& at_,
               const std::vector<std::size_t>& qof, BitVec u0, BitVec r0)
        : n(n_), p(u0.size()), width(r0.size()), at(at_), qubit_of(qof),
          u(std::move(u0)), r(std::move(r0)), cnt(n_, 0) {
        for (std::size_t i = 0; i < p; ++i)
            if (u.get(i)) bump(qubit_of[i], +1);
        for (std::size_t j = 0; j < width; ++j)
            if (r.get(j)) bump(qubit_of[p + j], +1);
        best_weight = weight + 1;  // force the first candidate to be kept
    }

    void bump(std::size_t q, int d) {
        if (d > 0) {
            if (cnt[q]++ == 0) ++weight;
        } else {
            if (--cnt[q] == 0) --weight;
        }
    }

    void toggle_flip(std::size_t j) {  // involution
        bump(qubit_of[p + j], r.get(j) ? -1 : +1);
        r.flip(j);
        auto row = at.row(j);
        for (std::size_t wd = 0; wd < row.size(); ++wd) {
            std::uint64_t bits = row[wd];
            while (bits) {
                std::size_t pos = wd * 64 + std::size_t(std::countr_zero(bits));
                bits &= bits - 1;
                bump(qubit_of[pos], u.get(pos) ? -1 : +1);
                u.flip(pos);
            }
        }
    }

    void evaluate() {
        ++tried;
        if (weight < best_weight) {
            best_weight = weight;
            best_u = u;
            best_r = r;
        }
    }

    void enum_level(std::size_t c, std::size_t start) {
        if (c == 0) {
            evaluate();
            return;
        }
        for (std::size_t j = start; j + c <= width; ++j) {
            toggle_flip(j);
            enum_level(c - 1, j + 1);
            toggle_flip(j);
        }
    }
};

}  // namespace

OsdSolution osd_w(const CheckMatrix& check, const BitVec& syndrome,
                  const PauliVector& initial_estimate,
                  const std::vector<QuaternaryDist>& beliefs,
                  const std::vector<std::uint32_t>& ell, std::size_t w,
                  OsdMode mode, std::size_t expected_rank) {
    std::size_t n = check.num_qubits(), m = check.num_checks();
    if (syndrome.size() != m)
        throw std::invalid_argument("osd_w: syndrome length mismatch");
    if (initial_estimate.num_qubits() != n || beliefs.size() != n)
        throw std::invalid_argument("osd_w: estimate/beliefs length mismatch");

    std::vector<std::size_t> pi = sort_reliability(ell, beliefs, mode);

    BitMatrix permuted(m, 2 * n);
    for (std::size_t r = 0; r < m; ++r) {
        const BitMatrix& sw = check.swapped_rows();
        for (std::size_t c = 0; c < 2 * n; ++c)
            if (sw.get(r, pi[c])) permuted.set(r, c, true);
    }
    GaussResult g = gaussian_eliminate(permuted, syndrome, expected_rank);
    if (!g.consistent)
        throw ValidationError("osd_w: syndrome is inconsistent with the check matrix");
    std::size_t p = g.pivot_count, width = 2 * n - p;

    // permuted position -> original bit position, and the qubit it belongs to
    std::vector<std::size_t> orig_of(2 * n), qubit_of(2 * n);
    for (std::size_t c = 0; c < 2 * n; ++c) {
        orig_of[c] = pi[g.mu[c]];
        qubit_of[c] = orig_of[c] % n;
    }

    BitVec reliable(width);
    for (std::size_t j = 0; j < width; ++j)
        reliable.set(j, initial_estimate.bits().get(orig_of[p + j]));
    BitVec base = osd_solve_base(g, reliable);
    BitVec base_u(p);
    for (std::size_t i = 0; i < p; ++i) base_u.set(i, base.get(i));

    BitMatrix at(width, p);
    if (w > 0)
        for (std::size_t r = 0; r < p; ++r)
            for (std::size_t j = 0; j < width; ++j)
                if (g.A.get(r, j)) at.set(j, r, true);

    FlipSearch search(n, at, qubit_of, std::move(base_u), std::move(reliable));
    std::size_t wmax = std::min(w, width);
    for (std::size_t c = 0; c <= wmax; ++c) search.enum_level(c, 0);

    OsdSolution sol;
    BitVec bits(2 * n);
    for (std::size_t i = 0; i < p; ++i)
        if (search.best_u.get(i)) bits.set(orig_of[i], true);
    for (std::size_t j = 0; j < width; ++j)
        if (search.best_r.get(j)) bits.set(orig_of[p + j], true);
    sol.estimate = PauliVector(n, std::move(bits));
    sol.weight = search.best_weight;
    sol.candidates_tried = search.tried;
    assert(check.syndrome_of(sol.estimate) == syndrome);
    return sol;
}

}  // namespace qec
