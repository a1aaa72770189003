#pragma once

#include <cstdint>
#include <vector>

#include "qec/bp4.hpp"
#include "qec/code.hpp"

namespace qec {

enum class OsdMode { osd4, mosd4 };

// Comparison tuple behind the reliability order. osd4 compares
// (ell, phi) lexicographically, mosd4 compares phi alone; ties fall back
// to lower qubit index, X half before Z half.
struct ReliabilityKey {
    std::size_t qubit = 0;
    bool z_half = false;
    std::uint32_t ell = 1;
    double phi = 0.5;
};

// Permutation of the 2n error-bit positions (X half 0..n-1, Z half
// n..2n-1), least reliable first.
std::vector<std::size_t> sort_reliability(const std::vector<std::uint32_t>& ell,
                                          const std::vector<QuaternaryDist>& beliefs,
                                          OsdMode mode);

// Gauss-Jordan normal form [I A] of a column-permuted check system, with
// the row operations mirrored onto the syndrome.
struct GaussResult {
    BitMatrix A;        // pivot_count x (cols - pivot_count)
    BitVec z_prime;     // transformed syndrome, truncated to pivot_count bits
    std::vector<std::size_t> mu;  // column c of the reduced system came from
                                  // input column mu[c]
    std::size_t pivot_count = 0;
    bool consistent = true;  // eliminated all-zero rows carry syndrome bit 0
};

// Column swaps happen right-to-left only when a would-be pivot column is
// dependent; throws ValidationError if expected_rank is given and not met.
GaussResult gaussian_eliminate(const BitMatrix& matrix, const BitVec& syndrome,
                               std::size_t expected_rank = kUndeclared);

// [z' + A E_R^T | E_R] in permuted coordinates.
BitVec osd_solve_base(const GaussResult& gauss, const BitVec& reliable_bits);

struct OsdSolution {
    PauliVector estimate;  // original coordinate order; always satisfies the syndrome
    std::size_t weight = 0;
    std::uint64_t candidates_tried = 0;
};

// Ordered-statistics reprocessing: sorts bit positions by reliability,
// eliminates to [I A], then enumerates every flip pattern of Hamming
// weight <= w on the reliable part (ascending flip weight, lexicographic
// positions) keeping the first candidate of minimum Pauli weight.
OsdSolution osd_w(const CheckMatrix& check, const BitVec& syndrome,
                  const PauliVector& initial_estimate,
                  const std::vector<QuaternaryDist>& beliefs,
                  const std::vector<std::uint32_t>& ell, std::size_t w,
                  OsdMode mode, std::size_t expected_rank = kUndeclared);

}  // namespace qec
