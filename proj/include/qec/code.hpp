#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "qec/pauli.hpp"

namespace qec {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Immutable stabilizer code: checks plus derived structure computed once at
// construction (rank, logical representatives, row-space reducer).
struct StabilizerCode {
    std::string name;
    std::size_t n = 0;
    std::size_t k = 0;
    int distance = 0;  // 0 when unknown (file-loaded codes)
    CheckMatrix checks;

    // 2k representatives spanning kernel(S Lambda) / rowspace(S); their
    // symplectic Gram matrix is nonsingular, so a zero-syndrome residual is
    // in the row space iff it commutes with every representative.
    std::vector<BitVec> logicals;
    std::vector<BitVec> logicals_swapped;

    Rref reducer;  // RREF of the check rows

    // Fast row-space membership via the stored reducer.
    bool member_of_rowspace(const BitVec& v) const {
        BitVec tmp = v;
        return gf2_reduce(reducer, tmp);
    }
    // For a residual that commutes with every check: nonzero quotient class?
    bool residual_is_logical(const BitVec& v) const {
        for (const BitVec& ls : logicals_swapped)
            if (BitVec::dot(ls, v)) return true;
        return false;
    }
};

// Families. Conventions (qubit numbering, check ordering) are frozen by
// golden-file tests; see docs/codes.md.
StabilizerCode toric_code(int d);
StabilizerCode surface_code(int d);
StabilizerCode color_code_666(int d);  // d odd
StabilizerCode xzzx_code(int d, int twist = 0);

// Text format: optional '#' comment lines, then "n k m", then m rows of
// 2n space-separated bits (X half then Z half, qubit-major).
StabilizerCode load_code_file(const std::filesystem::path& p);
void write_code_file(const StabilizerCode& code, const std::filesystem::path& p);
std::string serialize_code(const StabilizerCode& code);

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;
};
// Re-checks invariants from scratch: pairwise commutation (reporting every
// offending pair), rank consistency with k, logical representative count and
// commutation, and Gram nonsingularity.
ValidationReport validate_code(const StabilizerCode& code);

// Shared constructor: computes rank, k, logicals, reducer. Throws
// ValidationError if declared_k is given and disagrees with n - rank.
StabilizerCode build_code(std::string name, std::size_t n, BitMatrix rows,
                          std::size_t declared_k, int distance);
constexpr std::size_t kUndeclared = static_cast<std::size_t>(-1);

}  // namespace qec
