#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qec/bitvec.hpp"

namespace qec {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }
Pauli pauli_from_char(char c);

// Binary-symplectic encoding of a letter: I -> (0,0), X -> (1,0),
// Z -> (0,1), Y -> (1,1).
inline bool pauli_x_bit(Pauli p) { return p == Pauli::X || p == Pauli::Y; }
inline bool pauli_z_bit(Pauli p) { return p == Pauli::Z || p == Pauli::Y; }
inline Pauli pauli_from_bits(bool x, bool z) {
    return x ? (z ? Pauli::Y : Pauli::X) : (z ? Pauli::Z : Pauli::I);
}

// n-qubit Pauli in binary-symplectic form: 2n bits, the first n are the
// X indicator and the last n the Z indicator, qubit-major within each half.
class PauliVector {
public:
    PauliVector() = default;
    explicit PauliVector(std::size_t n) : n_(n), bits_(2 * n) {}
    PauliVector(std::size_t n, BitVec bits) : n_(n), bits_(std::move(bits)) {}

    static PauliVector from_letters(const std::vector<Pauli>& ls);
    static PauliVector from_string(const std::string& s);  // e.g. "IXZY"

    std::size_t num_qubits() const { return n_; }

    Pauli at(std::size_t q) const {
        return pauli_from_bits(bits_.get(q), bits_.get(n_ + q));
    }
    void set(std::size_t q, Pauli p) {
        bits_.set(q, pauli_x_bit(p));
        bits_.set(n_ + q, pauli_z_bit(p));
    }

    std::vector<Pauli> letters() const;
    std::string str() const;

    // Number of qubits acted on non-trivially.
    std::size_t weight() const;

    const BitVec& bits() const { return bits_; }
    BitVec& bits() { return bits_; }

    PauliVector& operator^=(const PauliVector& o) { bits_ ^= o.bits_; return *this; }
    friend PauliVector operator^(PauliVector a, const PauliVector& b) { a ^= b; return a; }
    bool operator==(const PauliVector& o) const { return n_ == o.n_ && bits_ == o.bits_; }

private:
    std::size_t n_ = 0;
    BitVec bits_;
};

// [b_z | b_x] for a 2n-bit symplectic vector; pairing with this computes
// the symplectic product as a plain GF(2) inner product.
BitVec swap_halves(const BitVec& b, std::size_t n);

// 0 when the operators commute, 1 when they anticommute.
bool symplectic_product(const BitVec& a, const BitVec& b, std::size_t n);

// m stabilizer rows over n qubits in binary-symplectic form. Rows with
// halves pre-swapped are kept alongside so syndromes are plain row dots.
class CheckMatrix {
public:
    CheckMatrix() = default;
    CheckMatrix(std::size_t n, BitMatrix rows);

    std::size_t num_checks() const { return m_; }
    std::size_t num_qubits() const { return n_; }

    Pauli at(std::size_t row, std::size_t qubit) const {
        return pauli_from_bits(rows_.get(row, qubit), rows_.get(row, n_ + qubit));
    }

    const BitMatrix& rows() const { return rows_; }
    const BitMatrix& swapped_rows() const { return swapped_; }
    BitVec row_vec(std::size_t r) const { return rows_.row_vec(r); }

    // z_i = <e, row_i>, the symplectic product with each check.
    BitVec syndrome_of(const PauliVector& e) const;
    bool row_commutes(std::size_t r, const BitVec& pauli_bits) const {
        return !swapped_.row_dot(r, pauli_bits);
    }

private:
    std::size_t m_ = 0, n_ = 0;
    BitMatrix rows_;     // m x 2n
    BitMatrix swapped_;  // rows with X and Z halves exchanged
};

// Membership of v in the GF(2) row space of the checks, decided by whether
// appending v leaves the rank unchanged.
bool in_rowspace(const CheckMatrix& checks, const BitVec& v);

}  // namespace qec
