#include "qec/pauli.hpp"

#include <stdexcept>

namespace qec {

Pauli pauli_from_char(char c) {
    switch (c) {
        case 'I': return Pauli::I;
        case 'X': return Pauli::X;
        case 'Y': return Pauli::Y;
        case 'Z': return Pauli::Z;
    }
    throw std::invalid_argument(std::string("not a Pauli letter: ") + c);
}

PauliVector PauliVector::from_letters(const std::vector<Pauli>& ls) {
    PauliVector v(ls.size());
    for (std::size_t q = 0; q < ls.size(); ++q) v.set(q, ls[q]);
    return v;
}

PauliVector PauliVector::from_string(const std::string& s) {
    PauliVector v(s.size());
    for (std::size_t q = 0; q < s.size(); ++q) v.set(q, pauli_from_char(s[q]));
    return v;
}

std::vector<Pauli> PauliVector::letters() const {
    std::vector<Pauli> ls(n_);
    for (std::size_t q = 0; q < n_; ++q) ls[q] = at(q);
    return ls;
}

std::string PauliVector::str() const {
    std::string s(n_, 'I');
    for (std::size_t q = 0; q < n_; ++q) s[q] = pauli_char(at(q));
    return s;
}

std::size_t PauliVector::weight() const {
    // popcount of (x half OR z half), handling the straddling word once
    std::size_t w = 0;
    for (std::size_t q = 0; q < n_; ++q)
        if (bits_.get(q) || bits_.get(n_ + q)) ++w;
    return w;
}

BitVec swap_halves(const BitVec& b, std::size_t n) {
    BitVec out(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (b.get(i)) out.set(n + i, true);
        if (b.get(n + i)) out.set(i, true);
    }
    return out;
}

bool symplectic_product(const BitVec& a, const BitVec& b, std::size_t n) {
    return BitVec::dot(a, swap_halves(b, n));
}

CheckMatrix::CheckMatrix(std::size_t n, BitMatrix rows)
    : m_(rows.rows()), n_(n), rows_(std::move(rows)), swapped_(m_, 2 * n) {
    if (rows_.cols() != 2 * n) throw std::invalid_argument("CheckMatrix: rows must have 2n columns");
    for (std::size_t r = 0; r < m_; ++r)
        swapped_.set_row(r, swap_halves(rows_.row_vec(r), n_));
}

BitVec CheckMatrix::syndrome_of(const PauliVector& e) const {
    BitVec z(m_);
    for (std::size_t r = 0; r < m_; ++r)
        if (swapped_.row_dot(r, e.bits())) z.set(r, true);
    return z;
}

bool in_rowspace(const CheckMatrix& checks, const BitVec& v) {
    const BitMatrix& rows = checks.rows();
    BitMatrix aug(rows.rows() + 1, rows.cols());
    for (std::size_t r = 0; r < rows.rows(); ++r) aug.set_row(r, rows.row_vec(r));
    aug.set_row(rows.rows(), v);
    return gf2_rank(aug) == gf2_rank(rows);
}

}  // namespace qec
