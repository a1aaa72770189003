#include "qec/bitvec.hpp"

#include <stdexcept>

namespace qec {

BitVec BitVec::from_string(const std::string& bits) {
    BitVec v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') v.set(i, true);
        else if (bits[i] != '0') throw std::invalid_argument("BitVec::from_string: not a 0/1 string");
    }
    return v;
}

std::string BitVec::str() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i) if (get(i)) s[i] = '1';
    return s;
}

std::size_t gf2_rank(BitMatrix m) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t piv = rank;
        while (piv < m.rows() && !m.get(piv, c)) ++piv;
        if (piv == m.rows()) continue;
        m.swap_rows(rank, piv);
        for (std::size_t r = piv + 1; r < m.rows(); ++r)
            if (m.get(r, c)) m.xor_row_into(rank, r);
        ++rank;
    }
    return rank;
}

Rref gf2_rref(const BitMatrix& in) {
    BitMatrix m = in;
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t piv = rank;
        while (piv < m.rows() && !m.get(piv, c)) ++piv;
        if (piv == m.rows()) continue;
        m.swap_rows(rank, piv);
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (r != rank && m.get(r, c)) m.xor_row_into(rank, r);
        pivots.push_back(c);
        ++rank;
    }
    BitMatrix out(rank, m.cols());
    for (std::size_t r = 0; r < rank; ++r) out.set_row(r, m.row_vec(r));
    return {std::move(out), std::move(pivots)};
}

bool gf2_reduce(const Rref& r, BitVec& v) {
    auto vw = v.words();
    for (std::size_t i = 0; i < r.pivots.size(); ++i) {
        if (!v.get(r.pivots[i])) continue;
        auto rw = r.mat.row(i);
        for (std::size_t j = 0; j < vw.size(); ++j) vw[j] ^= rw[j];
    }
    return !v.any();
}

std::vector<BitVec> gf2_kernel(const BitMatrix& m) {
    Rref r = gf2_rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t p : r.pivots) is_pivot[p] = true;

    std::vector<BitVec> basis;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        // free column c: set v[c]=1, back-substitute pivot coordinates
        BitVec v(m.cols());
        v.set(c, true);
        for (std::size_t i = 0; i < r.pivots.size(); ++i)
            if (r.mat.get(i, c)) v.set(r.pivots[i], true);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace qec
