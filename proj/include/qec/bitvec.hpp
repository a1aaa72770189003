#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qec {

// Packed GF(2) vector. Bit i lives in word i/64 at position i%64; unused
// high bits of the last word are kept zero so popcount works word-wise.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static BitVec from_string(const std::string& bits);  // e.g. "01100"

    std::size_t size() const { return n_; }
    bool empty() const { return n_ == 0; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v) {
        std::uint64_t m = std::uint64_t(1) << (i & 63);
        if (v) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    BitVec& operator^=(const BitVec& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
        return *this;
    }
    friend BitVec operator^(BitVec a, const BitVec& b) { a ^= b; return a; }

    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }

    std::size_t popcount() const {
        std::size_t c = 0;
        for (std::uint64_t w : w_) c += std::size_t(std::popcount(w));
        return c;
    }
    bool any() const {
        for (std::uint64_t w : w_) if (w) return true;
        return false;
    }
    void clear() { for (auto& w : w_) w = 0; }

    // Parity of the AND of two equal-length vectors (GF(2) inner product).
    static bool dot(const BitVec& a, const BitVec& b) {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < a.w_.size(); ++i) acc ^= a.w_[i] & b.w_[i];
        return std::popcount(acc) & 1;
    }

    std::span<const std::uint64_t> words() const { return w_; }
    std::span<std::uint64_t> words() { return w_; }

    std::string str() const;  // "0110..." for debugging and goldens

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

// Row-major packed GF(2) matrix. Rows are independently word-aligned.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), stride_((cols + 63) / 64), w_(rows * stride_, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (w_[r * stride_ + (c >> 6)] >> (c & 63)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        std::uint64_t m = std::uint64_t(1) << (c & 63);
        std::uint64_t& word = w_[r * stride_ + (c >> 6)];
        if (v) word |= m; else word &= ~m;
    }
    void flip(std::size_t r, std::size_t c) {
        w_[r * stride_ + (c >> 6)] ^= std::uint64_t(1) << (c & 63);
    }

    std::span<const std::uint64_t> row(std::size_t r) const {
        return {w_.data() + r * stride_, stride_};
    }
    std::span<std::uint64_t> row(std::size_t r) {
        return {w_.data() + r * stride_, stride_};
    }

    void xor_row_into(std::size_t src, std::size_t dst) {
        auto* s = w_.data() + src * stride_;
        auto* d = w_.data() + dst * stride_;
        for (std::size_t i = 0; i < stride_; ++i) d[i] ^= s[i];
    }
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        auto* pa = w_.data() + a * stride_;
        auto* pb = w_.data() + b * stride_;
        for (std::size_t i = 0; i < stride_; ++i) std::swap(pa[i], pb[i]);
    }

    BitVec row_vec(std::size_t r) const {
        BitVec v(cols_);
        auto rw = row(r);
        for (std::size_t i = 0; i < rw.size(); ++i) v.words()[i] = rw[i];
        return v;
    }
    void set_row(std::size_t r, const BitVec& v) {
        auto rw = row(r);
        auto vw = v.words();
        for (std::size_t i = 0; i < rw.size(); ++i) rw[i] = vw[i];
    }

    // Parity of row r AND v.
    bool row_dot(std::size_t r, const BitVec& v) const {
        std::uint64_t acc = 0;
        auto rw = row(r);
        auto vw = v.words();
        for (std::size_t i = 0; i < rw.size(); ++i) acc ^= rw[i] & vw[i];
        return std::popcount(acc) & 1;
    }

    bool row_any(std::size_t r) const {
        for (std::uint64_t w : row(r)) if (w) return true;
        return false;
    }

private:
    std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
    std::vector<std::uint64_t> w_;
};

// Reduced row echelon form: rows() == pivot count, pivots[i] is the column
// of row i's leading 1, ascending.
struct Rref {
    BitMatrix mat;
    std::vector<std::size_t> pivots;
};

std::size_t gf2_rank(BitMatrix m);          // destructive on the copy
Rref gf2_rref(const BitMatrix& m);
// Reduce v against an RREF in place; returns true if it reduces to zero,
// i.e. v is in the row space.
bool gf2_reduce(const Rref& r, BitVec& v);
// Basis of { v : m v^T = 0 }.
std::vector<BitVec> gf2_kernel(const BitMatrix& m);

}  // namespace qec
