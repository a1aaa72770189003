#include <doctest.h>

#include <random>

#include "qec/bitvec.hpp"
#include "test_util.hpp"

using namespace qec;
using namespace qec::test;

TEST_CASE("bitvec basic operations") {
    BitVec v = BitVec::from_string("0110010");
    CHECK(v.size() == 7);
    CHECK(v.str() == "0110010");
    CHECK(v.popcount() == 3);
    CHECK(v.get(1));
    CHECK_FALSE(v.get(0));
    v.flip(0);
    CHECK(v.get(0));
    v.set(0, false);
    CHECK(v.str() == "0110010");
    CHECK(v.any());
    v.clear();
    CHECK_FALSE(v.any());
    CHECK(v.popcount() == 0);
}

TEST_CASE("bitvec xor and dot match bit loops") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 1 + rng() % 200;
        BitVec a = random_bit_vec(rng, n);
        BitVec b = random_bit_vec(rng, n);
        BitVec x = a ^ b;
        int parity = 0;
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(x.get(i) == (a.get(i) != b.get(i)));
            parity ^= (a.get(i) && b.get(i)) ? 1 : 0;
        }
        CHECK(BitVec::dot(a, b) == (parity != 0));
    }
}

TEST_CASE("bitvec keeps trailing word bits zero") {
    BitVec v(70);
    v.set(69, true);
    v.flip(69);
    CHECK(v.words()[1] == 0);
    // popcount must not see stray bits past size().
    for (std::size_t i = 0; i < 70; ++i) v.set(i, true);
    CHECK(v.popcount() == 70);
}

TEST_CASE("bitmatrix rows and row ops") {
    BitMatrix m(3, 130);
    m.set(0, 0, true);
    m.set(0, 129, true);
    m.set(1, 64, true);
    m.xor_row_into(0, 2);
    m.xor_row_into(1, 2);
    CHECK(m.get(2, 0));
    CHECK(m.get(2, 64));
    CHECK(m.get(2, 129));
    m.swap_rows(0, 1);
    CHECK(m.get(0, 64));
    CHECK(m.get(1, 0));
    BitVec r = m.row_vec(2);
    CHECK(r.popcount() == 3);
    CHECK(m.row_dot(2, r) == true);  // three overlapping ones
    CHECK(m.row_any(2));
    BitMatrix z(2, 10);
    CHECK_FALSE(z.row_any(0));
}

TEST_CASE("gf2_rank matches naive elimination") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t rows = 1 + rng() % 40;
        std::size_t cols = 1 + rng() % 150;
        BitMatrix m = random_bit_matrix(rng, rows, cols, 0.3);
        CHECK(gf2_rank(m) == naive_rank(to_int_mat(m)));
    }
}

TEST_CASE("gf2_rref is a reduced echelon form of the row space") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t rows = 1 + rng() % 30;
        std::size_t cols = 1 + rng() % 100;
        BitMatrix m = random_bit_matrix(rng, rows, cols, 0.4);
        Rref rr = gf2_rref(m);
        std::size_t rank = naive_rank(to_int_mat(m));
        REQUIRE(rr.pivots.size() == rank);
        REQUIRE(rr.mat.rows() == rank);
        for (std::size_t i = 0; i < rank; ++i) {
            if (i > 0) CHECK(rr.pivots[i] > rr.pivots[i - 1]);
            // Pivot column contains a single 1, at its own row.
            for (std::size_t r = 0; r < rank; ++r)
                CHECK(rr.mat.get(r, rr.pivots[i]) == (r == i));
            // Leading entries left of the pivot are zero.
            for (std::size_t c = 0; c < rr.pivots[i]; ++c)
                if (i == 0 || c > rr.pivots[i - 1]) CHECK_FALSE(rr.mat.get(i, c));
        }
        // Every original row reduces to zero against the RREF.
        for (std::size_t r = 0; r < rows; ++r) {
            BitVec v = m.row_vec(r);
            CHECK(gf2_reduce(rr, v));
            CHECK_FALSE(v.any());
        }
    }
}

TEST_CASE("gf2_reduce decides row-space membership") {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t rows = 2 + rng() % 20;
        std::size_t cols = 20 + rng() % 80;
        BitMatrix m = random_bit_matrix(rng, rows, cols, 0.3);
        Rref rr = gf2_rref(m);
        // Random combination of rows is a member.
        BitVec combo(cols);
        for (std::size_t r = 0; r < rows; ++r)
            if (rng() & 1) combo ^= m.row_vec(r);
        BitVec probe = combo;
        CHECK(gf2_reduce(rr, probe));
        // Compare against the append-rank oracle on arbitrary vectors.
        for (int probe_i = 0; probe_i < 5; ++probe_i) {
            BitVec v = random_bit_vec(rng, cols, 0.3);
            bool expect = naive_in_span(to_int_mat(m), to_int_vec(v));
            BitVec w = v;
            CHECK(gf2_reduce(rr, w) == expect);
        }
    }
}

TEST_CASE("gf2_kernel spans the null space") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t rows = 1 + rng() % 25;
        std::size_t cols = 1 + rng() % 90;
        BitMatrix m = random_bit_matrix(rng, rows, cols, 0.35);
        std::size_t rank = naive_rank(to_int_mat(m));
        std::vector<BitVec> ker = gf2_kernel(m);
        REQUIRE(ker.size() == cols - rank);
        IntMat kmat;
        for (const BitVec& v : ker) {
            REQUIRE(v.size() == cols);
            for (std::size_t r = 0; r < rows; ++r)
                CHECK_FALSE(m.row_dot(r, v));
            kmat.push_back(to_int_vec(v));
        }
        if (!kmat.empty()) CHECK(naive_rank(kmat) == ker.size());
    }
}

TEST_CASE("gf2_kernel of an identity block is empty") {
    BitMatrix m(4, 4);
    for (std::size_t i = 0; i < 4; ++i) m.set(i, i, true);
    CHECK(gf2_kernel(m).empty());
    BitMatrix z(3, 5);
    CHECK(gf2_kernel(z).size() == 5);
}
