#include "qec/code.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace qec {

namespace {

// Incremental RREF context used to extend the check row space by logical
// representatives one at a time.
struct GrowingRref {
    // (pivot column, reduced row) sorted by pivot
    std::vector<std::pair<std::size_t, BitVec>> rows;

    void seed(const Rref& r) {
        for (std::size_t i = 0; i < r.pivots.size(); ++i)
            rows.emplace_back(r.pivots[i], r.mat.row_vec(i));
    }
    // Reduces v in place; if nonzero remains, inserts it and returns true.
    bool reduce_and_insert(BitVec& v) {
        for (auto& [p, row] : rows)
            if (v.get(p)) v ^= row;
        std::size_t lead = v.size();
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v.get(i)) { lead = i; break; }
        if (lead == v.size()) return false;
        rows.emplace_back(lead, v);
        std::sort(rows.begin(), rows.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return true;
    }
};

}  // namespace

StabilizerCode build_code(std::string name, std::size_t n, BitMatrix rows,
                          std::size_t declared_k, int distance) {
    StabilizerCode code;
    code.name = std::move(name);
    code.n = n;
    code.distance = distance;
    code.checks = CheckMatrix(n, std::move(rows));

    code.reducer = gf2_rref(code.checks.rows());
    std::size_t rank = code.reducer.pivots.size();
    if (rank > n)
        throw ValidationError(code.name + ": check rank " + std::to_string(rank) +
                              " exceeds n = " + std::to_string(n));
    code.k = n - rank;
    if (declared_k != kUndeclared && declared_k != code.k)
        throw ValidationError(code.name + ": declared k = " + std::to_string(declared_k) +
                              " but n - rank = " + std::to_string(code.k));

    // Logical representatives: kernel of the symplectic form against all
    // checks, taken modulo the check row space.
    std::vector<BitVec> kernel = gf2_kernel(code.checks.swapped_rows());
    GrowingRref ctx;
    ctx.seed(code.reducer);
    for (BitVec& v : kernel) {
        if (ctx.reduce_and_insert(v)) code.logicals.push_back(v);
    }
    if (code.logicals.size() != 2 * code.k)
        throw ValidationError(code.name + ": found " + std::to_string(code.logicals.size()) +
                              " logical representatives, expected " + std::to_string(2 * code.k));
    for (const BitVec& l : code.logicals)
        code.logicals_swapped.push_back(swap_halves(l, n));

    if (code.k > 0) {
        BitMatrix gram(2 * code.k, 2 * code.k);
        for (std::size_t a = 0; a < code.logicals.size(); ++a)
            for (std::size_t b = 0; b < code.logicals.size(); ++b)
                if (BitVec::dot(code.logicals_swapped[a], code.logicals[b]))
                    gram.set(a, b, true);
        if (gf2_rank(gram) != 2 * code.k)
            throw ValidationError(code.name + ": logical Gram matrix is singular");
    }
    return code;
}

// ---------------------------------------------------------------------------
// toric / xzzx lattice
//
// d x d square lattice on a torus. Horizontal edge h(i,j) = i*d + j leaves
// vertex (i,j) rightward; vertical edge v(i,j) = d*d + i*d + j leaves (i,j)
// downward. A nonzero twist re-glues the vertical wrap-around: the edge below
// row d-1 in column j attaches to vertex (0, (j+twist) mod d).

namespace {

BitMatrix toric_rows(int d, int twist) {
    int n = 2 * d * d;
    auto h = [d](int i, int j) { return i * d + j; };
    auto v = [d](int i, int j) { return d * d + i * d + j; };
    auto wrap = [d](int a) { return ((a % d) + d) % d; };

    BitMatrix rows(2 * d * d, 2 * n);
    // star (X type) at vertex (i,j)
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            int r = i * d + j;
            rows.set(r, h(i, j), true);
            rows.set(r, h(i, wrap(j - 1)), true);
            if (i > 0) rows.set(r, v(i - 1, j), true);
            else rows.set(r, v(d - 1, wrap(j - twist)), true);
            rows.set(r, v(i, j), true);
        }
    }
    // plaquette (Z type) at face (i,j); Z bits live in the second half
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            int r = d * d + i * d + j;
            rows.set(r, n + h(i, j), true);
            if (i < d - 1) rows.set(r, n + h(i + 1, j), true);
            else rows.set(r, n + h(0, wrap(j + twist)), true);
            rows.set(r, n + v(i, j), true);
            rows.set(r, n + v(i, wrap(j + 1)), true);
        }
    }
    return rows;
}

}  // namespace

StabilizerCode toric_code(int d) {
    if (d < 2) throw std::invalid_argument("toric_code: d must be >= 2");
    return build_code("toric-" + std::to_string(d), 2 * d * d, toric_rows(d, 0),
                      kUndeclared, d);
}

StabilizerCode xzzx_code(int d, int twist) {
    if (d < 2) throw std::invalid_argument("xzzx_code: d must be >= 2");
    if (twist < 0 || twist >= d)
        throw std::invalid_argument("xzzx_code: twist must be in [0, d)");
    int n = 2 * d * d;
    BitMatrix rows = toric_rows(d, twist);
    // Hadamard-conjugate the vertical-edge sublattice: swap X and Z bits
    // for qubits d*d .. 2*d*d-1, turning each check into an X-Z-Z-X pattern.
    for (std::size_t r = 0; r < rows.rows(); ++r) {
        for (int q = d * d; q < n; ++q) {
            bool x = rows.get(r, q), z = rows.get(r, n + q);
            rows.set(r, q, z);
            rows.set(r, n + q, x);
        }
    }
    std::string name = "xzzx-" + std::to_string(d);
    if (twist != 0) name += "t" + std::to_string(twist);
    return build_code(std::move(name), n, std::move(rows), kUndeclared, d);
}

// ---------------------------------------------------------------------------
// planar surface code
//
// (2d-1) x (2d-1) checkerboard. Sites (r,c) with r+c even are qubits,
// numbered row-major. Sites with r odd, c even carry X checks; r even, c odd
// carry Z checks; each acts on its grid neighbours (weight 3 on the
// boundary, 4 inside).

StabilizerCode surface_code(int d) {
    if (d < 2) throw std::invalid_argument("surface_code: d must be >= 2");
    int side = 2 * d - 1;
    std::map<std::pair<int, int>, int> qubit;
    for (int r = 0; r < side; ++r)
        for (int c = 0; c < side; ++c)
            if ((r + c) % 2 == 0) {
                int id = static_cast<int>(qubit.size());
                qubit[{r, c}] = id;
            }
    int n = static_cast<int>(qubit.size());

    auto neighbours = [&](int r, int c) {
        std::vector<int> qs;
        const int dr[] = {-1, 1, 0, 0}, dc[] = {0, 0, -1, 1};
        for (int t = 0; t < 4; ++t) {
            auto it = qubit.find({r + dr[t], c + dc[t]});
            if (it != qubit.end()) qs.push_back(it->second);
        }
        return qs;
    };

    std::vector<std::vector<int>> xsup, zsup;
    for (int r = 0; r < side; ++r)
        for (int c = 0; c < side; ++c) {
            if ((r + c) % 2 == 0) continue;
            if (r % 2 == 1) xsup.push_back(neighbours(r, c));
            else zsup.push_back(neighbours(r, c));
        }

    BitMatrix rows(xsup.size() + zsup.size(), 2 * n);
    for (std::size_t i = 0; i < xsup.size(); ++i)
        for (int q : xsup[i]) rows.set(i, q, true);
    for (std::size_t i = 0; i < zsup.size(); ++i)
        for (int q : zsup[i]) rows.set(xsup.size() + i, n + q, true);
    return build_code("surface-" + std::to_string(d), n, std::move(rows),
                      kUndeclared, d);
}

// ---------------------------------------------------------------------------
// (6,6,6) color code
//
// Flat-top hexagonal tiling in doubled integer coordinates: hexagon (q,r)
// has centre (3q, q+2r) and vertices at offsets (+-2,0), (+-1,+-1). The
// distance-d triangle has corners (-1,-3), (6t-1,-3), (3t-1,3t-3) for
// t = (d-1)/2; qubits are the lattice vertices inside the closed triangle
// and every hexagon keeps its inside vertices as one X and one Z face
// (weight 6 inside, 4 along the boundary).

StabilizerCode color_code_666(int d) {
    if (d < 3 || d % 2 == 0)
        throw std::invalid_argument("color_code_666: d must be odd and >= 3");
    int t = (d - 1) / 2;
    const int b = -3, x0 = -1, x1 = 6 * t - 1;
    auto inside = [&](int x, int y) {
        return y >= b && (y - b) <= (x - x0) && (y - b) <= (x1 - x);
    };
    const int voff[6][2] = {{2, 0}, {1, 1}, {-1, 1}, {-2, 0}, {-1, -1}, {1, -1}};

    // faces keyed by centre, sorted (y, x); vertices sorted (y, x)
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> faces;
    std::set<std::pair<int, int>> verts;
    for (int q = -2; q <= 2 * t + 2; ++q) {
        for (int r = -4 - q; r <= 2 * t + 2; ++r) {
            int cx = 3 * q, cy = q + 2 * r;
            if (cy < b - 3 || cy > 3 * t) continue;
            std::vector<std::pair<int, int>> sup;
            for (auto& o : voff) {
                int vx = cx + o[0], vy = cy + o[1];
                if (inside(vx, vy)) sup.emplace_back(vy, vx);
            }
            if (sup.size() < 3) continue;
            if (sup.size() % 2 != 0)
                throw std::logic_error("color_code_666: odd face support");
            faces[{cy, cx}] = sup;
            for (auto& v : sup) verts.insert(v);
        }
    }

    std::map<std::pair<int, int>, int> qid;
    for (auto& v : verts) {
        int id = static_cast<int>(qid.size());
        qid[v] = id;
    }
    int n = static_cast<int>(qid.size());
    if (n != (3 * d * d + 1) / 4)
        throw std::logic_error("color_code_666: unexpected qubit count");

    std::size_t f = faces.size();
    BitMatrix rows(2 * f, 2 * n);
    std::size_t i = 0;
    for (auto& [c, sup] : faces) {
        for (auto& v : sup) {
            rows.set(i, qid[v], true);          // X face
            rows.set(f + i, n + qid[v], true);  // Z face, same support
        }
        ++i;
    }
    return build_code("color666-" + std::to_string(d), n, std::move(rows),
                      kUndeclared, d);
}

// ---------------------------------------------------------------------------
// text format

StabilizerCode load_code_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw ParseError("cannot open " + p.string());

    std::vector<std::string> data_lines;
    std::string line;
    std::size_t lineno = 0;
    std::vector<std::size_t> linenos;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        data_lines.push_back(line);
        linenos.push_back(lineno);
    }
    if (data_lines.empty()) throw ParseError(p.string() + ": no header line");

    std::istringstream hdr(data_lines[0]);
    long long n = -1, k = -1, m = -1;
    std::string extra;
    if (!(hdr >> n >> k >> m) || (hdr >> extra) || n < 1 || k < 0 || k > n || m < 1)
        throw ParseError(p.string() + ":" + std::to_string(linenos[0]) +
                         ": header must be three integers n k m");
    if (data_lines.size() - 1 != static_cast<std::size_t>(m))
        throw ParseError(p.string() + ": expected " + std::to_string(m) + " rows, found " +
                         std::to_string(data_lines.size() - 1));

    BitMatrix rows(m, 2 * n);
    for (long long r = 0; r < m; ++r) {
        std::istringstream ls(data_lines[r + 1]);
        std::string tok;
        long long c = 0;
        while (ls >> tok) {
            if (c >= 2 * n || (tok != "0" && tok != "1"))
                throw ParseError(p.string() + ":" + std::to_string(linenos[r + 1]) +
                                 ": row must be 2n bits of 0/1");
            if (tok == "1") rows.set(r, c, true);
            ++c;
        }
        if (c != 2 * n)
            throw ParseError(p.string() + ":" + std::to_string(linenos[r + 1]) + ": row has " +
                             std::to_string(c) + " entries, expected " + std::to_string(2 * n));
    }

    // commutation must hold before logical extraction makes sense
    CheckMatrix cm(n, rows);
    std::vector<std::pair<std::size_t, std::size_t>> bad;
    for (std::size_t a = 0; a < cm.num_checks(); ++a)
        for (std::size_t bb = a + 1; bb < cm.num_checks(); ++bb)
            if (cm.swapped_rows().row_dot(a, cm.row_vec(bb))) bad.emplace_back(a, bb);
    if (!bad.empty()) {
        std::string msg = p.string() + ": anticommuting check rows:";
        for (auto& [a, bb] : bad) {
            msg += " (" + std::to_string(a) + "," + std::to_string(bb) + ")";
            if (msg.size() > 500) { msg += " ..."; break; }
        }
        throw ValidationError(msg);
    }

    return build_code(p.stem().string(), n, std::move(rows), k, 0);
}

std::string serialize_code(const StabilizerCode& code) {
    std::ostringstream out;
    out << code.n << ' ' << code.k << ' ' << code.checks.num_checks() << '\n';
    for (std::size_t r = 0; r < code.checks.num_checks(); ++r) {
        for (std::size_t c = 0; c < 2 * code.n; ++c) {
            if (c) out << ' ';
            out << (code.checks.rows().get(r, c) ? '1' : '0');
        }
        out << '\n';
    }
    return out.str();
}

void write_code_file(const StabilizerCode& code, const std::filesystem::path& p) {
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << serialize_code(code);
}

ValidationReport validate_code(const StabilizerCode& code) {
    ValidationReport rep;
    auto fail = [&](std::string msg) {
        rep.ok = false;
        rep.violations.push_back(std::move(msg));
    };

    const CheckMatrix& cm = code.checks;
    if (cm.num_qubits() != code.n) fail("check matrix qubit count differs from n");
    for (std::size_t a = 0; a < cm.num_checks(); ++a)
        for (std::size_t b = a + 1; b < cm.num_checks(); ++b)
            if (cm.swapped_rows().row_dot(a, cm.row_vec(b)))
                fail("checks " + std::to_string(a) + " and " + std::to_string(b) +
                     " anticommute");

    std::size_t rank = gf2_rank(cm.rows());
    if (code.n - rank != code.k)
        fail("rank " + std::to_string(rank) + " gives k = " +
             std::to_string(code.n - rank) + ", code declares k = " + std::to_string(code.k));

    if (code.logicals.size() != 2 * code.k)
        fail("expected " + std::to_string(2 * code.k) + " logical representatives, have " +
             std::to_string(code.logicals.size()));
    for (std::size_t i = 0; i < code.logicals.size(); ++i) {
        const BitVec& l = code.logicals[i];
        for (std::size_t r = 0; r < cm.num_checks(); ++r)
            if (cm.swapped_rows().row_dot(r, l)) {
                fail("logical " + std::to_string(i) + " anticommutes with check " +
                     std::to_string(r));
                break;
            }
        if (in_rowspace(cm, l))
            fail("logical " + std::to_string(i) + " lies in the check row space");
        bool has_partner = false;
        for (const BitVec& ls : code.logicals_swapped)
            if (BitVec::dot(ls, l)) { has_partner = true; break; }
        if (!has_partner && code.k > 0)
            fail("logical " + std::to_string(i) + " commutes with every representative");
    }
    if (code.k > 0 && code.logicals.size() == 2 * code.k) {
        BitMatrix gram(2 * code.k, 2 * code.k);
        for (std::size_t a = 0; a < code.logicals.size(); ++a)
            for (std::size_t b = 0; b < code.logicals.size(); ++b)
                if (BitVec::dot(code.logicals_swapped[a], code.logicals[b]))
                    gram.set(a, b, true);
        if (gf2_rank(gram) != 2 * code.k) fail("logical Gram matrix is singular");
    }
    return rep;
}

}  // namespace qec
