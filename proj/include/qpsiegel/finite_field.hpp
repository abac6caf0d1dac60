#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qpsiegel/error.hpp"
#include "qpsiegel/rational.hpp"

namespace qps {

inline bool is_prime(long n) {
    if (n < 2)
        return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

inline void require_prime(long q, const char* who) {
    require(is_prime(q), "InvalidArgument",
            std::string(who) + " works over prime fields only, got q = " + std::to_string(q));
}

inline int mod_norm(long v, int p) {
    long r = v % p;
    if (r < 0)
        r += p;
    return static_cast<int>(r);
}

inline int mod_inv(int a, int p) {
    require(a % p != 0, "InvalidArgument", "inverse of zero residue");
    // Fermat; p is prime and tiny here.
    int result = 1;
    int base = mod_norm(a, p);
    int e = p - 2;
    while (e > 0) {
        if (e & 1)
            result = static_cast<int>((static_cast<long>(result) * base) % p);
        base = static_cast<int>((static_cast<long>(base) * base) % p);
        e >>= 1;
    }
    return result;
}

// One residue mod a prime. The hot enumeration loops work on raw residues
// with the modulus held once by the containing matrix; this wrapper is for
// code that wants a self-describing value.
struct FieldElement {
    int residue = 0;
    int modulus = 2;

    FieldElement() = default;
    FieldElement(long value, int p) : residue(mod_norm(value, p)), modulus(p) {
        require_prime(p, "FieldElement");
    }

    FieldElement inverse() const { return FieldElement(mod_inv(residue, modulus), modulus); }

    friend FieldElement operator+(FieldElement a, FieldElement b) {
        return FieldElement(static_cast<long>(a.residue) + b.residue, a.modulus);
    }
    friend FieldElement operator-(FieldElement a, FieldElement b) {
        return FieldElement(static_cast<long>(a.residue) - b.residue, a.modulus);
    }
    friend FieldElement operator*(FieldElement a, FieldElement b) {
        return FieldElement(static_cast<long>(a.residue) * b.residue, a.modulus);
    }
    friend bool operator==(FieldElement a, FieldElement b) {
        return a.residue == b.residue && a.modulus == b.modulus;
    }
};

// Dense row-major matrix over F_p (common modulus for all entries).
struct FpMatrix {
    int rows = 0;
    int cols = 0;
    int p = 2;
    std::vector<int> a; // residues in [0, p)

    FpMatrix() = default;
    FpMatrix(int rows_, int cols_, int p_)
        : rows(rows_), cols(cols_), p(p_),
          a(static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_), 0) {}

    int& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    int at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    static FpMatrix identity(int n, int p) {
        FpMatrix m(n, n, p);
        for (int i = 0; i < n; ++i)
            m.at(i, i) = 1;
        return m;
    }

    friend bool operator==(const FpMatrix& x, const FpMatrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.p == y.p && x.a == y.a;
    }
};

inline FpMatrix mat_mul(const FpMatrix& x, const FpMatrix& y) {
    require(x.cols == y.rows && x.p == y.p, "InvalidArgument", "matrix shape mismatch");
    FpMatrix out(x.rows, y.cols, x.p);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const int v = x.at(i, k);
            if (v == 0)
                continue;
            for (int j = 0; j < y.cols; ++j)
                out.at(i, j) = mod_norm(out.at(i, j) + static_cast<long>(v) * y.at(k, j), x.p);
        }
    return out;
}

inline FpMatrix mat_transpose(const FpMatrix& x) {
    FpMatrix out(x.cols, x.rows, x.p);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j)
            out.at(j, i) = x.at(i, j);
    return out;
}

// In-place reduction to reduced row echelon form; returns the rank.
inline int rref_in_place(FpMatrix& m) {
    int pivot_row = 0;
    for (int col = 0; col < m.cols && pivot_row < m.rows; ++col) {
        int pr = -1;
        for (int r = pivot_row; r < m.rows; ++r)
            if (m.at(r, col) != 0) {
                pr = r;
                break;
            }
        if (pr < 0)
            continue;
        if (pr != pivot_row)
            for (int j = 0; j < m.cols; ++j)
                std::swap(m.at(pr, j), m.at(pivot_row, j));
        const int inv = mod_inv(m.at(pivot_row, col), m.p);
        for (int j = 0; j < m.cols; ++j)
            m.at(pivot_row, j) = mod_norm(static_cast<long>(m.at(pivot_row, j)) * inv, m.p);
        for (int r = 0; r < m.rows; ++r) {
            if (r == pivot_row)
                continue;
            const int f = m.at(r, col);
            if (f == 0)
                continue;
            for (int j = 0; j < m.cols; ++j)
                m.at(r, j) = mod_norm(m.at(r, j) - static_cast<long>(f) * m.at(pivot_row, j), m.p);
        }
        ++pivot_row;
    }
    return pivot_row;
}

inline int mat_rank(FpMatrix m) { return rref_in_place(m); }

// RREF with zero rows dropped: the canonical basis of the row space. Every
// subspace is keyed by this form throughout the orbit machinery.
inline FpMatrix row_space_basis(FpMatrix m) {
    const int rank = rref_in_place(m);
    FpMatrix out(rank, m.cols, m.p);
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < m.cols; ++j)
            out.at(i, j) = m.at(i, j);
    return out;
}

// |GL_r(F_q)| = prod_{i=0}^{r-1} (q^r - q^i); exact.
inline Int gl_order(int r, long q) {
    require(r >= 1, "InvalidArgument", "rank must be at least 1");
    require(q >= 2, "InvalidArgument", "q must be at least 2");
    const Int qr = int_pow(Int(q), r);
    Int order = 1;
    Int qi = 1;
    for (int i = 0; i < r; ++i) {
        order *= qr - qi;
        qi *= q;
    }
    return order;
}

namespace detail {

constexpr long kSubspaceGuard = 1L << 20; // on the vector count q^ambient

// Enumerates RREF matrices with the given pivot columns by filling the
// free entries; every subspace appears exactly once.
inline void emit_rref_for_pivots(int q, int ambient, const std::vector<int>& pivots,
                                 std::vector<FpMatrix>& out) {
    const int k = static_cast<int>(pivots.size());
    // free slots: row i, non-pivot column j > pivots[i]
    std::vector<std::pair<int, int>> slots;
    std::vector<bool> is_pivot(static_cast<std::size_t>(ambient), false);
    for (int c : pivots)
        is_pivot[static_cast<std::size_t>(c)] = true;
    for (int i = 0; i < k; ++i)
        for (int j = pivots[static_cast<std::size_t>(i)] + 1; j < ambient; ++j)
            if (!is_pivot[static_cast<std::size_t>(j)])
                slots.emplace_back(i, j);

    std::vector<int> fill(slots.size(), 0);
    while (true) {
        FpMatrix m(k, ambient, q);
        for (int i = 0; i < k; ++i)
            m.at(i, pivots[static_cast<std::size_t>(i)]) = 1;
        for (std::size_t s = 0; s < slots.size(); ++s)
            m.at(slots[s].first, slots[s].second) = fill[s];
        out.push_back(std::move(m));

        std::size_t pos = 0;
        while (pos < fill.size() && fill[pos] == q - 1)
            fill[pos++] = 0;
        if (pos == fill.size())
            break;
        ++fill[pos];
    }
}

template <typename Visit>
inline void pivot_combinations(int ambient, int k, std::vector<int>& current, int start,
                               const Visit& visit) {
    if (static_cast<int>(current.size()) == k) {
        visit(current);
        return;
    }
    for (int c = start; c < ambient; ++c) {
        current.push_back(c);
        pivot_combinations(ambient, k, current, c + 1, visit);
        current.pop_back();
    }
}

} // namespace detail

// All dim-dimensional subspaces of F_q^ambient, one canonical RREF basis
// each (a dim x ambient matrix; dim 0 gives the single empty basis).
inline std::vector<FpMatrix> enumerate_subspaces(int q, int ambient, int dim) {
    require_prime(q, "enumerate_subspaces");
    require(0 <= dim && dim <= ambient, "InvalidArgument", "need 0 <= dim <= ambient");
    double vectors = 1;
    for (int i = 0; i < ambient; ++i)
        vectors *= q;
    require(vectors <= static_cast<double>(detail::kSubspaceGuard), "TooLarge",
            "q^ambient exceeds the enumeration guard");

    std::vector<FpMatrix> out;
    std::vector<int> current;
    detail::pivot_combinations(ambient, dim, current, 0, [&](const std::vector<int>& pivots) {
        detail::emit_rref_for_pivots(q, ambient, pivots, out);
    });
    return out;
}

} // namespace qps
