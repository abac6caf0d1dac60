#pragma once

#include <string>
#include <vector>

#include "qpsiegel/error.hpp"
#include "qpsiegel/finite_field.hpp"
#include "qpsiegel/fq_polynomial.hpp"

namespace qps {

// Divisor censuses via Hermite normal forms over F_q[x]. A finite-colength
// submodule of F_q[x]^r is the row span of a unique upper-triangular matrix
// with monic diagonal in which the entry (i,j), i < j, is reduced modulo
// the diagonal entry of its column (deg < deg d_j). Divisors enumerated
// this way live on the affine line, so infinity is always a marked point;
// callers compare against series with s = 1 + |avoid|.

// One canonical representative: upper triangular with monic diagonal,
// entry (i,j) for i < j of degree below deg d_j. The lattice is the row
// span; its colength is the degree sum of the diagonal.
struct HnfMatrix {
    int r = 1;
    int p = 2;
    std::vector<FqPoly> entries; // row-major, lower part empty

    const FqPoly& at(int i, int j) const {
        return entries[static_cast<std::size_t>(i) * r + j];
    }
    FqPoly& at(int i, int j) { return entries[static_cast<std::size_t>(i) * r + j]; }

    int colength() const {
        int n = 0;
        for (int j = 0; j < r; ++j)
            n += fq_deg(at(j, j));
        return n;
    }

    void check_invariants() const {
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                const FqPoly& f = at(i, j);
                if (i > j)
                    require(fq_is_zero(f), "InternalError", "HNF is not upper triangular");
                else if (i == j) {
                    const int d = fq_deg(f);
                    require(d >= 0 && f[static_cast<std::size_t>(d)] == 1, "InternalError",
                            "HNF diagonal entry is not monic");
                } else
                    require(fq_deg(f) < fq_deg(at(j, j)), "InternalError",
                            "HNF entry is not reduced modulo its column's diagonal");
            }
    }

    friend bool operator==(const HnfMatrix& a, const HnfMatrix& b) {
        return a.r == b.r && a.p == b.p && a.entries == b.entries;
    }
};

namespace detail {

// Runs fn over all compositions (e_1..e_r) of n into non-negative parts.
template <typename Fn>
inline void compositions(int n, int r, std::vector<int>& parts, const Fn& fn) {
    if (static_cast<int>(parts.size()) == r - 1) {
        parts.push_back(n);
        fn(parts);
        parts.pop_back();
        return;
    }
    for (int e = 0; e <= n; ++e) {
        parts.push_back(e);
        compositions(n - e, r, parts, fn);
        parts.pop_back();
    }
}

// Odometer over `slots` base-q digits; fn sees every assignment.
template <typename Fn>
inline void for_each_assignment(int q, int slots, const Fn& fn) {
    std::vector<int> digits(static_cast<std::size_t>(slots), 0);
    while (true) {
        fn(digits);
        std::size_t pos = 0;
        while (pos < digits.size() && digits[pos] == q - 1)
            digits[pos++] = 0;
        if (pos == digits.size())
            break;
        ++digits[pos];
    }
}

} // namespace detail

// Colength-n sublattices of F_q[[x]]^r (equivalently, HNFs with diagonal
// x^{e_1},...,x^{e_r}), counted by explicit enumeration of every reduced
// matrix. Matches the coefficient of t^n in prod_{j=1..r} 1/(1-q^{j-1}t).
inline long long local_sublattice_count(int q, int r, int n) {
    require_prime(q, "local_sublattice_count");
    require(r >= 1 && n >= 0, "InvalidArgument", "need r >= 1 and n >= 0");
    require(r <= 3 && n <= 8, "TooLarge", "local census guard is r <= 3, n <= 8");

    long long count = 0;
    std::vector<int> parts;
    detail::compositions(n, r, parts, [&](const std::vector<int>& e) {
        // column j contributes (j-1) entries of e_j coefficients each
        int slots = 0;
        for (int j = 0; j < r; ++j)
            slots += j * e[static_cast<std::size_t>(j)];
        detail::for_each_assignment(q, slots, [&](const std::vector<int>&) { ++count; });
    });
    return count;
}

// Effective r-divisors of degree n on the affine line whose support also
// avoids the given F_q-points: HNFs over F_q[x] with monic diagonals whose
// product is coprime to prod (x - a).
inline long long p1_divisor_count(int q, int r, int n, const std::vector<int>& avoid) {
    require_prime(q, "p1_divisor_count");
    require(r >= 1 && n >= 0, "InvalidArgument", "need r >= 1 and n >= 0");
    require(q <= 3 && r <= 2 && n <= 4, "TooLarge",
            "divisor census guard is q in {2,3}, r <= 2, n <= 4");
    for (std::size_t i = 0; i < avoid.size(); ++i) {
        require(0 <= avoid[i] && avoid[i] < q, "InvalidArgument",
                "avoided points must be residues mod q");
        for (std::size_t j = i + 1; j < avoid.size(); ++j)
            require(avoid[i] != avoid[j], "InvalidArgument", "avoided points must be distinct");
    }

    long long count = 0;
    std::vector<int> parts;
    detail::compositions(n, r, parts, [&](const std::vector<int>& e) {
        // enumerate the monic diagonals column by column
        int diag_slots = 0;
        for (int j = 0; j < r; ++j)
            diag_slots += e[static_cast<std::size_t>(j)];
        detail::for_each_assignment(q, diag_slots, [&](const std::vector<int>& digits) {
            std::size_t cursor = 0;
            bool ok = true;
            for (int j = 0; j < r && ok; ++j) {
                const int deg = e[static_cast<std::size_t>(j)];
                FqPoly d(digits.begin() + cursor, digits.begin() + cursor + deg);
                d.push_back(1); // monic of degree e_j
                cursor += static_cast<std::size_t>(deg);
                for (int a : avoid)
                    if (fq_eval(d, a, q) == 0) {
                        ok = false;
                        break;
                    }
            }
            if (!ok)
                return;
            int entry_slots = 0;
            for (int j = 0; j < r; ++j)
                entry_slots += j * e[static_cast<std::size_t>(j)];
            detail::for_each_assignment(q, entry_slots, [&](const std::vector<int>&) { ++count; });
        });
    });
    return count;
}

namespace detail {

template <typename DiagFn>
inline void materialize_hnf(int q, int r, int n, const DiagFn& diag_choices,
                            std::vector<HnfMatrix>& out) {
    std::vector<int> parts;
    compositions(n, r, parts, [&](const std::vector<int>& e) {
        std::vector<std::vector<FqPoly>> diagonals(static_cast<std::size_t>(r));
        for (int j = 0; j < r; ++j) {
            diagonals[static_cast<std::size_t>(j)] = diag_choices(e[static_cast<std::size_t>(j)]);
            if (diagonals[static_cast<std::size_t>(j)].empty())
                return; // no admissible diagonal of this degree
        }

        std::vector<std::size_t> pick(static_cast<std::size_t>(r), 0);
        while (true) {
            int entry_slots = 0;
            for (int j = 0; j < r; ++j)
                entry_slots += j * e[static_cast<std::size_t>(j)];
            for_each_assignment(q, entry_slots, [&](const std::vector<int>& digits) {
                HnfMatrix m{r, q,
                            std::vector<FqPoly>(static_cast<std::size_t>(r) * r, FqPoly{})};
                for (int j = 0; j < r; ++j)
                    m.at(j, j) = diagonals[static_cast<std::size_t>(j)][pick[static_cast<std::size_t>(j)]];
                std::size_t cursor = 0;
                for (int j = 0; j < r; ++j) {
                    const int deg = e[static_cast<std::size_t>(j)];
                    for (int i = 0; i < j; ++i) {
                        m.at(i, j).assign(digits.begin() + cursor, digits.begin() + cursor + deg);
                        cursor += static_cast<std::size_t>(deg);
                    }
                }
                m.check_invariants();
                out.push_back(std::move(m));
            });

            std::size_t col = 0;
            while (col < pick.size() &&
                   pick[col] + 1 == diagonals[col].size())
                pick[col++] = 0;
            if (col == pick.size())
                break;
            ++pick[col];
        }
    });
}

} // namespace detail

// The colength-n local lattices as explicit matrices (diagonal x^{e_j});
// cross-checks the fast count on small inputs.
inline std::vector<HnfMatrix> enumerate_local_hnf(int q, int r, int n) {
    require_prime(q, "enumerate_local_hnf");
    require(r >= 1 && r <= 3 && n >= 0 && n <= 4, "TooLarge",
            "literal HNF enumeration guard is r <= 3, n <= 4");
    std::vector<HnfMatrix> out;
    detail::materialize_hnf(q, r, n,
                            [&](int deg) {
                                FqPoly x_power(static_cast<std::size_t>(deg) + 1, 0);
                                x_power[static_cast<std::size_t>(deg)] = 1;
                                return std::vector<FqPoly>{x_power};
                            },
                            out);
    return out;
}

// Degree-n affine divisors as explicit matrices: monic diagonals with
// every avoided point off the support.
inline std::vector<HnfMatrix> enumerate_affine_hnf(int q, int r, int n,
                                                   const std::vector<int>& avoid) {
    require_prime(q, "enumerate_affine_hnf");
    require(q <= 3 && r >= 1 && r <= 2 && n >= 0 && n <= 3, "TooLarge",
            "literal HNF enumeration guard is q <= 3, r <= 2, n <= 3");
    std::vector<HnfMatrix> out;
    detail::materialize_hnf(q, r, n,
                            [&](int deg) {
                                std::vector<FqPoly> monics;
                                std::vector<int> digits(static_cast<std::size_t>(deg), 0);
                                while (true) {
                                    FqPoly f(digits.begin(), digits.end());
                                    f.push_back(1);
                                    bool ok = true;
                                    for (int a : avoid)
                                        ok = ok && fq_eval(f, a, q) != 0;
                                    if (ok)
                                        monics.push_back(std::move(f));
                                    std::size_t pos = 0;
                                    while (pos < digits.size() && digits[pos] == q - 1)
                                        digits[pos++] = 0;
                                    if (pos == digits.size())
                                        break;
                                    ++digits[pos];
                                }
                                return monics;
                            },
                            out);
    return out;
}

// Divisors of degree n on all of P^1 avoiding a marked set that may or may
// not contain infinity. The affine census pins divisors to the affine
// line, so support at infinity is restored by convolving with the local
// census there.
inline long long p1_divisor_count_avoiding(int q, int r, int n, const std::vector<int>& avoid,
                                           bool infinity_marked) {
    if (infinity_marked)
        return p1_divisor_count(q, r, n, avoid);
    long long count = 0;
    for (int k = 0; k <= n; ++k)
        count += p1_divisor_count(q, r, k, avoid) * local_sublattice_count(q, r, n - k);
    return count;
}

} // namespace qps
