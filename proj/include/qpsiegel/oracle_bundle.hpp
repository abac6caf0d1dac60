#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "qpsiegel/error.hpp"
#include "qpsiegel/finite_field.hpp"
#include "qpsiegel/fq_polynomial.hpp"
#include "qpsiegel/oracle_hnf.hpp"
#include "qpsiegel/rational.hpp"

namespace qps {

// A rank-r bundle on P^1 up to isomorphism: its weakly decreasing twist
// vector (a_1 >= ... >= a_r).
struct SplittingType {
    std::vector<int> twists;

    explicit SplittingType(std::vector<int> t) : twists(std::move(t)) {
        require(!twists.empty(), "InvalidArgument", "a splitting type needs rank >= 1");
        for (std::size_t i = 1; i < twists.size(); ++i)
            require(twists[i - 1] >= twists[i], "InvalidArgument",
                    "twists must be weakly decreasing");
    }

    int rank() const { return static_cast<int>(twists.size()); }
    int degree() const {
        int d = 0;
        for (int a : twists)
            d += a;
        return d;
    }
    int gap() const { return twists.front() - twists.back(); }

    friend bool operator==(const SplittingType& a, const SplittingType& b) {
        return a.twists == b.twists;
    }
    friend bool operator<(const SplittingType& a, const SplittingType& b) {
        return a.twists < b.twists;
    }
};

// A rational point of P^1, either affine (value in [0, q)) or infinity.
struct P1Point {
    bool at_infinity = false;
    int value = 0;

    friend bool operator==(const P1Point& a, const P1Point& b) {
        return a.at_infinity == b.at_infinity && (a.at_infinity || a.value == b.value);
    }
};

inline P1Point p1_infinity() { return P1Point{true, 0}; }
inline P1Point p1_affine(int value) { return P1Point{false, value}; }

inline void validate_marked_points(const std::vector<P1Point>& marked, int q) {
    for (std::size_t i = 0; i < marked.size(); ++i) {
        if (!marked[i].at_infinity)
            require(0 <= marked[i].value && marked[i].value < q, "InvalidArgument",
                    "marked point must be a residue mod q or infinity");
        for (std::size_t j = i + 1; j < marked.size(); ++j)
            require(!(marked[i] == marked[j]), "InvalidArgument",
                    "marked points must be distinct");
    }
}

// Value of a section of O(d) at a point, in the trivialization that reads
// off f(c) on the affine chart and the x^d coefficient at infinity. The
// choice is multiplicative across composition, which is all the censuses
// need; changing it conjugates every evaluated algebra by a diagonal unit.
inline int section_value_at(const FqPoly& f, int degree_bound, const P1Point& pt, int p) {
    if (pt.at_infinity)
        return degree_bound < static_cast<int>(f.size()) ? f[static_cast<std::size_t>(degree_bound)]
                                                         : 0;
    return fq_eval(f, pt.value, p);
}

// |Aut(O(a_1) + ... + O(a_r))|: invertible equal-twist diagonal blocks,
// free Hom blocks above them: prod_g |GL_{m_g}| * q^{sum_{a_i > a_j} (a_i - a_j + 1)}.
inline Int aut_order_splitting(const SplittingType& type, long q) {
    require(q >= 2, "InvalidArgument", "q must be at least 2");
    Int order = 1;
    std::size_t i = 0;
    while (i < type.twists.size()) {
        std::size_t j = i;
        while (j < type.twists.size() && type.twists[j] == type.twists[i])
            ++j;
        order *= gl_order(static_cast<int>(j - i), q);
        i = j;
    }
    long exponent = 0;
    for (int a : type.twists)
        for (int b : type.twists)
            if (a > b)
                exponent += a - b + 1;
    return order * int_pow(Int(q), exponent);
}

// Equal-twist multiplicities in order, e.g. (3,1,1,0) -> {1,2,1}.
inline std::vector<int> twist_group_sizes(const SplittingType& type) {
    std::vector<int> sizes;
    std::size_t i = 0;
    while (i < type.twists.size()) {
        std::size_t j = i;
        while (j < type.twists.size() && type.twists[j] == type.twists[i])
            ++j;
        sizes.push_back(static_cast<int>(j - i));
        i = j;
    }
    return sizes;
}

namespace detail {

inline void splitting_types_rec(int slots_left, int sum_left, int prev, int min_allowed,
                                std::vector<int>& acc, std::vector<SplittingType>& out) {
    if (slots_left == 0) {
        if (sum_left == 0)
            out.emplace_back(acc);
        return;
    }
    // remaining parts lie in [min_allowed, prev] and must reach sum_left
    for (int a = std::min(prev, sum_left - min_allowed * (slots_left - 1)); a >= min_allowed;
         --a) {
        if (sum_left - a > static_cast<long>(a) * (slots_left - 1))
            break; // weakly decreasing parts below a cannot reach the sum
        acc.push_back(a);
        splitting_types_rec(slots_left - 1, sum_left - a, a, min_allowed, acc, out);
        acc.pop_back();
    }
}

} // namespace detail

// All splitting types of the given rank and degree with a_1 - a_r <= gap_cutoff,
// sorted by twist vector.
inline std::vector<SplittingType> splitting_types(int rank, int degree, int gap_cutoff) {
    require(rank >= 1, "InvalidArgument", "rank must be at least 1");
    require(gap_cutoff >= 0, "InvalidArgument", "gap cutoff must be non-negative");
    std::vector<SplittingType> out;
    // a_1 ranges over ceil(degree/rank) .. floor((degree + (rank-1)*cutoff)/rank)
    long lo = degree >= 0 ? (degree + rank - 1) / rank
                          : degree / rank; // ceil for either sign
    while (lo * rank < degree)
        ++lo;
    const long hi = (static_cast<long>(degree) + static_cast<long>(rank - 1) * gap_cutoff) /
                    static_cast<long>(rank);
    for (long a1 = lo; a1 <= hi; ++a1) {
        std::vector<int> acc{static_cast<int>(a1)};
        detail::splitting_types_rec(rank - 1, degree - static_cast<int>(a1),
                                    static_cast<int>(a1),
                                    static_cast<int>(a1) - gap_cutoff, acc, out);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Exact geometric bound on sum 1/|Aut| over the splitting types omitted by
// the gap cutoff; zero for rank 1, the exact omitted tail for rank 2, and
// a per-shape geometric majorant for rank 3.
inline Rat mass_census_tail_bound(int q, int rank, int degree, int gap_cutoff) {
    require(rank >= 1 && rank <= 3, "TooLarge", "census tail bounds cover r <= 3");
    if (rank == 1)
        return Rat(0);
    if (rank == 2) {
        // omitted gaps share the parity of the degree; for gap g > 0 the
        // automorphism order is exactly (q-1)^2 q^{g+1}
        long g0 = gap_cutoff + 1;
        if (((degree % 2) + 2) % 2 != ((g0 % 2) + 2) % 2)
            ++g0;
        const Rat first = make_rat(Int(1), Int(q - 1) * Int(q - 1) * int_pow(Int(q), g0 + 1));
        return first / (1 - q_pow(q, -2));
    }
    // rank 3: at most g+1 types of gap g, each with |Aut| >= (q-1)^3 q^{2g+2}
    const long m = gap_cutoff + 1;
    const Rat y = q_pow(q, -2);
    const Rat series = rat_pow(y, m) * (Rat(m + 1) - Rat(m) * y) / ((1 - y) * (1 - y));
    return y * series / rat_pow(Rat(q - 1), 3);
}

struct MassCensusRow {
    SplittingType bundle;
    Int aut_order;
};

struct MassCensus {
    Rat partial_sum;
    Rat tail_bound;
    std::vector<MassCensusRow> rows;
};

// Partial sums of sum_E 1/|Aut(E)| over splitting types of the given
// degree, truncated by the gap cutoff, with a proven bound on the omitted
// terms.
inline MassCensus p1_mass_census(int q, int rank, int degree, int gap_cutoff) {
    require_prime(q, "p1_mass_census");
    require(rank >= 1 && rank <= 3, "TooLarge", "mass census guard is r <= 3");
    require(gap_cutoff >= 0, "InvalidArgument", "gap cutoff must be non-negative");

    MassCensus census{Rat(0), mass_census_tail_bound(q, rank, degree, gap_cutoff), {}};
    for (const SplittingType& type : splitting_types(rank, degree, gap_cutoff)) {
        const Int aut = aut_order_splitting(type, q);
        census.partial_sum += make_rat(Int(1), aut);
        census.rows.push_back(MassCensusRow{type, aut});
    }
    return census;
}

namespace detail {

constexpr long long kHomWorkGuard = 1LL << 20;

inline long long hom_state_count(int q, long long dims) {
    long long states = 1;
    for (long long i = 0; i < dims; ++i) {
        states *= q;
        if (states > kHomWorkGuard)
            return -1;
    }
    return states;
}

// determinant of an r x r matrix of F_q[x] polynomials, by cofactor
// expansion along the first row
inline FqPoly poly_det(const std::vector<std::vector<FqPoly>>& m, int p) {
    const std::size_t r = m.size();
    if (r == 1)
        return m[0][0];
    FqPoly acc;
    for (std::size_t j = 0; j < r; ++j) {
        std::vector<std::vector<FqPoly>> minor(r - 1, std::vector<FqPoly>(r - 1));
        for (std::size_t i = 1; i < r; ++i) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < r; ++c) {
                if (c == j)
                    continue;
                minor[i - 1][cc++] = m[i][c];
            }
        }
        FqPoly term = fq_mul(m[0][j], poly_det(minor, p), p);
        acc = (j % 2 == 1) ? fq_sub(acc, term, p) : fq_add(acc, term, p);
    }
    return acc;
}

} // namespace detail

// Counts sheaf maps O^r -> O(a_1) + ... + O(a_r) that are injective and
// stay injective on each marked fiber, by enumerating every coefficient
// assignment. With no marked points the condition is generic injectivity
// (nonzero determinant polynomial); with marked points, invertibility of
// the evaluation matrix at every marked point (which forces generic
// injectivity). Zero whenever some twist is negative.
inline long long hom_inj_count_p1(int q, const SplittingType& type,
                                  const std::vector<P1Point>& marked) {
    require_prime(q, "hom_inj_count_p1");
    validate_marked_points(marked, q);
    const int r = type.rank();
    for (int a : type.twists)
        if (a < 0)
            return 0;

    long long chi = 0;
    for (int a : type.twists)
        chi += a + 1;
    const long long states = detail::hom_state_count(q, static_cast<long long>(r) * chi);
    require(states >= 0, "TooLarge", "q^{r chi} exceeds the Hom census work guard");

    const int s = static_cast<int>(marked.size());

    // slot layout: for column j, then row i, the a_i + 1 coefficients of
    // the entry polynomial
    struct Slot {
        int row, col, power;
    };
    std::vector<Slot> slots;
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < r; ++i)
            for (int k = 0; k <= type.twists[static_cast<std::size_t>(i)]; ++k)
                slots.push_back(Slot{i, j, k});

    // weight of slot per marked point: its contribution to the evaluated
    // (row, col) entry per unit coefficient
    std::vector<std::vector<int>> weight(slots.size(), std::vector<int>(marked.size(), 0));
    for (std::size_t t = 0; t < slots.size(); ++t)
        for (int m = 0; m < s; ++m) {
            const int a = type.twists[static_cast<std::size_t>(slots[t].row)];
            if (marked[static_cast<std::size_t>(m)].at_infinity)
                weight[t][static_cast<std::size_t>(m)] = slots[t].power == a ? 1 : 0;
            else {
                int w = 1;
                for (int e = 0; e < slots[t].power; ++e)
                    w = mod_norm(static_cast<long>(w) * marked[static_cast<std::size_t>(m)].value,
                                 q);
                weight[t][static_cast<std::size_t>(m)] = w;
            }
        }

    std::vector<int> digits(slots.size(), 0);
    // eval[m] is the r x r evaluation matrix at marked point m, maintained
    // incrementally under the odometer
    std::vector<FpMatrix> eval(static_cast<std::size_t>(s), FpMatrix(r, r, q));

    long long count = 0;
    std::vector<std::vector<FqPoly>> entries(
        static_cast<std::size_t>(r),
        std::vector<FqPoly>(static_cast<std::size_t>(r)));
    while (true) {
        bool ok = true;
        for (int m = 0; m < s && ok; ++m)
            ok = mat_rank(eval[static_cast<std::size_t>(m)]) == r;
        if (ok && s == 0) {
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j)
                    entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].assign(
                        static_cast<std::size_t>(type.twists[static_cast<std::size_t>(i)]) + 1, 0);
            for (std::size_t t = 0; t < slots.size(); ++t)
                entries[static_cast<std::size_t>(slots[t].row)]
                       [static_cast<std::size_t>(slots[t].col)]
                       [static_cast<std::size_t>(slots[t].power)] = digits[t];
            ok = !fq_is_zero(detail::poly_det(entries, q));
        }
        if (ok)
            ++count;

        std::size_t pos = 0;
        bool done = false;
        while (true) {
            if (pos == digits.size()) {
                done = true;
                break;
            }
            const Slot& sl = slots[pos];
            if (digits[pos] == q - 1) {
                for (int m = 0; m < s; ++m) {
                    auto& cell = eval[static_cast<std::size_t>(m)].at(sl.row, sl.col);
                    cell = mod_norm(cell - static_cast<long>(q - 1) *
                                               weight[pos][static_cast<std::size_t>(m)],
                                    q);
                }
                digits[pos++] = 0;
            } else {
                for (int m = 0; m < s; ++m) {
                    auto& cell = eval[static_cast<std::size_t>(m)].at(sl.row, sl.col);
                    cell = mod_norm(cell + weight[pos][static_cast<std::size_t>(m)], q);
                }
                ++digits[pos];
                break;
            }
        }
        if (done)
            break;
    }
    return count;
}

// The twists for which the fiber-injectivity census provably attains its
// limit value q^{r chi} (|GL_r|/q^{r^2})^s: every twist at least s - 1, so
// that sections surject onto all s marked fibers at once.
inline bool hom_limit_attained(const SplittingType& type, int s) {
    if (s < 1)
        return false;
    return type.twists.back() >= s - 1;
}

} // namespace qps
