#pragma once

#include <map>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "qpsiegel/error.hpp"
#include "qpsiegel/finite_field.hpp"
#include "qpsiegel/flags.hpp"
#include "qpsiegel/oracle_bundle.hpp"
#include "qpsiegel/oracle_hnf.hpp"
#include "qpsiegel/rational.hpp"

namespace qps {

// Parabolic automorphism counting on P^1 runs through the image of End(E)
// under evaluation at the marked points. Aut(E) surjects onto the units of
// that image algebra A with a kernel of order |End|/|A| (a q-power) acting
// trivially on every fiber, so for each orbit of flags under the unit
// group, |ParAut| = stabilizer * kernel. A = D + N with D the equal-twist
// diagonal blocks (constants, embedded diagonally across the points) and N
// the evaluated strictly-upper part, a nilpotent ideal; the units are
// exactly D_inv (1 + N).

// One element of prod_i M_r(F_q): a matrix per marked point.
struct MatTuple {
    std::vector<FpMatrix> at;
};

struct EvaluatedEndAlgebra {
    int q = 2;
    int r = 1;
    int s = 1;
    long dim_end = 0;    // dim_Fq End(E)
    long dim_image = 0;  // dim_Fq A
    Int kernel_order;    // q^{dim_end - dim_image}
    Int unit_order;      // |A_inv| = prod_g |GL_{m_g}| * q^{dim N}
    std::vector<MatTuple> unit_generators;
};

namespace detail {

constexpr long kUnipotentGuard = 1L << 17;

inline std::vector<int> fq_span_rows(std::vector<std::vector<int>> rows, int q, int width) {
    // returns the reduced basis rows flattened; rank = size/width
    FpMatrix m(static_cast<int>(rows.size()), width, q);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < width; ++j)
            m.at(static_cast<int>(i), j) = rows[i][static_cast<std::size_t>(j)];
    const FpMatrix basis = row_space_basis(std::move(m));
    return basis.a;
}

} // namespace detail

inline EvaluatedEndAlgebra evaluate_end_algebra(const SplittingType& type, int q,
                                                const std::vector<P1Point>& marked) {
    require_prime(q, "evaluate_end_algebra");
    require(!marked.empty(), "InvalidArgument",
            "the evaluated algebra needs at least one marked point");
    validate_marked_points(marked, q);

    const int r = type.rank();
    const int s = static_cast<int>(marked.size());
    const int width = s * r * r;

    EvaluatedEndAlgebra alg;
    alg.q = q;
    alg.r = r;
    alg.s = s;

    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            const int d = type.twists[static_cast<std::size_t>(i)] -
                          type.twists[static_cast<std::size_t>(j)];
            if (d >= 0)
                alg.dim_end += d + 1;
        }

    // evaluated strictly-upper monomials x^k in Hom(O(a_j), O(a_i)), a_i > a_j
    std::vector<std::vector<int>> n_rows;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            const int d = type.twists[static_cast<std::size_t>(i)] -
                          type.twists[static_cast<std::size_t>(j)];
            if (d <= 0)
                continue;
            for (int k = 0; k <= d; ++k) {
                std::vector<int> row(static_cast<std::size_t>(width), 0);
                FqPoly mono(static_cast<std::size_t>(k) + 1, 0);
                mono[static_cast<std::size_t>(k)] = 1;
                for (int m = 0; m < s; ++m)
                    row[static_cast<std::size_t>(m * r * r + i * r + j)] =
                        section_value_at(mono, d, marked[static_cast<std::size_t>(m)], q);
                n_rows.push_back(std::move(row));
            }
        }

    const std::vector<int> n_basis = detail::fq_span_rows(std::move(n_rows), q, width);
    const long dim_n = static_cast<long>(n_basis.size()) / width;

    const std::vector<int> groups = twist_group_sizes(type);
    long dim_d = 0;
    Int d_units = 1;
    for (int m : groups) {
        dim_d += static_cast<long>(m) * m;
        d_units *= gl_order(m, q);
    }
    alg.dim_image = dim_d + dim_n;
    alg.kernel_order = int_pow(Int(q), alg.dim_end - alg.dim_image);
    alg.unit_order = d_units * int_pow(Int(q), dim_n);

    // generators of D_inv: elementary matrices of each equal-twist block,
    // embedded with the same matrix at every marked point
    int offset = 0;
    for (int m : groups) {
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                if (i == j)
                    continue;
                for (int c = 1; c < q; ++c) {
                    FpMatrix g = FpMatrix::identity(r, q);
                    g.at(offset + i, offset + j) = c;
                    alg.unit_generators.push_back(
                        MatTuple{std::vector<FpMatrix>(static_cast<std::size_t>(s), g)});
                }
            }
        for (int i = 0; i < m; ++i)
            for (int u = 2; u < q; ++u) {
                FpMatrix g = FpMatrix::identity(r, q);
                g.at(offset + i, offset + i) = u;
                alg.unit_generators.push_back(
                    MatTuple{std::vector<FpMatrix>(static_cast<std::size_t>(s), g)});
            }
        offset += m;
    }

    // every element of 1 + N, so the set generates D_inv (1 + N) outright
    long unipotent = 1;
    for (long i = 0; i < dim_n; ++i) {
        unipotent *= q;
        require(unipotent <= detail::kUnipotentGuard, "TooLarge",
                "unipotent part exceeds the enumeration guard");
    }
    std::vector<int> combo(static_cast<std::size_t>(dim_n), 0);
    for (long step = 0; step < unipotent; ++step) {
        MatTuple tuple{std::vector<FpMatrix>(static_cast<std::size_t>(s),
                                             FpMatrix::identity(r, q))};
        for (long b = 0; b < dim_n; ++b) {
            const int c = combo[static_cast<std::size_t>(b)];
            if (c == 0)
                continue;
            for (int m = 0; m < s; ++m)
                for (int i = 0; i < r; ++i)
                    for (int j = 0; j < r; ++j) {
                        auto& cell = tuple.at[static_cast<std::size_t>(m)].at(i, j);
                        const int base =
                            n_basis[static_cast<std::size_t>(b * width + m * r * r + i * r + j)];
                        cell = mod_norm(cell + static_cast<long>(c) * base, q);
                    }
        }
        if (step > 0) // skip the identity
            alg.unit_generators.push_back(std::move(tuple));
        std::size_t pos = 0;
        while (pos < combo.size() && combo[pos] == q - 1)
            combo[pos++] = 0;
        if (pos < combo.size())
            ++combo[pos];
    }
    return alg;
}

// Per-bundle census data: automorphism order, the evaluation kernel, and
// the unit-group orbits on flag tuples with their stabilizer orders.
struct CensusRow {
    SplittingType bundle;
    Int aut_order;
    Int kernel_order;
    std::vector<std::pair<long long, Int>> flag_orbits; // (orbit size, stabilizer order)
    std::vector<Int> parab_aut_orders;                  // stabilizer * kernel, per orbit
};

struct ParabolicCensus {
    Rat partial_sum;
    Rat tail_bound;
    std::vector<CensusRow> rows;
};

namespace detail {

using FlagTuple = std::vector<Flag>; // one flag per marked point

inline std::vector<int> encode_flag_tuple(const FlagTuple& tuple) {
    std::vector<int> key;
    for (const Flag& flag : tuple) {
        key.push_back(static_cast<int>(flag.size()));
        for (const FpMatrix& sub : flag) {
            key.push_back(sub.rows);
            key.insert(key.end(), sub.a.begin(), sub.a.end());
        }
    }
    return key;
}

inline std::vector<FlagTuple> all_flag_tuples(const QuasiParabolicData& data, int q) {
    std::vector<FlagTuple> tuples{FlagTuple{}};
    for (const FlagType& type : data.flag_types) {
        const std::vector<Flag> flags = enumerate_flags(type, q);
        std::vector<FlagTuple> next;
        next.reserve(tuples.size() * flags.size());
        for (const FlagTuple& partial : tuples)
            for (const Flag& flag : flags) {
                FlagTuple extended = partial;
                extended.push_back(flag);
                next.push_back(std::move(extended));
            }
        tuples = std::move(next);
    }
    return tuples;
}

inline FlagTuple apply_tuple(const MatTuple& g_transposed, const FlagTuple& tuple) {
    FlagTuple out(tuple.size());
    for (std::size_t m = 0; m < tuple.size(); ++m) {
        out[m].reserve(tuple[m].size());
        for (const FpMatrix& sub : tuple[m])
            out[m].push_back(row_space_basis(mat_mul(sub, g_transposed.at[m])));
    }
    return out;
}

// Orbit partition of the unit group acting on all flag tuples; stabilizer
// orders come from orbit-stabilizer against |A_inv|.
inline std::vector<std::pair<long long, Int>> unit_orbits(const EvaluatedEndAlgebra& alg,
                                                          const std::vector<FlagTuple>& tuples) {
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < tuples.size(); ++i)
        index[encode_flag_tuple(tuples[i])] = static_cast<int>(i);

    std::vector<MatTuple> transposed;
    transposed.reserve(alg.unit_generators.size());
    for (const MatTuple& g : alg.unit_generators) {
        MatTuple t;
        t.at.reserve(g.at.size());
        for (const FpMatrix& m : g.at)
            t.at.push_back(mat_transpose(m));
        transposed.push_back(std::move(t));
    }

    std::vector<std::pair<long long, Int>> orbits;
    std::vector<bool> seen(tuples.size(), false);
    for (std::size_t start = 0; start < tuples.size(); ++start) {
        if (seen[start])
            continue;
        long long size = 0;
        std::queue<int> frontier;
        frontier.push(static_cast<int>(start));
        seen[start] = true;
        while (!frontier.empty()) {
            const int current = frontier.front();
            frontier.pop();
            ++size;
            for (const MatTuple& g : transposed) {
                const FlagTuple image = apply_tuple(g, tuples[static_cast<std::size_t>(current)]);
                const auto it = index.find(encode_flag_tuple(image));
                require(it != index.end(), "InternalError",
                        "group action left the flag-tuple space");
                if (!seen[static_cast<std::size_t>(it->second)]) {
                    seen[static_cast<std::size_t>(it->second)] = true;
                    frontier.push(it->second);
                }
            }
        }
        require(alg.unit_order % size == 0, "InternalError",
                "orbit size does not divide the unit-group order");
        orbits.emplace_back(size, alg.unit_order / size);
    }
    return orbits;
}

} // namespace detail

// Mass census with quasi-parabolic structures: per splitting type within
// the gap cutoff, the unit-group orbits on flag tuples and the resulting
// sum of 1/|ParAut| over isomorphism classes.
inline ParabolicCensus p1_parabolic_census(int q, const QuasiParabolicData& data,
                                           const std::vector<P1Point>& marked, int degree,
                                           int gap_cutoff) {
    require_prime(q, "p1_parabolic_census");
    require(q <= 3, "TooLarge", "parabolic census guard is q in {2,3}");
    const int r = data.rank;
    const int s = static_cast<int>(marked.size());
    require(r >= 1 && r <= 3, "TooLarge", "parabolic census guard is r <= 3");
    require(s <= 2, "TooLarge", "parabolic census guard is s <= 2");
    require(data.marked_count() == s, "PointCountMismatch",
            "flag data and marked points disagree");
    validate_marked_points(marked, q);
    for (const FlagType& type : data.flag_types)
        require(type.rank_sum() == r, "RankMismatch", "flag type does not sum to the rank");

    const Int f_total = flag_count(data, q);
    ParabolicCensus census;
    census.partial_sum = 0;
    census.tail_bound = Rat(f_total) * mass_census_tail_bound(q, r, degree, gap_cutoff);

    if (s == 0) {
        // no fibers to preserve: ParAut(E) = Aut(E)
        const MassCensus mass = p1_mass_census(q, r, degree, gap_cutoff);
        for (const MassCensusRow& row : mass.rows) {
            CensusRow out{row.bundle, row.aut_order, Int(1), {{1, row.aut_order}},
                          {row.aut_order}};
            census.rows.push_back(std::move(out));
        }
        census.partial_sum = mass.partial_sum;
        return census;
    }

    const std::vector<detail::FlagTuple> tuples = detail::all_flag_tuples(data, q);
    require(Int(static_cast<long long>(tuples.size())) == f_total, "InternalError",
            "flag tuple enumeration disagrees with the flag count");

    for (const SplittingType& type : splitting_types(r, degree, gap_cutoff)) {
        const EvaluatedEndAlgebra alg = evaluate_end_algebra(type, q, marked);
        const Int aut = aut_order_splitting(type, q);
        require(aut == alg.unit_order * alg.kernel_order, "InternalError",
                "unit/kernel factorization does not recover |Aut|");

        CensusRow row{type, aut, alg.kernel_order, detail::unit_orbits(alg, tuples), {}};

        long long covered = 0;
        Rat contribution = 0;
        for (const auto& [size, stab] : row.flag_orbits) {
            covered += size;
            const Int parab = stab * alg.kernel_order;
            row.parab_aut_orders.push_back(parab);
            contribution += make_rat(Int(1), parab);
        }
        require(Int(covered) == f_total, "InternalError", "orbits do not cover all flag tuples");
        require(contribution == Rat(f_total) / Rat(aut), "InternalError",
                "orbit-stabilizer mass disagrees with f/|Aut|");

        census.partial_sum += contribution;
        census.rows.push_back(std::move(row));
    }
    return census;
}

struct Eq8Result {
    Rat lhs; // f(q, r_{i,j}) * b_n^{(r,L)} from the divisor census
    Rat rhs; // sum over census classes of |Hom_inj^S| / |ParAut|
};

// Both sides of the divisor/bundle balance identity, each from its own
// enumeration. Exact equality holds whenever the cutoff covers every
// splitting type with non-negative twists of total degree n (gap <= n).
inline Eq8Result eq8_balance_check(int q, int r, int n, const std::vector<P1Point>& marked,
                                   const QuasiParabolicData& data, int gap_cutoff) {
    require_prime(q, "eq8_balance_check");
    require(r == data.rank, "RankMismatch", "rank does not match the flag data");
    const int s = static_cast<int>(marked.size());
    require(data.marked_count() == s, "PointCountMismatch",
            "flag data and marked points disagree");
    validate_marked_points(marked, q);

    bool infinity_marked = false;
    std::vector<int> avoid;
    for (const P1Point& pt : marked) {
        if (pt.at_infinity)
            infinity_marked = true;
        else
            avoid.push_back(pt.value);
    }

    const Int f_total = flag_count(data, q);
    Eq8Result result;
    result.lhs = Rat(f_total) *
                 Rat(p1_divisor_count_avoiding(q, r, n, avoid, infinity_marked));

    result.rhs = 0;
    std::vector<detail::FlagTuple> tuples;
    if (s > 0)
        tuples = detail::all_flag_tuples(data, q);
    for (const SplittingType& type : splitting_types(r, n, gap_cutoff)) {
        if (type.twists.back() < 0)
            continue; // no injective maps into a bundle with a negative twist
        const long long hom = hom_inj_count_p1(q, type, marked);
        if (s == 0) {
            result.rhs += Rat(hom) / Rat(aut_order_splitting(type, q));
            continue;
        }
        const EvaluatedEndAlgebra alg = evaluate_end_algebra(type, q, marked);
        for (const auto& [size, stab] : detail::unit_orbits(alg, tuples))
            result.rhs += Rat(hom) / Rat(stab * alg.kernel_order);
    }
    return result;
}

} // namespace qps
