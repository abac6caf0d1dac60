#pragma once

#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "qpsiegel/curve.hpp"
#include "qpsiegel/finite_field.hpp"
#include "qpsiegel/rational.hpp"

namespace qps {

// Successive-quotient dimensions (r_1, ..., r_p) of one flag; they sum to
// the ambient rank. (r) is the trivial type whose flag variety is a point.
struct FlagType {
    std::vector<int> parts;

    int rank_sum() const {
        return std::accumulate(parts.begin(), parts.end(), 0);
    }

    bool is_trivial() const { return parts.size() <= 1; }
};

inline FlagType full_flag_type(int rank) {
    return FlagType{std::vector<int>(static_cast<std::size_t>(rank), 1)};
}

inline FlagType trivial_flag_type(int rank) { return FlagType{{rank}}; }

// Flag-type data at each of the s marked points, for a fixed rank.
struct QuasiParabolicData {
    int rank = 1;
    std::vector<FlagType> flag_types; // one per marked point

    int marked_count() const { return static_cast<int>(flag_types.size()); }

    bool all_trivial() const {
        for (const FlagType& t : flag_types)
            if (!t.is_trivial())
                return false;
        return true;
    }
};

inline QuasiParabolicData trivial_parabolic_data(int rank, int marked_count) {
    return QuasiParabolicData{
        rank, std::vector<FlagType>(static_cast<std::size_t>(marked_count),
                                    trivial_flag_type(rank))};
}

// [n choose k]_q = prod_{i=1..k} (q^{n-k+i} - 1)/(q^i - 1), asserted integral.
inline Int gaussian_binomial(int n, int k, long q) {
    require(0 <= k && k <= n, "InvalidArgument", "need 0 <= k <= n");
    require(q >= 2, "InvalidArgument", "q must be at least 2");
    Rat value = 1;
    for (int i = 1; i <= k; ++i)
        value *= Rat(int_pow(Int(q), n - k + i) - 1) / Rat(int_pow(Int(q), i) - 1);
    return to_integer(value);
}

// F_q-points of one flag variety: the q-multinomial as an iterated product
// of Gaussian binomials over the successive quotients.
inline Int flag_count_single(const FlagType& type, long q) {
    for (int part : type.parts)
        require(part >= 1, "InvalidArgument", "flag-type parts must be positive");
    Int count = 1;
    int remaining = type.rank_sum();
    for (int part : type.parts) {
        count *= gaussian_binomial(remaining, part, q);
        remaining -= part;
    }
    return count;
}

// f(q, r_{i,j}): points of the product of flag varieties over all marked
// points; 1 when there are none.
inline Int flag_count(const QuasiParabolicData& data, long q) {
    Int count = 1;
    for (const FlagType& type : data.flag_types) {
        require(type.rank_sum() == data.rank, "RankMismatch",
                "flag type does not sum to the rank");
        count *= flag_count_single(type, q);
    }
    return count;
}

inline void validate_parabolic(const QuasiParabolicData& data, const CurveData& curve) {
    require(data.rank >= 1, "RankMismatch", "rank must be at least 1");
    for (const FlagType& type : data.flag_types) {
        for (int part : type.parts)
            require(part >= 1, "RankMismatch", "flag-type parts must be positive");
        require(type.rank_sum() == data.rank, "RankMismatch",
                "flag type summing to " + std::to_string(type.rank_sum()) +
                    " against rank " + std::to_string(data.rank));
    }
    require(data.marked_count() == curve.marked_count, "PointCountMismatch",
            "curve has " + std::to_string(curve.marked_count) + " marked points, data has " +
                std::to_string(data.marked_count()));
}

// A flag of type (r_1,...,r_p): the descending chain of proper nonzero
// subspaces F_2 > ... > F_p (F_1 is the full space, F_{p+1} = 0), each as
// its canonical RREF basis in the ambient coordinates.
using Flag = std::vector<FpMatrix>;

namespace detail {

// Subspaces of the row space of `basis` of dimension `dim`, in ambient
// canonical form.
inline std::vector<FpMatrix> subspaces_within(const FpMatrix& basis, int q, int dim) {
    std::vector<FpMatrix> out;
    for (const FpMatrix& coeffs : enumerate_subspaces(q, basis.rows, dim))
        out.push_back(row_space_basis(mat_mul(coeffs, basis)));
    return out;
}

inline void extend_flag(const FpMatrix& current, const std::vector<int>& parts,
                        std::size_t level, int q, Flag& chain, std::vector<Flag>& out) {
    if (level + 1 >= parts.size()) { // the last part lands on the zero space
        out.push_back(chain);
        return;
    }
    const int next_dim = current.rows - parts[level];
    for (const FpMatrix& sub : subspaces_within(current, q, next_dim)) {
        chain.push_back(sub);
        extend_flag(sub, parts, level + 1, q, chain, out);
        chain.pop_back();
    }
}

} // namespace detail

// Brute-force enumeration of all flags of the given type in F_q^r.
inline std::vector<Flag> enumerate_flags(const FlagType& type, int q) {
    require_prime(q, "enumerate_flags");
    const int rank = type.rank_sum();
    for (int part : type.parts)
        require(part >= 1, "InvalidArgument", "flag-type parts must be positive");

    std::vector<Flag> out;
    Flag chain;
    detail::extend_flag(FpMatrix::identity(rank, q), type.parts, 0, q, chain, out);
    return out;
}

} // namespace qps
