#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qpsiegel/curve.hpp"
#include "qpsiegel/power_series.hpp"
#include "qpsiegel/rational.hpp"

namespace qps {

// b_n counts for effective rank-r divisors supported away from the marked
// points; entries are asserted integral and non-negative on construction.
struct DivisorCountTable {
    int rank = 1;
    std::vector<Int> counts;
    CurveData curve;
};

// Generating series of rank-r divisor counts:
//   sum_n b_n t^n = prod_{j=1..r} Z_{X-S}(q^{j-1} t).
inline DivisorCountTable r_divisor_series(const CurveData& curve, int rank, int precision) {
    require(rank >= 1, "InvalidArgument", "rank must be at least 1");
    require(precision >= 1, "InvalidArgument", "precision must be at least 1");
    const PowerSeries zeta = zeta_series(curve, precision);
    PowerSeries product = zeta;
    for (int j = 2; j <= rank; ++j)
        product = series_mul(product, series_scale_argument(zeta, q_pow(curve.q, j - 1)));

    DivisorCountTable table{rank, {}, curve};
    table.counts.reserve(static_cast<std::size_t>(precision));
    for (int n = 0; n < precision; ++n) {
        const Int b = to_integer(product.coeff(n));
        require(b >= 0, "IntegralityError",
                "negative divisor count b_" + std::to_string(n));
        table.counts.push_back(b);
    }
    return table;
}

// Count with the determinant pinned to one line bundle of degree n:
// b_n / P(1), asserted only in the range n > 2g - 2 + s where it holds.
inline Int fixed_determinant_count(const CurveData& curve, int rank, int n) {
    require(n >= 0, "InvalidArgument", "divisor degrees are non-negative");
    require(n > 2 * curve.genus - 2 + curve.marked_count, "RangeError",
            "fixed-determinant count needs n > 2g - 2 + s");
    const DivisorCountTable table = r_divisor_series(curve, rank, n + 1);
    const Rat value = Rat(table.counts[static_cast<std::size_t>(n)]) / Rat(class_number(curve));
    return to_integer(value);
}

// lim_n b_n / q^{rn} = P(1) (q-1)^{s-1} q^{-(g-1+s)} Z_{X-S}(q^{-2}) ... Z_{X-S}(q^{-r}).
inline Rat limit_unfixed(const CurveData& curve, int rank) {
    require(rank >= 1, "InvalidArgument", "rank must be at least 1");
    Rat value = Rat(class_number(curve)) * rat_pow(Rat(curve.q - 1), curve.marked_count - 1) *
                q_pow(curve.q, -(curve.genus - 1 + curve.marked_count));
    for (int j = 2; j <= rank; ++j)
        value *= zeta_eval(curve, j, /*marked=*/true);
    return value;
}

// Fixed-determinant limit, normalized by q^{r chi}:
//   (q-1)^{s-1} q^{(r^2-1)(g-1)-s} Z_{X-S}(q^{-2}) ... Z_{X-S}(q^{-r}).
// Equals limit_unfixed / (P(1) q^{r^2 (1-g)}) since chi = n + r(1-g).
inline Rat limit_fixed_determinant(const CurveData& curve, int rank) {
    require(rank >= 1, "InvalidArgument", "rank must be at least 1");
    const long exponent =
        static_cast<long>(rank) * rank - 1;
    Rat value = rat_pow(Rat(curve.q - 1), curve.marked_count - 1) *
                q_pow(curve.q, exponent * (curve.genus - 1) - curve.marked_count);
    for (int j = 2; j <= rank; ++j)
        value *= zeta_eval(curve, j, /*marked=*/true);
    return value;
}

// Verification diagnostic: the exact gap |b_n / q^{rn} - limit| at one n.
inline Rat ratio_gap(const CurveData& curve, int rank, int n) {
    require(n >= 0, "InvalidArgument", "n must be non-negative");
    const DivisorCountTable table = r_divisor_series(curve, rank, n + 1);
    const Rat ratio = Rat(table.counts[static_cast<std::size_t>(n)]) /
                      q_pow(curve.q, static_cast<long>(rank) * n);
    Rat gap = ratio - limit_unfixed(curve, rank);
    if (gap < 0)
        gap = -gap;
    return gap;
}

} // namespace qps
