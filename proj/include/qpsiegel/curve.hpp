#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qpsiegel/error.hpp"
#include "qpsiegel/polynomial.hpp"
#include "qpsiegel/power_series.hpp"
#include "qpsiegel/rational.hpp"

namespace qps {

// A smooth projective curve over F_q plus a count of marked rational
// points. The curve enters every formula through q, its genus and the Weil
// numerator P(t) = (1-t)(1-qt)Z(t); the marked set enters only through its
// cardinality (all marked points are rational).
struct CurveData {
    long q = 2;
    int genus = 0;
    Polynomial weil_numerator = Polynomial::one();
    int marked_count = 0;
};

// Constructor-grade validation: P(0) = 1, degree 2g, leading coefficient
// q^g, and the functional-equation symmetry a_{2g-i} = q^{g-i} a_i.
inline void validate_curve(const CurveData& curve) {
    require(curve.q >= 2, "InvalidCurve", "q must be at least 2");
    require(curve.genus >= 0, "InvalidCurve", "genus must be non-negative");
    require(curve.marked_count >= 0, "InvalidCurve", "marked_count must be non-negative");
    const Polynomial& p = curve.weil_numerator;
    require(p.coeff(0) == 1, "InvalidCurve", "Weil numerator must have constant term 1");
    const int g = curve.genus;
    require(p.degree() == 2 * g || (g == 0 && p.degree() <= 0), "InvalidCurve",
            "Weil numerator must have degree 2g");
    for (int i = 0; i <= g; ++i) {
        const Rat lhs = p.coeff(2 * g - i);
        const Rat rhs = q_pow(curve.q, g - i) * p.coeff(i);
        require(lhs == rhs, "InvalidCurve",
                "functional-equation symmetry fails at index " + std::to_string(i));
    }
    for (const Rat& a : p.coeffs())
        require(is_integer(a), "InvalidCurve", "Weil numerator must have integer coefficients");
}

inline CurveData make_curve(long q, int genus, Polynomial numerator, int marked_count) {
    CurveData curve{q, genus, std::move(numerator), marked_count};
    validate_curve(curve);
    return curve;
}

// Builds P(t) from the point counts N_1..N_g: power sums p_i = q^i + 1 - N_i
// of the inverse roots, Newton's identities for e_1..e_g, then the
// functional equation for the top half.
inline Polynomial point_counts_to_numerator(long q, int genus,
                                            const std::vector<Int>& counts) {
    require(static_cast<int>(counts.size()) == genus, "InvalidCounts",
            "need exactly g point counts");
    for (const Int& n : counts)
        require(n >= 0, "InvalidCounts", "point counts must be non-negative");
    if (genus == 0)
        return Polynomial::one();

    std::vector<Rat> power_sums(static_cast<std::size_t>(genus) + 1, Rat(0));
    for (int i = 1; i <= genus; ++i)
        power_sums[static_cast<std::size_t>(i)] =
            Rat(int_pow(Int(q), i) + 1 - counts[static_cast<std::size_t>(i - 1)]);

    // p_k = e_1 p_{k-1} - e_2 p_{k-2} + ... + (-1)^{k-1} k e_k
    std::vector<Rat> elem(static_cast<std::size_t>(genus) + 1, Rat(0));
    elem[0] = 1;
    for (int k = 1; k <= genus; ++k) {
        Rat acc = power_sums[static_cast<std::size_t>(k)];
        int sign = -1;
        for (int i = 1; i < k; ++i) {
            acc += Rat(sign) * elem[static_cast<std::size_t>(i)] *
                   power_sums[static_cast<std::size_t>(k - i)];
            sign = -sign;
        }
        Rat e = acc / Rat(k); // e_k = (-1)^{k-1} (p_k - sum)/k
        if (k % 2 == 0)
            e = -e;
        require(is_integer(e), "InvalidCounts",
                "counts do not come from an integral Weil numerator (e_" +
                    std::to_string(k) + " = " + rat_str(e) + ")");
        elem[static_cast<std::size_t>(k)] = e;
    }

    std::vector<Rat> a(static_cast<std::size_t>(2 * genus) + 1, Rat(0));
    for (int i = 0; i <= genus; ++i) {
        Rat coeff = elem[static_cast<std::size_t>(i)];
        if (i % 2 == 1)
            coeff = -coeff;
        a[static_cast<std::size_t>(i)] = coeff; // a_i = (-1)^i e_i
    }
    for (int i = 2 * genus; i > genus; --i)
        a[static_cast<std::size_t>(i)] = q_pow(q, i - genus) * a[static_cast<std::size_t>(2 * genus - i)];

    Polynomial numerator{std::vector<Rat>(a)};
    CurveData probe{q, genus, numerator, 0};
    validate_curve(probe); // InvalidCurve here would indicate inconsistent counts
    return numerator;
}

inline CurveData make_curve_from_counts(long q, int genus, const std::vector<Int>& counts,
                                        int marked_count) {
    return make_curve(q, genus, point_counts_to_numerator(q, genus, counts), marked_count);
}

// Recovers N_1..N_m from the numerator by running Newton's identities in
// the other direction (e_j read off P, e_j = 0 past degree 2g).
inline std::vector<Int> numerator_to_point_counts(const CurveData& curve, int up_to) {
    require(up_to >= 1, "InvalidArgument", "need at least one count");
    const int deg = 2 * curve.genus;
    std::vector<Rat> elem(static_cast<std::size_t>(deg) + 1, Rat(0));
    for (int i = 0; i <= deg; ++i) {
        Rat e = curve.weil_numerator.coeff(i);
        if (i % 2 == 1)
            e = -e;
        elem[static_cast<std::size_t>(i)] = e;
    }

    std::vector<Rat> power_sums(static_cast<std::size_t>(up_to) + 1, Rat(0));
    for (int k = 1; k <= up_to; ++k) {
        Rat acc = 0;
        int sign = 1;
        for (int i = 1; i < k && i <= deg; ++i) {
            acc += Rat(sign) * elem[static_cast<std::size_t>(i)] *
                   power_sums[static_cast<std::size_t>(k - i)];
            sign = -sign;
        }
        // after k-1 loop turns sign holds (-1)^{k-1}, the k e_k term's sign
        if (k <= deg)
            acc += Rat(sign) * Rat(k) * elem[static_cast<std::size_t>(k)];
        power_sums[static_cast<std::size_t>(k)] = acc;
    }

    std::vector<Int> counts;
    counts.reserve(static_cast<std::size_t>(up_to));
    for (int i = 1; i <= up_to; ++i) {
        const Rat n = Rat(int_pow(Int(curve.q), i) + 1) - power_sums[static_cast<std::size_t>(i)];
        require(is_integer(n), "NegativeCount", "non-integral point count N_" + std::to_string(i));
        const Int value = numerator(n);
        require(value >= 0, "NegativeCount",
                "negative point count N_" + std::to_string(i) + " = " + value.str());
        counts.push_back(value);
    }
    return counts;
}

// Zeta series of X - S: (1-t)^s P(t) / ((1-t)(1-qt)).
inline PowerSeries zeta_series(const CurveData& curve, int precision) {
    require(precision >= 1, "InvalidArgument", "precision must be at least 1");
    const Polynomial denom =
        Polynomial({Rat(1), Rat(-1)}) * Polynomial({Rat(1), Rat(-curve.q)});
    const Polynomial numer = one_minus_t_pow(curve.marked_count) * curve.weil_numerator;
    return series_from_rational_function(numer, denom, precision);
}

// Exact value of Z(q^{-j}) (marked = false) or Z_{X-S}(q^{-j}) (marked =
// true). Both have a simple pole at t = q^{-1} and Z itself one at t = 1,
// hence the j >= 2 requirement.
inline Rat zeta_eval(const CurveData& curve, int j, bool marked) {
    require(j >= 2, "PoleError", "zeta has poles at t = 1 and t = 1/q; need j >= 2");
    const Rat t = q_pow(curve.q, -j);
    Rat value = poly_eval(curve.weil_numerator, t) / ((1 - t) * (1 - Rat(curve.q) * t));
    if (marked)
        value *= rat_pow(1 - t, curve.marked_count);
    return value;
}

// P(1): the number of isomorphism classes of line bundles of a fixed degree.
inline Int class_number(const CurveData& curve) {
    const Rat h = poly_eval(curve.weil_numerator, Rat(1));
    require(is_integer(h) && numerator(h) > 0, "NonIntegerClassNumber",
            "P(1) = " + rat_str(h) + " is not a positive integer");
    return numerator(h);
}

} // namespace qps
