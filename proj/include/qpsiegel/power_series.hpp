#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "qpsiegel/polynomial.hpp"
#include "qpsiegel/rational.hpp"

namespace qps {

// Truncated power series in t: coefficients for t^0 .. t^{N-1} where N is
// the precision. Precision travels with the value; every operation clips
// the result to the smallest precision among its inputs, never past it.
class PowerSeries {
public:
    explicit PowerSeries(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
        require(!c_.empty(), "InvalidArgument", "a series needs precision >= 1");
    }

    static PowerSeries zero(int precision) {
        require(precision >= 1, "InvalidArgument", "a series needs precision >= 1");
        return PowerSeries(std::vector<Rat>(static_cast<std::size_t>(precision), Rat(0)));
    }

    static PowerSeries from_polynomial(const Polynomial& p, int precision) {
        PowerSeries s = zero(precision);
        for (int k = 0; k < precision; ++k)
            s.c_[static_cast<std::size_t>(k)] = p.coeff(k);
        return s;
    }

    int precision() const { return static_cast<int>(c_.size()); }

    const Rat& coeff(int k) const {
        require(k >= 0 && k < precision(), "PrecisionError",
                "coefficient index beyond the known precision");
        return c_[static_cast<std::size_t>(k)];
    }

    const std::vector<Rat>& coeffs() const { return c_; }

    friend bool operator==(const PowerSeries& a, const PowerSeries& b) {
        return a.c_ == b.c_;
    }

private:
    std::vector<Rat> c_;
};

// Expansion of numer/denom to the given precision; denom(0) must be a unit.
inline PowerSeries series_from_rational_function(const Polynomial& numer,
                                                 const Polynomial& denom,
                                                 int precision) {
    require(denom.coeff(0) != 0, "ZeroConstantTerm",
            "denominator has no inverse as a power series");
    std::vector<Rat> c(static_cast<std::size_t>(precision), Rat(0));
    const Rat d0 = denom.coeff(0);
    for (int n = 0; n < precision; ++n) {
        Rat acc = numer.coeff(n);
        for (int k = 1; k <= std::min(n, denom.degree()); ++k)
            acc -= denom.coeff(k) * c[static_cast<std::size_t>(n - k)];
        c[static_cast<std::size_t>(n)] = acc / d0;
    }
    return PowerSeries(std::move(c));
}

// Cauchy product, truncated to min(precision(a), precision(b)).
inline PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b) {
    const int n = std::min(a.precision(), b.precision());
    std::vector<Rat> c(static_cast<std::size_t>(n), Rat(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; i + j < n; ++j)
            c[static_cast<std::size_t>(i + j)] += a.coeff(i) * b.coeff(j);
    return PowerSeries(std::move(c));
}

inline PowerSeries series_add(const PowerSeries& a, const PowerSeries& b) {
    const int n = std::min(a.precision(), b.precision());
    std::vector<Rat> c(static_cast<std::size_t>(n), Rat(0));
    for (int i = 0; i < n; ++i)
        c[static_cast<std::size_t>(i)] = a.coeff(i) + b.coeff(i);
    return PowerSeries(std::move(c));
}

// Substitution t -> c*t: coefficient n picks up a factor c^n.
inline PowerSeries series_scale_argument(const PowerSeries& a, const Rat& c) {
    std::vector<Rat> out(a.coeffs());
    Rat scale = 1;
    for (std::size_t n = 1; n < out.size(); ++n) {
        scale *= c;
        out[n] *= scale;
    }
    return PowerSeries(std::move(out));
}

} // namespace qps
