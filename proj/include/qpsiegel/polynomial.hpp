#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "qpsiegel/rational.hpp"

namespace qps {

// Dense univariate polynomial with exact rational coefficients,
// coefficients()[k] = coefficient of t^k. Normal form: no trailing zero
// coefficient; the zero polynomial is the empty list.
class Polynomial {
public:
    Polynomial() = default;

    explicit Polynomial(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

    Polynomial(std::initializer_list<Rat> coeffs) : c_(coeffs) { trim(); }

    static Polynomial constant(const Rat& value) { return Polynomial({value}); }

    static Polynomial one() { return constant(Rat(1)); }

    // degree of the zero polynomial is -1
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    bool is_zero() const { return c_.empty(); }

    Rat coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size()))
            return Rat(0);
        return c_[static_cast<std::size_t>(k)];
    }

    const std::vector<Rat>& coeffs() const { return c_; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.c_ == b.c_;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
    }

    std::vector<Rat> c_;
};

// Exact Horner evaluation.
inline Rat poly_eval(const Polynomial& p, const Rat& x) {
    Rat acc = 0;
    const auto& c = p.coeffs();
    for (std::size_t i = c.size(); i-- > 0;)
        acc = acc * x + c[i];
    return acc;
}

inline Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rat> c(static_cast<std::size_t>(std::max(a.degree(), b.degree()) + 1), Rat(0));
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return Polynomial(std::move(c));
}

inline Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Rat> c(static_cast<std::size_t>(std::max(a.degree(), b.degree()) + 1), Rat(0));
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
    return Polynomial(std::move(c));
}

inline Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero())
        return Polynomial();
    std::vector<Rat> c(a.coeffs().size() + b.coeffs().size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        for (std::size_t j = 0; j < b.coeffs().size(); ++j)
            c[i + j] += a.coeffs()[i] * b.coeffs()[j];
    return Polynomial(std::move(c));
}

inline Polynomial poly_pow(const Polynomial& p, int e) {
    require(e >= 0, "InvalidArgument", "poly_pow needs a non-negative exponent");
    Polynomial acc = Polynomial::one();
    for (int i = 0; i < e; ++i)
        acc = acc * p;
    return acc;
}

// (1 - t)^s, the zeta correction factor for s marked rational points.
inline Polynomial one_minus_t_pow(int s) {
    return poly_pow(Polynomial({Rat(1), Rat(-1)}), s);
}

} // namespace qps
