#pragma once

#include <random>
#include <string>
#include <vector>

#include "qpsiegel/error.hpp"
#include "qpsiegel/finite_field.hpp"
#include "qpsiegel/rational.hpp"

namespace qps {

namespace detail {

// canonical representatives of P(F_q^d): first nonzero coordinate is 1
inline std::vector<std::vector<int>> projective_points(int q, int d) {
    std::vector<std::vector<int>> points;
    for (int lead = 0; lead < d; ++lead) {
        std::vector<int> v(static_cast<std::size_t>(d), 0);
        v[static_cast<std::size_t>(lead)] = 1;
        const int free = d - lead - 1;
        std::vector<int> digits(static_cast<std::size_t>(free), 0);
        while (true) {
            for (int i = 0; i < free; ++i)
                v[static_cast<std::size_t>(lead + 1 + i)] = digits[static_cast<std::size_t>(i)];
            points.push_back(v);
            std::size_t pos = 0;
            while (pos < digits.size() && digits[pos] == q - 1)
                digits[pos++] = 0;
            if (pos == digits.size())
                break;
            ++digits[pos];
        }
    }
    return points;
}

inline long long avoid_count_for(const FpMatrix& phi,
                                 const std::vector<std::vector<int>>& points) {
    long long count = 0;
    for (const std::vector<int>& v : points) {
        bool all_nonzero = true;
        for (int i = 0; i < phi.rows && all_nonzero; ++i) {
            long acc = 0;
            for (int j = 0; j < phi.cols; ++j)
                acc += static_cast<long>(phi.at(i, j)) * v[static_cast<std::size_t>(j)];
            all_nonzero = acc % phi.p != 0;
        }
        if (all_nonzero)
            ++count;
    }
    return count;
}

} // namespace detail

// Points of P(V) avoiding the s coordinate hyperplanes of a surjection
// V -> k^s, by brute force. Checks that the count does not move under
// `trials` random changes of surjection and that it equals
// q^{d-s} (q-1)^{s-1}; a violation throws VerificationFailed.
inline long long hyperplane_avoid_count(int q, int d, int s, int trials = 10) {
    require_prime(q, "hyperplane_avoid_count");
    require(d >= s && s >= 1, "InvalidArgument", "need d >= s >= 1");
    double vectors = 1;
    for (int i = 0; i < d; ++i)
        vectors *= q;
    require(vectors <= static_cast<double>(1L << 20), "TooLarge",
            "q^d exceeds the enumeration guard");

    const auto points = detail::projective_points(q, d);

    FpMatrix standard(s, d, q);
    for (int i = 0; i < s; ++i)
        standard.at(i, i) = 1;
    const long long count = detail::avoid_count_for(standard, points);

    std::mt19937 rng(0x5eedu + 1000003u * static_cast<unsigned>(d) +
                     1009u * static_cast<unsigned>(s) + static_cast<unsigned>(q));
    std::uniform_int_distribution<int> residue(0, q - 1);
    for (int t = 0; t < trials; ++t) {
        FpMatrix phi(s, d, q);
        do {
            for (int& entry : phi.a)
                entry = residue(rng);
        } while (mat_rank(phi) != s);
        const long long observed = detail::avoid_count_for(phi, points);
        require(observed == count, "VerificationFailed",
                "hyperplane-avoidance count moved under a change of surjection");
    }

    const Int expected = int_pow(Int(q), d - s) * int_pow(Int(q - 1), s - 1);
    require(Int(count) == expected, "VerificationFailed",
            "hyperplane-avoidance count " + std::to_string(count) +
                " disagrees with q^{d-s}(q-1)^{s-1} = " + expected.str());
    return count;
}

} // namespace qps
