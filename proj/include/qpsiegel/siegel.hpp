#pragma once

#include <vector>

#include "qpsiegel/curve.hpp"
#include "qpsiegel/finite_field.hpp"
#include "qpsiegel/flags.hpp"
#include "qpsiegel/rational.hpp"

namespace qps {

// A mass value together with the factors it was assembled from, so a
// report can be audited term by term. value always equals the product.
struct MassReport {
    Rat value;
    Rat flag_factor;             // f(q, r_{i,j})
    Rat power_factor;            // q^{(r^2-1)(g-1)}
    Rat unit_factor;             // 1/(q-1)
    std::vector<Rat> zeta_factors; // Z_X(q^{-2}), ..., Z_X(q^{-r})

    Rat factor_product() const {
        Rat prod = flag_factor * power_factor * unit_factor;
        for (const Rat& z : zeta_factors)
            prod *= z;
        return prod;
    }
};

// Per-point Hom-counting factor of the injectivity constraint on s fibers:
// (|GL_r(F_q)| / q^{r^2})^s.
inline Rat hom_inj_factor(int r, long q, int s) {
    require(r >= 1, "InvalidArgument", "rank must be at least 1");
    require(q >= 2, "InvalidArgument", "q must be at least 2");
    require(s >= 0, "InvalidArgument", "marked count must be non-negative");
    const Rat per_point = Rat(gl_order(r, q)) / q_pow(q, static_cast<long>(r) * r);
    return rat_pow(per_point, s);
}

// Mass of rank-r bundles with fixed determinant:
//   q^{(r^2-1)(g-1)}/(q-1) * Z_X(q^{-2}) ... Z_X(q^{-r}).
inline MassReport classical_mass(const CurveData& curve, int rank) {
    require(rank >= 1, "InvalidArgument", "rank must be at least 1");
    MassReport report;
    report.flag_factor = 1;
    report.power_factor =
        q_pow(curve.q, (static_cast<long>(rank) * rank - 1) * (curve.genus - 1));
    report.unit_factor = make_rat(Int(1), Int(curve.q - 1));
    for (int j = 2; j <= rank; ++j)
        report.zeta_factors.push_back(zeta_eval(curve, j, /*marked=*/false));
    report.value = report.factor_product();
    return report;
}

// Quasi-parabolic mass: the classical mass times the flag-variety point
// count. Independent of the determinant degree.
inline MassReport quasi_parabolic_mass(const CurveData& curve, const QuasiParabolicData& data) {
    validate_parabolic(data, curve);
    MassReport report = classical_mass(curve, data.rank);
    report.flag_factor = Rat(flag_count(data, curve.q));
    report.value = report.factor_product();
    return report;
}

} // namespace qps
