#pragma once

// Exact-arithmetic Siegel mass formulas for quasi-parabolic bundle data
// over finite fields, with brute-force enumeration oracles for every
// counting identity involved.

#include "qpsiegel/curve.hpp"          // IWYU pragma: export
#include "qpsiegel/divisor_series.hpp" // IWYU pragma: export
#include "qpsiegel/error.hpp"          // IWYU pragma: export
#include "qpsiegel/finite_field.hpp"   // IWYU pragma: export
#include "qpsiegel/flags.hpp"          // IWYU pragma: export
#include "qpsiegel/oracles.hpp"        // IWYU pragma: export
#include "qpsiegel/polynomial.hpp"     // IWYU pragma: export
#include "qpsiegel/power_series.hpp"   // IWYU pragma: export
#include "qpsiegel/rational.hpp"       // IWYU pragma: export
#include "qpsiegel/siegel.hpp"         // IWYU pragma: export
