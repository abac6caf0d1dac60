#pragma once

// Umbrella header for the brute-force verification oracles.

#include "qpsiegel/oracle_bundle.hpp"    // IWYU pragma: export
#include "qpsiegel/oracle_hnf.hpp"       // IWYU pragma: export
#include "qpsiegel/oracle_hyperplane.hpp" // IWYU pragma: export
#include "qpsiegel/oracle_parabolic.hpp" // IWYU pragma: export
