#pragma once

// Seeded random kernels for the property suites. Each term is
//   r * exp(-nu^2 / (2 (alpha lambda)^2)) * exp(-i kappa pi nu / (2 lambda))
// with real r, so the sum is Hermitian, concentrated near age kappa pi/(2
// lambda) ~ kappa mode spacings and negligible at the seam nu = +-2 lambda.
// The lambda envelope and all widths scale with the chart, so a class means
// the same thing on every e_max.

#include <random>

#include "agetime/grid.hpp"

namespace agetime::cli {

struct KernelClass {
    double lambda_lo;  // envelope support, as fractions of e_max
    double lambda_hi;
    double alpha_lo;
    double alpha_hi;
    double kappa_lo;  // age offset, in mode spacings
    double kappa_hi;
    bool compact;  // compact bump on [lo, hi] instead of a Gaussian centred inside it
};

// Used for the commutator identity.
inline constexpr KernelClass kCommutatorClass{0.2, 0.8, 0.2, 0.26, -3.0, 3.0, false};
// Used for generic-time shift and Lyapunov checks. The age content starts at
// negative ages, so on a chart with e_max = 3 evolution by any t in [0.1, 10]
// (which raises ages by t) keeps it inside the band.
inline constexpr KernelClass kShiftClass{1.3 / 3.0, 2.5 / 3.0, 0.22, 0.28, -8.0, -4.0, true};

CorrelationKernel random_kernel(const LambdaNuChart& chart, const KernelClass& cls, std::mt19937_64& rng);

// Same family restricted to slice j (zero elsewhere).
CorrelationKernel random_slice_kernel(const LambdaNuChart& chart, std::size_t j, const KernelClass& cls,
                                      std::mt19937_64& rng);

}  // namespace agetime::cli
