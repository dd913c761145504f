#pragma once

// Random smooth inputs for the property tests, expressed as plain functions
// of (E, E') so that the oracles and the library sample the same thing.

#include <random>
#include <vector>

#include "agetime/grid.hpp"
#include "support/oracles.hpp"

namespace testk {

using oracle::cplx;

// exp(-(E-c)^2 / (4 sigma^2)) exp(i p E)
struct GaussianPsi {
    double c;
    double sigma;
    double p;
    cplx operator()(double e) const;
};

GaussianPsi random_psi(std::mt19937_64& rng, double centre, double spread);

// diag(E) = a0 + a1 E + a2 E^2; kernel = g(lambda) sum_i r_i exp(-i kappa_i (E - E'))
// with g(lambda) = 1 + 0.2 cos(0.3 lambda). Hermitian by construction.
struct SmoothObservable {
    double a0, a1, a2;
    std::vector<std::pair<double, double>> waves;  // (r, kappa)
    cplx diag(double e) const;
    cplx kernel(double e, double ep) const;
};

SmoothObservable random_observable(std::mt19937_64& rng, double kappa_max);

// Samples a sum of ridge terms on every slice, times a real lambda envelope.
agetime::CorrelationKernel ridge_kernel(const agetime::LambdaNuChart& chart,
                                        const std::vector<oracle::RidgeTerm>& terms,
                                        const std::function<double(double)>& envelope);
// Same envelope and terms, analytic i d/dnu.
agetime::CorrelationKernel ridge_i_derivative(const agetime::LambdaNuChart& chart,
                                              const std::vector<oracle::RidgeTerm>& terms,
                                              const std::function<double(double)>& envelope);

}  // namespace testk
