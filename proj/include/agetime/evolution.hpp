#pragma once

#include <span>
#include <vector>

#include "agetime/algebra.hpp"

namespace agetime {

// Schroedinger picture: the stored kernel picks up exp(-i nu t), so the
// pairing (which conjugates the state) carries exp(+i nu t). The diagonal
// profile is untouched.
StateFunctional evolve(const StateFunctional& state, double t);

// Heisenberg picture: the kernel picks up exp(+i nu t).
// pair(evolve(rho, t), O) == pair(rho, evolve_observable(O, t)).
Observable evolve_observable(const Observable& obs, double t);

struct Trajectory {
    std::vector<double> times;
    std::vector<cplx> means;
    std::vector<double> offdiag_magnitude;  // |correlation term of the pairing|
};

// Throws std::invalid_argument if times are not strictly increasing.
Trajectory mean_trajectory(const StateFunctional& state, const Observable& obs, std::span<const double> times);

// Diagonal part of the state: the t -> infinity weak limit.
StateFunctional weak_limit(const StateFunctional& state);

// exp(-i nu t) applied to a kernel; shared by both pictures.
CorrelationKernel phase_kernel(const CorrelationKernel& kernel, double t);

}  // namespace agetime
