#include "agetime/evolution.hpp"

#include <cmath>
#include <stdexcept>

namespace agetime {

CorrelationKernel phase_kernel(const CorrelationKernel& kernel, double t)
{
    const LambdaNuChart& chart = kernel.chart();
    std::vector<cplx> out(kernel.values().begin(), kernel.values().end());
    if (t == 0.0) {
        return CorrelationKernel(chart, std::move(out));
    }
    for (std::size_t j = 0; j < chart.n_lambda(); ++j) {
        for (std::size_t k = 0; k < chart.m_nu(); ++k) {
            const double phase = -chart.nu(j, k) * t;
            out[chart.index(j, k)] *= cplx{std::cos(phase), std::sin(phase)};
        }
    }
    return CorrelationKernel(chart, std::move(out));
}

StateFunctional evolve(const StateFunctional& state, double t)
{
    return StateFunctional(state.diag(), phase_kernel(state.corr(), t));
}

Observable evolve_observable(const Observable& obs, double t)
{
    return Observable(obs.diag(), phase_kernel(obs.corr(), -t));
}

Trajectory mean_trajectory(const StateFunctional& state, const Observable& obs, std::span<const double> times)
{
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) {
            throw std::invalid_argument("mean_trajectory: times must be strictly increasing");
        }
    }
    Trajectory traj;
    traj.times.assign(times.begin(), times.end());
    traj.means.reserve(times.size());
    traj.offdiag_magnitude.reserve(times.size());
    for (double t : times) {
        const PairingParts parts = pair_parts(evolve(state, t), obs);
        traj.means.push_back(parts.total());
        traj.offdiag_magnitude.push_back(std::abs(parts.correlation));
    }
    return traj;
}

StateFunctional weak_limit(const StateFunctional& state)
{
    return StateFunctional(state.diag(), CorrelationKernel(state.chart()));
}

}  // namespace agetime
