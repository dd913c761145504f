#pragma once

// Observables with diagonal singularity and the state functionals that act
// on them. Both carry a diagonal profile on the lambda grid plus a
// correlation kernel on the (lambda, nu) chart.

#include <complex>
#include <functional>
#include <vector>

#include "agetime/grid.hpp"

namespace agetime {

inline constexpr double kAlgebraTolerance = 1e-10;

// O = O^d + O^c. The diagonal profile is stored complex so that reality can be
// reported rather than assumed.
class Observable {
public:
    Observable(std::vector<cplx> diag, CorrelationKernel corr);

    const LambdaNuChart& chart() const { return corr_.chart(); }
    const std::vector<cplx>& diag() const { return diag_; }
    const CorrelationKernel& corr() const { return corr_; }

private:
    std::vector<cplx> diag_;
    CorrelationKernel corr_;
};

// (rho| = (rho^d| + (rho^c|. The kernel holds rho_{EE'} un-conjugated; pair()
// applies the conjugation.
class StateFunctional {
public:
    StateFunctional(std::vector<cplx> diag, CorrelationKernel corr);

    const LambdaNuChart& chart() const { return corr_.chart(); }
    const std::vector<cplx>& diag() const { return diag_; }
    const CorrelationKernel& corr() const { return corr_; }

private:
    std::vector<cplx> diag_;
    CorrelationKernel corr_;
};

using DiagonalFunction = std::function<cplx(double)>;
using WaveFunction = std::function<cplx(double)>;

// Throws std::invalid_argument when diag_fn returns a non-real sample or the
// sampled kernel is not Hermitian to 1e-12.
Observable make_observable(const LambdaNuChart& chart, const DiagonalFunction& diag_fn,
                           const EnergyFunction& corr_fn);

Observable identity_observable(const LambdaNuChart& chart);

// H^power as a purely diagonal observable.
Observable hamiltonian_power(const LambdaNuChart& chart, int power);

// Embeds |psi><psi| normalized by its quadrature norm. Throws on zero norm.
StateFunctional make_pure_state(const LambdaNuChart& chart, const WaveFunction& psi);

// Generalized eigenstate (E|: a 1/d_lambda delta at the node nearest e0.
// Throws unless 0 < e0 < e_max.
StateFunctional make_energy_state(const LambdaNuChart& chart, double e0);

// Embeds a density matrix rho(E,E'). Throws on non-Hermitian samples,
// non-real diagonal or non-positive trace.
StateFunctional make_mixed_state(const LambdaNuChart& chart, const EnergyFunction& rho_fn);

struct PairingParts {
    cplx diagonal;
    cplx correlation;
    cplx total() const { return diagonal + correlation; }
};

// <O>_rho = sum d_lambda conj(rho_E) O_E + sum cell conj(rho(lambda,nu)) O(lambda,nu)
PairingParts pair_parts(const StateFunctional& state, const Observable& obs);
cplx pair(const StateFunctional& state, const Observable& obs);

// (rho|I) = sum d_lambda rho_E
cplx generalized_trace(const StateFunctional& state);

struct ValidationReport {
    double reality_defect = 0.0;       // max |Im diag|
    double hermiticity_defect = 0.0;   // max |K(nu) - conj K(-nu)|
    double trace_defect = 0.0;         // |trace - 1|, states only
    double diagonal_tie_defect = 0.0;  // max |rho_E - rho(lambda, nu=0)|, states only
    bool finite = true;
    bool ordinary = false;  // diagonal tied to the kernel diagonal, as for pure/mixed embeddings
    bool passed = false;
};

ValidationReport check_state(const StateFunctional& state);
ValidationReport check_observable(const Observable& obs);

}  // namespace agetime
