#include "agetime/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace agetime {

namespace {

constexpr double kSampleTolerance = 1e-12;

void require_diag_size(const std::vector<cplx>& diag, const CorrelationKernel& corr, const char* what)
{
    if (diag.size() != corr.chart().n_lambda()) {
        throw std::invalid_argument(std::string(what) + ": diagonal profile has " + std::to_string(diag.size()) +
                                    " entries, chart has " + std::to_string(corr.chart().n_lambda()) + " nodes");
    }
}

double max_abs(const CorrelationKernel& kernel)
{
    double m = 0.0;
    for (const cplx& v : kernel.values()) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

void require_hermitian(const CorrelationKernel& kernel, const char* what)
{
    const double defect = hermiticity_defect(kernel);
    if (defect > kSampleTolerance * std::max(1.0, max_abs(kernel))) {
        throw std::invalid_argument(std::string(what) + ": kernel samples are not Hermitian (defect " +
                                    std::to_string(defect) + ")");
    }
}

CorrelationKernel scaled(CorrelationKernel kernel, double factor)
{
    auto values = std::move(kernel).release();
    for (cplx& v : values) {
        v *= factor;
    }
    return CorrelationKernel(kernel.chart(), std::move(values));
}

}  // namespace

Observable::Observable(std::vector<cplx> diag, CorrelationKernel corr) : diag_(std::move(diag)), corr_(std::move(corr))
{
    require_diag_size(diag_, corr_, "observable");
}

StateFunctional::StateFunctional(std::vector<cplx> diag, CorrelationKernel corr)
    : diag_(std::move(diag)), corr_(std::move(corr))
{
    require_diag_size(diag_, corr_, "state");
}

Observable make_observable(const LambdaNuChart& chart, const DiagonalFunction& diag_fn, const EnergyFunction& corr_fn)
{
    std::vector<cplx> diag(chart.n_lambda());
    for (std::size_t j = 0; j < chart.n_lambda(); ++j) {
        const cplx v = diag_fn(chart.lambda(j));
        if (std::abs(v.imag()) > kSampleTolerance * std::max(1.0, std::abs(v.real()))) {
            throw std::invalid_argument("make_observable: diagonal profile must be real");
        }
        diag[j] = cplx{v.real(), 0.0};
    }
    CorrelationKernel corr = kernel_from_ee(chart, corr_fn);
    require_hermitian(corr, "make_observable");
    return Observable(std::move(diag), std::move(corr));
}

Observable identity_observable(const LambdaNuChart& chart)
{
    return Observable(std::vector<cplx>(chart.n_lambda(), cplx{1.0, 0.0}), CorrelationKernel(chart));
}

Observable hamiltonian_power(const LambdaNuChart& chart, int power)
{
    std::vector<cplx> diag(chart.n_lambda());
    for (std::size_t j = 0; j < chart.n_lambda(); ++j) {
        diag[j] = std::pow(chart.lambda(j), power);
    }
    return Observable(std::move(diag), CorrelationKernel(chart));
}

StateFunctional make_pure_state(const LambdaNuChart& chart, const WaveFunction& psi)
{
    std::vector<cplx> diag(chart.n_lambda());
    double norm = 0.0;
    for (std::size_t j = 0; j < chart.n_lambda(); ++j) {
        const cplx p = psi(chart.lambda(j));
        diag[j] = p * std::conj(p);
        norm += chart.d_lambda() * diag[j].real();
    }
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw std::invalid_argument("make_pure_state: wave function has zero norm on the grid");
    }
    for (cplx& d : diag) {
        d /= norm;
    }
    CorrelationKernel corr = kernel_from_ee(chart, [&](double e, double ep) { return psi(e) * std::conj(psi(ep)); });
    return StateFunctional(std::move(diag), scaled(std::move(corr), 1.0 / norm));
}

StateFunctional make_energy_state(const LambdaNuChart& chart, double e0)
{
    if (!(e0 > 0.0 && e0 < chart.e_max())) {
        throw std::invalid_argument("make_energy_state: e0 must lie in (0, e_max)");
    }
    const double dl = chart.d_lambda();
    // Nudge 1/dl so that dl * height is exactly 1; (E|I) = 1 must hold bitwise.
    double height = 1.0 / dl;
    for (int step = 0; step < 4 && dl * height != 1.0; ++step) {
        height = std::nextafter(height, dl * height < 1.0 ? INFINITY : 0.0);
    }
    std::vector<cplx> diag(chart.n_lambda(), cplx{0.0, 0.0});
    diag[chart.grid().nearest_node(e0)] = height;
    return StateFunctional(std::move(diag), CorrelationKernel(chart));
}

StateFunctional make_mixed_state(const LambdaNuChart& chart, const EnergyFunction& rho_fn)
{
    std::vector<cplx> diag(chart.n_lambda());
    double trace = 0.0;
    for (std::size_t j = 0; j < chart.n_lambda(); ++j) {
        const double lam = chart.lambda(j);
        const cplx v = rho_fn(lam, lam);
        if (std::abs(v.imag()) > kSampleTolerance * std::max(1.0, std::abs(v.real()))) {
            throw std::invalid_argument("make_mixed_state: diagonal rho(E,E) must be real");
        }
        diag[j] = cplx{v.real(), 0.0};
        trace += chart.d_lambda() * v.real();
    }
    if (!(trace > 0.0) || !std::isfinite(trace)) {
        throw std::invalid_argument("make_mixed_state: trace must be positive");
    }
    CorrelationKernel corr = kernel_from_ee(chart, rho_fn);
    require_hermitian(corr, "make_mixed_state");
    for (cplx& d : diag) {
        d /= trace;
    }
    return StateFunctional(std::move(diag), scaled(std::move(corr), 1.0 / trace));
}

PairingParts pair_parts(const StateFunctional& state, const Observable& obs)
{
    require_same_chart(state.chart(), obs.chart(), "pair");
    const LambdaNuChart& chart = state.chart();

    PairingParts parts{{0.0, 0.0}, {0.0, 0.0}};
    for (std::size_t j = 0; j < chart.n_lambda(); ++j) {
        parts.diagonal += (chart.d_lambda() * std::conj(state.diag()[j])) * obs.diag()[j];
    }
    for (std::size_t j = 0; j < chart.n_lambda(); ++j) {
        const auto rho = state.corr().slice(j);
        const auto o = obs.corr().slice(j);
        cplx slice_sum{0.0, 0.0};
        for (std::size_t k = 0; k < chart.m_nu(); ++k) {
            slice_sum += std::conj(rho[k]) * o[k];
        }
        parts.correlation += chart.cell_weight(j) * slice_sum;
    }
    return parts;
}

cplx pair(const StateFunctional& state, const Observable& obs)
{
    return pair_parts(state, obs).total();
}

cplx generalized_trace(const StateFunctional& state)
{
    cplx total{0.0, 0.0};
    for (const cplx& d : state.diag()) {
        total += state.chart().d_lambda() * d;
    }
    return total;
}

namespace {

ValidationReport common_checks(const std::vector<cplx>& diag, const CorrelationKernel& corr)
{
    ValidationReport report;
    for (const cplx& d : diag) {
        report.finite = report.finite && std::isfinite(d.real()) && std::isfinite(d.imag());
        report.reality_defect = std::max(report.reality_defect, std::abs(d.imag()));
    }
    report.hermiticity_defect = hermiticity_defect(corr);
    return report;
}

}  // namespace

ValidationReport check_state(const StateFunctional& state)
{
    ValidationReport report = common_checks(state.diag(), state.corr());
    const LambdaNuChart& chart = state.chart();
    report.trace_defect = std::abs(generalized_trace(state) - 1.0);
    const std::size_t zero = chart.m_nu() / 2;
    for (std::size_t j = 0; j < chart.n_lambda(); ++j) {
        report.diagonal_tie_defect =
            std::max(report.diagonal_tie_defect, std::abs(state.diag()[j] - state.corr()(j, zero)));
    }
    report.ordinary = report.diagonal_tie_defect <= kAlgebraTolerance;
    report.passed = report.finite && report.reality_defect <= kAlgebraTolerance &&
                    report.hermiticity_defect <= kAlgebraTolerance && report.trace_defect <= kAlgebraTolerance;
    return report;
}

ValidationReport check_observable(const Observable& obs)
{
    ValidationReport report = common_checks(obs.diag(), obs.corr());
    report.passed =
        report.finite && report.reality_defect <= kAlgebraTolerance && report.hermiticity_defect <= kAlgebraTolerance;
    return report;
}

}  // namespace agetime
