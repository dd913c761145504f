#include "agetime/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace agetime {

EnergyGrid::EnergyGrid(double e_max, std::size_t n_lambda)
    : e_max_(e_max), n_lambda_(n_lambda), spacing_(e_max / static_cast<double>(n_lambda))
{
    if (!(e_max > 0.0) || !std::isfinite(e_max)) {
        throw std::invalid_argument("energy grid: e_max must be positive and finite");
    }
    if (n_lambda == 0) {
        throw std::invalid_argument("energy grid: n_lambda must be at least 1");
    }
}

std::vector<double> EnergyGrid::nodes() const
{
    std::vector<double> out(n_lambda_);
    for (std::size_t j = 0; j < n_lambda_; ++j) {
        out[j] = node(j);
    }
    return out;
}

std::size_t EnergyGrid::nearest_node(double e) const
{
    const double pos = e / spacing_ - 0.5;
    if (pos <= 0.0) {
        return 0;
    }
    auto j = static_cast<std::size_t>(std::floor(pos));
    if (j >= n_lambda_ - 1) {
        return n_lambda_ - 1;
    }
    return (pos - static_cast<double>(j) > 0.5) ? j + 1 : j;
}

LambdaNuChart::LambdaNuChart(EnergyGrid grid, std::size_t m_nu) : grid_(grid), m_nu_(m_nu)
{
    if (m_nu < 4 || m_nu % 2 != 0) {
        throw std::invalid_argument("chart: m_nu must be even and at least 4, got " + std::to_string(m_nu));
    }
}

LambdaNuChart build_chart(double e_max, std::size_t n_lambda, std::size_t m_nu)
{
    return LambdaNuChart(EnergyGrid(e_max, n_lambda), m_nu);
}

void require_same_chart(const LambdaNuChart& a, const LambdaNuChart& b, const char* where)
{
    if (!(a == b)) {
        throw std::invalid_argument(std::string(where) + ": chart mismatch");
    }
}

CorrelationKernel::CorrelationKernel(LambdaNuChart chart)
    : chart_(chart), values_(chart.size(), cplx{0.0, 0.0})
{
}

CorrelationKernel::CorrelationKernel(LambdaNuChart chart, std::vector<cplx> values)
    : chart_(chart), values_(std::move(values))
{
    if (values_.size() != chart_.size()) {
        throw std::invalid_argument("kernel: expected " + std::to_string(chart_.size()) + " samples, got " +
                                    std::to_string(values_.size()));
    }
    for (const cplx& v : values_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw std::invalid_argument("kernel: non-finite sample");
        }
    }
}

namespace {

bool in_square(double e, double ep, double e_max)
{
    return e >= 0.0 && e <= e_max && ep >= 0.0 && ep <= e_max;
}

cplx sample_ee(const EnergyFunction& f, double e, double ep, double e_max)
{
    return in_square(e, ep, e_max) ? f(e, ep) : cplx{0.0, 0.0};
}

}  // namespace

CorrelationKernel kernel_from_ee(const LambdaNuChart& chart, const EnergyFunction& f)
{
    const double e_max = chart.e_max();
    std::vector<cplx> values(chart.size());
    for (std::size_t j = 0; j < chart.n_lambda(); ++j) {
        const double lam = chart.lambda(j);
        // Seam: nu = -2 lambda is (0, 2 lambda), nu = +2 lambda is (2 lambda, 0).
        values[chart.index(j, 0)] =
            0.5 * (sample_ee(f, 0.0, 2.0 * lam, e_max) + sample_ee(f, 2.0 * lam, 0.0, e_max));
        for (std::size_t k = 1; k < chart.m_nu(); ++k) {
            const double half = 0.5 * chart.nu(j, k);
            values[chart.index(j, k)] = sample_ee(f, lam + half, lam - half, e_max);
        }
    }
    return CorrelationKernel(chart, std::move(values));
}

CorrelationKernel kernel_from_chart(const LambdaNuChart& chart, const ChartFunction& g)
{
    std::vector<cplx> values(chart.size());
    for (std::size_t j = 0; j < chart.n_lambda(); ++j) {
        for (std::size_t k = 0; k < chart.m_nu(); ++k) {
            values[chart.index(j, k)] = g(chart.lambda(j), chart.nu(j, k));
        }
    }
    return CorrelationKernel(chart, std::move(values));
}

CorrelationKernel constant_kernel(const LambdaNuChart& chart, cplx value)
{
    return CorrelationKernel(chart, std::vector<cplx>(chart.size(), value));
}

namespace {

// Linear interpolation of one slice at nu. The seam sample holds an average
// of the two slice ends, so it is only returned when hit exactly; in the end
// cells the nearest two interior samples are extended linearly.
cplx slice_value(const CorrelationKernel& kernel, std::size_t j, double nu)
{
    const LambdaNuChart& chart = kernel.chart();
    const auto m = chart.m_nu();
    const double pos = nu / chart.nu_step(j) + 0.5 * static_cast<double>(m);
    const double k_floor = std::floor(pos);
    if (pos == k_floor && pos >= 0.0 && pos < static_cast<double>(m)) {
        return kernel(j, static_cast<std::size_t>(k_floor));
    }
    std::size_t k = 1;
    if (pos >= static_cast<double>(m - 2)) {
        k = m - 2;
    } else if (pos > 1.0) {
        k = static_cast<std::size_t>(k_floor);
    }
    const double frac = pos - static_cast<double>(k);
    return (1.0 - frac) * kernel(j, k) + frac * kernel(j, k + 1);
}

}  // namespace

std::vector<cplx> kernel_to_ee_samples(const CorrelationKernel& kernel,
                                       std::span<const std::pair<double, double>> e_points)
{
    const LambdaNuChart& chart = kernel.chart();
    const double e_max = chart.e_max();
    const double first = chart.lambda(0);
    const double last = chart.lambda(chart.n_lambda() - 1);

    std::vector<cplx> out;
    out.reserve(e_points.size());
    for (const auto& [e, ep] : e_points) {
        if (!in_square(e, ep, e_max)) {
            throw std::invalid_argument("kernel_to_ee_samples: point outside [0, e_max]^2");
        }
        const double lam = 0.5 * (e + ep);
        const double nu = e - ep;
        if (lam < first || lam > last) {
            out.emplace_back(0.0, 0.0);
            continue;
        }
        const double pos = lam / chart.d_lambda() - 0.5;
        auto j = static_cast<std::size_t>(std::floor(pos));
        double frac = pos - static_cast<double>(j);
        if (j >= chart.n_lambda() - 1) {
            j = chart.n_lambda() - 1;
            frac = 0.0;
        }
        cplx value = slice_value(kernel, j, nu);
        if (frac > 0.0) {
            value = (1.0 - frac) * value + frac * slice_value(kernel, j + 1, nu);
        }
        out.push_back(value);
    }
    return out;
}

cplx integrate_kernel(const CorrelationKernel& kernel, const ChartFunction& weight)
{
    const LambdaNuChart& chart = kernel.chart();
    cplx total{0.0, 0.0};
    for (std::size_t j = 0; j < chart.n_lambda(); ++j) {
        cplx slice_sum{0.0, 0.0};
        for (std::size_t k = 0; k < chart.m_nu(); ++k) {
            slice_sum += weight(chart.lambda(j), chart.nu(j, k)) * kernel(j, k);
        }
        total += chart.cell_weight(j) * slice_sum;
    }
    return total;
}

double hs_norm_squared(const CorrelationKernel& kernel)
{
    const LambdaNuChart& chart = kernel.chart();
    double total = 0.0;
    for (std::size_t j = 0; j < chart.n_lambda(); ++j) {
        double slice_sum = 0.0;
        for (const cplx& v : kernel.slice(j)) {
            slice_sum += std::norm(v);
        }
        total += chart.cell_weight(j) * slice_sum;
    }
    return total;
}

double hermiticity_defect(const CorrelationKernel& kernel)
{
    const LambdaNuChart& chart = kernel.chart();
    double worst = 0.0;
    for (std::size_t j = 0; j < chart.n_lambda(); ++j) {
        for (std::size_t k = 0; k < chart.m_nu(); ++k) {
            worst = std::max(worst, std::abs(kernel(j, k) - std::conj(kernel(j, chart.reflect(k)))));
        }
    }
    return worst;
}

CorrelationKernel operator+(const CorrelationKernel& a, const CorrelationKernel& b)
{
    require_same_chart(a.chart(), b.chart(), "kernel +");
    std::vector<cplx> out(a.values().begin(), a.values().end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] += b.values()[i];
    }
    return CorrelationKernel(a.chart(), std::move(out));
}

CorrelationKernel operator-(const CorrelationKernel& a, const CorrelationKernel& b)
{
    require_same_chart(a.chart(), b.chart(), "kernel -");
    std::vector<cplx> out(a.values().begin(), a.values().end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] -= b.values()[i];
    }
    return CorrelationKernel(a.chart(), std::move(out));
}

CorrelationKernel operator*(cplx scale, const CorrelationKernel& a)
{
    std::vector<cplx> out(a.values().begin(), a.values().end());
    for (cplx& v : out) {
        v *= scale;
    }
    return CorrelationKernel(a.chart(), std::move(out));
}

}  // namespace agetime
