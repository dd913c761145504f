#pragma once

// Energy discretization and the (E,E') <-> (lambda,nu) chart.
//
// lambda = (E+E')/2 lives on a midpoint grid of [0, e_max]. Each lambda slice
// carries a periodic nu grid of m_nu samples covering [-2 lambda, 2 lambda),
// with nu = +2 lambda identified with nu = -2 lambda.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace agetime {

using cplx = std::complex<double>;

class EnergyGrid {
public:
    EnergyGrid(double e_max, std::size_t n_lambda);

    double e_max() const { return e_max_; }
    std::size_t size() const { return n_lambda_; }
    double spacing() const { return spacing_; }
    double weight() const { return spacing_; }

    // Midpoint node (j + 1/2) * spacing.
    double node(std::size_t j) const { return (static_cast<double>(j) + 0.5) * spacing_; }
    std::vector<double> nodes() const;

    // Index of the node closest to e (ties go to the lower node).
    std::size_t nearest_node(double e) const;

    bool operator==(const EnergyGrid&) const = default;

private:
    double e_max_;
    std::size_t n_lambda_;
    double spacing_;
};

class LambdaNuChart {
public:
    LambdaNuChart(EnergyGrid grid, std::size_t m_nu);

    const EnergyGrid& grid() const { return grid_; }
    double e_max() const { return grid_.e_max(); }
    std::size_t n_lambda() const { return grid_.size(); }
    std::size_t m_nu() const { return m_nu_; }
    std::size_t size() const { return grid_.size() * m_nu_; }
    double d_lambda() const { return grid_.spacing(); }

    double lambda(std::size_t j) const { return grid_.node(j); }
    double period(std::size_t j) const { return 4.0 * lambda(j); }
    double nu_step(std::size_t j) const { return period(j) / static_cast<double>(m_nu_); }

    // nu_k = (k - m/2) * step, so nu_{m-k} == -nu_k bitwise. k = 0 is the seam.
    double nu(std::size_t j, std::size_t k) const
    {
        return (static_cast<double>(k) - 0.5 * static_cast<double>(m_nu_)) * nu_step(j);
    }

    // Quadrature weight of one (lambda_j, nu_k) cell.
    double cell_weight(std::size_t j) const { return d_lambda() * nu_step(j); }

    // Index of the sample at -nu_k under the periodic identification.
    std::size_t reflect(std::size_t k) const { return k == 0 ? 0 : m_nu_ - k; }

    std::size_t index(std::size_t j, std::size_t k) const { return j * m_nu_ + k; }

    bool operator==(const LambdaNuChart&) const = default;

private:
    EnergyGrid grid_;
    std::size_t m_nu_;
};

// Validates and builds a chart. Throws std::invalid_argument on
// non-positive e_max, n_lambda == 0, odd m_nu or m_nu < 4.
LambdaNuChart build_chart(double e_max, std::size_t n_lambda, std::size_t m_nu);

// Complex samples K(lambda_j, nu_k) on a chart, slice-major.
class CorrelationKernel {
public:
    explicit CorrelationKernel(LambdaNuChart chart);  // zero kernel
    CorrelationKernel(LambdaNuChart chart, std::vector<cplx> values);

    const LambdaNuChart& chart() const { return chart_; }
    std::span<const cplx> values() const { return values_; }
    std::span<const cplx> slice(std::size_t j) const
    {
        return std::span<const cplx>(values_).subspan(j * chart_.m_nu(), chart_.m_nu());
    }
    const cplx& operator()(std::size_t j, std::size_t k) const { return values_[chart_.index(j, k)]; }

    // Moves the samples out; the kernel is left empty.
    std::vector<cplx> release() && { return std::move(values_); }

private:
    LambdaNuChart chart_;
    std::vector<cplx> values_;
};

using EnergyFunction = std::function<cplx(double, double)>;
using ChartFunction = std::function<cplx(double, double)>;

// Samples f(lambda + nu/2, lambda - nu/2). Points outside the energy square
// [0, e_max]^2 are 0. The seam sample (nu = -2 lambda ~ +2 lambda) holds the
// average of the two endpoint values, so Hermitian f gives Hermitian samples.
CorrelationKernel kernel_from_ee(const LambdaNuChart& chart, const EnergyFunction& f);

// Samples g(lambda_j, nu_k) directly on the chart.
CorrelationKernel kernel_from_chart(const LambdaNuChart& chart, const ChartFunction& g);

CorrelationKernel constant_kernel(const LambdaNuChart& chart, cplx value);

// Bilinear read-out at energy pairs: linear in lambda between the bracketing
// slices, linear in nu within each slice (the cells next to the seam extend
// the nearest interior pair instead of blending in the seam average). Points whose lambda
// falls outside [lambda_0, lambda_last] return 0. Throws std::invalid_argument
// for points outside [0, e_max]^2.
std::vector<cplx> kernel_to_ee_samples(const CorrelationKernel& kernel,
                                       std::span<const std::pair<double, double>> e_points);

// sum_j sum_k d_lambda * (4 lambda_j / m) * weight(lambda_j, nu_k) * K(lambda_j, nu_k)
cplx integrate_kernel(const CorrelationKernel& kernel, const ChartFunction& weight);

// Chart Hilbert-Schmidt norm squared, sum of cell_weight * |K|^2.
double hs_norm_squared(const CorrelationKernel& kernel);

// max |K(lambda, nu) - conj K(lambda, -nu)| over samples.
double hermiticity_defect(const CorrelationKernel& kernel);

// Pointwise helpers used by the superoperators.
CorrelationKernel operator+(const CorrelationKernel& a, const CorrelationKernel& b);
CorrelationKernel operator-(const CorrelationKernel& a, const CorrelationKernel& b);
CorrelationKernel operator*(cplx scale, const CorrelationKernel& a);

void require_same_chart(const LambdaNuChart& a, const LambdaNuChart& b, const char* where);

}  // namespace agetime
