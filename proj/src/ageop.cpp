#include "agetime/ageop.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "agetime/evolution.hpp"

namespace agetime {

namespace {

// The FFTW planner is not re-entrant; execution is.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

// One batched transform over all slices of a chart.
class SliceTransform {
public:
    SliceTransform(const LambdaNuChart& chart, int sign) : m_(chart.m_nu()), n_(chart.n_lambda())
    {
        buffer_ = fftw_alloc_complex(m_ * n_);
        if (buffer_ == nullptr) {
            throw std::bad_alloc();
        }
        const int length = static_cast<int>(m_);
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan_ = fftw_plan_many_dft(1, &length, static_cast<int>(n_), buffer_, nullptr, 1, length, buffer_, nullptr, 1,
                                   length, sign, FFTW_ESTIMATE);
        if (plan_ == nullptr) {
            fftw_free(buffer_);
            throw std::runtime_error("fftw: could not create plan");
        }
    }

    ~SliceTransform()
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan_);
        fftw_free(buffer_);
    }

    SliceTransform(const SliceTransform&) = delete;
    SliceTransform& operator=(const SliceTransform&) = delete;

    cplx& at(std::size_t j, std::size_t q) { return *reinterpret_cast<cplx*>(buffer_[j * m_ + q]); }
    void execute() { fftw_execute(plan_); }

private:
    std::size_t m_;
    std::size_t n_;
    fftw_complex* buffer_ = nullptr;
    fftw_plan plan_ = nullptr;
};

std::size_t wrap(int n, std::size_t m)
{
    const int mm = static_cast<int>(m);
    return static_cast<std::size_t>(((n % mm) + mm) % mm);
}

double alternating(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

double relative_hs(const CorrelationKernel& diff, double reference_sq)
{
    if (reference_sq == 0.0) {
        return 0.0;
    }
    return std::sqrt(hs_norm_squared(diff) / reference_sq);
}

Observable correlation_only(CorrelationKernel corr)
{
    return Observable(std::vector<cplx>(corr.chart().n_lambda(), cplx{0.0, 0.0}), std::move(corr));
}

}  // namespace

double age_of(const LambdaNuChart& chart, std::size_t j, int n)
{
    return static_cast<double>(n) * std::numbers::pi / (2.0 * chart.lambda(j));
}

AgeSpectrum::AgeSpectrum(LambdaNuChart chart, std::vector<cplx> coefficients)
    : chart_(chart), coefficients_(std::move(coefficients))
{
    if (coefficients_.size() != chart_.size()) {
        throw std::invalid_argument("age spectrum: coefficient count does not match chart");
    }
}

double AgeSpectrum::mass() const
{
    double total = 0.0;
    for (std::size_t j = 0; j < chart_.n_lambda(); ++j) {
        double slice_sum = 0.0;
        for (const cplx& c : slice(j)) {
            slice_sum += std::norm(c);
        }
        total += weight(j) * slice_sum;
    }
    return total;
}

AgeSpectrum age_decompose(const CorrelationKernel& kernel)
{
    const LambdaNuChart& chart = kernel.chart();
    const std::size_t m = chart.m_nu();
    SliceTransform fft(chart, FFTW_BACKWARD);
    for (std::size_t j = 0; j < chart.n_lambda(); ++j) {
        for (std::size_t k = 0; k < m; ++k) {
            fft.at(j, k) = kernel(j, k);
        }
    }
    fft.execute();

    std::vector<cplx> coefficients(chart.size());
    const double inv_m = 1.0 / static_cast<double>(m);
    const int half = static_cast<int>(m / 2);
    for (std::size_t j = 0; j < chart.n_lambda(); ++j) {
        for (int n = -half; n < half; ++n) {
            coefficients[j * m + static_cast<std::size_t>(n + half)] = (alternating(n) * inv_m) * fft.at(j, wrap(n, m));
        }
    }
    return AgeSpectrum(chart, std::move(coefficients));
}

CorrelationKernel age_reconstruct(const AgeSpectrum& spectrum)
{
    const LambdaNuChart& chart = spectrum.chart();
    const std::size_t m = chart.m_nu();
    SliceTransform fft(chart, FFTW_FORWARD);
    for (std::size_t j = 0; j < chart.n_lambda(); ++j) {
        for (int n = spectrum.min_mode(); n <= spectrum.max_mode(); ++n) {
            fft.at(j, wrap(n, m)) = alternating(n) * spectrum.coefficient(j, n);
        }
    }
    fft.execute();

    std::vector<cplx> values(chart.size());
    for (std::size_t j = 0; j < chart.n_lambda(); ++j) {
        for (std::size_t k = 0; k < m; ++k) {
            values[chart.index(j, k)] = fft.at(j, k);
        }
    }
    return CorrelationKernel(chart, std::move(values));
}

AgeSpectrum apply_age_function(const AgeSpectrum& spectrum, const std::function<double(double)>& f)
{
    const LambdaNuChart& chart = spectrum.chart();
    std::vector<cplx> out(spectrum.coefficients().begin(), spectrum.coefficients().end());
    for (std::size_t j = 0; j < chart.n_lambda(); ++j) {
        for (int n = spectrum.min_mode(); n <= spectrum.max_mode(); ++n) {
            out[spectrum.position(j, n)] *= f(spectrum.age(j, n));
        }
    }
    return AgeSpectrum(chart, std::move(out));
}

Observable apply_T(const Observable& obs)
{
    const AgeSpectrum aged = apply_age_function(age_decompose(obs.corr()), [](double s) { return s; });
    return correlation_only(age_reconstruct(aged));
}

CorrelationKernel multiply_by_nu(const CorrelationKernel& kernel)
{
    const LambdaNuChart& chart = kernel.chart();
    std::vector<cplx> out(kernel.values().begin(), kernel.values().end());
    for (std::size_t j = 0; j < chart.n_lambda(); ++j) {
        out[chart.index(j, 0)] = 0.0;
        for (std::size_t k = 1; k < chart.m_nu(); ++k) {
            out[chart.index(j, k)] *= chart.nu(j, k);
        }
    }
    return CorrelationKernel(chart, std::move(out));
}

Observable apply_L(const Observable& obs)
{
    return correlation_only(multiply_by_nu(obs.corr()));
}

AgeSpectrum project_below(const AgeSpectrum& spectrum, double s)
{
    if (std::isnan(s)) {
        throw std::invalid_argument("project_below: threshold is NaN");
    }
    return apply_age_function(spectrum, [s](double age) { return age <= s ? 1.0 : 0.0; });
}

double band_edge_fraction(const AgeSpectrum& spectrum)
{
    const LambdaNuChart& chart = spectrum.chart();
    const int half = static_cast<int>(chart.m_nu() / 2);
    const int edge = half - std::max(1, half / 4);
    double edge_mass = 0.0;
    double total = 0.0;
    for (std::size_t j = 0; j < chart.n_lambda(); ++j) {
        for (int n = spectrum.min_mode(); n <= spectrum.max_mode(); ++n) {
            const double mass = spectrum.weight(j) * std::norm(spectrum.coefficient(j, n));
            total += mass;
            if (std::abs(n) >= edge) {
                edge_mass += mass;
            }
        }
    }
    return total > 0.0 ? edge_mass / total : 0.0;
}

bool is_band_limited(const CorrelationKernel& kernel)
{
    return band_edge_fraction(age_decompose(kernel)) <= kBandLimitTolerance;
}

namespace {

void inspect_band(DefectReport& report, const CorrelationKernel& kernel)
{
    const double fraction = band_edge_fraction(age_decompose(kernel));
    report.band_edge_fraction = std::max(report.band_edge_fraction, fraction);
    report.precondition_ok = report.precondition_ok && fraction <= kBandLimitTolerance;
}

}  // namespace

DefectReport commutator_defect(const Observable& obs)
{
    DefectReport report;
    const double reference = hs_norm_squared(obs.corr());
    if (reference == 0.0) {
        return report;
    }
    const Observable lo = apply_L(obs);
    inspect_band(report, obs.corr());
    inspect_band(report, lo.corr());

    const CorrelationKernel tl = apply_T(lo).corr();
    const CorrelationKernel lt = apply_L(apply_T(obs)).corr();
    const CorrelationKernel diff = tl - lt - cplx{0.0, 1.0} * obs.corr();
    report.value = relative_hs(diff, reference);
    return report;
}

DefectReport shift_defect(const Observable& obs, double t)
{
    DefectReport report;
    const double reference = hs_norm_squared(obs.corr());
    if (t == 0.0 || reference == 0.0) {
        return report;
    }
    const Observable aged = evolve_observable(obs, -t);
    inspect_band(report, obs.corr());
    inspect_band(report, aged.corr());

    const CorrelationKernel lhs = evolve_observable(apply_T(aged), t).corr();
    const CorrelationKernel diff = lhs - apply_T(obs).corr() - cplx{t, 0.0} * obs.corr();
    report.value = relative_hs(diff, reference);
    return report;
}

DefectReport imprimitivity_defect(const CorrelationKernel& kernel, double s, double t)
{
    DefectReport report;
    const double reference = hs_norm_squared(kernel);
    if (reference == 0.0) {
        return report;
    }
    const CorrelationKernel evolved = phase_kernel(kernel, t);
    inspect_band(report, kernel);
    inspect_band(report, evolved);

    const CorrelationKernel lhs = age_reconstruct(project_below(age_decompose(evolved), s));
    const CorrelationKernel rhs = phase_kernel(age_reconstruct(project_below(age_decompose(kernel), s - t)), t);
    report.value = relative_hs(lhs - rhs, reference);
    return report;
}

CorrelationKernel right_eigenvector(const LambdaNuChart& chart, std::size_t j, int n)
{
    if (j >= chart.n_lambda()) {
        throw std::invalid_argument("right_eigenvector: slice out of range");
    }
    std::vector<cplx> values(chart.size(), cplx{0.0, 0.0});
    const double s = age_of(chart, j, n);
    for (std::size_t k = 0; k < chart.m_nu(); ++k) {
        const double phase = -s * chart.nu(j, k);
        values[chart.index(j, k)] = cplx{std::cos(phase), std::sin(phase)};
    }
    return CorrelationKernel(chart, std::move(values));
}

cplx apply_left_eigenfunctional(const CorrelationKernel& kernel, std::size_t j, int n)
{
    const LambdaNuChart& chart = kernel.chart();
    const double s = age_of(chart, j, n);
    cplx total{0.0, 0.0};
    for (std::size_t k = 0; k < chart.m_nu(); ++k) {
        const double phase = s * chart.nu(j, k);
        total += cplx{std::cos(phase), std::sin(phase)} * kernel(j, k);
    }
    return total / static_cast<double>(chart.m_nu());
}

EigenCheck eigen_defect(const LambdaNuChart& chart, double s, int n)
{
    if (n == 0) {
        throw std::invalid_argument(
            "eigen_defect: n = 0 belongs to the s = 0 family phi_{0 lambda} (constant mode, eigenvalue 0)");
    }
    if (!(s != 0.0) || (s > 0.0) != (n > 0)) {
        throw std::invalid_argument("eigen_defect: sign of n must match sign of s");
    }
    const int half = static_cast<int>(chart.m_nu() / 2);
    if (std::abs(n) >= half) {
        throw std::invalid_argument("eigen_defect: |n| must be below m_nu/2 = " + std::to_string(half));
    }
    const double target = static_cast<double>(n) * std::numbers::pi / (2.0 * s);
    if (!(target > 0.0 && target <= chart.e_max())) {
        throw std::invalid_argument("eigen_defect: target lambda = n pi / 2s lies outside the grid");
    }

    EigenCheck check;
    check.slice = chart.grid().nearest_node(target);
    const double lam = chart.lambda(check.slice);
    check.s_grid = age_of(chart, check.slice, n);
    check.snapping_error = std::abs(s - check.s_grid);
    check.snapping_bound = std::numbers::pi * chart.d_lambda() * std::abs(n) / (2.0 * lam * lam);

    const Observable phi = correlation_only(right_eigenvector(chart, check.slice, n));
    const CorrelationKernel diff = apply_T(phi).corr() - cplx{check.s_grid, 0.0} * phi.corr();
    check.defect = relative_hs(diff, hs_norm_squared(phi.corr()));
    return check;
}

}  // namespace agetime
