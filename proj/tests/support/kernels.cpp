#include "support/kernels.hpp"

#include <cmath>

namespace testk {

cplx GaussianPsi::operator()(double e) const
{
    return std::exp(-(e - c) * (e - c) / (4.0 * sigma * sigma)) * std::polar(1.0, p * e);
}

GaussianPsi random_psi(std::mt19937_64& rng, double centre, double spread)
{
    std::uniform_real_distribution<double> c(centre - spread, centre + spread);
    std::uniform_real_distribution<double> sigma(1.05, 1.1);
    std::uniform_real_distribution<double> p(-0.5, 0.5);
    GaussianPsi psi{};
    psi.c = c(rng);
    psi.sigma = sigma(rng);
    psi.p = p(rng);
    return psi;
}

cplx SmoothObservable::diag(double e) const
{
    return {a0 + a1 * e + a2 * e * e, 0.0};
}

cplx SmoothObservable::kernel(double e, double ep) const
{
    const double lam = 0.5 * (e + ep);
    const double g = 1.0 + 0.2 * std::cos(0.3 * lam);
    cplx total{0.0, 0.0};
    for (const auto& [r, kappa] : waves) {
        total += r * std::polar(1.0, -kappa * (e - ep));
    }
    return g * total;
}

SmoothObservable random_observable(std::mt19937_64& rng, double kappa_max)
{
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_real_distribution<double> kappa(-kappa_max, kappa_max);
    SmoothObservable o{};
    o.a0 = coeff(rng);
    o.a1 = coeff(rng);
    o.a2 = 0.1 * coeff(rng);
    for (int i = 0; i < 3; ++i) {
        o.waves.emplace_back(coeff(rng), kappa(rng));
    }
    return o;
}

namespace {

agetime::CorrelationKernel sample(const agetime::LambdaNuChart& chart, const std::vector<oracle::RidgeTerm>& terms,
                                  const std::function<double(double)>& envelope, bool derivative)
{
    std::vector<cplx> values(chart.size());
    for (std::size_t j = 0; j < chart.n_lambda(); ++j) {
        const double a = envelope(chart.lambda(j));
        for (std::size_t k = 0; k < chart.m_nu(); ++k) {
            cplx v{0.0, 0.0};
            for (const auto& t : terms) {
                v += derivative ? t.i_derivative(chart.nu(j, k)) : t.value(chart.nu(j, k));
            }
            values[chart.index(j, k)] = a * v;
        }
    }
    return agetime::CorrelationKernel(chart, std::move(values));
}

}  // namespace

agetime::CorrelationKernel ridge_kernel(const agetime::LambdaNuChart& chart, const std::vector<oracle::RidgeTerm>& terms,
                                        const std::function<double(double)>& envelope)
{
    return sample(chart, terms, envelope, false);
}

agetime::CorrelationKernel ridge_i_derivative(const agetime::LambdaNuChart& chart,
                                              const std::vector<oracle::RidgeTerm>& terms,
                                              const std::function<double(double)>& envelope)
{
    return sample(chart, terms, envelope, true);
}

}  // namespace testk
