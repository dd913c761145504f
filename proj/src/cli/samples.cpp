#include "agetime/cli/samples.hpp"

#include <cmath>
#include <numbers>

namespace agetime::cli {

namespace {

struct Term {
    double r;
    double alpha;
    double kappa;
};

std::vector<Term> draw_terms(const KernelClass& cls, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> count(1, 3);
    std::uniform_real_distribution<double> alpha(cls.alpha_lo, cls.alpha_hi);
    std::uniform_real_distribution<double> kappa(cls.kappa_lo, cls.kappa_hi);
    std::normal_distribution<double> weight(0.0, 1.0);
    std::vector<Term> terms(static_cast<std::size_t>(count(rng)));
    for (Term& t : terms) {
        t.alpha = alpha(rng);
        t.r = weight(rng);
        t.kappa = kappa(rng);
    }
    return terms;
}

cplx term_sum(const std::vector<Term>& terms, double lam, double nu)
{
    cplx total{0.0, 0.0};
    for (const Term& t : terms) {
        const double sigma = t.alpha * lam;
        const double phase = -t.kappa * std::numbers::pi * nu / (2.0 * lam);
        total += t.r * std::exp(-nu * nu / (2.0 * sigma * sigma)) * cplx{std::cos(phase), std::sin(phase)};
    }
    return total;
}

}  // namespace

CorrelationKernel random_kernel(const LambdaNuChart& chart, const KernelClass& cls, std::mt19937_64& rng)
{
    const double lo = cls.lambda_lo * chart.e_max();
    const double hi = cls.lambda_hi * chart.e_max();
    std::uniform_real_distribution<double> centre(lo, hi);
    const double lc = cls.compact ? 0.5 * (lo + hi) : centre(rng);
    const double half = 0.5 * (hi - lo);
    const double w = (hi - lo) / 6.0;
    const auto envelope = [&](double lam) {
        if (cls.compact) {
            const double x = (lam - lc) / half;
            return std::abs(x) < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0;
        }
        return std::exp(-(lam - lc) * (lam - lc) / (2.0 * w * w));
    };
    const std::vector<Term> terms = draw_terms(cls, rng);
    return kernel_from_chart(chart, [&](double lam, double nu) { return envelope(lam) * term_sum(terms, lam, nu); });
}

CorrelationKernel random_slice_kernel(const LambdaNuChart& chart, std::size_t j, const KernelClass& cls,
                                      std::mt19937_64& rng)
{
    const std::vector<Term> terms = draw_terms(cls, rng);
    std::vector<cplx> values(chart.size(), cplx{0.0, 0.0});
    const double lam = chart.lambda(j);
    for (std::size_t k = 0; k < chart.m_nu(); ++k) {
        values[chart.index(j, k)] = term_sum(terms, lam, chart.nu(j, k));
    }
    return CorrelationKernel(chart, std::move(values));
}

}  // namespace agetime::cli
