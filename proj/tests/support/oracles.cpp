#include "support/oracles.hpp"

#include <cmath>
#include <numbers>

namespace oracle {

cplx integrate_1d(const Fn1& f, double e_max, int n)
{
    const double h = e_max / n;
    cplx total{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
        total += f((i + 0.5) * h);
    }
    return total * h;
}

cplx integrate_2d(const Fn2& f, double e_max, int n)
{
    const double h = e_max / n;
    cplx total{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
        cplx row{0.0, 0.0};
        for (int k = 0; k < n; ++k) {
            row += f((i + 0.5) * h, (k + 0.5) * h);
        }
        total += row;
    }
    return total * h * h;
}

cplx pure_expectation(const Fn1& psi, const Fn1& diag, const Fn2& kernel, double e_max, int n)
{
    const double h = e_max / n;
    std::vector<cplx> p(n);
    std::vector<double> e(n);
    for (int i = 0; i < n; ++i) {
        e[i] = (i + 0.5) * h;
        p[i] = psi(e[i]);
    }
    double norm = 0.0;
    cplx diag_part{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
        norm += std::norm(p[i]);
        diag_part += std::norm(p[i]) * diag(e[i]);
    }
    cplx corr_part{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
        cplx row{0.0, 0.0};
        for (int k = 0; k < n; ++k) {
            row += kernel(e[i], e[k]) * p[k];
        }
        corr_part += std::conj(p[i]) * row;
    }
    // diag_part is a 1-D integral, corr_part a 2-D one: one extra factor h.
    return (diag_part * h + corr_part * h * h) / (norm * h);
}

cplx mixed_expectation(const Fn2& rho, const Fn1& diag, const Fn2& kernel, double e_max, int n)
{
    const double h = e_max / n;
    cplx trace{0.0, 0.0};
    cplx diag_part{0.0, 0.0};
    cplx corr_part{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
        const double e = (i + 0.5) * h;
        trace += rho(e, e);
        diag_part += rho(e, e) * diag(e);
        for (int k = 0; k < n; ++k) {
            const double ep = (k + 0.5) * h;
            corr_part += rho(e, ep) * kernel(ep, e);
        }
    }
    return (diag_part * h + corr_part * h * h) / (trace * h);
}

std::vector<cplx> direct_dft(const std::vector<cplx>& samples, double lambda)
{
    const int m = static_cast<int>(samples.size());
    std::vector<cplx> out;
    out.reserve(samples.size());
    for (int n = -m / 2; n < m / 2; ++n) {
        const double s = n * std::numbers::pi / (2.0 * lambda);
        cplx total{0.0, 0.0};
        for (int k = 0; k < m; ++k) {
            const double nu = -2.0 * lambda + k * 4.0 * lambda / m;
            total += std::polar(1.0, s * nu) * samples[k];
        }
        out.push_back(total / static_cast<double>(m));
    }
    return out;
}

// rho(lambda, nu) = N exp(-(lambda-c)^2/(2 sigma^2)) exp(-nu^2/(8 sigma^2)) with
// unit lambda-integral; integrating exp(-nu^2/(8 sigma^2) - nu^2/(2 tau^2) + i nu t)
// over nu gives sqrt(2 pi) g exp(-g^2 t^2 / 2) with 1/g^2 = 1/(4 sigma^2) + 1/tau^2.
double gaussian_envelope(double sigma, double tau, double amplitude, double t)
{
    const double g = 1.0 / std::sqrt(1.0 / (4.0 * sigma * sigma) + 1.0 / (tau * tau));
    return std::abs(amplitude) * std::sqrt(2.0 * std::numbers::pi) * g * std::exp(-0.5 * g * g * t * t);
}

cplx RidgeTerm::value(double nu) const
{
    return r * std::exp(-nu * nu / (2.0 * w * w)) * std::polar(1.0, -k * nu);
}

cplx RidgeTerm::i_derivative(double nu) const
{
    // d/dnu value = (-nu / w^2 - i k) value
    return cplx{0.0, 1.0} * cplx{-nu / (w * w), -k} * value(nu);
}

}  // namespace oracle
