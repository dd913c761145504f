#include "agetime/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "agetime/evolution.hpp"

namespace agetime {

std::string to_string(ProfileKind kind)
{
    switch (kind) {
    case ProfileKind::Logistic:
        return "logistic";
    case ProfileKind::ExponentialTail:
        return "exponential_tail";
    }
    return "unknown";
}

ProfileKind profile_kind_from_string(const std::string& name)
{
    if (name == "logistic") {
        return ProfileKind::Logistic;
    }
    if (name == "exponential_tail") {
        return ProfileKind::ExponentialTail;
    }
    throw std::invalid_argument("unknown age profile family '" + name + "'");
}

// Single-branch formulas: exp, + and / are all monotone under rounding, so the
// computed A is non-increasing in s exactly.
double AgeProfile::operator()(double s) const
{
    const double e = std::exp(beta_ * s);
    switch (kind_) {
    case ProfileKind::Logistic:
        return 1.0 / (1.0 + e);
    case ProfileKind::ExponentialTail:
        return 2.0 / (1.0 + e);
    }
    return 0.0;
}

AgeProfile make_profile(ProfileKind kind, double beta)
{
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw std::invalid_argument("make_profile: beta must be positive and finite");
    }
    const AgeProfile profile(kind, beta);

    // Dense sample check over +-60/beta. Strict decrease is only demanded
    // where neighbouring values are distinguishable in double precision.
    constexpr int samples = 12001;
    const double lo = -60.0 / beta;
    const double step = 120.0 / beta / (samples - 1);
    double previous = profile(lo);
    for (int i = 1; i < samples; ++i) {
        const double s = lo + step * i;
        const double value = profile(s);
        if (!(value > 0.0) || !std::isfinite(value)) {
            throw std::invalid_argument("make_profile: " + to_string(kind) + " is not positive at s = " +
                                        std::to_string(s));
        }
        if (value > previous || (beta * s > -20.0 && value == previous)) {
            throw std::invalid_argument("make_profile: " + to_string(kind) + " is not strictly decreasing");
        }
        previous = value;
    }
    if (profile(60.0 / beta) > 1e-12) {
        throw std::invalid_argument("make_profile: " + to_string(kind) + " does not decay to 0");
    }
    return profile;
}

StateFunctional lambda_transform(const StateFunctional& state, const AgeProfile& profile)
{
    const AgeSpectrum weighted = apply_age_function(age_decompose(state.corr()), profile);
    return StateFunctional(state.diag(), age_reconstruct(weighted));
}

double lyapunov_direct(const StateFunctional& state, const AgeProfile& profile, double t)
{
    return hs_norm_squared(lambda_transform(evolve(state, t), profile).corr());
}

double lyapunov_spectral(const AgeSpectrum& spectrum, const AgeProfile& profile, double t)
{
    const LambdaNuChart& chart = spectrum.chart();
    double total = 0.0;
    for (std::size_t j = 0; j < chart.n_lambda(); ++j) {
        double slice_sum = 0.0;
        for (int n = spectrum.min_mode(); n <= spectrum.max_mode(); ++n) {
            const double a = profile(spectrum.age(j, n) + t);
            slice_sum += (a * a) * std::norm(spectrum.coefficient(j, n));
        }
        total += spectrum.weight(j) * slice_sum;
    }
    return total;
}

double lyapunov_spectral(const StateFunctional& state, const AgeProfile& profile, double t)
{
    return lyapunov_spectral(age_decompose(state.corr()), profile, t);
}

namespace {

// sum_j w_j sum_n (A^2(s + t0) - A^2(s + t1)) |c|^2, every term >= 0.
double termwise_decrease(const AgeSpectrum& spectrum, const AgeProfile& profile, double t0, double t1)
{
    const LambdaNuChart& chart = spectrum.chart();
    double total = 0.0;
    for (std::size_t j = 0; j < chart.n_lambda(); ++j) {
        for (int n = spectrum.min_mode(); n <= spectrum.max_mode(); ++n) {
            const double s = spectrum.age(j, n);
            const double a0 = profile(s + t0);
            const double a1 = profile(s + t1);
            total += spectrum.weight(j) * (a0 * a0 - a1 * a1) * std::norm(spectrum.coefficient(j, n));
        }
    }
    return total;
}

}  // namespace

bool LyapunovSeries::monotone() const
{
    return std::all_of(points.begin(), points.end(), [](const LyapunovPoint& p) { return p.monotone_ok; });
}

LyapunovSeries lyapunov_series(const StateFunctional& state, const AgeProfile& profile, std::span<const double> times)
{
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) {
            throw std::invalid_argument("lyapunov_series: times must be strictly increasing");
        }
    }
    const AgeSpectrum spectrum = age_decompose(state.corr());
    LyapunovSeries series;
    series.points.reserve(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        LyapunovPoint point;
        point.t = times[i];
        point.spectral = lyapunov_spectral(spectrum, profile, times[i]);
        point.direct = lyapunov_direct(state, profile, times[i]);
        if (i > 0) {
            const double previous = series.points.back().spectral;
            point.monotone_ok = point.spectral <= previous;
            const double drop = termwise_decrease(spectrum, profile, times[i - 1], times[i]);
            if (drop > 8.0 * std::numeric_limits<double>::epsilon() * previous) {
                point.monotone_ok = point.monotone_ok && point.spectral < previous;
            }
        }
        series.points.push_back(point);
    }
    if (!series.points.empty() && series.points.front().spectral > 0.0) {
        series.final_ratio = series.points.back().spectral / series.points.front().spectral;
    }
    return series;
}

double max_age(const LambdaNuChart& chart)
{
    return static_cast<double>(chart.m_nu() / 2) * std::numbers::pi / (2.0 * chart.lambda(0));
}

}  // namespace agetime
