#pragma once

#include <span>
#include <string>
#include <vector>

#include "agetime/ageop.hpp"

namespace agetime {

enum class ProfileKind {
    Logistic,         // 1 / (1 + exp(beta s))
    ExponentialTail,  // 2 exp(-beta s) / (1 + exp(-beta s))
};

std::string to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(const std::string& name);

// Positive, strictly decreasing age weight A(s) with A -> 0 as s -> +inf.
class AgeProfile {
public:
    ProfileKind kind() const { return kind_; }
    double beta() const { return beta_; }
    double operator()(double s) const;

private:
    friend AgeProfile make_profile(ProfileKind kind, double beta);
    AgeProfile(ProfileKind kind, double beta) : kind_(kind), beta_(beta) {}

    ProfileKind kind_;
    double beta_;
};

// Throws std::invalid_argument for beta <= 0 or if the family fails the
// dense positivity / monotonicity sample check.
AgeProfile make_profile(ProfileKind kind, double beta);

// Diagonal part kept, correlation coefficients weighted by A(s).
StateFunctional lambda_transform(const StateFunctional& state, const AgeProfile& profile);

// HS norm^2 of the correlation part of the transformed state evolved to t.
double lyapunov_direct(const StateFunctional& state, const AgeProfile& profile, double t);

// sum_j w_j sum_n A^2(s_{j,n} + t) |c_{j,n}|^2 over the initial spectrum.
double lyapunov_spectral(const StateFunctional& state, const AgeProfile& profile, double t);
double lyapunov_spectral(const AgeSpectrum& spectrum, const AgeProfile& profile, double t);

struct LyapunovPoint {
    double t = 0.0;
    double spectral = 0.0;
    double direct = 0.0;
    bool monotone_ok = true;
};

struct LyapunovSeries {
    std::vector<LyapunovPoint> points;
    double final_ratio = 0.0;  // L(t_end) / L(t_0); 0 when L(t_0) == 0
    bool monotone() const;
};

// Times must be strictly increasing. monotone_ok requires L_spectral not to
// grow from the previous point, and to drop strictly whenever the term-wise
// decrease is resolvable in double precision.
LyapunovSeries lyapunov_series(const StateFunctional& state, const AgeProfile& profile, std::span<const double> times);

// Largest |s| over the chart's age grid.
double max_age(const LambdaNuChart& chart);

}  // namespace agetime
