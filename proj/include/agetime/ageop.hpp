#pragma once

// Internal time (age) superoperator on the (lambda, nu) chart.
//
// On slice j the kernel is expanded in the periodic modes exp(-i s nu) with
// ages s_{j,n} = n pi / (2 lambda_j), n in [-m/2, m/2). These are the discrete
// right eigenvectors of T+ = i d/dnu; the matching left eigenfunctionals are
// (1/4 lambda) * integral of exp(+i s nu) over the slice. T+ acts as the
// multiplier s_{j,n} on the coefficients, L+ as multiplication by nu, and the
// spectral measure E_s keeps the modes with age <= s. Diagonal parts are
// annihilated by T+, L+ and every E_s.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "agetime/algebra.hpp"

namespace agetime {

// Fraction of Parseval mass allowed in the band-edge modes before spectral
// accuracy claims are withdrawn.
inline constexpr double kBandLimitTolerance = 1e-10;

double age_of(const LambdaNuChart& chart, std::size_t j, int n);

class AgeSpectrum {
public:
    AgeSpectrum(LambdaNuChart chart, std::vector<cplx> coefficients);

    const LambdaNuChart& chart() const { return chart_; }
    int min_mode() const { return -static_cast<int>(chart_.m_nu() / 2); }
    int max_mode() const { return static_cast<int>(chart_.m_nu() / 2) - 1; }

    // Coefficients of slice j ordered by mode, index i <-> n = i + min_mode().
    std::span<const cplx> slice(std::size_t j) const
    {
        return std::span<const cplx>(coefficients_).subspan(j * chart_.m_nu(), chart_.m_nu());
    }
    std::span<const cplx> coefficients() const { return coefficients_; }
    const cplx& coefficient(std::size_t j, int n) const { return coefficients_[position(j, n)]; }

    double age(std::size_t j, int n) const { return age_of(chart_, j, n); }

    // Parseval weight d_lambda * 4 lambda_j.
    double weight(std::size_t j) const { return chart_.d_lambda() * chart_.period(j); }

    // sum_j w_j sum_n |c_{j,n}|^2 == hs_norm_squared of the kernel.
    double mass() const;

    std::size_t position(std::size_t j, int n) const
    {
        return j * chart_.m_nu() + static_cast<std::size_t>(n - min_mode());
    }

private:
    LambdaNuChart chart_;
    std::vector<cplx> coefficients_;
};

// c_{j,n} = (1/m) sum_k exp(+i s_{j,n} nu_k) K(lambda_j, nu_k)
AgeSpectrum age_decompose(const CorrelationKernel& kernel);

// K(lambda_j, nu_k) = sum_n c_{j,n} exp(-i s_{j,n} nu_k)
CorrelationKernel age_reconstruct(const AgeSpectrum& spectrum);

// Multiplies every coefficient by f(s_{j,n}).
AgeSpectrum apply_age_function(const AgeSpectrum& spectrum, const std::function<double(double)>& f);

Observable apply_T(const Observable& obs);
Observable apply_L(const Observable& obs);

// nu multiplication on a kernel. The seam sample stands for both nu = -2 lambda
// and nu = +2 lambda and is multiplied by their average, 0.
CorrelationKernel multiply_by_nu(const CorrelationKernel& kernel);

// Keeps coefficients with age <= s (inclusive). s may be +-infinity.
AgeSpectrum project_below(const AgeSpectrum& spectrum, double s);

// Mass fraction carried by modes with |n| >= m/2 - max(1, m/8).
double band_edge_fraction(const AgeSpectrum& spectrum);
bool is_band_limited(const CorrelationKernel& kernel);

struct DefectReport {
    double value = 0.0;
    bool precondition_ok = true;
    double band_edge_fraction = 0.0;  // worst over the kernels the check inspected
};

// || [T+, L+] O - i O^c ||_HS / || O^c ||_HS. O^c == 0 gives 0. The band
// limit is required of O^c and of L+ O.
DefectReport commutator_defect(const Observable& obs);

// || U+_t T+ U+_{-t} O - T+ O - t O^c || / || O^c ||. The band limit is
// required of O^c and of U+_{-t} O^c.
DefectReport shift_defect(const Observable& obs, double t);

// || E_s(U_t K) - U_t E_{s-t} K || / || K || for a state kernel K.
DefectReport imprimitivity_defect(const CorrelationKernel& kernel, double s, double t);

struct EigenCheck {
    std::size_t slice = 0;
    double s_grid = 0.0;          // n pi / (2 lambda_slice)
    double snapping_error = 0.0;  // |s - s_grid|
    double snapping_bound = 0.0;  // pi d_lambda |n| / (2 lambda_slice^2)
    double defect = 0.0;          // || T+ phi - s_grid phi || / || phi ||
};

// Synthesizes the discrete |phi_{sn}) on the slice nearest n pi / (2 s) and
// measures the eigenvalue equation. Throws for n == 0 (the s = 0 family is the
// constant mode), sign(n) != sign(s), |n| >= m/2, or a target lambda off the grid.
EigenCheck eigen_defect(const LambdaNuChart& chart, double s, int n);

// Right eigenvector: exp(-i s_{j,n} nu) on slice j, zero elsewhere.
CorrelationKernel right_eigenvector(const LambdaNuChart& chart, std::size_t j, int n);

// (phi_{j,n}| applied to a kernel: (1/m) sum_k exp(+i s_{j,n} nu_k) K(lambda_j, nu_k).
cplx apply_left_eigenfunctional(const CorrelationKernel& kernel, std::size_t j, int n);

}  // namespace agetime
