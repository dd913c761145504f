#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "agetime/ageop.hpp"
#include "support/kernels.hpp"
#include "support/oracles.hpp"

using namespace agetime;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs_diff(const CorrelationKernel& a, const CorrelationKernel& b)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i) {
        worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
    }
    return worst;
}

double rel_hs(const CorrelationKernel& a, const CorrelationKernel& b)
{
    return std::sqrt(hs_norm_squared(a - b) / hs_norm_squared(b));
}

Observable from_kernel(const CorrelationKernel& k)
{
    return Observable(std::vector<cplx>(k.chart().n_lambda(), cplx{0.0, 0.0}), k);
}

CorrelationKernel random_dense_kernel(const LambdaNuChart& chart, std::mt19937_64& rng)
{
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<cplx> v(chart.size());
    for (cplx& x : v) {
        x = {g(rng), g(rng)};
    }
    return CorrelationKernel(chart, std::move(v));
}

// Smooth ridge kernel living on slices lambda in roughly [5, 10] of a (20, 64, 128) chart.
const std::vector<oracle::RidgeTerm> kTerms{{1.0, 1.2, 0.5}, {-0.6, 1.0, -0.8}};

double ridge_envelope(double lam)
{
    return std::exp(-(lam - 7.5) * (lam - 7.5) / (2.0 * 0.8 * 0.8));
}

}  // namespace

TEST_CASE("decomposition of basic kernels")
{
    const LambdaNuChart chart = build_chart(10.0, 4, 8);
    const CorrelationKernel mode1 = kernel_from_chart(chart, [](double l, double n) { return std::polar(1.0, -kPi * n / (2.0 * l)); });
    const AgeSpectrum sp = age_decompose(mode1);
    for (std::size_t j = 0; j < chart.n_lambda(); ++j) {
        for (int n = sp.min_mode(); n <= sp.max_mode(); ++n) {
            CHECK(std::abs(sp.coefficient(j, n) - (n == 1 ? 1.0 : 0.0)) <= 1e-14);
        }
        CHECK(sp.age(j, 1) == kPi / (2.0 * chart.lambda(j)));
        CHECK(sp.age(j, 0) == 0.0);
        CHECK(sp.age(j, -2) < 0.0);
    }

    const AgeSpectrum ones = age_decompose(constant_kernel(chart, 1.0));
    for (std::size_t j = 0; j < chart.n_lambda(); ++j) {
        for (int n = ones.min_mode(); n <= ones.max_mode(); ++n) {
            CHECK(std::abs(ones.coefficient(j, n) - (n == 0 ? 1.0 : 0.0)) <= 1e-15);
        }
    }
    const AgeSpectrum zero = age_decompose(CorrelationKernel(chart));
    for (const cplx& c : zero.coefficients()) {
        CHECK(c == cplx{0.0, 0.0});
    }
}

TEST_CASE("decomposition matches a direct DFT and inverts")
{
    std::mt19937_64 rng(7);
    const LambdaNuChart chart = build_chart(12.0, 6, 16);
    const CorrelationKernel k = random_dense_kernel(chart, rng);
    const AgeSpectrum sp = age_decompose(k);
    for (std::size_t j = 0; j < chart.n_lambda(); ++j) {
        const std::vector<cplx> samples(k.slice(j).begin(), k.slice(j).end());
        const std::vector<cplx> ref = oracle::direct_dft(samples, chart.lambda(j));
        for (std::size_t i = 0; i < ref.size(); ++i) {
            CHECK(std::abs(sp.slice(j)[i] - ref[i]) <= 1e-13);
        }
    }
    CHECK(max_abs_diff(age_reconstruct(sp), k) <= 1e-12);
    CHECK(std::abs(sp.mass() - hs_norm_squared(k)) <= 1e-12 * hs_norm_squared(k));

    std::vector<cplx> unit(chart.size(), cplx{0.0, 0.0});
    unit[sp.position(2, -3)] = 1.0;
    CHECK(max_abs_diff(age_reconstruct(AgeSpectrum(chart, unit)), right_eigenvector(chart, 2, -3)) <= 1e-15);
    const CorrelationKernel none = age_reconstruct(AgeSpectrum(chart, std::vector<cplx>(chart.size())));
    for (const cplx& v : none.values()) {
        CHECK(v == cplx{0.0, 0.0});
    }
}

TEST_CASE("biorthonormality of the discrete eigenbasis")
{
    const LambdaNuChart chart = build_chart(10.0, 3, 8);
    double worst = 0.0;
    for (std::size_t j = 0; j < chart.n_lambda(); ++j) {
        for (int n = -4; n < 4; ++n) {
            const CorrelationKernel phi = right_eigenvector(chart, j, n);
            for (std::size_t jp = 0; jp < chart.n_lambda(); ++jp) {
                for (int np = -4; np < 4; ++np) {
                    const double want = (j == jp && n == np) ? 1.0 : 0.0;
                    worst = std::max(worst, std::abs(apply_left_eigenfunctional(phi, jp, np) - want));
                }
            }
        }
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("apply_T on simple kernels")
{
    const LambdaNuChart chart = build_chart(10.0, 4, 16);
    const Observable c(std::vector<cplx>(chart.n_lambda(), cplx{1.0, 0.0}), constant_kernel(chart, 2.0));
    const Observable tc = apply_T(c);
    for (const cplx& d : tc.diag()) {
        CHECK(d == cplx{0.0, 0.0});
    }
    CHECK(std::sqrt(hs_norm_squared(tc.corr())) <= 1e-13);

    const CorrelationKernel mode = right_eigenvector(chart, 1, 3);
    const Observable tm = apply_T(from_kernel(mode));
    CHECK(max_abs_diff(tm.corr(), cplx{age_of(chart, 1, 3), 0.0} * mode) <= 1e-13);
}

TEST_CASE("apply_T is i d/dnu on smooth kernels and keeps Hermiticity")
{
    const LambdaNuChart chart = build_chart(20.0, 64, 128);
    const CorrelationKernel k = testk::ridge_kernel(chart, kTerms, ridge_envelope);
    const CorrelationKernel dk = testk::ridge_i_derivative(chart, kTerms, ridge_envelope);
    CHECK(is_band_limited(k));
    const Observable t = apply_T(from_kernel(k));
    CHECK(rel_hs(t.corr(), dk) <= 1e-9);
    double peak = 0.0;
    for (const cplx& v : t.corr().values()) {
        peak = std::max(peak, std::abs(v));
    }
    CHECK(hermiticity_defect(t.corr()) <= 1e-13 * chart.m_nu() * peak);
}

TEST_CASE("apply_L multiplies by nu and kills diagonals")
{
    const LambdaNuChart chart = build_chart(10.0, 4, 8);
    const Observable one(std::vector<cplx>(4, cplx{1.0, 0.0}), constant_kernel(chart, 1.0));
    const Observable l = apply_L(one);
    for (std::size_t j = 0; j < chart.n_lambda(); ++j) {
        CHECK(l.diag()[j] == cplx{0.0, 0.0});
        CHECK(l.corr()(j, 0) == cplx{0.0, 0.0});
        for (std::size_t k = 1; k < chart.m_nu(); ++k) {
            CHECK(l.corr()(j, k) == cplx{chart.nu(j, k), 0.0});
        }
    }
    for (const Observable& o : {hamiltonian_power(chart, 1), identity_observable(chart)}) {
        const Observable z = apply_L(o);
        for (const cplx& d : z.diag()) {
            CHECK(d == cplx{0.0, 0.0});
        }
        CHECK(hs_norm_squared(z.corr()) == 0.0);
    }
}

TEST_CASE("commutator identity")
{
    const LambdaNuChart chart = build_chart(20.0, 64, 128);
    const DefectReport smooth = commutator_defect(from_kernel(testk::ridge_kernel(chart, kTerms, ridge_envelope)));
    CHECK(smooth.precondition_ok);
    CHECK(smooth.value <= 1e-8);

    const DefectReport none = commutator_defect(hamiltonian_power(chart, 1));
    CHECK(none.value == 0.0);

    // nu times a pure mode is a sawtooth on the periodic slice: the gate must say so
    const DefectReport mode = commutator_defect(from_kernel(right_eigenvector(chart, 30, 2)));
    CHECK_FALSE(mode.precondition_ok);
}

TEST_CASE("band edge detection")
{
    const LambdaNuChart chart = build_chart(10.0, 4, 16);
    const AgeSpectrum edge = age_decompose(right_eigenvector(chart, 1, -8));
    CHECK(band_edge_fraction(edge) == doctest::Approx(1.0));
    CHECK_FALSE(is_band_limited(right_eigenvector(chart, 1, -8)));
    CHECK(is_band_limited(right_eigenvector(chart, 1, 2)));
    CHECK(band_edge_fraction(age_decompose(CorrelationKernel(chart))) == 0.0);
}

TEST_CASE("project_below")
{
    std::mt19937_64 rng(3);
    const LambdaNuChart chart = build_chart(10.0, 4, 8);
    const AgeSpectrum sp = age_decompose(random_dense_kernel(chart, rng));

    const AgeSpectrum zero = project_below(sp, 0.0);
    for (std::size_t j = 0; j < chart.n_lambda(); ++j) {
        for (int n = sp.min_mode(); n <= sp.max_mode(); ++n) {
            CHECK(zero.coefficient(j, n) == (n <= 0 ? sp.coefficient(j, n) : cplx{0.0, 0.0}));
        }
    }
    const double inf = std::numeric_limits<double>::infinity();
    const AgeSpectrum all = project_below(sp, inf);
    CHECK(std::equal(all.coefficients().begin(), all.coefficients().end(), sp.coefficients().begin()));
    CHECK(project_below(sp, -inf).mass() == 0.0);

    const AgeSpectrum once = project_below(sp, 0.3);
    const AgeSpectrum twice = project_below(once, 0.3);
    CHECK(std::equal(once.coefficients().begin(), once.coefficients().end(), twice.coefficients().begin()));

    double prev = 0.0;
    for (double s = -3.0; s <= 3.0; s += 0.05) {
        const double m = project_below(sp, s).mass();
        CHECK(m >= prev);
        prev = m;
    }

    // lambda_1 = 3 lambda_0 on a midpoint grid, so s_{0,1} == s_{1,3}: kept together
    const double s = age_of(chart, 0, 1);
    CHECK(age_of(chart, 1, 3) == s);
    const AgeSpectrum at = project_below(sp, s);
    CHECK(at.coefficient(0, 1) == sp.coefficient(0, 1));
    CHECK(at.coefficient(1, 3) == sp.coefficient(1, 3));
    const AgeSpectrum below = project_below(sp, std::nextafter(s, 0.0));
    CHECK(below.coefficient(0, 1) == cplx{0.0, 0.0});
    CHECK(below.coefficient(1, 3) == cplx{0.0, 0.0});
}

TEST_CASE("T and E_s commute")
{
    std::mt19937_64 rng(11);
    const LambdaNuChart chart = build_chart(10.0, 4, 8);
    const AgeSpectrum sp = age_decompose(random_dense_kernel(chart, rng));
    const auto times_s = [](double s) { return s; };
    const AgeSpectrum a = project_below(apply_age_function(sp, times_s), 0.7);
    const AgeSpectrum b = apply_age_function(project_below(sp, 0.7), times_s);
    CHECK(std::equal(a.coefficients().begin(), a.coefficients().end(), b.coefficients().begin()));
}

TEST_CASE("shift law")
{
    const LambdaNuChart chart = build_chart(20.0, 64, 128);
    const Observable smooth = from_kernel(testk::ridge_kernel(chart, kTerms, ridge_envelope));
    CHECK(shift_defect(smooth, 0.0).value == 0.0);
    const DefectReport generic = shift_defect(smooth, 1.37);
    CHECK(generic.precondition_ok);
    CHECK(generic.value <= 1e-6);

    const std::size_t j = 20;
    const Observable mode = from_kernel(right_eigenvector(chart, j, 3));
    const DefectReport comm = shift_defect(mode, kPi / (2.0 * chart.lambda(j)));
    CHECK(comm.value <= 1e-12);
}

TEST_CASE("imprimitivity at commensurate times")
{
    std::mt19937_64 rng(5);
    const LambdaNuChart chart = build_chart(10.0, 8, 16);
    const std::size_t j = 5;
    // random coefficients on |n| <= m/4 of one slice, so a shift by q <= 2
    // never wraps past the band
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<cplx> coeffs(chart.size(), cplx{0.0, 0.0});
    const AgeSpectrum layout(chart, coeffs);
    for (int n = -4; n <= 4; ++n) {
        coeffs[layout.position(j, n)] = {g(rng), g(rng)};
    }
    const CorrelationKernel k = age_reconstruct(AgeSpectrum(chart, coeffs));
    for (int q : {1, 2, -1}) {
        const double t = age_of(chart, j, q);
        for (double half : {-2.5, 0.5, 2.5}) {
            const double s = half * kPi / (2.0 * chart.lambda(j));
            CHECK(imprimitivity_defect(k, s, t).value <= 1e-12);
        }
    }
}

TEST_CASE("eigenvalue equation")
{
    const LambdaNuChart chart = build_chart(10.0, 4, 8);
    const EigenCheck e = eigen_defect(chart, kPi / 2.5, 1);
    CHECK(e.slice == 0);
    CHECK(e.s_grid == kPi / 2.5);
    CHECK(e.snapping_error == 0.0);
    CHECK(e.defect <= 1e-12);

    const EigenCheck off = eigen_defect(chart, 1.1, 2);
    CHECK(off.defect <= 1e-12);
    CHECK(off.snapping_error <= off.snapping_bound);

    CHECK_THROWS_AS(eigen_defect(chart, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(eigen_defect(chart, -1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(eigen_defect(chart, 1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(eigen_defect(chart, 1e-3, 1), std::invalid_argument);
}
