#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "agetime/grid.hpp"
#include "support/oracles.hpp"

using namespace agetime;

TEST_CASE("build_chart places midpoint lambda nodes")
{
    const LambdaNuChart chart = build_chart(10.0, 4, 8);
    CHECK(chart.lambda(0) == 1.25);
    CHECK(chart.lambda(1) == 3.75);
    CHECK(chart.lambda(2) == 6.25);
    CHECK(chart.lambda(3) == 8.75);
    CHECK(build_chart(10.0, 4, 8) == chart);
}

TEST_CASE("single slice chart has nu samples on [-2 lambda, 2 lambda)")
{
    const LambdaNuChart chart = build_chart(1.0, 1, 4);
    CHECK(chart.lambda(0) == 0.5);
    CHECK(chart.nu(0, 0) == -1.0);
    CHECK(chart.nu(0, 1) == -0.5);
    CHECK(chart.nu(0, 2) == 0.0);
    CHECK(chart.nu(0, 3) == 0.5);
}

TEST_CASE("nu grid is reflection symmetric bitwise")
{
    const LambdaNuChart chart = build_chart(7.3, 5, 10);
    for (std::size_t j = 0; j < chart.n_lambda(); ++j) {
        for (std::size_t k = 1; k < chart.m_nu(); ++k) {
            CHECK(chart.nu(j, chart.reflect(k)) == -chart.nu(j, k));
        }
        CHECK(chart.reflect(0) == 0);
    }
}

TEST_CASE("build_chart rejects bad sizes")
{
    CHECK_THROWS_AS(build_chart(0.0, 4, 8), std::invalid_argument);
    CHECK_THROWS_AS(build_chart(-1.0, 4, 8), std::invalid_argument);
    CHECK_THROWS_AS(build_chart(10.0, 0, 8), std::invalid_argument);
    CHECK_THROWS_AS(build_chart(10.0, 4, 7), std::invalid_argument);
    CHECK_THROWS_AS(build_chart(10.0, 4, 2), std::invalid_argument);
}

TEST_CASE("chart area is the triangle integral of 4 lambda")
{
    const LambdaNuChart chart = build_chart(10.0, 4, 8);
    const cplx area = integrate_kernel(constant_kernel(chart, 1.0), [](double, double) { return cplx{1.0, 0.0}; });
    // integral_0^10 4 lambda dlambda
    const cplx oracle = oracle::integrate_1d([](double l) { return cplx{4.0 * l, 0.0}; }, 10.0, 1000);
    CHECK(std::abs(area - 200.0) < 1e-12);
    CHECK(std::abs(area - oracle) < 1e-9);
}

TEST_CASE("kernel_from_ee samples coordinate identities")
{
    const LambdaNuChart chart = build_chart(10.0, 4, 8);
    const CorrelationKernel one = kernel_from_ee(chart, [](double, double) { return cplx{1.0, 0.0}; });
    const CorrelationKernel diff = kernel_from_ee(chart, [](double e, double ep) { return cplx{e - ep, 0.0}; });
    const CorrelationKernel sum = kernel_from_ee(chart, [](double e, double ep) { return cplx{e + ep, 0.0}; });
    for (std::size_t j = 0; j < chart.n_lambda(); ++j) {
        const double reach = 2.0 * std::min(chart.lambda(j), 10.0 - chart.lambda(j));
        for (std::size_t k = 0; k < chart.m_nu(); ++k) {
            if (std::abs(chart.nu(j, k)) > reach) {
                CHECK(one(j, k) == cplx{0.0, 0.0});
                continue;
            }
            CHECK(one(j, k) == cplx{1.0, 0.0});
            CHECK(std::abs(sum(j, k) - 2.0 * chart.lambda(j)) < 1e-12);
            if (k == 0) {
                // the seam holds the average over nu = -2 lambda and +2 lambda
                CHECK(std::abs(diff(j, k)) < 1e-12);
            } else {
                CHECK(std::abs(diff(j, k) - chart.nu(j, k)) < 1e-12);
            }
        }
    }
}

TEST_CASE("kernel_from_ee averages the seam")
{
    // e_max = 2 lambda on a single slice: both seam endpoints lie in the square
    const LambdaNuChart chart = build_chart(1.0, 1, 4);
    const CorrelationKernel diff = kernel_from_ee(chart, [](double e, double ep) { return cplx{e - ep, 0.0}; });
    CHECK(diff(0, 0) == cplx{0.0, 0.0});
    const CorrelationKernel e = kernel_from_ee(chart, [](double x, double) { return cplx{x, 0.0}; });
    CHECK(e(0, 0) == cplx{0.5, 0.0});
}

TEST_CASE("kernel_from_ee zeroes samples outside the energy square")
{
    // lambda_3 = 8.75, nu = -8.75 reaches E' = 13.125 > 10
    const LambdaNuChart chart = build_chart(10.0, 4, 8);
    const CorrelationKernel one = kernel_from_ee(chart, [](double, double) { return cplx{1.0, 0.0}; });
    CHECK(one(3, 1) == cplx{0.0, 0.0});
    CHECK(one(3, 4) == cplx{1.0, 0.0});
}

TEST_CASE("kernel_to_ee_samples reads back")
{
    const LambdaNuChart chart = build_chart(10.0, 4, 8);
    const std::vector<std::pair<double, double>> points{{3.0, 1.0}, {4.0, 4.0}, {1.0, 8.0}};
    const auto ones = kernel_to_ee_samples(constant_kernel(chart, 1.0), points);
    CHECK(std::abs(ones[0] - 1.0) < 1e-14);
    CHECK(std::abs(ones[1] - 1.0) < 1e-14);

    const CorrelationKernel diff = kernel_from_ee(chart, [](double e, double ep) { return cplx{e - ep, 0.0}; });
    const std::vector<std::pair<double, double>> p31{{3.0, 1.0}};
    CHECK(std::abs(kernel_to_ee_samples(diff, p31)[0] - 2.0) < 1e-12);

    // lambda = 3.75 is a node, nu = 3.75 * 4 / 8 = 1.875 a sample
    const std::vector<std::pair<double, double>> on_node{{3.75 + 0.9375, 3.75 - 0.9375}};
    CHECK(kernel_to_ee_samples(diff, on_node)[0] == diff(1, 5));

    const std::vector<std::pair<double, double>> outside{{11.0, 1.0}};
    CHECK_THROWS_AS(kernel_to_ee_samples(diff, outside), std::invalid_argument);
}

TEST_CASE("kernel_to_ee_samples interpolates within a bilinear error bound")
{
    const LambdaNuChart chart = build_chart(10.0, 32, 32);
    const auto f = [](double e, double ep) { return cplx{std::sin(0.3 * e) * std::cos(0.2 * ep), 0.0}; };
    const CorrelationKernel k = kernel_from_ee(chart, f);
    std::vector<std::pair<double, double>> pts;
    for (double e = 2.1; e < 8.0; e += 0.7) {
        for (double ep = 2.3; ep < 8.0; ep += 0.9) {
            pts.emplace_back(e, ep);
        }
    }
    const auto got = kernel_to_ee_samples(k, pts);
    // |f_ll| <= 0.25 and |f_nn| <= 0.0625; 0.5 covers the 1/8 bilinear constant with room
    const double dl = chart.d_lambda();
    const double dnu = chart.nu_step(chart.n_lambda() - 1);
    const double bound = 0.5 * (dl * dl + dnu * dnu);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(std::abs(got[i] - f(pts[i].first, pts[i].second)) <= bound);
    }
}

TEST_CASE("integrate_kernel examples")
{
    const LambdaNuChart chart = build_chart(10.0, 4, 8);
    const auto one = [](double, double) { return cplx{1.0, 0.0}; };
    CHECK(integrate_kernel(CorrelationKernel(chart), one) == cplx{0.0, 0.0});
    const CorrelationKernel nu = kernel_from_chart(chart, [](double, double n) { return cplx{n, 0.0}; });
    // the seam sample -2 lambda is unpaired, so weight it out
    const cplx odd = integrate_kernel(nu, [&](double l, double n) { return cplx{std::abs(n) < 2.0 * l - 1e-9 ? 1.0 : 0.0, 0.0}; });
    CHECK(std::abs(odd) < 1e-12);
}

TEST_CASE("integrate_kernel is linear")
{
    const LambdaNuChart chart = build_chart(6.0, 8, 8);
    const CorrelationKernel a = kernel_from_chart(chart, [](double l, double n) { return cplx{l, n}; });
    const CorrelationKernel b = kernel_from_chart(chart, [](double l, double n) { return cplx{n * n, -l}; });
    const auto w = [](double l, double n) { return cplx{1.0 + l, 0.5 * n}; };
    const cplx lhs = integrate_kernel(a + cplx{2.0, -1.0} * b, w);
    const cplx rhs = integrate_kernel(a, w) + cplx{2.0, -1.0} * integrate_kernel(b, w);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
}

TEST_CASE("unit Jacobian against the (E, E') square")
{
    // A smooth function vanishing well inside the square: chart and square
    // quadratures must agree up to discretization error.
    const double e_max = 16.0;
    const auto f = [](double e, double ep) {
        const double l = 0.5 * (e + ep);
        const double n = e - ep;
        return cplx{std::exp(-(l - 8.0) * (l - 8.0) / 2.0 - n * n / 4.0), 0.0};
    };
    const auto one = [](double, double) { return cplx{1.0, 0.0}; };
    const cplx dense = oracle::integrate_2d(f, e_max, 400);
    const double err16 = std::abs(integrate_kernel(kernel_from_ee(build_chart(e_max, 16, 16), f), one) - dense);
    const double err32 = std::abs(integrate_kernel(kernel_from_ee(build_chart(e_max, 32, 32), f), one) - dense);
    CHECK(err16 < 1e-2 * std::abs(dense));
    CHECK(err32 < err16 / 4.0);
}

TEST_CASE("hermiticity_defect and hs_norm_squared")
{
    const LambdaNuChart chart = build_chart(4.0, 3, 8);
    const CorrelationKernel k = kernel_from_ee(chart, [](double e, double ep) { return cplx{0.0, e - ep}; });
    CHECK(hermiticity_defect(k) < 1e-15);
    std::vector<cplx> values(k.values().begin(), k.values().end());
    values[chart.index(1, 3)] += cplx{0.0, 1e-3};
    CHECK(std::abs(hermiticity_defect(CorrelationKernel(chart, values)) - 1e-3) < 1e-12);
    double hs = 0.0;
    for (std::size_t j = 0; j < chart.n_lambda(); ++j) {
        for (std::size_t kk = 0; kk < chart.m_nu(); ++kk) {
            hs += chart.cell_weight(j) * std::norm(k(j, kk));
        }
    }
    CHECK(std::abs(hs_norm_squared(k) - hs) <= 1e-12 * hs);
}
