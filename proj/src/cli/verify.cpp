#include "agetime/cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "agetime/ageop.hpp"
#include "agetime/cli/samples.hpp"
#include "agetime/evolution.hpp"

namespace agetime::cli {

const std::vector<std::string>& primary_operations()
{
    static const std::vector<std::string> ops{
        "build_chart",      "kernel_from_ee",     "kernel_to_ee_samples", "integrate_kernel",  "make_observable",
        "make_pure_state",  "make_energy_state",  "make_mixed_state",     "pair",              "check_state",
        "check_observable", "evolve",             "evolve_observable",    "mean_trajectory",   "weak_limit",
        "age_decompose",    "age_reconstruct",    "apply_T",              "apply_L",           "commutator_defect",
        "project_below",    "shift_defect",       "eigen_defect",         "make_profile",      "lambda_transform",
        "lyapunov_direct",  "lyapunov_spectral",  "lyapunov_series",      "cmd_verify",        "cmd_evolve",
        "cmd_age_spectrum", "cmd_lyapunov",
    };
    return ops;
}

std::vector<std::string> Coverage::missing() const
{
    std::vector<std::string> out;
    for (const std::string& op : primary_operations()) {
        if (used_.count(op) == 0) {
            out.push_back(op);
        }
    }
    return out;
}

namespace {

constexpr double kExact = 1e-12;
// Times and energies of the generic-time suites are those of a chart with
// e_max = 3, rescaled onto the configured chart.
constexpr double kReferenceEmax = 3.0;

double max_abs_diff(const CorrelationKernel& a, const CorrelationKernel& b)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i) {
        worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
    }
    return worst;
}

double max_abs(const CorrelationKernel& k)
{
    double worst = 0.0;
    for (const cplx& v : k.values()) {
        worst = std::max(worst, std::abs(v));
    }
    return worst;
}

double hs_distance(const CorrelationKernel& a, const CorrelationKernel& b)
{
    return std::sqrt(hs_norm_squared(a - b));
}

std::vector<std::size_t> sample_slices(std::size_t n, std::size_t limit)
{
    std::vector<std::size_t> out;
    if (n <= limit) {
        for (std::size_t j = 0; j < n; ++j) out.push_back(j);
        return out;
    }
    for (std::size_t i = 0; i < limit; ++i) {
        out.push_back(i * (n - 1) / (limit - 1));
    }
    return out;
}

std::string describe(double x)
{
    return format_double(x);
}

class Suite {
public:
    Suite(const Scenario& sc, Coverage& coverage, std::vector<std::string>& warnings)
        : sc_(sc), chart_(sc.chart), coverage_(coverage), warnings_(warnings), scale_(sc.config.tolerance_scale),
          rng_(sc.config.seed)
    {
    }

    std::vector<CheckResult> run()
    {
        grid_checks();
        algebra_checks();
        evolution_checks();
        ageop_checks();
        lyapunov_checks();
        return std::move(checks_);
    }

private:
    void record(const std::string& name, double defect, double tolerance, const std::string& note = "")
    {
        const double tol = tolerance * scale_;
        checks_.push_back({name, defect, tol, defect <= tol ? CheckStatus::Pass : CheckStatus::Fail, note});
    }

    // Executed checks whose precondition does not hold are reported, not judged.
    void gated(const std::string& name, double defect, double tolerance, std::size_t executed, std::size_t skipped,
               double worst_band, const std::string& note = "")
    {
        gated_on(name, defect, tolerance, executed, skipped,
                 "band-limit precondition", "band-edge fraction up to " + describe(worst_band), note);
    }

    void gated_on(const std::string& name, double defect, double tolerance, std::size_t executed, std::size_t skipped,
                  const std::string& precondition, const std::string& detail, const std::string& note)
    {
        const double tol = tolerance * scale_;
        if (skipped > 0) {
            warnings_.push_back(name + ": " + precondition + " failed for " + std::to_string(skipped) + " of " +
                                std::to_string(executed + skipped) + " cases (" + detail + ")");
        }
        if (executed == 0) {
            checks_.push_back({name, defect, tol, CheckStatus::Skipped,
                               precondition + " failed; " + (note.empty() ? std::string("not judged") : note)});
            return;
        }
        std::string full = note;
        if (skipped > 0) {
            full += (full.empty() ? "" : "; ") + std::to_string(skipped) + " case(s) skipped";
        }
        checks_.push_back({name, defect, tol, defect <= tol ? CheckStatus::Pass : CheckStatus::Fail, full});
    }

    void skipped(const std::string& name, double tolerance, const std::string& note)
    {
        checks_.push_back({name, std::numeric_limits<double>::quiet_NaN(), tolerance * scale_, CheckStatus::Skipped,
                           note});
    }

    // ---- grid

    void grid_checks()
    {
        coverage_.use({"build_chart", "kernel_from_ee", "kernel_to_ee_samples", "integrate_kernel"});
        const LambdaNuChart probe = build_chart(chart_.e_max(), chart_.n_lambda(), chart_.m_nu());
        record("grid.chart_rebuild", probe == chart_ ? 0.0 : 1.0, 0.0, "build_chart is deterministic");

        const double width = 0.1 * chart_.e_max();
        const auto f = [width](double e, double ep) {
            const double d = e - ep;
            return std::exp(-d * d / (2.0 * width * width)) * cplx{std::cos(0.3 * e), std::sin(0.2 * ep)};
        };
        const CorrelationKernel sampled = kernel_from_ee(chart_, f);
        std::vector<std::pair<double, double>> points;
        std::vector<cplx> expected;
        for (std::size_t j = 0; j < chart_.n_lambda(); ++j) {
            for (std::size_t k = 1; k < chart_.m_nu(); ++k) {
                const double lam = chart_.lambda(j);
                const double nu = chart_.nu(j, k);
                const double e = lam + 0.5 * nu;
                const double ep = lam - 0.5 * nu;
                if (e < 0.0 || e > chart_.e_max() || ep < 0.0 || ep > chart_.e_max()) {
                    continue;
                }
                points.emplace_back(e, ep);
                expected.push_back(sampled(j, k));
            }
        }
        const std::vector<cplx> read = kernel_to_ee_samples(sampled, points);
        double worst = 0.0;
        for (std::size_t i = 0; i < read.size(); ++i) {
            worst = std::max(worst, std::abs(read[i] - expected[i]));
        }
        const double ref = std::max(max_abs(sampled), std::numeric_limits<double>::min());
        record("grid.sample_readout", worst / ref, kExact, "read-out at chart nodes reproduces samples");

        const CorrelationKernel nu_kernel = kernel_from_ee(chart_, [](double e, double ep) { return cplx{e - ep, 0.0}; });
        const cplx odd = integrate_kernel(nu_kernel, [](double, double) { return cplx{1.0, 0.0}; });
        const cplx mag = integrate_kernel(nu_kernel, [](double, double nu) { return cplx{std::abs(nu), 0.0}; });
        record("grid.odd_moment", std::abs(odd) / std::max(std::abs(mag), std::numeric_limits<double>::min()), kExact,
               "integral of E - E' vanishes");
    }

    // ---- algebra

    void algebra_checks()
    {
        coverage_.use({"make_observable", "check_state", "check_observable", "pair", "make_energy_state",
                       "make_pure_state", "make_mixed_state"});

        const ValidationReport st = check_state(sc_.state);
        record("algebra.state_valid",
               st.finite ? std::max({st.reality_defect, st.hermiticity_defect, st.trace_defect})
                         : std::numeric_limits<double>::infinity(),
               kAlgebraTolerance, "reality, hermiticity and unit trace of the scenario state");
        const ValidationReport ob = check_observable(sc_.observable);
        record("algebra.observable_valid",
               ob.finite ? std::max(ob.reality_defect, ob.hermiticity_defect) : std::numeric_limits<double>::infinity(),
               kAlgebraTolerance, "reality and hermiticity of the scenario observable");

        // Node energy state: moments are exact.
        const std::size_t j = chart_.n_lambda() / 2;
        const double e0 = chart_.lambda(j);
        const StateFunctional es = make_energy_state(chart_, e0);
        double gap = std::abs(pair(es, identity_observable(chart_)) - cplx{1.0, 0.0});
        std::array<cplx, 4> moments{};
        for (int n = 1; n <= 3; ++n) {
            moments[static_cast<std::size_t>(n)] = pair(es, hamiltonian_power(chart_, n));
            gap += std::abs(moments[static_cast<std::size_t>(n)] - cplx{std::pow(e0, n), 0.0});
        }
        gap += std::abs(moments[2] - moments[1] * moments[1]);
        record("algebra.energy_state_moments", gap, 0.0, "(E|I) = 1, (E|H^n) = E0^n, zero variance at node " +
                                                            describe(e0));

        // |psi><psi| through the pure and the mixed embedding.
        double c = 0.5 * chart_.e_max();
        double w = 0.05 * chart_.e_max();
        if (sc_.config.state.kind == StateKind::Pure) {
            c = sc_.config.state.center;
            w = sc_.config.state.width;
        }
        const auto psi = [c, w](double e) {
            return std::exp(-(e - c) * (e - c) / (4.0 * w * w)) * cplx{std::cos(0.7 * e), std::sin(0.7 * e)};
        };
        const StateFunctional pure = make_pure_state(chart_, psi);
        const StateFunctional mixed =
            make_mixed_state(chart_, [&psi](double e, double ep) { return psi(e) * std::conj(psi(ep)); });
        const cplx a = pair(pure, sc_.observable);
        const cplx b = pair(mixed, sc_.observable);
        record("algebra.pure_mixed_agreement", std::abs(a - b) / std::max(1.0, std::abs(a)), kExact,
               "pure and density-matrix embeddings pair identically");
    }

    // ---- evolution

    double pairing_scale() const
    {
        const PairingParts parts = pair_parts(sc_.state, sc_.observable);
        return std::abs(parts.diagonal) +
               std::sqrt(hs_norm_squared(sc_.state.corr()) * hs_norm_squared(sc_.observable.corr()));
    }

    // Earliest grid revival over slices carrying more than 1e-20 of the peak slice mass.
    double first_revival(const CorrelationKernel& k) const
    {
        std::vector<double> mass(chart_.n_lambda(), 0.0);
        double peak = 0.0;
        for (std::size_t j = 0; j < chart_.n_lambda(); ++j) {
            for (const cplx& v : k.slice(j)) {
                mass[j] += std::norm(v);
            }
            peak = std::max(peak, mass[j]);
        }
        double revival = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < chart_.n_lambda(); ++j) {
            if (mass[j] > 1e-20 * peak) {
                revival = std::min(revival, std::numbers::pi * static_cast<double>(chart_.m_nu()) /
                                                (2.0 * chart_.lambda(j)));
            }
        }
        return revival;
    }

    void evolution_checks()
    {
        coverage_.use({"evolve", "evolve_observable", "mean_trajectory", "weak_limit"});
        const std::vector<double>& times = sc_.times;
        const std::vector<std::size_t> picks = sample_slices(times.size(), 32);

        const double scale = std::max(pairing_scale(), std::numeric_limits<double>::min());
        double worst = 0.0;
        for (std::size_t i : picks) {
            const cplx sp = pair(evolve(sc_.state, times[i]), sc_.observable);
            const cplx hp = pair(sc_.state, evolve_observable(sc_.observable, times[i]));
            worst = std::max(worst, std::abs(sp - hp) / scale);
        }
        record("evolution.duality", worst, kExact, "Schroedinger and Heisenberg pictures agree");

        const double corr_norm = std::sqrt(hs_norm_squared(sc_.state.corr()));
        worst = 0.0;
        std::uniform_int_distribution<std::size_t> pick(0, times.size() - 1);
        for (int trial = 0; trial < 8 && corr_norm > 0.0; ++trial) {
            const double t1 = times[pick(rng_)];
            const double t2 = times[pick(rng_)];
            const CorrelationKernel twice = evolve(evolve(sc_.state, t1), t2).corr();
            const CorrelationKernel once = evolve(sc_.state, t1 + t2).corr();
            worst = std::max(worst, hs_distance(twice, once) / corr_norm);
        }
        record("evolution.group_law", worst, kExact, "U_t2 U_t1 = U_(t1+t2)");

        const Trajectory trace = mean_trajectory(sc_.state, identity_observable(chart_), times);
        worst = 0.0;
        for (const cplx& m : trace.means) {
            worst = std::max(worst, std::abs(m - cplx{1.0, 0.0}));
        }
        record("evolution.trace_conservation", worst, kExact, "(rho_t|I) = 1 along the time grid");

        const cplx diag_only = pair(weak_limit(sc_.state), sc_.observable);
        const cplx diag_part = pair_parts(sc_.state, sc_.observable).diagonal;
        record("evolution.weak_limit_split", std::abs(diag_only - diag_part) / scale, kExact,
               "weak limit pairs as the diagonal part");

        if (!has_gaussian_envelope(sc_.config)) {
            skipped("evolution.gaussian_envelope", 1.0, "scenario has no closed-form envelope");
            skipped("evolution.weak_limit_gap", 1e-8, "scenario has no closed-form envelope");
            return;
        }

        // Relative 1e-6 above an absolute 1e-12 floor, up to where the
        // envelope itself reaches the floor.
        const double t_floor = gaussian_envelope_time(sc_.config, 1e-12);
        std::vector<double> grid(400);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            grid[i] = t_floor * static_cast<double>(i) / static_cast<double>(grid.size() - 1);
        }
        const Trajectory traj = mean_trajectory(sc_.state, sc_.observable, grid);
        worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double ex = gaussian_envelope(sc_.config, grid[i]);
            worst = std::max(worst, std::abs(traj.offdiag_magnitude[i] - ex) / (1e-12 + 1e-6 * ex));
        }
        record("evolution.gaussian_envelope", worst, 1.0,
               "max |C - envelope| / (1e-12 + 1e-6 envelope) on [0, " + describe(t_floor) + "]");

        // T is where the envelope reaches 1e-10. The sampled phases of slice j
        // come back to 1 at t = pi m / (2 lambda_j), so T must precede that
        // on every slice the state occupies.
        const double t_weak = gaussian_envelope_time(sc_.config, 1e-10);
        const double revival = first_revival(sc_.state.corr());
        const double gap =
            std::abs(pair(evolve(sc_.state, t_weak), sc_.observable) - pair(weak_limit(sc_.state), sc_.observable));
        const bool before = t_weak < revival;
        gated_on("evolution.weak_limit_gap", gap, 1e-8, before ? 1 : 0, before ? 0 : 1, "no-revival precondition",
                 "T = " + describe(t_weak) + ", first revival " + describe(revival),
                 "|<O>_T - <O>_inf| at T = " + describe(t_weak));
    }

    // ---- ageop

    std::vector<CorrelationKernel> probe_kernels()
    {
        std::vector<CorrelationKernel> out;
        if (hs_norm_squared(sc_.state.corr()) > 0.0) out.push_back(sc_.state.corr());
        if (hs_norm_squared(sc_.observable.corr()) > 0.0) out.push_back(sc_.observable.corr());
        for (int i = 0; i < 5; ++i) {
            out.push_back(random_kernel(chart_, kCommutatorClass, rng_));
        }
        return out;
    }

    void ageop_checks()
    {
        coverage_.use({"age_decompose", "age_reconstruct", "apply_T", "apply_L", "commutator_defect",
                       "project_below", "shift_defect", "eigen_defect"});

        double round = 0.0;
        double parseval = 0.0;
        double complete = 0.0;
        for (const CorrelationKernel& k : probe_kernels()) {
            const AgeSpectrum spec = age_decompose(k);
            round = std::max(round, max_abs_diff(age_reconstruct(spec), k) / max_abs(k));
            const double hs = hs_norm_squared(k);
            parseval = std::max(parseval, std::abs(spec.mass() - hs) / hs);
            const double above = project_below(spec, std::numeric_limits<double>::infinity()).mass();
            const double below = project_below(spec, -std::numeric_limits<double>::infinity()).mass();
            complete = std::max(complete, std::abs(above - hs) / hs + below / hs);
        }
        record("ageop.roundtrip", round, kExact, "reconstruct(decompose(K)) = K");
        record("ageop.parseval", parseval, kExact, "age mass equals Hilbert-Schmidt norm");
        record("ageop.completeness", complete, kExact, "E_+inf = identity, E_-inf = 0 on correlations");

        biorthonormality();
        eigenvalues();
        commutators();
        shifts();
    }

    void biorthonormality()
    {
        const int lo = -static_cast<int>(chart_.m_nu() / 2);
        const int hi = static_cast<int>(chart_.m_nu() / 2) - 1;
        double worst = 0.0;
        for (std::size_t j : sample_slices(chart_.n_lambda(), 8)) {
            for (int n = lo; n <= hi; ++n) {
                const CorrelationKernel phi = right_eigenvector(chart_, j, n);
                for (int q = lo; q <= hi; ++q) {
                    const cplx d = apply_left_eigenfunctional(phi, j, q);
                    worst = std::max(worst, std::abs(d - cplx{n == q ? 1.0 : 0.0, 0.0}));
                }
            }
        }
        record("ageop.biorthonormality", worst, kExact, "(phi_q | phi_n) = delta_qn on sampled slices");
    }

    void eigenvalues()
    {
        const int quarter = static_cast<int>(chart_.m_nu() / 4);
        double worst = 0.0;
        double snap = 0.0;
        for (std::size_t j : sample_slices(chart_.n_lambda(), 16)) {
            for (int n = -quarter; n <= quarter; ++n) {
                if (n == 0 || std::abs(n) >= static_cast<int>(chart_.m_nu() / 2)) {
                    continue;
                }
                const EigenCheck check = eigen_defect(chart_, age_of(chart_, j, n), n);
                worst = std::max(worst, check.defect);
                snap = std::max(snap, check.snapping_error);
            }
        }
        record("ageop.eigenvalue", worst, kExact,
               "T+ phi = s phi for |n| <= m/4; worst snapping error " + describe(snap));
    }

    void commutators()
    {
        if (hs_norm_squared(sc_.observable.corr()) > 0.0) {
            const DefectReport r = commutator_defect(sc_.observable);
            gated("ageop.commutator_observable", r.value, 1e-8, r.precondition_ok ? 1 : 0, r.precondition_ok ? 0 : 1,
                  r.band_edge_fraction, "scenario observable");
        } else {
            skipped("ageop.commutator_observable", 1e-8, "scenario observable has no correlation part");
        }

        double worst = 0.0;
        double band = 0.0;
        std::size_t ran = 0, gated_out = 0;
        for (int i = 0; i < 20; ++i) {
            const Observable obs(std::vector<cplx>(chart_.n_lambda()), random_kernel(chart_, kCommutatorClass, rng_));
            const DefectReport r = commutator_defect(obs);
            if (r.precondition_ok) {
                worst = std::max(worst, r.value);
                ++ran;
            } else {
                band = std::max(band, r.band_edge_fraction);
                ++gated_out;
            }
        }
        gated("ageop.commutator_random", worst, 1e-8, ran, gated_out, band, "[T+, L+] O = i O^c on 20 random kernels");
    }

    void shifts()
    {
        // Commensurate times t = q pi / (2 lambda_j) shift slice j by q modes exactly.
        double worst_shift = 0.0, worst_imp = 0.0, band = 0.0;
        std::size_t ran = 0, out = 0, ran_imp = 0, out_imp = 0;
        for (std::size_t j : sample_slices(chart_.n_lambda(), 8)) {
            const CorrelationKernel k = random_slice_kernel(chart_, j, kCommutatorClass, rng_);
            const Observable obs(std::vector<cplx>(chart_.n_lambda()), k);
            for (int q : {1, 2, -1}) {
                const double t = age_of(chart_, j, q);
                const DefectReport r = shift_defect(obs, t);
                if (r.precondition_ok) {
                    worst_shift = std::max(worst_shift, r.value);
                    ++ran;
                } else {
                    band = std::max(band, r.band_edge_fraction);
                    ++out;
                }
                // Thresholds sit between grid ages so that s and s - t select the same modes.
                for (double n : {-2.5, 0.5, 2.5}) {
                    const double s = n * std::numbers::pi / (2.0 * chart_.lambda(j));
                    const DefectReport imp = imprimitivity_defect(k, s, t);
                    if (imp.precondition_ok) {
                        worst_imp = std::max(worst_imp, imp.value);
                        ++ran_imp;
                    } else {
                        band = std::max(band, imp.band_edge_fraction);
                        ++out_imp;
                    }
                }
            }
        }
        gated("ageop.shift_commensurate", worst_shift, kExact, ran, out, band, "exact mode shifts");
        gated("ageop.imprimitivity", worst_imp, kExact, ran_imp, out_imp, band, "E_s U_t = U_t E_(s-t)");

        // Generic times on the smooth class, mapped from the reference chart.
        const double time_scale = kReferenceEmax / chart_.e_max();
        std::uniform_real_distribution<double> generic(0.1, 10.0);
        double worst = 0.0;
        band = 0.0;
        ran = out = 0;
        for (int i = 0; i < 3; ++i) {
            const Observable obs(std::vector<cplx>(chart_.n_lambda()), random_kernel(chart_, kShiftClass, rng_));
            for (int p = 0; p < 10; ++p) {
                const DefectReport r = shift_defect(obs, generic(rng_) * time_scale);
                if (r.precondition_ok) {
                    worst = std::max(worst, r.value);
                    ++ran;
                } else {
                    band = std::max(band, r.band_edge_fraction);
                    ++out;
                }
            }
        }
        gated("ageop.shift_generic", worst, 1e-6, ran, out, band, "U_t T+ U_-t = T+ + t at 10 generic times");
    }

    // ---- lyapunov

    void lyapunov_checks()
    {
        coverage_.use({"make_profile", "lambda_transform", "lyapunov_direct", "lyapunov_spectral", "lyapunov_series"});
        const double beta = sc_.profile.beta();
        for (ProfileKind kind : {ProfileKind::Logistic, ProfileKind::ExponentialTail}) {
            make_profile(kind, beta);
        }
        record("lyapunov.profile", 0.0, 0.0, "both profile families accepted at beta " + describe(beta));

        const StateFunctional transformed = lambda_transform(sc_.state, sc_.profile);
        double diag_gap = 0.0;
        for (std::size_t j = 0; j < chart_.n_lambda(); ++j) {
            diag_gap = std::max(diag_gap, std::abs(transformed.diag()[j] - sc_.state.diag()[j]));
        }
        record("lyapunov.diagonal_preserved", diag_gap, 0.0, "the transform is the identity on diagonal parts");

        const double t_end = max_age(chart_) + 40.0 / beta;
        std::vector<double> times(200);
        for (std::size_t i = 0; i < times.size(); ++i) {
            times[i] = t_end * static_cast<double>(i) / static_cast<double>(times.size() - 1);
        }
        const LyapunovSeries series = lyapunov_series(sc_.state, sc_.profile, times);
        const double bad = static_cast<double>(
            std::count_if(series.points.begin(), series.points.end(), [](const LyapunovPoint& p) { return !p.monotone_ok; }));
        record("lyapunov.monotone", bad, 0.0, "non-increasing at each of 200 steps to " + describe(t_end));
        record("lyapunov.final_ratio", series.final_ratio, 1e-3, "L(s_max + 40/beta) / L(0)");

        // Scenario state at the configured times.
        const double l0 = lyapunov_spectral(sc_.state, sc_.profile, 0.0);
        double worst = 0.0, band = 0.0;
        std::size_t ran = 0, out = 0;
        if (l0 > 0.0) {
            for (std::size_t i : sample_slices(sc_.times.size(), 16)) {
                const double t = sc_.times[i];
                const double b = band_edge_fraction(age_decompose(phase_kernel(sc_.state.corr(), t)));
                if (b > kBandLimitTolerance) {
                    band = std::max(band, b);
                    ++out;
                    continue;
                }
                const double d = lyapunov_direct(sc_.state, sc_.profile, t);
                const double s = lyapunov_spectral(sc_.state, sc_.profile, t);
                worst = std::max(worst, std::abs(d - s) / l0);
                ++ran;
            }
            gated("lyapunov.direct_vs_spectral_scenario", worst, 1e-6, ran, out, band, "scenario state");
        } else {
            skipped("lyapunov.direct_vs_spectral_scenario", 1e-6, "scenario state has no correlation part");
        }

        // Random smooth states, with the reference chart's beta and times.
        const double time_scale = kReferenceEmax / chart_.e_max();
        const AgeProfile scaled = make_profile(sc_.profile.kind(), beta / time_scale);
        std::uniform_real_distribution<double> generic(0.1, 10.0);
        worst = band = 0.0;
        ran = out = 0;
        for (int i = 0; i < 3; ++i) {
            const StateFunctional st(std::vector<cplx>(chart_.n_lambda()), random_kernel(chart_, kShiftClass, rng_));
            const double base = lyapunov_spectral(st, scaled, 0.0);
            for (int p = 0; p <= 10; ++p) {
                const double t = p == 0 ? 0.0 : generic(rng_) * time_scale;
                const double b = band_edge_fraction(age_decompose(phase_kernel(st.corr(), t)));
                if (b > kBandLimitTolerance) {
                    band = std::max(band, b);
                    ++out;
                    continue;
                }
                worst = std::max(worst, std::abs(lyapunov_direct(st, scaled, t) - lyapunov_spectral(st, scaled, t)) / base);
                ++ran;
            }
        }
        gated("lyapunov.direct_vs_spectral_random", worst, 1e-6, ran, out, band, "t = 0 and 10 generic times");
    }

    const Scenario& sc_;
    const LambdaNuChart& chart_;
    Coverage& coverage_;
    std::vector<std::string>& warnings_;
    double scale_;
    std::mt19937_64 rng_;
    std::vector<CheckResult> checks_;
};

}  // namespace

std::vector<CheckResult> run_verify_suite(const Scenario& scenario, Coverage& coverage,
                                          std::vector<std::string>& warnings)
{
    return Suite(scenario, coverage, warnings).run();
}

}  // namespace agetime::cli
