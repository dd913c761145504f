#pragma once

// Scenario configuration: a single JSON document describing the chart, the
// state and observable families, the time grid, the age profile and where
// outputs go. Families are a closed set; unknown keys are rejected.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "agetime/algebra.hpp"
#include "agetime/lyapunov.hpp"

namespace agetime::cli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GridSpec {
    double e_max = 20.0;
    std::size_t n_lambda = 64;
    std::size_t m_nu = 64;
    bool operator==(const GridSpec&) const = default;
};

enum class StateKind { Pure, Energy, Mixed, Mode };

// pure:   psi(E) = exp(-(E - center)^2 / (4 width^2))
// energy: node state at e0
// mixed:  rho = exp(-(lambda - center)^2 / (2 width^2)) exp(-nu^2 / (2 coherence^2))
// mode:   energy state at e0 plus amplitude * exp(-i s nu) on the slice nearest e0
struct StateSpec {
    StateKind kind = StateKind::Pure;
    double center = 10.0;
    double width = 1.0;
    double coherence = 1.0;
    double e0 = 10.0;
    int mode = 1;
    double amplitude = 0.01;
    bool operator==(const StateSpec&) const = default;
};

enum class KernelKind { None, Gaussian, PureMode };

// gaussian:  amplitude * exp(-(E - E')^2 / (2 width^2))
// pure_mode: amplitude * exp(-i s nu) on the slice nearest e0
struct ObservableSpec {
    std::vector<double> diag{0.0, 1.0};  // polynomial coefficients in E, lowest first
    KernelKind kernel = KernelKind::Gaussian;
    double amplitude = 1.0;
    double width = 100.0;
    double e0 = 10.0;
    int mode = 1;
    bool operator==(const ObservableSpec&) const = default;
};

struct TimeSpec {
    bool explicit_values = false;
    double start = 0.0;
    double stop = 5.0;
    std::size_t count = 101;
    std::vector<double> values;
    bool operator==(const TimeSpec&) const = default;
};

struct ProfileSpec {
    ProfileKind kind = ProfileKind::Logistic;
    double beta = 1.0;
    bool operator==(const ProfileSpec&) const = default;
};

struct OutputSpec {
    std::string directory = "agetime-out";
    std::string format = "csv";
    bool plot = false;
    bool operator==(const OutputSpec&) const = default;
};

struct ScenarioConfig {
    GridSpec grid;
    StateSpec state;
    ObservableSpec observable;
    TimeSpec times;
    ProfileSpec profile;
    OutputSpec outputs;
    double tolerance_scale = 1.0;
    std::uint64_t seed = 1;
    bool operator==(const ScenarioConfig&) const = default;
};

std::string to_string(StateKind kind);
std::string to_string(KernelKind kind);

// Throws ConfigError with a path-qualified message.
ScenarioConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const ScenarioConfig& config);
ScenarioConfig load_config(const std::string& path);

// Range checks that need more than one field (for example e0 inside the chart).
void validate(const ScenarioConfig& config);

LambdaNuChart make_chart(const ScenarioConfig& config);
StateFunctional make_state(const LambdaNuChart& chart, const StateSpec& spec);
Observable make_scenario_observable(const LambdaNuChart& chart, const ObservableSpec& spec);
std::vector<double> make_times(const TimeSpec& spec);
AgeProfile make_scenario_profile(const ProfileSpec& spec);

// The pure Gaussian state against a Gaussian kernel has a closed-form
// correlation term: amplitude sqrt(2 pi) g exp(-g^2 t^2 / 2) with
// 1/g^2 = 1/(4 width^2) + 1/kernel_width^2.
bool has_gaussian_envelope(const ScenarioConfig& config);
double gaussian_envelope_rate(const ScenarioConfig& config);
double gaussian_envelope(const ScenarioConfig& config, double t);
// Time at which the envelope falls to `level`.
double gaussian_envelope_time(const ScenarioConfig& config, double level);

}  // namespace agetime::cli
