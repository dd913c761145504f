#include "agetime/cli/scenario.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "agetime/ageop.hpp"

namespace agetime::cli {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxSlices = 4096;
constexpr std::size_t kMaxModes = 4096;
constexpr std::size_t kMaxTimes = 1000000;

[[noreturn]] void fail(const std::string& where, const std::string& what)
{
    throw ConfigError(where + ": " + what);
}

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed)
{
    if (!obj.is_object()) {
        fail(where, "expected an object");
    }
    std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& item : obj.items()) {
        if (keys.count(item.key()) == 0) {
            fail(where, "unknown key '" + item.key() + "'");
        }
    }
}

double get_number(const json& obj, const std::string& where, const char* key, double fallback)
{
    if (!obj.contains(key)) {
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number()) {
        fail(where + "." + key, "expected a number");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
        fail(where + "." + key, "must be finite");
    }
    return x;
}

std::size_t get_count(const json& obj, const std::string& where, const char* key, std::size_t fallback)
{
    if (!obj.contains(key)) {
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        fail(where + "." + key, "expected a non-negative integer");
    }
    return v.get<std::size_t>();
}

int get_int(const json& obj, const std::string& where, const char* key, int fallback)
{
    if (!obj.contains(key)) {
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number_integer()) {
        fail(where + "." + key, "expected an integer");
    }
    const std::int64_t x = v.get<std::int64_t>();
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
        fail(where + "." + key, "out of range");
    }
    return static_cast<int>(x);
}

std::string get_string(const json& obj, const std::string& where, const char* key, const std::string& fallback)
{
    if (!obj.contains(key)) {
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_string()) {
        fail(where + "." + key, "expected a string");
    }
    return v.get<std::string>();
}

bool get_bool(const json& obj, const std::string& where, const char* key, bool fallback)
{
    if (!obj.contains(key)) {
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_boolean()) {
        fail(where + "." + key, "expected a boolean");
    }
    return v.get<bool>();
}

std::vector<double> get_numbers(const json& obj, const std::string& where, const char* key)
{
    const json& v = obj.at(key);
    if (!v.is_array()) {
        fail(where + "." + key, "expected an array of numbers");
    }
    std::vector<double> out;
    out.reserve(v.size());
    for (const json& x : v) {
        if (!x.is_number() || !std::isfinite(x.get<double>())) {
            fail(where + "." + key, "expected finite numbers");
        }
        out.push_back(x.get<double>());
    }
    return out;
}

void require_positive(double x, const std::string& where)
{
    if (!(x > 0.0)) {
        fail(where, "must be positive");
    }
}

StateKind state_kind_from_string(const std::string& name, const std::string& where)
{
    if (name == "pure") return StateKind::Pure;
    if (name == "energy") return StateKind::Energy;
    if (name == "mixed") return StateKind::Mixed;
    if (name == "mode") return StateKind::Mode;
    fail(where, "unknown state family '" + name + "' (pure, energy, mixed, mode)");
}

KernelKind kernel_kind_from_string(const std::string& name, const std::string& where)
{
    if (name == "none") return KernelKind::None;
    if (name == "gaussian") return KernelKind::Gaussian;
    if (name == "pure_mode") return KernelKind::PureMode;
    fail(where, "unknown kernel family '" + name + "' (none, gaussian, pure_mode)");
}

GridSpec parse_grid(const json& obj)
{
    reject_unknown(obj, "grid", {"e_max", "n_lambda", "m_nu"});
    GridSpec g;
    g.e_max = get_number(obj, "grid", "e_max", g.e_max);
    g.n_lambda = get_count(obj, "grid", "n_lambda", g.n_lambda);
    g.m_nu = get_count(obj, "grid", "m_nu", g.m_nu);
    return g;
}

StateSpec parse_state(const json& obj)
{
    reject_unknown(obj, "state", {"kind", "center", "width", "coherence", "e0", "mode", "amplitude"});
    StateSpec s;
    s.kind = state_kind_from_string(get_string(obj, "state", "kind", to_string(s.kind)), "state.kind");
    s.center = get_number(obj, "state", "center", s.center);
    s.width = get_number(obj, "state", "width", s.width);
    s.coherence = get_number(obj, "state", "coherence", s.coherence);
    s.e0 = get_number(obj, "state", "e0", s.e0);
    s.mode = get_int(obj, "state", "mode", s.mode);
    s.amplitude = get_number(obj, "state", "amplitude", s.amplitude);
    return s;
}

ObservableSpec parse_observable(const json& obj)
{
    reject_unknown(obj, "observable", {"diag", "kernel"});
    ObservableSpec o;
    if (obj.contains("diag")) {
        o.diag = get_numbers(obj, "observable", "diag");
    }
    if (obj.contains("kernel")) {
        const json& k = obj.at("kernel");
        reject_unknown(k, "observable.kernel", {"kind", "amplitude", "width", "e0", "mode"});
        const std::string where = "observable.kernel";
        o.kernel = kernel_kind_from_string(get_string(k, where, "kind", to_string(o.kernel)), where + ".kind");
        o.amplitude = get_number(k, where, "amplitude", o.amplitude);
        o.width = get_number(k, where, "width", o.width);
        o.e0 = get_number(k, where, "e0", o.e0);
        o.mode = get_int(k, where, "mode", o.mode);
    }
    return o;
}

TimeSpec parse_times(const json& obj)
{
    reject_unknown(obj, "times", {"start", "stop", "count", "values"});
    TimeSpec t;
    if (obj.contains("values")) {
        if (obj.contains("start") || obj.contains("stop") || obj.contains("count")) {
            fail("times", "give either values or start/stop/count, not both");
        }
        t.explicit_values = true;
        t.values = get_numbers(obj, "times", "values");
        return t;
    }
    t.start = get_number(obj, "times", "start", t.start);
    t.stop = get_number(obj, "times", "stop", t.stop);
    t.count = get_count(obj, "times", "count", t.count);
    return t;
}

ProfileSpec parse_profile(const json& obj)
{
    reject_unknown(obj, "profile", {"kind", "beta"});
    ProfileSpec p;
    try {
        p.kind = profile_kind_from_string(get_string(obj, "profile", "kind", agetime::to_string(p.kind)));
    } catch (const std::invalid_argument& e) {
        fail("profile.kind", e.what());
    }
    p.beta = get_number(obj, "profile", "beta", p.beta);
    return p;
}

OutputSpec parse_outputs(const json& obj)
{
    reject_unknown(obj, "outputs", {"directory", "format", "plot"});
    OutputSpec o;
    o.directory = get_string(obj, "outputs", "directory", o.directory);
    o.format = get_string(obj, "outputs", "format", o.format);
    o.plot = get_bool(obj, "outputs", "plot", o.plot);
    return o;
}

std::size_t slice_for(const LambdaNuChart& chart, double e0)
{
    return chart.grid().nearest_node(e0);
}

}  // namespace

std::string to_string(StateKind kind)
{
    switch (kind) {
    case StateKind::Pure: return "pure";
    case StateKind::Energy: return "energy";
    case StateKind::Mixed: return "mixed";
    case StateKind::Mode: return "mode";
    }
    return "unknown";
}

std::string to_string(KernelKind kind)
{
    switch (kind) {
    case KernelKind::None: return "none";
    case KernelKind::Gaussian: return "gaussian";
    case KernelKind::PureMode: return "pure_mode";
    }
    return "unknown";
}

ScenarioConfig config_from_json(const json& doc)
{
    reject_unknown(doc, "config", {"grid", "state", "observable", "times", "profile", "outputs", "tolerances", "seed"});
    ScenarioConfig c;
    if (doc.contains("grid")) c.grid = parse_grid(doc.at("grid"));
    if (doc.contains("state")) c.state = parse_state(doc.at("state"));
    if (doc.contains("observable")) c.observable = parse_observable(doc.at("observable"));
    if (doc.contains("times")) c.times = parse_times(doc.at("times"));
    if (doc.contains("profile")) c.profile = parse_profile(doc.at("profile"));
    if (doc.contains("outputs")) c.outputs = parse_outputs(doc.at("outputs"));
    if (doc.contains("tolerances")) {
        const json& t = doc.at("tolerances");
        reject_unknown(t, "tolerances", {"scale"});
        c.tolerance_scale = get_number(t, "tolerances", "scale", c.tolerance_scale);
    }
    if (doc.contains("seed")) {
        if (!doc.at("seed").is_number_unsigned()) {
            fail("seed", "expected a non-negative integer");
        }
        c.seed = doc.at("seed").get<std::uint64_t>();
    }
    validate(c);
    return c;
}

json config_to_json(const ScenarioConfig& c)
{
    json doc;
    doc["grid"] = {{"e_max", c.grid.e_max}, {"n_lambda", c.grid.n_lambda}, {"m_nu", c.grid.m_nu}};
    doc["state"] = {{"kind", to_string(c.state.kind)}, {"center", c.state.center},  {"width", c.state.width},
                    {"coherence", c.state.coherence},  {"e0", c.state.e0},          {"mode", c.state.mode},
                    {"amplitude", c.state.amplitude}};
    doc["observable"] = {{"diag", c.observable.diag},
                         {"kernel",
                          {{"kind", to_string(c.observable.kernel)},
                           {"amplitude", c.observable.amplitude},
                           {"width", c.observable.width},
                           {"e0", c.observable.e0},
                           {"mode", c.observable.mode}}}};
    if (c.times.explicit_values) {
        doc["times"] = {{"values", c.times.values}};
    } else {
        doc["times"] = {{"start", c.times.start}, {"stop", c.times.stop}, {"count", c.times.count}};
    }
    doc["profile"] = {{"kind", agetime::to_string(c.profile.kind)}, {"beta", c.profile.beta}};
    doc["outputs"] = {{"directory", c.outputs.directory}, {"format", c.outputs.format}, {"plot", c.outputs.plot}};
    doc["tolerances"] = {{"scale", c.tolerance_scale}};
    doc["seed"] = c.seed;
    return doc;
}

ScenarioConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    json doc;
    try {
        doc = json::parse(buffer.str());
    } catch (const json::parse_error& e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
    return config_from_json(doc);
}

void validate(const ScenarioConfig& c)
{
    require_positive(c.grid.e_max, "grid.e_max");
    if (c.grid.n_lambda < 1 || c.grid.n_lambda > kMaxSlices) {
        fail("grid.n_lambda", "must lie in [1, " + std::to_string(kMaxSlices) + "]");
    }
    if (c.grid.m_nu < 4 || c.grid.m_nu > kMaxModes || c.grid.m_nu % 2 != 0) {
        fail("grid.m_nu", "must be even and lie in [4, " + std::to_string(kMaxModes) + "]");
    }
    const double e_max = c.grid.e_max;
    const auto inside = [e_max](double e, const std::string& where) {
        if (!(e > 0.0 && e < e_max)) {
            fail(where, "must lie in (0, e_max)");
        }
    };
    const int half = static_cast<int>(c.grid.m_nu / 2);

    switch (c.state.kind) {
    case StateKind::Pure:
        inside(c.state.center, "state.center");
        require_positive(c.state.width, "state.width");
        break;
    case StateKind::Energy:
        inside(c.state.e0, "state.e0");
        break;
    case StateKind::Mixed:
        inside(c.state.center, "state.center");
        require_positive(c.state.width, "state.width");
        require_positive(c.state.coherence, "state.coherence");
        break;
    case StateKind::Mode:
        inside(c.state.e0, "state.e0");
        if (std::abs(c.state.mode) >= half) {
            fail("state.mode", "|mode| must be below m_nu/2");
        }
        break;
    }

    if (c.observable.diag.size() > 16) {
        fail("observable.diag", "at most 16 polynomial coefficients");
    }
    switch (c.observable.kernel) {
    case KernelKind::None:
        break;
    case KernelKind::Gaussian:
        require_positive(c.observable.width, "observable.kernel.width");
        break;
    case KernelKind::PureMode:
        inside(c.observable.e0, "observable.kernel.e0");
        if (std::abs(c.observable.mode) >= half) {
            fail("observable.kernel.mode", "|mode| must be below m_nu/2");
        }
        break;
    }

    if (c.times.explicit_values) {
        if (c.times.values.empty()) {
            fail("times.values", "must not be empty");
        }
        if (c.times.values.size() > kMaxTimes) {
            fail("times.values", "too many times");
        }
        for (std::size_t i = 1; i < c.times.values.size(); ++i) {
            if (!(c.times.values[i] > c.times.values[i - 1])) {
                fail("times.values", "must be strictly increasing");
            }
        }
    } else {
        if (c.times.count < 1 || c.times.count > kMaxTimes) {
            fail("times.count", "must lie in [1, " + std::to_string(kMaxTimes) + "]");
        }
        if (c.times.count > 1 && !(c.times.stop > c.times.start)) {
            fail("times.stop", "must exceed times.start when count > 1");
        }
    }

    require_positive(c.profile.beta, "profile.beta");
    try {
        make_profile(c.profile.kind, c.profile.beta);
    } catch (const std::invalid_argument& e) {
        fail("profile", e.what());
    }

    if (c.outputs.format != "csv" && c.outputs.format != "json") {
        fail("outputs.format", "must be csv or json");
    }
    if (c.outputs.directory.empty()) {
        fail("outputs.directory", "must not be empty");
    }
    require_positive(c.tolerance_scale, "tolerances.scale");
}

LambdaNuChart make_chart(const ScenarioConfig& c)
{
    return build_chart(c.grid.e_max, c.grid.n_lambda, c.grid.m_nu);
}

StateFunctional make_state(const LambdaNuChart& chart, const StateSpec& spec)
{
    switch (spec.kind) {
    case StateKind::Pure: {
        const double c = spec.center;
        const double w = spec.width;
        return make_pure_state(chart, [c, w](double e) { return cplx{std::exp(-(e - c) * (e - c) / (4.0 * w * w)), 0.0}; });
    }
    case StateKind::Energy:
        return make_energy_state(chart, spec.e0);
    case StateKind::Mixed: {
        const double c = spec.center;
        const double w = spec.width;
        const double q = spec.coherence;
        return make_mixed_state(chart, [c, w, q](double e, double ep) {
            const double lam = 0.5 * (e + ep);
            const double nu = e - ep;
            return cplx{std::exp(-(lam - c) * (lam - c) / (2.0 * w * w) - nu * nu / (2.0 * q * q)), 0.0};
        });
    }
    case StateKind::Mode: {
        const StateFunctional base = make_energy_state(chart, spec.e0);
        const CorrelationKernel mode = right_eigenvector(chart, slice_for(chart, spec.e0), spec.mode);
        return StateFunctional(base.diag(), cplx{spec.amplitude, 0.0} * mode);
    }
    }
    throw std::logic_error("make_state: unhandled family");
}

Observable make_scenario_observable(const LambdaNuChart& chart, const ObservableSpec& spec)
{
    const std::vector<double> coeffs = spec.diag;
    const auto diag_fn = [coeffs](double e) {
        double acc = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
            acc = acc * e + *it;
        }
        return cplx{acc, 0.0};
    };
    switch (spec.kernel) {
    case KernelKind::None:
        return make_observable(chart, diag_fn, [](double, double) { return cplx{0.0, 0.0}; });
    case KernelKind::Gaussian: {
        const double a = spec.amplitude;
        const double w = spec.width;
        return make_observable(chart, diag_fn, [a, w](double e, double ep) {
            return cplx{a * std::exp(-(e - ep) * (e - ep) / (2.0 * w * w)), 0.0};
        });
    }
    case KernelKind::PureMode: {
        const Observable diag_only = make_observable(chart, diag_fn, [](double, double) { return cplx{0.0, 0.0}; });
        const CorrelationKernel mode = right_eigenvector(chart, slice_for(chart, spec.e0), spec.mode);
        return Observable(diag_only.diag(), cplx{spec.amplitude, 0.0} * mode);
    }
    }
    throw std::logic_error("make_scenario_observable: unhandled family");
}

std::vector<double> make_times(const TimeSpec& spec)
{
    if (spec.explicit_values) {
        return spec.values;
    }
    std::vector<double> out(spec.count);
    if (spec.count == 1) {
        out[0] = spec.start;
        return out;
    }
    const double step = (spec.stop - spec.start) / static_cast<double>(spec.count - 1);
    for (std::size_t i = 0; i < spec.count; ++i) {
        out[i] = spec.start + step * static_cast<double>(i);
    }
    out.back() = spec.stop;
    return out;
}

AgeProfile make_scenario_profile(const ProfileSpec& spec)
{
    return make_profile(spec.kind, spec.beta);
}

bool has_gaussian_envelope(const ScenarioConfig& c)
{
    return c.state.kind == StateKind::Pure && c.observable.kernel == KernelKind::Gaussian;
}

double gaussian_envelope_rate(const ScenarioConfig& c)
{
    const double w = c.state.width;
    const double tau = c.observable.width;
    return 1.0 / std::sqrt(1.0 / (4.0 * w * w) + 1.0 / (tau * tau));
}

double gaussian_envelope(const ScenarioConfig& c, double t)
{
    const double g = gaussian_envelope_rate(c);
    return std::abs(c.observable.amplitude) * std::sqrt(2.0 * std::numbers::pi) * g * std::exp(-0.5 * g * g * t * t);
}

double gaussian_envelope_time(const ScenarioConfig& c, double level)
{
    const double g = gaussian_envelope_rate(c);
    const double peak = gaussian_envelope(c, 0.0);
    if (!(peak > level)) {
        return 0.0;
    }
    return std::sqrt(2.0 * std::log(peak / level)) / g;
}

}  // namespace agetime::cli
