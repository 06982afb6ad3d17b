#include "hankelsr/serialize.hpp"

#include <fstream>
#include <sstream>

namespace hankelsr {

namespace {

const Json& require(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object())
        throw SchemaError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw SchemaError(path + "." + key, "missing field");
    return *it;
}

double require_number(const Json& j, const char* key, const std::string& path) {
    const Json& v = require(j, key, path);
    if (!v.is_number())
        throw SchemaError(path + "." + key, "expected a number");
    return v.get<double>();
}

Complex complex_from_json(const Json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw SchemaError(path, "expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

} // namespace

Json to_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

Json to_json(const CVec& v) {
    Json arr = Json::array();
    for (int i = 0; i < v.size(); ++i) arr.push_back(to_json(v[i]));
    return arr;
}

CVec cvec_from_json(const Json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array");
    CVec v(static_cast<int>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v[static_cast<int>(i)] =
            complex_from_json(j[i], path + "[" + std::to_string(i) + "]");
    return v;
}

Json to_json(const SpectralSignal& s) {
    Json modes = Json::array();
    for (const Mode& m : s.modes)
        modes.push_back({{"f", m.freq}, {"tau", m.damping}, {"c", to_json(m.coeff)}});
    return {{"n_half", s.n_half}, {"modes", modes}};
}

SpectralSignal signal_from_json(const Json& j) {
    SpectralSignal s;
    s.n_half = static_cast<int>(require_number(j, "n_half", "signal"));
    const Json& modes = require(j, "modes", "signal");
    if (!modes.is_array()) throw SchemaError("signal.modes", "expected an array");
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const std::string path = "signal.modes[" + std::to_string(i) + "]";
        Mode m;
        m.freq = require_number(modes[i], "f", path);
        m.damping = require_number(modes[i], "tau", path);
        m.coeff = complex_from_json(require(modes[i], "c", path), path + ".c");
        s.modes.push_back(m);
    }
    try {
        s.validate();
    } catch (const std::invalid_argument& e) {
        throw SchemaError("signal", e.what());
    }
    return s;
}

Json to_json(const SampleMask& m) {
    return {{"n_full", m.n_full}, {"observed", m.observed}};
}

SampleMask mask_from_json(const Json& j) {
    SampleMask m;
    m.n_full = static_cast<int>(require_number(j, "n_full", "mask"));
    const Json& obs = require(j, "observed", "mask");
    if (!obs.is_array()) throw SchemaError("mask.observed", "expected an array");
    for (std::size_t i = 0; i < obs.size(); ++i) {
        if (!obs[i].is_number_integer())
            throw SchemaError("mask.observed[" + std::to_string(i) + "]",
                              "expected an integer");
        m.observed.push_back(obs[i].get<int>());
    }
    try {
        m.validate();
    } catch (const std::invalid_argument& e) {
        throw SchemaError("mask", e.what());
    }
    return m;
}

Json to_json(const MeasurementSet& m) {
    Json j{{"kind", m.kind == MeasurementKind::EntrySampling ? "entries"
                                                             : "gaussian"},
           {"values", to_json(m.values)},
           {"noise_level", m.noise_level}};
    if (m.kind == MeasurementKind::EntrySampling) {
        j["mask"] = to_json(m.mask);
    } else {
        j["rows"] = m.gaussian_rows;
        j["seed"] = m.gaussian_seed;
        j["n_full"] = m.mask.n_full;
    }
    return j;
}

MeasurementSet measurements_from_json(const Json& j) {
    MeasurementSet m;
    const Json& kind = require(j, "kind", "measurements");
    if (kind == "entries") {
        m.kind = MeasurementKind::EntrySampling;
        m.mask = mask_from_json(require(j, "mask", "measurements"));
    } else if (kind == "gaussian") {
        m.kind = MeasurementKind::GaussianProjection;
        m.gaussian_rows = static_cast<int>(require_number(j, "rows", "measurements"));
        const Json& seed = require(j, "seed", "measurements");
        if (!seed.is_number_unsigned())
            throw SchemaError("measurements.seed", "expected an unsigned integer");
        m.gaussian_seed = seed.get<std::uint64_t>();
        m.mask.n_full = static_cast<int>(require_number(j, "n_full", "measurements"));
    } else {
        throw SchemaError("measurements.kind", "expected 'entries' or 'gaussian'");
    }
    m.values = cvec_from_json(require(j, "values", "measurements"),
                              "measurements.values");
    m.noise_level = require_number(j, "noise_level", "measurements");
    try {
        m.validate();
    } catch (const std::invalid_argument& e) {
        throw SchemaError("measurements", e.what());
    }
    return m;
}

Json to_json(const RecoveryResult& r) {
    return {{"x_hat", to_json(r.x_hat)},
            {"iterations", r.iterations},
            {"primal_residual", r.primal_residual},
            {"dual_residual", r.dual_residual},
            {"objective", r.objective},
            {"converged", r.converged}};
}

Json to_json(const SolverOptions& o) {
    return {{"max_iters", o.max_iters},
            {"tolerance", o.tolerance},
            {"rho", o.rho},
            {"adapt_penalty", o.adapt_penalty}};
}

Json to_json(const FrequencyEstimate& e) {
    return {{"frequencies", e.frequencies}, {"j_values", e.j_values}};
}

Json to_json(const verify::ConditionReport& r) {
    Json j{{"name", r.name},
           {"verdict", verify::to_string(r.verdict)},
           {"margin", r.margin},
           {"details", r.details}};
    if (r.witness) j["witness"] = *r.witness;
    return j;
}

std::string profile_to_csv(const ImagingProfile& p) {
    std::ostringstream os;
    os.precision(17);
    os << "f,J\n";
    for (std::size_t i = 0; i < p.grid.size(); ++i)
        os << p.grid[i] << "," << p.values[i] << "\n";
    return os.str();
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw SchemaError(path, e.what());
    }
}

void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

void save_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

} // namespace hankelsr
