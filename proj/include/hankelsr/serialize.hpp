#pragma once

#include <string>

#include <json.hpp> // vendored nlohmann/json

#include "hankelsr/music.hpp"
#include "hankelsr/signal.hpp"
#include "hankelsr/solvers.hpp"
#include "hankelsr/verify.hpp"

namespace hankelsr {

using Json = nlohmann::json;

/// Validation failure with the offending field path in the message.
struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& path, const std::string& what)
        : std::runtime_error("schema error at " + path + ": " + what) {}
};

Json to_json(const Complex& c);
Json to_json(const CVec& v);
CVec cvec_from_json(const Json& j, const std::string& path);

Json to_json(const SpectralSignal& s);
SpectralSignal signal_from_json(const Json& j);

Json to_json(const SampleMask& m);
SampleMask mask_from_json(const Json& j);

Json to_json(const MeasurementSet& m);
MeasurementSet measurements_from_json(const Json& j);

Json to_json(const RecoveryResult& r);
Json to_json(const SolverOptions& o);

Json to_json(const FrequencyEstimate& e);
Json to_json(const verify::ConditionReport& r);

/// Imaging profile as CSV rows "f,J" with a header.
std::string profile_to_csv(const ImagingProfile& p);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);
void save_text_file(const std::string& path, const std::string& text);

} // namespace hankelsr
