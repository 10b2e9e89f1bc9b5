#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "splitgap/ed.hpp"
#include "splitgap/fit.hpp"
#include "splitgap/instanton.hpp"
#include "splitgap/model.hpp"
#include "splitgap/rotor.hpp"
#include "splitgap/toy.hpp"

namespace splitgap {

using json = nlohmann::json;

/// Canonical JSON of the model parameters: sorted keys, shortest round-trip
/// numbers, infinity spelled "inf". This is the cache-key material.
json params_to_json(const ModelParams& params);
ModelParams params_from_json(const json& j);

json to_json(const SpectralResult& r);
json to_json(const ThermalResult& r);
json to_json(const ActionBreakdown& a);
json to_json(const HessianModeTable& t);
json to_json(const RotorSemiclassics& r);
json to_json(const AppendixDReport& r);
json to_json(const ToyResult& r);
json to_json(const FitReport& r);

/// One canonical line: compact dump, keys sorted (nlohmann objects are
/// key-ordered maps), '\n' appended by the caller.
std::string canonical_dump(const json& j);

/// RFC 4180 CSV: fields quoted only when needed, CRLF-free (LF endings).
std::string csv_row(const std::vector<std::string>& fields);
std::string csv_number(double v);

}  // namespace splitgap
