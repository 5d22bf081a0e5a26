#pragma once

// JSON and CSV adapters for the command-line front end and the Python module.

#include "spectral/continuum.hpp"
#include "spectral/core.hpp"

#include "json.hpp"

#include <string>

namespace spectral::io {

using nlohmann::json;

/// {"a": [...], "b": [...]}
PerturbedJacobi jacobi_from_json(const json& j);
json to_json(const PerturbedJacobi& jacobi);

/// {"kind": "power"|"alternating"|"exponential", "c", "gamma", "target", "r"}
/// or a plain operator object (finite rule).
SequenceRule rule_from_json(const json& j);

/// [L_0, L_1, ...] or {"L": [...]}
RealPolynomial polynomial_from_json(const json& j);
json to_json(const RealPolynomial& p);

/// {"points": [[E, w], ...], "density": [...]}
SpectralMeasure measure_from_json(const json& j);
json to_json(const SpectralMeasure& measure);

/// {"X": ..., "h": ..., "samples": [...]}
ContinuumPotential potential_from_json(const json& j);

json to_json(const ConditionReport& report);

/// Fixed key order, %.17g floats, null for non-finite values.
std::string dump(const json& j);

json read_json_file(const std::string& path);

}  // namespace spectral::io
