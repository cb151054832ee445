#pragma once

#include <string>
#include <string_view>

#include "polyfreq/models.hpp"

namespace polyfreq {

inline constexpr int kModelSpecSchema = 1;

// Model specification documents (JSON):
//
//   {"schema": 1, "family": "arma",     "a0": 0, "ar": [0.5], "ma": [], "noise": {...}}
//   {"schema": 1, "family": "linear",   "mean": 0, "coeffs": [1, 0.5, 0.25], "noise": {...}}
//   {"schema": 1, "family": "nlar_tar", "a": 0.6, "b": -0.3, "noise": {...}}
//
// noise is {"distribution": "gaussian", "sigma": s}, {"distribution":
// "uniform", "c": c} or {"distribution": "laplace", "scale": s}; it defaults
// to standard Gaussian. Omitted coefficient lists are empty, omitted
// intercepts zero. General NLAR maps are library-only.
//
// Throws DataError on malformed JSON (with byte position) or schema
// violations. Validity of the model itself is not checked here.
TimeSeriesModel parse_model_spec(std::string_view text);

// Canonical compact JSON for a model. Throws DataError for NLAR models.
std::string model_spec_to_json(const TimeSeriesModel& model);

}  // namespace polyfreq
