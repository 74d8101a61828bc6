// Copyright 2026 The lossjm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON forms. A complex matrix is {"dim": d, "entries": [re, im, re, im, ...]}
// in row-major order; doubles are written with round-trip precision.

#ifndef LOSSJM_IO_HPP
#define LOSSJM_IO_HPP

#include <string>
#include <string_view>

#include <json.hpp>

#include "lossjm/compat.hpp"
#include "lossjm/measurements.hpp"
#include "lossjm/qubit_criterion.hpp"
#include "lossjm/usd.hpp"

namespace lossjm::io {

using json = nlohmann::ordered_json;

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr std::string_view kNoiseModel = "eta*M + (1-eta)*tr(M)/d*I";

json to_json(const CMatrix& m);
/// Throws std::invalid_argument on a malformed matrix object.
CMatrix matrix_from_json(const json& j);

json to_json(const MeasurementSet& set);
MeasurementSet measurement_set_from_json(const json& j);

json to_json(const DisplacedFamilyParams& p);
DisplacedFamilyParams family_params_from_json(const json& j);

json to_json(const ParentPovm& parent);
ParentPovm parent_from_json(const json& j);

/// Verdict record. `n` is the row label (count - 1 for the displaced family).
json verdict_record(int n, const TableRowVerdict& row);

json to_json(const JmResult& r);
json to_json(const PairTestReport& r);
json to_json(const UsdReport& r);

/// {command, params, versions, wall_time}.
json manifest(std::string_view command, const json& params, double wall_time);

json versions();

}  // namespace lossjm::io

#endif  // LOSSJM_IO_HPP
