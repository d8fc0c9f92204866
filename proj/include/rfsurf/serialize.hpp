// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The rfsurf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RFSURF_SERIALIZE_HPP
#define RFSURF_SERIALIZE_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "rfsurf/channel.hpp"
#include "rfsurf/controller.hpp"
#include "rfsurf/env_synth.hpp"
#include "rfsurf/measurement.hpp"

namespace rfsurf {

using json = nlohmann::json;

// Shortest decimal that parses back to the same double.
std::string format_double(double v);

// Bits packed MSB-first (element 0 is the top bit of the first nibble),
// zero-padded to a whole nibble, lowercase.
std::string to_hex(const SurfaceConfig& config);
SurfaceConfig from_hex(std::string_view hex, std::size_t n_elements);

// {"h_z": [re, im], "h": [[re, im], ...], "interactions": [[i, j, re, im], ...],
//  "noise_floor_power": x}
json environment_to_json(const Environment& env);
Environment environment_from_json(const json& j);

json noise_to_json(const NoiseModel& noise);
NoiseModel noise_from_json(const json& j);

json controller_params_to_json(const ControllerParams& params);
ControllerParams controller_params_from_json(const json& j);

json iid_spec_to_json(const IidEnvSpec& spec);
IidEnvSpec iid_spec_from_json(const json& j);

// Scene files carry explicit units: "wavelength_m", "positions_m", "tx_m", ...
// When "positions_m" is absent the grid block plus "center_m" generate a
// planar grid.
json scene_to_json(const GeometricScene& scene);
GeometricScene scene_from_json(const json& j);

// Configs as hex bitstrings, trajectory as [[measurements_used, ratio], ...].
json report_to_json(const OptimizationReport& report);
OptimizationReport report_from_json(const json& j, std::size_t n_elements);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

} // namespace rfsurf

#endif
