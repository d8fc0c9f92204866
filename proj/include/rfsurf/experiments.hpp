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

#ifndef RFSURF_EXPERIMENTS_HPP
#define RFSURF_EXPERIMENTS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rfsurf/controller.hpp"
#include "rfsurf/env_synth.hpp"
#include "rfsurf/measurement.hpp"
#include "rfsurf/physics.hpp"
#include "rfsurf/serialize.hpp"

namespace rfsurf {

inline constexpr const char* kToolVersion = RFSURF_VERSION;

// Names accepted by run_experiment and the CLI.
const std::vector<std::string>& experiment_names();
bool is_experiment_name(std::string_view name);

// Everything needed to regenerate an experiment's outputs bit for bit.
// `params` holds experiment-specific knobs; unset keys fall back to the
// desk-scale defaults returned by default_spec().
struct ExperimentSpec {
    std::string name;
    std::uint64_t seed = 1;
    std::int64_t trials = 0;
    std::optional<IidEnvSpec> iid;
    std::optional<GeometricScene> scene;
    NoiseModel noise;
    ControllerParams controller;
    json params = json::object();
};

ExperimentSpec default_spec(std::string_view name);

// Missing keys are taken from default_spec(name).
ExperimentSpec spec_from_json(const json& j);
json spec_to_json(const ExperimentSpec& spec);

struct Property {
    std::string name;
    bool passed = false;
    bool asserted = true; // reported-only properties never fail a run
    double value = 0.0;
    std::string criterion;
};

// Named numeric table written as series/<name>.csv.
struct Series {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct ExperimentResult {
    std::string name;
    std::vector<Property> properties;
    json metrics = json::object();
    std::vector<Series> series;
    std::vector<std::pair<std::string, physics::FieldMap>> grids;

    bool passed() const noexcept;
    const Property* find(std::string_view property) const noexcept;
};

ExperimentResult exp_linearity(const ExperimentSpec& spec);
ExperimentResult exp_measurability(const ExperimentSpec& spec);
ExperimentResult exp_quadratic(const ExperimentSpec& spec);
ExperimentResult exp_opt_speed(const ExperimentSpec& spec);
ExperimentResult exp_frequency(const ExperimentSpec& spec);
ExperimentResult exp_pi_bound(const ExperimentSpec& spec);
ExperimentResult exp_two_approx(const ExperimentSpec& spec);
ExperimentResult exp_diffraction(const ExperimentSpec& spec);

// Dispatches on spec.name; throws ArgumentError for unknown names.
ExperimentResult run_experiment(const ExperimentSpec& spec);

// Writes manifest.json, summary.json, series/*.csv and grids/*.bin.
void write_outputs(const ExperimentSpec& spec, const ExperimentResult& result, const std::filesystem::path& dir);

json summary_to_json(const ExperimentResult& result);

// The frequency experiment's default scene: a 6 m wide surface seen at
// grazing incidence by endpoints about 20 m away, with an attenuated
// direct path.
GeometricScene default_frequency_scene();

} // namespace rfsurf

#endif
