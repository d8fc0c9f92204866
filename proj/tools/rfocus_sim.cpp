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

// rfocus-sim: experiment driver and single-shot tools for the rfsurf library.
//
//   rfocus-sim <experiment> [--spec spec.json] --out dir [--seed u64] [--trials n]
//   rfocus-sim default-spec <experiment>
//   rfocus-sim gen-env --iid --n 64 --sigma 1 --baseline 8 --seed 3 --out env.json
//   rfocus-sim gen-env --scene scene.json --frequency 2.42e9 --out env.json
//   rfocus-sim optimize --env env.json [--noise noise.json | --noise-db 0.2] --budget 2560 --out report.json
//
// Exit status: 0 when every asserted property holds, 1 when one fails,
// 2 on invalid input.

#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rfsurf/channel.hpp"
#include "rfsurf/controller.hpp"
#include "rfsurf/env_synth.hpp"
#include "rfsurf/error.hpp"
#include "rfsurf/experiments.hpp"
#include "rfsurf/optimize.hpp"
#include "rfsurf/serialize.hpp"

namespace fs = std::filesystem;
using namespace rfsurf;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInvalid = 2;

struct ExperimentArgs {
    std::string spec_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> trials;
};

// A spec may reference its scene as {"env": {"scene_file": "scene.json"}},
// resolved relative to the spec file.
json load_spec_json(const fs::path& path) {
    json j = read_json_file(path);
    if (j.contains("env") && j["env"].contains("scene_file")) {
        fs::path scene = j["env"]["scene_file"].get<std::string>();
        if (scene.is_relative()) scene = path.parent_path() / scene;
        j["env"]["scene"] = read_json_file(scene);
        j["env"].erase("scene_file");
    }
    return j;
}

int run_named_experiment(const std::string& name, const ExperimentArgs& args) {
    ExperimentSpec spec = default_spec(name);
    if (!args.spec_path.empty()) {
        json j = load_spec_json(args.spec_path);
        if (j.contains("name") && j["name"] != name)
            throw ArgumentError("spec file is for experiment '" + j["name"].get<std::string>() + "'");
        j["name"] = name;
        spec = spec_from_json(j);
    }
    if (args.seed) spec.seed = *args.seed;
    if (args.trials) spec.trials = *args.trials;

    const auto result = run_experiment(spec);
    write_outputs(spec, result, args.out_dir);
    for (const auto& p : result.properties) {
        const char* tag = !p.asserted ? "INFO" : (p.passed ? "PASS" : "FAIL");
        std::cout << tag << "  " << p.name << " = " << format_double(p.value) << "  (" << p.criterion << ")\n";
    }
    std::cout << name << ": " << (result.passed() ? "all asserted properties hold" : "property failure")
              << "; outputs in " << args.out_dir << '\n';
    return result.passed() ? kExitPass : kExitFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator and experiment harness for binary reflecting surfaces"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    ExperimentArgs exp_args;
    std::string chosen_experiment;
    for (const auto& name : experiment_names()) {
        auto* sub = app.add_subcommand(name, "Run the " + name + " experiment");
        sub->add_option("--spec", exp_args.spec_path, "Experiment spec JSON (defaults apply to missing keys)")
            ->check(CLI::ExistingFile);
        sub->add_option("--out", exp_args.out_dir, "Output directory")->required();
        sub->add_option("--seed", exp_args.seed, "Override the spec seed");
        sub->add_option("--trials", exp_args.trials, "Override the trial count")->check(CLI::PositiveNumber);
        sub->callback([&chosen_experiment, name] { chosen_experiment = name; });
    }

    auto* defaults = app.add_subcommand("default-spec", "Print the default spec of an experiment");
    std::string default_name;
    defaults->add_option("experiment", default_name, "Experiment name")->required();

    auto* gen = app.add_subcommand("gen-env", "Generate an environment file");
    bool iid_flag = false;
    std::string scene_path, env_out;
    IidEnvSpec iid;
    double frequency = 2.42e9;
    auto* iid_opt = gen->add_flag("--iid", iid_flag, "i.i.d. random element channels");
    auto* scene_opt = gen->add_option("--scene", scene_path, "Geometric scene JSON")->check(CLI::ExistingFile);
    iid_opt->excludes(scene_opt);
    gen->add_option("--n", iid.n_elements, "Number of elements (--iid)")->check(CLI::PositiveNumber);
    gen->add_option("--sigma", iid.element_sigma, "Element amplitude scale (--iid)");
    gen->add_option("--baseline", iid.baseline_magnitude, "Baseline magnitude |h_Z| (--iid)");
    gen->add_option("--noise-floor", iid.noise_floor_power, "Receiver noise power (--iid)");
    gen->add_option("--seed", iid.seed, "Seed (--iid)");
    gen->add_option("--frequency", frequency, "Carrier frequency in Hz (--scene)");
    gen->add_option("--out", env_out, "Output environment JSON")->required();

    auto* opt = app.add_subcommand("optimize", "Run the RSSI-only controller on an environment");
    std::string env_path, noise_path, report_out;
    std::optional<double> noise_db;
    ControllerParams params;
    std::string center = "median";
    std::uint64_t noise_seed = 0;
    opt->add_option("--env", env_path, "Environment JSON")->required()->check(CLI::ExistingFile);
    auto* noise_file_opt = opt->add_option("--noise", noise_path, "Noise model JSON")->check(CLI::ExistingFile);
    auto* noise_db_opt = opt->add_option("--noise-db", noise_db, "Gaussian RSSI noise in dB");
    noise_file_opt->excludes(noise_db_opt);
    opt->add_option("--noise-seed", noise_seed, "Noise seed (with --noise-db)");
    opt->add_option("--budget", params.budget, "Measurement budget")->required();
    opt->add_option("--batch", params.batch_size, "Batch size");
    opt->add_option("--confidence", params.confidence, "Freezing confidence");
    opt->add_option("--center", center, "Vote centre")->check(CLI::IsMember({"median", "mean"}));
    opt->add_option("--seed", params.seed, "Controller seed");
    opt->add_option("--out", report_out, "Report JSON")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (!chosen_experiment.empty()) return run_named_experiment(chosen_experiment, exp_args);

        if (defaults->parsed()) {
            std::cout << spec_to_json(default_spec(default_name)).dump(2) << '\n';
            return kExitPass;
        }

        if (gen->parsed()) {
            if (!iid_flag && scene_path.empty()) throw ArgumentError("gen-env needs --iid or --scene");
            const Environment env = iid_flag ? gen_iid(iid)
                                             : gen_geometric(scene_from_json(read_json_file(scene_path)), frequency);
            write_json_file(env_out, environment_to_json(env));
            std::cout << "wrote " << env.size() << "-element environment to " << env_out << '\n';
            return kExitPass;
        }

        if (opt->parsed()) {
            const Environment env = environment_from_json(read_json_file(env_path));
            NoiseModel noise;
            if (!noise_path.empty()) noise = noise_from_json(read_json_file(noise_path));
            if (noise_db) {
                noise.rel_sigma_db = *noise_db;
                noise.seed = noise_seed;
            }
            params.center_statistic = center == "mean" ? CenterStatistic::kMean : CenterStatistic::kMedian;
            const auto report = run_controller(env, noise, params);
            write_json_file(report_out, report_to_json(report));

            bool monotone = true;
            for (std::size_t k = 1; k < report.trajectory.size(); ++k)
                if (report.trajectory[k].best_so_far_ratio < report.trajectory[k - 1].best_so_far_ratio)
                    monotone = false;
            const bool ends = report.trajectory.back().measurements_used == report.total_measurements;
            const bool within_budget = report.total_measurements <= params.budget;
            const double exact = rssi_ratio_exact(env, report.best_config);
            const double optimal = std::norm(halfplane_opt(env).magnitude) / std::norm(env.h_z());
            std::cout << std::fixed << std::setprecision(3) << "measured gain " << to_db(report.achieved_ratio)
                      << " dB, exact gain " << to_db(exact) << " dB, optimal " << to_db(optimal) << " dB, "
                      << report.total_measurements << " measurements in " << report.batches << " batches\n"
                      << (monotone ? "PASS" : "FAIL") << "  trajectory monotone\n"
                      << (ends ? "PASS" : "FAIL") << "  trajectory ends at total measurements\n"
                      << (within_budget ? "PASS" : "FAIL") << "  budget respected\n";
            return monotone && ends && within_budget ? kExitPass : kExitFail;
        }
    } catch (const std::exception& e) {
        std::cerr << "rfocus-sim: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitInvalid;
}
