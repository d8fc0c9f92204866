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

#include "rfsurf/serialize.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

#include "rfsurf/error.hpp"

namespace rfsurf {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string to_hex(const SurfaceConfig& config) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve((config.size() + 3) / 4);
    for (std::size_t i = 0; i < config.size(); i += 4) {
        unsigned nib = 0;
        for (std::size_t k = 0; k < 4; ++k) {
            nib <<= 1;
            if (i + k < config.size() && config[i + k]) nib |= 1;
        }
        out.push_back(kDigits[nib]);
    }
    return out;
}

SurfaceConfig from_hex(std::string_view hex, std::size_t n_elements) {
    if (hex.size() != (n_elements + 3) / 4)
        throw FormatError("hex config has " + std::to_string(hex.size()) + " digits, expected " +
                          std::to_string((n_elements + 3) / 4));
    SurfaceConfig config(n_elements);
    for (std::size_t d = 0; d < hex.size(); ++d) {
        const char ch = hex[d];
        unsigned nib = 0;
        if (ch >= '0' && ch <= '9') nib = static_cast<unsigned>(ch - '0');
        else if (ch >= 'a' && ch <= 'f') nib = static_cast<unsigned>(ch - 'a' + 10);
        else if (ch >= 'A' && ch <= 'F') nib = static_cast<unsigned>(ch - 'A' + 10);
        else throw FormatError(std::string("invalid hex digit '") + ch + "'");
        for (std::size_t k = 0; k < 4; ++k) {
            const bool bit = ((nib >> (3 - k)) & 1U) != 0;
            const std::size_t i = 4 * d + k;
            if (i < n_elements) config.set(i, bit);
            else if (bit) throw FormatError("hex config has non-zero padding bits");
        }
    }
    return config;
}

namespace {

json complex_to_json(ChannelCoefficient c) { return json::array({c.real(), c.imag()}); }

ChannelCoefficient complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw FormatError("complex value must be [re, im]");
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    return j.contains(key) ? j.at(key).get<T>() : fallback;
}

json point_to_json(const Point3& p) { return json::array({p[0], p[1], p[2]}); }

Point3 point_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) throw FormatError("point must be [x, y, z] in meters");
    return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

const char* center_name(CenterStatistic c) { return c == CenterStatistic::kMedian ? "median" : "mean"; }

} // namespace

json environment_to_json(const Environment& env) {
    json j;
    j["h_z"] = complex_to_json(env.h_z());
    json h = json::array();
    for (auto c : env.h()) h.push_back(complex_to_json(c));
    j["h"] = std::move(h);
    json inter = json::array();
    for (const auto& t : env.interactions()) inter.push_back(json::array({t.i, t.j, t.g.real(), t.g.imag()}));
    j["interactions"] = std::move(inter);
    j["noise_floor_power"] = env.noise_floor_power();
    return j;
}

Environment environment_from_json(const json& j) {
    try {
        const auto h_z = complex_from_json(j.at("h_z"));
        std::vector<ChannelCoefficient> h;
        for (const auto& c : j.at("h")) h.push_back(complex_from_json(c));
        std::vector<Interaction> inter;
        if (j.contains("interactions"))
            for (const auto& t : j.at("interactions")) {
                if (!t.is_array() || t.size() != 4) throw FormatError("interaction must be [i, j, re, im]");
                inter.push_back({t.at(0).get<std::size_t>(), t.at(1).get<std::size_t>(),
                                 {t.at(2).get<double>(), t.at(3).get<double>()}});
            }
        return Environment(h_z, std::move(h), std::move(inter), get_or(j, "noise_floor_power", 1.0));
    } catch (const json::exception& e) {
        throw FormatError(std::string("environment JSON: ") + e.what());
    }
}

json noise_to_json(const NoiseModel& noise) {
    return json{{"rel_sigma_db", noise.rel_sigma_db},
                {"outlier_prob", noise.outlier_prob},
                {"outlier_scale_db", noise.outlier_scale_db},
                {"phase_sigma_rad", noise.phase_sigma_rad},
                {"seed", noise.seed}};
}

NoiseModel noise_from_json(const json& j) {
    NoiseModel n;
    n.rel_sigma_db = get_or(j, "rel_sigma_db", 0.0);
    n.outlier_prob = get_or(j, "outlier_prob", 0.0);
    n.outlier_scale_db = get_or(j, "outlier_scale_db", 0.0);
    n.phase_sigma_rad = get_or(j, "phase_sigma_rad", 0.0);
    n.seed = get_or<std::uint64_t>(j, "seed", 0);
    n.validate();
    return n;
}

json controller_params_to_json(const ControllerParams& p) {
    return json{{"batch_size", p.batch_size},
                {"confidence", p.confidence},
                {"budget", p.budget},
                {"center_statistic", center_name(p.center_statistic)},
                {"seed", p.seed}};
}

ControllerParams controller_params_from_json(const json& j) {
    ControllerParams p;
    p.batch_size = get_or<std::int64_t>(j, "batch_size", p.batch_size);
    p.confidence = get_or(j, "confidence", p.confidence);
    p.budget = get_or<std::int64_t>(j, "budget", p.budget);
    const auto center = get_or<std::string>(j, "center_statistic", "median");
    if (center == "median") p.center_statistic = CenterStatistic::kMedian;
    else if (center == "mean") p.center_statistic = CenterStatistic::kMean;
    else throw FormatError("center_statistic must be \"mean\" or \"median\"");
    p.seed = get_or<std::uint64_t>(j, "seed", 0);
    return p;
}

json iid_spec_to_json(const IidEnvSpec& s) {
    return json{{"n_elements", s.n_elements},
                {"element_sigma", s.element_sigma},
                {"baseline_magnitude", s.baseline_magnitude},
                {"noise_floor_power", s.noise_floor_power},
                {"seed", s.seed}};
}

IidEnvSpec iid_spec_from_json(const json& j) {
    IidEnvSpec s;
    s.n_elements = get_or<std::size_t>(j, "n_elements", s.n_elements);
    s.element_sigma = get_or(j, "element_sigma", s.element_sigma);
    s.baseline_magnitude = get_or(j, "baseline_magnitude", s.baseline_magnitude);
    s.noise_floor_power = get_or(j, "noise_floor_power", s.noise_floor_power);
    s.seed = get_or<std::uint64_t>(j, "seed", 0);
    return s;
}

json scene_to_json(const GeometricScene& s) {
    json j;
    j["wavelength_m"] = s.wavelength;
    j["grid"] = {{"rows", s.grid.rows},
                 {"cols", s.grid.cols},
                 {"row_spacing_m", s.grid.row_spacing},
                 {"col_spacing_m", s.grid.col_spacing}};
    json pos = json::array();
    for (const auto& p : s.element_positions) pos.push_back(point_to_json(p));
    j["positions_m"] = std::move(pos);
    j["tx_m"] = point_to_json(s.tx);
    j["rx_m"] = point_to_json(s.rx);
    j["element_reflectivity"] = s.element_reflectivity;
    j["direct_path_gain"] = s.direct_path_gain;
    json extra = json::array();
    for (const auto& r : s.extra_paths) extra.push_back({{"length_m", r.length}, {"gain", r.gain}});
    j["extra_paths"] = std::move(extra);
    j["noise_floor_power"] = s.noise_floor_power;
    return j;
}

GeometricScene scene_from_json(const json& j) {
    try {
        GeometricScene s;
        s.wavelength = j.at("wavelength_m").get<double>();
        const auto& g = j.at("grid");
        s.grid.rows = g.at("rows").get<std::size_t>();
        s.grid.cols = g.at("cols").get<std::size_t>();
        s.grid.row_spacing = g.at("row_spacing_m").get<double>();
        s.grid.col_spacing = g.at("col_spacing_m").get<double>();
        if (j.contains("positions_m")) {
            for (const auto& p : j.at("positions_m")) s.element_positions.push_back(point_from_json(p));
        } else {
            s.element_positions = planar_grid(point_from_json(j.at("center_m")), s.grid);
        }
        s.tx = point_from_json(j.at("tx_m"));
        s.rx = point_from_json(j.at("rx_m"));
        s.element_reflectivity = get_or(j, "element_reflectivity", 1.0);
        s.direct_path_gain = get_or(j, "direct_path_gain", 1.0);
        if (j.contains("extra_paths"))
            for (const auto& r : j.at("extra_paths"))
                s.extra_paths.push_back({r.at("length_m").get<double>(), r.at("gain").get<double>()});
        s.noise_floor_power = get_or(j, "noise_floor_power", 1.0);
        validate_scene(s);
        return s;
    } catch (const json::exception& e) {
        throw FormatError(std::string("scene JSON: ") + e.what());
    }
}

json report_to_json(const OptimizationReport& r) {
    json traj = json::array();
    for (const auto& t : r.trajectory) traj.push_back(json::array({t.measurements_used, t.best_so_far_ratio}));
    return json{{"n_elements", r.best_config.size()},
                {"best_config", to_hex(r.best_config)},
                {"best_config_complement_candidate", to_hex(r.best_config_complement_candidate)},
                {"achieved_ratio", r.achieved_ratio},
                {"trajectory", std::move(traj)},
                {"fixed_at", r.fixed_at},
                {"seed", r.seed},
                {"total_measurements", r.total_measurements},
                {"batches", r.batches}};
}

OptimizationReport report_from_json(const json& j, std::size_t n_elements) {
    try {
        OptimizationReport r;
        r.best_config = from_hex(j.at("best_config").get<std::string>(), n_elements);
        r.best_config_complement_candidate =
            from_hex(j.at("best_config_complement_candidate").get<std::string>(), n_elements);
        r.achieved_ratio = j.at("achieved_ratio").get<double>();
        for (const auto& t : j.at("trajectory"))
            r.trajectory.push_back({t.at(0).get<std::int64_t>(), t.at(1).get<double>()});
        r.fixed_at = j.at("fixed_at").get<std::vector<std::int64_t>>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.total_measurements = j.at("total_measurements").get<std::int64_t>();
        r.batches = get_or<std::int64_t>(j, "batches", 0);
        return r;
    } catch (const json::exception& e) {
        throw FormatError(std::string("report JSON: ") + e.what());
    }
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

} // namespace rfsurf
