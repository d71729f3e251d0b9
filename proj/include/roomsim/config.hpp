// SPDX-License-Identifier: Apache-2.0
//
// roomsim c++ toolkit for in-room radio channel simulation and analysis
// Copyright (C) 2026 the roomsim authors
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

#ifndef roomsim_config_H
#define roomsim_config_H

#include "roomsim/geometry.hpp"
#include "roomsim/pointprocess.hpp"
#include "roomsim/synthesis.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace roomsim
{
    namespace config
    {

        // Full experiment description. Parsed from flat key=value text; every
        // field has a working default, so an empty config is valid.
        struct SimulationConfig
        {
            // room and materials
            double room_lx = 5.0;   // m
            double room_ly = 5.0;   // m
            double room_lz = 3.0;   // m
            double wall_gain = 0.6; // mean power gain per wall bounce, (0, 1)
            double gamma_sq = 0.4;  // wall-visit variance factor

            // radio
            double wavelength = 0.03;      // m
            double bandwidth = 2e9;        // Hz
            double speed_of_light = geometry::default_speed_of_light;
            double omega_t = 1.0;          // transmit footprint fraction, (0, 1]
            double omega_r = 1.0;          // receive footprint fraction, (0, 1]

            // channel model
            std::string model = "ms";   // ms | poisson | constant | quadratic
            double tau_max = 100e-9;    // s
            double tau_min = 0.0;       // s, arrival window floor (point-process models)
            double rho0 = 0.0;          // 1/s, constant model; 0 = omega_t omega_r 150 / tau_max
            double eta = 0.0;           // 1/s^3, quadratic model; 0 = 4 pi c^3 omega_t omega_r / V
            double min_separation = 0.1; // m, terminal placement (ms model)
            bool random_phase = false;  // ms model: uniform phases instead of geometric ones

            // synthesis
            double sample_rate = 8e9;     // Hz
            double pulse_duration = 0.0;  // s, 0 = 2 / bandwidth
            bool unit_energy_pulse = true;
            bool band_limited = false;    // windowed-sinc fractional-delay placement

            // execution
            std::uint64_t runs = 10000;
            std::uint64_t seed = 1;
            std::uint64_t threads = 1;
            std::string out = "out";
            bool dump_realizations = false;

            // Throws std::invalid_argument naming the offending key
            void validate() const;

            geometry::Room room() const { return {room_lx, room_ly, room_lz}; }
            double reverberation_time() const;
            double scale_a() const;
            double rho0_value() const; // rho0 with the default applied
            double eta_value() const;  // eta with the default applied
            double pulse_duration_value() const;
            double t_end() const; // tau_max + pulse duration
            Eigen::Index bins() const;

            pointprocess::RateModel rate_model() const;
            pointprocess::MarkModel mark_model() const;
            pointprocess::MirrorSourceOptions mirror_options() const;
            synthesis::SampledSignal pulse() const;

            // All keys with their current values, in canonical order
            std::vector<std::pair<std::string, std::string>> to_key_values() const;
        };

        // Set one field by key. Unknown keys and malformed values throw
        // std::invalid_argument naming the key. Does not validate.
        void apply_key_value(SimulationConfig &config, const std::string &key, const std::string &value);

        // Parse key=value lines ('#' starts a comment, blank lines ignored).
        // Unknown or duplicate keys and malformed values throw
        // std::invalid_argument naming the key; the result is validated.
        SimulationConfig parse_config(const std::string &text);

        // Same, reading the file at path
        SimulationConfig parse_config_file(const std::string &path);

        // Canonical key=value rendering; parse_config(render_config(c)) == c
        std::string render_config(const SimulationConfig &config);

        // Draw one channel realization for the given run index; every index owns
        // an independent substream of the master seed
        pointprocess::ChannelRealization sample_channel(const SimulationConfig &config, std::uint64_t run_index);

    }
}

#endif
