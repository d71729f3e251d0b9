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

#include "roomsim/config.hpp"
#include "roomsim/theory.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace roomsim
{
    namespace config
    {

        namespace
        {
            std::string trim(const std::string &s)
            {
                const auto begin = s.find_first_not_of(" \t\r");
                if (begin == std::string::npos)
                    return {};
                const auto end = s.find_last_not_of(" \t\r");
                return s.substr(begin, end - begin + 1);
            }

            double parse_double(const std::string &key, const std::string &value)
            {
                try
                {
                    std::size_t used = 0;
                    const double v = std::stod(value, &used);
                    if (used != value.size())
                        throw std::invalid_argument("");
                    return v;
                }
                catch (const std::exception &)
                {
                    throw std::invalid_argument("configuration key " + key + ": not a number: " + value);
                }
            }

            std::uint64_t parse_uint(const std::string &key, const std::string &value)
            {
                std::uint64_t v = 0;
                const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
                if (ec != std::errc{} || ptr != value.data() + value.size())
                    throw std::invalid_argument("configuration key " + key + ": not a nonnegative integer: " + value);
                return v;
            }

            bool parse_bool(const std::string &key, const std::string &value)
            {
                if (value == "true" || value == "1")
                    return true;
                if (value == "false" || value == "0")
                    return false;
                throw std::invalid_argument("configuration key " + key + ": not a boolean: " + value);
            }

            std::string format_double(double v)
            {
                char buf[32];
                std::snprintf(buf, sizeof(buf), "%.17g", v);
                return buf;
            }

            void require(bool ok, const std::string &message)
            {
                if (!ok)
                    throw std::invalid_argument("configuration key " + message);
            }
        }

        void SimulationConfig::validate() const
        {
            require(room_lx > 0.0, "room_lx: must be > 0");
            require(room_ly > 0.0, "room_ly: must be > 0");
            require(room_lz > 0.0, "room_lz: must be > 0");
            require(wall_gain > 0.0 && wall_gain < 1.0, "wall_gain: must be in (0, 1)");
            require(gamma_sq >= 0.0, "gamma_sq: must be >= 0");
            require(wavelength > 0.0, "wavelength: must be > 0");
            require(bandwidth > 0.0, "bandwidth: must be > 0");
            require(speed_of_light > 0.0, "speed_of_light: must be > 0");
            require(omega_t > 0.0 && omega_t <= 1.0, "omega_t: must be in (0, 1]");
            require(omega_r > 0.0 && omega_r <= 1.0, "omega_r: must be in (0, 1]");
            require(model == "ms" || model == "poisson" || model == "constant" || model == "quadratic",
                    "model: must be one of ms, poisson, constant, quadratic");
            require(tau_max > 0.0, "tau_max: must be > 0");
            require(tau_min >= 0.0 && tau_min < tau_max, "tau_min: must be in [0, tau_max)");
            require(rho0 >= 0.0, "rho0: must be >= 0");
            require(eta >= 0.0, "eta: must be >= 0");
            require(min_separation >= 0.0, "min_separation: must be >= 0");
            require(sample_rate > 0.0, "sample_rate: must be > 0");
            require(pulse_duration >= 0.0, "pulse_duration: must be >= 0");
            require(runs >= 1, "runs: must be >= 1");
            require(threads >= 1, "threads: must be >= 1");
            require(!out.empty(), "out: must not be empty");
        }

        double SimulationConfig::reverberation_time() const
        {
            return theory::reverberation_time(room(), wall_gain, gamma_sq, speed_of_light);
        }

        double SimulationConfig::scale_a() const
        {
            return theory::order_statistic_scale(room().volume(), omega_t, omega_r, speed_of_light);
        }

        double SimulationConfig::rho0_value() const
        {
            return rho0 > 0.0 ? rho0 : omega_t * omega_r * 150.0 / tau_max;
        }

        double SimulationConfig::eta_value() const
        {
            if (eta > 0.0)
                return eta;
            const double c = speed_of_light;
            return 4.0 * std::numbers::pi * c * c * c * omega_t * omega_r / room().volume();
        }

        double SimulationConfig::pulse_duration_value() const
        {
            return pulse_duration > 0.0 ? pulse_duration : 2.0 / bandwidth;
        }

        double SimulationConfig::t_end() const
        {
            return tau_max + pulse_duration_value();
        }

        Eigen::Index SimulationConfig::bins() const
        {
            return static_cast<Eigen::Index>(std::ceil(t_end() * sample_rate)) + 1;
        }

        pointprocess::RateModel SimulationConfig::rate_model() const
        {
            pointprocess::RateModel rate;
            if (model == "ms")
                rate.kind = pointprocess::RateModel::Kind::mirror_source;
            else if (model == "poisson")
                rate.kind = pointprocess::RateModel::Kind::quadratic_poisson;
            else if (model == "constant")
                rate.kind = pointprocess::RateModel::Kind::constant_rate;
            else if (model == "quadratic")
                rate.kind = pointprocess::RateModel::Kind::quadratic_empirical;
            else
                throw std::invalid_argument("configuration key model: unknown model " + model);
            rate.volume = room().volume();
            rate.omega_t = omega_t;
            rate.omega_r = omega_r;
            rate.c = speed_of_light;
            rate.rho0 = rho0_value();
            rate.eta = eta_value();
            return rate;
        }

        pointprocess::MarkModel SimulationConfig::mark_model() const
        {
            pointprocess::MarkModel marks;
            marks.family = pointprocess::MarkModel::Family::circular_gaussian;
            const auto rate = rate_model();
            const double volume = room().volume();
            const double reverb = reverberation_time();
            const double c = speed_of_light;
            marks.second_moment = [rate, volume, reverb, c](double tau) {
                return theory::power_delay_spectrum(tau, volume, reverb, c) / rate.rate(tau);
            };
            return marks;
        }

        pointprocess::MirrorSourceOptions SimulationConfig::mirror_options() const
        {
            pointprocess::MirrorSourceOptions options;
            options.room = room();
            options.omega_t = omega_t;
            options.omega_r = omega_r;
            options.wall_gain = wall_gain;
            options.wavelength = wavelength;
            options.c = speed_of_light;
            options.tau_max = tau_max;
            options.min_separation = min_separation;
            options.random_phase = random_phase;
            return options;
        }

        synthesis::SampledSignal SimulationConfig::pulse() const
        {
            return synthesis::hamming_pulse(bandwidth, sample_rate, unit_energy_pulse, pulse_duration);
        }

        std::vector<std::pair<std::string, std::string>> SimulationConfig::to_key_values() const
        {
            std::vector<std::pair<std::string, std::string>> kv;
            kv.emplace_back("room_lx", format_double(room_lx));
            kv.emplace_back("room_ly", format_double(room_ly));
            kv.emplace_back("room_lz", format_double(room_lz));
            kv.emplace_back("wall_gain", format_double(wall_gain));
            kv.emplace_back("gamma_sq", format_double(gamma_sq));
            kv.emplace_back("wavelength", format_double(wavelength));
            kv.emplace_back("bandwidth", format_double(bandwidth));
            kv.emplace_back("speed_of_light", format_double(speed_of_light));
            kv.emplace_back("omega_t", format_double(omega_t));
            kv.emplace_back("omega_r", format_double(omega_r));
            kv.emplace_back("model", model);
            kv.emplace_back("tau_max", format_double(tau_max));
            kv.emplace_back("tau_min", format_double(tau_min));
            kv.emplace_back("rho0", format_double(rho0));
            kv.emplace_back("eta", format_double(eta));
            kv.emplace_back("min_separation", format_double(min_separation));
            kv.emplace_back("random_phase", random_phase ? "true" : "false");
            kv.emplace_back("sample_rate", format_double(sample_rate));
            kv.emplace_back("pulse_duration", format_double(pulse_duration));
            kv.emplace_back("unit_energy_pulse", unit_energy_pulse ? "true" : "false");
            kv.emplace_back("band_limited", band_limited ? "true" : "false");
            kv.emplace_back("runs", std::to_string(runs));
            kv.emplace_back("seed", std::to_string(seed));
            kv.emplace_back("threads", std::to_string(threads));
            kv.emplace_back("out", out);
            kv.emplace_back("dump_realizations", dump_realizations ? "true" : "false");
            return kv;
        }

        void apply_key_value(SimulationConfig &config, const std::string &key, const std::string &value)
        {
            if (key == "room_lx")
                config.room_lx = parse_double(key, value);
            else if (key == "room_ly")
                config.room_ly = parse_double(key, value);
            else if (key == "room_lz")
                config.room_lz = parse_double(key, value);
            else if (key == "wall_gain")
                config.wall_gain = parse_double(key, value);
            else if (key == "gamma_sq")
                config.gamma_sq = parse_double(key, value);
            else if (key == "wavelength")
                config.wavelength = parse_double(key, value);
            else if (key == "bandwidth")
                config.bandwidth = parse_double(key, value);
            else if (key == "speed_of_light")
                config.speed_of_light = parse_double(key, value);
            else if (key == "omega_t")
                config.omega_t = parse_double(key, value);
            else if (key == "omega_r")
                config.omega_r = parse_double(key, value);
            else if (key == "model")
                config.model = value;
            else if (key == "tau_max")
                config.tau_max = parse_double(key, value);
            else if (key == "tau_min")
                config.tau_min = parse_double(key, value);
            else if (key == "rho0")
                config.rho0 = parse_double(key, value);
            else if (key == "eta")
                config.eta = parse_double(key, value);
            else if (key == "min_separation")
                config.min_separation = parse_double(key, value);
            else if (key == "random_phase")
                config.random_phase = parse_bool(key, value);
            else if (key == "sample_rate")
                config.sample_rate = parse_double(key, value);
            else if (key == "pulse_duration")
                config.pulse_duration = parse_double(key, value);
            else if (key == "unit_energy_pulse")
                config.unit_energy_pulse = parse_bool(key, value);
            else if (key == "band_limited")
                config.band_limited = parse_bool(key, value);
            else if (key == "runs")
                config.runs = parse_uint(key, value);
            else if (key == "seed")
                config.seed = parse_uint(key, value);
            else if (key == "threads")
                config.threads = parse_uint(key, value);
            else if (key == "out")
                config.out = value;
            else if (key == "dump_realizations")
                config.dump_realizations = parse_bool(key, value);
            else
                throw std::invalid_argument("unknown configuration key: " + key);
        }

        SimulationConfig parse_config(const std::string &text)
        {
            SimulationConfig config;
            std::set<std::string> seen;
            std::istringstream stream(text);
            std::string line;
            while (std::getline(stream, line))
            {
                const auto hash = line.find('#');
                if (hash != std::string::npos)
                    line = line.substr(0, hash);
                line = trim(line);
                if (line.empty())
                    continue;
                const auto eq = line.find('=');
                if (eq == std::string::npos)
                    throw std::invalid_argument("configuration line without '=': " + line);
                const std::string key = trim(line.substr(0, eq));
                const std::string value = trim(line.substr(eq + 1));
                if (key.empty())
                    throw std::invalid_argument("configuration line with empty key: " + line);
                if (!seen.insert(key).second)
                    throw std::invalid_argument("duplicate configuration key: " + key);
                apply_key_value(config, key, value);
            }
            config.validate();
            return config;
        }

        SimulationConfig parse_config_file(const std::string &path)
        {
            std::ifstream file(path);
            if (!file)
                throw std::invalid_argument("cannot open config file: " + path);
            std::ostringstream buffer;
            buffer << file.rdbuf();
            return parse_config(buffer.str());
        }

        std::string render_config(const SimulationConfig &config)
        {
            std::ostringstream out;
            for (const auto &[key, value] : config.to_key_values())
                out << key << "=" << value << "\n";
            return out.str();
        }

        pointprocess::ChannelRealization sample_channel(const SimulationConfig &config, std::uint64_t run_index)
        {
            auto rng = pointprocess::substream(config.seed, 0, run_index);
            pointprocess::ChannelRealization real;
            if (config.model == "ms")
                real = pointprocess::sample_mirror_source_channel(config.mirror_options(), rng);
            else
                real = pointprocess::sample_poisson_channel(config.rate_model(), config.mark_model(),
                                                            config.tau_max, rng, config.tau_min);
            real.run_index = run_index;
            return real;
        }

    }
}
