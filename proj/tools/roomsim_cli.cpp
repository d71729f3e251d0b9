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
#include "roomsim/harness.hpp"
#include "roomsim/theory.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace
{

    struct CommonArgs
    {
        std::string config_path;
        std::string model;
        std::int64_t runs = -1;
        std::int64_t seed = -1;
        std::string out;
        bool dump_realizations = false;
        std::vector<std::string> overrides;
    };

    void add_common_options(CLI::App *cmd, CommonArgs &args)
    {
        cmd->add_option("--config", args.config_path, "configuration file (key=value lines)")
            ->check(CLI::ExistingFile);
        cmd->add_option("--model", args.model, "channel model: ms, poisson, constant or quadratic");
        cmd->add_option("--runs", args.runs, "number of realizations")->check(CLI::NonNegativeNumber);
        cmd->add_option("--seed", args.seed, "master seed")->check(CLI::NonNegativeNumber);
        cmd->add_option("--out", args.out, "output directory");
        cmd->add_flag("--dump-realizations", args.dump_realizations, "write every realization as CSV");
        cmd->add_option("--set", args.overrides, "extra key=value configuration override")
            ->type_name("KEY=VALUE");
    }

    roomsim::config::SimulationConfig make_config(const CommonArgs &args)
    {
        roomsim::config::SimulationConfig config;
        if (!args.config_path.empty())
            config = roomsim::config::parse_config_file(args.config_path);
        if (!args.model.empty())
            config.model = args.model;
        if (args.runs >= 0)
            config.runs = static_cast<std::uint64_t>(args.runs);
        if (args.seed >= 0)
            config.seed = static_cast<std::uint64_t>(args.seed);
        if (!args.out.empty())
            config.out = args.out;
        if (args.dump_realizations)
            config.dump_realizations = true;
        for (const auto &kv : args.overrides)
        {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("--set expects KEY=VALUE, got: " + kv);
            roomsim::config::apply_key_value(config, kv.substr(0, eq), kv.substr(eq + 1));
        }
        config.validate();
        return config;
    }

    std::string fmt(double v)
    {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.12g", v);
        return buf;
    }

    std::ofstream open_out(const std::filesystem::path &path)
    {
        std::ofstream out(path);
        if (!out)
            throw std::runtime_error("cannot open output file: " + path.string());
        return out;
    }

    int command_run(const CommonArgs &args)
    {
        const auto config = make_config(args);
        const auto result = roomsim::harness::run_experiment(config);
        std::cout << "wrote " << result.out_dir.string() << ":";
        for (const auto &f : result.files)
            std::cout << " " << f;
        std::cout << "\n";
        return 0;
    }

    int command_theory(const CommonArgs &args)
    {
        const auto config = make_config(args);
        const std::filesystem::path out_dir(config.out);
        std::filesystem::create_directories(out_dir);

        const auto pulse = config.pulse();
        const auto marks = config.mark_model();
        const auto rate = config.rate_model();
        const double reverb = config.reverberation_time();
        const double a = config.scale_a();
        const double volume = config.room().volume();
        const double c = config.speed_of_light;
        const double shape = roomsim::synthesis::pulse_shape_factor(pulse);

        Eigen::ArrayXd t(config.bins());
        for (Eigen::Index i = 0; i < t.size(); ++i)
            t[i] = static_cast<double>(i) / config.sample_rate;

        {
            auto out = open_out(out_dir / "theory_profiles.csv");
            out << "time_ns,power_delay_spectrum_per_m2s,expected_power_per_m2s,kurtosis,kurtosis_high_bw,"
                   "arrival_rate_per_ns,mean_count\n";
            const Eigen::ArrayXd power = roomsim::theory::expected_received_power(t, pulse, marks, rate);
            const Eigen::ArrayXd kurt = roomsim::theory::kurtosis_delay_profile(t, pulse, marks, rate);
            for (Eigen::Index i = 1; i < t.size(); ++i)
                out << fmt(t[i] * 1e9) << ","
                    << fmt(roomsim::theory::power_delay_spectrum(t[i], volume, reverb, c)) << ","
                    << fmt(power[i]) << "," << fmt(kurt[i]) << ","
                    << fmt(roomsim::theory::kurtosis_high_bandwidth(t[i], marks.mark_kurtosis(), shape, rate))
                    << "," << fmt(rate.rate(t[i]) * 1e-9) << "," << fmt(rate.mean_count(t[i])) << "\n";
        }

        {
            auto out = open_out(out_dir / "theory_order_statistics.csv");
            out << "order,delay_ns,cdf\n";
            for (const int n : {1, 2, 3, 5, 10, 20, 50, 100})
                for (Eigen::Index i = 1; i < t.size(); i += 4)
                    out << n << "," << fmt(t[i] * 1e9) << ","
                        << fmt(roomsim::theory::order_statistic_cdf(n, t[i], a)) << "\n";
        }

        {
            auto out = open_out(out_dir / "theory_residual.csv");
            out << "order,residual_ratio,asymptotic_ratio\n";
            for (int n = 1; n <= 1000; n = n < 10 ? n + 1 : n + (n < 100 ? 10 : 100))
                out << n << "," << fmt(roomsim::theory::residual_power_ratio(n, a, reverb)) << ","
                    << fmt(roomsim::theory::residual_power_ratio_asymptotic(n, a, reverb)) << "\n";
        }

        std::cout << "wrote " << out_dir.string()
                  << ": theory_profiles.csv theory_order_statistics.csv theory_residual.csv\n";
        return 0;
    }

    int command_sample(const CommonArgs &args, std::int64_t count)
    {
        auto config = make_config(args);
        const std::filesystem::path out_dir(config.out);
        std::filesystem::create_directories(out_dir);

        for (std::int64_t i = 0; i < count; ++i)
        {
            const auto realization =
                roomsim::config::sample_channel(config, static_cast<std::uint64_t>(i));
            char name[32];
            std::snprintf(name, sizeof(name), "run_%05lld.csv", static_cast<long long>(i));
            auto out = open_out(out_dir / name);
            roomsim::harness::write_realization_csv(out, realization);
            std::cout << name << ": " << realization.paths.size() << " paths\n";
        }
        return 0;
    }

}

int main(int argc, char **argv)
{
    CLI::App app{"in-room radio channel simulation and analysis"};
    app.require_subcommand(1);

    CommonArgs run_args, theory_args, sample_args;
    std::int64_t sample_count = 1;

    auto *run_cmd = app.add_subcommand("run", "simulate an ensemble and write summary CSVs");
    add_common_options(run_cmd, run_args);

    auto *theory_cmd = app.add_subcommand("theory", "write closed-form reference curves");
    add_common_options(theory_cmd, theory_args);

    auto *sample_cmd = app.add_subcommand("sample", "draw single realizations and write them as CSV");
    add_common_options(sample_cmd, sample_args);
    sample_cmd->add_option("--count", sample_count, "number of realizations to draw")
        ->check(CLI::PositiveNumber);

    try
    {
        app.parse(argc, argv);
        if (run_cmd->parsed())
            return command_run(run_args);
        if (theory_cmd->parsed())
            return command_theory(theory_args);
        if (sample_cmd->parsed())
            return command_sample(sample_args, sample_count);
        return 1;
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
