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

#include "roomsim/harness.hpp"
#include "roomsim/theory.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace roomsim
{
    namespace harness
    {

        namespace
        {
            constexpr std::size_t block_size = 64;

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

            struct BlockStats
            {
                estimators::Ensemble ensemble;
                Eigen::ArrayXd residual_sum;
                double total_sum = 0.0;
            };

            void dump_one(const std::filesystem::path &dir, std::uint64_t index,
                          const pointprocess::ChannelRealization &realization)
            {
                char name[32];
                std::snprintf(name, sizeof(name), "run_%05llu.csv",
                              static_cast<unsigned long long>(index));
                auto out = open_out(dir / name);
                write_realization_csv(out, realization);
            }

            // Smallest tau with order_statistic_cdf(n, tau, a) >= p
            double order_statistic_quantile(int n, double p, double scale_a)
            {
                double lo = 0.0;
                double hi = scale_a * (std::cbrt(static_cast<double>(n)) + 2.0);
                while (theory::order_statistic_cdf(n, hi, scale_a) < p)
                    hi *= 2.0;
                for (int i = 0; i < 200; ++i)
                {
                    const double mid = 0.5 * (lo + hi);
                    if (theory::order_statistic_cdf(n, mid, scale_a) < p)
                        lo = mid;
                    else
                        hi = mid;
                }
                return hi;
            }

            double nearest_rank_quantile(const std::vector<double> &sorted, double p)
            {
                if (sorted.empty())
                    return 0.0;
                const auto n = sorted.size();
                auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
                rank = std::min(std::max<std::size_t>(rank, 1), n);
                return sorted[rank - 1];
            }
        }

        std::vector<int> default_residual_orders()
        {
            return {1, 2, 5, 10, 20, 50, 100, 200, 500, 1000};
        }

        BuildResult build_ensemble(const config::SimulationConfig &config, std::size_t max_orders,
                                   std::vector<int> residual_orders, const std::filesystem::path &dump_dir)
        {
            config.validate();
            const auto pulse = config.pulse();
            const auto bins = config.bins();
            const double t_end = config.t_end();
            const auto n_orders = static_cast<Eigen::Index>(residual_orders.size());

            const std::size_t n_blocks = (config.runs + block_size - 1) / block_size;
            std::vector<BlockStats> blocks(n_blocks);

            std::atomic<std::size_t> next_block{0};
            std::mutex error_mutex;
            std::exception_ptr error;

            auto worker = [&]() {
                try
                {
                    for (;;)
                    {
                        const std::size_t b = next_block.fetch_add(1);
                        if (b >= n_blocks)
                            return;
                        BlockStats stats;
                        stats.ensemble = estimators::Ensemble(bins, config.sample_rate, max_orders);
                        stats.residual_sum = Eigen::ArrayXd::Zero(n_orders);

                        const std::uint64_t first = b * block_size;
                        const std::uint64_t last = std::min<std::uint64_t>(first + block_size, config.runs);
                        for (std::uint64_t i = first; i < last; ++i)
                        {
                            const auto realization = config::sample_channel(config, i);
                            const auto y = synthesis::synthesize(realization.paths, pulse, t_end,
                                                                 config.band_limited);
                            stats.ensemble.add(realization, synthesis::power_profile(y));

                            const auto split = estimators::residual_power_split(realization, residual_orders);
                            for (Eigen::Index j = 0; j < n_orders; ++j)
                                stats.residual_sum[j] += split.residual[static_cast<std::size_t>(j)];
                            stats.total_sum += split.total;

                            if (!dump_dir.empty())
                                dump_one(dump_dir, i, realization);
                        }
                        blocks[b] = std::move(stats);
                    }
                }
                catch (...)
                {
                    const std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                }
            };

            const std::size_t n_threads = std::min<std::size_t>(config.threads, n_blocks);
            std::vector<std::thread> pool;
            pool.reserve(n_threads);
            for (std::size_t i = 0; i < n_threads; ++i)
                pool.emplace_back(worker);
            for (auto &thread : pool)
                thread.join();
            if (error)
                std::rethrow_exception(error);

            BuildResult result;
            result.ensemble = estimators::Ensemble(bins, config.sample_rate, max_orders);
            result.residual_orders = std::move(residual_orders);
            result.residual_aggregate = Eigen::ArrayXd::Zero(n_orders);
            result.residual_se = Eigen::ArrayXd::Zero(n_orders);

            Eigen::ArrayXd residual_total = Eigen::ArrayXd::Zero(n_orders);
            double power_total = 0.0;
            for (auto &stats : blocks)
            {
                result.ensemble.merge(std::move(stats.ensemble));
                residual_total += stats.residual_sum;
                power_total += stats.total_sum;
            }
            if (power_total > 0.0)
                result.residual_aggregate = residual_total / power_total;

            if (n_blocks > 1)
            {
                Eigen::ArrayXd mean = Eigen::ArrayXd::Zero(n_orders);
                Eigen::ArrayXd sq = Eigen::ArrayXd::Zero(n_orders);
                std::size_t used = 0;
                for (const auto &stats : blocks)
                {
                    if (stats.total_sum <= 0.0)
                        continue;
                    const Eigen::ArrayXd r = stats.residual_sum / stats.total_sum;
                    mean += r;
                    sq += r.square();
                    ++used;
                }
                if (used > 1)
                {
                    const double du = static_cast<double>(used);
                    mean /= du;
                    const Eigen::ArrayXd var = (sq / du - mean.square()) * (du / (du - 1.0));
                    result.residual_se = (var / du).max(0.0).sqrt();
                }
            }
            return result;
        }

        void write_realization_csv(std::ostream &out, const pointprocess::ChannelRealization &realization)
        {
            out << "kx,ky,kz,delay_ns,gain_re,gain_im,order\n";
            for (const auto &path : realization.paths)
            {
                if (path.index)
                    out << path.index->kx << "," << path.index->ky << "," << path.index->kz << ",";
                else
                    out << ",,,";
                out << fmt(path.delay * 1e9) << "," << fmt(path.gain.real()) << "," << fmt(path.gain.imag())
                    << ",";
                if (path.index)
                    out << path.index->order();
                out << "\n";
            }
        }

        namespace
        {

            void write_power_csv(const std::filesystem::path &path, const estimators::Ensemble &ensemble,
                                 const Eigen::ArrayXd &theory_power)
            {
                auto out = open_out(path);
                out << "time_ns,mean_power_per_m2s,power_se_per_m2s,theory_power_per_m2s\n";
                const Eigen::ArrayXd mean = ensemble.profile.mean_power();
                const Eigen::ArrayXd se = ensemble.profile.mean_power_se();
                for (Eigen::Index i = 0; i < ensemble.bins(); ++i)
                    out << fmt(ensemble.time_at(i) * 1e9) << "," << fmt(mean[i]) << "," << fmt(se[i]) << ","
                        << fmt(theory_power[i]) << "\n";
            }

            void write_kurtosis_csv(const std::filesystem::path &path, const estimators::Ensemble &ensemble,
                                    const config::SimulationConfig &config, const Eigen::ArrayXd &theory_kurt)
            {
                auto out = open_out(path);
                out << "time_ns,kurtosis,kurtosis_se,theory_kurtosis,theory_kurtosis_high_bw\n";
                const Eigen::ArrayXd kurt = ensemble.profile.kurtosis();
                const Eigen::ArrayXd se = ensemble.profile.kurtosis_se();
                const Eigen::ArrayXd mean = ensemble.profile.mean_power();
                const auto rate = config.rate_model();
                const double shape = synthesis::pulse_shape_factor(config.pulse());
                const double mark_kurt = config.mark_model().mark_kurtosis();
                const double t_min = config.pulse_duration_value();
                for (Eigen::Index i = 0; i < ensemble.bins(); ++i)
                {
                    const double t = ensemble.time_at(i);
                    if (t < t_min || mean[i] <= 0.0)
                        continue;
                    out << fmt(t * 1e9) << "," << fmt(kurt[i]) << "," << fmt(se[i]) << ","
                        << fmt(theory_kurt[i]) << ","
                        << fmt(theory::kurtosis_high_bandwidth(t, mark_kurt, shape, rate)) << "\n";
                }
            }

            void write_count_csv(const std::filesystem::path &path, const estimators::Ensemble &ensemble,
                                 const config::SimulationConfig &config)
            {
                auto out = open_out(path);
                out << "time_ns,mean_count,count_se,theory_count\n";
                const auto curve = estimators::empirical_arrival_counts(ensemble);
                const auto rate = config.rate_model();
                for (Eigen::Index i = 0; i < ensemble.bins(); ++i)
                {
                    const double t = std::min(ensemble.time_at(i), config.tau_max);
                    out << fmt(ensemble.time_at(i) * 1e9) << "," << fmt(curve.mean[i]) << ","
                        << fmt(curve.se[i]) << "," << fmt(rate.mean_count(t)) << "\n";
                }
            }

            void write_order_statistics_csv(const std::filesystem::path &path,
                                            const estimators::Ensemble &ensemble, double scale_a)
            {
                auto out = open_out(path);
                out << "order,probability,empirical_delay_ns,theory_delay_ns\n";
                for (const int n : {1, 2, 3, 5, 10, 20, 50, 100})
                {
                    if (static_cast<std::size_t>(n) > ensemble.max_orders)
                        continue;
                    const auto sample = estimators::order_statistic_samples(ensemble, n);
                    if (sample.empty())
                        continue;
                    for (int pc = 1; pc <= 99; ++pc)
                    {
                        const double p = pc / 100.0;
                        out << n << "," << fmt(p) << "," << fmt(nearest_rank_quantile(sample, p) * 1e9)
                            << "," << fmt(order_statistic_quantile(n, p, scale_a) * 1e9) << "\n";
                    }
                }
            }

            void write_residual_csv(const std::filesystem::path &path, const BuildResult &build,
                                    const config::SimulationConfig &config)
            {
                auto out = open_out(path);
                out << "order,empirical_ratio,ratio_se,theory_ratio,asymptotic_ratio\n";
                const double a = config.scale_a();
                const double reverb = config.reverberation_time();
                for (std::size_t j = 0; j < build.residual_orders.size(); ++j)
                {
                    const int n = build.residual_orders[j];
                    out << n << "," << fmt(build.residual_aggregate[static_cast<Eigen::Index>(j)]) << ","
                        << fmt(build.residual_se[static_cast<Eigen::Index>(j)]) << ","
                        << fmt(theory::residual_power_ratio(n, a, reverb)) << ","
                        << fmt(theory::residual_power_ratio_asymptotic(n, a, reverb)) << "\n";
                }
            }

            void write_cdf_csv(const std::filesystem::path &path, const std::string &column,
                               std::vector<double> values)
            {
                auto out = open_out(path);
                out << column << ",cdf\n";
                std::sort(values.begin(), values.end());
                const double dn = static_cast<double>(values.size());
                for (std::size_t i = 0; i < values.size(); ++i)
                    out << fmt(values[i] * 1e9) << "," << fmt(static_cast<double>(i + 1) / dn) << "\n";
            }

            void write_scatter_csv(const std::filesystem::path &path, const config::SimulationConfig &config)
            {
                auto out = open_out(path);
                out << "set,x_m,y_m\n";

                auto rng = pointprocess::substream(config.seed, 1, 0);
                const auto room = config.room();
                const double radius = config.speed_of_light * config.tau_max;

                Eigen::Vector3d tx_pos, rx_pos;
                int attempts = 0;
                do
                {
                    if (++attempts > 10000)
                        throw std::runtime_error("spatial scatter: could not place terminals apart");
                    tx_pos = pointprocess::uniform_in_room(room, rng);
                    rx_pos = pointprocess::uniform_in_room(room, rng);
                } while ((tx_pos - rx_pos).norm() < config.min_separation);
                const Eigen::Vector3d tx_bore = pointprocess::uniform_direction(rng);
                const Eigen::Vector3d rx_bore = pointprocess::uniform_direction(rng);

                const double ct = geometry::footprint_cos_threshold(config.omega_t);
                const double cr = geometry::footprint_cos_threshold(config.omega_r);

                for (const auto &k : geometry::enumerate_indices(room, rx_pos, radius))
                {
                    if (k.kz != 0)
                        continue;
                    const Eigen::Vector3d src = geometry::mirror_position(tx_pos, k, room);
                    const Eigen::Vector3d d = src - rx_pos;
                    const double dist = d.norm();
                    if (dist > radius || dist == 0.0)
                        continue;
                    out << "mirror," << fmt(src.x()) << "," << fmt(src.y()) << "\n";

                    const Eigen::Vector3d doa = d / dist;
                    if (doa.dot(rx_bore) < cr)
                        continue;
                    const Eigen::Vector3d rev =
                        geometry::mirror_position(rx_pos, geometry::reverse_index(k), room);
                    const Eigen::Vector3d dod = (rev - tx_pos).normalized();
                    if (dod.dot(tx_bore) < ct)
                        continue;
                    out << "visible," << fmt(src.x()) << "," << fmt(src.y()) << "\n";
                }

                geometry::Antenna receiver;
                receiver.position = rx_pos;
                receiver.boresight = rx_bore;
                receiver.omega = config.omega_r;
                for (const auto &p :
                     pointprocess::spatial_poisson_sample(room, receiver, config.omega_t, radius, rng))
                    if (p.z() >= 0.0 && p.z() < room.lz)
                        out << "ppp," << fmt(p.x()) << "," << fmt(p.y()) << "\n";
            }

            void write_manifest(const std::filesystem::path &path, const config::SimulationConfig &config,
                                const std::vector<std::string> &files)
            {
                nlohmann::json j;
                for (const auto &[key, value] : config.to_key_values())
                    j["config"][key] = value;
                j["derived"]["reverberation_time_s"] = config.reverberation_time();
                j["derived"]["kuttruff_correction"] = theory::kuttruff_correction(config.wall_gain, config.gamma_sq);
                j["derived"]["arrival_scale_s"] = config.scale_a();
                j["derived"]["rho0_per_s"] = config.rho0_value();
                j["derived"]["eta_per_s3"] = config.eta_value();
                j["derived"]["mean_count_tau_max"] = config.rate_model().mean_count(config.tau_max);
                j["derived"]["pulse_duration_s"] = config.pulse_duration_value();
                j["derived"]["pulse_shape_factor_per_s"] = synthesis::pulse_shape_factor(config.pulse());
                j["derived"]["grid_bins"] = config.bins();
                j["derived"]["grid_end_s"] = config.t_end();
                j["files"] = files;
                j["version"] = "0.1.0";

                auto out = open_out(path);
                out << j.dump(2) << "\n";
            }

        }

        ExperimentResult run_experiment(const config::SimulationConfig &config)
        {
            config.validate();
            const std::filesystem::path out_dir(config.out);
            std::filesystem::create_directories(out_dir);
            std::filesystem::path dump_dir;
            if (config.dump_realizations)
            {
                dump_dir = out_dir / "realizations";
                std::filesystem::create_directories(dump_dir);
            }

            const auto build = build_ensemble(config, 100, default_residual_orders(), dump_dir);
            const auto &ensemble = build.ensemble;

            Eigen::ArrayXd t(ensemble.bins());
            for (Eigen::Index i = 0; i < t.size(); ++i)
                t[i] = ensemble.time_at(i);
            const auto marks = config.mark_model();
            const auto rate = config.rate_model();
            const auto pulse = config.pulse();
            const Eigen::ArrayXd theory_power = theory::expected_received_power(t, pulse, marks, rate);
            const Eigen::ArrayXd theory_kurt = theory::kurtosis_delay_profile(t, pulse, marks, rate);

            ExperimentResult result;
            result.out_dir = out_dir;

            write_power_csv(out_dir / "power_profile.csv", ensemble, theory_power);
            result.files.push_back("power_profile.csv");
            write_kurtosis_csv(out_dir / "kurtosis_profile.csv", ensemble, config, theory_kurt);
            result.files.push_back("kurtosis_profile.csv");
            write_count_csv(out_dir / "arrival_count.csv", ensemble, config);
            result.files.push_back("arrival_count.csv");
            write_order_statistics_csv(out_dir / "order_statistics.csv", ensemble, config.scale_a());
            result.files.push_back("order_statistics.csv");
            write_residual_csv(out_dir / "residual_power.csv", build, config);
            result.files.push_back("residual_power.csv");
            write_cdf_csv(out_dir / "mean_delay_cdf.csv", "mean_delay_ns", ensemble.mean_delay);
            result.files.push_back("mean_delay_cdf.csv");
            write_cdf_csv(out_dir / "rms_delay_cdf.csv", "rms_delay_ns", ensemble.rms_spread);
            result.files.push_back("rms_delay_cdf.csv");
            write_scatter_csv(out_dir / "spatial_scatter.csv", config);
            result.files.push_back("spatial_scatter.csv");
            if (config.dump_realizations)
                result.files.push_back("realizations");

            write_manifest(out_dir / "manifest.json", config, result.files);
            result.files.insert(result.files.begin(), "manifest.json");
            return result;
        }

    }
}
