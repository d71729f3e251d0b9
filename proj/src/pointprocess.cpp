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

#include "roomsim/pointprocess.hpp"
#include "roomsim/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace roomsim
{
    namespace pointprocess
    {

        namespace
        {
            // uniform in (0, 1], never exactly zero
            inline double uniform01_open(Rng &rng)
            {
                return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
            }

            inline double phase_to_unit(double u)
            {
                return 2.0 * std::numbers::pi * u;
            }

            std::uint64_t poisson_small(double mean, Rng &rng)
            {
                const double limit = std::exp(-mean);
                std::uint64_t k = 0;
                double p = 1.0;
                do
                {
                    ++k;
                    p *= uniform01_open(rng);
                } while (p > limit);
                return k - 1;
            }

            // Hoermann's PTRD transformed-rejection sampler, exact for mean >= 10
            std::uint64_t poisson_ptrd(double mean, Rng &rng)
            {
                const double smu = std::sqrt(mean);
                const double b = 0.931 + 2.53 * smu;
                const double a = -0.059 + 0.02483 * b;
                const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
                const double v_r = 0.9277 - 3.6224 / (b - 2.0);
                const double log_mu = std::log(mean);

                for (;;)
                {
                    const double u = uniform01(rng) - 0.5;
                    const double v = uniform01_open(rng);
                    const double us = 0.5 - std::abs(u);
                    const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
                    if (us >= 0.07 && v <= v_r)
                        return static_cast<std::uint64_t>(kf);
                    if (kf < 0.0 || (us < 0.013 && v > us))
                        continue;
                    const double k = kf;
                    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
                        k * log_mu - mean - std::lgamma(k + 1.0))
                        return static_cast<std::uint64_t>(kf);
                }
            }
        }

        std::uint64_t mix64(std::uint64_t x)
        {
            x += 0x9E3779B97F4A7C15ULL;
            x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
            x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
            return x ^ (x >> 31);
        }

        Rng substream(std::uint64_t master_seed, std::uint64_t salt, std::uint64_t index)
        {
            const std::uint64_t u = mix64(master_seed + 0x9E3779B97F4A7C15ULL * (salt + 1));
            const std::uint64_t v = mix64(u + 0x9E3779B97F4A7C15ULL * (index + 1));
            Rng rng;
            rng.seed(v);
            return rng;
        }

        double uniform01(Rng &rng)
        {
            return static_cast<double>(rng() >> 11) * 0x1.0p-53;
        }

        std::uint64_t poisson_count(double mean, Rng &rng)
        {
            if (!(mean >= 0.0))
                throw std::invalid_argument("poisson_count: mean must be >= 0");
            if (mean == 0.0)
                return 0;
            if (mean < 10.0)
                return poisson_small(mean, rng);
            return poisson_ptrd(mean, rng);
        }

        Eigen::Vector3d uniform_direction(Rng &rng)
        {
            const double z = 1.0 - 2.0 * uniform01(rng);
            const double phi = phase_to_unit(uniform01(rng));
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            return {r * std::cos(phi), r * std::sin(phi), z};
        }

        Eigen::Vector3d uniform_in_room(const geometry::Room &room, Rng &rng)
        {
            return {room.lx * uniform01(rng), room.ly * uniform01(rng), room.lz * uniform01(rng)};
        }

        double RateModel::rate(double tau) const
        {
            switch (kind)
            {
            case Kind::constant_rate:
                return rho0;
            case Kind::quadratic_empirical:
                return eta * tau * tau;
            default:
                return theory::arrival_rate(tau, volume, omega_t, omega_r, c);
            }
        }

        double RateModel::mean_count(double tau) const
        {
            switch (kind)
            {
            case Kind::constant_rate:
                return rho0 * tau;
            case Kind::quadratic_empirical:
                return eta * tau * tau * tau / 3.0;
            default:
                return theory::mean_arrival_count(tau, volume, omega_t, omega_r, c);
            }
        }

        double MarkModel::conditional_moment(double tau, int n) const
        {
            if (n < 0)
                throw std::invalid_argument("MarkModel::conditional_moment: n must be >= 0");
            const double s2 = second_moment(tau);
            double m = std::pow(s2, n);
            if (family == Family::circular_gaussian)
                for (int i = 2; i <= n; ++i)
                    m *= static_cast<double>(i);
            return m;
        }

        double MarkModel::mark_kurtosis() const
        {
            return family == Family::circular_gaussian ? 2.0 : 1.0;
        }

        std::vector<double> sample_arrivals(const RateModel &rate, double tau_max, Rng &rng, double tau_min)
        {
            if (!(tau_max > 0.0) || tau_min < 0.0 || tau_min >= tau_max)
                throw std::invalid_argument("sample_arrivals: need 0 <= tau_min < tau_max");

            const double mass = rate.mean_count(tau_max) - rate.mean_count(tau_min);
            const std::uint64_t n = poisson_count(mass, rng);

            std::vector<double> delays(n);
            if (rate.quadratic())
            {
                const double lo3 = tau_min * tau_min * tau_min;
                const double hi3 = tau_max * tau_max * tau_max;
                for (auto &d : delays)
                    d = std::cbrt(lo3 + uniform01_open(rng) * (hi3 - lo3));
            }
            else
            {
                for (auto &d : delays)
                    d = tau_min + uniform01_open(rng) * (tau_max - tau_min);
            }
            std::sort(delays.begin(), delays.end());
            return delays;
        }

        std::vector<std::complex<double>> sample_marks(const std::vector<double> &delays, const MarkModel &marks,
                                                       Rng &rng)
        {
            std::vector<std::complex<double>> out(delays.size());
            for (std::size_t i = 0; i < delays.size(); ++i)
            {
                const double sigma = std::sqrt(marks.second_moment(delays[i]));
                double r = sigma;
                if (marks.family == MarkModel::Family::circular_gaussian)
                    r = sigma * std::sqrt(-std::log(uniform01_open(rng)));
                const double phi = phase_to_unit(uniform01(rng));
                out[i] = std::polar(r, phi);
            }
            return out;
        }

        ChannelRealization sample_mirror_source_channel(const MirrorSourceOptions &options, Rng &rng)
        {
            const auto &room = options.room;
            const double radius = options.c * options.tau_max;

            Eigen::Vector3d tx_pos, rx_pos;
            int attempts = 0;
            do
            {
                if (++attempts > 10000)
                    throw std::runtime_error(
                        "sample_mirror_source_channel: could not place terminals min_separation apart");
                tx_pos = uniform_in_room(room, rng);
                rx_pos = uniform_in_room(room, rng);
            } while ((tx_pos - rx_pos).norm() < options.min_separation);
            const Eigen::Vector3d tx_bore = uniform_direction(rng);
            const Eigen::Vector3d rx_bore = uniform_direction(rng);

            const double ct = geometry::footprint_cos_threshold(options.omega_t);
            const double cr = geometry::footprint_cos_threshold(options.omega_r);
            const double amp_scale = 1.0 / std::sqrt(options.omega_t * options.omega_r);
            const double r2 = radius * radius;

            ChannelRealization real;
            real.model = RateModel::Kind::mirror_source;
            real.tau_max = options.tau_max;

            for (const auto &k : geometry::enumerate_indices(room, rx_pos, radius))
            {
                const Eigen::Vector3d src = geometry::mirror_position(tx_pos, k, room);
                const Eigen::Vector3d d = src - rx_pos;
                const double dist2 = d.squaredNorm();
                if (dist2 > r2 || dist2 == 0.0)
                    continue;
                const double dist = std::sqrt(dist2);
                const Eigen::Vector3d doa = d / dist;
                if (doa.dot(rx_bore) < cr)
                    continue;

                const Eigen::Vector3d rev_src = geometry::mirror_position(rx_pos, geometry::reverse_index(k), room);
                const Eigen::Vector3d dod = (rev_src - tx_pos).normalized();
                if (dod.dot(tx_bore) < ct)
                    continue;

                const double delay = dist / options.c;
                const double amp = std::pow(options.wall_gain, 0.5 * k.order()) * amp_scale / dist;
                const double phi = options.random_phase
                                       ? phase_to_unit(uniform01(rng))
                                       : -2.0 * std::numbers::pi * dist / options.wavelength;
                real.paths.push_back({k, delay, std::polar(amp, phi), dod, doa});
            }

            std::sort(real.paths.begin(), real.paths.end(), [](const auto &a, const auto &b) {
                if (a.delay != b.delay)
                    return a.delay < b.delay;
                const auto &ia = *a.index;
                const auto &ib = *b.index;
                return std::tie(ia.kx, ia.ky, ia.kz) < std::tie(ib.kx, ib.ky, ib.kz);
            });
            return real;
        }

        ChannelRealization sample_poisson_channel(const RateModel &rate, const MarkModel &marks, double tau_max,
                                                  Rng &rng, double tau_min)
        {
            ChannelRealization real;
            real.model = rate.kind;
            real.tau_max = tau_max;

            const auto delays = sample_arrivals(rate, tau_max, rng, tau_min);
            const auto gains = sample_marks(delays, marks, rng);
            real.paths.resize(delays.size());
            for (std::size_t i = 0; i < delays.size(); ++i)
                real.paths[i] = {std::nullopt, delays[i], gains[i], std::nullopt, std::nullopt};
            return real;
        }

        std::vector<Eigen::Vector3d> spatial_poisson_sample(const geometry::Room &room,
                                                            const geometry::Antenna &receiver, double omega_t,
                                                            double radius, Rng &rng)
        {
            const double density = omega_t / room.volume();
            const double mean = density * 4.0 / 3.0 * std::numbers::pi * radius * radius * radius;
            const std::uint64_t n = poisson_count(mean, rng);

            std::vector<Eigen::Vector3d> out;
            out.reserve(n / 4 + 8);
            for (std::uint64_t i = 0; i < n; ++i)
            {
                const double r = radius * std::cbrt(uniform01_open(rng));
                const Eigen::Vector3d dir = uniform_direction(rng);
                if (geometry::in_footprint(receiver, dir))
                    out.push_back(receiver.position + r * dir);
            }
            return out;
        }

    }
}
