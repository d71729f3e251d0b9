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

#ifndef roomsim_pointprocess_H
#define roomsim_pointprocess_H

#include "roomsim/geometry.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace roomsim
{
    namespace pointprocess
    {

        using Rng = std::mt19937_64;

        // splitmix64 finalizer, used to whiten seed material
        std::uint64_t mix64(std::uint64_t x);

        // Independent generator for one (salt, index) pair under a master seed.
        // Streams for different pairs are decorrelated by construction, so every
        // run of an ensemble owns its own substream regardless of scheduling.
        Rng substream(std::uint64_t master_seed, std::uint64_t salt, std::uint64_t index);

        // Uniform double in [0, 1) built from the top 53 bits of one draw, so the
        // value stream is identical across standard library implementations
        double uniform01(Rng &rng);

        // Exact Poisson sample: product inversion below mean 10, transformed
        // rejection (Hoermann's PTRD) above
        std::uint64_t poisson_count(double mean, Rng &rng);

        // Unit vector uniform on the sphere
        Eigen::Vector3d uniform_direction(Rng &rng);

        // Point uniform in the room volume
        Eigen::Vector3d uniform_in_room(const geometry::Room &room, Rng &rng);

        // Arrival-rate model lambda(tau) for the delay point process.
        //   mirror_source:       ensemble rate of the geometric model, equal to
        //                        the quadratic_poisson rate; kept as a distinct
        //                        tag so realizations remember their origin
        //   quadratic_poisson:   lambda = 4 pi c^3 tau^2 omega_t omega_r / V
        //   constant_rate:       lambda = rho0
        //   quadratic_empirical: lambda = eta tau^2
        struct RateModel
        {
            enum class Kind
            {
                mirror_source,
                quadratic_poisson,
                constant_rate,
                quadratic_empirical
            };

            Kind kind = Kind::quadratic_poisson;
            double volume = 75.0;  // m^3
            double omega_t = 1.0;
            double omega_r = 1.0;
            double c = geometry::default_speed_of_light;
            double rho0 = 0.0; // 1/s, constant_rate
            double eta = 0.0;  // 1/s^3, quadratic_empirical

            // lambda(tau), 1/s
            double rate(double tau) const;

            // Lambda(tau) = integral_0^tau lambda, expected arrival count
            double mean_count(double tau) const;

            bool quadratic() const
            {
                return kind != Kind::constant_rate;
            }
        };

        // Complex mark (amplitude) distribution conditioned on delay.
        //   circular_gaussian: alpha | tau ~ CN(0, sigma^2(tau))
        //   constant_modulus:  |alpha| = sigma(tau), phase uniform
        struct MarkModel
        {
            enum class Family
            {
                circular_gaussian,
                constant_modulus
            };

            Family family = Family::circular_gaussian;
            std::function<double(double)> second_moment; // sigma^2(tau) = E[|alpha|^2 | tau]

            // E[|alpha|^2n | tau]: n! sigma^2n for circular_gaussian, sigma^2n
            // for constant_modulus
            double conditional_moment(double tau, int n) const;

            // E[|alpha|^4] / E[|alpha|^2]^2 of the conditional law: 2 or 1
            double mark_kurtosis() const;
        };

        // One simulated channel: paths sorted by delay over (0, tau_max].
        struct ChannelRealization
        {
            std::vector<geometry::PathComponent> paths;
            RateModel::Kind model = RateModel::Kind::quadratic_poisson;
            double tau_max = 0.0;        // s
            std::uint64_t run_index = 0; // substream index used to draw it
        };

        // Arrival delays of an inhomogeneous Poisson process with the given rate
        // on (tau_min, tau_max], sorted. Sampled by inversion: N ~ Poisson(mass),
        // then N independent draws from the normalized rate density.
        std::vector<double> sample_arrivals(const RateModel &rate, double tau_max, Rng &rng, double tau_min = 0.0);

        // Independent marks for the given delays
        std::vector<std::complex<double>> sample_marks(const std::vector<double> &delays, const MarkModel &marks,
                                                       Rng &rng);

        // Geometric model inputs. Transmitter and receiver are drawn uniformly in
        // the room with uniformly random boresights, re-drawn until they are at
        // least min_separation apart (throws after 10000 attempts).
        struct MirrorSourceOptions
        {
            geometry::Room room{};
            double omega_t = 1.0;
            double omega_r = 1.0;
            double wall_gain = 0.6;
            double wavelength = 0.03;       // m
            double c = geometry::default_speed_of_light;
            double tau_max = 100e-9;        // s
            double min_separation = 0.1;    // m
            bool random_phase = false;      // replace the geometric phase by a uniform one
        };

        // Exact mirror-source channel: every lattice index whose source lies
        // within c tau_max of the receiver and whose departure and arrival
        // directions fall inside both antenna footprints contributes a path with
        //   |gain|^2 = wall_gain^order / (omega_t omega_r (c delay)^2)
        // and phase exp(-i 2 pi c delay / wavelength), the delay-power-spectrum
        // normalization (free-space reference gain at 1 m absorbed; multiply by
        // (wavelength / 4 pi)^2 for the absolute link power gain).
        ChannelRealization sample_mirror_source_channel(const MirrorSourceOptions &options, Rng &rng);

        // Point-process channel: Poisson arrivals plus independent marks
        ChannelRealization sample_poisson_channel(const RateModel &rate, const MarkModel &marks, double tau_max,
                                                  Rng &rng, double tau_min = 0.0);

        // Spatial view of the quadratic_poisson model: source points of density
        // omega_t / V in the ball of the given radius around the receiver,
        // thinned to the receiver footprint. Returns the kept positions.
        std::vector<Eigen::Vector3d> spatial_poisson_sample(const geometry::Room &room,
                                                            const geometry::Antenna &receiver, double omega_t,
                                                            double radius, Rng &rng);

    }
}

#endif
