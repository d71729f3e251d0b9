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

#include "roomsim/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace roomsim
{
    namespace geometry
    {

        namespace
        {
            constexpr double angle_tolerance = 1e-9; // rad, footprint boundary

            // ceil(k/2) for signed integers
            inline int ceil_half(int k)
            {
                return (k >= 0) ? (k + 1) / 2 : k / 2;
            }

            inline double mirror_coordinate(double x, int k, double l)
            {
                const double sign = (k % 2 == 0) ? 1.0 : -1.0;
                return static_cast<double>(ceil_half(k)) * 2.0 * l + sign * x;
            }

            // Distance from a point to the axis-aligned box [lo, lo+extent]
            inline double axis_box_distance(double x, double lo, double extent)
            {
                if (x < lo)
                    return lo - x;
                if (x > lo + extent)
                    return x - lo - extent;
                return 0.0;
            }
        }

        double Room::diagonal() const
        {
            return std::sqrt(lx * lx + ly * ly + lz * lz);
        }

        bool Room::contains(const Eigen::Vector3d &p, double tol) const
        {
            return p.x() >= -tol && p.x() <= lx + tol && p.y() >= -tol && p.y() <= ly + tol &&
                   p.z() >= -tol && p.z() <= lz + tol;
        }

        double cap_half_angle(double omega)
        {
            if (!(omega > 0.0) || omega > 1.0)
                throw std::invalid_argument("cap_half_angle: omega must be in (0, 1]");
            return std::acos(1.0 - 2.0 * omega);
        }

        double footprint_cos_threshold(double omega)
        {
            const double theta = cap_half_angle(omega) + angle_tolerance;
            if (theta >= std::numbers::pi)
                return -1.0;
            return std::cos(theta);
        }

        bool in_footprint(const Antenna &antenna, const Eigen::Vector3d &direction)
        {
            return antenna.boresight.dot(direction) >= footprint_cos_threshold(antenna.omega);
        }

        Eigen::Vector3d mirror_position(const Eigen::Vector3d &point, const LatticeIndex &k, const Room &room)
        {
            return {mirror_coordinate(point.x(), k.kx, room.lx), mirror_coordinate(point.y(), k.ky, room.ly),
                    mirror_coordinate(point.z(), k.kz, room.lz)};
        }

        LatticeIndex reverse_index(const LatticeIndex &k)
        {
            auto flip_even = [](int v) { return (v % 2 == 0) ? -v : v; };
            return {flip_even(k.kx), flip_even(k.ky), flip_even(k.kz)};
        }

        std::vector<LatticeIndex> enumerate_indices(const Room &room, const Eigen::Vector3d &center, double radius)
        {
            if (!(radius >= 0.0))
                throw std::invalid_argument("enumerate_indices: radius must be >= 0");

            auto range = [radius](double c, double l) {
                const int lo = static_cast<int>(std::floor((c - radius) / l)) - 1;
                const int hi = static_cast<int>(std::floor((c + radius) / l)) + 1;
                return std::pair<int, int>{lo, hi};
            };
            const auto [xlo, xhi] = range(center.x(), room.lx);
            const auto [ylo, yhi] = range(center.y(), room.ly);
            const auto [zlo, zhi] = range(center.z(), room.lz);

            std::vector<LatticeIndex> out;
            const double ball_volume = 4.0 / 3.0 * std::numbers::pi * radius * radius * radius;
            out.reserve(static_cast<std::size_t>(ball_volume / room.volume() * 1.3) + 27);

            const double r2 = radius * radius;
            for (int kx = xlo; kx <= xhi; ++kx)
            {
                const double dx = axis_box_distance(center.x(), kx * room.lx, room.lx);
                for (int ky = ylo; ky <= yhi; ++ky)
                {
                    const double dy = axis_box_distance(center.y(), ky * room.ly, room.ly);
                    for (int kz = zlo; kz <= zhi; ++kz)
                    {
                        const double dz = axis_box_distance(center.z(), kz * room.lz, room.lz);
                        if (dx * dx + dy * dy + dz * dz <= r2)
                            out.push_back({kx, ky, kz});
                    }
                }
            }
            return out;
        }

        double path_delay(const Eigen::Vector3d &source, const Eigen::Vector3d &terminal, double c)
        {
            return (source - terminal).norm() / c;
        }

        Eigen::Vector3d arrival_direction(const Eigen::Vector3d &source, const Eigen::Vector3d &receiver)
        {
            const Eigen::Vector3d d = source - receiver;
            const double n = d.norm();
            if (n == 0.0)
                throw std::invalid_argument("arrival_direction: source and receiver coincide");
            return d / n;
        }

        double path_power_gain(int order, double delay, const Eigen::Vector3d &dod, const Eigen::Vector3d &doa,
                               const Antenna &tx, const Antenna &rx, double wall_gain, double wavelength, double c)
        {
            if (order < 0)
                throw std::invalid_argument("path_power_gain: order must be >= 0");
            if (!(delay > 0.0))
                throw std::invalid_argument("path_power_gain: delay must be > 0");
            if (!(wall_gain > 0.0) || wall_gain > 1.0)
                throw std::invalid_argument("path_power_gain: wall_gain must be in (0, 1]");
            if (!(wavelength > 0.0))
                throw std::invalid_argument("path_power_gain: wavelength must be > 0");

            const double gt = in_footprint(tx, dod) ? tx.gain() : 0.0;
            const double gr = in_footprint(rx, doa) ? rx.gain() : 0.0;
            const double friis = wavelength / (4.0 * std::numbers::pi * c * delay);
            return std::pow(wall_gain, order) * gt * gr * friis * friis;
        }

    }
}
