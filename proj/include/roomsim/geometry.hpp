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

#ifndef roomsim_geometry_H
#define roomsim_geometry_H

#include <Eigen/Dense>

#include <complex>
#include <cstdlib>
#include <optional>
#include <vector>

namespace roomsim
{
    namespace geometry
    {

        constexpr double si_speed_of_light = 299792458.0; // m/s

        // Rounded value used throughout the reference experiments. All delay and
        // rate formulas take c as a parameter with this default.
        constexpr double default_speed_of_light = 3.0e8; // m/s

        // Rectangular room [0,lx] x [0,ly] x [0,lz], perfectly flat walls.
        struct Room
        {
            double lx = 5.0; // m
            double ly = 5.0; // m
            double lz = 3.0; // m

            double volume() const { return lx * ly * lz; }
            double surface_area() const { return 2.0 * (lx * ly + ly * lz + lz * lx); }
            double diagonal() const;
            Eigen::Vector3d extents() const { return {lx, ly, lz}; }
            bool contains(const Eigen::Vector3d &p, double tol = 0.0) const;
        };

        // Idealized antenna with a spherical-cap footprint: gain 1/omega for
        // directions within the cap around the boresight, zero outside. omega is
        // the covered fraction of the full sphere, in (0, 1]. epsilon is an
        // aperture efficiency factor carried for bookkeeping; the simulation
        // formulas use the lossless gain 1/omega.
        struct Antenna
        {
            Eigen::Vector3d position{0.0, 0.0, 0.0};
            Eigen::Vector3d boresight{1.0, 0.0, 0.0};
            double omega = 1.0;
            double epsilon = 1.0;

            double gain() const { return 1.0 / omega; }
        };

        // Half opening angle (rad) of a spherical cap covering the fraction omega
        // of the sphere: omega = (1 - cos(theta)) / 2.
        double cap_half_angle(double omega);

        // Threshold on boresight . direction for footprint membership, including
        // the angular boundary tolerance of 1e-9 rad.
        double footprint_cos_threshold(double omega);

        // True when the unit direction lies inside the antenna footprint.
        bool in_footprint(const Antenna &antenna, const Eigen::Vector3d &direction);

        // Integer label of a mirror room. Component k in {..,-1,0,1,..} selects
        // the image of the base room after |k| reflections along that axis; the
        // mirror room for index kx occupies [kx*lx, (kx+1)*lx].
        struct LatticeIndex
        {
            int kx = 0;
            int ky = 0;
            int kz = 0;

            int order() const { return std::abs(kx) + std::abs(ky) + std::abs(kz); }
            bool operator==(const LatticeIndex &other) const = default;
        };

        // Mirror image of a point inside the base room under the lattice index k.
        // Per coordinate: ceil(k/2) * 2l + (-1)^k * x.
        Eigen::Vector3d mirror_position(const Eigen::Vector3d &point, const LatticeIndex &k, const Room &room);

        // Index of the mirror source whose T->R geometry reverses the roles of
        // transmitter and receiver: components with even k flip sign, odd k stay.
        // An involution; mirror_position(receiver, reverse_index(k)) seen from the
        // transmitter has the same distance as mirror_position(transmitter, k)
        // seen from the receiver.
        LatticeIndex reverse_index(const LatticeIndex &k);

        // All lattice indices whose mirror room intersects the closed ball of the
        // given radius around center. Exact: a candidate per-axis range is scanned
        // and kept when the center-to-box distance is <= radius. This is the
        // superset of indices whose mirror source can fall inside the ball for
        // any source position in the base room.
        std::vector<LatticeIndex> enumerate_indices(const Room &room, const Eigen::Vector3d &center, double radius);

        // Propagation delay between two points, seconds.
        double path_delay(const Eigen::Vector3d &source, const Eigen::Vector3d &terminal,
                          double c = default_speed_of_light);

        // Unit vector at `receiver` pointing toward `source`.
        Eigen::Vector3d arrival_direction(const Eigen::Vector3d &source, const Eigen::Vector3d &receiver);

        // Mean power gain of one reflected path at carrier wavelength lambda:
        //   wall_gain^order * G_T(dod) * G_R(doa) * (lambda / (4 pi c delay))^2
        // Footprint membership of dod/doa gates the antenna gains.
        double path_power_gain(int order, double delay, const Eigen::Vector3d &dod, const Eigen::Vector3d &doa,
                               const Antenna &tx, const Antenna &rx, double wall_gain, double wavelength,
                               double c = default_speed_of_light);

        // One resolvable propagation path. Geometric paths carry their lattice
        // index and directions; paths drawn from a point-process model carry only
        // delay and gain.
        struct PathComponent
        {
            std::optional<LatticeIndex> index;
            double delay = 0.0; // s
            std::complex<double> gain{0.0, 0.0};
            std::optional<Eigen::Vector3d> dod;
            std::optional<Eigen::Vector3d> doa;

            int order() const { return index ? index->order() : 0; }
        };

    }
}

#endif
