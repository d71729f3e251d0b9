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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "roomsim/geometry.hpp"
#include "roomsim/pointprocess.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <tuple>
#include <vector>

using namespace roomsim;
using geometry::LatticeIndex;
using geometry::Room;

namespace
{
    const Room box{5.0, 5.0, 3.0};

    std::vector<std::array<int, 3>> sorted_triples(const std::vector<LatticeIndex> &v)
    {
        std::vector<std::array<int, 3>> out;
        out.reserve(v.size());
        for (const auto &k : v)
            out.push_back({k.kx, k.ky, k.kz});
        std::sort(out.begin(), out.end());
        return out;
    }

    // independent box-ball intersection check on a wide index cube
    std::vector<LatticeIndex> enumerate_oracle(const Room &room, const Eigen::Vector3d &c, double r)
    {
        std::vector<LatticeIndex> out;
        const int m = static_cast<int>(r / std::min({room.lx, room.ly, room.lz})) + 4;
        for (int kx = -m; kx <= m; ++kx)
            for (int ky = -m; ky <= m; ++ky)
                for (int kz = -m; kz <= m; ++kz)
                {
                    auto axis = [](double x, double lo, double len) {
                        const double hi = lo + len;
                        return x < lo ? lo - x : (x > hi ? x - hi : 0.0);
                    };
                    const double dx = axis(c.x(), kx * room.lx, room.lx);
                    const double dy = axis(c.y(), ky * room.ly, room.ly);
                    const double dz = axis(c.z(), kz * room.lz, room.lz);
                    if (dx * dx + dy * dy + dz * dz <= r * r)
                        out.push_back({kx, ky, kz});
                }
        return out;
    }
}

TEST_CASE("room geometry")
{
    CHECK(box.volume() == doctest::Approx(75.0).epsilon(1e-15));
    CHECK(box.surface_area() == doctest::Approx(110.0).epsilon(1e-15));
    CHECK(box.diagonal() == doctest::Approx(std::sqrt(59.0)).epsilon(1e-15));
    CHECK(box.contains({2.5, 2.5, 1.5}));
    CHECK(box.contains({0.0, 0.0, 0.0}));
    CHECK_FALSE(box.contains({5.1, 2.5, 1.5}));
    CHECK_FALSE(box.contains({2.5, -0.1, 1.5}));
}

TEST_CASE("cap half angle")
{
    CHECK(geometry::cap_half_angle(1.0) == doctest::Approx(std::numbers::pi).epsilon(1e-15));
    CHECK(geometry::cap_half_angle(0.5) == doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-15));
    CHECK(geometry::cap_half_angle(0.25) == doctest::Approx(std::numbers::pi / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(geometry::cap_half_angle(0.0), std::invalid_argument);
    CHECK_THROWS_AS(geometry::cap_half_angle(1.5), std::invalid_argument);
}

TEST_CASE("footprint membership")
{
    geometry::Antenna a;
    a.boresight = {1.0, 0.0, 0.0};
    a.omega = 0.25; // 60 degree cap

    auto dir = [](double deg) {
        const double rad = deg * std::numbers::pi / 180.0;
        return Eigen::Vector3d{std::cos(rad), std::sin(rad), 0.0};
    };
    CHECK(geometry::in_footprint(a, dir(0.0)));
    CHECK(geometry::in_footprint(a, dir(59.9)));
    CHECK_FALSE(geometry::in_footprint(a, dir(60.1)));
    CHECK(geometry::in_footprint(a, dir(60.0))); // boundary, inside by tolerance

    a.omega = 1.0; // full sphere sees everything
    CHECK(geometry::in_footprint(a, dir(180.0)));
}

TEST_CASE("mirror positions, first and second images")
{
    const Eigen::Vector3d p{1.0, 2.0, 1.0};
    CHECK(geometry::mirror_position(p, {0, 0, 0}, box) == p);
    CHECK(geometry::mirror_position(p, {1, 0, 0}, box) == Eigen::Vector3d{9.0, 2.0, 1.0});
    CHECK(geometry::mirror_position(p, {-1, 0, 0}, box) == Eigen::Vector3d{-1.0, 2.0, 1.0});
    CHECK(geometry::mirror_position(p, {2, 0, 0}, box) == Eigen::Vector3d{11.0, 2.0, 1.0});
    CHECK(geometry::mirror_position(p, {-2, 0, 0}, box) == Eigen::Vector3d{-9.0, 2.0, 1.0});
    CHECK(geometry::mirror_position(p, {0, 0, 1}, box) == Eigen::Vector3d{1.0, 2.0, 5.0});
    CHECK(geometry::mirror_position(p, {0, -1, 2}, box) == Eigen::Vector3d{1.0, -2.0, 7.0});
}

TEST_CASE("mirror image lies in its mirror room")
{
    auto rng = pointprocess::substream(7, 100, 0);
    for (int trial = 0; trial < 200; ++trial)
    {
        const Eigen::Vector3d p = pointprocess::uniform_in_room(box, rng);
        const LatticeIndex k{static_cast<int>(rng() % 17) - 8, static_cast<int>(rng() % 17) - 8,
                             static_cast<int>(rng() % 17) - 8};
        const Eigen::Vector3d m = geometry::mirror_position(p, k, box);
        CHECK(m.x() >= k.kx * box.lx - 1e-12);
        CHECK(m.x() <= (k.kx + 1) * box.lx + 1e-12);
        CHECK(m.y() >= k.ky * box.ly - 1e-12);
        CHECK(m.y() <= (k.ky + 1) * box.ly + 1e-12);
        CHECK(m.z() >= k.kz * box.lz - 1e-12);
        CHECK(m.z() <= (k.kz + 1) * box.lz + 1e-12);
    }
}

TEST_CASE("reverse_index is an involution and swaps terminal roles")
{
    auto rng = pointprocess::substream(7, 101, 0);
    for (int trial = 0; trial < 500; ++trial)
    {
        const LatticeIndex k{static_cast<int>(rng() % 13) - 6, static_cast<int>(rng() % 13) - 6,
                             static_cast<int>(rng() % 13) - 6};
        CHECK(geometry::reverse_index(geometry::reverse_index(k)) == k);
        CHECK(geometry::reverse_index(k).order() == k.order());

        const Eigen::Vector3d t = pointprocess::uniform_in_room(box, rng);
        const Eigen::Vector3d r = pointprocess::uniform_in_room(box, rng);
        const double forward = (geometry::mirror_position(t, k, box) - r).norm();
        const double swapped = (geometry::mirror_position(r, geometry::reverse_index(k), box) - t).norm();
        CHECK(forward == doctest::Approx(swapped).epsilon(1e-12));
    }
}

TEST_CASE("departure direction equals reflected arrival direction")
{
    // the departure direction toward the reversed-index image of the receiver
    // is the arrival direction with every odd-count axis component flipped
    auto rng = pointprocess::substream(7, 102, 0);
    for (int trial = 0; trial < 200; ++trial)
    {
        const LatticeIndex k{static_cast<int>(rng() % 9) - 4, static_cast<int>(rng() % 9) - 4,
                             static_cast<int>(rng() % 9) - 4};
        const Eigen::Vector3d t = pointprocess::uniform_in_room(box, rng);
        const Eigen::Vector3d r = pointprocess::uniform_in_room(box, rng);
        if ((geometry::mirror_position(t, k, box) - r).norm() < 1e-6)
            continue;

        const Eigen::Vector3d doa = geometry::arrival_direction(geometry::mirror_position(t, k, box), r);
        const Eigen::Vector3d dod =
            geometry::arrival_direction(geometry::mirror_position(r, geometry::reverse_index(k), box), t);

        const Eigen::Vector3d expected{-doa.x() * (k.kx % 2 == 0 ? 1.0 : -1.0),
                                       -doa.y() * (k.ky % 2 == 0 ? 1.0 : -1.0),
                                       -doa.z() * (k.kz % 2 == 0 ? 1.0 : -1.0)};
        CHECK((dod - expected).norm() < 1e-9);
    }
}

TEST_CASE("delay multiset is transmitter/receiver symmetric")
{
    const Eigen::Vector3d t{0.7, 3.9, 0.4};
    const Eigen::Vector3d r{4.2, 1.1, 2.6};
    const double radius = 12.0;

    auto delays = [&](const Eigen::Vector3d &from, const Eigen::Vector3d &to) {
        std::vector<double> d;
        for (const auto &k : geometry::enumerate_indices(box, to, radius))
        {
            const double dist = (geometry::mirror_position(from, k, box) - to).norm();
            if (dist <= radius)
                d.push_back(dist);
        }
        std::sort(d.begin(), d.end());
        return d;
    };

    const auto forward = delays(t, r);
    const auto backward = delays(r, t);
    REQUIRE(forward.size() == backward.size());
    REQUIRE(forward.size() > 50);
    for (std::size_t i = 0; i < forward.size(); ++i)
        CHECK(forward[i] == doctest::Approx(backward[i]).epsilon(1e-12));
}

TEST_CASE("enumerate_indices matches the brute-force oracle")
{
    const Eigen::Vector3d centers[] = {{2.5, 2.5, 1.5}, {0.1, 4.9, 0.1}, {4.99, 0.01, 2.99}};
    for (const auto &c : centers)
        for (const double r : {0.5, 3.0, 7.3, 17.0, 30.0})
        {
            const auto got = sorted_triples(geometry::enumerate_indices(box, c, r));
            const auto want = sorted_triples(enumerate_oracle(box, c, r));
            REQUIRE(got.size() == want.size());
            CHECK(got == want);
        }
}

TEST_CASE("enumerate_indices count grows like the ball volume")
{
    const Eigen::Vector3d c{2.5, 2.5, 1.5};
    const double r = 30.0;
    const auto n = static_cast<double>(geometry::enumerate_indices(box, c, r).size());
    const double ball = 4.0 / 3.0 * std::numbers::pi * r * r * r / box.volume();
    // boxes intersecting the ball outnumber the volume ratio by a surface term,
    // bounded by the Minkowski sum of the ball with one room box
    const double grown = ball + (std::numbers::pi * r * r * (box.lx + box.ly + box.lz) +
                                 2.0 * r * (box.lx * box.ly + box.ly * box.lz + box.lz * box.lx) +
                                 box.volume()) /
                                    box.volume();
    CHECK(n > ball);
    CHECK(n < grown * 1.05);
}

TEST_CASE("path delay")
{
    CHECK(geometry::path_delay({0.0, 0.0, 0.0}, {3.0, 0.0, 0.0}) == doctest::Approx(1e-8).epsilon(1e-15));
    CHECK(geometry::path_delay({0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("path power gain, frozen free-space value")
{
    geometry::Antenna tx, rx;
    const Eigen::Vector3d dir{1.0, 0.0, 0.0};
    const double delay = 1.0 / 3e8; // c tau = 1 m

    // (0.03 / (4 pi))^2 at 1 m
    const double g0 = geometry::path_power_gain(0, delay, dir, -dir, tx, rx, 0.6, 0.03);
    CHECK(g0 == doctest::Approx(5.69931657988149964e-6).epsilon(1e-12));

    // one bounce multiplies by the wall gain; doubling range quarters the gain
    CHECK(geometry::path_power_gain(1, delay, dir, -dir, tx, rx, 0.6, 0.03) ==
          doctest::Approx(0.6 * g0).epsilon(1e-12));
    CHECK(geometry::path_power_gain(0, 2.0 * delay, dir, -dir, tx, rx, 0.6, 0.03) ==
          doctest::Approx(0.25 * g0).epsilon(1e-12));

    // directive antennas: in-footprint gain 1/omega per side, zero outside
    tx.omega = 0.25;
    rx.omega = 0.5;
    rx.boresight = {-1.0, 0.0, 0.0}; // points at the incoming direction
    CHECK(geometry::path_power_gain(0, delay, dir, -dir, tx, rx, 0.6, 0.03) ==
          doctest::Approx(8.0 * g0).epsilon(1e-12));
    tx.boresight = {0.0, 1.0, 0.0}; // dod now 90 degrees off a 60 degree cap
    CHECK(geometry::path_power_gain(0, delay, dir, -dir, tx, rx, 0.6, 0.03) == 0.0);

    CHECK_THROWS_AS(geometry::path_power_gain(-1, delay, dir, -dir, tx, rx, 0.6, 0.03),
                    std::invalid_argument);
    CHECK_THROWS_AS(geometry::path_power_gain(0, 0.0, dir, -dir, tx, rx, 0.6, 0.03), std::invalid_argument);
    CHECK_THROWS_AS(geometry::path_power_gain(0, delay, dir, -dir, tx, rx, 1.2, 0.03), std::invalid_argument);
}

TEST_CASE("arrival direction is the unit vector toward the source")
{
    const Eigen::Vector3d src{3.0, 4.0, 0.0};
    const Eigen::Vector3d rx{0.0, 0.0, 0.0};
    const Eigen::Vector3d d = geometry::arrival_direction(src, rx);
    CHECK(d.norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(d.x() == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(d.y() == doctest::Approx(0.8).epsilon(1e-15));
    CHECK_THROWS_AS(geometry::arrival_direction(rx, rx), std::invalid_argument);
}
