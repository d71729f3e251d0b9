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

#include "roomsim/estimators.hpp"
#include "roomsim/pointprocess.hpp"
#include "roomsim/theory.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

using namespace roomsim;
using namespace roomsim::pointprocess;

namespace
{
    const geometry::Room box{5.0, 5.0, 3.0};

    RateModel default_rate()
    {
        RateModel rate;
        rate.kind = RateModel::Kind::quadratic_poisson;
        rate.volume = box.volume();
        rate.c = 3e8;
        return rate;
    }
}

TEST_CASE("substreams are reproducible and distinct")
{
    Rng a = substream(42, 0, 7);
    Rng b = substream(42, 0, 7);
    for (int i = 0; i < 100; ++i)
        CHECK(a() == b());

    Rng c = substream(42, 0, 8);
    Rng d = substream(42, 1, 7);
    Rng e = substream(43, 0, 7);
    bool all_equal_c = true, all_equal_d = true, all_equal_e = true;
    Rng ref = substream(42, 0, 7);
    for (int i = 0; i < 16; ++i)
    {
        const auto r = ref();
        all_equal_c &= (c() == r);
        all_equal_d &= (d() == r);
        all_equal_e &= (e() == r);
    }
    CHECK_FALSE(all_equal_c);
    CHECK_FALSE(all_equal_d);
    CHECK_FALSE(all_equal_e);
}

TEST_CASE("adjacent substreams are decorrelated")
{
    const int n = 4000;
    double sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (int i = 0; i < n; ++i)
    {
        Rng a = substream(123, 0, static_cast<std::uint64_t>(i));
        Rng b = substream(123, 0, static_cast<std::uint64_t>(i) + 1);
        const double x = uniform01(a);
        const double y = uniform01(b);
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
    }
    const double corr = (sxy / n - sx / n * sy / n) /
                        std::sqrt((sxx / n - sx / n * sx / n) * (syy / n - sy / n * sy / n));
    CHECK(std::abs(corr) < 0.06); // ~3.8 sigma for independent streams
}

TEST_CASE("uniform01 range and moments")
{
    Rng rng = substream(7, 0, 0);
    const int n = 200000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const double u = uniform01(rng);
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
        sumsq += u * u;
    }
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.005));
    CHECK(sumsq / n - (sum / n) * (sum / n) == doctest::Approx(1.0 / 12.0).epsilon(0.02));
}

TEST_CASE("poisson counts match the target moments in both regimes")
{
    for (const double mean : {3.0, 50.0}) // inversion below 10, rejection above
    {
        Rng rng = substream(11, 0, static_cast<std::uint64_t>(mean));
        const int n = 200000;
        double sum = 0.0, sumsq = 0.0;
        std::uint64_t zeros = 0;
        for (int i = 0; i < n; ++i)
        {
            const double k = static_cast<double>(poisson_count(mean, rng));
            sum += k;
            sumsq += k * k;
            zeros += (k == 0.0);
        }
        const double m = sum / n;
        const double v = sumsq / n - m * m;
        CHECK(m == doctest::Approx(mean).epsilon(4.0 * std::sqrt(mean / n) / mean));
        CHECK(v == doctest::Approx(mean).epsilon(0.03));
        if (mean == 3.0)
            CHECK(static_cast<double>(zeros) / n == doctest::Approx(std::exp(-3.0)).epsilon(0.03));
    }

    Rng rng = substream(11, 0, 9);
    CHECK(poisson_count(0.0, rng) == 0);
}

TEST_CASE("uniform directions cover the sphere")
{
    Rng rng = substream(5, 0, 0);
    const int n = 50000;
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    double zz = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const Eigen::Vector3d d = uniform_direction(rng);
        CHECK(d.norm() == doctest::Approx(1.0).epsilon(1e-12));
        mean += d;
        zz += d.z() * d.z();
    }
    mean /= n;
    CHECK(mean.norm() < 4.0 / std::sqrt(3.0 * n) * 3.0);
    CHECK(zz / n == doctest::Approx(1.0 / 3.0).epsilon(0.02));
}

TEST_CASE("uniform room points stay inside and fill the volume")
{
    Rng rng = substream(6, 0, 0);
    const int n = 50000;
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (int i = 0; i < n; ++i)
    {
        const Eigen::Vector3d p = uniform_in_room(box, rng);
        REQUIRE(box.contains(p));
        mean += p;
    }
    mean /= n;
    CHECK(mean.x() == doctest::Approx(2.5).epsilon(0.02));
    CHECK(mean.y() == doctest::Approx(2.5).epsilon(0.02));
    CHECK(mean.z() == doctest::Approx(1.5).epsilon(0.02));
}

TEST_CASE("rate models")
{
    RateModel quad = default_rate();
    for (const double tau : {10e-9, 50e-9})
    {
        CHECK(quad.rate(tau) == doctest::Approx(theory::arrival_rate(tau, box.volume(), 1.0, 1.0, 3e8)).epsilon(1e-14));
        CHECK(quad.mean_count(tau) == doctest::Approx(quad.rate(tau) * tau / 3.0).epsilon(1e-14));
    }
    CHECK(quad.quadratic());

    RateModel ms = quad;
    ms.kind = RateModel::Kind::mirror_source;
    CHECK(ms.rate(50e-9) == doctest::Approx(quad.rate(50e-9)).epsilon(1e-14));

    RateModel flat;
    flat.kind = RateModel::Kind::constant_rate;
    flat.rho0 = 1.5e9;
    CHECK(flat.rate(50e-9) == doctest::Approx(1.5e9).epsilon(1e-15));
    CHECK(flat.mean_count(80e-9) == doctest::Approx(1.5e9 * 80e-9).epsilon(1e-14));
    CHECK_FALSE(flat.quadratic());

    RateModel emp;
    emp.kind = RateModel::Kind::quadratic_empirical;
    emp.eta = 4.2e24;
    CHECK(emp.rate(50e-9) == doctest::Approx(4.2e24 * 2.5e-15).epsilon(1e-14));
    CHECK(emp.mean_count(60e-9) == doctest::Approx(4.2e24 * std::pow(60e-9, 3.0) / 3.0).epsilon(1e-14));
    CHECK(emp.quadratic());
}

TEST_CASE("mark models")
{
    MarkModel gauss;
    gauss.family = MarkModel::Family::circular_gaussian;
    gauss.second_moment = [](double) { return 0.3; };
    CHECK(gauss.conditional_moment(1e-9, 1) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(gauss.conditional_moment(1e-9, 2) == doctest::Approx(2.0 * 0.09).epsilon(1e-14));
    CHECK(gauss.conditional_moment(1e-9, 3) == doctest::Approx(6.0 * 0.027).epsilon(1e-14));
    CHECK(gauss.mark_kurtosis() == 2.0);

    MarkModel cm = gauss;
    cm.family = MarkModel::Family::constant_modulus;
    CHECK(cm.conditional_moment(1e-9, 2) == doctest::Approx(0.09).epsilon(1e-14));
    CHECK(cm.mark_kurtosis() == 1.0);
}

TEST_CASE("arrival sampling: counts, support, and the cubic law")
{
    RateModel rate = default_rate();
    const double tau_max = 100e-9;
    const double mass = rate.mean_count(tau_max);

    Rng rng = substream(21, 0, 0);
    const int reps = 200;
    double total = 0.0;
    std::vector<double> pooled;
    for (int r = 0; r < reps; ++r)
    {
        const auto delays = sample_arrivals(rate, tau_max, rng);
        CHECK(std::is_sorted(delays.begin(), delays.end()));
        for (const double d : delays)
        {
            REQUIRE(d > 0.0);
            REQUIRE(d <= tau_max);
        }
        total += static_cast<double>(delays.size());
        pooled.insert(pooled.end(), delays.begin(), delays.end());
    }
    // Poisson count: 4 sigma band around the mass
    CHECK(total / reps == doctest::Approx(mass).epsilon(4.0 * std::sqrt(mass / reps) / mass));

    // pooled delays follow the normalized cubic distribution
    std::sort(pooled.begin(), pooled.end());
    const double d_stat = estimators::ks_statistic(
        pooled, [&](double tau) { return std::pow(tau / tau_max, 3.0); });
    CHECK(d_stat < estimators::ks_critical(1e-4, pooled.size()));
}

TEST_CASE("arrival sampling respects a delay floor")
{
    RateModel rate = default_rate();
    const double lo = 40e-9, hi = 100e-9;
    Rng rng = substream(22, 0, 0);
    std::vector<double> pooled;
    for (int r = 0; r < 200; ++r)
    {
        const auto delays = sample_arrivals(rate, hi, rng, lo);
        for (const double d : delays)
        {
            REQUIRE(d > lo);
            REQUIRE(d <= hi);
        }
        pooled.insert(pooled.end(), delays.begin(), delays.end());
    }
    std::sort(pooled.begin(), pooled.end());
    const double lo3 = lo * lo * lo, hi3 = hi * hi * hi;
    const double d_stat = estimators::ks_statistic(
        pooled, [&](double tau) { return (tau * tau * tau - lo3) / (hi3 - lo3); });
    CHECK(d_stat < estimators::ks_critical(1e-4, pooled.size()));
}

TEST_CASE("mark sampling: moments and families")
{
    const double s2 = 2.0;
    MarkModel gauss;
    gauss.second_moment = [&](double) { return s2; };

    const std::vector<double> delays(100000, 10e-9);
    Rng rng = substream(23, 0, 0);
    const auto marks = sample_marks(delays, gauss, rng);
    REQUIRE(marks.size() == delays.size());
    double p2 = 0.0, p4 = 0.0;
    std::complex<double> mean{0.0, 0.0};
    for (const auto &m : marks)
    {
        const double a2 = std::norm(m);
        p2 += a2;
        p4 += a2 * a2;
        mean += m;
    }
    const double n = static_cast<double>(marks.size());
    CHECK(p2 / n == doctest::Approx(s2).epsilon(4.0 / std::sqrt(n)));
    CHECK(p4 / n == doctest::Approx(2.0 * s2 * s2).epsilon(0.05));
    CHECK(std::abs(mean) / n < 4.0 * std::sqrt(s2 / n));

    MarkModel cm = gauss;
    cm.family = MarkModel::Family::constant_modulus;
    Rng rng2 = substream(23, 0, 1);
    const auto cmarks = sample_marks({5e-9, 6e-9, 7e-9}, cm, rng2);
    for (const auto &m : cmarks)
        CHECK(std::abs(m) == doctest::Approx(std::sqrt(s2)).epsilon(1e-13));
}

TEST_CASE("mirror-source channel: structure and internal consistency")
{
    MirrorSourceOptions opt;
    opt.room = box;
    opt.c = 3e8;
    Rng rng = substream(31, 0, 0);
    const auto run = sample_mirror_source_channel(opt, rng);

    CHECK(run.model == RateModel::Kind::mirror_source);
    CHECK(run.tau_max == opt.tau_max);
    REQUIRE(run.paths.size() > 1000); // mean is about 1508 for this room

    double last = 0.0;
    for (const auto &p : run.paths)
    {
        REQUIRE(p.index.has_value());
        REQUIRE(p.dod.has_value());
        REQUIRE(p.doa.has_value());
        CHECK(p.delay >= last);
        last = p.delay;
        CHECK(p.delay <= opt.tau_max);
        CHECK(p.delay > 0.0);
        CHECK(p.dod->norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(p.doa->norm() == doctest::Approx(1.0).epsilon(1e-12));

        // gain magnitude carries the spectrum normalization
        const int order = p.index->order();
        const double want = std::pow(opt.wall_gain, order) /
                            (opt.omega_t * opt.omega_r * std::pow(opt.c * p.delay, 2.0));
        CHECK(std::norm(p.gain) == doctest::Approx(want).epsilon(1e-12));

        // geometric phase
        const double phase = -2.0 * std::numbers::pi * opt.c * p.delay / opt.wavelength;
        const std::complex<double> unit = p.gain / std::abs(p.gain);
        CHECK(std::abs(unit - std::exp(std::complex<double>{0.0, phase})) < 1e-6);

        // departure and arrival directions are sign-flipped through the lattice
        const Eigen::Vector3d flip{p.index->kx % 2 == 0 ? 1.0 : -1.0, p.index->ky % 2 == 0 ? 1.0 : -1.0,
                                   p.index->kz % 2 == 0 ? 1.0 : -1.0};
        const Eigen::Vector3d expected_dod = -flip.cwiseProduct(*p.doa);
        CHECK((*p.dod - expected_dod).norm() < 1e-9);
    }
}

TEST_CASE("mirror-source channel: count statistics and determinism")
{
    MirrorSourceOptions opt;
    opt.room = box;
    opt.c = 3e8;

    const int reps = 150;
    double total = 0.0;
    for (int r = 0; r < reps; ++r)
    {
        Rng rng = substream(32, 0, static_cast<std::uint64_t>(r));
        total += static_cast<double>(sample_mirror_source_channel(opt, rng).paths.size());
    }
    const double expected = theory::mean_arrival_count(opt.tau_max, box.volume(), 1.0, 1.0, opt.c);
    CHECK(total / reps == doctest::Approx(expected).epsilon(0.03));

    // directive terminals thin the lattice by omega_t omega_r
    MirrorSourceOptions dir = opt;
    dir.omega_t = 0.5;
    dir.omega_r = 0.5;
    double total_dir = 0.0;
    for (int r = 0; r < reps; ++r)
    {
        Rng rng = substream(33, 0, static_cast<std::uint64_t>(r));
        total_dir += static_cast<double>(sample_mirror_source_channel(dir, rng).paths.size());
    }
    CHECK(total_dir / total == doctest::Approx(0.25).epsilon(0.08));

    // same substream, same channel, bit for bit
    Rng r1 = substream(34, 0, 5);
    Rng r2 = substream(34, 0, 5);
    const auto a = sample_mirror_source_channel(opt, r1);
    const auto b = sample_mirror_source_channel(opt, r2);
    REQUIRE(a.paths.size() == b.paths.size());
    for (std::size_t i = 0; i < a.paths.size(); ++i)
    {
        CHECK(a.paths[i].delay == b.paths[i].delay);
        CHECK(a.paths[i].gain == b.paths[i].gain);
        CHECK(a.paths[i].index->kx == b.paths[i].index->kx);
    }
}

TEST_CASE("mirror-source channel: separation guard and random phase")
{
    MirrorSourceOptions opt;
    opt.room = box;
    opt.c = 3e8;
    opt.min_separation = 10.0; // exceeds the room diagonal
    Rng rng = substream(35, 0, 0);
    CHECK_THROWS_AS(sample_mirror_source_channel(opt, rng), std::runtime_error);

    MirrorSourceOptions rp;
    rp.room = box;
    rp.c = 3e8;
    rp.random_phase = true;
    Rng rng2 = substream(36, 0, 0);
    const auto run = sample_mirror_source_channel(rp, rng2);
    int off_geometric = 0;
    for (const auto &p : run.paths)
    {
        const double want = std::pow(rp.wall_gain, p.index->order()) /
                            (std::pow(rp.c * p.delay, 2.0));
        CHECK(std::norm(p.gain) == doctest::Approx(want).epsilon(1e-12));
        const double phase = -2.0 * std::numbers::pi * rp.c * p.delay / rp.wavelength;
        if (std::abs(p.gain / std::abs(p.gain) - std::exp(std::complex<double>{0.0, phase})) > 1e-3)
            ++off_geometric;
    }
    CHECK(off_geometric > static_cast<int>(run.paths.size()) / 2);
}

TEST_CASE("poisson channel glues arrivals and marks")
{
    RateModel rate = default_rate();
    MarkModel marks;
    marks.second_moment = [](double tau) { return 1.0 / (tau * 1e9 + 1.0); };

    Rng rng = substream(41, 0, 0);
    const auto run = sample_poisson_channel(rate, marks, 100e-9, rng);
    CHECK(run.model == RateModel::Kind::quadratic_poisson);
    CHECK(run.tau_max == 100e-9);
    CHECK(run.paths.size() > 1000);
    double last = 0.0;
    for (const auto &p : run.paths)
    {
        CHECK_FALSE(p.index.has_value());
        CHECK(p.delay >= last);
        last = p.delay;
    }

    // pooled mark power tracks sigma^2(tau): early halves beat late halves
    double early = 0.0, late = 0.0;
    int n_early = 0, n_late = 0;
    for (const auto &p : run.paths)
    {
        if (p.delay < 50e-9)
        {
            early += std::norm(p.gain);
            ++n_early;
        }
        else
        {
            late += std::norm(p.gain);
            ++n_late;
        }
    }
    CHECK(early / n_early > late / n_late); // second moment decreases with delay
}

TEST_CASE("spatial sampler: density and footprint thinning")
{
    geometry::Antenna rx;
    rx.position = {2.5, 2.5, 1.5};
    rx.boresight = {1.0, 0.0, 0.0};
    rx.omega = 1.0;

    const double radius = 15.0;
    const double expected = 4.0 / 3.0 * std::numbers::pi * std::pow(radius, 3.0) / box.volume();

    const int reps = 100;
    double total = 0.0;
    for (int r = 0; r < reps; ++r)
    {
        Rng rng = substream(51, 0, static_cast<std::uint64_t>(r));
        const auto pts = spatial_poisson_sample(box, rx, 1.0, radius, rng);
        total += static_cast<double>(pts.size());
        for (const auto &p : pts)
            REQUIRE((p - rx.position).norm() <= radius + 1e-12);
    }
    CHECK(total / reps == doctest::Approx(expected).epsilon(4.0 * std::sqrt(expected / reps) / expected));

    // a quarter-sphere receiver keeps about a quarter of the points, all of
    // them inside the cap
    geometry::Antenna cap = rx;
    cap.omega = 0.25;
    const double cos_lim = std::cos(geometry::cap_half_angle(0.25));
    double total_cap = 0.0;
    for (int r = 0; r < reps; ++r)
    {
        Rng rng = substream(51, 0, static_cast<std::uint64_t>(r)); // same point field
        const auto pts = spatial_poisson_sample(box, cap, 1.0, radius, rng);
        total_cap += static_cast<double>(pts.size());
        for (const auto &p : pts)
        {
            const Eigen::Vector3d dir = (p - cap.position).normalized();
            CHECK(dir.dot(cap.boresight) >= cos_lim - 1e-9);
        }
    }
    CHECK(total_cap / total == doctest::Approx(0.25).epsilon(0.05));
}
