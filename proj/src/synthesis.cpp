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

#include "roomsim/synthesis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace roomsim
{
    namespace synthesis
    {

        namespace
        {
            constexpr int sinc_half_width = 15;

            double sinc(double x)
            {
                if (std::abs(x) < 1e-12)
                    return 1.0;
                const double px = std::numbers::pi * x;
                return std::sin(px) / px;
            }
        }

        double SampledSignal::energy() const
        {
            return samples.squaredNorm() / sample_rate;
        }

        SampledSignal hamming_pulse(double bandwidth, double sample_rate, bool unit_energy, double duration)
        {
            if (!(bandwidth > 0.0) || !(sample_rate > 0.0))
                throw std::invalid_argument("hamming_pulse: bandwidth and sample_rate must be > 0");
            if (duration == 0.0)
                duration = 2.0 / bandwidth;
            if (!(duration > 0.0))
                throw std::invalid_argument("hamming_pulse: duration must be > 0");

            const auto n = static_cast<Eigen::Index>(std::llround(duration * sample_rate)) + 1;
            if (n < 2)
                throw std::invalid_argument("hamming_pulse: sample_rate too low for the pulse duration");

            SampledSignal s;
            s.sample_rate = sample_rate;
            s.start_time = 0.0;
            s.samples.resize(n);
            for (Eigen::Index i = 0; i < n; ++i)
            {
                const double t = static_cast<double>(i) / sample_rate;
                s.samples[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * t / duration);
            }
            if (unit_energy)
                s.samples /= std::sqrt(s.energy());
            return s;
        }

        double pulse_shape_factor(const SampledSignal &pulse)
        {
            const Eigen::ArrayXd p2 = pulse.samples.array().abs2();
            const double e2 = p2.sum() / pulse.sample_rate;
            const double e4 = (p2 * p2).sum() / pulse.sample_rate;
            if (e2 <= 0.0)
                throw std::invalid_argument("pulse_shape_factor: pulse has zero energy");
            return e4 / (e2 * e2);
        }

        SampledSignal synthesize(const std::vector<geometry::PathComponent> &paths, const SampledSignal &pulse,
                                 double t_end, bool band_limited)
        {
            if (!(t_end > 0.0))
                throw std::invalid_argument("synthesize: t_end must be > 0");
            const double fs = pulse.sample_rate;

            SampledSignal y;
            y.sample_rate = fs;
            y.start_time = 0.0;
            const auto bins = static_cast<Eigen::Index>(std::ceil(t_end * fs)) + 1;
            y.samples = Eigen::VectorXcd::Zero(bins);

            const Eigen::Index np = pulse.samples.size();
            for (const auto &path : paths)
            {
                const double pos = path.delay * fs;
                if (!band_limited)
                {
                    const auto j0 = static_cast<Eigen::Index>(std::llround(pos));
                    const Eigen::Index lo = std::max<Eigen::Index>(0, -j0);
                    const Eigen::Index hi = std::min(np, bins - j0);
                    for (Eigen::Index m = lo; m < hi; ++m)
                        y.samples[j0 + m] += path.gain * pulse.samples[m];
                }
                else
                {
                    const auto base = static_cast<Eigen::Index>(std::floor(pos));
                    const double frac = pos - static_cast<double>(base);
                    for (int tap = -sinc_half_width; tap <= sinc_half_width; ++tap)
                    {
                        const double arg = static_cast<double>(tap) - frac;
                        const double window =
                            0.5 + 0.5 * std::cos(std::numbers::pi * arg / (sinc_half_width + 1.0));
                        const double w = sinc(arg) * window;
                        const Eigen::Index j0 = base + tap;
                        const Eigen::Index lo = std::max<Eigen::Index>(0, -j0);
                        const Eigen::Index hi = std::min(np, bins - j0);
                        for (Eigen::Index m = lo; m < hi; ++m)
                            y.samples[j0 + m] += w * path.gain * pulse.samples[m];
                    }
                }
            }
            return y;
        }

        Eigen::ArrayXd power_profile(const SampledSignal &y)
        {
            return y.samples.array().abs2();
        }

        TemporalMoments temporal_moments(const Eigen::ArrayXd &power, double sample_rate, double start_time)
        {
            const double total = power.sum();
            if (total <= 0.0)
                return {};
            const auto n = power.size();
            Eigen::ArrayXd t(n);
            for (Eigen::Index i = 0; i < n; ++i)
                t[i] = start_time + static_cast<double>(i) / sample_rate;

            TemporalMoments m;
            m.mean_delay = (power * t).sum() / total;
            const double second = (power * (t - m.mean_delay).square()).sum() / total;
            m.rms_spread = std::sqrt(std::max(0.0, second));
            return m;
        }

    }
}
