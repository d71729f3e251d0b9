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

#ifndef roomsim_synthesis_H
#define roomsim_synthesis_H

#include "roomsim/geometry.hpp"

#include <Eigen/Dense>

#include <vector>

namespace roomsim
{
    namespace synthesis
    {

        // Uniformly sampled complex baseband signal. samples[i] is the value at
        // start_time + i / sample_rate.
        struct SampledSignal
        {
            double sample_rate = 0.0; // Hz
            double start_time = 0.0;  // s
            Eigen::VectorXcd samples;

            double dt() const { return 1.0 / sample_rate; }
            double time_at(Eigen::Index i) const { return start_time + static_cast<double>(i) / sample_rate; }
            double duration() const { return static_cast<double>(samples.size()) / sample_rate; }

            // integral |s(t)|^2 dt, rectangle rule on the sample grid
            double energy() const;
        };

        // Hamming-windowed pulse of the given duration (default 2 / bandwidth),
        // starting at t = 0:  s(t) = A (0.54 - 0.46 cos(2 pi t / d)).
        // With unit_energy the amplitude A normalizes the sampled energy to 1 J;
        // otherwise A = 1.
        SampledSignal hamming_pulse(double bandwidth, double sample_rate, bool unit_energy = true,
                                    double duration = 0.0);

        // Shape factor kappa_s = integral |s|^4 dt / (integral |s|^2 dt)^2 of a
        // pulse, 1/s. Evaluated on the sample grid.
        double pulse_shape_factor(const SampledSignal &pulse);

        // Sum of delayed and scaled pulse copies on a grid covering [0, t_end]:
        //   y(t) = sum_k gain_k s(t - delay_k).
        // Default placement snaps each delay to the nearest sample. With
        // band_limited, each copy is placed with a windowed-sinc fractional-delay
        // kernel instead (31 taps, Hann window).
        SampledSignal synthesize(const std::vector<geometry::PathComponent> &paths, const SampledSignal &pulse,
                                 double t_end, bool band_limited = false);

        // |y|^2 per sample
        Eigen::ArrayXd power_profile(const SampledSignal &y);

        struct TemporalMoments
        {
            double mean_delay = 0.0; // s
            double rms_spread = 0.0; // s
        };

        // Power-weighted mean delay and rms spread of a nonnegative profile given
        // on the grid start_time + i / sample_rate. Zero profile gives {0, 0}.
        TemporalMoments temporal_moments(const Eigen::ArrayXd &power, double sample_rate, double start_time = 0.0);

    }
}

#endif
