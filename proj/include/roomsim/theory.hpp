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

#ifndef roomsim_theory_H
#define roomsim_theory_H

#include "roomsim/geometry.hpp"
#include "roomsim/pointprocess.hpp"
#include "roomsim/synthesis.hpp"

#include <Eigen/Dense>

namespace roomsim
{
    namespace theory
    {

        // Wall-visit variance correction 1 / (1 + gamma_sq ln(g) / 2) to the
        // geometric-decay reverberation time
        double kuttruff_correction(double wall_gain, double gamma_sq);

        // Energy decay time T of the room: -4 V xi / (c S ln(g)), s
        double reverberation_time(const geometry::Room &room, double wall_gain, double gamma_sq,
                                  double c = geometry::default_speed_of_light);

        // Arrival rate of the delay point process, 1/s:
        //   lambda(tau) = 4 pi c^3 tau^2 omega_t omega_r / V
        double arrival_rate(double tau, double volume, double omega_t, double omega_r,
                            double c = geometry::default_speed_of_light);

        // Expected number of arrivals up to tau: (tau / a)^3
        double mean_arrival_count(double tau, double volume, double omega_t, double omega_r,
                                  double c = geometry::default_speed_of_light);

        // Scale a of the arrival process, s: a^3 = 3 V / (4 pi c^3 omega_t omega_r),
        // so that E N(tau) = (tau / a)^3
        double order_statistic_scale(double volume, double omega_t, double omega_r,
                                     double c = geometry::default_speed_of_light);

        // Conditional mean power of one path at delay tau:
        //   sigma^2(tau) = exp(-tau / T) / (c^2 tau^2 omega_t omega_r)
        double conditional_second_moment(double tau, double omega_t, double omega_r, double reverb_time,
                                         double c = geometry::default_speed_of_light);

        // Power delay spectrum P(tau) = (4 pi c / V) exp(-tau / T), 1/s: the
        // density of expected received power per unit delay under unit-energy
        // excitation
        double power_delay_spectrum(double tau, double volume, double reverb_time,
                                    double c = geometry::default_speed_of_light);

        // 2n-th moment density P_2n(tau) = E[|alpha|^2n | tau] lambda(tau)
        double cumulant_delay_spectrum(double tau, int n, const pointprocess::MarkModel &marks,
                                       const pointprocess::RateModel &rate);

        // Expected received power E|y(t)|^2 = integral P_2(tau) |s(t - tau)|^2 dtau
        // for unit-energy pulse s. Trapezoid on the pulse sample grid; valid for
        // t past the pulse duration (the integrand is cut at tau = 0).
        Eigen::ArrayXd expected_received_power(const Eigen::ArrayXd &t, const synthesis::SampledSignal &pulse,
                                               const pointprocess::MarkModel &marks,
                                               const pointprocess::RateModel &rate);

        // n-th even cumulant profile of the received signal,
        //   kappa_n(t) = integral P_2n(tau) |s(t - tau)|^2n dtau
        Eigen::ArrayXd even_cumulant_profile(const Eigen::ArrayXd &t, int n, const synthesis::SampledSignal &pulse,
                                             const pointprocess::MarkModel &marks,
                                             const pointprocess::RateModel &rate);

        // Kurtosis of Re y(t) (= kurtosis of Im y(t)) over the ensemble:
        //   kappa_2(t) / kappa_1(t)^2 + 2
        Eigen::ArrayXd kurtosis_delay_profile(const Eigen::ArrayXd &t, const synthesis::SampledSignal &pulse,
                                              const pointprocess::MarkModel &marks,
                                              const pointprocess::RateModel &rate);

        // Large-bandwidth limit of the kurtosis profile:
        //   mark_kurtosis * kappa_s / lambda(t) + 2
        // with kappa_s the pulse shape factor
        double kurtosis_high_bandwidth(double t, double mark_kurtosis, double pulse_shape_factor,
                                       const pointprocess::RateModel &rate);

        // Distribution function of the n-th arrival delay (n >= 1):
        //   F_n(tau) = P(N(tau) >= n), the regularized lower incomplete gamma
        //   function of (n, (tau/a)^3)
        double order_statistic_cdf(int n, double tau, double scale_a);

        // r-th raw moment of the n-th arrival delay, any real r > -3n:
        //   a^r Gamma(n + r/3) / Gamma(n)
        double order_statistic_moment(int n, double r, double scale_a);

        namespace detail
        {
            // Power series sum_r (nu a)^r / r! * Gamma(n + r/3) / Gamma(n); throws
            // when alternating-series cancellation exceeds ~1e12
            double order_statistic_mgf_series(int n, double scale_a, double nu);

            // Gauss-type fallback: E exp(nu a U^{1/3}) with U ~ Gamma(n, 1) by
            // Simpson quadrature on a window around the mode
            double order_statistic_mgf_quadrature(int n, double scale_a, double nu);
        }

        // Moment generating function E exp(nu tau_n) of the n-th arrival delay.
        // Series where it is stable, quadrature otherwise.
        double order_statistic_mgf(int n, double scale_a, double nu);

        // Expected fraction of received power remaining after the n-th arrival:
        //   M_n(-1/T), the Laplace transform of the n-th delay law at 1/T
        double residual_power_ratio(int n, double scale_a, double reverb_time);

        // Large-n asymptote exp(-n^{1/3} a / T) of the residual power ratio
        double residual_power_ratio_asymptotic(int n, double scale_a, double reverb_time);

        // Conditional law of the gap to the next arrival given an arrival at
        // tau_k: F(delta) = 1 - exp(-((tau_k + delta)^3 - tau_k^3) / a^3)
        double interarrival_cdf(double tau_k, double delta, double scale_a);

    }
}

#endif
