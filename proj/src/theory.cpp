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

#include "roomsim/theory.hpp"
#include "roomsim/numeric.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace roomsim
{
    namespace theory
    {

        namespace
        {
            void check_geometry_args(double volume, double omega_t, double omega_r, double c)
            {
                if (!(volume > 0.0) || !(c > 0.0))
                    throw std::invalid_argument("theory: volume and c must be > 0");
                if (!(omega_t > 0.0) || omega_t > 1.0 || !(omega_r > 0.0) || omega_r > 1.0)
                    throw std::invalid_argument("theory: omega_t and omega_r must be in (0, 1]");
            }

            // integral f(tau(u)) |s(u)|^2n du over the pulse support, equal-weight
            // sum on the sample grid, integrand cut at tau <= 0. The equal weights
            // match the nearest-sample placement of the simulation: each pulse
            // sample collects one full bin of arrival mass, and the unit-energy
            // normalization uses the same rule.
            template <typename F>
            double pulse_window_integral(double t, int n, const synthesis::SampledSignal &pulse, F &&density)
            {
                const Eigen::Index np = pulse.samples.size();
                const double dt = pulse.dt();
                double acc = 0.0;
                for (Eigen::Index j = 0; j < np; ++j)
                {
                    const double tau = t - pulse.time_at(j);
                    if (tau <= 0.0)
                        continue;
                    const double p2 = std::norm(pulse.samples[j]);
                    acc += std::pow(p2, n) * density(tau);
                }
                return acc * dt;
            }
        }

        double kuttruff_correction(double wall_gain, double gamma_sq)
        {
            if (!(wall_gain > 0.0) || !(wall_gain < 1.0))
                throw std::invalid_argument("kuttruff_correction: wall_gain must be in (0, 1)");
            if (gamma_sq < 0.0)
                throw std::invalid_argument("kuttruff_correction: gamma_sq must be >= 0");
            return 1.0 / (1.0 + gamma_sq * std::log(wall_gain) / 2.0);
        }

        double reverberation_time(const geometry::Room &room, double wall_gain, double gamma_sq, double c)
        {
            const double xi = kuttruff_correction(wall_gain, gamma_sq);
            return -4.0 * room.volume() * xi / (c * room.surface_area() * std::log(wall_gain));
        }

        double arrival_rate(double tau, double volume, double omega_t, double omega_r, double c)
        {
            check_geometry_args(volume, omega_t, omega_r, c);
            return 4.0 * std::numbers::pi * c * c * c * tau * tau * omega_t * omega_r / volume;
        }

        double mean_arrival_count(double tau, double volume, double omega_t, double omega_r, double c)
        {
            return arrival_rate(tau, volume, omega_t, omega_r, c) * tau / 3.0;
        }

        double order_statistic_scale(double volume, double omega_t, double omega_r, double c)
        {
            check_geometry_args(volume, omega_t, omega_r, c);
            return std::cbrt(3.0 * volume / (4.0 * std::numbers::pi * omega_t * omega_r)) / c;
        }

        double conditional_second_moment(double tau, double omega_t, double omega_r, double reverb_time, double c)
        {
            if (!(tau > 0.0))
                throw std::invalid_argument("conditional_second_moment: tau must be > 0");
            return std::exp(-tau / reverb_time) / (c * c * tau * tau * omega_t * omega_r);
        }

        double power_delay_spectrum(double tau, double volume, double reverb_time, double c)
        {
            return 4.0 * std::numbers::pi * c / volume * std::exp(-tau / reverb_time);
        }

        double cumulant_delay_spectrum(double tau, int n, const pointprocess::MarkModel &marks,
                                       const pointprocess::RateModel &rate)
        {
            if (n < 1)
                throw std::invalid_argument("cumulant_delay_spectrum: n must be >= 1");
            return marks.conditional_moment(tau, n) * rate.rate(tau);
        }

        Eigen::ArrayXd expected_received_power(const Eigen::ArrayXd &t, const synthesis::SampledSignal &pulse,
                                               const pointprocess::MarkModel &marks,
                                               const pointprocess::RateModel &rate)
        {
            return even_cumulant_profile(t, 1, pulse, marks, rate);
        }

        Eigen::ArrayXd even_cumulant_profile(const Eigen::ArrayXd &t, int n, const synthesis::SampledSignal &pulse,
                                             const pointprocess::MarkModel &marks,
                                             const pointprocess::RateModel &rate)
        {
            if (n < 1)
                throw std::invalid_argument("even_cumulant_profile: n must be >= 1");
            Eigen::ArrayXd out(t.size());
            for (Eigen::Index i = 0; i < t.size(); ++i)
                out[i] = pulse_window_integral(t[i], n, pulse,
                                               [&](double tau) { return cumulant_delay_spectrum(tau, n, marks, rate); });
            return out;
        }

        Eigen::ArrayXd kurtosis_delay_profile(const Eigen::ArrayXd &t, const synthesis::SampledSignal &pulse,
                                              const pointprocess::MarkModel &marks,
                                              const pointprocess::RateModel &rate)
        {
            const Eigen::ArrayXd k1 = even_cumulant_profile(t, 1, pulse, marks, rate);
            const Eigen::ArrayXd k2 = even_cumulant_profile(t, 2, pulse, marks, rate);
            return k2 / k1.square() + 2.0;
        }

        double kurtosis_high_bandwidth(double t, double mark_kurtosis, double pulse_shape_factor,
                                       const pointprocess::RateModel &rate)
        {
            return mark_kurtosis * pulse_shape_factor / rate.rate(t) + 2.0;
        }

        double order_statistic_cdf(int n, double tau, double scale_a)
        {
            if (n < 1)
                throw std::invalid_argument("order_statistic_cdf: n must be >= 1");
            if (tau <= 0.0)
                return 0.0;
            const double u = tau / scale_a;
            return numeric::regularized_lower_gamma(static_cast<double>(n), u * u * u);
        }

        double order_statistic_moment(int n, double r, double scale_a)
        {
            if (n < 1)
                throw std::invalid_argument("order_statistic_moment: n must be >= 1");
            if (r <= -3.0 * n)
                throw std::invalid_argument("order_statistic_moment: requires r > -3 n");
            return std::pow(scale_a, r) * numeric::gamma_ratio(n + r / 3.0, static_cast<double>(n));
        }

        namespace detail
        {

            double order_statistic_mgf_series(int n, double scale_a, double nu)
            {
                const double x = nu * scale_a;
                const double lg_n = std::lgamma(static_cast<double>(n));
                double sum = 1.0;
                double max_abs = 1.0;
                double log_xr_fact = 0.0; // log |x|^r / r!
                for (int r = 1; r < 400; ++r)
                {
                    log_xr_fact += std::log(std::abs(x)) - std::log(static_cast<double>(r));
                    const double term = (x < 0.0 && r % 2 == 1 ? -1.0 : 1.0) *
                                        std::exp(log_xr_fact + std::lgamma(n + r / 3.0) - lg_n);
                    sum += term;
                    max_abs = std::max(max_abs, std::abs(term));
                    if (std::abs(term) < 1e-16 * std::abs(sum) && r > 8)
                    {
                        if (max_abs > 1e12 * std::abs(sum))
                            throw std::runtime_error("order_statistic_mgf_series: catastrophic cancellation");
                        return sum;
                    }
                }
                throw std::runtime_error("order_statistic_mgf_series: did not converge");
            }

            double order_statistic_mgf_quadrature(int n, double scale_a, double nu)
            {
                // substituting w = (tau / a): the n-th delay has density
                // 3 w^{3n-1} exp(-w^3) / Gamma(n), so the transform is
                // 3 / Gamma(n) * integral w^{3n-1} exp(-w^3 + nu a w) dw, an
                // analytic integrand peaked near w = n^{1/3}
                const double dn = static_cast<double>(n);
                const double x = nu * scale_a;
                const double w_star = std::cbrt(dn);
                const double sigma = 1.0 / (3.0 * std::pow(dn, 1.0 / 6.0));
                const double lo = std::max(0.0, w_star - 14.0 * sigma - 0.5);
                const double hi = w_star + 14.0 * sigma + 1.0 + 0.5 * std::max(0.0, x);
                const int segments = 20000;
                const double h = (hi - lo) / segments;
                const double lg_n = std::lgamma(dn);

                auto log_f = [&](double w) {
                    return (3.0 * dn - 1.0) * std::log(w) - w * w * w + x * w + std::log(3.0) - lg_n;
                };

                double peak = log_f(std::max(w_star, lo + h));
                for (int i = 1; i <= segments; i += 100)
                    peak = std::max(peak, log_f(lo + i * h));

                double acc = 0.0;
                for (int i = 0; i <= segments; ++i)
                {
                    const double w = lo + i * h;
                    if (w <= 0.0)
                        continue;
                    const double weight = (i == 0 || i == segments) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
                    acc += weight * std::exp(log_f(w) - peak);
                }
                return acc * h / 3.0 * std::exp(peak);
            }

        }

        double order_statistic_mgf(int n, double scale_a, double nu)
        {
            if (n < 1)
                throw std::invalid_argument("order_statistic_mgf: n must be >= 1");
            if (nu == 0.0)
                return 1.0;
            try
            {
                return detail::order_statistic_mgf_series(n, scale_a, nu);
            }
            catch (const std::runtime_error &)
            {
                return detail::order_statistic_mgf_quadrature(n, scale_a, nu);
            }
        }

        double residual_power_ratio(int n, double scale_a, double reverb_time)
        {
            return order_statistic_mgf(n, scale_a, -1.0 / reverb_time);
        }

        double residual_power_ratio_asymptotic(int n, double scale_a, double reverb_time)
        {
            return std::exp(-std::cbrt(static_cast<double>(n)) * scale_a / reverb_time);
        }

        double interarrival_cdf(double tau_k, double delta, double scale_a)
        {
            if (tau_k < 0.0 || delta < 0.0)
                throw std::invalid_argument("interarrival_cdf: tau_k and delta must be >= 0");
            const double a3 = scale_a * scale_a * scale_a;
            const double hi = tau_k + delta;
            return -std::expm1(-(hi * hi * hi - tau_k * tau_k * tau_k) / a3);
        }

    }
}
