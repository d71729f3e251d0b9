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

#include "roomsim/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace roomsim
{
    namespace estimators
    {

        namespace
        {
            struct MomentSums
            {
                double s2 = 0.0, s4 = 0.0;
                std::size_t n = 0;
            };

            MomentSums moment_sums(std::span<const std::complex<double>> sample)
            {
                MomentSums m;
                m.n = sample.size();
                for (const auto &x : sample)
                {
                    const double p = std::norm(x);
                    m.s2 += p;
                    m.s4 += p * p;
                }
                return m;
            }
        }

        double unbiased_fourth_cumulant(std::span<const std::complex<double>> sample)
        {
            const auto m = moment_sums(sample);
            if (m.n < 2)
                throw std::invalid_argument("unbiased_fourth_cumulant: need at least 2 samples");
            const double dn = static_cast<double>(m.n);
            return (dn + 1.0) / (dn * (dn - 1.0)) * m.s4 - 2.0 / (dn * (dn - 1.0)) * m.s2 * m.s2;
        }

        double naive_fourth_cumulant(std::span<const std::complex<double>> sample)
        {
            const auto m = moment_sums(sample);
            if (m.n < 1)
                throw std::invalid_argument("naive_fourth_cumulant: need at least 1 sample");
            const double dn = static_cast<double>(m.n);
            const double m2 = m.s2 / dn;
            return m.s4 / dn - 2.0 * m2 * m2;
        }

        double kurtosis_estimate(std::span<const std::complex<double>> sample)
        {
            const auto m = moment_sums(sample);
            if (m.n < 2)
                throw std::invalid_argument("kurtosis_estimate: need at least 2 samples");
            const double mean2 = m.s2 / static_cast<double>(m.n);
            if (mean2 <= 0.0)
                throw std::invalid_argument("kurtosis_estimate: sample has zero power");
            return unbiased_fourth_cumulant(sample) / (mean2 * mean2) + 2.0;
        }

        ProfileAccumulator::ProfileAccumulator(Eigen::Index bins)
            : s2(Eigen::ArrayXd::Zero(bins)), s4(Eigen::ArrayXd::Zero(bins)), s6(Eigen::ArrayXd::Zero(bins)),
              s8(Eigen::ArrayXd::Zero(bins))
        {
        }

        void ProfileAccumulator::add(const Eigen::ArrayXd &power)
        {
            if (power.size() != s2.size())
                throw std::invalid_argument("ProfileAccumulator::add: grid size mismatch");
            const Eigen::ArrayXd p2 = power * power;
            s2 += power;
            s4 += p2;
            s6 += p2 * power;
            s8 += p2 * p2;
            ++runs;
        }

        void ProfileAccumulator::merge(const ProfileAccumulator &other)
        {
            if (other.s2.size() != s2.size())
                throw std::invalid_argument("ProfileAccumulator::merge: grid size mismatch");
            s2 += other.s2;
            s4 += other.s4;
            s6 += other.s6;
            s8 += other.s8;
            runs += other.runs;
        }

        Eigen::ArrayXd ProfileAccumulator::mean_power() const
        {
            return s2 / static_cast<double>(runs);
        }

        Eigen::ArrayXd ProfileAccumulator::mean_power_se() const
        {
            const double dn = static_cast<double>(runs);
            const Eigen::ArrayXd m2 = s2 / dn;
            const Eigen::ArrayXd var = (s4 / dn - m2.square()) * (dn / (dn - 1.0));
            return (var / dn).max(0.0).sqrt();
        }

        Eigen::ArrayXd ProfileAccumulator::kurtosis() const
        {
            const double dn = static_cast<double>(runs);
            const Eigen::ArrayXd k22 =
                (dn + 1.0) / (dn * (dn - 1.0)) * s4 - 2.0 / (dn * (dn - 1.0)) * s2.square();
            const Eigen::ArrayXd k11 = s2 / dn;
            return k22 / k11.square() + 2.0;
        }

        Eigen::ArrayXd ProfileAccumulator::kurtosis_se() const
        {
            const double dn = static_cast<double>(runs);
            const Eigen::ArrayXd m2 = s2 / dn;
            const Eigen::ArrayXd m4 = s4 / dn;
            const Eigen::ArrayXd m6 = s6 / dn;
            const Eigen::ArrayXd m8 = s8 / dn;
            const Eigen::ArrayXd var = ((m8 - m4.square()) / m2.pow(4) +
                                        4.0 * m4.square() * (m4 - m2.square()) / m2.pow(6) -
                                        4.0 * m4 * (m6 - m4 * m2) / m2.pow(5)) /
                                       dn;
            return var.max(0.0).sqrt();
        }

        Ensemble::Ensemble(Eigen::Index bins, double sample_rate_, std::size_t max_orders_)
            : sample_rate(sample_rate_), max_orders(max_orders_), profile(bins),
              count_sum(Eigen::ArrayXd::Zero(bins)), count_sumsq(Eigen::ArrayXd::Zero(bins))
        {
        }

        void Ensemble::add(const pointprocess::ChannelRealization &realization, const Eigen::ArrayXd &power)
        {
            profile.add(power);

            counts.push_back(static_cast<std::uint32_t>(realization.paths.size()));

            const auto moments = synthesis::temporal_moments(power, sample_rate, 0.0);
            mean_delay.push_back(moments.mean_delay);
            rms_spread.push_back(moments.rms_spread);

            std::vector<double> lead;
            lead.reserve(std::min(max_orders, realization.paths.size()));
            for (std::size_t i = 0; i < realization.paths.size() && i < max_orders; ++i)
                lead.push_back(realization.paths[i].delay);
            leading_delays.push_back(std::move(lead));

            Eigen::ArrayXd cumulative = Eigen::ArrayXd::Zero(bins());
            for (const auto &path : realization.paths)
            {
                const auto j0 = static_cast<Eigen::Index>(std::ceil(path.delay * sample_rate));
                if (j0 < bins())
                    cumulative[j0] += 1.0;
            }
            double running = 0.0;
            for (Eigen::Index j = 0; j < bins(); ++j)
            {
                running += cumulative[j];
                count_sum[j] += running;
                count_sumsq[j] += running * running;
            }
        }

        void Ensemble::merge(Ensemble &&other)
        {
            profile.merge(other.profile);
            count_sum += other.count_sum;
            count_sumsq += other.count_sumsq;
            counts.insert(counts.end(), other.counts.begin(), other.counts.end());
            mean_delay.insert(mean_delay.end(), other.mean_delay.begin(), other.mean_delay.end());
            rms_spread.insert(rms_spread.end(), other.rms_spread.begin(), other.rms_spread.end());
            for (auto &lead : other.leading_delays)
                leading_delays.push_back(std::move(lead));
        }

        std::vector<double> order_statistic_samples(const Ensemble &ensemble, int n)
        {
            if (n < 1 || static_cast<std::size_t>(n) > ensemble.max_orders)
                throw std::invalid_argument("order_statistic_samples: n outside the recorded order range");
            std::vector<double> out;
            out.reserve(ensemble.runs());
            for (const auto &lead : ensemble.leading_delays)
                if (lead.size() >= static_cast<std::size_t>(n))
                    out.push_back(lead[static_cast<std::size_t>(n) - 1]);
            std::sort(out.begin(), out.end());
            return out;
        }

        CountCurve empirical_arrival_counts(const Ensemble &ensemble)
        {
            const double dn = static_cast<double>(ensemble.runs());
            CountCurve curve;
            curve.mean = ensemble.count_sum / dn;
            const Eigen::ArrayXd var = (ensemble.count_sumsq / dn - curve.mean.square()) * (dn / (dn - 1.0));
            curve.se = (var / dn).max(0.0).sqrt();
            return curve;
        }

        double empirical_residual_power(const pointprocess::ChannelRealization &realization, int n)
        {
            if (n < 0)
                throw std::invalid_argument("empirical_residual_power: n must be >= 0");
            double total = 0.0, residual = 0.0;
            for (std::size_t i = 0; i < realization.paths.size(); ++i)
            {
                const double p = std::norm(realization.paths[i].gain);
                total += p;
                if (i >= static_cast<std::size_t>(n))
                    residual += p;
            }
            if (total <= 0.0)
                return 0.0;
            return residual / total;
        }

        ResidualSplit residual_power_split(const pointprocess::ChannelRealization &realization,
                                           std::span<const int> orders)
        {
            ResidualSplit split;
            split.residual.assign(orders.size(), 0.0);

            std::vector<double> suffix(realization.paths.size() + 1, 0.0);
            for (std::size_t i = realization.paths.size(); i > 0; --i)
                suffix[i - 1] = suffix[i] + std::norm(realization.paths[i - 1].gain);
            split.total = suffix.empty() ? 0.0 : suffix[0];

            for (std::size_t j = 0; j < orders.size(); ++j)
            {
                if (orders[j] < 0)
                    throw std::invalid_argument("residual_power_split: orders must be >= 0");
                const auto n = static_cast<std::size_t>(orders[j]);
                split.residual[j] = n < suffix.size() ? suffix[n] : 0.0;
            }
            return split;
        }

        double ks_statistic(std::span<const double> sorted_sample, const std::function<double(double)> &cdf)
        {
            const std::size_t n = sorted_sample.size();
            if (n == 0)
                throw std::invalid_argument("ks_statistic: empty sample");
            double d = 0.0;
            for (std::size_t i = 0; i < n; ++i)
            {
                const double f = cdf(sorted_sample[i]);
                const double lo = static_cast<double>(i) / static_cast<double>(n);
                const double hi = static_cast<double>(i + 1) / static_cast<double>(n);
                d = std::max({d, std::abs(f - lo), std::abs(hi - f)});
            }
            return d;
        }

        double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b)
        {
            if (a.empty() || b.empty())
                throw std::invalid_argument("ks_statistic_two_sample: empty sample");
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            double d = 0.0;
            std::size_t i = 0, j = 0;
            const double na = static_cast<double>(a.size());
            const double nb = static_cast<double>(b.size());
            while (i < a.size() && j < b.size())
            {
                // consume every copy of the smaller value from both sides before
                // comparing, so ties do not leave a phantom half-step gap
                const double x = std::min(a[i], b[j]);
                while (i < a.size() && a[i] == x)
                    ++i;
                while (j < b.size() && b[j] == x)
                    ++j;
                d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
            }
            return d;
        }

        double ks_critical(double alpha, std::size_t n)
        {
            if (!(alpha > 0.0) || !(alpha < 1.0) || n == 0)
                throw std::invalid_argument("ks_critical: need alpha in (0, 1) and n > 0");
            return std::sqrt(-std::log(alpha / 2.0) / 2.0) / std::sqrt(static_cast<double>(n));
        }

        double ks_critical_two_sample(double alpha, std::size_t n, std::size_t m)
        {
            if (!(alpha > 0.0) || !(alpha < 1.0) || n == 0 || m == 0)
                throw std::invalid_argument("ks_critical_two_sample: need alpha in (0, 1) and n, m > 0");
            const double dn = static_cast<double>(n);
            const double dm = static_cast<double>(m);
            return std::sqrt(-std::log(alpha / 2.0) / 2.0) * std::sqrt((dn + dm) / (dn * dm));
        }

    }
}
