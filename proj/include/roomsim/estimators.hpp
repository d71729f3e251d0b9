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

#ifndef roomsim_estimators_H
#define roomsim_estimators_H

#include "roomsim/pointprocess.hpp"
#include "roomsim/synthesis.hpp"

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace roomsim
{
    namespace estimators
    {

        // Unbiased estimator of the fourth cumulant kappa_22 = E|X|^4 - 2 (E|X|^2)^2
        // of a circular complex sample:
        //   (N+1)/(N(N-1)) sum |X|^4 - 2/(N(N-1)) (sum |X|^2)^2
        // Exact expectation for any N >= 2.
        double unbiased_fourth_cumulant(std::span<const std::complex<double>> sample);

        // Plug-in estimator m4 - 2 m2^2, biased by -2 (E|X|^4 - (E|X|^2)^2) / N;
        // kept for comparison
        double naive_fourth_cumulant(std::span<const std::complex<double>> sample);

        // Kurtosis of the real (or imaginary) part for a circular sample,
        // kappa_22 / kappa_11^2 + 2 with the unbiased kappa_22
        double kurtosis_estimate(std::span<const std::complex<double>> sample);

        // Streaming per-bin moment sums of |y|^2 across realizations. merge() is
        // exact for any split of the realization set, so ensembles can be
        // accumulated block-wise and combined in a fixed order.
        struct ProfileAccumulator
        {
            Eigen::ArrayXd s2, s4, s6, s8;
            std::size_t runs = 0;

            explicit ProfileAccumulator(Eigen::Index bins = 0);
            void add(const Eigen::ArrayXd &power);
            void merge(const ProfileAccumulator &other);

            Eigen::ArrayXd mean_power() const;
            Eigen::ArrayXd mean_power_se() const;
            Eigen::ArrayXd kurtosis() const;
            Eigen::ArrayXd kurtosis_se() const; // delta method
        };

        // Per-realization statistics of a simulated ensemble on a common grid
        // t_i = i / sample_rate
        struct Ensemble
        {
            double sample_rate = 0.0;
            std::size_t max_orders = 0; // leading delays kept per run

            ProfileAccumulator profile;
            Eigen::ArrayXd count_sum, count_sumsq;        // arrivals up to t_i
            std::vector<std::uint32_t> counts;            // per run
            std::vector<double> mean_delay, rms_spread;   // per run, s
            std::vector<std::vector<double>> leading_delays;

            Ensemble() = default;
            Ensemble(Eigen::Index bins, double sample_rate, std::size_t max_orders = 100);

            std::size_t runs() const { return counts.size(); }
            Eigen::Index bins() const { return profile.s2.size(); }
            double time_at(Eigen::Index i) const { return static_cast<double>(i) / sample_rate; }

            void add(const pointprocess::ChannelRealization &realization, const Eigen::ArrayXd &power);
            void merge(Ensemble &&other);
        };

        // Delays of the n-th arrival (n >= 1) across runs, sorted; runs with
        // fewer than n arrivals are skipped
        std::vector<double> order_statistic_samples(const Ensemble &ensemble, int n);

        // Mean arrival count curve and its standard error on the ensemble grid
        struct CountCurve
        {
            Eigen::ArrayXd mean;
            Eigen::ArrayXd se;
        };
        CountCurve empirical_arrival_counts(const Ensemble &ensemble);

        // Fraction of received energy arriving after the n-th path of one
        // realization: sum_{k > n} |gain_k|^2 / sum_k |gain_k|^2. Defined as 1
        // for n = 0 and 0 when the realization has at most n paths or no power.
        double empirical_residual_power(const pointprocess::ChannelRealization &realization, int n);

        // Residual and total power of one realization for several orders at
        // once, for ratio-of-sums aggregation across an ensemble
        struct ResidualSplit
        {
            std::vector<double> residual; // sum_{k > n_j} |gain_k|^2
            double total = 0.0;
        };
        ResidualSplit residual_power_split(const pointprocess::ChannelRealization &realization,
                                           std::span<const int> orders);

        // Kolmogorov-Smirnov distance sup |F_hat - F| of a sorted sample against
        // a distribution function
        double ks_statistic(std::span<const double> sorted_sample, const std::function<double(double)> &cdf);

        // Two-sample Kolmogorov-Smirnov distance (inputs need not be sorted)
        double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b);

        // Asymptotic critical value sqrt(-ln(alpha/2) / 2) / sqrt(n)
        double ks_critical(double alpha, std::size_t n);

        // Two-sample version, sqrt(-ln(alpha/2) / 2) * sqrt((n + m) / (n m))
        double ks_critical_two_sample(double alpha, std::size_t n, std::size_t m);

    }
}

#endif
