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

#ifndef roomsim_harness_H
#define roomsim_harness_H

#include "roomsim/config.hpp"
#include "roomsim/estimators.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace roomsim
{
    namespace harness
    {

        // Ensemble plus the running residual-power aggregation collected in the
        // same pass
        struct BuildResult
        {
            estimators::Ensemble ensemble;
            std::vector<int> residual_orders;
            Eigen::ArrayXd residual_aggregate; // sum residual / sum total, per order
            Eigen::ArrayXd residual_se;        // between-block standard error
        };

        // Default orders for the residual-power table
        std::vector<int> default_residual_orders();

        // Simulate config.runs realizations and reduce them. Work is split into
        // fixed blocks of 64 runs; blocks are processed by config.threads workers
        // and merged in block order, so results are bitwise independent of the
        // worker count. With a nonempty dump_dir every realization is written to
        // dump_dir/run_XXXXX.csv as it is produced.
        BuildResult build_ensemble(const config::SimulationConfig &config, std::size_t max_orders = 100,
                                   std::vector<int> residual_orders = default_residual_orders(),
                                   const std::filesystem::path &dump_dir = {});

        struct ExperimentResult
        {
            std::filesystem::path out_dir;
            std::vector<std::string> files; // names relative to out_dir
        };

        // Full experiment: build the ensemble for the configured model and write
        // manifest.json plus the CSV summaries (power, kurtosis, counts, order
        // statistics, residual power, temporal-moment distributions, spatial
        // scatter) into config.out
        ExperimentResult run_experiment(const config::SimulationConfig &config);

        // One path per line: kx,ky,kz,delay_ns,gain_re,gain_im,order; lattice
        // fields are empty for point-process paths
        void write_realization_csv(std::ostream &out, const pointprocess::ChannelRealization &realization);

    }
}

#endif
