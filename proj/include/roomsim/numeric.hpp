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

#ifndef roomsim_numeric_H
#define roomsim_numeric_H

#include <cstddef>

namespace roomsim
{
    namespace numeric
    {

        // Regularized lower incomplete gamma function P(s, x) for s > 0, x >= 0.
        // Series expansion for x < s + 1, Lentz continued fraction otherwise.
        // Converges to ~1e-15 relative accuracy; throws std::runtime_error if the
        // iteration cap (1e6) is hit without convergence.
        double regularized_lower_gamma(double s, double x);

        // Upper counterpart Q(s, x) = 1 - P(s, x), computed directly so that small
        // tail values keep full relative accuracy.
        double regularized_upper_gamma(double s, double x);

        // exp(lgamma(a) - lgamma(b))
        double gamma_ratio(double a, double b);

    }
}

#endif
