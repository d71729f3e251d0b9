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

#include "roomsim/numeric.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace roomsim
{
    namespace numeric
    {

        namespace
        {
            constexpr std::size_t max_iterations = 1000000;
            constexpr double tiny = 1e-300;

            // Lower series:  P(s,x) = x^s e^-x / Gamma(s) * sum_k x^k / (s (s+1) ... (s+k))
            double lower_series(double s, double x)
            {
                double term = 1.0 / s;
                double sum = term;
                for (std::size_t k = 1; k < max_iterations; ++k)
                {
                    term *= x / (s + static_cast<double>(k));
                    sum += term;
                    if (std::abs(term) < std::abs(sum) * 1e-16)
                        return sum * std::exp(s * std::log(x) - x - std::lgamma(s));
                }
                throw std::runtime_error("regularized_lower_gamma: series did not converge");
            }

            // Upper continued fraction (modified Lentz):
            //   Q(s,x) = x^s e^-x / Gamma(s) * 1/(x+1-s- 1*(1-s)/(x+3-s- ...))
            double upper_fraction(double s, double x)
            {
                double b = x + 1.0 - s;
                double c = 1.0 / tiny;
                double d = 1.0 / b;
                double h = d;
                for (std::size_t i = 1; i < max_iterations; ++i)
                {
                    const double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
                    b += 2.0;
                    d = an * d + b;
                    if (std::abs(d) < tiny)
                        d = tiny;
                    c = b + an / c;
                    if (std::abs(c) < tiny)
                        c = tiny;
                    d = 1.0 / d;
                    const double delta = d * c;
                    h *= delta;
                    if (std::abs(delta - 1.0) < 1e-16)
                        return h * std::exp(s * std::log(x) - x - std::lgamma(s));
                }
                throw std::runtime_error("regularized_upper_gamma: continued fraction did not converge");
            }
        }

        double regularized_lower_gamma(double s, double x)
        {
            if (!(s > 0.0) || !(x >= 0.0))
                throw std::invalid_argument("regularized_lower_gamma: requires s > 0 and x >= 0");
            if (x == 0.0)
                return 0.0;
            if (x < s + 1.0)
                return lower_series(s, x);
            return 1.0 - upper_fraction(s, x);
        }

        double regularized_upper_gamma(double s, double x)
        {
            if (!(s > 0.0) || !(x >= 0.0))
                throw std::invalid_argument("regularized_upper_gamma: requires s > 0 and x >= 0");
            if (x == 0.0)
                return 1.0;
            if (x < s + 1.0)
                return 1.0 - lower_series(s, x);
            return upper_fraction(s, x);
        }

        double gamma_ratio(double a, double b)
        {
            return std::exp(std::lgamma(a) - std::lgamma(b));
        }

    }
}
