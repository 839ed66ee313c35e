// Copyright 2026 The cvqkd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef CVQKD_TESTS_TEST_SUPPORT_HPP
#define CVQKD_TESTS_TEST_SUPPORT_HPP

#include <random>

#include "cvqkd/gaussian.hpp"

namespace cvqkd::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Mixed n-mode state: thermal modes and TMSV pairs scrambled by beamsplitters.
inline CovarianceMatrix random_physical_state(std::mt19937_64& rng, int n_modes) {
    CovarianceMatrix cov = CovarianceMatrix::thermal(uniform(rng, 1.0, 4.0));
    while (cov.n_modes() < n_modes) {
        if (n_modes - cov.n_modes() >= 2 && uniform(rng, 0.0, 1.0) < 0.5) {
            cov = direct_sum(cov, tmsv_covariance(uniform(rng, 1.0, 6.0)));
        } else {
            cov = direct_sum(cov, CovarianceMatrix::thermal(uniform(rng, 1.0, 4.0)));
        }
    }
    for (int k = 0; k < 2 * n_modes; ++k) {
        const int i = static_cast<int>(uniform(rng, 0.0, n_modes));
        int j = static_cast<int>(uniform(rng, 0.0, n_modes));
        if (i == j) j = (i + 1) % n_modes;
        if (i == j) break;
        cov = beamsplitter(cov, i, j, uniform(rng, 0.05, 0.95));
    }
    return cov;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace cvqkd::testing

#endif  // CVQKD_TESTS_TEST_SUPPORT_HPP
