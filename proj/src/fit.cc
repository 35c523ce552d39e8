// Copyright 2026 The mixstab Authors
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


#include "mixstab/fit.h"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace mixstab {

LinearFit fit_basis(std::span<const double> x, std::span<const double> y, std::span<const double> weights,
                    const std::vector<std::function<double(double)>> &basis) {
    size_t n = x.size(), m = basis.size();
    if (y.size() != n || (!weights.empty() && weights.size() != n)) {
        throw std::invalid_argument("fit inputs have mismatched lengths");
    }
    if (n < m || m == 0) {
        throw std::invalid_argument("need at least as many points as fit parameters");
    }
    Eigen::MatrixXd a(n, m);
    Eigen::VectorXd b(n), w(n);
    for (size_t i = 0; i < n; i++) {
        w(i) = weights.empty() ? 1.0 : weights[i];
        if (!(w(i) > 0)) {
            throw std::invalid_argument("fit weights must be positive");
        }
        double sw = std::sqrt(w(i));
        for (size_t j = 0; j < m; j++) {
            a(i, j) = sw * basis[j](x[i]);
        }
        b(i) = sw * y[i];
    }
    Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);

    LinearFit fit;
    fit.coefficients.assign(c.data(), c.data() + m);
    double wsum = w.sum(), ymean = 0;
    for (size_t i = 0; i < n; i++) {
        ymean += w(i) * y[i];
    }
    ymean /= wsum;
    double ss_tot = 0;
    Eigen::VectorXd resid = a * c - b;
    for (size_t i = 0; i < n; i++) {
        ss_tot += w(i) * (y[i] - ymean) * (y[i] - ymean);
    }
    fit.ss_res = resid.squaredNorm();
    // Constant data: perfect if the residual is at rounding level.
    bool exact = fit.ss_res <= 1e-20 * (1 + b.squaredNorm());
    fit.r_squared = ss_tot > 0 ? 1 - fit.ss_res / ss_tot : (exact ? 1.0 : 0.0);
    return fit;
}

}  // namespace mixstab
