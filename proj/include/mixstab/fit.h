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


#ifndef MIXSTAB_FIT_H
#define MIXSTAB_FIT_H

#include <functional>
#include <span>
#include <vector>

namespace mixstab {

struct LinearFit {
    std::vector<double> coefficients;
    /// Weighted coefficient of determination, 1 - SS_res / SS_tot (SS_tot about the weighted mean).
    double r_squared = 0;
    /// Weighted residual sum of squares.
    double ss_res = 0;
};

/// Weighted least squares of y on the given basis functions of x: minimizes sum w_i (y_i - sum_j c_j f_j(x_i))^2.
/// Empty `weights` means unit weights. Throws std::invalid_argument if there are fewer points than basis functions.
LinearFit fit_basis(std::span<const double> x, std::span<const double> y, std::span<const double> weights,
                    const std::vector<std::function<double(double)>> &basis);

}  // namespace mixstab

#endif
