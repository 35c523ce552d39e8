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


#ifndef MIXSTAB_ORACLE_CHECK_H
#define MIXSTAB_ORACLE_CHECK_H

#include <cstdint>
#include <string>

namespace mixstab {

struct OracleReport {
    size_t circuits = 0;
    size_t comparisons = 0;
    /// Largest |stabilizer - dense| over every compared quantity.
    double max_error = 0;
    bool passed = true;
    /// Description of the first mismatch, if any.
    std::string first_failure;
};

/// Runs random circuits that mix two-qubit Cliffords, Z measurements (rate 0.2 per site and layer) and
/// dephasing (rate 0.1) on both the stabilizer simulator and the dense density matrix. After each circuit it
/// compares the states, the entropy of every region, half-chain negativity and mutual information, the
/// negativity of a random bipartition, and the purity. Quantities agree if they differ by at most `tol`.
OracleReport oracle_check(size_t circuits, size_t num_qubits, size_t depth, uint64_t seed, double tol = 1e-9);

}  // namespace mixstab

#endif
