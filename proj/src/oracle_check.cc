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


#include "mixstab/oracle_check.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mixstab/channels.h"
#include "mixstab/dense.h"
#include "mixstab/entanglement.h"
#include "mixstab/rng.h"

namespace mixstab {

OracleReport oracle_check(size_t circuits, size_t num_qubits, size_t depth, uint64_t seed, double tol) {
    if (num_qubits < 2 || num_qubits > dense::kMaxQubits) {
        throw std::invalid_argument("oracle check needs 2 <= L <= " + std::to_string(dense::kMaxQubits));
    }
    OracleReport report;
    auto bp = Bipartition::half_chain(num_qubits);
    uint64_t num_regions = uint64_t{1} << num_qubits;
    auto region = [&](uint64_t mask) {
        SiteSet s(num_qubits);
        for (size_t q = 0; q < num_qubits; q++) {
            if ((mask >> q) & 1) {
                s.insert(q);
            }
        }
        return s;
    };
    for (size_t c = 0; c < circuits; c++) {
        Rng rng = Rng(seed).fork(c);
        auto s = StabilizerState::product_state(num_qubits);
        auto d = dense::DenseState::from_stabilizer(s);
        for (size_t t = 0; t < depth; t++) {
            for (size_t q = t % 2; q + 1 < num_qubits; q += 2) {
                auto gate = sample_two_qubit_clifford(rng);
                apply_clifford(s, gate, q, q + 1);
                dense::apply_clifford(d, gate, q, q + 1);
            }
            for (size_t q = 0; q < num_qubits; q++) {
                if (rng.bernoulli(0.2)) {
                    dense::project_z(d, q, measure_z(s, q, rng).outcome);
                }
                if (rng.bernoulli(0.1)) {
                    dephase(s, q);
                    dense::dephase(d, q);
                }
            }
        }
        auto compare = [&](std::string_view what, double stab, double exact) {
            double err = std::abs(stab - exact);
            report.comparisons++;
            report.max_error = std::max(report.max_error, err);
            if (!(err <= tol) && report.passed) {
                report.passed = false;
                std::ostringstream msg;
                msg << "circuit " << c << ": " << what << " stabilizer=" << stab << " dense=" << exact;
                report.first_failure = msg.str();
            }
        };
        compare("density matrix", 0.0,
                (d.rho - dense::DenseState::from_stabilizer(s).rho).cwiseAbs().maxCoeff());
        for (uint64_t m = 0; m < num_regions; m++) {
            auto r = region(m);
            compare("entropy of region " + std::to_string(m), entropy(s, r), dense::entropy(d, r));
        }
        compare("half-chain negativity", negativity(s, bp), dense::log_negativity(d, bp.b));
        compare("half-chain mutual information", mutual_information(s, bp),
                dense::entropy(d, bp.a) + dense::entropy(d, bp.b) - dense::entropy(d, bp.a | bp.b));
        auto a = region(rng.below(num_regions));
        Bipartition other{a, a.complement()};
        compare("random-cut negativity", negativity(s, other), dense::log_negativity(d, other.b));
        compare("purity", s.purity(), (d.rho * d.rho).trace().real());
        report.circuits++;
    }
    return report;
}

}  // namespace mixstab
