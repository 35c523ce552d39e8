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

#ifndef MIXSTAB_DENSE_H
#define MIXSTAB_DENSE_H

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string>

#include "mixstab/channels.h"
#include "mixstab/pauli_string.h"
#include "mixstab/rng.h"
#include "mixstab/stabilizer_state.h"

namespace mixstab::dense {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

constexpr size_t kMaxQubits = 8;

/// Basis index bit i is the computational value of qubit i.
Matrix pauli_matrix(const PauliString &p);

/// An explicit 2^L x 2^L density matrix.
struct DenseState {
    size_t num_qubits = 0;
    Matrix rho;

    static DenseState from_stabilizer(const StabilizerState &state);
    static DenseState from_pure(size_t num_qubits, const Vector &psi);
    static DenseState maximally_mixed(size_t num_qubits);

    size_t dim() const {
        return size_t{1} << num_qubits;
    }
};

/// Hermitian, unit trace and positive semidefinite up to the given tolerances. Returns a message describing
/// the first failure, or nullopt.
std::optional<std::string> check_density(const DenseState &s, double trace_tol = 1e-12, double eig_tol = 1e-10);

/// The 4x4 unitary (up to global phase) whose conjugation action matches `gate`. Index = bit1 + 2 * bit2.
Matrix clifford_unitary(const CliffordGate &gate);

/// rho -> U rho U^dagger with the 4x4 `u` acting on (first, second).
void apply_two_qubit(DenseState &s, const Matrix &u, size_t first, size_t second);
void apply_clifford(DenseState &s, const CliffordGate &gate, size_t first, size_t second);

/// Born probability of Z_site = outcome (+1 or -1).
double z_probability(const DenseState &s, size_t site, int outcome);
/// Projects onto Z_site = outcome and renormalizes. Throws std::domain_error if the outcome has zero weight.
void project_z(DenseState &s, size_t site, int outcome);
/// Samples an outcome by the Born rule and projects onto it.
int measure_z(DenseState &s, size_t site, Rng &rng);
/// rho -> (rho + Z rho Z) / 2 on `site`.
void dephase(DenseState &s, size_t site);

/// Swaps the ket and bra labels of the qubits in `b`.
Matrix partial_transpose(const Matrix &rho, size_t num_qubits, const SiteSet &b);
/// Reduced density matrix on `keep` (kept qubits are relabeled in ascending order).
Matrix partial_trace(const Matrix &rho, size_t num_qubits, const SiteSet &keep);

/// Eigenvalues of the symmetrized partial transpose.
Eigen::VectorXd partial_transpose_spectrum(const DenseState &s, const SiteSet &b);

/// log2 of the trace norm of the partial transpose, in bits.
double log_negativity(const DenseState &s, const SiteSet &b);
/// Sum of |lambda| over the negative eigenvalues of the partial transpose.
double negativity_n(const DenseState &s, const SiteSet &b);

struct RenyiNegativity {
    double value;
    /// False for n = 2, where the prefactor is singular and `value` is the bare log2 ratio.
    bool normalized;
};
/// b_n log2(tr[(rho^T_B)^n] / tr[rho^n]) with b_n = 1/(1-n) for odd n and 1/(2-n) for even n.
RenyiNegativity renyi_negativity(const DenseState &s, const SiteSet &b, size_t n);

/// Von Neumann entropy of the reduced state on `region`, in bits.
double entropy(const DenseState &s, const SiteSet &region);
/// Renyi-alpha entropy of the reduced state on `region`, in bits (alpha = 1 gives von Neumann).
double renyi_entropy(const DenseState &s, const SiteSet &region, double alpha);

/// tr[(rho^T_B)^n] from the spectrum of the partial transpose.
double partial_transpose_moment(const DenseState &s, const SiteSet &b, size_t n);
/// The replica expression: rho^(x)n contracted with the cyclic permutation on A and the anticyclic one on B.
std::complex<double> replica_trace(const DenseState &s, const SiteSet &b, size_t n);
/// Checks partial_transpose_moment == replica_trace within `tol`. Requires L <= 3 and 1 <= n <= 4.
bool replica_trace_identity_check(const DenseState &s, const SiteSet &b, size_t n, double tol = 1e-9);

/// Haar-random unitary via QR of a complex Gaussian matrix with the phases of R's diagonal removed.
Matrix haar_unitary(size_t dim, Rng &rng);
/// Haar-random pure state on `num_qubits` qubits.
Vector haar_state(size_t num_qubits, Rng &rng);

/// Mean log negativity between A and B of Haar-random pure states on A, B, C after tracing out C.
/// A occupies the lowest qubits, then B, then C.
double page_negativity_check(size_t l_a, size_t l_b, size_t l_c, size_t trials, Rng &rng);

}  // namespace mixstab::dense

#endif
