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

#include "mixstab/dense.h"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace mixstab::dense {

namespace {

using cd = std::complex<double>;

void check_size(size_t num_qubits) {
    if (num_qubits > kMaxQubits) {
        throw std::invalid_argument("dense simulation supports at most 8 qubits");
    }
}

uint64_t mask_of(const SiteSet &set) {
    check_size(set.num_qubits());
    return set.num_qubits() == 0 ? 0 : set.words()[0];
}

void check_site(const DenseState &s, size_t site) {
    if (site >= s.num_qubits) {
        throw std::out_of_range("site out of range");
    }
}

Eigen::VectorXd hermitian_spectrum(const Matrix &m) {
    Matrix h = (m + m.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigen-solve failed");
    }
    return solver.eigenvalues();
}

double pow_sum(const Eigen::VectorXd &values, size_t n) {
    double total = 0;
    for (double v : values) {
        total += std::pow(v, static_cast<double>(n));
    }
    return total;
}

}  // namespace

Matrix pauli_matrix(const PauliString &p) {
    check_size(p.num_qubits());
    size_t dim = size_t{1} << p.num_qubits();
    uint64_t x = p.num_qubits() ? p.xs()[0] : 0;
    uint64_t z = p.num_qubits() ? p.zs()[0] : 0;
    static const cd kIPow[4] = {1.0, cd(0, 1), -1.0, cd(0, -1)};
    cd base = kIPow[std::popcount(x & z) & 3] * (p.negative() ? -1.0 : 1.0);
    Matrix m = Matrix::Zero(dim, dim);
    for (uint64_t b = 0; b < dim; b++) {
        m(b ^ x, b) = (std::popcount(b & z) & 1) ? -base : base;
    }
    return m;
}

DenseState DenseState::from_stabilizer(const StabilizerState &state) {
    check_size(state.num_qubits());
    DenseState s = maximally_mixed(state.num_qubits());
    Matrix id = Matrix::Identity(s.dim(), s.dim());
    Matrix product = id;
    for (const auto &g : state.generators()) {
        product = product * (id + pauli_matrix(g)) * 0.5;
    }
    s.rho = product / static_cast<double>(size_t{1} << (state.num_qubits() - state.num_generators()));
    return s;
}

DenseState DenseState::from_pure(size_t num_qubits, const Vector &psi) {
    check_size(num_qubits);
    if (static_cast<size_t>(psi.size()) != (size_t{1} << num_qubits)) {
        throw std::invalid_argument("state vector has the wrong dimension");
    }
    Vector v = psi / psi.norm();
    return {num_qubits, v * v.adjoint()};
}

DenseState DenseState::maximally_mixed(size_t num_qubits) {
    check_size(num_qubits);
    size_t dim = size_t{1} << num_qubits;
    return {num_qubits, Matrix::Identity(dim, dim) / static_cast<double>(dim)};
}

std::optional<std::string> check_density(const DenseState &s, double trace_tol, double eig_tol) {
    if (static_cast<size_t>(s.rho.rows()) != s.dim() || static_cast<size_t>(s.rho.cols()) != s.dim()) {
        return "wrong dimension";
    }
    if ((s.rho - s.rho.adjoint()).cwiseAbs().maxCoeff() > trace_tol) {
        return "not Hermitian";
    }
    if (std::abs(s.rho.trace() - 1.0) > trace_tol) {
        return "trace differs from 1";
    }
    if (hermitian_spectrum(s.rho).minCoeff() < -eig_tol) {
        return "negative eigenvalue";
    }
    return std::nullopt;
}

Matrix clifford_unitary(const CliffordGate &gate) {
    auto images = gate.images();
    Matrix id = Matrix::Identity(4, 4);
    Matrix projector = (id + pauli_matrix(images[1])) * (id + pauli_matrix(images[3])) * 0.25;
    Eigen::Index best;
    projector.colwise().norm().maxCoeff(&best);
    Vector v00 = projector.col(best).normalized();
    Matrix x1 = pauli_matrix(images[0]);
    Matrix x2 = pauli_matrix(images[2]);
    Matrix u(4, 4);
    u.col(0) = v00;
    u.col(1) = x1 * v00;
    u.col(2) = x2 * v00;
    u.col(3) = x1 * x2 * v00;
    return u;
}

void apply_two_qubit(DenseState &s, const Matrix &u, size_t first, size_t second) {
    check_site(s, first);
    check_site(s, second);
    if (first == second) {
        throw std::invalid_argument("two-qubit operation needs distinct sites");
    }
    size_t dim = s.dim();
    uint64_t both = (uint64_t{1} << first) | (uint64_t{1} << second);
    auto local = [&](uint64_t a) { return ((a >> first) & 1) | (((a >> second) & 1) << 1); };
    Matrix full = Matrix::Zero(dim, dim);
    for (uint64_t a = 0; a < dim; a++) {
        for (uint64_t b = 0; b < dim; b++) {
            if ((a & ~both) == (b & ~both)) {
                full(a, b) = u(local(a), local(b));
            }
        }
    }
    s.rho = full * s.rho * full.adjoint();
}

void apply_clifford(DenseState &s, const CliffordGate &gate, size_t first, size_t second) {
    apply_two_qubit(s, clifford_unitary(gate), first, second);
}

double z_probability(const DenseState &s, size_t site, int outcome) {
    check_site(s, site);
    double total = 0;
    for (uint64_t b = 0; b < s.dim(); b++) {
        bool one = (b >> site) & 1;
        if (one == (outcome < 0)) {
            total += s.rho(b, b).real();
        }
    }
    return total;
}

void project_z(DenseState &s, size_t site, int outcome) {
    double prob = z_probability(s, site, outcome);
    if (prob <= 1e-12) {
        throw std::domain_error("projection onto an outcome of zero probability");
    }
    for (uint64_t r = 0; r < s.dim(); r++) {
        for (uint64_t c = 0; c < s.dim(); c++) {
            bool keep = (((r >> site) & 1) == (outcome < 0)) && (((c >> site) & 1) == (outcome < 0));
            s.rho(r, c) = keep ? s.rho(r, c) / prob : 0.0;
        }
    }
}

int measure_z(DenseState &s, size_t site, Rng &rng) {
    int outcome = rng.uniform() < z_probability(s, site, +1) ? +1 : -1;
    project_z(s, site, outcome);
    return outcome;
}

void dephase(DenseState &s, size_t site) {
    check_site(s, site);
    for (uint64_t r = 0; r < s.dim(); r++) {
        for (uint64_t c = 0; c < s.dim(); c++) {
            if (((r ^ c) >> site) & 1) {
                s.rho(r, c) = 0.0;
            }
        }
    }
}

Matrix partial_transpose(const Matrix &rho, size_t num_qubits, const SiteSet &b) {
    check_size(num_qubits);
    if (b.num_qubits() != num_qubits) {
        throw std::invalid_argument("site set size does not match the state");
    }
    uint64_t m = mask_of(b);
    Matrix out(rho.rows(), rho.cols());
    for (uint64_t r = 0; r < static_cast<uint64_t>(rho.rows()); r++) {
        for (uint64_t c = 0; c < static_cast<uint64_t>(rho.cols()); c++) {
            out((r & ~m) | (c & m), (c & ~m) | (r & m)) = rho(r, c);
        }
    }
    return out;
}

Matrix partial_trace(const Matrix &rho, size_t num_qubits, const SiteSet &keep) {
    check_size(num_qubits);
    if (keep.num_qubits() != num_qubits) {
        throw std::invalid_argument("site set size does not match the state");
    }
    auto kept = keep.sites();
    std::vector<size_t> traced = keep.complement().sites();
    size_t dk = size_t{1} << kept.size();
    size_t dt = size_t{1} << traced.size();
    auto spread = [](uint64_t v, const std::vector<size_t> &positions) {
        uint64_t out = 0;
        for (size_t i = 0; i < positions.size(); i++) {
            out |= ((v >> i) & 1) << positions[i];
        }
        return out;
    };
    Matrix out = Matrix::Zero(dk, dk);
    for (uint64_t e = 0; e < dt; e++) {
        uint64_t env = spread(e, traced);
        for (uint64_t r = 0; r < dk; r++) {
            uint64_t rr = spread(r, kept) | env;
            for (uint64_t c = 0; c < dk; c++) {
                out(r, c) += rho(rr, spread(c, kept) | env);
            }
        }
    }
    return out;
}

Eigen::VectorXd partial_transpose_spectrum(const DenseState &s, const SiteSet &b) {
    return hermitian_spectrum(partial_transpose(s.rho, s.num_qubits, b));
}

double log_negativity(const DenseState &s, const SiteSet &b) {
    return std::log2(partial_transpose_spectrum(s, b).cwiseAbs().sum());
}

double negativity_n(const DenseState &s, const SiteSet &b) {
    double total = 0;
    for (double v : partial_transpose_spectrum(s, b)) {
        if (v < 0) {
            total -= v;
        }
    }
    return total;
}

RenyiNegativity renyi_negativity(const DenseState &s, const SiteSet &b, size_t n) {
    if (n < 2) {
        throw std::invalid_argument("Renyi negativity needs n >= 2");
    }
    double ratio = std::log2(pow_sum(partial_transpose_spectrum(s, b), n) / pow_sum(hermitian_spectrum(s.rho), n));
    if (n == 2) {
        return {ratio, false};
    }
    double bn = (n % 2 == 1) ? 1.0 / (1.0 - static_cast<double>(n)) : 1.0 / (2.0 - static_cast<double>(n));
    return {bn * ratio, true};
}

double renyi_entropy(const DenseState &s, const SiteSet &region, double alpha) {
    Eigen::VectorXd spectrum = hermitian_spectrum(partial_trace(s.rho, s.num_qubits, region));
    if (alpha == 1.0) {
        double total = 0;
        for (double v : spectrum) {
            if (v > 1e-14) {
                total -= v * std::log2(v);
            }
        }
        return total;
    }
    double total = 0;
    for (double v : spectrum) {
        if (v > 1e-14) {
            total += std::pow(v, alpha);
        }
    }
    return std::log2(total) / (1.0 - alpha);
}

double entropy(const DenseState &s, const SiteSet &region) {
    return renyi_entropy(s, region, 1.0);
}

double partial_transpose_moment(const DenseState &s, const SiteSet &b, size_t n) {
    return pow_sum(partial_transpose_spectrum(s, b), n);
}

std::complex<double> replica_trace(const DenseState &s, const SiteSet &b, size_t n) {
    if (s.num_qubits > 3 || n < 1 || n > 4) {
        throw std::invalid_argument("replica trace is limited to L <= 3 and 1 <= n <= 4");
    }
    uint64_t mb = mask_of(b);
    uint64_t ma = (s.dim() - 1) & ~mb;
    size_t l = s.num_qubits;
    uint64_t total_states = uint64_t{1} << (l * n);
    uint64_t per = s.dim() - 1;
    std::complex<double> total = 0;
    std::vector<uint64_t> idx(n);
    for (uint64_t multi = 0; multi < total_states; multi++) {
        for (size_t r = 0; r < n; r++) {
            idx[r] = (multi >> (r * l)) & per;
        }
        std::complex<double> term = 1;
        for (size_t r = 0; r < n && term != 0.0; r++) {
            uint64_t next = idx[(r + 1) % n];
            uint64_t prev = idx[(r + n - 1) % n];
            term *= s.rho(idx[r], (next & ma) | (prev & mb));
        }
        total += term;
    }
    return total;
}

bool replica_trace_identity_check(const DenseState &s, const SiteSet &b, size_t n, double tol) {
    std::complex<double> rhs = replica_trace(s, b, n);
    double lhs = partial_transpose_moment(s, b, n);
    return std::abs(rhs - lhs) <= tol;
}

Matrix haar_unitary(size_t dim, Rng &rng) {
    Matrix g(dim, dim);
    for (size_t r = 0; r < dim; r++) {
        for (size_t c = 0; c < dim; c++) {
            g(r, c) = cd(rng.normal(), rng.normal()) / std::sqrt(2.0);
        }
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix rmat = qr.matrixQR().triangularView<Eigen::Upper>();
    for (size_t c = 0; c < dim; c++) {
        cd d = rmat(c, c);
        q.col(c) *= d / std::abs(d);
    }
    return q;
}

Vector haar_state(size_t num_qubits, Rng &rng) {
    check_size(num_qubits);
    size_t dim = size_t{1} << num_qubits;
    Vector v(dim);
    for (size_t i = 0; i < dim; i++) {
        v(i) = cd(rng.normal(), rng.normal());
    }
    return v / v.norm();
}

double page_negativity_check(size_t l_a, size_t l_b, size_t l_c, size_t trials, Rng &rng) {
    size_t l = l_a + l_b + l_c;
    if (l > kMaxQubits || l_a == 0 || l_b == 0 || trials == 0) {
        throw std::invalid_argument("page_negativity_check needs 1 <= L_A, L_B, trials and L_A + L_B + L_C <= 8");
    }
    SiteSet keep = SiteSet::interval(l, 0, l_a + l_b);
    SiteSet b = SiteSet::interval(l_a + l_b, l_a, l_a + l_b);
    // Trials fork from one fresh draw, so repeated calls see new states and trial t does not depend on order.
    Rng base = rng.fork(rng.next());
    double total = 0;
    for (size_t t = 0; t < trials; t++) {
        Rng trial_rng = base.fork(t);
        Vector psi = haar_unitary(size_t{1} << l, trial_rng).col(0);
        DenseState full = DenseState::from_pure(l, psi);
        DenseState ab{l_a + l_b, partial_trace(full.rho, l, keep)};
        total += log_negativity(ab, b);
    }
    return total / static_cast<double>(trials);
}

}  // namespace mixstab::dense
