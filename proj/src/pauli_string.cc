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

#include "mixstab/pauli_string.h"

#include <bit>
#include <ostream>
#include <stdexcept>

namespace mixstab {

namespace {

void check_site(size_t site, size_t num_qubits) {
    if (site >= num_qubits) {
        throw std::out_of_range(
            "site " + std::to_string(site) + " out of range for " + std::to_string(num_qubits) + " qubits");
    }
}

void check_same_size(size_t a, size_t b) {
    if (a != b) {
        throw std::invalid_argument(
            "Pauli string size mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
    }
}

uint64_t tail_mask(size_t num_qubits) {
    size_t r = num_qubits & 63;
    return r == 0 ? ~uint64_t{0} : (uint64_t{1} << r) - 1;
}

}  // namespace

SiteSet::SiteSet(size_t num_qubits) : num_qubits_(num_qubits), words_(words_for(num_qubits), 0) {
}

SiteSet::SiteSet(size_t num_qubits, std::initializer_list<size_t> sites) : SiteSet(num_qubits) {
    for (size_t s : sites) {
        insert(s);
    }
}

SiteSet SiteSet::interval(size_t num_qubits, size_t begin, size_t end) {
    if (begin > end || end > num_qubits) {
        throw std::out_of_range("bad site interval");
    }
    SiteSet result(num_qubits);
    for (size_t s = begin; s < end; s++) {
        result.insert(s);
    }
    return result;
}

void SiteSet::insert(size_t site) {
    check_site(site, num_qubits_);
    words_[site >> 6] |= uint64_t{1} << (site & 63);
}

bool SiteSet::contains(size_t site) const {
    return site < num_qubits_ && ((words_[site >> 6] >> (site & 63)) & 1);
}

size_t SiteSet::size() const {
    size_t total = 0;
    for (uint64_t w : words_) {
        total += std::popcount(w);
    }
    return total;
}

SiteSet SiteSet::complement() const {
    SiteSet result(num_qubits_);
    for (size_t w = 0; w < words_.size(); w++) {
        result.words_[w] = ~words_[w];
    }
    if (!result.words_.empty()) {
        result.words_.back() &= tail_mask(num_qubits_);
    }
    return result;
}

SiteSet SiteSet::operator|(const SiteSet &other) const {
    check_same_size(num_qubits_, other.num_qubits_);
    SiteSet result = *this;
    for (size_t w = 0; w < words_.size(); w++) {
        result.words_[w] |= other.words_[w];
    }
    return result;
}

bool SiteSet::intersects(const SiteSet &other) const {
    check_same_size(num_qubits_, other.num_qubits_);
    for (size_t w = 0; w < words_.size(); w++) {
        if (words_[w] & other.words_[w]) {
            return true;
        }
    }
    return false;
}

std::vector<size_t> SiteSet::sites() const {
    std::vector<size_t> result;
    for (size_t s = 0; s < num_qubits_; s++) {
        if (contains(s)) {
            result.push_back(s);
        }
    }
    return result;
}

PauliString::PauliString(size_t num_qubits)
    : num_qubits_(num_qubits), xs_(words_for(num_qubits), 0), zs_(words_for(num_qubits), 0) {
}

PauliString PauliString::from_str(std::string_view text) {
    bool negative = false;
    if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    PauliString result(text.size());
    result.negative_ = negative;
    for (size_t k = 0; k < text.size(); k++) {
        char c = text[k];
        if (c == '_') {
            c = 'I';
        }
        result.set_pauli(k, c);
    }
    return result;
}

PauliString PauliString::single(size_t num_qubits, size_t site, char pauli) {
    PauliString result(num_qubits);
    result.set_pauli(site, pauli);
    return result;
}

bool PauliString::x(size_t site) const {
    check_site(site, num_qubits_);
    return (xs_[site >> 6] >> (site & 63)) & 1;
}

bool PauliString::z(size_t site) const {
    check_site(site, num_qubits_);
    return (zs_[site >> 6] >> (site & 63)) & 1;
}

void PauliString::set_x(size_t site, bool value) {
    check_site(site, num_qubits_);
    uint64_t bit = uint64_t{1} << (site & 63);
    xs_[site >> 6] = value ? (xs_[site >> 6] | bit) : (xs_[site >> 6] & ~bit);
}

void PauliString::set_z(size_t site, bool value) {
    check_site(site, num_qubits_);
    uint64_t bit = uint64_t{1} << (site & 63);
    zs_[site >> 6] = value ? (zs_[site >> 6] | bit) : (zs_[site >> 6] & ~bit);
}

char PauliString::pauli_at(size_t site) const {
    static constexpr char kNames[4] = {'I', 'X', 'Z', 'Y'};
    return kNames[x(site) | (z(site) << 1)];
}

void PauliString::set_pauli(size_t site, char pauli) {
    switch (pauli) {
        case 'I':
            set_x(site, false);
            set_z(site, false);
            break;
        case 'X':
            set_x(site, true);
            set_z(site, false);
            break;
        case 'Y':
            set_x(site, true);
            set_z(site, true);
            break;
        case 'Z':
            set_x(site, false);
            set_z(site, true);
            break;
        default:
            throw std::invalid_argument(std::string("not a Pauli character: '") + pauli + "'");
    }
}

bool PauliString::is_identity() const {
    for (size_t w = 0; w < xs_.size(); w++) {
        if (xs_[w] | zs_[w]) {
            return false;
        }
    }
    return true;
}

size_t PauliString::weight() const {
    size_t total = 0;
    for (size_t w = 0; w < xs_.size(); w++) {
        total += std::popcount(xs_[w] | zs_[w]);
    }
    return total;
}

std::optional<std::pair<size_t, size_t>> PauliString::support_interval() const {
    size_t n = xs_.size();
    size_t w_left = 0;
    while (w_left < n && (xs_[w_left] | zs_[w_left]) == 0) {
        w_left++;
    }
    if (w_left == n) {
        return std::nullopt;
    }
    size_t w_right = n - 1;
    while ((xs_[w_right] | zs_[w_right]) == 0) {
        w_right--;
    }
    size_t left = (w_left << 6) + std::countr_zero(xs_[w_left] | zs_[w_left]);
    size_t right = (w_right << 6) + 63 - std::countl_zero(xs_[w_right] | zs_[w_right]);
    return std::make_pair(left, right);
}

uint8_t PauliString::inplace_right_mul_returning_phase(const PauliString &other) {
    check_same_size(num_qubits_, other.num_qubits_);
    // Per site, with Y = iXZ: YZ, XY, ZX contribute +i and YX, XZ, ZY contribute -i.
    int phase = 0;
    for (size_t w = 0; w < xs_.size(); w++) {
        uint64_t x1 = xs_[w], z1 = zs_[w], x2 = other.xs_[w], z2 = other.zs_[w];
        uint64_t plus = (x1 & z1 & ~x2 & z2) | (x1 & ~z1 & x2 & z2) | (~x1 & z1 & x2 & ~z2);
        uint64_t minus = (x1 & z1 & x2 & ~z2) | (x1 & ~z1 & ~x2 & z2) | (~x1 & z1 & x2 & z2);
        phase += std::popcount(plus) - std::popcount(minus);
        xs_[w] = x1 ^ x2;
        zs_[w] = z1 ^ z2;
    }
    phase &= 3;
    negative_ ^= other.negative_;
    if (phase & 2) {
        negative_ = !negative_;
    }
    return static_cast<uint8_t>(phase & 1);
}

std::string PauliString::str() const {
    std::string result;
    result.reserve(num_qubits_ + 1);
    result.push_back(negative_ ? '-' : '+');
    for (size_t s = 0; s < num_qubits_; s++) {
        result.push_back(pauli_at(s));
    }
    return result;
}

PhasedPauli multiply_phased(const PauliString &a, const PauliString &b) {
    PhasedPauli result{a, 0};
    result.i_power = result.pauli.inplace_right_mul_returning_phase(b);
    return result;
}

PauliString multiply(const PauliString &a, const PauliString &b) {
    PhasedPauli result = multiply_phased(a, b);
    if (result.i_power != 0) {
        throw std::invalid_argument("product of anticommuting Pauli strings is not Hermitian: " + a.str() + " * " + b.str());
    }
    return std::move(result.pauli);
}

bool commutes(const PauliString &a, const PauliString &b) {
    check_same_size(a.num_qubits(), b.num_qubits());
    auto ax = a.xs(), az = a.zs(), bx = b.xs(), bz = b.zs();
    uint64_t acc = 0;
    for (size_t w = 0; w < ax.size(); w++) {
        acc ^= (ax[w] & bz[w]) ^ (az[w] & bx[w]);
    }
    return (std::popcount(acc) & 1) == 0;
}

PauliString restrict_to(const PauliString &a, const SiteSet &region) {
    check_same_size(a.num_qubits(), region.num_qubits());
    PauliString result = a;
    result.set_negative(false);
    auto mask = region.words();
    auto xs = result.xs_mut();
    auto zs = result.zs_mut();
    for (size_t w = 0; w < xs.size(); w++) {
        xs[w] &= mask[w];
        zs[w] &= mask[w];
    }
    return result;
}

std::ostream &operator<<(std::ostream &out, const PauliString &p) {
    return out << p.str();
}

}  // namespace mixstab
