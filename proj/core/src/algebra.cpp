// Copyright 2026 The QOC Workbench Authors
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

#include "qoc/algebra.hpp"

#include <numbers>
#include <numeric>
#include <sstream>

#include "qoc/errors.hpp"

namespace qoc::algebra {

namespace {

__extension__ using Int128 = __int128;

constexpr std::int64_t kMaxOrder = std::int64_t{1} << 62;

void require_member(const GroupSpec& group, const GroupElement& g, const char* what) {
    if (!group.contains(g)) {
        throw StructuralError(std::string(what) + ": element " + group.to_string(g) +
                              " does not belong to the group");
    }
}

}  // namespace

GroupSpec::GroupSpec(std::vector<std::int64_t> moduli) : moduli_(std::move(moduli)) {
    if (moduli_.empty()) {
        throw DomainError("GroupSpec needs at least one modulus");
    }
    for (auto n : moduli_) {
        if (n < 2) {
            throw DomainError("GroupSpec modulus must be >= 2, got " + std::to_string(n));
        }
        if (order_ > kMaxOrder / n) {
            throw CapacityError("GroupSpec order overflows 2^62");
        }
        order_ *= n;
        phase_order_ = std::lcm(phase_order_, n);
    }
}

GroupElement GroupSpec::zero() const { return GroupElement{std::vector<std::int64_t>(rank(), 0)}; }

GroupElement GroupSpec::unit() const { return GroupElement{std::vector<std::int64_t>(rank(), 1)}; }

GroupElement GroupSpec::element(std::span<const std::int64_t> values) const {
    if (values.size() != rank()) {
        throw StructuralError("element has " + std::to_string(values.size()) +
                              " residues, group has rank " + std::to_string(rank()));
    }
    GroupElement g;
    g.residues.reserve(rank());
    for (std::size_t i = 0; i < rank(); ++i) {
        g.residues.push_back(mod_reduce(values[i], moduli_[i]));
    }
    return g;
}

GroupElement GroupSpec::element(std::initializer_list<std::int64_t> values) const {
    return element(std::span<const std::int64_t>(values.begin(), values.size()));
}

GroupElement GroupSpec::broadcast(std::int64_t value) const {
    std::vector<std::int64_t> v(rank(), value);
    return element(v);
}

std::uint64_t GroupSpec::index_of(const GroupElement& g) const {
    require_member(*this, g, "index_of");
    std::uint64_t index = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
        index = index * static_cast<std::uint64_t>(moduli_[i]) +
                static_cast<std::uint64_t>(g.residues[i]);
    }
    return index;
}

GroupElement GroupSpec::element_at(std::uint64_t index) const {
    if (index >= static_cast<std::uint64_t>(order_)) {
        throw DomainError("element index out of range");
    }
    GroupElement g{std::vector<std::int64_t>(rank(), 0)};
    for (std::size_t i = rank(); i-- > 0;) {
        auto n = static_cast<std::uint64_t>(moduli_[i]);
        g.residues[i] = static_cast<std::int64_t>(index % n);
        index /= n;
    }
    return g;
}

bool GroupSpec::contains(const GroupElement& g) const {
    if (g.residues.size() != rank()) {
        return false;
    }
    for (std::size_t i = 0; i < rank(); ++i) {
        if (g.residues[i] < 0 || g.residues[i] >= moduli_[i]) {
            return false;
        }
    }
    return true;
}

std::string GroupSpec::to_string(const GroupElement& g) const {
    std::ostringstream out;
    if (g.residues.size() == 1) {
        out << g.residues[0];
        return out.str();
    }
    out << '(';
    for (std::size_t i = 0; i < g.residues.size(); ++i) {
        if (i) out << ',';
        out << g.residues[i];
    }
    out << ')';
    return out.str();
}

ExactPhase::ExactPhase(std::int64_t exponent, std::int64_t order) : exponent_(0), order_(order) {
    if (order < 1) {
        throw DomainError("phase order must be positive");
    }
    exponent_ = mod_reduce(exponent, order);
}

ExactPhase ExactPhase::operator*(const ExactPhase& other) const {
    if (order_ != other.order_) {
        throw StructuralError("cannot multiply phases of different orders");
    }
    return ExactPhase((exponent_ + other.exponent_) % order_, order_);
}

ExactPhase ExactPhase::conj() const { return ExactPhase(order_ - exponent_, order_); }

std::complex<double> ExactPhase::to_complex() const {
    if (exponent_ == 0) return {1.0, 0.0};
    if (4 * exponent_ == order_) return {0.0, 1.0};
    if (2 * exponent_ == order_) return {-1.0, 0.0};
    if (4 * exponent_ == 3 * order_) return {0.0, -1.0};
    double angle = 2.0 * std::numbers::pi * static_cast<double>(exponent_) /
                   static_cast<double>(order_);
    return std::polar(1.0, angle);
}

GroupElement add(const GroupSpec& group, const GroupElement& a, const GroupElement& b) {
    require_member(group, a, "add");
    require_member(group, b, "add");
    GroupElement out = a;
    for (std::size_t i = 0; i < group.rank(); ++i) {
        out.residues[i] = (a.residues[i] + b.residues[i]) % group.moduli()[i];
    }
    return out;
}

GroupElement negate(const GroupSpec& group, const GroupElement& a) {
    require_member(group, a, "negate");
    GroupElement out = a;
    for (std::size_t i = 0; i < group.rank(); ++i) {
        out.residues[i] = (group.moduli()[i] - a.residues[i]) % group.moduli()[i];
    }
    return out;
}

GroupElement subtract(const GroupSpec& group, const GroupElement& a, const GroupElement& b) {
    return add(group, a, negate(group, b));
}

GroupElement ring_mul(const GroupSpec& group, const GroupElement& a, const GroupElement& b) {
    require_member(group, a, "ring_mul");
    require_member(group, b, "ring_mul");
    GroupElement out = a;
    for (std::size_t i = 0; i < group.rank(); ++i) {
        auto prod = static_cast<Int128>(a.residues[i]) * b.residues[i];
        out.residues[i] = static_cast<std::int64_t>(prod % group.moduli()[i]);
    }
    return out;
}

ExactPhase char_eval(const GroupSpec& group, const GroupElement& r, const GroupElement& g) {
    require_member(group, r, "char_eval");
    require_member(group, g, "char_eval");
    const std::int64_t order = group.phase_order();
    Int128 exponent = 0;
    for (std::size_t i = 0; i < group.rank(); ++i) {
        const std::int64_t n = group.moduli()[i];
        // Scale r_i g_i mod N_i into Z_{phase_order}.
        Int128 rg = (static_cast<Int128>(r.residues[i]) * g.residues[i]) % n;
        exponent = (exponent + rg * (order / n)) % order;
    }
    return ExactPhase(static_cast<std::int64_t>(exponent), order);
}

ExactPhase char_eval(const GroupSpec& group, std::span<const GroupElement> rs,
                     std::span<const GroupElement> gs) {
    if (rs.size() != gs.size()) {
        throw StructuralError("char_eval: vector lengths differ");
    }
    ExactPhase acc(0, group.phase_order());
    for (std::size_t i = 0; i < rs.size(); ++i) {
        acc = acc * char_eval(group, rs[i], gs[i]);
    }
    return acc;
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d <= n / d; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

std::int64_t mod_reduce(std::int64_t a, std::int64_t n) {
    std::int64_t r = a % n;
    return r < 0 ? r + n : r;
}

std::int64_t mod_pow(std::int64_t base, std::uint64_t exponent, std::int64_t n) {
    Int128 result = 1 % n;
    Int128 b = mod_reduce(base, n);
    while (exponent) {
        if (exponent & 1) result = result * b % n;
        b = b * b % n;
        exponent >>= 1;
    }
    return static_cast<std::int64_t>(result);
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
    if (!is_prime(p)) {
        throw DomainError("mod_inverse: modulus " + std::to_string(p) + " is not prime");
    }
    std::int64_t r = mod_reduce(a, p);
    if (r == 0) {
        throw DomainError("mod_inverse: " + std::to_string(a) + " is not invertible mod " +
                          std::to_string(p));
    }
    // Extended Euclid on (r, p).
    std::int64_t old_r = r, cur_r = p, old_s = 1, cur_s = 0;
    while (cur_r != 0) {
        std::int64_t q = old_r / cur_r;
        std::int64_t tmp = old_r - q * cur_r;
        old_r = cur_r;
        cur_r = tmp;
        tmp = old_s - q * cur_s;
        old_s = cur_s;
        cur_s = tmp;
    }
    return mod_reduce(old_s, p);
}

}  // namespace qoc::algebra
