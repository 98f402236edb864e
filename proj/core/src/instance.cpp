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

#include "qoc/instance.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "qoc/errors.hpp"

namespace qoc::instance {

using algebra::add;
using algebra::mod_inverse;
using algebra::mod_pow;
using algebra::mod_reduce;
using algebra::ring_mul;

namespace {

std::vector<DomainPoint> range_domain(std::int64_t begin, std::int64_t end) {
    std::vector<DomainPoint> out;
    for (auto x = begin; x < end; ++x) out.push_back(x);
    return out;
}

void require_prime_field(std::int64_t p, std::int64_t d) {
    if (!algebra::is_prime(p)) {
        throw DomainError("field size " + std::to_string(p) + " is not prime");
    }
    if (d < 1) {
        throw DomainError("degree must be >= 1, got " + std::to_string(d));
    }
}

template <typename F>
OracleTable tabulate(const std::vector<DomainPoint>& domain, const GroupSpec& group, F&& f) {
    std::vector<GroupElement> values;
    values.reserve(domain.size());
    for (auto x : domain) values.push_back(group.broadcast(f(x)));
    return OracleTable(domain, std::move(values));
}

std::vector<DomainPoint> sorted_unique_targets(std::vector<DomainPoint> targets,
                                               const std::vector<DomainPoint>& domain) {
    if (targets.empty()) {
        throw DomainError("target set must be nonempty");
    }
    std::sort(targets.begin(), targets.end());
    if (std::adjacent_find(targets.begin(), targets.end()) != targets.end()) {
        throw DomainError("targets must be distinct");
    }
    for (auto y : targets) {
        if (!std::binary_search(domain.begin(), domain.end(), y)) {
            throw DomainError("target " + std::to_string(y) + " lies outside the domain");
        }
    }
    return targets;
}

ElementMatrix basis_matrix(const QocInstance& inst, const std::vector<OracleTable>& basis,
                           std::span<const DomainPoint> points) {
    std::vector<std::size_t> idx;
    idx.reserve(points.size());
    for (auto x : points) {
        auto it = std::lower_bound(inst.domain.begin(), inst.domain.end(), x);
        if (it == inst.domain.end() || *it != x) {
            throw DomainError("query point " + std::to_string(x) + " lies outside the domain");
        }
        idx.push_back(static_cast<std::size_t>(it - inst.domain.begin()));
    }
    ElementMatrix m;
    m.reserve(basis.size());
    for (const auto& table : basis) {
        std::vector<GroupElement> row;
        row.reserve(idx.size());
        for (auto i : idx) row.push_back(table.at_index(i));
        m.push_back(std::move(row));
    }
    return m;
}

}  // namespace

OracleTable::OracleTable(std::vector<DomainPoint> domain, std::vector<GroupElement> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
    if (domain_.size() != values_.size()) {
        throw StructuralError("oracle table has " + std::to_string(values_.size()) +
                              " values for " + std::to_string(domain_.size()) + " domain points");
    }
    if (!std::is_sorted(domain_.begin(), domain_.end()) ||
        std::adjacent_find(domain_.begin(), domain_.end()) != domain_.end()) {
        throw StructuralError("oracle table domain must be strictly increasing");
    }
}

std::optional<std::size_t> OracleTable::index_of(DomainPoint x) const {
    auto it = std::lower_bound(domain_.begin(), domain_.end(), x);
    if (it == domain_.end() || *it != x) return std::nullopt;
    return static_cast<std::size_t>(it - domain_.begin());
}

const GroupElement& OracleTable::at(DomainPoint x) const {
    auto i = index_of(x);
    if (!i) throw DomainError("point " + std::to_string(x) + " lies outside the table domain");
    return values_[*i];
}

std::string to_string(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::summation: return "summation";
        case ProblemKind::interrogation: return "interrogation";
        case ProblemKind::interpolation: return "interpolation";
        case ProblemKind::evaluation: return "evaluation";
        case ProblemKind::extrapolation: return "extrapolation";
        case ProblemKind::custom: return "custom";
    }
    return "custom";
}

std::optional<ProblemKind> parse_problem_kind(std::string_view name) {
    for (auto k : {ProblemKind::summation, ProblemKind::interrogation, ProblemKind::interpolation,
                   ProblemKind::evaluation, ProblemKind::extrapolation, ProblemKind::custom}) {
        if (to_string(k) == name) return k;
    }
    return std::nullopt;
}

void validate(const QocInstance& inst) {
    if (!std::is_sorted(inst.domain.begin(), inst.domain.end()) ||
        std::adjacent_find(inst.domain.begin(), inst.domain.end()) != inst.domain.end()) {
        throw StructuralError("instance domain must be strictly increasing");
    }
    for (const auto* basis : {&inst.kernel_basis, &inst.quotient_basis}) {
        for (const auto& table : *basis) {
            if (table.domain() != inst.domain) {
                throw StructuralError("basis table domain differs from the instance domain");
            }
            for (const auto& v : table.values()) {
                if (!inst.group.contains(v)) {
                    throw StructuralError("basis value " + inst.group.to_string(v) +
                                          " is not an element of the instance group");
                }
            }
        }
    }
}

QocInstance make_summation(std::int64_t M, const GroupSpec& group) {
    if (M < 2) throw DomainError("summation needs M >= 2");
    QocInstance inst;
    inst.label = "summation(M=" + std::to_string(M) + ")";
    inst.domain = range_domain(0, M);
    inst.group = group;
    for (std::int64_t y = 1; y < M; ++y) {
        inst.kernel_basis.push_back(tabulate(inst.domain, group, [y](DomainPoint x) -> std::int64_t {
            if (x == 0) return -1;
            return x == y ? 1 : 0;
        }));
    }
    inst.quotient_basis.push_back(
        tabulate(inst.domain, group, [](DomainPoint x) -> std::int64_t { return x == 0 ? 1 : 0; }));
    inst.params = {ProblemKind::summation, M, 0, 0, {}};
    return inst;
}

QocInstance make_interrogation(std::int64_t M, const GroupSpec& group,
                               std::vector<DomainPoint> targets) {
    if (M < 1) throw DomainError("interrogation needs M >= 1");
    QocInstance inst;
    inst.domain = range_domain(0, M);
    inst.group = group;
    targets = sorted_unique_targets(std::move(targets), inst.domain);
    auto indicator = [&](DomainPoint y) {
        return tabulate(inst.domain, group, [y](DomainPoint x) -> std::int64_t { return x == y; });
    };
    for (auto y : inst.domain) {
        if (!std::binary_search(targets.begin(), targets.end(), y)) {
            inst.kernel_basis.push_back(indicator(y));
        }
    }
    for (auto y : targets) inst.quotient_basis.push_back(indicator(y));
    inst.label = "interrogation(M=" + std::to_string(M) + ",k=" + std::to_string(targets.size()) + ")";
    inst.params = {ProblemKind::interrogation, M, 0, 0, targets};
    return inst;
}

QocInstance make_interpolation(std::int64_t p, std::int64_t d) {
    require_prime_field(p, d);
    QocInstance inst;
    inst.label = "interpolation(p=" + std::to_string(p) + ",d=" + std::to_string(d) + ")";
    inst.domain = range_domain(0, p);
    inst.group = GroupSpec::cyclic(p);
    for (std::int64_t i = 0; i <= d; ++i) {
        inst.quotient_basis.push_back(tabulate(
            inst.domain, inst.group, [=](DomainPoint x) { return mod_pow(x, static_cast<std::uint64_t>(i), p); }));
    }
    inst.params = {ProblemKind::interpolation, 0, p, d, {}};
    return inst;
}

QocInstance make_evaluation(std::int64_t p, std::int64_t d, std::vector<DomainPoint> targets) {
    require_prime_field(p, d);
    QocInstance inst;
    inst.domain = range_domain(0, p);
    inst.group = GroupSpec::cyclic(p);
    targets = sorted_unique_targets(std::move(targets), inst.domain);
    const auto k = static_cast<std::int64_t>(targets.size());
    if (d < k) {
        throw DomainError("evaluation needs d >= k (d=" + std::to_string(d) +
                          ", k=" + std::to_string(k) + ")");
    }
    auto vanishing = [&](DomainPoint x) {
        std::int64_t v = 1;
        for (auto y : targets) v = v * mod_reduce(x - y, p) % p;
        return v;
    };
    for (std::int64_t i = 0; i <= d - k; ++i) {
        inst.kernel_basis.push_back(tabulate(inst.domain, inst.group, [&, i](DomainPoint x) {
            return vanishing(x) * mod_pow(x, static_cast<std::uint64_t>(i), p) % p;
        }));
    }
    for (auto y : targets) {
        std::int64_t denom = 1;
        for (auto other : targets) {
            if (other != y) denom = denom * mod_reduce(y - other, p) % p;
        }
        const std::int64_t inv = mod_inverse(denom, p);
        inst.quotient_basis.push_back(tabulate(inst.domain, inst.group, [&, y, inv](DomainPoint x) {
            std::int64_t num = 1;
            for (auto other : targets) {
                if (other != y) num = num * mod_reduce(x - other, p) % p;
            }
            return num * inv % p;
        }));
    }
    inst.label = "evaluation(p=" + std::to_string(p) + ",d=" + std::to_string(d) +
                 ",k=" + std::to_string(k) + ")";
    inst.params = {ProblemKind::evaluation, 0, p, d, targets};
    return inst;
}

QocInstance make_extrapolation(std::int64_t p, std::int64_t d) {
    require_prime_field(p, d);
    QocInstance inst;
    inst.label = "extrapolation(p=" + std::to_string(p) + ",d=" + std::to_string(d) + ")";
    inst.domain = range_domain(1, p);
    inst.group = GroupSpec::cyclic(p);
    for (std::int64_t i = 1; i <= d; ++i) {
        inst.kernel_basis.push_back(tabulate(
            inst.domain, inst.group, [=](DomainPoint x) { return mod_pow(x, static_cast<std::uint64_t>(i), p); }));
    }
    inst.quotient_basis.push_back(
        tabulate(inst.domain, inst.group, [](DomainPoint) -> std::int64_t { return 1; }));
    inst.params = {ProblemKind::extrapolation, 0, p, d, {}};
    return inst;
}

QocInstance make_custom(std::string label, std::vector<DomainPoint> domain, const GroupSpec& group,
                        const std::vector<std::vector<GroupElement>>& kernel_values,
                        const std::vector<std::vector<GroupElement>>& quotient_values) {
    QocInstance inst;
    inst.label = std::move(label);
    inst.domain = std::move(domain);
    inst.group = group;
    if (inst.domain.empty()) throw DomainError("custom instance needs a nonempty domain");
    for (const auto& values : kernel_values) inst.kernel_basis.emplace_back(inst.domain, values);
    for (const auto& values : quotient_values) inst.quotient_basis.emplace_back(inst.domain, values);
    if (inst.quotient_basis.empty()) throw DomainError("custom instance needs a quotient basis");
    inst.params.kind = ProblemKind::custom;
    validate(inst);
    return inst;
}

ElementMatrix matrix_B(const QocInstance& inst, std::span<const DomainPoint> points) {
    return basis_matrix(inst, inst.kernel_basis, points);
}

ElementMatrix matrix_C(const QocInstance& inst, std::span<const DomainPoint> points) {
    return basis_matrix(inst, inst.quotient_basis, points);
}

OracleTable oracle_from_coefficients(const QocInstance& inst, std::span<const GroupElement> beta,
                                     std::span<const GroupElement> gamma) {
    if (beta.size() != inst.s() || gamma.size() != inst.t()) {
        throw StructuralError("coefficient vectors do not match the instance basis sizes");
    }
    std::vector<GroupElement> values(inst.domain.size(), inst.group.zero());
    auto accumulate = [&](const std::vector<OracleTable>& basis, std::span<const GroupElement> coeffs) {
        for (std::size_t b = 0; b < basis.size(); ++b) {
            for (std::size_t i = 0; i < values.size(); ++i) {
                values[i] = add(inst.group, values[i], ring_mul(inst.group, coeffs[b], basis[b].at_index(i)));
            }
        }
    };
    accumulate(inst.kernel_basis, beta);
    accumulate(inst.quotient_basis, gamma);
    return OracleTable(inst.domain, std::move(values));
}

SampledOracle sample_oracle(const QocInstance& inst, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, static_cast<std::uint64_t>(inst.group.order()) - 1);
    SampledOracle out;
    for (std::size_t l = 0; l < inst.s(); ++l) out.beta.push_back(inst.group.element_at(pick(rng)));
    for (std::size_t m = 0; m < inst.t(); ++m) out.gamma.push_back(inst.group.element_at(pick(rng)));
    out.table = oracle_from_coefficients(inst, out.beta, out.gamma);
    return out;
}

std::uint64_t module_order(const QocInstance& inst) {
    const auto n = static_cast<std::uint64_t>(inst.group.order());
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < inst.s() + inst.t(); ++i) {
        if (total > (std::uint64_t{1} << 62) / n) {
            throw CapacityError("|G|^(s+t) overflows 2^62");
        }
        total *= n;
    }
    return total;
}

bool verify_free(const QocInstance& inst, std::uint64_t guard) {
    validate(inst);
    std::uint64_t total = 0;
    try {
        total = module_order(inst);
    } catch (const CapacityError&) {
        throw CapacityError("verify_free: |G|^(s+t) exceeds the enumeration guard");
    }
    if (total > guard) {
        throw CapacityError("verify_free: |G|^(s+t) = " + std::to_string(total) +
                            " exceeds the enumeration guard " + std::to_string(guard));
    }
    // Injective iff only the zero coefficient vector produces the zero table.
    const std::size_t width = inst.s() + inst.t();
    const auto n = static_cast<std::uint64_t>(inst.group.order());
    std::vector<const OracleTable*> basis;
    for (const auto& b : inst.kernel_basis) basis.push_back(&b);
    for (const auto& b : inst.quotient_basis) basis.push_back(&b);
    std::vector<GroupElement> coeffs(width, inst.group.zero());
    std::vector<std::uint64_t> digits(width, 0);
    for (std::uint64_t code = 1; code < total; ++code) {
        for (std::size_t j = 0; j < width; ++j) {
            if (++digits[j] < n) {
                coeffs[j] = inst.group.element_at(digits[j]);
                break;
            }
            digits[j] = 0;
            coeffs[j] = inst.group.zero();
        }
        bool all_zero = true;
        for (std::size_t i = 0; i < inst.domain.size() && all_zero; ++i) {
            GroupElement v = inst.group.zero();
            for (std::size_t j = 0; j < width; ++j) {
                v = add(inst.group, v, ring_mul(inst.group, coeffs[j], basis[j]->at_index(i)));
            }
            all_zero = v == inst.group.zero();
        }
        if (all_zero) return false;
    }
    return true;
}

}  // namespace qoc::instance
