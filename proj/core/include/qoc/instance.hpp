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

#ifndef QOC_INSTANCE_HPP
#define QOC_INSTANCE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qoc/algebra.hpp"

namespace qoc::instance {

using algebra::GroupElement;
using algebra::GroupSpec;

/// Domain points are integer labels ordered by value.
using DomainPoint = std::int64_t;

/// Rows are basis functions, columns are query points.
using ElementMatrix = std::vector<std::vector<GroupElement>>;

/// A total function from a domain to a group, stored as one value per domain point.
class OracleTable {
   public:
    OracleTable() = default;
    /// `domain` must be strictly increasing; `values` is parallel to it.
    OracleTable(std::vector<DomainPoint> domain, std::vector<GroupElement> values);

    const std::vector<DomainPoint>& domain() const { return domain_; }
    const std::vector<GroupElement>& values() const { return values_; }
    std::size_t size() const { return domain_.size(); }

    /// Value at a domain point. Throws DomainError for points outside the domain.
    const GroupElement& at(DomainPoint x) const;
    /// Value at the i-th domain point.
    const GroupElement& at_index(std::size_t i) const { return values_[i]; }
    std::optional<std::size_t> index_of(DomainPoint x) const;

    bool operator==(const OracleTable&) const = default;

   private:
    std::vector<DomainPoint> domain_;
    std::vector<GroupElement> values_;
};

enum class ProblemKind { summation, interrogation, interpolation, evaluation, extrapolation, custom };

std::string to_string(ProblemKind kind);
std::optional<ProblemKind> parse_problem_kind(std::string_view name);

/// The parameters an instance was generated from; drives closed-form bound lookup.
struct ProblemParams {
    ProblemKind kind = ProblemKind::custom;
    std::int64_t M = 0;
    std::int64_t p = 0;
    std::int64_t d = 0;
    std::vector<DomainPoint> targets;
};

/// A group QOC instance in free-module form: A = sum beta_l B_l + sum gamma_m C_m,
/// and the task is to recover gamma (the coset of the kernel span).
struct QocInstance {
    std::string label;
    std::vector<DomainPoint> domain;
    GroupSpec group{{2}};
    std::vector<OracleTable> kernel_basis;
    std::vector<OracleTable> quotient_basis;
    ProblemParams params;

    std::size_t s() const { return kernel_basis.size(); }
    std::size_t t() const { return quotient_basis.size(); }
};

/// A canonical parallel query: distinct points in increasing order and one
/// character index per point. Zero characters are allowed.
struct QueryPair {
    std::vector<DomainPoint> points;
    std::vector<GroupElement> chars;

    std::size_t q() const { return points.size(); }
    bool operator==(const QueryPair&) const = default;
};

/// Coefficients of an oracle in the instance basis, plus its table.
struct SampledOracle {
    std::vector<GroupElement> beta;
    std::vector<GroupElement> gamma;
    OracleTable table;
};

/// Checks shapes and group membership of every basis table; throws StructuralError.
void validate(const QocInstance& inst);

/// Sum over the domain [0, M-1]; kernel B_y (y != 0) with B_y(0) = -1, B_y(y) = 1,
/// quotient the indicator of 0.
QocInstance make_summation(std::int64_t M, const GroupSpec& group);

/// Outputs on `targets`; kernel spanned by indicators off the targets, quotient by
/// indicators on them (in increasing target order).
QocInstance make_interrogation(std::int64_t M, const GroupSpec& group,
                               std::vector<DomainPoint> targets);

/// Degree-d polynomials over F_p, recover all coefficients. Monomial quotient basis.
QocInstance make_interpolation(std::int64_t p, std::int64_t d);

/// Values of a degree-d polynomial at the k = |targets| points. Kernel Q(x) x^i for
/// i = 0..d-k with Q vanishing on the targets; quotient the Lagrange polynomials of
/// the targets, so gamma equals the target outputs.
QocInstance make_evaluation(std::int64_t p, std::int64_t d, std::vector<DomainPoint> targets);

/// Value at 0 of a degree-d polynomial, queried on F_p \ {0}.
QocInstance make_extrapolation(std::int64_t p, std::int64_t d);

/// Explicit instance. Tables are given in domain order.
QocInstance make_custom(std::string label, std::vector<DomainPoint> domain, const GroupSpec& group,
                        const std::vector<std::vector<GroupElement>>& kernel_values,
                        const std::vector<std::vector<GroupElement>>& quotient_values);

/// Entry (l, i) = B_l(points[i]). Points must lie in the domain.
ElementMatrix matrix_B(const QocInstance& inst, std::span<const DomainPoint> points);
ElementMatrix matrix_C(const QocInstance& inst, std::span<const DomainPoint> points);

/// The oracle sum_l beta_l B_l + sum_m gamma_m C_m.
OracleTable oracle_from_coefficients(const QocInstance& inst, std::span<const GroupElement> beta,
                                     std::span<const GroupElement> gamma);

/// Uniformly random coefficients; deterministic in `seed`.
SampledOracle sample_oracle(const QocInstance& inst, std::uint64_t seed);

/// |G|^(s+t), or CapacityError when it does not fit in 63 bits.
std::uint64_t module_order(const QocInstance& inst);

/// True iff (beta, gamma) -> table is injective. Exhaustive; throws CapacityError
/// when |G|^(s+t) exceeds `guard`.
bool verify_free(const QocInstance& inst, std::uint64_t guard = 1'000'000);

}  // namespace qoc::instance

#endif
