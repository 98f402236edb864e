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

#ifndef QOC_FORMULAS_HPP
#define QOC_FORMULAS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "qoc/instance.hpp"
#include "qoc/rational.hpp"

namespace qoc::formulas {

/// Either an exact rational or a double (for bounds involving e^{2 sqrt q}).
class BoundValue {
   public:
    BoundValue(Rational value) : value_(std::move(value)) {}
    static BoundValue real(double value) {
        BoundValue b{Rational(0)};
        b.value_ = value;
        return b;
    }

    bool is_rational() const { return std::holds_alternative<Rational>(value_); }
    const Rational& rational() const { return std::get<Rational>(value_); }
    double to_double() const;
    /// "a/b" for rationals, a 12-significant-digit decimal otherwise.
    std::string str() const;

   private:
    std::variant<Rational, double> value_;
};

struct BoundBracket {
    BoundValue lower{Rational(0)};
    BoundValue upper{Rational(1)};
    /// lower == upper and the value is attained.
    bool exact = false;
    /// Which clause produced the bracket, plus any clamping that was applied.
    std::string regime;

    /// Inclusive containment; exact rationals compare exactly.
    bool contains(const Rational& value) const;
};

/// min(floor(M/(M-q))/N, 1); q = M gives 1.
BoundBracket summation_bound(std::int64_t M, std::int64_t q, std::int64_t N);

/// (1/N^k) sum_{i=0}^{q} binom(k, i) (N-1)^i: the number of length-k outputs that
/// differ from zero in at most q places, over N^k.
BoundBracket interrogation_bound(std::int64_t M, std::int64_t N, std::int64_t k, std::int64_t q);

/// Three regimes: q <= d/2, q = (d+1)/2, q >= d/2 + 1. Lower bounds below random
/// guessing are clamped to 1/p^{d+1}.
BoundBracket interpolation_bound(std::int64_t d, std::int64_t q, std::int64_t p);

/// q+1 target points, q <= d/2: upper (q+1) q e^{2 sqrt q} / p, lower 1/p^{q+1}.
/// Throws DomainError for q > d/2.
BoundBracket evaluation_bound(std::int64_t d, std::int64_t q, std::int64_t p);

/// Exact 1/p for q <= d/2; floor((p-1)/q)/p upper bound at q = (d+1)/2 (exact when
/// q divides p-1); clamped asymptotic lower bound above that.
BoundBracket extrapolation_bound(std::int64_t d, std::int64_t q, std::int64_t p);

/// The bracket that applies to a generated instance at q queries, or nullopt when
/// there is no closed form (custom instances, evaluation with k != q+1 below d/2).
std::optional<BoundBracket> bracket_for(const instance::QocInstance& inst, std::size_t q);

}  // namespace qoc::formulas

#endif
