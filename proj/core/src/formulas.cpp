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

#include "qoc/formulas.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "qoc/errors.hpp"

namespace qoc::formulas {

namespace {

Integer ipow(std::int64_t base, std::int64_t exponent) {
    Integer out = 1;
    for (std::int64_t i = 0; i < exponent; ++i) out *= base;
    return out;
}

Integer factorial(std::int64_t n) {
    Integer out = 1;
    for (std::int64_t i = 2; i <= n; ++i) out *= i;
    return out;
}

Integer binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0;
    Integer out = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        out *= (n - i);
        out /= (i + 1);
    }
    return out;
}

BoundBracket exact_bracket(Rational value, std::string regime) {
    return BoundBracket{value, value, true, std::move(regime)};
}

/// Lower bound of the "q >= d/2 + 1" clause: 1 - ((ceil(d/2) + 1)! + d + 1) / p.
Rational large_q_lower(std::int64_t d, std::int64_t p) {
    const std::int64_t half = (d + 1) / 2;
    return Rational(1) - Rational(factorial(half + 1) + d + 1, Integer(p));
}

void require_field(std::int64_t d, std::int64_t q, std::int64_t p) {
    if (d < 1) throw DomainError("degree must be >= 1");
    if (q < 0) throw DomainError("q must be >= 0");
    if (!algebra::is_prime(p)) throw DomainError("field size must be prime");
}

/// Raises `lower` to the trivial guess if the formula falls below it.
void clamp_lower(BoundBracket& b, const Rational& guess) {
    if (b.lower.rational() < guess) {
        b.lower = guess;
        b.regime += "; lower clamped to random guessing";
    }
}

}  // namespace

double BoundValue::to_double() const {
    if (is_rational()) return qoc::to_double(rational());
    return std::get<double>(value_);
}

std::string BoundValue::str() const {
    if (is_rational()) return rational_str(rational());
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", std::get<double>(value_));
    return buf;
}

bool BoundBracket::contains(const Rational& value) const {
    auto at_least = [&](const BoundValue& b) {
        return b.is_rational() ? value >= b.rational() : qoc::to_double(value) >= b.to_double() * (1 - 1e-12);
    };
    auto at_most = [&](const BoundValue& b) {
        return b.is_rational() ? value <= b.rational() : qoc::to_double(value) <= b.to_double() * (1 + 1e-12);
    };
    return at_least(lower) && at_most(upper);
}

BoundBracket summation_bound(std::int64_t M, std::int64_t q, std::int64_t N) {
    if (M < 1 || N < 2 || q < 0) throw DomainError("summation_bound needs M >= 1, N >= 2, q >= 0");
    if (q > M) throw DomainError("summation_bound: q exceeds M");
    if (q == M) return exact_bracket(Rational(1), "summation: q = M");
    const std::int64_t reachable = std::min(M / (M - q), N);
    return exact_bracket(Rational(Integer(reachable), Integer(N)), "summation: min(floor(M/(M-q))/|G|, 1)");
}

BoundBracket interrogation_bound(std::int64_t M, std::int64_t N, std::int64_t k, std::int64_t q) {
    if (k < 1 || N < 2 || q < 0) throw DomainError("interrogation_bound needs k >= 1, N >= 2, q >= 0");
    if (k > M) throw DomainError("interrogation_bound: k exceeds M");
    Integer count = 0;
    for (std::int64_t i = 0; i <= std::min(q, k); ++i) count += binomial(k, i) * ipow(N - 1, i);
    return exact_bracket(Rational(count, ipow(N, k)), "interrogation: outputs nonzero on at most q targets");
}

BoundBracket interpolation_bound(std::int64_t d, std::int64_t q, std::int64_t p) {
    require_field(d, q, p);
    const Rational guess(Integer(1), ipow(p, d + 1));
    BoundBracket b;
    if (2 * q <= d) {
        b = BoundBracket{guess, Rational(Integer(1), Integer(p)), false, "interpolation: q <= d/2"};
    } else if (2 * q == d + 1) {
        const Rational inv_fact(Integer(1), factorial(q));
        b = BoundBracket{inv_fact * (Rational(1) - Rational(binomial(q + 1, 2), Integer(p))), inv_fact, false,
                         "interpolation: q = (d+1)/2"};
        clamp_lower(b, guess);
    } else {
        b = BoundBracket{large_q_lower(d, p), Rational(1), false, "interpolation: q >= d/2 + 1"};
        clamp_lower(b, guess);
    }
    b.exact = b.lower.rational() == b.upper.rational();
    return b;
}

BoundBracket evaluation_bound(std::int64_t d, std::int64_t q, std::int64_t p) {
    require_field(d, q, p);
    if (2 * q > d) {
        throw DomainError("evaluation_bound only covers q <= d/2 (q=" + std::to_string(q) +
                          ", d=" + std::to_string(d) + ")");
    }
    const Rational guess(Integer(1), ipow(p, q + 1));
    const double qd = static_cast<double>(q);
    const double formula = (qd + 1) * qd * std::exp(2 * std::sqrt(qd)) / static_cast<double>(p);
    BoundBracket b{guess, Rational(1), false, "evaluation: q <= d/2"};
    if (formula >= 1.0) {
        b.regime += "; upper clamped to 1";
    } else if (formula <= b.lower.to_double()) {
        b.upper = guess;
        b.regime += "; upper raised to random guessing";
    } else {
        b.upper = BoundValue::real(formula);
    }
    b.exact = b.upper.is_rational() && b.upper.rational() == guess;
    return b;
}

BoundBracket extrapolation_bound(std::int64_t d, std::int64_t q, std::int64_t p) {
    require_field(d, q, p);
    const Rational guess(Integer(1), Integer(p));
    if (2 * q <= d) return exact_bracket(guess, "extrapolation: q <= d/2");
    if (2 * q == d + 1) {
        const Rational upper(Integer((p - 1) / q), Integer(p));
        if ((p - 1) % q == 0) return exact_bracket(upper, "extrapolation: q = (d+1)/2, q divides p-1");
        return BoundBracket{guess, upper, upper == guess, "extrapolation: q = (d+1)/2"};
    }
    BoundBracket b{large_q_lower(d, p), Rational(1), false, "extrapolation: q >= (d+2)/2"};
    clamp_lower(b, guess);
    b.exact = b.lower.rational() == b.upper.rational();
    return b;
}

std::optional<BoundBracket> bracket_for(const instance::QocInstance& inst, std::size_t q_size) {
    using instance::ProblemKind;
    const auto& params = inst.params;
    const auto q = static_cast<std::int64_t>(q_size);
    switch (params.kind) {
        case ProblemKind::summation:
            return summation_bound(params.M, q, inst.group.order());
        case ProblemKind::interrogation:
            return interrogation_bound(params.M, inst.group.order(),
                                       static_cast<std::int64_t>(params.targets.size()), q);
        case ProblemKind::interpolation:
            return interpolation_bound(params.d, q, params.p);
        case ProblemKind::extrapolation:
            return extrapolation_bound(params.d, q, params.p);
        case ProblemKind::evaluation: {
            const auto k = static_cast<std::int64_t>(params.targets.size());
            const Rational guess(Integer(1), ipow(params.p, k));
            if (q >= k) return exact_bracket(Rational(1), "evaluation: q >= k, query the targets directly");
            if (2 * q > params.d) {
                auto interp = interpolation_bound(params.d, q, params.p);
                BoundBracket b{std::max(interp.lower.rational(), guess), Rational(1), false,
                               "evaluation: q > d/2, via interpolation lower bound"};
                return b;
            }
            if (k == q + 1) return evaluation_bound(params.d, q, params.p);
            return std::nullopt;
        }
        case ProblemKind::custom:
            return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace qoc::formulas
