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

#include <cmath>
#include <numeric>

#include "gtest/gtest.h"

#include "qoc/errors.hpp"

using namespace qoc;
using namespace qoc::algebra;

TEST(algebra, group_spec_basics) {
    GroupSpec g({2, 3});
    ASSERT_EQ(g.rank(), 2u);
    ASSERT_EQ(g.order(), 6);
    ASSERT_EQ(g.phase_order(), 6);
    ASSERT_EQ(g.zero(), g.element({0, 0}));
    ASSERT_EQ(g.unit(), g.element({1, 1}));
    ASSERT_EQ(g.element({5, -1}), g.element({1, 2}));
    ASSERT_EQ(g.broadcast(7), g.element({1, 1}));
    ASSERT_TRUE(g.contains(g.element({1, 2})));
    ASSERT_FALSE(g.contains(GroupElement{{2, 0}}));
    ASSERT_FALSE(g.contains(GroupElement{{0}}));

    ASSERT_EQ(GroupSpec({4, 6}).phase_order(), 12);
    ASSERT_THROW(GroupSpec({1}), DomainError);
    ASSERT_THROW(GroupSpec({}), DomainError);
}

TEST(algebra, index_round_trip) {
    GroupSpec g({2, 3, 4});
    for (std::uint64_t i = 0; i < 24; ++i) {
        ASSERT_EQ(g.index_of(g.element_at(i)), i);
    }
    ASSERT_EQ(g.index_of(g.element({0, 0, 1})), 1u);
    ASSERT_EQ(g.index_of(g.element({1, 0, 0})), 12u);
}

TEST(algebra, arithmetic) {
    GroupSpec g({4, 3});
    auto a = g.element({3, 2});
    auto b = g.element({2, 2});
    ASSERT_EQ(add(g, a, b), g.element({1, 1}));
    ASSERT_EQ(negate(g, a), g.element({1, 1}));
    ASSERT_EQ(subtract(g, a, b), g.element({1, 0}));
    ASSERT_EQ(ring_mul(g, a, b), g.element({2, 1}));
    ASSERT_EQ(add(g, a, negate(g, a)), g.zero());
    ASSERT_THROW(add(g, a, GroupElement{{1}}), StructuralError);
    ASSERT_THROW(ring_mul(g, GroupElement{{9, 0}}, b), StructuralError);
}

TEST(algebra, characters_are_homomorphisms) {
    for (auto moduli : {std::vector<std::int64_t>{2}, {3}, {4}, {2, 2}, {2, 3}, {4, 6}}) {
        GroupSpec g(moduli);
        for (std::int64_t ri = 0; ri < g.order(); ++ri) {
            auto r = g.element_at(ri);
            ASSERT_TRUE(char_eval(g, r, g.zero()).is_one());
            for (std::int64_t ai = 0; ai < g.order(); ++ai) {
                for (std::int64_t bi = 0; bi < g.order(); ++bi) {
                    auto a = g.element_at(ai);
                    auto b = g.element_at(bi);
                    ASSERT_EQ(char_eval(g, r, add(g, a, b)), char_eval(g, r, a) * char_eval(g, r, b));
                }
                // Symmetric pairing.
                ASSERT_EQ(char_eval(g, r, g.element_at(ai)), char_eval(g, g.element_at(ai), r));
            }
        }
    }
}

TEST(algebra, character_orthogonality) {
    for (auto moduli : {std::vector<std::int64_t>{3}, {2, 2}, {2, 4}}) {
        GroupSpec g(moduli);
        for (std::int64_t r = 0; r < g.order(); ++r) {
            for (std::int64_t s = 0; s < g.order(); ++s) {
                std::complex<double> sum = 0;
                for (std::int64_t a = 0; a < g.order(); ++a) {
                    auto x = g.element_at(a);
                    sum += char_eval(g, g.element_at(r), x).to_complex() *
                           char_eval(g, g.element_at(s), x).conj().to_complex();
                }
                ASSERT_NEAR(sum.real(), r == s ? g.order() : 0, 1e-9);
                ASSERT_NEAR(sum.imag(), 0, 1e-9);
            }
        }
    }
}

TEST(algebra, character_values) {
    GroupSpec z4 = GroupSpec::cyclic(4);
    auto phase = char_eval(z4, z4.element({1}), z4.element({1})).to_complex();
    ASSERT_EQ(phase, std::complex<double>(0, 1));
    phase = char_eval(z4, z4.element({2}), z4.element({1})).to_complex();
    ASSERT_EQ(phase, std::complex<double>(-1, 0));

    GroupSpec z3 = GroupSpec::cyclic(3);
    phase = char_eval(z3, z3.element({1}), z3.element({1})).to_complex();
    ASSERT_NEAR(phase.real(), -0.5, 1e-15);
    ASSERT_NEAR(phase.imag(), std::sqrt(3.0) / 2, 1e-15);

    std::vector<GroupElement> rs{z3.element({1}), z3.element({2})};
    std::vector<GroupElement> gs{z3.element({1}), z3.element({1})};
    ASSERT_TRUE(char_eval(z3, rs, gs).is_one());
    ASSERT_THROW(ExactPhase(1, 3) * ExactPhase(1, 4), StructuralError);
}

TEST(algebra, modular_helpers) {
    ASSERT_TRUE(is_prime(2));
    ASSERT_TRUE(is_prime(7919));
    ASSERT_FALSE(is_prime(1));
    ASSERT_FALSE(is_prime(91));
    ASSERT_EQ(mod_reduce(-7, 5), 3);
    ASSERT_EQ(mod_pow(3, 4, 7), 4);
    ASSERT_EQ(mod_pow(5, 0, 1), 0);
    for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
        for (std::int64_t a = 1; a < p; ++a) {
            ASSERT_EQ(mod_reduce(a * mod_inverse(a, p), p), 1);
        }
        ASSERT_THROW(mod_inverse(p, p), DomainError);
    }
    ASSERT_THROW(mod_inverse(2, 8), DomainError);
}
