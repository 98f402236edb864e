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

#include "qoc/simulator.hpp"

#include "gtest/gtest.h"

#include "qoc/counting.hpp"
#include "qoc/errors.hpp"

using namespace qoc;
using namespace qoc::simulator;
using algebra::GroupSpec;
using instance::QocInstance;

namespace {

std::vector<std::pair<QocInstance, std::size_t>> cases() {
    return {
        {instance::make_summation(3, GroupSpec::cyclic(2)), 1},
        {instance::make_summation(4, GroupSpec::cyclic(3)), 2},
        {instance::make_summation(3, GroupSpec({2, 2})), 1},
        {instance::make_interrogation(4, GroupSpec::cyclic(3), {0, 3}), 1},
        {instance::make_interpolation(3, 1), 1},
        {instance::make_interpolation(5, 2), 1},
        {instance::make_extrapolation(3, 1), 1},
        {instance::make_extrapolation(5, 3), 2},
        {instance::make_evaluation(5, 2, {1}), 1},
    };
}

double unitarity_residual(const CMatrix& u) {
    return (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

}  // namespace

TEST(simulator, class_states_are_normalized) {
    auto inst = instance::make_interpolation(3, 1);
    auto counted = counting::count_optimal(inst, 1);
    auto basis = class_basis(inst, counted);
    ASSERT_EQ(basis.size(), counted.best_class_size);
    std::uint64_t pairs = 0;
    for (const auto& m : basis.members) pairs += m.pair_ordinals.size();
    ASSERT_EQ(pairs, 9u);
    for (std::uint64_t c = 0; c < counted.quotient_order; ++c) {
        auto state = build_class_state(inst, basis, counted.z_codec.unpack(c));
        ASSERT_NEAR(state.norm(), 1.0, 1e-12);
    }
    ASSERT_THROW(class_basis(inst, counted, counted.h_codec.size() + 5), DomainError);
}

TEST(simulator, gram_identities) {
    for (const auto& [inst, q] : cases()) {
        auto report = optimal_success(inst, q);
        const double ratio = static_cast<double>(report.dimension) / static_cast<double>(report.class_size);
        const CMatrix& u = report.gram;
        ASSERT_LE((u * u - ratio * u).cwiseAbs().maxCoeff(), 1e-8) << inst.label;
        ASSERT_LE(report.gram_identity_residual, 1e-8) << inst.label;
        ASSERT_NEAR(report.trace_squared, static_cast<double>(report.class_size), 1e-8) << inst.label;
        ASSERT_LE((report.sqrt_gram * report.sqrt_gram - u).cwiseAbs().maxCoeff(), 1e-8) << inst.label;
        ASSERT_LE(report.completeness_residual, 1e-8) << inst.label;
        ASSERT_EQ(report.state_rank, report.class_size) << inst.label;
    }
}

TEST(simulator, optimal_success_matches_counting) {
    for (const auto& [inst, q] : cases()) {
        auto report = optimal_success(inst, q);
        const double expected = to_double(report.counting_probability);
        ASSERT_NEAR(report.total_success, expected, 1e-9) << inst.label;
        for (double p : report.per_coset_success) ASSERT_NEAR(p, expected, 1e-9) << inst.label;
    }
}

TEST(simulator, sqrt_gram_rejects_wrong_scale) {
    auto report = optimal_success(instance::make_interpolation(3, 1), 1);
    ASSERT_THROW(sqrt_gram(report.gram, report.class_size + 1, report.dimension, 1e-8), ConsistencyError);
    CMatrix negative = CMatrix::Identity(2, 2);
    negative(1, 1) = -1;
    ASSERT_THROW(sqrt_gram(negative, 1, 1, 1e-8), ConsistencyError);
}

TEST(simulator, pseudo_inverse_sqrt_known_matrix) {
    CMatrix m = CMatrix::Zero(3, 3);
    m(0, 0) = 4;
    m(1, 1) = 9;
    auto r = pseudo_inverse_sqrt(m, 1e-10);
    ASSERT_NEAR(r(0, 0).real(), 0.5, 1e-12);
    ASSERT_NEAR(r(1, 1).real(), 1.0 / 3.0, 1e-12);
    ASSERT_NEAR(std::abs(r(2, 2)), 0.0, 1e-12);
}

TEST(simulator, random_unitary_properties) {
    auto u = random_unitary(17, 5);
    ASSERT_LE(unitarity_residual(u), 1e-12);
    ASSERT_EQ(u, random_unitary(17, 5));
    ASSERT_NE(u, random_unitary(17, 6));
}

TEST(simulator, optimal_algorithm_attains_counting_value) {
    for (const auto& [inst, q] : cases()) {
        auto alg = optimal_parallel_algorithm(inst, q);
        ASSERT_LE(unitarity_residual(alg.mix), 1e-9) << inst.label;
        ASSERT_NEAR(alg.init.norm(), 1.0, 1e-12) << inst.label;
        const double expected = to_double(counting::count_optimal(inst, q).probability);
        ASSERT_NEAR(run_parallel_algorithm(alg, inst), expected, 1e-9) << inst.label;
    }
}

TEST(simulator, random_algorithms_never_beat_counting) {
    for (const auto& [inst, q] : cases()) {
        const double bound = to_double(counting::count_optimal(inst, q).probability);
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            auto alg = random_parallel_algorithm(inst, q, seed, 2);
            ASSERT_LE(unitarity_residual(alg.mix), 1e-9);
            ASSERT_LE(run_parallel_algorithm(alg, inst), bound + 1e-9) << inst.label << " seed=" << seed;
        }
    }
}

TEST(simulator, shift_invariance) {
    for (const auto& [inst, q] : cases()) {
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            auto alg = random_parallel_algorithm(inst, q, seed, 2);
            auto a0 = instance::sample_oracle(inst, seed + 100);
            ASSERT_NEAR(oracle_shift_run(alg, inst, {a0.beta, a0.gamma}), run_parallel_algorithm(alg, inst), 1e-9)
                << inst.label;
        }
    }
}

TEST(simulator, zero_query_guessing) {
    auto inst = instance::make_interrogation(3, GroupSpec::cyclic(3), {1});
    auto report = optimal_success(inst, 0);
    ASSERT_NEAR(report.total_success, 1.0 / 3.0, 1e-12);
    auto alg = random_parallel_algorithm(inst, 0, 3);
    ASSERT_NEAR(run_parallel_algorithm(alg, inst), 1.0 / 3.0, 1e-9);
}

TEST(simulator, span_rank_counts_independent_states) {
    CVector a = CVector::Zero(3);
    a(0) = 1;
    CVector b = CVector::Zero(3);
    b(1) = 1;
    ASSERT_EQ(span_rank({a, b, a + b}), 2u);
    ASSERT_EQ(span_rank({}), 0u);
}

TEST(simulator, guards) {
    SimulatorConfig config;
    config.max_quotient_order = 8;
    ASSERT_THROW(optimal_success(instance::make_interpolation(3, 1), 1, config), CapacityError);
    config = SimulatorConfig{};
    config.max_work = 10;
    auto inst = instance::make_extrapolation(3, 1);
    auto alg = random_parallel_algorithm(inst, 1, 1);
    ASSERT_THROW(run_parallel_algorithm(alg, inst, config), CapacityError);
    ASSERT_THROW(run_parallel_algorithm(alg, instance::make_extrapolation(5, 1)), StructuralError);
}
