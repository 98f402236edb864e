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

#ifndef QOC_SIMULATOR_HPP
#define QOC_SIMULATOR_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "qoc/counting.hpp"
#include "qoc/instance.hpp"

namespace qoc::simulator {

using algebra::GroupElement;
using instance::QocInstance;

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

struct SimulatorConfig {
    /// Tolerance for probability comparisons.
    double probability_tolerance = 1e-9;
    /// Tolerance for matrix identities (entrywise max norm).
    double matrix_tolerance = 1e-8;
    /// Largest |C| for which Gram matrices are formed.
    std::uint64_t max_quotient_order = 4096;
    /// Largest (pair x workspace) dimension for ParallelAlgorithm runs.
    std::uint64_t max_state_dimension = 4096;
    /// Largest |A| * dimension^2 for ParallelAlgorithm runs.
    std::uint64_t max_work = 4'000'000'000ULL;
    counting::CountingConfig counting;
};

struct ClassMember {
    std::vector<GroupElement> z;
    std::uint64_t z_key = 0;
    /// Number of canonical pairs realising this z (S in the weighting).
    std::uint64_t multiplicity = 0;
    /// Enumeration ordinals of those pairs.
    std::vector<std::uint64_t> pair_ordinals;
};

/// The members of one h-class, in increasing z order.
struct ClassBasis {
    std::size_t q = 0;
    std::vector<GroupElement> h;
    std::uint64_t h_key = 0;
    std::vector<ClassMember> members;

    std::size_t size() const { return members.size(); }
};

/// Collects every canonical pair of the class with key `h_key`.
ClassBasis class_basis(const QocInstance& inst, const counting::CountingResult& counted, std::uint64_t h_key);
/// The class of counted.best_h.
ClassBasis class_basis(const QocInstance& inst, const counting::CountingResult& counted);

/// Post-query state for quotient coefficients gamma, written in the orthonormal
/// basis of class members: entry m is chi_{z_m}(gamma) / sqrt(|E|).
CVector build_class_state(const QocInstance& inst, const ClassBasis& basis, std::span<const GroupElement> gamma);

/// U = T^dagger T for the matrix T whose columns are `states`.
CMatrix gram_matrix(const std::vector<CVector>& states);

/// sqrt(|E|/|C|) U, checked against the eigendecomposition root. Throws
/// ConsistencyError on a negative eigenvalue or a disagreement above `tolerance`.
CMatrix sqrt_gram(const CMatrix& gram, std::uint64_t class_size, std::uint64_t quotient_order,
                  double tolerance = 1e-8);

/// Pseudo-inverse of the principal square root (zero on the null space).
CMatrix pseudo_inverse_sqrt(const CMatrix& gram, double tolerance = 1e-8);

struct GramReport {
    std::size_t q = 0;
    /// |C|
    std::uint64_t dimension = 0;
    /// |E|, the number of distinct z in the chosen class.
    std::uint64_t class_size = 0;
    CMatrix gram;
    CMatrix sqrt_gram;
    /// |<R_C|psi_C>|^2 with R = T U^{+1/2}, one entry per coset.
    std::vector<double> per_coset_success;
    double total_success = 0;
    Rational counting_probability;
    /// max |U^2 - (|C|/|E|) U|
    double gram_identity_residual = 0;
    /// Sum of squared diagonal entries of U^{1/2}.
    double trace_squared = 0;
    /// max |R R^dagger - I| on the member space (POVM completeness).
    double completeness_residual = 0;
    std::size_t state_rank = 0;
    std::vector<CVector> states;
};

/// Builds the class states for the best class, measures with R = T U^{+1/2} and
/// reports per-coset and average success.
GramReport optimal_success(const QocInstance& inst, std::size_t q, const SimulatorConfig& config = {});

/// A parallel q-query algorithm on span{|pair, w>}: prepare `init`, apply phase
/// queries, apply `mix`, measure the label and output decode[label] (a packed gamma).
struct ParallelAlgorithm {
    std::size_t q = 0;
    std::uint64_t pair_count = 0;
    std::uint64_t workspace = 1;
    CVector init;
    CMatrix mix;
    std::vector<std::uint64_t> decode;
    std::uint64_t seed = 0;

    std::uint64_t dimension() const { return pair_count * workspace; }
};

/// Random unit init, Haar-random mix (QR of a complex Gaussian matrix), and the
/// surjective decode label -> label mod |C|. `workspace` 0 selects |C|.
ParallelAlgorithm random_parallel_algorithm(const QocInstance& inst, std::size_t q, std::uint64_t seed,
                                            std::uint64_t workspace = 0, const SimulatorConfig& config = {});

/// The optimal measurement dilated into a unitary on pairs x workspace.
ParallelAlgorithm optimal_parallel_algorithm(const QocInstance& inst, std::size_t q,
                                             const SimulatorConfig& config = {});

struct OracleCoefficients {
    std::vector<GroupElement> beta;
    std::vector<GroupElement> gamma;
};

/// Average success over every oracle in the module. Throws CapacityError past the guards.
double run_parallel_algorithm(const ParallelAlgorithm& alg, const QocInstance& inst,
                              const SimulatorConfig& config = {});

/// Runs `alg` against A + shift for every A and corrects its output by the shift's
/// quotient coefficients.
double oracle_shift_run(const ParallelAlgorithm& alg, const QocInstance& inst, const OracleCoefficients& shift,
                        const SimulatorConfig& config = {});

/// Numerical rank: singular values above relative_tolerance * largest.
std::size_t span_rank(const std::vector<CVector>& states, double relative_tolerance = 1e-8);

/// Deterministic Haar-random unitary.
CMatrix random_unitary(std::size_t n, std::uint64_t seed);

}  // namespace qoc::simulator

#endif
