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

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <cstdio>
#include <map>
#include <random>

#include "qoc/errors.hpp"

namespace qoc::simulator {

namespace {

using Complex = std::complex<double>;

/// Extends orthonormal columns to a full unitary whose leading columns are `basis`.
CMatrix complete_unitary(const CMatrix& basis) {
    const Eigen::Index n = basis.rows();
    CMatrix out(n, n);
    Eigen::Index filled = 0;
    auto try_add = [&](CVector v) {
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index j = 0; j < filled; ++j) v -= out.col(j) * out.col(j).dot(v);
        }
        const double norm = v.norm();
        if (norm < 1e-6) return false;
        out.col(filled++) = v / norm;
        return true;
    };
    for (Eigen::Index j = 0; j < basis.cols(); ++j) {
        if (!try_add(basis.col(j))) throw ConsistencyError("complete_unitary: input columns are not independent");
    }
    for (Eigen::Index e = 0; e < n && filled < n; ++e) try_add(CVector::Unit(n, e));
    if (filled != n) throw ConsistencyError("complete_unitary: failed to span the space");
    return out;
}

CMatrix columns(const std::vector<CVector>& states) {
    if (states.empty()) return CMatrix(0, 0);
    CMatrix t(states.front().size(), static_cast<Eigen::Index>(states.size()));
    for (std::size_t c = 0; c < states.size(); ++c) {
        if (states[c].size() != t.rows()) throw StructuralError("states have different dimensions");
        t.col(static_cast<Eigen::Index>(c)) = states[c];
    }
    return t;
}

struct PairTable {
    std::vector<std::vector<std::size_t>> point_index;
    std::vector<std::vector<GroupElement>> chars;
};

PairTable tabulate_pairs(const QocInstance& inst, std::size_t q) {
    PairTable out;
    counting::enumerate_pairs(inst, q, [&](const instance::QueryPair& pair) {
        std::vector<std::size_t> idx;
        for (auto x : pair.points) {
            idx.push_back(static_cast<std::size_t>(
                std::lower_bound(inst.domain.begin(), inst.domain.end(), x) - inst.domain.begin()));
        }
        out.point_index.push_back(std::move(idx));
        out.chars.push_back(pair.chars);
    });
    return out;
}

/// Average over all oracles A of Pr[corrected output = gamma(A)] when the algorithm
/// is answered by A + shift.
double average_success(const ParallelAlgorithm& alg, const QocInstance& inst, const OracleCoefficients* shift,
                       const SimulatorConfig& config) {
    const std::uint64_t pairs = counting::pair_count(inst, alg.q);
    if (pairs != alg.pair_count) throw StructuralError("algorithm was built for a different pair count");
    const auto dim = static_cast<Eigen::Index>(alg.dimension());
    if (alg.init.size() != dim || alg.mix.rows() != dim || alg.mix.cols() != dim ||
        alg.decode.size() != alg.dimension()) {
        throw StructuralError("algorithm components have inconsistent dimensions");
    }
    if (alg.dimension() > config.max_state_dimension) {
        throw CapacityError("algorithm dimension " + std::to_string(alg.dimension()) + " exceeds the guard");
    }
    const std::uint64_t oracles = instance::module_order(inst);
    const double work = static_cast<double>(oracles) * static_cast<double>(dim) * static_cast<double>(dim);
    if (work > static_cast<double>(config.max_work)) {
        throw CapacityError("|A| * dimension^2 = " + std::to_string(work) + " exceeds the work guard");
    }

    const auto& group = inst.group;
    const counting::VectorCodec coeff_codec(group, inst.s() + inst.t());
    const counting::VectorCodec gamma_codec(group, inst.t());
    const PairTable table = tabulate_pairs(inst, alg.q);

    instance::OracleTable shift_table;
    std::vector<std::uint64_t> corrected = alg.decode;
    if (shift) {
        shift_table = instance::oracle_from_coefficients(inst, shift->beta, shift->gamma);
        for (auto& label : corrected) {
            auto guess = gamma_codec.unpack(label);
            for (std::size_t m = 0; m < guess.size(); ++m) {
                guess[m] = algebra::subtract(group, guess[m], shift->gamma[m]);
            }
            label = gamma_codec.pack(guess);
        }
    }

    double total = 0;
    CVector state(dim);
    std::vector<GroupElement> values(alg.q);
    for (std::uint64_t code = 0; code < oracles; ++code) {
        const auto coeffs = coeff_codec.unpack(code);
        const std::span<const GroupElement> beta(coeffs.data(), inst.s());
        const std::span<const GroupElement> gamma(coeffs.data() + inst.s(), inst.t());
        auto oracle = instance::oracle_from_coefficients(inst, beta, gamma);
        if (shift) {
            std::vector<GroupElement> shifted;
            for (std::size_t i = 0; i < oracle.size(); ++i) {
                shifted.push_back(algebra::add(group, oracle.at_index(i), shift_table.at_index(i)));
            }
            oracle = instance::OracleTable(inst.domain, std::move(shifted));
        }
        for (std::uint64_t o = 0; o < pairs; ++o) {
            for (std::size_t i = 0; i < alg.q; ++i) values[i] = oracle.at_index(table.point_index[o][i]);
            const Complex phase = algebra::char_eval(group, table.chars[o], values).to_complex();
            for (std::uint64_t w = 0; w < alg.workspace; ++w) {
                const auto idx = static_cast<Eigen::Index>(o * alg.workspace + w);
                state(idx) = phase * alg.init(idx);
            }
        }
        const CVector out = alg.mix * state;
        const std::uint64_t target = gamma_codec.pack(gamma);
        for (Eigen::Index label = 0; label < dim; ++label) {
            if (corrected[static_cast<std::size_t>(label)] == target) total += std::norm(out(label));
        }
    }
    return total / static_cast<double>(oracles);
}

}  // namespace

ClassBasis class_basis(const QocInstance& inst, const counting::CountingResult& counted, std::uint64_t h_key) {
    const auto cls = counted.classes.find(h_key);
    if (cls == counted.classes.end()) throw DomainError("class_basis: no such h class");
    ClassBasis basis;
    basis.q = counted.q;
    basis.h_key = h_key;
    basis.h = counted.h_codec.unpack(h_key);

    std::map<std::uint64_t, ClassMember> members;
    std::uint64_t ordinal = 0;
    counting::enumerate_pairs(inst, counted.q, [&](const instance::QueryPair& pair) {
        auto hz = counting::hz_of_pair(inst, pair);
        if (counted.h_codec.pack(hz.h) == h_key) {
            const std::uint64_t z_key = counted.z_codec.pack(hz.z);
            auto& member = members[z_key];
            if (member.pair_ordinals.empty()) {
                member.z = std::move(hz.z);
                member.z_key = z_key;
            }
            member.pair_ordinals.push_back(ordinal);
            ++member.multiplicity;
        }
        ++ordinal;
    });

    // Cross-check against the counting engine.
    if (members.size() != cls->second.z.size()) {
        throw ConsistencyError("class_basis: member count disagrees with the counting engine");
    }
    for (auto& [z_key, member] : members) {
        const auto it = cls->second.z.find(z_key);
        if (it == cls->second.z.end() || it->second.multiplicity != member.multiplicity) {
            throw ConsistencyError("class_basis: multiplicity disagrees with the counting engine");
        }
        basis.members.push_back(std::move(member));
    }
    return basis;
}

ClassBasis class_basis(const QocInstance& inst, const counting::CountingResult& counted) {
    return class_basis(inst, counted, counted.best_h);
}

CVector build_class_state(const QocInstance& inst, const ClassBasis& basis, std::span<const GroupElement> gamma) {
    if (basis.members.empty()) throw DomainError("build_class_state: empty class");
    if (gamma.size() != inst.t()) throw StructuralError("build_class_state: gamma has the wrong length");
    const double amplitude = 1.0 / std::sqrt(static_cast<double>(basis.size()));
    CVector state(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t m = 0; m < basis.size(); ++m) {
        const auto phase = algebra::char_eval(inst.group, basis.members[m].z, gamma);
        state(static_cast<Eigen::Index>(m)) = amplitude * phase.to_complex();
    }
    return state;
}

CMatrix gram_matrix(const std::vector<CVector>& states) {
    const CMatrix t = columns(states);
    return t.adjoint() * t;
}

CMatrix sqrt_gram(const CMatrix& gram, std::uint64_t class_size, std::uint64_t quotient_order, double tolerance) {
    if (class_size == 0 || quotient_order == 0) throw DomainError("sqrt_gram: sizes must be positive");
    const CMatrix closed =
        std::sqrt(static_cast<double>(class_size) / static_cast<double>(quotient_order)) * gram;

    Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram);
    if (eig.info() != Eigen::Success) throw ConsistencyError("sqrt_gram: eigendecomposition failed");
    const auto& lambda = eig.eigenvalues();
    if (lambda.size() > 0 && lambda.minCoeff() < -1e-9) {
        throw ConsistencyError("sqrt_gram: Gram matrix has a negative eigenvalue " +
                               std::to_string(lambda.minCoeff()));
    }
    const double cutoff = 1e-9 * std::max(1.0, lambda.cwiseAbs().maxCoeff());
    const Eigen::VectorXd root = (lambda.array() > cutoff).select(lambda, 0.0).cwiseSqrt();
    const CMatrix principal = eig.eigenvectors() * root.cast<Complex>().asDiagonal() * eig.eigenvectors().adjoint();
    const double deviation = (principal - closed).cwiseAbs().maxCoeff();
    if (deviation > tolerance) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3g", deviation);
        throw ConsistencyError(std::string("sqrt_gram: closed form and eigendecomposition root differ by ") + buf);
    }
    return closed;
}

CMatrix pseudo_inverse_sqrt(const CMatrix& gram, double tolerance) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram);
    if (eig.info() != Eigen::Success) throw ConsistencyError("pseudo_inverse_sqrt: eigendecomposition failed");
    const auto& lambda = eig.eigenvalues();
    const double cutoff = tolerance * std::max(1.0, lambda.cwiseAbs().maxCoeff());
    Eigen::VectorXd inv(lambda.size());
    for (Eigen::Index i = 0; i < lambda.size(); ++i) inv(i) = lambda(i) > cutoff ? 1.0 / std::sqrt(lambda(i)) : 0.0;
    return eig.eigenvectors() * inv.cast<Complex>().asDiagonal() * eig.eigenvectors().adjoint();
}

GramReport optimal_success(const QocInstance& inst, std::size_t q, const SimulatorConfig& config) {
    const auto counted = counting::count_optimal(inst, q, config.counting);
    if (counted.quotient_order > config.max_quotient_order) {
        throw CapacityError("|C| = " + std::to_string(counted.quotient_order) + " exceeds the Gram matrix guard");
    }
    const ClassBasis basis = class_basis(inst, counted);
    if (basis.size() > config.max_state_dimension) {
        throw CapacityError("class state dimension exceeds the guard");
    }

    GramReport report;
    report.q = q;
    report.dimension = counted.quotient_order;
    report.class_size = basis.size();
    report.counting_probability = counted.probability;
    for (std::uint64_t c = 0; c < counted.quotient_order; ++c) {
        report.states.push_back(build_class_state(inst, basis, counted.z_codec.unpack(c)));
    }
    const CMatrix t = columns(report.states);
    report.gram = t.adjoint() * t;
    report.sqrt_gram = sqrt_gram(report.gram, report.class_size, report.dimension, config.matrix_tolerance);

    const CMatrix measurement = t * pseudo_inverse_sqrt(report.gram, config.matrix_tolerance);
    double total = 0;
    for (Eigen::Index c = 0; c < t.cols(); ++c) {
        const double p = std::norm(measurement.col(c).dot(t.col(c)));
        report.per_coset_success.push_back(p);
        total += p;
    }
    report.total_success = total / static_cast<double>(report.dimension);

    const double ratio = static_cast<double>(report.dimension) / static_cast<double>(report.class_size);
    report.gram_identity_residual = (report.gram * report.gram - ratio * report.gram).cwiseAbs().maxCoeff();
    report.trace_squared = report.sqrt_gram.diagonal().cwiseAbs2().sum();
    const CMatrix completeness = measurement * measurement.adjoint();
    report.completeness_residual =
        (completeness - CMatrix::Identity(completeness.rows(), completeness.cols())).cwiseAbs().maxCoeff();
    report.state_rank = span_rank(report.states);
    return report;
}

CMatrix random_unitary(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
        for (Eigen::Index i = 0; i < g.rows(); ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix qmat = qr.householderQ() * CMatrix::Identity(g.rows(), g.cols());
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Multiply column j by the phase of R_jj.
    for (Eigen::Index j = 0; j < qmat.cols(); ++j) {
        const Complex d = r(j, j);
        if (std::abs(d) > 0) qmat.col(j) *= d / std::abs(d);
    }
    return qmat;
}

ParallelAlgorithm random_parallel_algorithm(const QocInstance& inst, std::size_t q, std::uint64_t seed,
                                            std::uint64_t workspace, const SimulatorConfig& config) {
    const counting::VectorCodec gamma_codec(inst.group, inst.t());
    ParallelAlgorithm alg;
    alg.q = q;
    alg.seed = seed;
    alg.pair_count = counting::pair_count(inst, q);
    alg.workspace = workspace == 0 ? gamma_codec.size() : workspace;
    if (alg.pair_count > config.max_state_dimension / alg.workspace) {
        throw CapacityError("random algorithm dimension exceeds the guard");
    }
    const auto dim = static_cast<Eigen::Index>(alg.dimension());

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    alg.init.resize(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        alg.init(i) = Complex(re, im);
    }
    alg.init.normalize();
    alg.mix = random_unitary(static_cast<std::size_t>(dim), rng());
    alg.decode.resize(alg.dimension());
    for (std::uint64_t label = 0; label < alg.dimension(); ++label) alg.decode[label] = label % gamma_codec.size();
    return alg;
}

ParallelAlgorithm optimal_parallel_algorithm(const QocInstance& inst, std::size_t q, const SimulatorConfig& config) {
    const auto counted = counting::count_optimal(inst, q, config.counting);
    const std::uint64_t cosets = counted.quotient_order;
    if (cosets > config.max_quotient_order) throw CapacityError("|C| exceeds the Gram matrix guard");
    const ClassBasis basis = class_basis(inst, counted);

    std::vector<CVector> states;
    for (std::uint64_t c = 0; c < cosets; ++c) states.push_back(build_class_state(inst, basis, counted.z_codec.unpack(c)));
    const CMatrix t = columns(states);
    const CMatrix gram = t.adjoint() * t;
    // Row C of `labels` is R_C^dagger: the amplitude of guessing coset C.
    const CMatrix labels = (t * pseudo_inverse_sqrt(gram, config.matrix_tolerance)).adjoint();

    ParallelAlgorithm alg;
    alg.q = q;
    alg.pair_count = counted.pair_count;
    alg.workspace = std::max<std::uint64_t>(1, (cosets + alg.pair_count - 1) / alg.pair_count);
    if (alg.dimension() > config.max_state_dimension) throw CapacityError("optimal algorithm dimension exceeds the guard");
    const auto dim = static_cast<Eigen::Index>(alg.dimension());
    const auto members = static_cast<Eigen::Index>(basis.size());

    // Member m spans (1/sqrt S_m) sum of its pairs, in workspace slot 0.
    CMatrix embed = CMatrix::Zero(dim, members);
    for (Eigen::Index m = 0; m < members; ++m) {
        const auto& member = basis.members[static_cast<std::size_t>(m)];
        const double weight = 1.0 / std::sqrt(static_cast<double>(member.multiplicity));
        for (auto ordinal : member.pair_ordinals) embed(static_cast<Eigen::Index>(ordinal * alg.workspace), m) = weight;
    }
    CMatrix target = CMatrix::Zero(dim, members);
    target.topRows(static_cast<Eigen::Index>(cosets)) = labels;

    alg.mix = complete_unitary(target) * complete_unitary(embed).adjoint();
    alg.init = embed * CVector::Constant(members, Complex(1.0 / std::sqrt(static_cast<double>(members)), 0.0));
    alg.decode.resize(alg.dimension());
    for (std::uint64_t label = 0; label < alg.dimension(); ++label) alg.decode[label] = label % cosets;
    return alg;
}

double run_parallel_algorithm(const ParallelAlgorithm& alg, const QocInstance& inst, const SimulatorConfig& config) {
    return average_success(alg, inst, nullptr, config);
}

double oracle_shift_run(const ParallelAlgorithm& alg, const QocInstance& inst, const OracleCoefficients& shift,
                        const SimulatorConfig& config) {
    if (shift.beta.size() != inst.s() || shift.gamma.size() != inst.t()) {
        throw StructuralError("oracle_shift_run: shift coefficients do not match the instance");
    }
    return average_success(alg, inst, &shift, config);
}

std::size_t span_rank(const std::vector<CVector>& states, double relative_tolerance) {
    if (states.empty()) return 0;
    const CMatrix t = columns(states);
    Eigen::JacobiSVD<CMatrix> svd(t);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > relative_tolerance * sv(0)) ++rank;
    }
    return rank;
}

}  // namespace qoc::simulator
