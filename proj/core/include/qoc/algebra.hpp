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

#ifndef QOC_ALGEBRA_HPP
#define QOC_ALGEBRA_HPP

#include <compare>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qoc::algebra {

/// An element of Z_{N_1} x ... x Z_{N_k}, stored as its reduced residues.
///
/// Characters are represented by their defining element r, so the same type
/// doubles as a character index: r maps g to prod_i omega_{N_i}^{r_i g_i}.
struct GroupElement {
    std::vector<std::int64_t> residues;

    auto operator<=>(const GroupElement&) const = default;
    bool operator==(const GroupElement&) const = default;
};

/// Finite abelian group Z_{N_1} x ... x Z_{N_k} with its componentwise ring structure.
class GroupSpec {
   public:
    explicit GroupSpec(std::vector<std::int64_t> moduli);
    static GroupSpec cyclic(std::int64_t n) { return GroupSpec({n}); }

    const std::vector<std::int64_t>& moduli() const { return moduli_; }
    std::size_t rank() const { return moduli_.size(); }
    std::int64_t order() const { return order_; }
    /// lcm of the moduli; every character value is a power of omega_{phase_order}.
    std::int64_t phase_order() const { return phase_order_; }

    GroupElement zero() const;
    /// The ring unit (all-ones vector).
    GroupElement unit() const;
    /// Reduces each coordinate into [0, N_i). Throws StructuralError on a length mismatch.
    GroupElement element(std::span<const std::int64_t> values) const;
    GroupElement element(std::initializer_list<std::int64_t> values) const;
    /// The same integer in every coordinate (e.g. -1 becomes (N_1-1, ..., N_k-1)).
    GroupElement broadcast(std::int64_t value) const;

    /// Mixed-radix index in [0, order()), first coordinate most significant.
    std::uint64_t index_of(const GroupElement& g) const;
    GroupElement element_at(std::uint64_t index) const;

    bool contains(const GroupElement& g) const;
    std::string to_string(const GroupElement& g) const;

    bool operator==(const GroupSpec& other) const { return moduli_ == other.moduli_; }

   private:
    std::vector<std::int64_t> moduli_;
    std::int64_t order_ = 1;
    std::int64_t phase_order_ = 1;
};

/// e^{2 pi i exponent / order}, kept as an integer exponent.
class ExactPhase {
   public:
    ExactPhase(std::int64_t exponent, std::int64_t order);

    std::int64_t exponent() const { return exponent_; }
    std::int64_t order() const { return order_; }

    ExactPhase operator*(const ExactPhase& other) const;
    ExactPhase conj() const;
    bool is_one() const { return exponent_ == 0; }
    std::complex<double> to_complex() const;

    bool operator==(const ExactPhase&) const = default;

   private:
    std::int64_t exponent_;
    std::int64_t order_;
};

GroupElement add(const GroupSpec& group, const GroupElement& a, const GroupElement& b);
GroupElement negate(const GroupSpec& group, const GroupElement& a);
GroupElement subtract(const GroupSpec& group, const GroupElement& a, const GroupElement& b);
GroupElement ring_mul(const GroupSpec& group, const GroupElement& a, const GroupElement& b);

/// Value of the character indexed by r at g.
ExactPhase char_eval(const GroupSpec& group, const GroupElement& r, const GroupElement& g);

/// Character of G^n indexed by rs, evaluated at gs: the product of coordinatewise values.
ExactPhase char_eval(const GroupSpec& group, std::span<const GroupElement> rs,
                     std::span<const GroupElement> gs);

bool is_prime(std::int64_t n);
std::int64_t mod_reduce(std::int64_t a, std::int64_t n);
/// a^{-1} mod p. Throws DomainError when a = 0 mod p or p is not prime.
std::int64_t mod_inverse(std::int64_t a, std::int64_t p);
std::int64_t mod_pow(std::int64_t base, std::uint64_t exponent, std::int64_t n);

}  // namespace qoc::algebra

#endif
