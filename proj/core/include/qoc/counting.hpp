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

#ifndef QOC_COUNTING_HPP
#define QOC_COUNTING_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "qoc/instance.hpp"
#include "qoc/rational.hpp"

namespace qoc::counting {

using algebra::GroupElement;
using algebra::GroupSpec;
using instance::QocInstance;
using instance::QueryPair;

struct CountingConfig {
    /// Upper limit on binom(|X|, q) * |G|^q.
    std::uint64_t capacity = 100'000'000;
    /// Worker threads for the enumeration; results do not depend on this.
    unsigned threads = 1;
};

/// Packs vectors in G^n into integer keys, mixed radix over element indices with the
/// first coordinate most significant. Key order is lexicographic vector order.
class VectorCodec {
   public:
    VectorCodec(const GroupSpec& group, std::size_t length);

    std::uint64_t pack(std::span<const GroupElement> v) const;
    std::vector<GroupElement> unpack(std::uint64_t key) const;
    /// |G|^length
    std::uint64_t size() const { return size_; }
    std::size_t length() const { return length_; }

   private:
    GroupSpec group_;
    std::size_t length_;
    std::uint64_t size_ = 1;
};

/// The (h, z) fingerprint of a query pair: its action on the kernel basis and on the
/// quotient basis.
struct HZ {
    std::vector<GroupElement> h;
    std::vector<GroupElement> z;
};

struct ZEntry {
    /// Number of canonical pairs with this (h, z).
    std::uint64_t multiplicity = 0;
    /// Enumeration ordinal of the first such pair.
    std::uint64_t first_ordinal = 0;
};

struct HClass {
    std::map<std::uint64_t, ZEntry> z;
    std::uint64_t first_ordinal = 0;
};

struct Witness {
    std::vector<GroupElement> z;
    QueryPair pair;
    std::uint64_t multiplicity = 0;
};

struct CountingResult {
    std::size_t q = 0;
    VectorCodec h_codec;
    VectorCodec z_codec;
    /// Keyed by packed h; each class maps packed z to its multiplicity.
    std::map<std::uint64_t, HClass> classes;
    std::uint64_t best_h = 0;
    std::uint64_t best_class_size = 0;
    /// |C| = |G|^t
    std::uint64_t quotient_order = 1;
    Rational probability;
    /// One pair per distinct z in the best class, in increasing z order.
    std::vector<Witness> witnesses;
    std::uint64_t pair_count = 0;

    std::vector<GroupElement> best_h_vector() const { return h_codec.unpack(best_h); }
};

/// binom(|X|, q) * |G|^q. Throws DomainError for q > |X| and CapacityError on overflow.
std::uint64_t pair_count(const QocInstance& inst, std::size_t q);

/// Visits every canonical pair once: point subsets in lexicographic order, and for
/// each subset the character vectors in lexicographic index order.
void enumerate_pairs(const QocInstance& inst, std::size_t q,
                     const std::function<void(const QueryPair&)>& visit);

/// The pair with the given enumeration ordinal.
QueryPair pair_at(const QocInstance& inst, std::size_t q, std::uint64_t ordinal);

/// h = B(x) r and z = C(x) r in the componentwise ring of G.
HZ hz_of_pair(const QocInstance& inst, const QueryPair& pair);

/// Returns the pair in canonical form (points sorted, chars permuted alongside).
/// Repeated points are rejected with DomainError.
QueryPair canonicalize(const QocInstance& inst, QueryPair pair);

/// Optimal q-query success probability: max over h of the number of distinct z
/// reachable with that h, divided by |C|.
CountingResult count_optimal(const QocInstance& inst, std::size_t q, const CountingConfig& config = {});

struct SweepRow {
    std::size_t q = 0;
    Rational probability;
};

/// count_optimal for q_min..q_max. Throws ConsistencyError if the values are not
/// nondecreasing in q.
std::vector<SweepRow> sweep(const QocInstance& inst, std::size_t q_min, std::size_t q_max,
                            const CountingConfig& config = {});

}  // namespace qoc::counting

#endif
