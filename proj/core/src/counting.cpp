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

#include "qoc/counting.hpp"

#include <algorithm>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "qoc/errors.hpp"

namespace qoc::counting {

namespace {

__extension__ using UInt128 = unsigned __int128;

constexpr std::uint64_t kKeyLimit = std::uint64_t{1} << 62;

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* what) {
    if (a != 0 && b > kKeyLimit / a) {
        throw CapacityError(std::string(what) + " overflows 2^62");
    }
    return a * b;
}

std::uint64_t checked_pow(std::uint64_t base, std::size_t exponent, const char* what) {
    std::uint64_t out = 1;
    for (std::size_t i = 0; i < exponent; ++i) out = checked_mul(out, base, what);
    return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    UInt128 c = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        c = c * (n - i) / (i + 1);
        if (c > kKeyLimit) throw CapacityError("binomial coefficient overflows 2^62");
    }
    return static_cast<std::uint64_t>(c);
}

/// Lexicographic q-subsets of {0..n-1}.
std::vector<std::uint32_t> unrank_combination(std::uint64_t n, std::size_t q, std::uint64_t rank) {
    std::vector<std::uint32_t> out;
    out.reserve(q);
    std::uint64_t next = 0;
    for (std::size_t slot = 0; slot < q; ++slot) {
        for (std::uint64_t v = next;; ++v) {
            std::uint64_t block = binomial(n - v - 1, q - slot - 1);
            if (rank < block) {
                out.push_back(static_cast<std::uint32_t>(v));
                next = v + 1;
                break;
            }
            rank -= block;
        }
    }
    return out;
}

bool next_combination(std::vector<std::uint32_t>& c, std::uint32_t n) {
    const auto q = c.size();
    for (std::size_t i = q; i-- > 0;) {
        if (c[i] < n - q + i) {
            ++c[i];
            for (std::size_t j = i + 1; j < q; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

/// Element-index arithmetic with lookup tables for small groups.
class IndexArithmetic {
   public:
    explicit IndexArithmetic(const GroupSpec& group)
        : group_(group), n_(static_cast<std::uint64_t>(group.order())) {
        if (n_ <= kTableLimit) {
            add_.resize(n_ * n_);
            mul_.resize(n_ * n_);
            for (std::uint64_t a = 0; a < n_; ++a) {
                auto ga = group.element_at(a);
                for (std::uint64_t b = 0; b < n_; ++b) {
                    auto gb = group.element_at(b);
                    add_[a * n_ + b] = group.index_of(algebra::add(group, ga, gb));
                    mul_[a * n_ + b] = group.index_of(algebra::ring_mul(group, ga, gb));
                }
            }
        }
    }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        if (!add_.empty()) return add_[a * n_ + b];
        return group_.index_of(algebra::add(group_, group_.element_at(a), group_.element_at(b)));
    }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        if (!mul_.empty()) return mul_[a * n_ + b];
        return group_.index_of(algebra::ring_mul(group_, group_.element_at(a), group_.element_at(b)));
    }
    std::uint64_t n() const { return n_; }

   private:
    static constexpr std::uint64_t kTableLimit = 1024;
    GroupSpec group_;
    std::uint64_t n_;
    std::vector<std::uint64_t> add_;
    std::vector<std::uint64_t> mul_;
};

using PartialClasses = std::unordered_map<std::uint64_t, std::unordered_map<std::uint64_t, ZEntry>>;

class Engine {
   public:
    Engine(const QocInstance& inst, std::size_t q) : inst_(inst), q_(q), arith_(inst.group) {
        auto tabulate = [&](const std::vector<instance::OracleTable>& basis) {
            std::vector<std::vector<std::uint64_t>> out;
            for (const auto& table : basis) {
                std::vector<std::uint64_t> row;
                for (const auto& v : table.values()) row.push_back(inst.group.index_of(v));
                out.push_back(std::move(row));
            }
            return out;
        };
        kernel_ = tabulate(inst.kernel_basis);
        quotient_ = tabulate(inst.quotient_basis);
        chars_per_subset_ = checked_pow(arith_.n(), q, "|G|^q");
    }

    std::uint64_t chars_per_subset() const { return chars_per_subset_; }

    std::uint64_t fingerprint(const std::vector<std::vector<std::uint64_t>>& basis,
                              const std::vector<std::uint32_t>& subset,
                              const std::vector<std::uint64_t>& r) const {
        const std::uint64_t n = arith_.n();
        std::uint64_t key = 0;
        for (const auto& row : basis) {
            std::uint64_t acc = 0;
            for (std::size_t i = 0; i < subset.size(); ++i) {
                acc = arith_.add(acc, arith_.mul(row[subset[i]], r[i]));
            }
            key = key * n + acc;
        }
        return key;
    }

    /// Aggregates subsets [first_rank, first_rank + count).
    void run_block(std::uint64_t first_rank, std::uint64_t count, PartialClasses& out) const {
        if (count == 0) return;
        const std::uint64_t n = arith_.n();
        auto subset = unrank_combination(inst_.domain.size(), q_, first_rank);
        std::vector<std::uint64_t> r(q_, 0);
        for (std::uint64_t c = 0; c < count; ++c) {
            const std::uint64_t base = (first_rank + c) * chars_per_subset_;
            std::fill(r.begin(), r.end(), 0);
            for (std::uint64_t ri = 0; ri < chars_per_subset_; ++ri) {
                if (ri != 0) {
                    for (std::size_t i = q_; i-- > 0;) {
                        if (++r[i] < n) break;
                        r[i] = 0;
                    }
                }
                const std::uint64_t h = fingerprint(kernel_, subset, r);
                const std::uint64_t z = fingerprint(quotient_, subset, r);
                auto& entry = out[h][z];
                if (entry.multiplicity++ == 0) entry.first_ordinal = base + ri;
            }
            next_combination(subset, static_cast<std::uint32_t>(inst_.domain.size()));
        }
    }

   private:
    const QocInstance& inst_;
    std::size_t q_;
    IndexArithmetic arith_;
    std::vector<std::vector<std::uint64_t>> kernel_;
    std::vector<std::vector<std::uint64_t>> quotient_;
    std::uint64_t chars_per_subset_ = 1;
};

void merge_into(std::map<std::uint64_t, HClass>& classes, const PartialClasses& partial) {
    for (const auto& [h, zs] : partial) {
        HClass& cls = classes[h];
        for (const auto& [z, entry] : zs) {
            auto [it, inserted] = cls.z.try_emplace(z, entry);
            if (!inserted) {
                it->second.multiplicity += entry.multiplicity;
                it->second.first_ordinal = std::min(it->second.first_ordinal, entry.first_ordinal);
            }
        }
    }
}

}  // namespace

VectorCodec::VectorCodec(const GroupSpec& group, std::size_t length) : group_(group), length_(length) {
    size_ = checked_pow(static_cast<std::uint64_t>(group.order()), length, "|G|^n key space");
}

std::uint64_t VectorCodec::pack(std::span<const GroupElement> v) const {
    if (v.size() != length_) throw StructuralError("VectorCodec::pack: wrong vector length");
    std::uint64_t key = 0;
    for (const auto& g : v) key = key * static_cast<std::uint64_t>(group_.order()) + group_.index_of(g);
    return key;
}

std::vector<GroupElement> VectorCodec::unpack(std::uint64_t key) const {
    if (key >= size_) throw DomainError("VectorCodec::unpack: key out of range");
    std::vector<GroupElement> out(length_);
    const auto n = static_cast<std::uint64_t>(group_.order());
    for (std::size_t i = length_; i-- > 0;) {
        out[i] = group_.element_at(key % n);
        key /= n;
    }
    return out;
}

std::uint64_t pair_count(const QocInstance& inst, std::size_t q) {
    if (q > inst.domain.size()) {
        throw DomainError("q = " + std::to_string(q) + " exceeds the domain size " +
                          std::to_string(inst.domain.size()));
    }
    return checked_mul(binomial(inst.domain.size(), q),
                       checked_pow(static_cast<std::uint64_t>(inst.group.order()), q, "|G|^q"),
                       "pair count");
}

QueryPair pair_at(const QocInstance& inst, std::size_t q, std::uint64_t ordinal) {
    const std::uint64_t total = pair_count(inst, q);
    if (ordinal >= total) throw DomainError("pair ordinal out of range");
    const auto n = static_cast<std::uint64_t>(inst.group.order());
    const std::uint64_t per_subset = checked_pow(n, q, "|G|^q");
    auto subset = unrank_combination(inst.domain.size(), q, ordinal / per_subset);
    std::uint64_t ri = ordinal % per_subset;
    QueryPair pair;
    pair.chars.resize(q);
    for (std::size_t i = q; i-- > 0;) {
        pair.chars[i] = inst.group.element_at(ri % n);
        ri /= n;
    }
    for (auto idx : subset) pair.points.push_back(inst.domain[idx]);
    return pair;
}

void enumerate_pairs(const QocInstance& inst, std::size_t q,
                     const std::function<void(const QueryPair&)>& visit) {
    pair_count(inst, q);
    const auto n = static_cast<std::uint64_t>(inst.group.order());
    std::vector<std::uint32_t> subset(q);
    std::iota(subset.begin(), subset.end(), 0u);
    QueryPair pair;
    pair.points.resize(q);
    pair.chars.assign(q, inst.group.zero());
    std::vector<std::uint64_t> r(q, 0);
    do {
        for (std::size_t i = 0; i < q; ++i) pair.points[i] = inst.domain[subset[i]];
        std::fill(r.begin(), r.end(), 0);
        for (auto& c : pair.chars) c = inst.group.zero();
        while (true) {
            visit(pair);
            std::size_t i = q;
            while (i-- > 0) {
                if (++r[i] < n) {
                    pair.chars[i] = inst.group.element_at(r[i]);
                    break;
                }
                r[i] = 0;
                pair.chars[i] = inst.group.zero();
            }
            if (i == static_cast<std::size_t>(-1)) break;
        }
    } while (next_combination(subset, static_cast<std::uint32_t>(inst.domain.size())));
}

HZ hz_of_pair(const QocInstance& inst, const QueryPair& pair) {
    if (pair.points.size() != pair.chars.size()) {
        throw StructuralError("query pair has mismatched point and character counts");
    }
    auto apply = [&](const instance::ElementMatrix& m) {
        std::vector<GroupElement> out;
        for (const auto& row : m) {
            GroupElement acc = inst.group.zero();
            for (std::size_t i = 0; i < row.size(); ++i) {
                acc = algebra::add(inst.group, acc, algebra::ring_mul(inst.group, row[i], pair.chars[i]));
            }
            out.push_back(std::move(acc));
        }
        return out;
    };
    return HZ{apply(instance::matrix_B(inst, pair.points)), apply(instance::matrix_C(inst, pair.points))};
}

QueryPair canonicalize(const QocInstance& inst, QueryPair pair) {
    if (pair.points.size() != pair.chars.size()) {
        throw StructuralError("query pair has mismatched point and character counts");
    }
    std::vector<std::size_t> order(pair.points.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pair.points[a] < pair.points[b]; });
    QueryPair out;
    for (auto i : order) {
        if (!out.points.empty() && out.points.back() == pair.points[i]) {
            throw DomainError("query pair repeats a domain point");
        }
        if (!std::binary_search(inst.domain.begin(), inst.domain.end(), pair.points[i])) {
            throw DomainError("query point outside the domain");
        }
        out.points.push_back(pair.points[i]);
        out.chars.push_back(pair.chars[i]);
    }
    return out;
}

CountingResult count_optimal(const QocInstance& inst, std::size_t q, const CountingConfig& config) {
    instance::validate(inst);
    const std::uint64_t total = pair_count(inst, q);
    if (total > config.capacity) {
        throw CapacityError("enumeration of " + std::to_string(total) +
                            " query pairs exceeds the capacity guard " + std::to_string(config.capacity));
    }
    CountingResult result{.q = q,
                          .h_codec = VectorCodec(inst.group, inst.s()),
                          .z_codec = VectorCodec(inst.group, inst.t()),
                          .classes = {},
                          .best_h = 0,
                          .best_class_size = 0,
                          .quotient_order = 1,
                          .probability = Rational(0),
                          .witnesses = {},
                          .pair_count = 0};
    result.pair_count = total;
    result.quotient_order = result.z_codec.size();

    Engine engine(inst, q);
    const std::uint64_t subsets = binomial(inst.domain.size(), q);
    const unsigned workers =
        static_cast<unsigned>(std::clamp<std::uint64_t>(config.threads == 0 ? 1 : config.threads, 1, subsets));
    std::vector<PartialClasses> partials(workers);
    if (workers == 1) {
        engine.run_block(0, subsets, partials[0]);
    } else {
        std::vector<std::jthread> pool;
        const std::uint64_t chunk = (subsets + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t begin = std::min<std::uint64_t>(subsets, w * chunk);
            const std::uint64_t end = std::min<std::uint64_t>(subsets, begin + chunk);
            pool.emplace_back([&, w, begin, end] { engine.run_block(begin, end - begin, partials[w]); });
        }
    }
    for (const auto& partial : partials) merge_into(result.classes, partial);
    for (auto& [h, cls] : result.classes) {
        cls.first_ordinal = cls.z.begin()->second.first_ordinal;
        for (const auto& [z, entry] : cls.z) cls.first_ordinal = std::min(cls.first_ordinal, entry.first_ordinal);
    }

    bool have_best = false;
    std::uint64_t best_first = 0;
    for (const auto& [h, cls] : result.classes) {
        const std::uint64_t size = cls.z.size();
        if (!have_best || size > result.best_class_size ||
            (size == result.best_class_size && cls.first_ordinal < best_first)) {
            have_best = true;
            result.best_h = h;
            result.best_class_size = size;
            best_first = cls.first_ordinal;
        }
    }
    result.probability = Rational(Integer(result.best_class_size), Integer(result.quotient_order));

    for (const auto& [z, entry] : result.classes.at(result.best_h).z) {
        result.witnesses.push_back(
            Witness{result.z_codec.unpack(z), pair_at(inst, q, entry.first_ordinal), entry.multiplicity});
    }
    return result;
}

std::vector<SweepRow> sweep(const QocInstance& inst, std::size_t q_min, std::size_t q_max,
                            const CountingConfig& config) {
    if (q_min > q_max) throw DomainError("sweep: q_min exceeds q_max");
    std::vector<SweepRow> rows;
    for (std::size_t q = q_min; q <= q_max; ++q) {
        auto result = count_optimal(inst, q, config);
        if (!rows.empty() && result.probability < rows.back().probability) {
            throw ConsistencyError("success probability decreased from q=" + std::to_string(q - 1) +
                                   " to q=" + std::to_string(q));
        }
        rows.push_back(SweepRow{q, result.probability});
    }
    return rows;
}

}  // namespace qoc::counting
