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

#ifndef QOC_INSTANCE_IO_HPP
#define QOC_INSTANCE_IO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qoc/instance.hpp"

namespace qoc::instance {

/// Parsed form of an instance file, before the basis tables are built.
///
/// File schema (JSON object):
///   type: "summation" | "interrogation" | "interpolation" | "evaluation" |
///         "extrapolation" | "custom"
///   M, p, d, k: integers (as required by the type)
///   moduli: group moduli for summation / interrogation / custom (default [2])
///   targets: target points for interrogation / evaluation; defaults to 0..k-1
///   domain, kernel_basis, quotient_basis: custom only. Each basis entry is an
///     array with one value per domain point; a value is an integer (broadcast to
///     every coordinate) or an array of residues.
///   label: optional display name
struct InstanceDescription {
    ProblemKind kind = ProblemKind::custom;
    std::optional<std::string> label;
    std::int64_t M = 0;
    std::int64_t p = 0;
    std::int64_t d = 0;
    std::int64_t k = 0;
    std::vector<std::int64_t> moduli;
    std::vector<DomainPoint> targets;
    std::vector<DomainPoint> domain;
    std::vector<std::vector<std::vector<std::int64_t>>> kernel_values;
    std::vector<std::vector<std::vector<std::int64_t>>> quotient_values;
};

/// Throws DomainError on malformed documents.
InstanceDescription parse_instance(std::string_view json_text);
InstanceDescription load_instance_file(const std::filesystem::path& path);

/// Builds the basis tables. Throws DomainError / StructuralError on bad parameters.
QocInstance build_instance(const InstanceDescription& desc);

}  // namespace qoc::instance

#endif
