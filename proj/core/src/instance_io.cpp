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

#include "qoc/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qoc/errors.hpp"

namespace qoc::instance {

namespace {

using nlohmann::json;

std::int64_t get_int(const json& doc, const char* key, std::optional<std::int64_t> fallback = {}) {
    if (!doc.contains(key)) {
        if (fallback) return *fallback;
        throw DomainError(std::string("instance file is missing integer field '") + key + "'");
    }
    const auto& v = doc.at(key);
    if (!v.is_number_integer()) {
        throw DomainError(std::string("instance field '") + key + "' must be an integer");
    }
    return v.get<std::int64_t>();
}

std::vector<std::int64_t> get_int_array(const json& doc, const char* key) {
    const auto& v = doc.at(key);
    if (!v.is_array()) throw DomainError(std::string("instance field '") + key + "' must be an array");
    std::vector<std::int64_t> out;
    for (const auto& e : v) {
        if (!e.is_number_integer()) {
            throw DomainError(std::string("instance field '") + key + "' must hold integers");
        }
        out.push_back(e.get<std::int64_t>());
    }
    return out;
}

std::vector<std::vector<std::vector<std::int64_t>>> get_basis(const json& doc, const char* key,
                                                              std::size_t rank) {
    std::vector<std::vector<std::vector<std::int64_t>>> out;
    if (!doc.contains(key)) return out;
    const auto& basis = doc.at(key);
    if (!basis.is_array()) throw DomainError(std::string("'") + key + "' must be an array of tables");
    for (const auto& table : basis) {
        if (!table.is_array()) throw DomainError(std::string("'") + key + "' entries must be arrays");
        std::vector<std::vector<std::int64_t>> values;
        for (const auto& value : table) {
            if (value.is_number_integer()) {
                values.emplace_back(rank, value.get<std::int64_t>());
            } else if (value.is_array()) {
                std::vector<std::int64_t> residues;
                for (const auto& r : value) {
                    if (!r.is_number_integer()) throw DomainError("table residues must be integers");
                    residues.push_back(r.get<std::int64_t>());
                }
                values.push_back(std::move(residues));
            } else {
                throw DomainError("table values must be integers or residue arrays");
            }
        }
        out.push_back(std::move(values));
    }
    return out;
}

std::vector<DomainPoint> default_targets(const InstanceDescription& desc) {
    if (!desc.targets.empty()) return desc.targets;
    if (desc.k < 1) throw DomainError("instance needs 'targets' or a positive 'k'");
    std::vector<DomainPoint> out;
    for (std::int64_t i = 0; i < desc.k; ++i) out.push_back(i);
    return out;
}

}  // namespace

InstanceDescription parse_instance(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw DomainError(std::string("instance file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw DomainError("instance file must hold a JSON object");
    if (!doc.contains("type") || !doc.at("type").is_string()) {
        throw DomainError("instance file needs a string field 'type'");
    }
    auto kind = parse_problem_kind(doc.at("type").get<std::string>());
    if (!kind) throw DomainError("unknown instance type '" + doc.at("type").get<std::string>() + "'");

    InstanceDescription desc;
    desc.kind = *kind;
    if (doc.contains("label")) desc.label = doc.at("label").get<std::string>();
    desc.moduli = doc.contains("moduli") ? get_int_array(doc, "moduli") : std::vector<std::int64_t>{2};
    if (doc.contains("targets")) desc.targets = get_int_array(doc, "targets");
    desc.k = get_int(doc, "k", static_cast<std::int64_t>(desc.targets.size()));

    switch (desc.kind) {
        case ProblemKind::summation:
            desc.M = get_int(doc, "M");
            break;
        case ProblemKind::interrogation:
            desc.M = get_int(doc, "M");
            desc.targets = default_targets(desc);
            desc.k = static_cast<std::int64_t>(desc.targets.size());
            break;
        case ProblemKind::interpolation:
        case ProblemKind::extrapolation:
            desc.p = get_int(doc, "p");
            desc.d = get_int(doc, "d");
            break;
        case ProblemKind::evaluation:
            desc.p = get_int(doc, "p");
            desc.d = get_int(doc, "d");
            desc.targets = default_targets(desc);
            desc.k = static_cast<std::int64_t>(desc.targets.size());
            break;
        case ProblemKind::custom:
            desc.domain = get_int_array(doc, "domain");
            desc.kernel_values = get_basis(doc, "kernel_basis", desc.moduli.size());
            desc.quotient_values = get_basis(doc, "quotient_basis", desc.moduli.size());
            break;
    }
    return desc;
}

InstanceDescription load_instance_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open instance file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

QocInstance build_instance(const InstanceDescription& desc) {
    QocInstance inst;
    switch (desc.kind) {
        case ProblemKind::summation:
            inst = make_summation(desc.M, GroupSpec(desc.moduli));
            break;
        case ProblemKind::interrogation:
            inst = make_interrogation(desc.M, GroupSpec(desc.moduli), default_targets(desc));
            break;
        case ProblemKind::interpolation:
            inst = make_interpolation(desc.p, desc.d);
            break;
        case ProblemKind::evaluation:
            inst = make_evaluation(desc.p, desc.d, default_targets(desc));
            break;
        case ProblemKind::extrapolation:
            inst = make_extrapolation(desc.p, desc.d);
            break;
        case ProblemKind::custom: {
            GroupSpec group(desc.moduli);
            auto convert = [&](const auto& tables) {
                std::vector<std::vector<GroupElement>> out;
                for (const auto& table : tables) {
                    std::vector<GroupElement> values;
                    for (const auto& residues : table) values.push_back(group.element(residues));
                    out.push_back(std::move(values));
                }
                return out;
            };
            inst = make_custom("custom", desc.domain, group, convert(desc.kernel_values),
                               convert(desc.quotient_values));
            break;
        }
    }
    if (desc.label) inst.label = *desc.label;
    return inst;
}

}  // namespace qoc::instance
