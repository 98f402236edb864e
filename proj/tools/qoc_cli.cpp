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

#include "qoc_cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qoc/counting.hpp"
#include "qoc/errors.hpp"
#include "qoc/formulas.hpp"
#include "qoc/instance.hpp"
#include "qoc/instance_io.hpp"
#include "qoc/simulator.hpp"

namespace qoc::cli {

namespace {

using Json = nlohmann::ordered_json;
using algebra::GroupElement;
using instance::InstanceDescription;
using instance::ProblemKind;
using instance::QocInstance;

struct Options {
    std::string command;
    std::string instance_file;
    std::size_t q = 0;
    std::size_t q_min = 0;
    std::size_t q_max = 0;
    std::uint64_t seed = 1;
    std::size_t trials = 100;
    std::string format = "json";
    bool witnesses = false;
    std::uint64_t capacity = 100'000'000;
    double tolerance = 1e-9;
    bool all_target_sets = false;
};

/// A verdict that did not pass; carries the report so it can still be printed.
struct VerdictFailure {
    Json report;
    std::vector<std::string> failed;
};

Json rational_json(const Rational& r) { return Json{{"value", rational_str(r)}, {"decimal", rational_decimal(r)}}; }

Json bound_json(const formulas::BoundValue& v) {
    Json out{{"value", v.str()}};
    if (v.is_rational()) {
        out["decimal"] = rational_decimal(v.rational());
    } else {
        out["decimal"] = v.str();
    }
    return out;
}

Json bracket_json(const std::optional<formulas::BoundBracket>& bracket) {
    if (!bracket) return nullptr;
    return Json{{"lower", bound_json(bracket->lower)},
                {"upper", bound_json(bracket->upper)},
                {"exact", bracket->exact},
                {"regime", bracket->regime}};
}

Json element_json(const GroupElement& g) {
    if (g.residues.size() == 1) return g.residues.front();
    return g.residues;
}

Json elements_json(std::span<const GroupElement> v) {
    Json out = Json::array();
    for (const auto& g : v) out.push_back(element_json(g));
    return out;
}

Json instance_json(const QocInstance& inst) {
    Json out;
    out["label"] = inst.label;
    out["type"] = instance::to_string(inst.params.kind);
    out["moduli"] = inst.group.moduli();
    switch (inst.params.kind) {
        case ProblemKind::summation:
            out["M"] = inst.params.M;
            break;
        case ProblemKind::interrogation:
            out["M"] = inst.params.M;
            out["targets"] = inst.params.targets;
            break;
        case ProblemKind::interpolation:
        case ProblemKind::extrapolation:
            out["p"] = inst.params.p;
            out["d"] = inst.params.d;
            break;
        case ProblemKind::evaluation:
            out["p"] = inst.params.p;
            out["d"] = inst.params.d;
            out["targets"] = inst.params.targets;
            break;
        case ProblemKind::custom:
            break;
    }
    out["domain_size"] = inst.domain.size();
    out["kernel_rank"] = inst.s();
    out["quotient_rank"] = inst.t();
    return out;
}

Json counting_json(const counting::CountingResult& counted, bool with_witnesses) {
    Json out;
    out["probability"] = rational_json(counted.probability);
    out["best_class_size"] = counted.best_class_size;
    out["quotient_order"] = counted.quotient_order;
    out["pair_count"] = counted.pair_count;
    out["best_h"] = elements_json(counted.best_h_vector());
    if (with_witnesses) {
        Json list = Json::array();
        for (const auto& w : counted.witnesses) {
            list.push_back(Json{{"z", elements_json(w.z)},
                                {"points", w.pair.points},
                                {"chars", elements_json(w.pair.chars)},
                                {"multiplicity", w.multiplicity}});
        }
        out["witnesses"] = std::move(list);
    }
    return out;
}

bool has_targets(ProblemKind kind) { return kind == ProblemKind::interrogation || kind == ProblemKind::evaluation; }

std::size_t target_count(const InstanceDescription& desc) {
    if (!desc.targets.empty()) return desc.targets.size();
    return static_cast<std::size_t>(std::max<std::int64_t>(desc.k, 0));
}

/// Every k-subset of the instance domain, in lexicographic order.
std::vector<std::vector<instance::DomainPoint>> all_target_sets(const InstanceDescription& desc) {
    if (!has_targets(desc.kind)) throw DomainError("--all-target-sets applies to interrogation and evaluation only");
    const QocInstance base = instance::build_instance(desc);
    const auto& domain = base.domain;
    const std::size_t k = target_count(desc);
    if (k > domain.size()) throw DomainError("more targets than domain points");
    std::vector<std::vector<instance::DomainPoint>> out;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        std::vector<instance::DomainPoint> set;
        for (auto i : idx) set.push_back(domain[i]);
        out.push_back(std::move(set));
        std::size_t pos = k;
        while (pos > 0 && idx[pos - 1] == domain.size() - k + pos - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

simulator::SimulatorConfig simulator_config(const Options& opt) {
    simulator::SimulatorConfig config;
    config.probability_tolerance = opt.tolerance;
    config.counting.capacity = opt.capacity;
    return config;
}

Json cmd_bound(const Options& opt, const QocInstance& inst) {
    if (inst.params.kind == ProblemKind::custom) throw DomainError("no closed form for custom instances");
    const auto bracket = formulas::bracket_for(inst, opt.q);
    if (!bracket) throw DomainError("no closed form for this instance and q");
    Json report;
    report["command"] = "bound";
    report["instance"] = instance_json(inst);
    report["q"] = opt.q;
    report["bracket"] = bracket_json(bracket);
    return report;
}

Json cmd_count(const Options& opt, const InstanceDescription& desc) {
    const auto config = simulator_config(opt).counting;
    Json report;
    report["command"] = "count";
    if (!opt.all_target_sets) {
        const QocInstance inst = instance::build_instance(desc);
        report["instance"] = instance_json(inst);
        report["q"] = opt.q;
        report["bracket"] = bracket_json(formulas::bracket_for(inst, opt.q));
        report["counting"] = counting_json(counting::count_optimal(inst, opt.q, config), opt.witnesses);
        return report;
    }
    Json per_set = Json::array();
    std::optional<Rational> best;
    std::vector<instance::DomainPoint> best_set;
    for (const auto& set : all_target_sets(desc)) {
        InstanceDescription variant = desc;
        variant.targets = set;
        const QocInstance inst = instance::build_instance(variant);
        if (!report.contains("instance")) report["instance"] = instance_json(inst);
        const auto counted = counting::count_optimal(inst, opt.q, config);
        per_set.push_back(Json{{"targets", set}, {"counting", counting_json(counted, opt.witnesses)}});
        if (!best || counted.probability > *best) {
            best = counted.probability;
            best_set = set;
        }
    }
    report["instance"].erase("targets");
    report["q"] = opt.q;
    report["target_sets"] = std::move(per_set);
    report["max"] = Json{{"targets", best_set}, {"probability", rational_json(*best)}};
    return report;
}

Json cmd_check(const Options& opt, const QocInstance& inst) {
    const auto config = simulator_config(opt);
    const double tol = opt.tolerance;
    Json report;
    report["command"] = "check";
    report["instance"] = instance_json(inst);
    report["q"] = opt.q;
    report["seed"] = opt.seed;
    report["trials"] = opt.trials;
    report["tolerance"] = tol;
    report["matrix_tolerance"] = config.matrix_tolerance;

    Json verdicts;
    const bool free_module = instance::verify_free(inst);
    verdicts["free_module"] = free_module;

    const auto counted = counting::count_optimal(inst, opt.q, config.counting);
    const Rational& exact = counted.probability;
    const double target = to_double(exact);
    report["counting"] = counting_json(counted, opt.witnesses);

    const auto bracket = formulas::bracket_for(inst, opt.q);
    report["bracket"] = bracket_json(bracket);
    verdicts["formula_bracket"] = bracket ? Json(bracket->contains(exact)) : Json(nullptr);

    Json sim;
    const auto gram = simulator::optimal_success(inst, opt.q, config);
    const auto [lo, hi] = std::minmax_element(gram.per_coset_success.begin(), gram.per_coset_success.end());
    const double spread = *hi - *lo;
    sim["success"] = gram.total_success;
    sim["deviation"] = std::abs(gram.total_success - target);
    sim["per_coset_spread"] = spread;
    sim["gram_identity_residual"] = gram.gram_identity_residual;
    sim["trace_squared"] = gram.trace_squared;
    sim["completeness_residual"] = gram.completeness_residual;
    sim["state_rank"] = gram.state_rank;
    const bool equality = std::abs(gram.total_success - target) <= tol && spread <= tol &&
                          gram.gram_identity_residual <= config.matrix_tolerance &&
                          std::abs(gram.trace_squared - static_cast<double>(gram.class_size)) <=
                              config.matrix_tolerance * static_cast<double>(gram.class_size) &&
                          gram.state_rank <= gram.class_size;
    verdicts["simulator_equality"] = equality;

    const auto optimal_alg = simulator::optimal_parallel_algorithm(inst, opt.q, config);
    const double attained = simulator::run_parallel_algorithm(optimal_alg, inst, config);
    sim["optimal_algorithm_success"] = attained;
    verdicts["optimal_attained"] = std::abs(attained - target) <= tol;

    double worst = 0;
    for (std::size_t i = 0; i < opt.trials; ++i) {
        const auto alg = simulator::random_parallel_algorithm(inst, opt.q, opt.seed + i, 0, config);
        worst = std::max(worst, simulator::run_parallel_algorithm(alg, inst, config));
    }
    sim["max_random_success"] = worst;
    verdicts["lower_bound_dominance"] = worst <= target + tol;

    double shift_gap = 0;
    const std::size_t shifts = std::min<std::size_t>(opt.trials, 20);
    for (std::size_t i = 0; i < shifts; ++i) {
        const std::uint64_t s = opt.seed + 1'000'003 * (i + 1);
        const auto alg = simulator::random_parallel_algorithm(inst, opt.q, s, 0, config);
        const auto a0 = instance::sample_oracle(inst, s ^ 0x5eedULL);
        const double plain = simulator::run_parallel_algorithm(alg, inst, config);
        const double shifted = simulator::oracle_shift_run(alg, inst, {a0.beta, a0.gamma}, config);
        shift_gap = std::max(shift_gap, std::abs(plain - shifted));
    }
    sim["max_shift_gap"] = shift_gap;
    verdicts["shift_invariance"] = shift_gap <= tol;

    report["simulator"] = std::move(sim);
    report["verdicts"] = verdicts;

    std::vector<std::string> failed;
    for (const auto& [name, value] : verdicts.items()) {
        if (value.is_boolean() && !value.get<bool>()) failed.push_back(name);
    }
    if (!failed.empty()) throw VerdictFailure{std::move(report), std::move(failed)};
    return report;
}

struct SweepLine {
    std::size_t q;
    std::optional<formulas::BoundBracket> bracket;
    Rational counting;
    std::optional<double> simulator;
};

std::string csv_cell(const std::optional<formulas::BoundBracket>& b, bool upper) {
    if (!b) return "";
    return upper ? b->upper.str() : b->lower.str();
}

std::string cmd_sweep(const Options& opt, const InstanceDescription& desc) {
    if (opt.q_min > opt.q_max) throw DomainError("--q-min exceeds --q-max");
    const auto config = simulator_config(opt);
    std::vector<InstanceDescription> variants;
    if (opt.all_target_sets) {
        for (const auto& set : all_target_sets(desc)) {
            variants.push_back(desc);
            variants.back().targets = set;
        }
    } else {
        variants.push_back(desc);
    }
    std::vector<QocInstance> instances;
    for (const auto& v : variants) instances.push_back(instance::build_instance(v));

    std::vector<SweepLine> lines;
    for (std::size_t q = opt.q_min; q <= opt.q_max; ++q) {
        SweepLine line{q, formulas::bracket_for(instances.front(), q), Rational(0), std::nullopt};
        double sim_best = 0;
        bool sim_ok = true;
        for (const auto& inst : instances) {
            const auto counted = counting::count_optimal(inst, q, config.counting);
            line.counting = std::max(line.counting, counted.probability);
            try {
                sim_best = std::max(sim_best, simulator::optimal_success(inst, q, config).total_success);
            } catch (const CapacityError&) {
                sim_ok = false;
            }
        }
        if (sim_ok) line.simulator = sim_best;
        if (!lines.empty() && line.counting < lines.back().counting) {
            throw ConsistencyError("success probability decreased from q=" + std::to_string(q - 1) +
                                   " to q=" + std::to_string(q));
        }
        lines.push_back(std::move(line));
    }

    std::ostringstream out;
    if (opt.format == "csv") {
        out << "q,lower,upper,exact,counting,counting_decimal,simulator\n";
        for (const auto& l : lines) {
            char sim[64] = "";
            if (l.simulator) std::snprintf(sim, sizeof(sim), "%.12g", *l.simulator);
            out << l.q << ',' << csv_cell(l.bracket, false) << ',' << csv_cell(l.bracket, true) << ','
                << (l.bracket ? (l.bracket->exact ? "true" : "false") : "") << ',' << rational_str(l.counting)
                << ',' << rational_decimal(l.counting) << ',' << sim << '\n';
        }
        return out.str();
    }
    Json report;
    report["command"] = "sweep";
    report["instance"] = instance_json(instances.front());
    if (opt.all_target_sets) report["instance"].erase("targets");
    Json rows = Json::array();
    for (const auto& l : lines) {
        rows.push_back(Json{{"q", l.q},
                            {"bracket", bracket_json(l.bracket)},
                            {"counting", rational_json(l.counting)},
                            {"simulator", l.simulator ? Json(*l.simulator) : Json(nullptr)}});
    }
    report["rows"] = std::move(rows);
    return report.dump(2) + "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"Exact and simulated success probabilities for group oracle classification"};
    app.require_subcommand(1);

    auto add_instance = [&](CLI::App* sub) {
        sub->add_option("instance", opt.instance_file, "Instance JSON file")->required()->check(CLI::ExistingFile);
        sub->add_option("--capacity", opt.capacity, "Enumeration capacity guard");
    };
    auto* bound = app.add_subcommand("bound", "Closed-form bracket for a named problem");
    add_instance(bound);
    bound->add_option("--q", opt.q, "Number of queries")->required();

    auto* count = app.add_subcommand("count", "Exact optimal success probability by counting");
    add_instance(count);
    count->add_option("--q", opt.q, "Number of queries")->required();
    count->add_flag("--witnesses", opt.witnesses, "Dump one query pair per member of the best class");
    count->add_flag("--all-target-sets", opt.all_target_sets, "Report every target set and the maximum");

    auto* check = app.add_subcommand("check", "Cross-check counting, formulas and simulation");
    add_instance(check);
    check->add_option("--q", opt.q, "Number of queries")->required();
    check->add_option("--seed", opt.seed, "Seed for random algorithms");
    check->add_option("--trials", opt.trials, "Number of random algorithms");
    check->add_option("--tolerance", opt.tolerance, "Probability tolerance");
    check->add_flag("--witnesses", opt.witnesses, "Dump one query pair per member of the best class");

    auto* sweep = app.add_subcommand("sweep", "Table over a range of query counts");
    add_instance(sweep);
    sweep->add_option("--q-min", opt.q_min, "First query count")->required();
    sweep->add_option("--q-max", opt.q_max, "Last query count")->required();
    sweep->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sweep->add_flag("--all-target-sets", opt.all_target_sets, "Maximum over every target set");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream sink_out;
        std::ostringstream sink_err;
        const int code = app.exit(e, sink_out, sink_err);
        out << sink_out.str();
        err << sink_err.str();
        return code == 0 ? exit_ok : exit_bad_input;
    }
    opt.command = app.get_subcommands().front()->get_name();

    const auto start = std::chrono::steady_clock::now();
    int code = exit_ok;
    try {
        const InstanceDescription desc = instance::load_instance_file(opt.instance_file);
        if (opt.command == "bound") {
            out << cmd_bound(opt, instance::build_instance(desc)).dump(2) << "\n";
        } else if (opt.command == "count") {
            out << cmd_count(opt, desc).dump(2) << "\n";
        } else if (opt.command == "check") {
            out << cmd_check(opt, instance::build_instance(desc)).dump(2) << "\n";
        } else {
            out << cmd_sweep(opt, desc);
        }
    } catch (const VerdictFailure& failure) {
        out << failure.report.dump(2) << "\n";
        for (const auto& name : failure.failed) err << "verdict failed: " << name << "\n";
        code = exit_verdict_failed;
    } catch (const ConsistencyError& e) {
        err << "consistency error: " << e.what() << "\n";
        code = exit_verdict_failed;
    } catch (const CapacityError& e) {
        err << "capacity exceeded: " << e.what() << "\n";
        code = exit_capacity;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        code = exit_bad_input;
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    err << "wall time: " << elapsed.count() << " s\n";
    return code;
}

}  // namespace qoc::cli
