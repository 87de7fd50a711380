#pragma once

#include <chrono>
#include <cmath>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "symdisc/io.hpp"

namespace symdisc {

struct AnalysisRequest {
    std::string command;  // analyze | groupmult | conjugation | chartable | bv | vandam | help
    std::string help_text;
    std::optional<std::string> group;
    std::optional<std::string> rep_file;
    std::optional<int> ancilla;
    std::optional<int> irrep;
    int trials = 50;
    int bits = 0;    // --n for bit-oracle problems
    int weight = 0;  // --k weight threshold
    std::uint64_t seed = 0;
    std::optional<std::string> out_path;
    std::string format = "json";
    bool timings = false;
};

struct RunResult {
    int exit_code = 0;
    json report;
    std::string rendered;
};

inline AnalysisRequest parse_args(const std::vector<std::string>& args) {
    AnalysisRequest req;
    CLI::App app{"optimal single-query discrimination of symmetric group oracles"};
    app.name("symdisc");
    app.require_subcommand(1);

    std::string group_text, rep_text, out_text;
    int ancilla_val = 0, irrep_val = -1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", req.seed, "seed for all randomized numerics")
            ->default_val(0);
        sub->add_option("--out", out_text, "write the report to this path instead of stdout");
        sub->add_option("--format", req.format, "output format")
            ->default_val("json")
            ->check(CLI::IsMember({"json", "text"}));
        sub->add_flag("--timings", req.timings,
                      "include wall-clock timings (breaks byte-for-byte reproducibility)");
    };

    CLI::App* analyze = app.add_subcommand(
        "analyze", "decompose a representation and build its optimal discrimination");
    analyze->add_option("--group", group_text,
                        "group spec; analyzes its regular representation");
    analyze->add_option("--rep", rep_text, "representation JSON file");
    add_common(analyze);

    CLI::App* groupmult = app.add_subcommand(
        "groupmult", "identify the product of a hidden pair through one oracle query");
    groupmult->add_option("--group", group_text, "base group spec")->required();
    groupmult->add_option("--irrep", irrep_val,
                          "restrict the input to one nontrivial isotype row and its dual");
    groupmult->add_option("--trials", req.trials,
                          "random-input trials for the optimality ceiling (0 disables)")
        ->default_val(50);
    add_common(groupmult);

    CLI::App* conjugation = app.add_subcommand(
        "conjugation", "identify a hidden conjugating element up to its obstructions");
    conjugation->add_option("--group", group_text, "group spec")->required();
    conjugation->add_option("--ancilla", ancilla_val, "ancilla dimension to report at");
    add_common(conjugation);

    CLI::App* chartable = app.add_subcommand("chartable", "character table of a group");
    chartable->add_option("--group", group_text, "group spec")->required();
    add_common(chartable);

    CLI::App* bv = app.add_subcommand(
        "bv", "hidden bit string through one query of the dot-product oracle");
    bv->add_option("--n", req.bits, "number of bits")->required();
    add_common(bv);

    CLI::App* vandam = app.add_subcommand(
        "vandam", "weight-limited dot-product oracle: success scales with reachable weights");
    vandam->add_option("--n", req.bits, "number of bits")->required();
    vandam->add_option("--k", req.weight, "weight threshold")->required();
    add_common(vandam);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        req.command = "help";
        req.help_text = app.help();
        return req;
    } catch (const CLI::CallForAllHelp&) {
        req.command = "help";
        req.help_text = app.help("", CLI::AppFormatMode::All);
        return req;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    for (CLI::App* sub : {analyze, groupmult, conjugation, chartable, bv, vandam})
        if (sub->parsed()) req.command = sub->get_name();
    if (!group_text.empty()) req.group = group_text;
    if (!rep_text.empty()) req.rep_file = rep_text;
    if (!out_text.empty()) req.out_path = out_text;
    if (conjugation->parsed() && conjugation->count("--ancilla")) req.ancilla = ancilla_val;
    if (groupmult->parsed() && groupmult->count("--irrep")) req.irrep = irrep_val;
    if (req.command == "analyze" && !req.group && !req.rep_file)
        throw UsageError("analyze needs --group or --rep");
    if (req.command == "analyze" && req.group && req.rep_file)
        throw UsageError("give either --group or --rep, not both");
    return req;
}

namespace detail {

inline void render_text_walk(const json& value, const std::string& prefix,
                             std::ostringstream& out) {
    auto emit = [&](const std::string& key, const std::string& text) {
        out << std::left << std::setw(36) << key << " " << text << "\n";
    };
    if (value.is_object()) {
        for (auto it = value.begin(); it != value.end(); ++it)
            render_text_walk(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(),
                             out);
    } else if (value.is_array()) {
        bool scalars = true;
        for (const json& e : value) scalars = scalars && e.is_primitive();
        if (scalars && value.size() <= 16) {
            std::string text = "[";
            for (size_t i = 0; i < value.size(); ++i)
                text += (i ? ", " : "") + value[i].dump();
            emit(prefix, text + "]");
        } else if (scalars) {
            emit(prefix, "<" + std::to_string(value.size()) + " values>");
        } else if (!value.empty() && value[0].is_array() && value[0].empty() == false &&
                   value[0][0].is_number()) {
            emit(prefix, "<" + std::to_string(value.size()) + " x " +
                             std::to_string(value[0].size()) + " matrix>");
        } else {
            for (size_t i = 0; i < value.size(); ++i)
                render_text_walk(value[i], prefix + "[" + std::to_string(i) + "]", out);
        }
    } else {
        emit(prefix, value.dump());
    }
}

inline std::string render_report(const json& report, const std::string& format) {
    if (format == "text") {
        std::ostringstream out;
        render_text_walk(report, "", out);
        return out.str();
    }
    return report.dump(2) + "\n";
}

inline bool close(double a, double b) { return std::abs(a - b) <= tol::probability; }

}  // namespace detail

inline json run_analyze(const AnalysisRequest& req) {
    RepPtr rep;
    std::string group_desc;
    if (req.rep_file) {
        rep = load_rep_file(*req.rep_file);
        group_desc = rep->group().name();
    } else {
        GroupPtr g = build_group(*req.group);
        rep = regular_representation(g);
        group_desc = *req.group;
    }
    auto dec = decompose(rep, req.seed);
    auto optimal = construct_optimal_input(dec);
    auto povm = srm_povm(dec, optimal.state);
    auto confusion = confusion_matrix(povm, optimal.state);
    json results = discrimination_report(dec, optimal, confusion);
    results["group"] = group_desc;
    results["tag"] = rep->tag();
    return results;
}

inline json run_groupmult(const AnalysisRequest& req) {
    GroupPtr g = build_group(*req.group);
    int n = g->order();
    double closed_form = 2.0 / n;
    json results;
    results["problem"] = "group-multiplication";
    results["group"] = *req.group;
    results["group_order"] = n;
    results["p_closed_form"] = detail::num(closed_form);
    bool match = true;
    if (req.irrep) {
        auto variant = group_mult_irrep_variant(g, *req.irrep, req.seed);
        CharacterTable table = character_table(g, req.seed);
        DualBalance balance = dual_balance(*g, table, variant.ambient_state());
        results["variant"] = "single-isotype";
        results["irrep_row"] = variant.isotype_row;
        results["irrep_dim"] = variant.irrep_dim;
        results["p_quantum"] = detail::num(variant.product_success);
        results["details"] = json{{"oracle_dim", 2 * n},
                                  {"restricted_dim", 2 * variant.irrep_dim * variant.irrep_dim},
                                  {"pair_spread", detail::num(variant.pair_spread)},
                                  {"dual_balance_gap", detail::num(balance.worst_gap)}};
        match = detail::close(variant.product_success, closed_form) &&
                variant.pair_spread <= tol::probability && balance.balanced;
    } else {
        auto inst = group_mult_instance(g, req.seed);
        CharacterTable table = character_table(g, req.seed);
        DualBalance balance = check_dual_balance(inst, table);
        double strat_err = 0.0;
        int nn = n * n;
        for (int hidden = 0; hidden < nn; ++hidden)
            for (int out = 0; out < nn; ++out) {
                int t = (hidden / n == out / n) + (hidden % n == out % n);
                strat_err = std::max(strat_err,
                                     std::abs(inst.confusion.probs(out, hidden) -
                                              group_mult_confusion_term(*g, t)));
            }
        results["p_quantum"] = detail::num(inst.product_success);
        json details;
        details["oracle_dim"] = 2 * n;
        details["working_dim"] = inst.working.rep->dim();
        details["pair_spread"] = detail::num(inst.pair_spread);
        details["stratified_error"] = detail::num(strat_err);
        details["dual_balance_gap"] = detail::num(balance.worst_gap);
        json strata = json::array();
        for (int t = 0; t <= 2; ++t)
            strata.push_back(json{{"t", t},
                                  {"probability", detail::num(group_mult_confusion_term(*g, t))}});
        details["outcome_strata"] = strata;
        match = detail::close(inst.product_success, closed_form) &&
                inst.pair_spread <= tol::probability && strat_err <= tol::probability &&
                balance.balanced;
        if (req.trials > 0) {
            auto ceiling = verify_mult_optimality(inst, req.trials, req.seed);
            details["ceiling"] = json{{"bound", detail::num(ceiling.bound)},
                                      {"constructed", detail::num(ceiling.constructed)},
                                      {"best", detail::num(ceiling.best)},
                                      {"trials", ceiling.trials}};
            match = match && ceiling.best <= ceiling.bound + tol::probability &&
                    detail::close(ceiling.constructed, ceiling.bound);
        }
        results["details"] = details;
    }
    results["match"] = match;
    return results;
}

inline json run_conjugation(const AnalysisRequest& req) {
    GroupSpec spec = parse_group_spec(*req.group);
    GroupPtr g = build_group(spec);
    ConjugationReport report = hidden_conjugation_report(g, req.ancilla, req.seed);
    json results;
    results["problem"] = "hidden-conjugation";
    results["group"] = *req.group;
    results["group_order"] = g->order();
    results["center_size"] = report.center_size;
    results["center_obstruction"] = report.center_obstruction;
    results["multiplicities"] = report.multiplicities;
    results["irrep_dims"] = report.irrep_dims;
    results["p_classical"] = detail::num(report.classical_baseline);
    results["p_no_ancilla"] = detail::num(report.quantum_no_ancilla);
    if (report.min_ancilla)
        results["min_ancilla"] = *report.min_ancilla;
    else
        results["min_ancilla"] = nullptr;
    results["ancilla_used"] = report.ancilla_used;
    results["p_with_ancilla"] = detail::num(report.quantum_with_ancilla);
    results["ancilla_limit"] = detail::num(report.ancilla_limit);
    bool match = true;
    if (report.min_ancilla) {
        long usable = 0;
        for (size_t i = 0; i < report.multiplicities.size(); ++i) {
            long d = report.irrep_dims[i];
            usable += std::min(static_cast<long>(*report.min_ancilla) *
                                   report.multiplicities[i],
                               d) *
                      d;
        }
        match = usable == g->order();
    }
    if (spec.kind == GroupSpec::Kind::dihedral && spec.parameter >= 3 &&
        spec.parameter % 2 == 1) {
        double closed_form = (spec.parameter + 1.0) / (2.0 * spec.parameter);
        results["p_closed_form"] = detail::num(closed_form);
        match = match && detail::close(report.quantum_no_ancilla, closed_form) &&
                report.min_ancilla && *report.min_ancilla == 2;
    }
    results["match"] = match;
    return results;
}

inline json run_chartable(const AnalysisRequest& req) {
    GroupPtr g = build_group(*req.group);
    CharacterTable table = character_table(g, req.seed);
    json results;
    results["group"] = *req.group;
    results["group_order"] = g->order();
    results["class_count"] = g->classes().count();
    json sizes = json::array(), reps = json::array();
    for (int c = 0; c < g->classes().count(); ++c) {
        sizes.push_back(g->classes().size(c));
        reps.push_back(g->label(g->classes().representative(c)));
    }
    results["class_sizes"] = sizes;
    results["class_representatives"] = reps;
    json rows = json::array();
    for (const auto& row : table.rows)
        rows.push_back(json{{"dim", row.dim}, {"values", detail::character_values(row)}});
    results["rows"] = rows;
    results["row_orthogonality_residual"] = detail::num(table.row_orthogonality_residual);
    results["column_orthogonality_residual"] = detail::num(table.column_orthogonality_residual);
    results["match"] = table.row_orthogonality_residual <= tol::optimality &&
                       table.column_orthogonality_residual <= tol::optimality;
    return results;
}

inline json run_bit_oracle(const AnalysisRequest& req) {
    OracleFamily family = req.command == "bv"
                              ? bernstein_vazirani_rep(req.bits, req.seed)
                              : vandam_rep(req.bits, req.weight, req.seed);
    json results;
    results["problem"] = family.kind;
    results["n"] = family.n;
    if (family.k >= 0) results["k"] = family.k;
    results["group_order"] = family.group->order();
    results["oracle_dim"] = family.rep->dim();
    results["d_theta"] = family.cyclic_dim;
    results["p_quantum"] = detail::num(family.p_success);
    results["p_closed_form"] = detail::num(family.p_formula);
    long expected_dim = std::lround(family.p_formula * family.group->order());
    results["match"] = detail::close(family.p_success, family.p_formula) &&
                       family.cyclic_dim == expected_dim;
    return results;
}

inline RunResult run(const AnalysisRequest& req) {
    RunResult rr;
    if (req.command == "help") {
        rr.rendered = req.help_text;
        return rr;
    }
    auto start = std::chrono::steady_clock::now();
    json report;
    report["schema_version"] = "1.0";
    json jreq;
    jreq["command"] = req.command;
    jreq["seed"] = req.seed;
    jreq["format"] = req.format;
    if (req.group) jreq["group"] = *req.group;
    if (req.rep_file) jreq["rep"] = *req.rep_file;
    if (req.ancilla) jreq["ancilla"] = *req.ancilla;
    if (req.irrep) jreq["irrep"] = *req.irrep;
    if (req.command == "groupmult") jreq["trials"] = req.trials;
    if (req.command == "bv" || req.command == "vandam") jreq["n"] = req.bits;
    if (req.command == "vandam") jreq["k"] = req.weight;
    report["request"] = jreq;

    json results;
    if (req.command == "analyze")
        results = run_analyze(req);
    else if (req.command == "groupmult")
        results = run_groupmult(req);
    else if (req.command == "conjugation")
        results = run_conjugation(req);
    else if (req.command == "chartable")
        results = run_chartable(req);
    else if (req.command == "bv" || req.command == "vandam")
        results = run_bit_oracle(req);
    else
        throw UsageError("unknown command '" + req.command + "'");
    report["results"] = results;

    if (req.timings) {
        auto elapsed = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
        report["timings"] = json{{"total_ms", detail::num(elapsed)}};
    }
    rr.report = report;
    rr.rendered = detail::render_report(report, req.format);
    bool match = !results.contains("match") || results["match"].get<bool>();
    rr.exit_code = match ? 0 : 1;
    return rr;
}

inline std::string error_type_name(const std::exception& e) {
#define SYMDISC_TRY_TYPE(T) \
    if (dynamic_cast<const T*>(&e)) return #T;
    SYMDISC_TRY_TYPE(MalformedTable)
    SYMDISC_TRY_TYPE(NoIdentity)
    SYMDISC_TRY_TYPE(NotInvertible)
    SYMDISC_TRY_TYPE(NotAssociative)
    SYMDISC_TRY_TYPE(InvalidParameter)
    SYMDISC_TRY_TYPE(CapExceeded)
    SYMDISC_TRY_TYPE(NotAnAction)
    SYMDISC_TRY_TYPE(DecompositionFailed)
    SYMDISC_TRY_TYPE(InvalidIndex)
    SYMDISC_TRY_TYPE(NotClassConstant)
    SYMDISC_TRY_TYPE(DualNotPresent)
    SYMDISC_TRY_TYPE(NotNormalized)
    SYMDISC_TRY_TYPE(NotOptimalInput)
    SYMDISC_TRY_TYPE(HypothesisViolated)
    SYMDISC_TRY_TYPE(NotInteger)
    SYMDISC_TRY_TYPE(TrivialIsotype)
    SYMDISC_TRY_TYPE(UsageError)
#undef SYMDISC_TRY_TYPE
    return "Error";
}

inline std::string error_report(const std::exception& e) {
    json out;
    out["error"] = json{{"type", error_type_name(e)}, {"message", e.what()}};
    return out.dump(2) + "\n";
}

}  // namespace symdisc
