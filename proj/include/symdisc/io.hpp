#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "symdisc/config.hpp"
#include "symdisc/decompose.hpp"
#include "symdisc/discrimination.hpp"
#include "symdisc/errors.hpp"
#include "symdisc/group.hpp"
#include "symdisc/linalg.hpp"
#include "symdisc/problems.hpp"
#include "symdisc/rep.hpp"

namespace symdisc {

using nlohmann::json;

// ---------------------------------------------------------------------------
// file formats
// ---------------------------------------------------------------------------

// {"order": n, "table": [[...]], "labels": [...] (optional)}
inline GroupPtr load_group_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open group file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw MalformedTable("group file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!j.is_object() || !j.contains("order") || !j.contains("table"))
        throw MalformedTable("group file needs 'order' and 'table'");
    int order = j.at("order").get<int>();
    auto table = j.at("table").get<std::vector<std::vector<int>>>();
    if (static_cast<int>(table.size()) != order)
        throw MalformedTable("table has " + std::to_string(table.size()) +
                             " rows, 'order' says " + std::to_string(order));
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    return FiniteGroup::from_cayley(std::move(table), std::move(labels), "file:" + path);
}

inline GroupPtr build_group(const GroupSpec& spec) {
    switch (spec.kind) {
        case GroupSpec::Kind::cyclic:
            return cyclic_group(spec.parameter);
        case GroupSpec::Kind::dihedral:
            return dihedral_group(spec.parameter);
        case GroupSpec::Kind::symmetric:
            return symmetric_group(spec.parameter);
        case GroupSpec::Kind::product:
            return direct_product(build_group(spec.factors[0]), build_group(spec.factors[1]));
        case GroupSpec::Kind::file:
            return load_group_file(spec.path);
    }
    throw UsageError("unknown group spec kind");
}

inline GroupPtr build_group(const std::string& spec_text) {
    return build_group(parse_group_spec(spec_text));
}

// {"group": "<spec>", "dim": d, "matrices": [[[re, im], ...], ...]}
inline RepPtr load_rep_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open representation file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw InvalidParameter("representation file '" + path + "' is not valid JSON: " +
                               e.what());
    }
    if (!j.is_object() || !j.contains("group") || !j.contains("dim") || !j.contains("matrices"))
        throw InvalidParameter("representation file needs 'group', 'dim' and 'matrices'");
    GroupPtr group = build_group(j.at("group").get<std::string>());
    int dim = j.at("dim").get<int>();
    const json& mats = j.at("matrices");
    if (static_cast<int>(mats.size()) != group->order())
        throw InvalidParameter("need one matrix per group element");
    std::vector<Matrix> matrices;
    matrices.reserve(mats.size());
    for (const json& jm : mats) {
        Matrix m(dim, dim);
        if (static_cast<int>(jm.size()) != dim)
            throw InvalidParameter("matrix row count does not match 'dim'");
        for (int r = 0; r < dim; ++r) {
            if (static_cast<int>(jm[r].size()) != dim)
                throw InvalidParameter("matrix column count does not match 'dim'");
            for (int c = 0; c < dim; ++c) {
                const json& e = jm[r][c];
                if (!e.is_array() || e.size() != 2)
                    throw InvalidParameter("matrix entries must be [re, im] pairs");
                m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
            }
        }
        matrices.push_back(std::move(m));
    }
    return UnitaryRep::from_matrices(group, std::move(matrices), "file");
}

// ---------------------------------------------------------------------------
// report construction: every number is rounded to 12 significant digits
// before it enters the tree, and nlohmann::json keeps keys sorted, so a
// serialized report is byte-identical for identical (request, seed).
// ---------------------------------------------------------------------------

namespace detail {

inline json num(double x) { return round_sig(x, 12); }

inline json cnum(const cplx& z) { return json::array({num(z.real()), num(z.imag())}); }

inline json complex_vector(const Vector& v) {
    json out = json::array();
    for (int i = 0; i < v.size(); ++i) out.push_back(cnum(v(i)));
    return out;
}

inline json real_matrix(const RealMatrix& m) {
    json out = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(num(m(r, c)));
        out.push_back(std::move(row));
    }
    return out;
}

inline json real_vector(const RealVector& v) {
    json out = json::array();
    for (int i = 0; i < v.size(); ++i) out.push_back(num(v(i)));
    return out;
}

inline json character_values(const Character& chi) {
    json out = json::array();
    for (const cplx& v : chi.values) out.push_back(cnum(v));
    return out;
}

inline json isotype_summary(const IsotypicDecomposition& dec) {
    json out = json::array();
    for (const auto& iso : dec.isotypes)
        out.push_back(json{{"dim", iso.irrep_dim},
                           {"multiplicity", iso.multiplicity},
                           {"usable", std::min(iso.multiplicity, iso.irrep_dim)},
                           {"character", character_values(iso.character)}});
    return out;
}

}  // namespace detail

// discrimination analysis of one representation
inline json discrimination_report(const IsotypicDecomposition& dec, const OptimalInput& optimal,
                                  const ConfusionMatrix& confusion,
                                  std::optional<double> p_classical = {}) {
    json results;
    results["group_order"] = dec.rep->group().order();
    results["dim_V"] = dec.rep->dim();
    results["d_theta"] = optimal.cyclic_dim;
    results["p_success"] = detail::num(optimal.success_probability);
    if (p_classical) results["p_classical"] = detail::num(*p_classical);
    results["isotypes"] = detail::isotype_summary(dec);
    results["residual_check"] = detail::num(dec.residual_check);
    results["confusion"] = detail::real_matrix(confusion.probs);
    results["fail"] = detail::real_vector(confusion.fail);
    results["optimal_state"] = detail::complex_vector(optimal.state);
    double simulated = success_probability(confusion);
    results["p_simulated"] = detail::num(simulated);
    results["match"] = std::abs(simulated - optimal.success_probability) <= tol::probability &&
                       dimension_bound_check(dec, simulated);
    return results;
}

}  // namespace symdisc
