#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "symdisc/config.hpp"
#include "symdisc/decompose.hpp"
#include "symdisc/errors.hpp"
#include "symdisc/linalg.hpp"
#include "symdisc/rep.hpp"

namespace symdisc {

// Largest dimension of a cyclic submodule: sum over isotypes of
// min(multiplicity, irrep_dim) * irrep_dim.  This is also |G| times the best
// achievable identification probability.
inline int max_cyclic_dimension(const IsotypicDecomposition& dec) {
    int d = 0;
    for (const auto& iso : dec.isotypes)
        d += std::min(iso.multiplicity, iso.irrep_dim) * iso.irrep_dim;
    return d;
}

struct OptimalInput {
    Vector state;               // psi, unit norm, in V coordinates
    Vector measurement_vector;  // mu = sqrt(cyclic_dim / |G|) psi
    int cyclic_dim = 0;
    double success_probability = 0.0;
    std::vector<int> kept_copies;  // usable copies per isotype
};

// Best single-query input: per isotype keep l = min(m, d) copies, feed
// orthonormal model vectors into the aligned copies with weight
// sqrt(d / cyclic_dim) each, relative phases zero.
inline OptimalInput construct_optimal_input(const IsotypicDecomposition& dec) {
    int dim = dec.rep->dim();
    int n = dec.rep->group().order();
    OptimalInput out;
    out.cyclic_dim = max_cyclic_dimension(dec);
    out.state = Vector::Zero(dim);
    for (const auto& iso : dec.isotypes) {
        int l = std::min(iso.multiplicity, iso.irrep_dim);
        out.kept_copies.push_back(l);
        double w = std::sqrt(static_cast<double>(iso.irrep_dim) / out.cyclic_dim);
        for (int i = 0; i < l; ++i) out.state += w * iso.sections[i].col(i);
    }
    out.state /= out.state.norm();  // removes ~1e-16 drift only
    out.success_probability = static_cast<double>(out.cyclic_dim) / n;
    out.measurement_vector = std::sqrt(out.success_probability) * out.state;
    return out;
}

struct OptimalityCheck {
    bool optimal = false;
    int cyclic_dim = 0;           // dim span{Theta(g) psi}
    int expected_cyclic_dim = 0;  // max over all inputs
    double operator_residual = 0.0;  // ||T_psi - (|G|/dim V_psi) Pi||
};

// A state is optimal iff its translates average to a multiple of the
// projector onto their span and that span has the maximal cyclic dimension.
inline OptimalityCheck is_optimal_input(const IsotypicDecomposition& dec, const Vector& psi) {
    const UnitaryRep& rep = *dec.rep;
    if (psi.size() != rep.dim())
        throw InvalidParameter("state dimension does not match the representation");
    if (std::abs(psi.norm() - 1.0) > tol::state_norm)
        throw NotNormalized("||psi|| = " + std::to_string(psi.norm()));
    int n = rep.group().order();
    Matrix translates(rep.dim(), n);
    for (int g = 0; g < n; ++g) translates.col(g) = rep.apply(g, psi);
    OrthoBasis span = orthonormal_column_span(translates);
    Matrix t_psi = translates * translates.adjoint();
    Matrix projector = span.basis * span.basis.adjoint();
    OptimalityCheck check;
    check.cyclic_dim = span.rank;
    check.expected_cyclic_dim = max_cyclic_dimension(dec);
    check.operator_residual =
        (t_psi - (static_cast<double>(n) / span.rank) * projector).norm();
    check.optimal = check.cyclic_dim == check.expected_cyclic_dim &&
                    check.operator_residual <= tol::optimality;
    return check;
}

struct SymmetricPOVM {
    RepPtr rep;
    Vector generator;          // mu; outcome g has effect Theta(g) mu mu^dag Theta(g)^dag
    Matrix support_projector;  // projector onto span{Theta(g) psi}; I minus it is "fail"
    double completeness_residual = 0.0;
};

// Square-root measurement generated by an optimal input.
inline SymmetricPOVM srm_povm(const IsotypicDecomposition& dec, const Vector& psi) {
    OptimalityCheck check = is_optimal_input(dec, psi);
    if (!check.optimal)
        throw NotOptimalInput("state is not an optimal input (cyclic dim " +
                              std::to_string(check.cyclic_dim) + " of " +
                              std::to_string(check.expected_cyclic_dim) + ", residual " +
                              std::to_string(check.operator_residual) + ")");
    const UnitaryRep& rep = *dec.rep;
    int n = rep.group().order();
    SymmetricPOVM povm;
    povm.rep = dec.rep;
    povm.generator = std::sqrt(static_cast<double>(check.cyclic_dim) / n) * psi;
    Matrix translates(rep.dim(), n);
    for (int g = 0; g < n; ++g) translates.col(g) = rep.apply(g, psi);
    OrthoBasis span = orthonormal_column_span(translates);
    povm.support_projector = span.basis * span.basis.adjoint();
    Matrix total = Matrix::Zero(rep.dim(), rep.dim());
    for (int g = 0; g < n; ++g) {
        Vector mg = rep.apply(g, povm.generator);
        total += mg * mg.adjoint();
    }
    povm.completeness_residual = (total - povm.support_projector).norm();
    if (povm.completeness_residual > tol::povm)
        throw NotOptimalInput("measurement does not resolve the cyclic subspace (residual " +
                              std::to_string(povm.completeness_residual) + ")");
    return povm;
}

// probs(h, g) = P(outcome h | hidden g); fail(g) collects the explicit
// failure outcome I - Pi.  Columns sum to one.
struct ConfusionMatrix {
    RealMatrix probs;
    RealVector fail;
};

inline ConfusionMatrix confusion_matrix(const SymmetricPOVM& povm, const Vector& psi) {
    const UnitaryRep& rep = *povm.rep;
    int n = rep.group().order();
    if (psi.size() != rep.dim())
        throw InvalidParameter("state dimension does not match the representation");
    if (std::abs(psi.norm() - 1.0) > tol::state_norm)
        throw NotNormalized("||psi|| = " + std::to_string(psi.norm()));
    Matrix inputs(rep.dim(), n), outcomes(rep.dim(), n);
    for (int g = 0; g < n; ++g) {
        inputs.col(g) = rep.apply(g, psi);
        outcomes.col(g) = rep.apply(g, povm.generator);
    }
    ConfusionMatrix out;
    out.probs = (outcomes.adjoint() * inputs).cwiseAbs2();
    out.fail = RealVector(n);
    for (int g = 0; g < n; ++g) {
        double on_support = (povm.support_projector * inputs.col(g)).squaredNorm();
        double sum = out.probs.col(g).sum();
        if (std::abs(sum - on_support) > tol::povm)
            throw NotOptimalInput("outcome probabilities do not add up on the support");
        out.fail(g) = std::clamp(1.0 - on_support, 0.0, 1.0);
        if (std::abs(sum + out.fail(g) - 1.0) > tol::povm)
            throw NotOptimalInput("column " + std::to_string(g) + " sums to " +
                                  std::to_string(sum + out.fail(g)));
    }
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) out.probs(h, g) = std::clamp(out.probs(h, g), 0.0, 1.0);
    return out;
}

inline double success_probability(const ConfusionMatrix& confusion) {
    return confusion.probs.diagonal().mean();
}

// Closed form P(h | g) = |chi(h^{-1} g)|^2 / (cyclic_dim |G|), valid when
// every present irrep has multiplicity >= its dimension so the maximal cyclic
// submodule holds each exactly dim-many times.
inline double confusion_by_character(const IsotypicDecomposition& dec, int g, int h) {
    const FiniteGroup& group = dec.rep->group();
    int n = group.order();
    if (g < 0 || g >= n || h < 0 || h >= n)
        throw InvalidIndex("group element out of range");
    int cyclic_dim = 0;
    for (const auto& iso : dec.isotypes) {
        if (iso.multiplicity < iso.irrep_dim)
            throw HypothesisViolated("isotype of dimension " + std::to_string(iso.irrep_dim) +
                                     " has multiplicity " + std::to_string(iso.multiplicity));
        cyclic_dim += iso.irrep_dim * iso.irrep_dim;
    }
    int q = group.multiply(group.inverse(h), g);
    int c = group.classes().class_of[q];
    cplx chi(0.0, 0.0);
    for (const auto& iso : dec.isotypes)
        chi += static_cast<double>(iso.irrep_dim) * iso.character.values[c];
    return std::norm(chi) / (static_cast<double>(cyclic_dim) * n);
}

inline bool dimension_bound_check(const IsotypicDecomposition& dec, double p) {
    return p <= static_cast<double>(max_cyclic_dimension(dec)) / dec.rep->group().order() +
                    tol::probability;
}

// Success probability with an r-dimensional ancilla attached: multiplicities
// scale by r, so p = (1/|G|) sum_k min(r m_k, d_k) d_k.
inline double ancilla_success(const IsotypicDecomposition& dec, int r) {
    if (r < 1) throw InvalidParameter("ancilla dimension must be >= 1");
    long usable = 0;
    for (const auto& iso : dec.isotypes)
        usable += static_cast<long>(std::min(r * iso.multiplicity, iso.irrep_dim)) *
                  iso.irrep_dim;
    return static_cast<double>(usable) / dec.rep->group().order();
}

// Smallest ancilla dimension reaching certainty.  Exists iff every irrep of
// the group occurs in V, equivalently sum of d_k^2 over present isotypes
// equals |G|; then r = max over isotypes of ceil(d_k / m_k).
inline std::optional<int> min_ancilla_for_certainty(const IsotypicDecomposition& dec) {
    long dim_sq = 0;
    int r = 1;
    for (const auto& iso : dec.isotypes) {
        dim_sq += static_cast<long>(iso.irrep_dim) * iso.irrep_dim;
        r = std::max(r, (iso.irrep_dim + iso.multiplicity - 1) / iso.multiplicity);
    }
    if (dim_sq != dec.rep->group().order()) return std::nullopt;
    return r;
}

}  // namespace symdisc
