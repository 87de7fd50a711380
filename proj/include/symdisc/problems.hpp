#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symdisc/config.hpp"
#include "symdisc/decompose.hpp"
#include "symdisc/discrimination.hpp"
#include "symdisc/errors.hpp"
#include "symdisc/group.hpp"
#include "symdisc/linalg.hpp"
#include "symdisc/rep.hpp"

namespace symdisc {

// ---------------------------------------------------------------------------
// hidden product of a pair: O_{g0,g1} |j, r> = |j, g_j r> on C^2 tensor C^G,
// a representation of G x G.  Pair (g0, g1) has index g0 |G| + g1, basis
// point (j, r) has index j |G| + r.
// ---------------------------------------------------------------------------

inline RepPtr group_mult_rep(const GroupPtr& base) {
    int n = base->order();
    if (n < 1) throw InvalidParameter("base group is empty");
    if (n > limits().mult_base_cap)
        throw CapExceeded("base order " + std::to_string(n) +
                          " exceeds multiplication base cap " +
                          std::to_string(limits().mult_base_cap));
    GroupPtr pairs = direct_product(base, base);
    auto action = [n, &g = *base](int gamma, int p) {
        int j = p / n, r = p % n;
        int gj = j == 0 ? gamma / n : gamma % n;
        return j * n + g.multiply(gj, r);
    };
    return permutation_representation(pairs, action, 2 * n, "mult-oracle");
}

// Probability that the product of the measured pair equals the hidden
// product, averaged over hidden pairs, plus the spread across hidden pairs
// (zero up to numerics: the problem is covariant).
inline std::pair<double, double> product_success_from_confusion(const FiniteGroup& base,
                                                               const ConfusionMatrix& conf) {
    int n = base.order();
    int nn = n * n;
    std::vector<int> product(nn);
    for (int g0 = 0; g0 < n; ++g0)
        for (int g1 = 0; g1 < n; ++g1) product[g0 * n + g1] = base.multiply(g0, g1);
    double lo = 1.0, hi = 0.0, total = 0.0;
    for (int gamma = 0; gamma < nn; ++gamma) {
        double acc = 0.0;
        for (int out = 0; out < nn; ++out)
            if (product[out] == product[gamma]) acc += conf.probs(out, gamma);
        lo = std::min(lo, acc);
        hi = std::max(hi, acc);
        total += acc;
    }
    return {total / nn, hi - lo};
}

struct GroupMultInstance {
    GroupPtr base;
    GroupPtr pair_group;
    RepPtr oracle;                   // dim 2|G|
    ComplementRestriction working;   // both trivial copies removed, dim 2|G| - 2
    OptimalInput optimal;            // on the working representation
    ConfusionMatrix confusion;       // over pair outcomes
    double product_success = 0.0;
    double pair_spread = 0.0;

    Vector ambient_state() const { return working.embedding * optimal.state; }
};

inline GroupMultInstance group_mult_instance(const GroupPtr& base, std::uint64_t seed = 0) {
    int n = base->order();
    if (n < 2) throw InvalidParameter("hidden products need a base group of order >= 2");
    GroupMultInstance inst;
    inst.base = base;
    inst.oracle = group_mult_rep(base);
    inst.pair_group = inst.oracle->group_ptr();
    auto full = decompose(inst.oracle, Rng::mix(seed, 0x6d01));
    int trivial = find_trivial_isotype(full);
    if (trivial < 0 || full.isotypes[trivial].multiplicity != 2)
        throw DecompositionFailed("oracle should contain exactly two trivial copies");
    inst.working = complement_of_isotype(full, trivial);
    inst.optimal = construct_optimal_input(inst.working.decomposition);
    SymmetricPOVM povm = srm_povm(inst.working.decomposition, inst.optimal.state);
    inst.confusion = confusion_matrix(povm, inst.optimal.state);
    auto [success, spread] = product_success_from_confusion(*base, inst.confusion);
    inst.product_success = success;
    inst.pair_spread = spread;
    return inst;
}

inline double group_mult_success(const GroupPtr& base, std::uint64_t seed = 0) {
    return group_mult_instance(base, seed).product_success;
}

// Closed-form pair-outcome probability, stratified by the number t of
// coordinates the outcome shares with the hidden pair.
inline double group_mult_confusion_term(const FiniteGroup& base, int t) {
    int n = base.order();
    if (n < 2) throw InvalidParameter("closed form needs base order >= 2");
    if (t < 0 || t > 2) throw InvalidParameter("t counts matching coordinates, 0..2");
    double num = static_cast<double>(t) * n - 2.0;
    return num * num / (2.0 * (n - 1) * n * n);
}

// ---------------------------------------------------------------------------
// single-isotype variant: input confined to |0> tensor Y  +  |1> tensor Y*,
// where Y is one nontrivial isotypic subspace of C^G and Y* its dual.
// ---------------------------------------------------------------------------

struct IrrepVariantResult {
    int isotype_row = 0;  // index into the regular decomposition / character table
    int irrep_dim = 0;
    RepPtr rep;           // restricted oracle, dim 2 d^2
    IsotypicDecomposition decomposition;
    OptimalInput optimal;
    Matrix embedding;     // 2|G| x 2d^2
    double product_success = 0.0;
    double pair_spread = 0.0;

    Vector ambient_state() const { return embedding * optimal.state; }
};

inline IrrepVariantResult group_mult_irrep_variant(const GroupPtr& base, int row,
                                                   std::uint64_t seed = 0) {
    int n = base->order();
    if (n < 2) throw InvalidParameter("hidden products need a base group of order >= 2");
    auto reg = decompose(regular_representation(base), Rng::mix(seed, 0x7ab1e));
    if (row < 0 || row >= static_cast<int>(reg.isotypes.size()))
        throw InvalidIndex("isotype row " + std::to_string(row) + " out of range");
    if (row == find_trivial_isotype(reg))
        throw TrivialIsotype("the trivial isotype has no dual-pair variant");
    int dual = dual_isotype_index(reg, row);
    const Isotype& iso = reg.isotypes[row];
    const Isotype& iso_dual = reg.isotypes[dual];
    int d = iso.irrep_dim;
    int block = d * d;  // dim of the isotypic subspace of C^G

    RepPtr oracle = group_mult_rep(base);
    Matrix b = Matrix::Zero(2 * n, 2 * block);
    int col = 0;
    for (const auto& alpha : iso.sections) {
        b.block(0, col, n, d) = alpha;
        col += d;
    }
    for (const auto& alpha : iso_dual.sections) {
        b.block(n, col, n, d) = alpha;
        col += d;
    }
    std::vector<Matrix> mats(oracle->group().order());
    for (int gamma = 0; gamma < oracle->group().order(); ++gamma)
        mats[gamma] = b.adjoint() * oracle->apply(gamma, b);
    IrrepVariantResult out;
    out.isotype_row = row;
    out.irrep_dim = d;
    out.embedding = b;
    out.rep = UnitaryRep::from_matrices(oracle->group_ptr(), std::move(mats), "mult-irrep");
    out.decomposition = decompose(out.rep, Rng::mix(seed, 0x1501 + row));
    out.optimal = construct_optimal_input(out.decomposition);
    SymmetricPOVM povm = srm_povm(out.decomposition, out.optimal.state);
    ConfusionMatrix conf = confusion_matrix(povm, out.optimal.state);
    auto [success, spread] = product_success_from_confusion(*base, conf);
    out.product_success = success;
    out.pair_spread = spread;
    return out;
}

// ---------------------------------------------------------------------------
// per-summand mass balance: at a product-identification optimum, the mass a
// state puts on canonical summand W of the j = 0 block equals the mass on
// the dual summand W* of the j = 1 block.
// ---------------------------------------------------------------------------

struct DualBalance {
    bool balanced = true;
    double worst_gap = 0.0;
    std::vector<std::pair<double, double>> mass;  // per character row: (block 0, block 1)
};

namespace detail {

// canonical projection of v in C^G onto the summand of chi under the
// left-regular action; conjugate = true projects onto the dual summand.
inline Vector canonical_project(const FiniteGroup& g, const Character& chi, const Vector& v,
                                bool conjugate) {
    int n = g.order();
    Vector out = Vector::Zero(n);
    const auto& classes = g.classes();
    for (int a = 0; a < n; ++a) {
        cplx w = chi.values[classes.class_of[a]];
        if (!conjugate) w = std::conj(w);
        w *= static_cast<double>(chi.dim) / n;
        int ainv = g.inverse(a);
        for (int s = 0; s < n; ++s) out(s) += w * v(g.multiply(ainv, s));
    }
    return out;
}

}  // namespace detail

inline DualBalance dual_balance(const FiniteGroup& g, const CharacterTable& table,
                                const Vector& ambient) {
    int n = g.order();
    if (ambient.size() != 2 * n)
        throw InvalidParameter("state must live on C^2 tensor C^G");
    Vector block0 = ambient.head(n);
    Vector block1 = ambient.tail(n);
    DualBalance out;
    for (const auto& row : table.rows) {
        double m0 = detail::canonical_project(g, row, block0, false).norm();
        double m1 = detail::canonical_project(g, row, block1, true).norm();
        out.mass.emplace_back(m0, m1);
        out.worst_gap = std::max(out.worst_gap, std::abs(m0 - m1));
    }
    out.balanced = out.worst_gap <= tol::optimality;
    return out;
}

inline DualBalance check_dual_balance(const GroupMultInstance& inst, const CharacterTable& table) {
    return dual_balance(*inst.base, table, inst.ambient_state());
}

// ---------------------------------------------------------------------------
/// ceiling check: mix each pair state over the fiber of its product and run
// the square-root measurement of the resulting ensemble.  No input state can
// push the identification probability of the product above 2/|G|.
// ---------------------------------------------------------------------------

struct MultOptimalityCheck {
    double bound = 0.0;        // 2/|G|
    double constructed = 0.0;  // ensemble success for the constructed optimal input
    double best = 0.0;         // max over all trials
    int trials = 0;
};

namespace detail {

inline double ensemble_srm_success(const FiniteGroup& base, const UnitaryRep& oracle,
                                   const Vector& psi) {
    int n = base.order();
    int dim = oracle.dim();
    std::vector<Matrix> rho(n, Matrix::Zero(dim, dim));
    for (int g0 = 0; g0 < n; ++g0)
        for (int g1 = 0; g1 < n; ++g1) {
            Vector t = oracle.apply(g0 * n + g1, psi);
            rho[base.multiply(g0, g1)] += t * t.adjoint();
        }
    Matrix phi = Matrix::Zero(dim, dim);
    for (auto& r : rho) {
        r /= static_cast<double>(n);
        phi += r;
    }
    phi /= static_cast<double>(n);
    Matrix w = hermitian_sqrt_pinv(phi);
    double p = 0.0;
    for (const auto& r : rho) {
        Matrix a = w * r;
        p += (a * a).trace().real();
    }
    return p / (n * n);
}

}  // namespace detail

inline MultOptimalityCheck verify_mult_optimality(const GroupMultInstance& inst, int trials,
                                                  std::uint64_t seed = 0) {
    if (trials < 1) throw InvalidParameter("need at least one trial");
    int n = inst.base->order();
    MultOptimalityCheck out;
    out.bound = 2.0 / n;
    out.trials = trials;
    out.constructed =
        detail::ensemble_srm_success(*inst.base, *inst.oracle, inst.ambient_state());
    out.best = out.constructed;
    Rng rng(Rng::mix(seed, 0xce11));
    for (int trial = 1; trial < trials; ++trial) {
        Vector psi = random_unit_vector(2 * n, rng);
        out.best =
            std::max(out.best, detail::ensemble_srm_success(*inst.base, *inst.oracle, psi));
    }
    return out;
}

inline MultOptimalityCheck verify_mult_optimality(const GroupPtr& base, int trials,
                                                  std::uint64_t seed = 0) {
    return verify_mult_optimality(group_mult_instance(base, seed), trials, seed);
}

// ---------------------------------------------------------------------------
// hidden conjugating element: Theta(g) |x> = |g x g^{-1}> on C^G
// ---------------------------------------------------------------------------

inline RepPtr conjugation_rep(const GroupPtr& group) {
    if (group->order() > limits().group_order_cap)
        throw CapExceeded("group order " + std::to_string(group->order()) +
                          " exceeds representation cap " +
                          std::to_string(limits().group_order_cap));
    return permutation_representation(
        group, [&g = *group](int a, int x) { return g.conjugate(a, x); }, group->order(),
        "conjugation");
}

// Multiplicity of each irrep in the conjugation representation equals the
// sum of its character over class representatives (one value per column of
// the character table).
inline std::vector<int> conjugation_multiplicities(const CharacterTable& table) {
    std::vector<int> mult;
    mult.reserve(table.count());
    for (const auto& row : table.rows) {
        cplx sum(0.0, 0.0);
        for (const cplx& v : row.values) sum += v;
        long rounded = std::lround(sum.real());
        if (std::abs(sum - cplx(static_cast<double>(rounded), 0.0)) > tol::character ||
            rounded < 0)
            throw NotInteger("character row sum " + std::to_string(sum.real()) +
                             " is not a nonnegative integer");
        mult.push_back(static_cast<int>(rounded));
    }
    return mult;
}

// Best classical single-query strategy: query any x and guess the most
// populated fiber; conjugating elements in the same class of the centralizer
// quotient are indistinguishable, giving max |class| / |G|.
inline double classical_conjugation_baseline(const FiniteGroup& group) {
    int biggest = 0;
    for (const auto& cls : group.classes().classes)
        biggest = std::max(biggest, static_cast<int>(cls.size()));
    return static_cast<double>(biggest) / group.order();
}

struct ConjugationReport {
    GroupPtr group;
    int center_size = 1;
    bool center_obstruction = false;  // nontrivial center: certainty impossible
    std::vector<int> multiplicities;  // per character table row
    std::vector<int> irrep_dims;
    double classical_baseline = 0.0;
    double quantum_no_ancilla = 0.0;
    std::optional<int> min_ancilla;   // absent when some irrep never occurs
    int ancilla_used = 1;
    double quantum_with_ancilla = 0.0;
    double ancilla_limit = 0.0;       // large-ancilla ceiling
};

inline ConjugationReport hidden_conjugation_report(const GroupPtr& group,
                                                   std::optional<int> ancilla_request = {},
                                                   std::uint64_t seed = 0) {
    CharacterTable table = character_table(group, seed);
    ConjugationReport report;
    report.group = group;
    report.center_size = static_cast<int>(group->center().size());
    report.center_obstruction = report.center_size > 1;
    report.multiplicities = conjugation_multiplicities(table);
    long check = 0;
    bool all_present = true;
    long present_sq = 0;
    int min_r = 1;
    for (int i = 0; i < table.count(); ++i) {
        int d = table.rows[i].dim;
        int m = report.multiplicities[i];
        report.irrep_dims.push_back(d);
        check += static_cast<long>(m) * d;
        if (m > 0) {
            present_sq += static_cast<long>(d) * d;
            min_r = std::max(min_r, (d + m - 1) / m);
        } else {
            all_present = false;
        }
    }
    if (check != group->order())
        throw DecompositionFailed("conjugation multiplicities do not add up to |G|");
    report.classical_baseline = classical_conjugation_baseline(*group);
    auto success_at = [&](long r) {
        long usable = 0;
        for (int i = 0; i < table.count(); ++i) {
            long d = table.rows[i].dim;
            long m = report.multiplicities[i];
            usable += std::min(r * m, d) * d;
        }
        return static_cast<double>(usable) / group->order();
    };
    report.quantum_no_ancilla = success_at(1);
    report.ancilla_limit = static_cast<double>(present_sq) / group->order();
    if (all_present) report.min_ancilla = min_r;
    if (ancilla_request && *ancilla_request < 1)
        throw InvalidParameter("ancilla dimension must be >= 1");
    report.ancilla_used = ancilla_request.value_or(report.min_ancilla.value_or(1));
    report.quantum_with_ancilla = success_at(report.ancilla_used);
    return report;
}

// ---------------------------------------------------------------------------
// query oracles over (Z_2)^n on C^{2^n} tensor C^2, basis index 2 x + b
// ---------------------------------------------------------------------------

struct OracleFamily {
    std::string kind;
    int n = 0;
    int k = -1;  // weight threshold; -1 when not applicable
    GroupPtr group;
    RepPtr rep;
    IsotypicDecomposition decomposition;
    OptimalInput optimal;
    int cyclic_dim = 0;
    double p_success = 0.0;  // simulated end to end
    double p_formula = 0.0;  // closed form
};

namespace detail {

inline OracleFamily finish_oracle_family(OracleFamily family, std::uint64_t seed) {
    family.decomposition = decompose(family.rep, seed);
    family.optimal = construct_optimal_input(family.decomposition);
    family.cyclic_dim = family.optimal.cyclic_dim;
    SymmetricPOVM povm = srm_povm(family.decomposition, family.optimal.state);
    family.p_success = success_probability(confusion_matrix(povm, family.optimal.state));
    return family;
}

}  // namespace detail

// hidden dot product: a acts by |x, b> -> |x, b xor (a . x)>
inline OracleFamily bernstein_vazirani_rep(int n, std::uint64_t seed = 0) {
    if (n < 1) throw InvalidParameter("need n >= 1 bits");
    if (n > limits().oracle_bits_cap)
        throw CapExceeded("bit count " + std::to_string(n) + " exceeds cap " +
                          std::to_string(limits().oracle_bits_cap));
    OracleFamily family;
    family.kind = "bernstein-vazirani";
    family.n = n;
    family.group = xor_group(n);
    auto action = [](int a, int p) {
        int x = p >> 1, b = p & 1;
        int dot = std::popcount(static_cast<unsigned>(a & x)) & 1;
        return (x << 1) | (b ^ dot);
    };
    family.rep = permutation_representation(family.group, action, 2 << n, "dot-oracle");
    family.p_formula = 1.0;
    return detail::finish_oracle_family(std::move(family), Rng::mix(seed, 0xb5));
}

// weight-limited variant: the response flips only when popcount(x) <= k
inline OracleFamily vandam_rep(int n, int k, std::uint64_t seed = 0) {
    if (n < 1) throw InvalidParameter("need n >= 1 bits");
    if (n > limits().oracle_bits_cap)
        throw CapExceeded("bit count " + std::to_string(n) + " exceeds cap " +
                          std::to_string(limits().oracle_bits_cap));
    if (k < 0 || k > n)
        throw InvalidParameter("weight threshold must satisfy 0 <= k <= n");
    OracleFamily family;
    family.kind = "vandam";
    family.n = n;
    family.k = k;
    family.group = xor_group(n);
    auto action = [k](int a, int p) {
        int x = p >> 1, b = p & 1;
        if (std::popcount(static_cast<unsigned>(x)) > k) return p;
        int dot = std::popcount(static_cast<unsigned>(a & x)) & 1;
        return (x << 1) | (b ^ dot);
    };
    family.rep = permutation_representation(family.group, action, 2 << n, "weighted-dot-oracle");
    double reachable = 0.0;
    double binom = 1.0;  // C(n, 0)
    for (int i = 0; i <= k; ++i) {
        reachable += binom;
        binom = binom * (n - i) / (i + 1);
    }
    family.p_formula = reachable / static_cast<double>(1 << n);
    return detail::finish_oracle_family(std::move(family), Rng::mix(seed, 0x5da));
}

}  // namespace symdisc
