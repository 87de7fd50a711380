#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "symdisc/config.hpp"
#include "symdisc/errors.hpp"
#include "symdisc/group.hpp"
#include "symdisc/linalg.hpp"
#include "symdisc/rep.hpp"

namespace symdisc {

// One isotypic component.  sections[i] is a dim x irrep_dim isometry onto the
// i-th copy; the copies are aligned so every section induces the same model
// matrices: sections[i]^dag Theta(g) sections[i] = model[g] for all i, g.
struct Isotype {
    Character character;
    int irrep_dim = 0;
    int multiplicity = 0;
    std::vector<Matrix> sections;
    std::vector<Matrix> model;  // one irrep_dim x irrep_dim unitary per group element
};

struct IsotypicDecomposition {
    RepPtr rep;
    std::vector<Isotype> isotypes;
    double residual_check = 0.0;  // max reassembly error over checked elements

    int total_dim() const {
        int d = 0;
        for (const auto& iso : isotypes) d += iso.irrep_dim * iso.multiplicity;
        return d;
    }
};

namespace detail {

// max_g ||Theta(g) - sum_{k,i} alpha rho(g) alpha^dag||, exhaustive for small
// groups, strided sample otherwise.
inline double reassembly_residual(const UnitaryRep& rep, const std::vector<Isotype>& isotypes) {
    int n = rep.group().order();
    int step = n <= rep_exhaustive_order ? 1 : std::max(1, n / rep_exhaustive_order);
    double worst = 0.0;
    for (int g = 0; g < n; g += step) {
        Matrix rebuilt = Matrix::Zero(rep.dim(), rep.dim());
        for (const auto& iso : isotypes)
            for (const auto& alpha : iso.sections)
                rebuilt += alpha * iso.model[g] * alpha.adjoint();
        worst = std::max(worst, (rep.matrix(g) - rebuilt).norm());
    }
    return worst;
}

inline bool lex_less(const Character& a, const Character& b) {
    auto snap = [](double x) { return std::round(x * 1e6) / 1e6; };
    for (size_t c = 0; c < a.values.size(); ++c) {
        double ar = snap(a.values[c].real()), br = snap(b.values[c].real());
        if (ar != br) return ar < br;
        double ai = snap(a.values[c].imag()), bi = snap(b.values[c].imag());
        if (ai != bi) return ai < bi;
    }
    return false;
}

}  // namespace detail

// Isotypic decomposition by eigenspaces of a group-averaged random Hermitian
// matrix.  The average lies in the commutant, so for a generic draw each
// eigenvalue cluster spans exactly one irreducible invariant subspace; the
// <chi, chi> = 1 test detects an unlucky draw and triggers a retry.  Copies
// inside an isotype are then rebased through the group-averaged intertwiner
// (a scalar multiple of a unitary, by Schur) so they all induce identical
// model matrices.  Deterministic for a fixed seed.
inline IsotypicDecomposition decompose(const RepPtr& rep, std::uint64_t seed = 0) {
    const FiniteGroup& group = rep->group();
    const auto& classes = group.classes();
    const int dim = rep->dim();
    const int n = group.order();
    Rng rng(Rng::mix(seed, 0xd3c0));
    std::string last_failure = "no attempt made";

    for (int attempt = 0; attempt < limits().decompose_retries; ++attempt) {
        Matrix averaged = rep->conjugate_average(random_hermitian(dim, rng));
        Eigen::SelfAdjointEigenSolver<Matrix> es(averaged);
        if (es.info() != Eigen::Success) {
            last_failure = "eigensolver did not converge";
            continue;
        }
        RealVector lam = es.eigenvalues();
        double scale = std::max({1.0, std::abs(lam(0)), std::abs(lam(dim - 1))});

        struct Piece {
            Matrix basis;
            Character chi;
        };
        std::vector<Piece> pieces;
        bool attempt_ok = true;
        int begin = 0;
        for (int i = 1; i <= dim && attempt_ok; ++i) {
            if (i < dim && lam(i) - lam(i - 1) <= tol::eigen_gap * scale) continue;
            Piece piece;
            piece.basis = es.eigenvectors().middleCols(begin, i - begin);
            piece.chi.dim = i - begin;
            piece.chi.values.resize(classes.count());
            for (int c = 0; c < classes.count(); ++c)
                piece.chi.values[c] =
                    (piece.basis.adjoint() * rep->apply(classes.representative(c), piece.basis))
                        .trace();
            cplx norm = character_inner(group, piece.chi, piece.chi);
            if (std::abs(norm - cplx(1.0, 0.0)) > 1e-3) {
                last_failure = "eigenvalue cluster is not irreducible (<chi,chi> = " +
                               std::to_string(norm.real()) + ")";
                attempt_ok = false;
            } else {
                pieces.push_back(std::move(piece));
            }
            begin = i;
        }
        if (!attempt_ok) continue;

        // bucket the irreducible pieces into isotypes by character
        std::vector<Isotype> isotypes;
        std::vector<std::vector<Matrix>> copies;  // raw sections per isotype
        for (auto& piece : pieces) {
            int home = -1;
            for (size_t k = 0; k < isotypes.size(); ++k)
                if (isotypes[k].character.matches(piece.chi)) {
                    home = static_cast<int>(k);
                    break;
                }
            if (home < 0) {
                Isotype iso;
                iso.character = piece.chi;
                iso.irrep_dim = piece.chi.dim;
                isotypes.push_back(std::move(iso));
                copies.emplace_back();
                home = static_cast<int>(isotypes.size()) - 1;
            }
            if (isotypes[home].irrep_dim != piece.chi.dim) {
                attempt_ok = false;
                last_failure = "character collision between different dimensions";
                break;
            }
            copies[home].push_back(std::move(piece.basis));
        }
        if (!attempt_ok) continue;

        // align copies so all sections of an isotype induce the same model
        for (size_t k = 0; k < isotypes.size() && attempt_ok; ++k) {
            Isotype& iso = isotypes[k];
            iso.multiplicity = static_cast<int>(copies[k].size());
            int d = iso.irrep_dim;
            const Matrix& first = copies[k][0];
            iso.model.resize(n);
            for (int g = 0; g < n; ++g)
                iso.model[g] = first.adjoint() * rep->apply(g, first);
            iso.sections.push_back(first);
            for (size_t i = 1; i < copies[k].size(); ++i) {
                Matrix& alpha = copies[k][i];
                std::vector<Matrix> induced(n);
                for (int g = 0; g < n; ++g) induced[g] = alpha.adjoint() * rep->apply(g, alpha);
                Matrix rebase;
                bool rebased = false;
                for (int draw = 0; draw < 4 && !rebased; ++draw) {
                    Matrix x = random_complex(d, d, rng);
                    Matrix s = Matrix::Zero(d, d);
                    for (int g = 0; g < n; ++g) s += iso.model[g] * x * induced[g].adjoint();
                    s *= static_cast<double>(d) / n;
                    try {
                        rebase = polar_unitary(s);
                        rebased = true;
                    } catch (const DecompositionFailed&) {
                    }
                }
                if (!rebased) {
                    attempt_ok = false;
                    last_failure = "intertwiner between copies is singular";
                    break;
                }
                iso.sections.push_back(alpha * rebase.adjoint());
            }
        }
        if (!attempt_ok) continue;

        // verification: orthonormal total basis, exhaustive equivariance
        // against the model matrices, pairwise distinct characters
        int covered = 0;
        for (const auto& iso : isotypes) covered += iso.irrep_dim * iso.multiplicity;
        if (covered != dim) {
            last_failure = "isotype dimensions do not add up";
            continue;
        }
        Matrix all(dim, covered);
        int col = 0;
        for (const auto& iso : isotypes)
            for (const auto& alpha : iso.sections) {
                all.middleCols(col, iso.irrep_dim) = alpha;
                col += iso.irrep_dim;
            }
        if ((all.adjoint() * all - Matrix::Identity(covered, covered)).norm() > tol::unitary) {
            last_failure = "sections are not orthonormal";
            continue;
        }
        double equiv = 0.0;
        for (const auto& iso : isotypes)
            for (const auto& alpha : iso.sections)
                for (int g = 0; g < n; ++g)
                    equiv = std::max(equiv,
                                     (rep->apply(g, alpha) - alpha * iso.model[g]).norm());
        if (equiv > tol::equivariance) {
            last_failure = "sections are not equivariant (residual " + std::to_string(equiv) + ")";
            continue;
        }
        bool distinct = true;
        for (size_t a = 0; a + 1 < isotypes.size() && distinct; ++a)
            for (size_t b = a + 1; b < isotypes.size() && distinct; ++b)
                distinct = !isotypes[a].character.matches(isotypes[b].character);
        if (!distinct) {
            last_failure = "two isotypes share a character";
            continue;
        }

        std::sort(isotypes.begin(), isotypes.end(), [](const Isotype& a, const Isotype& b) {
            if (a.irrep_dim != b.irrep_dim) return a.irrep_dim < b.irrep_dim;
            return detail::lex_less(a.character, b.character);
        });

        IsotypicDecomposition out;
        out.rep = rep;
        out.isotypes = std::move(isotypes);
        out.residual_check = detail::reassembly_residual(*rep, out.isotypes);
        if (out.residual_check > tol::equivariance) {
            last_failure = "reassembly residual " + std::to_string(out.residual_check);
            continue;
        }
        return out;
    }
    throw DecompositionFailed("decomposition failed after " +
                              std::to_string(limits().decompose_retries) +
                              " attempts: " + last_failure);
}

// Character table computed from the regular representation, rows sorted by
// irrep dimension then lexicographically on snapped values.
struct CharacterTable {
    GroupPtr group;
    std::vector<Character> rows;
    int trivial_row = -1;
    double row_orthogonality_residual = 0.0;
    double column_orthogonality_residual = 0.0;

    int count() const { return static_cast<int>(rows.size()); }
};

inline CharacterTable character_table(const GroupPtr& group, std::uint64_t seed = 0) {
    auto dec = decompose(regular_representation(group), Rng::mix(seed, 0x7ab1e));
    const auto& classes = group->classes();
    CharacterTable table;
    table.group = group;
    long dim_sq = 0;
    for (const auto& iso : dec.isotypes) {
        if (iso.multiplicity != iso.irrep_dim)
            throw DecompositionFailed("regular representation: multiplicity " +
                                      std::to_string(iso.multiplicity) +
                                      " != dimension " + std::to_string(iso.irrep_dim));
        table.rows.push_back(iso.character);
        dim_sq += static_cast<long>(iso.irrep_dim) * iso.irrep_dim;
    }
    if (dim_sq != group->order() || table.count() != classes.count())
        throw DecompositionFailed("character table is incomplete");
    for (int i = 0; i < table.count(); ++i) {
        bool all_one = true;
        for (const cplx& v : table.rows[i].values)
            all_one = all_one && std::abs(v - cplx(1.0, 0.0)) <= tol::character;
        if (all_one) table.trivial_row = i;
        for (int j = 0; j < table.count(); ++j) {
            cplx inner = character_inner(*group, table.rows[i], table.rows[j]);
            double expect = i == j ? 1.0 : 0.0;
            table.row_orthogonality_residual =
                std::max(table.row_orthogonality_residual, std::abs(inner - expect));
        }
    }
    for (int c = 0; c < classes.count(); ++c)
        for (int cc = 0; cc < classes.count(); ++cc) {
            cplx acc(0.0, 0.0);
            for (const auto& row : table.rows)
                acc += row.values[c] * std::conj(row.values[cc]);
            double expect = c == cc ? static_cast<double>(group->order()) / classes.size(c) : 0.0;
            table.column_orthogonality_residual =
                std::max(table.column_orthogonality_residual, std::abs(acc - expect));
        }
    if (table.trivial_row < 0) throw DecompositionFailed("trivial character missing");
    return table;
}

// Index of the isotype whose character is the complex conjugate of isotype
// k's; throws DualNotPresent when the dual irrep does not occur in V.
inline int dual_isotype_index(const IsotypicDecomposition& dec, int k) {
    if (k < 0 || k >= static_cast<int>(dec.isotypes.size()))
        throw InvalidIndex("isotype index " + std::to_string(k) + " out of range");
    Character conj_chi = dec.isotypes[k].character;
    for (cplx& v : conj_chi.values) v = std::conj(v);
    for (int j = 0; j < static_cast<int>(dec.isotypes.size()); ++j)
        if (dec.isotypes[j].character.matches(conj_chi)) return j;
    throw DualNotPresent("the dual of isotype " + std::to_string(k) +
                         " does not occur in the representation");
}

inline int find_trivial_isotype(const IsotypicDecomposition& dec) {
    for (int k = 0; k < static_cast<int>(dec.isotypes.size()); ++k) {
        bool all_one = true;
        for (const cplx& v : dec.isotypes[k].character.values)
            all_one = all_one && std::abs(v - cplx(1.0, 0.0)) <= tol::character;
        if (all_one) return k;
    }
    return -1;
}

// Restriction of the representation to the orthogonal complement of one
// isotype.  The embedding maps restricted coordinates back into V, and the
// returned decomposition reuses the parent's aligned sections, expressed in
// the restricted basis.
struct ComplementRestriction {
    RepPtr rep;
    Matrix embedding;  // dim x dim' isometry
    IsotypicDecomposition decomposition;
};

inline ComplementRestriction complement_of_isotype(const IsotypicDecomposition& dec, int k) {
    if (k < 0 || k >= static_cast<int>(dec.isotypes.size()))
        throw InvalidIndex("isotype index " + std::to_string(k) + " out of range");
    const UnitaryRep& rep = *dec.rep;
    int dim = rep.dim();
    int removed = dec.isotypes[k].irrep_dim * dec.isotypes[k].multiplicity;
    int kept = dim - removed;
    if (kept == 0) throw InvalidParameter("removing the only isotype leaves nothing");
    Matrix b(dim, kept);
    int col = 0;
    for (int j = 0; j < static_cast<int>(dec.isotypes.size()); ++j) {
        if (j == k) continue;
        for (const auto& alpha : dec.isotypes[j].sections) {
            b.middleCols(col, dec.isotypes[j].irrep_dim) = alpha;
            col += dec.isotypes[j].irrep_dim;
        }
    }
    std::vector<Matrix> mats(rep.group().order());
    for (int g = 0; g < rep.group().order(); ++g) mats[g] = b.adjoint() * rep.apply(g, b);
    ComplementRestriction out;
    out.rep = UnitaryRep::from_matrices(rep.group_ptr(), std::move(mats), "restriction");
    out.embedding = b;
    out.decomposition.rep = out.rep;
    for (int j = 0; j < static_cast<int>(dec.isotypes.size()); ++j) {
        if (j == k) continue;
        Isotype iso;
        iso.character = dec.isotypes[j].character;
        iso.irrep_dim = dec.isotypes[j].irrep_dim;
        iso.multiplicity = dec.isotypes[j].multiplicity;
        iso.model = dec.isotypes[j].model;
        for (const auto& alpha : dec.isotypes[j].sections)
            iso.sections.push_back(b.adjoint() * alpha);
        out.decomposition.isotypes.push_back(std::move(iso));
    }
    out.decomposition.residual_check =
        detail::reassembly_residual(*out.rep, out.decomposition.isotypes);
    if (out.decomposition.residual_check > tol::equivariance)
        throw DecompositionFailed("restriction reassembly residual " +
                                  std::to_string(out.decomposition.residual_check));
    return out;
}

inline RepPtr restrict_to_complement_of_isotype(const IsotypicDecomposition& dec, int k) {
    return complement_of_isotype(dec, k).rep;
}

}  // namespace symdisc
