#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "symdisc/config.hpp"
#include "symdisc/errors.hpp"
#include "symdisc/group.hpp"
#include "symdisc/linalg.hpp"

namespace symdisc {

class UnitaryRep;
using RepPtr = std::shared_ptr<const UnitaryRep>;

// Character of a representation: one complex value per conjugacy class, in
// the class order of the underlying group's partition.
struct Character {
    std::vector<cplx> values;
    int dim = 0;  // value on the identity class, rounded

    bool matches(const Character& other, double tolerance = tol::character) const {
        if (values.size() != other.values.size()) return false;
        for (size_t c = 0; c < values.size(); ++c)
            if (std::abs(values[c] - other.values[c]) > tolerance) return false;
        return true;
    }
};

// Finite-dimensional unitary representation with explicit matrices per group
// element.  Permutation representations additionally keep the permutations so
// group averaging and translation stay O(dim^2) instead of O(dim^3).
class UnitaryRep {
public:
    static RepPtr from_matrices(GroupPtr group, std::vector<Matrix> matrices,
                                std::string tag = "matrices") {
        RepPtr rep(new UnitaryRep(std::move(group), std::move(matrices), {}, std::move(tag)));
        rep->validate_matrices();
        return rep;
    }

    // perms[g][p] = image of basis point p under element g
    static RepPtr from_permutations(GroupPtr group, std::vector<std::vector<int>> perms,
                                    std::string tag = "permutation") {
        if (static_cast<int>(perms.size()) != group->order())
            throw NotAnAction("need one permutation per group element");
        int dim = perms.empty() ? 0 : static_cast<int>(perms[0].size());
        std::vector<Matrix> mats(perms.size());
        std::vector<char> hit(dim);
        for (int g = 0; g < group->order(); ++g) {
            if (static_cast<int>(perms[g].size()) != dim)
                throw NotAnAction("permutation for element " + std::to_string(g) +
                                  " has inconsistent length");
            std::fill(hit.begin(), hit.end(), 0);
            for (int p = 0; p < dim; ++p) {
                int q = perms[g][p];
                if (q < 0 || q >= dim || hit[q]++)
                    throw NotAnAction("element " + std::to_string(g) +
                                      " does not act by a permutation");
            }
            mats[g] = Matrix::Zero(dim, dim);
            for (int p = 0; p < dim; ++p) mats[g](perms[g][p], p) = 1.0;
        }
        RepPtr rep(new UnitaryRep(std::move(group), std::move(mats), std::move(perms),
                                  std::move(tag)));
        rep->validate_permutations();
        return rep;
    }

    const FiniteGroup& group() const { return *group_; }
    const GroupPtr& group_ptr() const { return group_; }
    int dim() const { return dim_; }
    const Matrix& matrix(int g) const { return matrices_[g]; }
    bool is_permutation() const { return !perms_.empty(); }
    const std::vector<std::vector<int>>& permutations() const { return perms_; }
    const std::string& tag() const { return tag_; }

    // Theta(g) * m
    Matrix apply(int g, const Matrix& m) const {
        if (is_permutation()) {
            Matrix out(m.rows(), m.cols());
            const auto& p = perms_[g];
            for (int r = 0; r < m.rows(); ++r) out.row(p[r]) = m.row(r);
            return out;
        }
        return matrices_[g] * m;
    }

    Vector apply(int g, const Vector& v) const {
        if (is_permutation()) {
            Vector out(v.size());
            const auto& p = perms_[g];
            for (int r = 0; r < v.size(); ++r) out(p[r]) = v(r);
            return out;
        }
        return matrices_[g] * v;
    }

    // (1/|G|) sum_g Theta(g) h Theta(g)^{-1}, re-hermitized
    Matrix conjugate_average(const Matrix& h) const {
        Matrix acc = Matrix::Zero(dim_, dim_);
        if (is_permutation()) {
            for (const auto& p : perms_)
                for (int j = 0; j < dim_; ++j)
                    for (int i = 0; i < dim_; ++i) acc(p[i], p[j]) += h(i, j);
        } else {
            for (const Matrix& u : matrices_) acc += u * h * u.adjoint();
        }
        acc /= static_cast<double>(group_->order());
        return (acc + acc.adjoint()) * 0.5;
    }

    double trace_re(int g) const { return matrices_[g].trace().real(); }
    cplx trace(int g) const {
        if (is_permutation()) {
            int fixed = 0;
            for (int p = 0; p < dim_; ++p)
                if (perms_[g][p] == p) ++fixed;
            return cplx(fixed, 0.0);
        }
        return matrices_[g].trace();
    }

private:
    UnitaryRep(GroupPtr group, std::vector<Matrix> matrices,
               std::vector<std::vector<int>> perms, std::string tag)
        : group_(std::move(group)),
          matrices_(std::move(matrices)),
          perms_(std::move(perms)),
          tag_(std::move(tag)) {
        if (static_cast<int>(matrices_.size()) != group_->order())
            throw InvalidParameter("need one matrix per group element");
        dim_ = matrices_.empty() ? 0 : static_cast<int>(matrices_[0].rows());
        if (dim_ < 1) throw InvalidParameter("representation dimension must be positive");
    }

    void validate_matrices() const {
        int n = group_->order();
        for (int g = 0; g < n; ++g) {
            if (matrices_[g].rows() != dim_ || matrices_[g].cols() != dim_)
                throw InvalidParameter("matrix for element " + std::to_string(g) +
                                       " has inconsistent shape");
            if (unitarity_error(matrices_[g]) > tol::unitary)
                throw InvalidParameter("matrix for element " + std::to_string(g) +
                                       " is not unitary");
        }
        int e = group_->identity();
        if ((matrices_[e] - Matrix::Identity(dim_, dim_)).norm() > tol::homomorphism)
            throw InvalidParameter("identity element is not represented by the identity");
        auto check_pair = [&](int g, int h) {
            if ((matrices_[g] * matrices_[h] - matrices_[group_->multiply(g, h)]).norm() >
                tol::homomorphism)
                throw InvalidParameter("homomorphism fails at pair (" + std::to_string(g) +
                                       ", " + std::to_string(h) + ")");
        };
        if (n <= rep_exhaustive_order) {
            for (int g = 0; g < n; ++g)
                for (int h = 0; h < n; ++h) check_pair(g, h);
        } else {
            std::uint64_t state = 0x51ed270b0a1c5d89ull ^ static_cast<std::uint64_t>(n);
            auto next = [&state] {
                state = state * 6364136223846793005ull + 1442695040888963407ull;
                return state >> 16;
            };
            for (int i = 0; i < 4000; ++i)
                check_pair(static_cast<int>(next() % n), static_cast<int>(next() % n));
        }
    }

    void validate_permutations() const {
        int n = group_->order();
        const auto& pe = perms_[group_->identity()];
        for (int p = 0; p < dim_; ++p)
            if (pe[p] != p) throw NotAnAction("identity element moves point " + std::to_string(p));
        for (int g = 0; g < n; ++g)
            for (int h = 0; h < n; ++h) {
                const auto& pg = perms_[g];
                const auto& ph = perms_[h];
                const auto& pgh = perms_[group_->multiply(g, h)];
                for (int p = 0; p < dim_; ++p)
                    if (pg[ph[p]] != pgh[p])
                        throw NotAnAction("action is not compatible at pair (" +
                                          std::to_string(g) + ", " + std::to_string(h) + ")");
            }
    }

    GroupPtr group_;
    int dim_ = 0;
    std::vector<Matrix> matrices_;
    std::vector<std::vector<int>> perms_;
    std::string tag_;
};

// Permutation representation from an abstract action on 0..points-1.
inline RepPtr permutation_representation(const GroupPtr& group,
                                         const std::function<int(int, int)>& action,
                                         int points, std::string tag = "permutation") {
    if (points < 1) throw InvalidParameter("need at least one point");
    std::vector<std::vector<int>> perms(group->order(), std::vector<int>(points));
    for (int g = 0; g < group->order(); ++g)
        for (int p = 0; p < points; ++p) {
            int q = action(g, p);
            if (q < 0 || q >= points)
                throw NotAnAction("action sends point " + std::to_string(p) +
                                  " out of range under element " + std::to_string(g));
            perms[g][p] = q;
        }
    return UnitaryRep::from_permutations(group, std::move(perms), std::move(tag));
}

// Left-regular representation on C^G.
inline RepPtr regular_representation(const GroupPtr& group) {
    if (group->order() > limits().group_order_cap)
        throw CapExceeded("group order " + std::to_string(group->order()) +
                          " exceeds representation cap " +
                          std::to_string(limits().group_order_cap));
    return permutation_representation(
        group, [&g = *group](int a, int p) { return g.multiply(a, p); }, group->order(),
        "regular");
}

// V tensor C^r with the group acting trivially on the second factor; basis
// index v * r + z.
inline RepPtr tensor_with_trivial(const RepPtr& rep, int r) {
    if (r < 1) throw InvalidParameter("ancilla dimension must be >= 1");
    long dim = static_cast<long>(rep->dim()) * r;
    if (dim > limits().rep_dim_cap())
        throw CapExceeded("tensor dimension " + std::to_string(dim) + " exceeds cap " +
                          std::to_string(limits().rep_dim_cap()));
    int d = static_cast<int>(dim);
    std::string tag = rep->tag() + "*ancilla:" + std::to_string(r);
    if (rep->is_permutation()) {
        std::vector<std::vector<int>> perms(rep->group().order(), std::vector<int>(d));
        for (int g = 0; g < rep->group().order(); ++g) {
            const auto& p = rep->permutations()[g];
            for (int v = 0; v < rep->dim(); ++v)
                for (int z = 0; z < r; ++z) perms[g][v * r + z] = p[v] * r + z;
        }
        return UnitaryRep::from_permutations(rep->group_ptr(), std::move(perms), std::move(tag));
    }
    std::vector<Matrix> mats(rep->group().order());
    for (int g = 0; g < rep->group().order(); ++g) {
        Matrix m = Matrix::Zero(d, d);
        for (int v = 0; v < rep->dim(); ++v)
            for (int w = 0; w < rep->dim(); ++w) {
                cplx x = rep->matrix(g)(v, w);
                if (x != cplx(0.0, 0.0))
                    for (int z = 0; z < r; ++z) m(v * r + z, w * r + z) = x;
            }
        mats[g] = std::move(m);
    }
    return UnitaryRep::from_matrices(rep->group_ptr(), std::move(mats), std::move(tag));
}

// Character of a representation; verifies the trace really is constant on
// every conjugacy class.
inline Character character_of(const UnitaryRep& rep) {
    const auto& classes = rep.group().classes();
    Character chi;
    chi.values.reserve(classes.count());
    for (int c = 0; c < classes.count(); ++c) {
        cplx value = rep.trace(classes.representative(c));
        for (int member : classes.classes[c]) {
            if (std::abs(rep.trace(member) - value) > tol::character)
                throw NotClassConstant("trace differs inside the class of element " +
                                       std::to_string(classes.representative(c)));
        }
        chi.values.push_back(value);
    }
    cplx on_identity = chi.values[classes.class_of[rep.group().identity()]];
    chi.dim = static_cast<int>(std::lround(on_identity.real()));
    if (std::abs(on_identity - cplx(chi.dim, 0.0)) > tol::character || chi.dim < 1)
        throw NotClassConstant("character on the identity is not a positive integer");
    return chi;
}

// Multiplicity <chi_v, chi_w> = (1/|G|) sum_c |c| chi_v(c) conj(chi_w(c))
inline cplx character_inner(const FiniteGroup& group, const Character& a, const Character& b) {
    const auto& classes = group.classes();
    cplx acc(0.0, 0.0);
    for (int c = 0; c < classes.count(); ++c)
        acc += static_cast<double>(classes.size(c)) * a.values[c] * std::conj(b.values[c]);
    return acc / static_cast<double>(group.order());
}

}  // namespace symdisc
