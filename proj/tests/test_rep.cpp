#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include <symdisc/symdisc.hpp>

using namespace symdisc;

namespace {

constexpr double pi = 3.14159265358979323846;

// 2x2 real rotation representation of Z_k
RepPtr rotation_rep(const GroupPtr& g) {
    int k = g->order();
    std::vector<Matrix> mats(k);
    for (int a = 0; a < k; ++a) {
        double t = 2.0 * pi * a / k;
        Matrix m(2, 2);
        m << cplx(std::cos(t)), cplx(-std::sin(t)), cplx(std::sin(t)), cplx(std::cos(t));
        mats[a] = m;
    }
    return UnitaryRep::from_matrices(g, std::move(mats), "rotation");
}

}  // namespace

TEST_CASE("regular representation permutes deltas by left translation", "[rep]") {
    GroupPtr g = symmetric_group(3);
    RepPtr rep = regular_representation(g);
    REQUIRE(rep->dim() == 6);
    REQUIRE(rep->is_permutation());
    for (int a = 0; a < g->order(); ++a)
        for (int x = 0; x < g->order(); ++x) {
            Vector delta = Vector::Zero(6);
            delta(x) = 1.0;
            Vector moved = rep->apply(a, delta);
            REQUIRE(std::abs(moved(g->multiply(a, x)) - cplx(1.0, 0.0)) < 1e-14);
        }
}

TEST_CASE("regular character is order at identity and zero elsewhere", "[rep]") {
    GroupPtr g = dihedral_group(4);
    RepPtr rep = regular_representation(g);
    Character chi = character_of(*rep);
    REQUIRE(chi.dim == 8);
    for (int c = 1; c < g->classes().count(); ++c)
        REQUIRE(std::abs(chi.values[c]) < 1e-12);
}

TEST_CASE("regular representation respects the group order cap", "[rep]") {
    REQUIRE_THROWS_AS(regular_representation(cyclic_group(201)), CapExceeded);
    REQUIRE_NOTHROW(regular_representation(cyclic_group(200)));
}

TEST_CASE("matrix representation validation", "[rep]") {
    GroupPtr g = cyclic_group(4);
    RepPtr rep = rotation_rep(g);
    REQUIRE(rep->dim() == 2);
    REQUIRE_FALSE(rep->is_permutation());
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            REQUIRE((rep->matrix(a) * rep->matrix(b) - rep->matrix(g->multiply(a, b))).norm() <
                    1e-12);
}

TEST_CASE("non-unitary matrices are rejected", "[rep]") {
    GroupPtr g = cyclic_group(2);
    std::vector<Matrix> mats(2, Matrix::Identity(2, 2));
    mats[1](0, 0) = 2.0;
    REQUIRE_THROWS_AS(UnitaryRep::from_matrices(g, mats), InvalidParameter);
}

TEST_CASE("homomorphism violations are rejected", "[rep]") {
    GroupPtr g = cyclic_group(3);
    // unitary matrices that do not compose like Z_3
    std::vector<Matrix> mats(3, Matrix::Identity(2, 2));
    mats[1] << cplx(0), cplx(1), cplx(1), cplx(0);
    mats[2] = Matrix::Identity(2, 2);
    REQUIRE_THROWS_AS(UnitaryRep::from_matrices(g, mats), InvalidParameter);
}

TEST_CASE("wrong identity matrix is rejected", "[rep]") {
    GroupPtr g = cyclic_group(2);
    Matrix swap(2, 2);
    swap << cplx(0), cplx(1), cplx(1), cplx(0);
    std::vector<Matrix> mats{swap, Matrix::Identity(2, 2)};
    REQUIRE_THROWS_AS(UnitaryRep::from_matrices(g, mats), InvalidParameter);
}

TEST_CASE("permutation action validation", "[rep]") {
    GroupPtr g = cyclic_group(2);
    SECTION("non-bijective row") {
        REQUIRE_THROWS_AS(UnitaryRep::from_permutations(g, {{0, 1, 2}, {0, 0, 1}}),
                          NotAnAction);
    }
    SECTION("identity must fix every point") {
        REQUIRE_THROWS_AS(UnitaryRep::from_permutations(g, {{1, 0}, {0, 1}}), NotAnAction);
    }
    SECTION("incompatible composition") {
        // 3-cycle assigned to an involution
        REQUIRE_THROWS_AS(UnitaryRep::from_permutations(g, {{0, 1, 2}, {1, 2, 0}}),
                          NotAnAction);
    }
    SECTION("wrong count") {
        REQUIRE_THROWS_AS(UnitaryRep::from_permutations(g, {{0, 1}}), NotAnAction);
    }
}

TEST_CASE("permutation fast path agrees with the matrices", "[rep]") {
    GroupPtr g = dihedral_group(4);
    RepPtr rep = regular_representation(g);
    Rng rng(7);
    Vector v = random_unit_vector(rep->dim(), rng);
    Matrix m = random_complex(rep->dim(), 3, rng);
    for (int a : {0, 1, 5, 7}) {
        REQUIRE((rep->apply(a, v) - rep->matrix(a) * v).norm() < 1e-13);
        REQUIRE((rep->apply(a, m) - rep->matrix(a) * m).norm() < 1e-13);
        REQUIRE(std::abs(rep->trace(a) - rep->matrix(a).trace()) < 1e-13);
    }
}

TEST_CASE("conjugate average lands in the commutant", "[rep]") {
    GroupPtr g = symmetric_group(3);
    RepPtr rep = regular_representation(g);
    Rng rng(11);
    Matrix avg = rep->conjugate_average(random_hermitian(rep->dim(), rng));
    REQUIRE((avg - avg.adjoint()).norm() < 1e-13);
    for (int a = 0; a < g->order(); ++a)
        REQUIRE((rep->matrix(a) * avg - avg * rep->matrix(a)).norm() < 1e-12);

    RepPtr rot = rotation_rep(cyclic_group(5));
    Matrix avg2 = rot->conjugate_average(random_hermitian(2, rng));
    for (int a = 0; a < 5; ++a)
        REQUIRE((rot->matrix(a) * avg2 - avg2 * rot->matrix(a)).norm() < 1e-12);
}

TEST_CASE("tensor with trivial ancilla", "[rep]") {
    GroupPtr g = cyclic_group(3);
    RepPtr rep = regular_representation(g);
    RepPtr big = tensor_with_trivial(rep, 2);
    REQUIRE(big->dim() == 6);
    REQUIRE(big->is_permutation());
    for (int a = 0; a < 3; ++a)
        REQUIRE(std::abs(big->trace(a) - 2.0 * rep->trace(a)) < 1e-13);

    RepPtr rot = tensor_with_trivial(rotation_rep(g), 3);
    REQUIRE(rot->dim() == 6);
    REQUIRE_FALSE(rot->is_permutation());
    Character chi = character_of(*rot);
    REQUIRE(chi.dim == 6);

    REQUIRE_THROWS_AS(tensor_with_trivial(rep, 0), InvalidParameter);
    REQUIRE_THROWS_AS(tensor_with_trivial(regular_representation(cyclic_group(120)), 7),
                      CapExceeded);
}

TEST_CASE("character inner products count multiplicities", "[rep]") {
    GroupPtr g = symmetric_group(3);
    RepPtr reg = regular_representation(g);
    Character chi_reg = character_of(*reg);
    Character trivial;
    trivial.dim = 1;
    trivial.values.assign(g->classes().count(), cplx(1.0, 0.0));
    // the regular representation contains the trivial irrep exactly once
    REQUIRE(std::abs(character_inner(*g, chi_reg, trivial) - cplx(1.0, 0.0)) < 1e-12);
    // <chi_reg, chi_reg> = |G|
    REQUIRE(std::abs(character_inner(*g, chi_reg, chi_reg) - cplx(6.0, 0.0)) < 1e-12);
}

TEST_CASE("characters of small representations", "[rep]") {
    GroupPtr g = symmetric_group(3);
    // parity action of S_3 on two points: odd permutations swap them
    std::vector<std::vector<int>> perms(6);
    for (int a = 0; a < 6; ++a) {
        int parity = (a == 1 || a == 2 || a == 5) ? 1 : 0;
        perms[a] = parity ? std::vector<int>{1, 0} : std::vector<int>{0, 1};
    }
    RepPtr sign_like = UnitaryRep::from_permutations(g, perms, "parity");
    Character chi = character_of(*sign_like);
    REQUIRE(chi.dim == 2);
    // trace 0 on the transposition class, 2 on the 3-cycle class
    REQUIRE(std::abs(chi.values[1]) < 1e-12);
    REQUIRE(std::abs(chi.values[2] - cplx(2.0, 0.0)) < 1e-12);

    GroupPtr z6 = cyclic_group(6);
    std::vector<Matrix> mats(6);
    for (int a = 0; a < 6; ++a) {
        double t = 2.0 * pi * a / 6.0;
        Matrix m(1, 1);
        m(0, 0) = cplx(std::cos(t), std::sin(t));
        mats[a] = m;
    }
    Character phase = character_of(*UnitaryRep::from_matrices(z6, mats, "phase"));
    REQUIRE(phase.values.size() == 6);
    REQUIRE(std::abs(phase.values[3] - cplx(-1.0, 0.0)) < 1e-12);
}

TEST_CASE("abstract action out of range is caught", "[rep]") {
    GroupPtr g = cyclic_group(2);
    REQUIRE_THROWS_AS(
        permutation_representation(g, [](int, int p) { return p + 1; }, 2, "bad"),
        NotAnAction);
}
