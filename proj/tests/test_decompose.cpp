#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include <symdisc/symdisc.hpp>

using namespace symdisc;

namespace {

constexpr double pi = 3.14159265358979323846;

Character dft_character(const FiniteGroup& g, int j) {
    // character a -> exp(2 pi i j a / k) of Z_k; classes are singletons
    Character chi;
    chi.dim = 1;
    int k = g.order();
    for (int a = 0; a < k; ++a) {
        double t = 2.0 * pi * j * a / k;
        chi.values.emplace_back(std::cos(t), std::sin(t));
    }
    return chi;
}

int find_isotype(const IsotypicDecomposition& dec, const Character& chi) {
    for (int i = 0; i < static_cast<int>(dec.isotypes.size()); ++i)
        if (dec.isotypes[i].character.matches(chi)) return i;
    return -1;
}

int find_row(const CharacterTable& table, const Character& chi) {
    for (int i = 0; i < table.count(); ++i)
        if (table.rows[i].matches(chi)) return i;
    return -1;
}

Character make_character(std::vector<cplx> values) {
    Character chi;
    chi.dim = static_cast<int>(std::lround(values[0].real()));
    chi.values = std::move(values);
    return chi;
}

// single-character representation of Z_k: a -> exp(2 pi i j a / k)
RepPtr phase_rep(const GroupPtr& g, int j) {
    std::vector<Matrix> mats(g->order());
    for (int a = 0; a < g->order(); ++a) {
        double t = 2.0 * pi * j * a / g->order();
        mats[a] = Matrix::Identity(1, 1) * cplx(std::cos(t), std::sin(t));
    }
    return UnitaryRep::from_matrices(g, std::move(mats), "phase");
}

void check_equivariance(const IsotypicDecomposition& dec) {
    const UnitaryRep& rep = *dec.rep;
    for (const auto& iso : dec.isotypes)
        for (const auto& alpha : iso.sections) {
            REQUIRE((alpha.adjoint() * alpha - Matrix::Identity(iso.irrep_dim, iso.irrep_dim))
                        .norm() < 1e-10);
            for (int g = 0; g < rep.group().order(); ++g)
                REQUIRE((rep.apply(g, alpha) - alpha * iso.model[g]).norm() < 1e-8);
        }
}

}  // namespace

TEST_CASE("cyclic regular representation splits into all characters", "[decompose]") {
    GroupPtr g = cyclic_group(3);
    auto dec = decompose(regular_representation(g));
    REQUIRE(dec.isotypes.size() == 3);
    REQUIRE(dec.total_dim() == 3);
    for (int j = 0; j < 3; ++j) {
        int at = find_isotype(dec, dft_character(*g, j));
        REQUIRE(at >= 0);
        REQUIRE(dec.isotypes[at].irrep_dim == 1);
        REQUIRE(dec.isotypes[at].multiplicity == 1);
    }
    check_equivariance(dec);
}

TEST_CASE("symmetric group regular decomposition", "[decompose]") {
    GroupPtr g = symmetric_group(3);
    auto dec = decompose(regular_representation(g));
    std::vector<int> dims, mults;
    for (const auto& iso : dec.isotypes) {
        dims.push_back(iso.irrep_dim);
        mults.push_back(iso.multiplicity);
    }
    REQUIRE(dims == std::vector<int>{1, 1, 2});
    REQUIRE(mults == dims);  // regular: multiplicity equals dimension
    REQUIRE(dec.residual_check < 1e-8);
    check_equivariance(dec);
}

TEST_CASE("dihedral regular decomposition", "[decompose]") {
    auto dec = decompose(regular_representation(dihedral_group(4)));
    std::vector<int> dims;
    for (const auto& iso : dec.isotypes) dims.push_back(iso.irrep_dim);
    REQUIRE(dims == std::vector<int>{1, 1, 1, 1, 2});
    check_equivariance(dec);
}

TEST_CASE("isotypes are sorted by dimension then snapped character", "[decompose]") {
    auto dec = decompose(regular_representation(symmetric_group(4)));
    REQUIRE(dec.isotypes.size() == 5);
    std::vector<int> dims;
    for (const auto& iso : dec.isotypes) dims.push_back(iso.irrep_dim);
    REQUIRE(dims == std::vector<int>{1, 1, 2, 3, 3});
    REQUIRE(std::is_sorted(dims.begin(), dims.end()));
}

TEST_CASE("ancilla copies are aligned to a common model", "[decompose]") {
    GroupPtr g = cyclic_group(3);
    RepPtr rep = tensor_with_trivial(regular_representation(g), 2);
    auto dec = decompose(rep);
    REQUIRE(dec.isotypes.size() == 3);
    for (const auto& iso : dec.isotypes) {
        REQUIRE(iso.multiplicity == 2);
        for (const auto& alpha : iso.sections)
            for (int a = 0; a < g->order(); ++a)
                REQUIRE((alpha.adjoint() * rep->apply(a, alpha) - iso.model[a]).norm() < 1e-9);
    }
    check_equivariance(dec);
}

TEST_CASE("conjugation representation of S_3 has a truncated isotype", "[decompose]") {
    GroupPtr g = symmetric_group(3);
    auto dec = decompose(conjugation_rep(g));
    Character trivial = make_character({1.0, 1.0, 1.0});
    Character sign = make_character({1.0, -1.0, 1.0});
    Character standard = make_character({2.0, 0.0, -1.0});
    REQUIRE(dec.isotypes[find_isotype(dec, trivial)].multiplicity == 3);
    REQUIRE(dec.isotypes[find_isotype(dec, sign)].multiplicity == 1);
    REQUIRE(dec.isotypes[find_isotype(dec, standard)].multiplicity == 1);
    check_equivariance(dec);
}

TEST_CASE("decomposition is deterministic for a fixed seed", "[decompose]") {
    RepPtr rep = regular_representation(dihedral_group(3));
    auto a = decompose(rep, 42);
    auto b = decompose(rep, 42);
    REQUIRE(a.isotypes.size() == b.isotypes.size());
    for (size_t k = 0; k < a.isotypes.size(); ++k)
        for (size_t i = 0; i < a.isotypes[k].sections.size(); ++i)
            REQUIRE((a.isotypes[k].sections[i] - b.isotypes[k].sections[i]).norm() == 0.0);
}

TEST_CASE("different seeds give the same invariant data", "[decompose]") {
    RepPtr rep = regular_representation(symmetric_group(3));
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        auto dec = decompose(rep, seed);
        std::vector<int> dims;
        for (const auto& iso : dec.isotypes) dims.push_back(iso.irrep_dim);
        REQUIRE(dims == std::vector<int>{1, 1, 2});
        check_equivariance(dec);
    }
}

TEST_CASE("character table matches the hand table of S_3", "[decompose]") {
    CharacterTable table = character_table(symmetric_group(3));
    REQUIRE(table.count() == 3);
    REQUIRE(find_row(table, make_character({1.0, 1.0, 1.0})) == table.trivial_row);
    REQUIRE(find_row(table, make_character({1.0, -1.0, 1.0})) >= 0);
    REQUIRE(find_row(table, make_character({2.0, 0.0, -1.0})) >= 0);
    REQUIRE(table.row_orthogonality_residual < 1e-10);
    REQUIRE(table.column_orthogonality_residual < 1e-10);
}

TEST_CASE("character table of Z_4 is the discrete Fourier basis", "[decompose]") {
    GroupPtr g = cyclic_group(4);
    CharacterTable table = character_table(g);
    REQUIRE(table.count() == 4);
    for (int j = 0; j < 4; ++j) REQUIRE(find_row(table, dft_character(*g, j)) >= 0);
}

TEST_CASE("character table of the trivial group", "[decompose]") {
    CharacterTable table = character_table(cyclic_group(1));
    REQUIRE(table.count() == 1);
    REQUIRE(table.trivial_row == 0);
}

TEST_CASE("character table dimensions square-sum to the order", "[decompose]") {
    for (const GroupPtr& g : {symmetric_group(4), dihedral_group(5),
                              direct_product(cyclic_group(2), cyclic_group(4))}) {
        CharacterTable table = character_table(g);
        REQUIRE(table.count() == g->classes().count());
        long sq = 0;
        for (const auto& row : table.rows) sq += static_cast<long>(row.dim) * row.dim;
        REQUIRE(sq == g->order());
    }
}

TEST_CASE("dual isotype lookup", "[decompose]") {
    GroupPtr g = cyclic_group(3);
    auto dec = decompose(regular_representation(g));
    int trivial = find_trivial_isotype(dec);
    REQUIRE(trivial >= 0);
    REQUIRE(dual_isotype_index(dec, trivial) == trivial);
    int omega = find_isotype(dec, dft_character(*g, 1));
    int omega_bar = find_isotype(dec, dft_character(*g, 2));
    REQUIRE(dual_isotype_index(dec, omega) == omega_bar);
    REQUIRE(dual_isotype_index(dec, omega_bar) == omega);
    REQUIRE_THROWS_AS(dual_isotype_index(dec, -1), InvalidIndex);
    REQUIRE_THROWS_AS(dual_isotype_index(dec, 3), InvalidIndex);
}

TEST_CASE("dual absent from a single-character representation", "[decompose]") {
    GroupPtr g = cyclic_group(3);
    auto dec = decompose(phase_rep(g, 1));
    REQUIRE(dec.isotypes.size() == 1);
    REQUIRE(find_trivial_isotype(dec) == -1);
    REQUIRE_THROWS_AS(dual_isotype_index(dec, 0), DualNotPresent);
}

TEST_CASE("complement restriction drops exactly one isotype", "[decompose]") {
    GroupPtr g = cyclic_group(3);
    auto dec = decompose(regular_representation(g));
    int trivial = find_trivial_isotype(dec);
    ComplementRestriction rest = complement_of_isotype(dec, trivial);
    REQUIRE(rest.rep->dim() == 2);
    REQUIRE(rest.decomposition.isotypes.size() == 2);
    REQUIRE(find_trivial_isotype(rest.decomposition) == -1);
    // embedding is an isometry intertwining the restriction with the parent
    REQUIRE((rest.embedding.adjoint() * rest.embedding - Matrix::Identity(2, 2)).norm() <
            1e-10);
    RepPtr parent = dec.rep;
    for (int a = 0; a < 3; ++a)
        REQUIRE((parent->apply(a, rest.embedding) - rest.embedding * rest.rep->matrix(a))
                    .norm() < 1e-9);
    check_equivariance(rest.decomposition);

    REQUIRE_THROWS_AS(complement_of_isotype(dec, 9), InvalidIndex);
    auto lone = decompose(phase_rep(g, 1));
    REQUIRE_THROWS_AS(complement_of_isotype(lone, 0), InvalidParameter);
}
