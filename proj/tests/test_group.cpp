#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include <symdisc/symdisc.hpp>

using namespace symdisc;

namespace {

// independent conjugacy scan used to cross-check the eager partition
std::vector<std::vector<int>> brute_classes(const FiniteGroup& g) {
    int n = g.order();
    std::vector<int> cls(n, -1);
    std::vector<std::vector<int>> out;
    for (int x = 0; x < n; ++x) {
        if (cls[x] >= 0) continue;
        std::set<int> orbit;
        for (int a = 0; a < n; ++a) orbit.insert(g.multiply(g.multiply(a, x), g.inverse(a)));
        std::vector<int> members(orbit.begin(), orbit.end());
        for (int y : members) cls[y] = static_cast<int>(out.size());
        out.push_back(members);
    }
    return out;
}

std::vector<int> brute_center(const FiniteGroup& g) {
    std::vector<int> out;
    for (int x = 0; x < g.order(); ++x) {
        bool commutes = true;
        for (int a = 0; a < g.order(); ++a)
            commutes = commutes && g.multiply(x, a) == g.multiply(a, x);
        if (commutes) out.push_back(x);
    }
    return out;
}

int label_index(const FiniteGroup& g, const std::string& label) {
    for (int i = 0; i < g.order(); ++i)
        if (g.label(i) == label) return i;
    FAIL("label not found: " << label);
    return -1;
}

}  // namespace

TEST_CASE("cyclic group arithmetic", "[group]") {
    GroupPtr g = cyclic_group(6);
    REQUIRE(g->order() == 6);
    REQUIRE(g->identity() == 0);
    REQUIRE(g->is_abelian());
    REQUIRE(g->multiply(4, 5) == 3);
    REQUIRE(g->inverse(1) == 5);
    REQUIRE(g->inverse(0) == 0);
    REQUIRE(g->classes().count() == 6);
    REQUIRE(g->center().size() == 6);
}

TEST_CASE("cyclic group rejects nonpositive size", "[group]") {
    REQUIRE_THROWS_AS(cyclic_group(0), InvalidParameter);
    REQUIRE_THROWS_AS(cyclic_group(-3), InvalidParameter);
}

TEST_CASE("trivial group is allowed", "[group]") {
    GroupPtr g = cyclic_group(1);
    REQUIRE(g->order() == 1);
    REQUIRE(g->classes().count() == 1);
}

TEST_CASE("dihedral group relations", "[group]") {
    GroupPtr g = dihedral_group(4);
    REQUIRE(g->order() == 8);
    REQUIRE_FALSE(g->is_abelian());
    // s r s = r^{-1}
    int r = label_index(*g, "r1");
    int s = label_index(*g, "sr0");
    REQUIRE(g->multiply(g->multiply(s, r), s) == g->inverse(r));
    // center of D_4 is {e, r^2}
    std::vector<int> expected{label_index(*g, "r0"), label_index(*g, "r2")};
    std::sort(expected.begin(), expected.end());
    REQUIRE(g->center() == expected);
    REQUIRE(g->classes().count() == 5);
}

TEST_CASE("dihedral class sizes", "[group]") {
    GroupPtr g = dihedral_group(3);
    std::vector<int> sizes;
    for (int c = 0; c < g->classes().count(); ++c) sizes.push_back(g->classes().size(c));
    REQUIRE(sizes == std::vector<int>{1, 2, 3});

    GroupPtr g5 = dihedral_group(5);
    sizes.clear();
    for (int c = 0; c < g5->classes().count(); ++c) sizes.push_back(g5->classes().size(c));
    REQUIRE(sizes == std::vector<int>{1, 2, 2, 5});
}

TEST_CASE("symmetric group composition applies the right factor first", "[group]") {
    GroupPtr g = symmetric_group(3);
    REQUIRE(g->order() == 6);
    int a = label_index(*g, "102");
    int b = label_index(*g, "021");
    // (102) after (021): 0 -> 0 -> 1, 1 -> 2 -> 2, 2 -> 1 -> 0
    REQUIRE(g->multiply(a, b) == label_index(*g, "120"));
    REQUIRE(g->inverse(label_index(*g, "120")) == label_index(*g, "201"));
    std::vector<int> sizes;
    for (int c = 0; c < g->classes().count(); ++c) sizes.push_back(g->classes().size(c));
    REQUIRE(sizes == std::vector<int>{1, 3, 2});
}

TEST_CASE("symmetric group degree is capped", "[group]") {
    REQUIRE_THROWS_AS(symmetric_group(7), CapExceeded);
    REQUIRE_THROWS_AS(symmetric_group(0), InvalidParameter);
}

TEST_CASE("conjugacy partition matches a brute-force scan", "[group]") {
    for (const GroupPtr& g : {symmetric_group(4), dihedral_group(6), cyclic_group(8)}) {
        auto expected = brute_classes(*g);
        REQUIRE(g->classes().classes == expected);
        for (int c = 0; c < g->classes().count(); ++c)
            for (int member : g->classes().classes[c])
                REQUIRE(g->classes().class_of[member] == c);
    }
}

TEST_CASE("center matches a brute-force scan", "[group]") {
    for (const GroupPtr& g : {symmetric_group(4), dihedral_group(4), dihedral_group(5)})
        REQUIRE(g->center() == brute_center(*g));
}

TEST_CASE("direct product indexing", "[group]") {
    GroupPtr g = direct_product(cyclic_group(2), cyclic_group(3));
    REQUIRE(g->order() == 6);
    REQUIRE(g->is_abelian());
    REQUIRE(g->label(5) == "(1,2)");
    // (1,1) * (1,2) = (0,0)
    REQUIRE(g->multiply(1 * 3 + 1, 1 * 3 + 2) == 0);

    GroupPtr h = direct_product(symmetric_group(3), cyclic_group(2));
    REQUIRE(h->order() == 12);
    REQUIRE_FALSE(h->is_abelian());
}

TEST_CASE("xor group is elementary abelian", "[group]") {
    GroupPtr g = xor_group(3);
    REQUIRE(g->order() == 8);
    REQUIRE(g->is_abelian());
    for (int a = 0; a < 8; ++a) REQUIRE(g->inverse(a) == a);
    // little-endian bit labels
    REQUIRE(g->label(1) == "100");
    REQUIRE(g->label(4) == "001");
    REQUIRE(g->multiply(5, 3) == 6);
}

TEST_CASE("table with a left identity only is rejected", "[group]") {
    // rows are cyclic shifts; row 0 acts as identity on the left but no
    // element fixes everything from the right
    std::vector<std::vector<int>> t{{0, 1, 2}, {2, 0, 1}, {1, 2, 0}};
    REQUIRE_THROWS_AS(FiniteGroup::from_cayley(t), NoIdentity);
}

TEST_CASE("loop without two-sided inverses is rejected", "[group]") {
    // element 2 has right inverse 3 and left inverse 4, but no two-sided one
    std::vector<std::vector<int>> t{{0, 1, 2, 3, 4},
                                    {1, 0, 3, 4, 2},
                                    {2, 3, 4, 0, 1},
                                    {3, 4, 1, 2, 0},
                                    {4, 2, 0, 1, 3}};
    REQUIRE_THROWS_AS(FiniteGroup::from_cayley(t), NotInvertible);
}

TEST_CASE("non-associative quasigroup is rejected", "[group]") {
    // Z_6 with the 2x2 intercalate at rows {1,4} x cols {1,4} flipped:
    // still Latin with identity 0 and two-sided inverses, but (1 1) 2 != 1 (1 2)
    std::vector<std::vector<int>> t{{0, 1, 2, 3, 4, 5}, {1, 5, 3, 4, 2, 0},
                                    {2, 3, 4, 5, 0, 1}, {3, 4, 5, 0, 1, 2},
                                    {4, 2, 0, 1, 5, 3}, {5, 0, 1, 2, 3, 4}};
    REQUIRE_THROWS_AS(FiniteGroup::from_cayley(t), NotAssociative);
}

TEST_CASE("malformed tables are rejected before any group theory runs", "[group]") {
    REQUIRE_THROWS_AS(FiniteGroup::from_cayley({}), MalformedTable);
    REQUIRE_THROWS_AS(FiniteGroup::from_cayley({{0, 1}, {1}}), MalformedTable);
    REQUIRE_THROWS_AS(FiniteGroup::from_cayley({{0, 2}, {1, 0}}), MalformedTable);
    REQUIRE_THROWS_AS(FiniteGroup::from_cayley({{0, 0}, {1, 1}}), MalformedTable);
    REQUIRE_THROWS_AS(FiniteGroup::from_cayley({{0, 1}, {1, 0}}, {"only-one"}),
                      MalformedTable);
}

TEST_CASE("group spec grammar", "[group]") {
    GroupSpec spec = parse_group_spec("cyclic:12");
    REQUIRE(spec.kind == GroupSpec::Kind::cyclic);
    REQUIRE(spec.parameter == 12);

    spec = parse_group_spec("dihedral:7");
    REQUIRE(spec.kind == GroupSpec::Kind::dihedral);
    REQUIRE(spec.parameter == 7);

    spec = parse_group_spec("product:cyclic:2,dihedral:3");
    REQUIRE(spec.kind == GroupSpec::Kind::product);
    REQUIRE(spec.factors.size() == 2);
    REQUIRE(spec.factors[0].kind == GroupSpec::Kind::cyclic);
    REQUIRE(spec.factors[1].kind == GroupSpec::Kind::dihedral);
    REQUIRE(spec.factors[1].parameter == 3);

    spec = parse_group_spec("product:file:/tmp/a.json,cyclic:2");
    REQUIRE(spec.factors[0].kind == GroupSpec::Kind::file);
    REQUIRE(spec.factors[0].path == "/tmp/a.json");

    // nested product on the right
    spec = parse_group_spec("product:cyclic:2,product:cyclic:2,cyclic:2");
    REQUIRE(spec.factors[1].kind == GroupSpec::Kind::product);
    REQUIRE(spec.text == "product:cyclic:2,product:cyclic:2,cyclic:2");
}

TEST_CASE("group spec errors", "[group]") {
    REQUIRE_THROWS_AS(parse_group_spec("cyclic"), UsageError);
    REQUIRE_THROWS_AS(parse_group_spec("cyclic:"), UsageError);
    REQUIRE_THROWS_AS(parse_group_spec("frobnicate:2"), UsageError);
    REQUIRE_THROWS_AS(parse_group_spec("cyclic:3x"), UsageError);
    REQUIRE_THROWS_AS(parse_group_spec("product:cyclic:2"), UsageError);
    REQUIRE_THROWS_AS(parse_group_spec("file:"), UsageError);
    REQUIRE_THROWS_AS(parse_group_spec(""), UsageError);
}
