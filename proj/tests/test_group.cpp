#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "permres/catalog.hpp"
#include "permres/group.hpp"

using namespace permres;

TEST_CASE("enumerate cyclic and small groups") {
    CHECK(catalog_group("C4")->order() == 4);
    CHECK(catalog_group("V4")->order() == 4);
    CHECK(catalog_group("S3")->order() == 6);
    CHECK(catalog_group("Q8")->order() == 8);
    CHECK(catalog_group("D8")->order() == 8);
    CHECK(catalog_group("A4")->order() == 12);
    CHECK(catalog_group("C3xC3")->order() == 9);
    CHECK(catalog_group("C2xC4")->order() == 8);
    CHECK(catalog_group("C2^3")->order() == 8);
    CHECK(catalog_group("1")->order() == 1);
}

TEST_CASE("enumeration is deterministic and identity-first") {
    auto g1 = catalog_group("S3");
    auto g2 = catalog_group("S3");
    CHECK(g1->elements == g2->elements);
    CHECK(g1->elements[0] == perm_identity(3));
    // multiplication table consistent with composition
    for (int i = 0; i < g1->order(); ++i)
        for (int j = 0; j < g1->order(); ++j) {
            Perm p = perm_compose(g1->elements[i], g1->elements[j]);
            CHECK(g1->elements[g1->multiply(i, j)] == p);
        }
    // words evaluate to their elements
    for (int e = 0; e < g1->order(); ++e) {
        Perm p = perm_identity(3);
        for (int gi : g1->words[e]) p = perm_compose(p, g1->generators[gi]);
        CHECK(p == g1->elements[e]);
    }
}

TEST_CASE("malformed permutation rejected") {
    CHECK_THROWS_AS(enumerate_group(3, {{0, 0, 1}}), Error);
}

TEST_CASE("Q8 relations") {
    auto q8 = catalog_group("Q8");
    REQUIRE(q8->order() == 8);
    int i = q8->index_of(q8->generators[0]);
    int j = q8->index_of(q8->generators[1]);
    int i2 = q8->multiply(i, i);
    int j2 = q8->multiply(j, j);
    CHECK(i2 == j2);              // i^2 = j^2
    CHECK(i2 != 0);               // of order 2
    CHECK(q8->multiply(i2, i2) == 0);
    // j i j^-1 = i^-1
    int conj = q8->multiply(q8->multiply(j, i), q8->inverse[j]);
    CHECK(conj == q8->inverse[i]);
}

TEST_CASE("subgroups of C2 and V4") {
    CHECK(subgroups(catalog_group("C2"), false).size() == 2);
    CHECK(subgroups(catalog_group("V4"), false).size() == 5);
}

TEST_CASE("subgroup classes of S3") {
    auto reps = subgroups(catalog_group("S3"), true);
    REQUIRE(reps.size() == 4);
    CHECK(reps[0].order() == 1);
    CHECK(reps[1].order() == 2);
    CHECK(reps[2].order() == 3);
    CHECK(reps[3].order() == 6);
}

TEST_CASE("subgroup cap") {
    CHECK_THROWS_AS(subgroups(catalog_group("S3"), false, 4), Error);
}

TEST_CASE("sylow subgroups") {
    auto s3 = catalog_group("S3");
    CHECK(sylow(s3, 3).order() == 3);
    CHECK(sylow(s3, 2).order() == 2);
    CHECK(sylow(catalog_group("C4"), 3).order() == 1);
    auto a4 = catalog_group("A4");
    CHECK(sylow(a4, 2).order() == 4);
    CHECK(sylow(a4, 3).order() == 3);
}

TEST_CASE("index-2 subgroups") {
    auto c4 = catalog_group("C4");
    auto l4 = index2_normal_subgroups(c4);
    REQUIRE(l4.size() == 1);
    // the subgroup of squares
    CHECK(l4[0].order() == 2);

    CHECK(index2_normal_subgroups(catalog_group("V4")).size() == 3);
    CHECK(index2_normal_subgroups(catalog_group("C3")).empty());
    CHECK(index2_normal_subgroups(catalog_group("A4")).empty());
    for (const auto& h : index2_normal_subgroups(catalog_group("D8"))) CHECK(is_normal(h));
    CHECK(index2_normal_subgroups(catalog_group("D8")).size() == 3);
    CHECK(index2_normal_subgroups(catalog_group("Q8")).size() == 3);
}

TEST_CASE("index-2 subgroups exist for nontrivial 2-groups up to order 16") {
    for (const char* name : {"C2", "C4", "V4", "C8", "C2xC4", "C2^3", "D8", "Q8"}) {
        auto g = catalog_group(name);
        CHECK(!index2_normal_subgroups(g).empty());
    }
}

TEST_CASE("coset actions") {
    auto s3 = catalog_group("S3");
    auto c3 = sylow(s3, 3);
    auto [tr, act] = coset_action(s3, c3);
    REQUIRE(act.size == 2);
    CHECK(tr.representatives[0] == 0);
    // the transposition generator swaps the two cosets, the 3-cycle fixes them
    CHECK(act.action[0] == Perm{1, 0});
    CHECK(act.action[1] == Perm{0, 1});

    auto c4 = catalog_group("C4");
    auto h = index2_normal_subgroups(c4)[0];
    auto [tr2, act2] = coset_action(c4, h);
    CHECK(act2.size == 2);
    CHECK(act2.action[0] == Perm{1, 0});

    auto [tr3, act3] = coset_action(s3, full_subgroup(s3));
    CHECK(act3.size == 1);
}

TEST_CASE("coset action is transitive with stabilizer conjugate to H") {
    auto d8 = catalog_group("D8");
    for (const auto& h : subgroups(d8, true)) {
        auto [tr, act] = coset_action(d8, h);
        CHECK(int(tr.representatives.size()) * h.order() == d8->order());
        auto orbits = point_orbits(act.size, act.action);
        CHECK(orbits.size() == 1);
        // stabilizer of the identity coset is H itself
        std::vector<int> stab;
        for (int e = 0; e < d8->order(); ++e) {
            int img = 0;
            for (auto it = d8->words[e].rbegin(); it != d8->words[e].rend(); ++it)
                img = act.action[*it][img];
            if (img == 0) stab.push_back(e);
        }
        CHECK(stab == h.members);
    }
}

TEST_CASE("quotient group and subgroup-as-group") {
    auto c4 = catalog_group("C4");
    auto h = index2_normal_subgroups(c4)[0];
    auto q = quotient_group(c4, h);
    CHECK(q.group->order() == 2);
    auto sg = subgroup_as_group(h);
    CHECK(sg.group->order() == 2);
    CHECK(sg.to_parent[0] == 0);
}
