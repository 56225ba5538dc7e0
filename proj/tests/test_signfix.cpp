#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "permres/catalog.hpp"
#include "permres/koszul.hpp"
#include "permres/signfix.hpp"

using namespace permres;

TEST_CASE("rectify_odd: C3 signed cycle") {
    auto c3 = catalog_group("C3");
    RingSpec z = RingSpec::integers();
    // generator: e1 -> -e2, e2 -> -e3, e3 -> e1
    SignedGSet cert;
    cert.size = 3;
    cert.perm = {{1, 2, 0}};
    cert.sign = {{-1, -1, 1}};
    Matrix a(z, 3, 3);
    a.set(1, 0, int64_t(-1));
    a.set(2, 1, int64_t(-1));
    a.set(0, 2, int64_t(1));
    RGModule m = make_module(c3, z, 3, {a}, cert);
    Rectified r = rectify_odd(m);
    CHECK(r.module.is_permutation_certified());
    // conjugation identity: D rho D = perm
    for (size_t gi = 0; gi < m.action.size(); ++gi)
        CHECK(r.change_of_basis * m.action[gi] * r.change_of_basis == r.module.action[gi]);
    // g^3 = 1 on the rectified module too
    Matrix g3 = r.module.action[0] * r.module.action[0] * r.module.action[0];
    CHECK(g3 == Matrix::identity(z, 3));
}

TEST_CASE("rectify: already-permutation input unchanged") {
    auto c3 = catalog_group("C3");
    RGModule f = free_module(c3, RingSpec::integers(), 1);
    Rectified r = rectify_odd(f);
    CHECK(r.change_of_basis == Matrix::identity(RingSpec::integers(), 3));
    CHECK(r.module.action == f.action);
}

TEST_CASE("rectify koszul terms for odd p-groups") {
    for (const char* name : {"C3", "C5", "C3xC3"}) {
        auto g = catalog_group(name);
        ChainComplex kos = koszul(g, RingSpec::integers());
        for (int d = kos.lo; d <= kos.hi; ++d) {
            auto r = rectify_lines(kos.term(d));
            REQUIRE(r.has_value());
            CHECK(r->module.is_permutation_certified());
        }
    }
}

TEST_CASE("rectify_lines refuses the C2 sign module") {
    auto c2 = catalog_group("C2");
    RGModule l = sign_module(c2, trivial_subgroup(c2), RingSpec::integers());
    CHECK(!rectify_lines(l).has_value());
}

TEST_CASE("split_even: the sign module itself") {
    auto c2 = catalog_group("C2");
    RingSpec z = RingSpec::integers();
    auto h = trivial_subgroup(c2);
    RGModule l = sign_module(c2, h, z);
    int g_out = 1;  // the non-identity element
    EvenSplit sp = split_even(l, h, g_out);
    CHECK(sp.mplus.rank == 0);
    CHECK(sp.mminus.rank == 1);
    CHECK(sp.mminus.is_trivial_certified());  // M- = L (x) L = R
}

TEST_CASE("split_even: sign-free module keeps everything in the plus part") {
    auto c4 = catalog_group("C4");
    auto h = index2_normal_subgroups(c4)[0];
    RGModule f = free_module(c4, RingSpec::integers(), 1);
    int g_out = -1;
    for (int e = 0; e < c4->order(); ++e)
        if (!h.contains(e)) {
            g_out = e;
            break;
        }
    EvenSplit sp = split_even(f, h, g_out);
    CHECK(sp.mplus.rank == 4);
    CHECK(sp.mminus.rank == 0);
}

TEST_CASE("split_even: C4 rank-2 all-minus part") {
    auto c4 = catalog_group("C4");
    RingSpec z = RingSpec::integers();
    SignedGSet cert;
    cert.size = 2;
    cert.perm = {{1, 0}};
    cert.sign = {{-1, -1}};  // e1 -> -e2, e2 -> -e1; squares act without signs
    Matrix a(z, 2, 2);
    a.set(1, 0, int64_t(-1));
    a.set(0, 1, int64_t(-1));
    RGModule m = make_module(c4, z, 2, {a}, cert);
    auto h = index2_normal_subgroups(c4)[0];
    int g_out = c4->index_of(c4->generators[0]);
    EvenSplit sp = split_even(m, h, g_out);
    CHECK(sp.mplus.rank == 0);
    CHECK(sp.mminus.rank == 2);
    // iso witness invertible and equivariant onto M+ (+) (L (x) M-)
    CHECK(is_invertible(sp.iso));
    RGModule rhs = direct_sum_modules(
        sp.mplus, [&] {
            // L (x) M-: toggle signs of mminus outside H
            RGModule lm = sp.mminus;
            SignedGSet c2 = *lm.monomial;
            std::vector<Matrix> act;
            for (size_t gi = 0; gi < lm.action.size(); ++gi) {
                int ge = c4->index_of(c4->generators[gi]);
                if (!h.contains(ge)) {
                    for (auto& s : c2.sign[gi]) s = -s;
                }
                Matrix mm(z, lm.rank, lm.rank);
                for (int x = 0; x < lm.rank; ++x)
                    mm.set(c2.perm[gi][x], x, int64_t(c2.sign[gi][x]));
                act.push_back(mm);
            }
            return make_module(c4, z, lm.rank, act, c2);
        }());
    CHECK(is_equivariant(m, rhs, sp.iso));
}

TEST_CASE("split_even rejects subgroups acting with signs") {
    auto c4 = catalog_group("C4");
    RingSpec z = RingSpec::integers();
    // e1 -> e2 -> -e1: the square acts by -1 on both points
    SignedGSet cert;
    cert.size = 2;
    cert.perm = {{1, 0}};
    cert.sign = {{1, -1}};
    Matrix a(z, 2, 2);
    a.set(1, 0, int64_t(1));
    a.set(0, 1, int64_t(-1));
    RGModule m = make_module(c4, z, 2, {a}, cert);
    auto h = index2_normal_subgroups(c4)[0];
    int g_out = c4->index_of(c4->generators[0]);
    CHECK_THROWS_AS(split_even(m, h, g_out), Error);
}

TEST_CASE("certify_p_permutation: monomial over odd p") {
    auto c3 = catalog_group("C3");
    RingSpec k = RingSpec::gf(3);
    // signed 3-cycle becomes permutation over the sylow (= whole group)
    SignedGSet cert;
    cert.size = 3;
    cert.perm = {{1, 2, 0}};
    cert.sign = {{-1, -1, 1}};
    Matrix a(k, 3, 3);
    a.set(1, 0, int64_t(-1));
    a.set(2, 1, int64_t(-1));
    a.set(0, 2, int64_t(1));
    RGModule m = make_module(c3, k, 3, {a}, cert);
    PPermCert c = certify_p_permutation(m);
    CHECK(c.certified);
}

TEST_CASE("certify_p_permutation: trivial module over GF(2)C2") {
    auto c2 = catalog_group("C2");
    RGModule m = trivial_module(c2, RingSpec::gf(2));
    PPermCert c = certify_p_permutation(m);
    REQUIRE(c.certified);
    REQUIRE(c.sylow_decomposition.size() == 1);
    CHECK(c.sylow_decomposition[0] == std::pair<int, int>{2, 1});  // k(C2/C2)
    // a module without a permutation certificate gets the summand certificate
    RGModule raw = make_module(c2, RingSpec::gf(2), 1, m.action);
    RGModule withcert = with_pperm_certificate(raw);
    CHECK(withcert.summand.has_value());
}

TEST_CASE("certify_p_permutation: all modules over GF(3)C2 (order prime to p)") {
    auto c2 = catalog_group("C2");
    RingSpec k = RingSpec::gf(3);
    // the sign module and the free module and the trivial one
    for (RGModule m : {sign_module(c2, trivial_subgroup(c2), k), free_module(c2, k, 1),
                       trivial_module(c2, k, 2)}) {
        PPermCert c = certify_p_permutation(m);
        CHECK(c.certified);
    }
}

TEST_CASE("certify_p_permutation refuses a non-p-permutation module") {
    // J2 over GF(3)C3 is not p-permutation (not a summand of permutation)
    auto c3 = catalog_group("C3");
    RingSpec k = RingSpec::gf(3);
    Matrix j(k, 2, 2);
    j.set(0, 0, int64_t(1));
    j.set(0, 1, int64_t(1));
    j.set(1, 1, int64_t(1));
    RGModule j2 = make_module(c3, k, 2, {j});
    PPermCert c = certify_p_permutation(j2);
    CHECK(!c.certified);
}
