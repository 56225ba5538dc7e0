#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "permres/catalog.hpp"
#include "permres/complex.hpp"
#include "permres/koszul.hpp"

using namespace permres;

static ChainComplex interval_complex(const GroupPtr& g, RingSpec ring, int at) {
    // 0 -> R ->(1) R -> 0 in degrees at+1, at
    RGModule r = trivial_module(g, ring);
    return make_complex(g, ring, at, {r, r}, {Matrix::identity(ring, 1)});
}

TEST_CASE("single module complex validates") {
    auto c2 = catalog_group("C2");
    RGModule m = free_module(c2, RingSpec::gf(2), 1);
    ChainComplex c = one_term_complex(m);
    CHECK(validate(c).ok);
    HomologyReport h = homology(c);
    CHECK(h.free_rank[0] == 2);
}

TEST_CASE("d^2 != 0 is rejected") {
    auto c2 = catalog_group("C2");
    RingSpec k = RingSpec::gf(2);
    RGModule t = trivial_module(c2, k);
    Matrix one = Matrix::identity(k, 1);
    CHECK_THROWS_AS(make_complex(c2, k, 0, {t, t, t}, {one, one}), Error);
}

TEST_CASE("koszul C2 over Z: terms, homology, exactness") {
    auto c2 = catalog_group("C2");
    ChainComplex kos = koszul(c2, RingSpec::integers());
    CHECK(kos.ranks() == std::vector<int>{1, 2, 1});
    CHECK(validate(kos).ok);
    // d1 = (1 1)
    CHECK(kos.diff(1).get(0, 0) == 1);
    CHECK(kos.diff(1).get(0, 1) == 1);
    // generator acts on Lambda^2 by -1
    CHECK(kos.term(2).action[0].get(0, 0) == -1);
    // fully exact (H_0 = coker d1 = 0): the resolution view has H_0 = Z
    HomologyReport h = homology(kos);
    CHECK(h.is_zero());
}

TEST_CASE("koszul C3 over GF(3) acyclic with augmentation H0 = k") {
    auto c3 = catalog_group("C3");
    ChainComplex kos = koszul(c3, RingSpec::gf(3));
    CHECK(kos.ranks() == std::vector<int>{1, 3, 3, 1});
    HomologyReport h = homology(kos);
    CHECK(h.is_zero());  // exact everywhere; degree-0 term is the resolved copy of k
    CHECK(kos.term(0).is_trivial_certified());
    CHECK(kos.term(1).is_free_certified());
}

TEST_CASE("cone of identity is acyclic") {
    auto c2 = catalog_group("C2");
    RingSpec k = RingSpec::gf(2);
    ChainComplex x = interval_complex(c2, k, 0);
    auto xp = std::make_shared<ChainComplex>(x);
    std::map<int, Matrix> comp;
    for (int d = 0; d <= 1; ++d) comp[d] = Matrix::identity(k, 1);
    ChainMap idmap = make_chain_map(xp, xp, comp);
    ChainComplex cn = cone(idmap);
    CHECK(homology(cn).is_zero());
    CHECK(is_quasi_iso(idmap));
}

TEST_CASE("cone of zero map is the direct sum with a shift") {
    auto c2 = catalog_group("C2");
    RingSpec k = RingSpec::gf(2);
    ChainComplex x = one_term_complex(trivial_module(c2, k), 0);
    ChainComplex y = one_term_complex(free_module(c2, k, 1), 0);
    ChainMap zero{std::make_shared<ChainComplex>(x), std::make_shared<ChainComplex>(y), {}};
    ChainComplex cn = cone(zero);
    CHECK(cn.lo == 0);
    CHECK(cn.hi == 1);
    CHECK(cn.term(0).rank == 2);
    CHECK(cn.term(1).rank == 1);
    CHECK(cn.diff(1).is_zero());
}

TEST_CASE("0 -> R -> R -> 0 is acyclic; homology of Z-complexes sees torsion") {
    auto c2 = catalog_group("C2");
    ChainComplex c = interval_complex(c2, RingSpec::integers(), 0);
    CHECK(homology(c).is_zero());

    // 0 -> Z ->(2) Z -> 0 has H_0 = Z/2
    RGModule t = trivial_module(c2, RingSpec::integers());
    Matrix two(RingSpec::integers(), 1, 1);
    two.set(0, 0, int64_t(2));
    ChainComplex tz = make_complex(c2, RingSpec::integers(), 0, {t, t}, {two});
    HomologyReport h = homology(tz);
    CHECK(h.free_rank[0] == 0);
    REQUIRE(h.torsion[0].size() == 1);
    CHECK(h.torsion[0][0] == 2);
    CHECK(h.free_rank[1] == 0);
}

TEST_CASE("tensor of complexes: unit and Koszul squares") {
    auto c2 = catalog_group("C2");
    RingSpec z = RingSpec::integers();
    ChainComplex kos = koszul(c2, z);
    ChainComplex unit = one_term_complex(trivial_module(c2, z), 0);
    ChainComplex t = tensor_complexes(kos, unit);
    CHECK(t.ranks() == kos.ranks());
    for (int s = 1; s <= t.hi; ++s) CHECK(t.diff(s) == kos.diff(s));

    ChainComplex sq = tensor_complexes(kos, kos);
    CHECK(sq.ranks() == std::vector<int>{1, 4, 6, 4, 1});
    CHECK(validate(sq).ok);
    CHECK(homology(sq).is_zero());  // Kos (x) Kos stays exact
}

TEST_CASE("tensor swap carries the sign (-1)^{ab}") {
    auto c2 = catalog_group("C2");
    RingSpec z = RingSpec::integers();
    ChainComplex kos = koszul(c2, z);
    ChainComplex sq = tensor_complexes(kos, kos);
    auto sp = std::make_shared<ChainComplex>(sq);
    // swap: block (a,b) -> block (b,a) with sign (-1)^{ab}
    std::map<int, Matrix> comp;
    for (int s = sq.lo; s <= sq.hi; ++s) {
        Matrix m(z, sq.term_rank(s), sq.term_rank(s));
        for (int a = std::min(kos.hi, s - kos.lo); a >= std::max(kos.lo, s - kos.hi); --a) {
            int b = s - a;
            int ra = kos.term_rank(a), rb = kos.term_rank(b);
            if (ra == 0 || rb == 0) continue;
            int src = tensor_block_offset(kos, kos, s, a);
            int dst = tensor_block_offset(kos, kos, s, b);
            int sign = (a % 2 != 0 && b % 2 != 0) ? -1 : 1;
            for (int i = 0; i < ra; ++i)
                for (int j = 0; j < rb; ++j)
                    m.set(dst + j * ra + i, src + i * rb + j, int64_t(sign));
        }
        comp[s] = m;
    }
    ChainMap swap = make_chain_map(sp, sp, comp);  // throws if not a chain map
    CHECK(is_chain_map(swap));
}

TEST_CASE("tensor associativity up to the canonical reindexing") {
    auto c2 = catalog_group("C2");
    RingSpec k = RingSpec::gf(3);
    ChainComplex a = koszul(c2, k);
    ChainComplex ab = tensor_complexes(a, a);
    ChainComplex left = tensor_complexes(ab, a);
    ChainComplex right = tensor_complexes(a, ab);
    REQUIRE(left.ranks() == right.ranks());

    // position of basis triple (x,y,z ; i,j,l) in each bracketing
    auto left_pos = [&](int s, int x, int y, int z, int i, int j, int l) {
        int rz = a.term_rank(z), ry = a.term_rank(y);
        return tensor_block_offset(ab, a, s, x + y) + tensor_block_offset(a, a, x + y, x) * rz +
               (i * ry + j) * rz + l;
    };
    auto right_pos = [&](int s, int x, int y, int z, int i, int j, int l) {
        int rz = a.term_rank(z), ry = a.term_rank(y);
        int inner = ab.term_rank(s - x);
        return tensor_block_offset(a, ab, s, x) * 1 + i * inner +
               tensor_block_offset(a, a, s - x, y) + j * rz + l;
    };
    std::vector<Matrix> perms;  // per degree s - left.lo
    for (int s = left.lo; s <= left.hi; ++s) {
        Matrix p(k, left.term_rank(s), left.term_rank(s));
        for (int x = a.hi; x >= a.lo; --x)
            for (int y = a.hi; y >= a.lo; --y) {
                int z = s - x - y;
                if (z < a.lo || z > a.hi) continue;
                int rx = a.term_rank(x), ry = a.term_rank(y), rz = a.term_rank(z);
                if (rx == 0 || ry == 0 || rz == 0) continue;
                for (int i = 0; i < rx; ++i)
                    for (int j = 0; j < ry; ++j)
                        for (int l = 0; l < rz; ++l)
                            p.set(right_pos(s, x, y, z, i, j, l), left_pos(s, x, y, z, i, j, l),
                                  int64_t(1));
            }
        perms.push_back(std::move(p));
    }
    for (int s = left.lo + 1; s <= left.hi; ++s) {
        const Matrix& ps = perms[size_t(s - left.lo)];
        const Matrix& pprev = perms[size_t(s - 1 - left.lo)];
        CHECK(pprev * left.diff(s) == right.diff(s) * ps);
    }
    CHECK(homology(left).is_zero());
}

TEST_CASE("simplify_complex shrinks contractible pairs and preserves homology") {
    auto c2 = catalog_group("C2");
    RingSpec z = RingSpec::integers();
    ChainComplex kos = koszul(c2, z);
    // direct sum with a contractible piece 0 -> kC2 -> kC2 -> 0
    RGModule f = free_module(c2, z, 1);
    ChainComplex contractible =
        make_complex(c2, z, 1, {f, f}, {Matrix::identity(z, 2)});
    ChainComplex big = direct_sum_complexes(kos, contractible);
    HomologyReport before = homology(big);
    simplify_complex(big, {0});
    CHECK(homology(big).is_zero());
    CHECK(before.is_zero());
    // the contractible pair is gone
    CHECK(big.term_rank(1) <= 4);
    CHECK(validate(big).ok);
}

TEST_CASE("normalize_zero_free: untouched when already normalized") {
    auto c2 = catalog_group("C2");
    ChainComplex kos = koszul(c2, RingSpec::gf(2));
    ChainComplex n = normalize_zero_free(kos, 0);
    CHECK(n.ranks() == kos.ranks());
}

TEST_CASE("normalize_zero_free: interval resolving zero collapses") {
    auto c2 = catalog_group("C2");
    RingSpec k = RingSpec::gf(2);
    RGModule f = free_module(c2, k, 1);
    ChainComplex c = make_complex(c2, k, -1, {f, f}, {Matrix::identity(k, 2)});
    ChainComplex n = normalize_zero_free(c, 0);
    bool trivial = n.empty();
    for (int d = n.lo; d <= n.hi; ++d)
        if (n.term_rank(d) != 0) trivial = false;
    CHECK(trivial);
}

TEST_CASE("normalize_zero_free: shifted junk removed, homology preserved") {
    auto c2 = catalog_group("C2");
    RingSpec k = RingSpec::gf(2);
    ChainComplex kos = koszul(c2, k);
    RGModule f = free_module(c2, k, 1);
    ChainComplex junk = make_complex(c2, k, -2, {f, f}, {Matrix::identity(k, 2)});
    ChainComplex big = direct_sum_complexes(kos, junk);
    ChainComplex n = normalize_zero_free(big, 0, 7);
    CHECK(n.lo >= 0);
    HomologyReport h = homology(n);
    CHECK(h.is_zero());
    CHECK(validate(n).ok);
    for (int d = n.lo; d <= n.hi; ++d)
        if (d <= 0) CHECK((n.term_rank(d) == 0 || n.term(d).is_free_certified()));
}

TEST_CASE("lift through quasi-iso: identity target on a free complex") {
    auto c2 = catalog_group("C2");
    RingSpec k = RingSpec::gf(2);
    RGModule f2 = free_module(c2, k, 1);
    Matrix norm(k, 2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) norm.set(i, j, int64_t(1));
    ChainComplex x = make_complex(c2, k, 0, {f2, f2}, {norm});
    auto xp = std::make_shared<ChainComplex>(x);
    std::map<int, Matrix> idc;
    for (int d = x.lo; d <= x.hi; ++d) idc[d] = Matrix::identity(k, x.term_rank(d));
    ChainMap s = make_chain_map(xp, xp, idc);
    ChainMap f = make_chain_map(xp, xp, idc);
    LiftResult lr = lift_through_quasi_iso(f, s, x.hi);
    // s o fhat - f = dh + hd degreewise
    for (int d = x.lo; d <= x.hi; ++d) {
        Matrix lhs = s.component(d) * lr.fhat.component(d) - f.component(d);
        Matrix h = lr.homotopy.count(d) ? lr.homotopy.at(d)
                                        : Matrix(k, x.term_rank(d + 1), x.term_rank(d));
        Matrix hprev = lr.homotopy.count(d - 1)
                           ? lr.homotopy.at(d - 1)
                           : Matrix(k, x.term_rank(d), x.term_rank(d - 1));
        Matrix rhs = x.diff(d + 1) * h + hprev * x.diff(d);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("lift through quasi-iso: resolution against augmentation") {
    // P = koszul(C2, GF(2)) truncated to degrees >= 1, X = k[0]; s: P0-part -> X
    auto c2 = catalog_group("C2");
    RingSpec k = RingSpec::gf(2);
    ChainComplex kos = koszul(c2, k);
    // spliced resolution: degrees 1..2 shifted down to 0..1, augmentation d1
    std::vector<RGModule> terms{kos.term(1), kos.term(2)};
    std::vector<Matrix> diffs{kos.diff(2)};
    ChainComplex p = make_complex(c2, k, 0, terms, diffs);
    ChainComplex x = one_term_complex(trivial_module(c2, k), 0);
    auto pp = std::make_shared<ChainComplex>(p);
    auto xp = std::make_shared<ChainComplex>(x);
    ChainMap s = make_chain_map(xp, xp, {{0, Matrix::identity(k, 1)}});
    ChainMap f = make_chain_map(pp, xp, {{0, kos.diff(1)}});
    LiftResult lr = lift_through_quasi_iso(f, s, 0);
    CHECK(is_chain_map(lr.fhat));
}

TEST_CASE("hom_mod_homotopy basics over GF(2)C2") {
    auto c2 = catalog_group("C2");
    RingSpec k = RingSpec::gf(2);
    ChainComplex kk = one_term_complex(trivial_module(c2, k), 0);
    CHECK(hom_mod_homotopy(kk, kk).dim == 1);  // End(k) = k

    ChainComplex k1 = one_term_complex(trivial_module(c2, k), 1);
    CHECK(hom_mod_homotopy(kk, k1).dim == 0);  // disjoint degrees

    ChainComplex ff = one_term_complex(free_module(c2, k, 1), 0);
    CHECK(hom_mod_homotopy(ff, ff).dim == 2);  // End(kC2) = kC2
}
