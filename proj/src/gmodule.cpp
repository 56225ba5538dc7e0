#include "permres/gmodule.hpp"

#include <algorithm>

namespace permres {

uint64_t Rng::next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

int64_t Rng::below(int64_t n) { return n <= 0 ? 0 : int64_t(next() % uint64_t(n)); }

bool SignedGSet::sign_free() const {
    for (const auto& sv : sign)
        for (int s : sv)
            if (s != 1) return false;
    return true;
}

static Matrix monomial_matrix(RingSpec ring, const std::vector<int>& perm,
                              const std::vector<int>& sign) {
    Matrix m(ring, int(perm.size()), int(perm.size()));
    for (size_t x = 0; x < perm.size(); ++x) m.set(perm[x], int(x), int64_t(sign[x]));
    return m;
}

bool RGModule::is_free_certified() const {
    if (!is_permutation_certified()) return false;
    if (rank == 0) return true;
    auto orbits = point_orbits(monomial->size, monomial->perm);
    // regular orbits: size |G| and trivial point stabilizers
    for (const auto& orb : orbits) {
        if (int(orb.size()) != group->order()) return false;
        // stabilizer check: distinct elements move a base point differently
        int base = orb[0];
        std::vector<bool> hit(monomial->size, false);
        for (int e = 0; e < group->order(); ++e) {
            int x = base;
            // apply element via word
            for (auto it = group->words[e].rbegin(); it != group->words[e].rend(); ++it)
                x = monomial->perm[*it][x];
            if (hit[x]) return false;
            hit[x] = true;
        }
    }
    return true;
}

bool RGModule::is_trivial_certified() const {
    for (const auto& a : action)
        if (a != Matrix::identity(ring, rank)) return false;
    return true;
}

bool RGModule::is_projective_certified() const {
    if (is_free_certified()) return true;
    if (summand && summand->ambient->is_free_certified()) return true;
    return false;
}

Matrix RGModule::element_action(int elem_index) const {
    Matrix m = Matrix::identity(ring, rank);
    for (int gi : group->words[elem_index]) m = m * action[gi];
    return m;
}

// signed-permutation composition: (a after b)
static void compose_signed(const std::vector<int>& pa, const std::vector<int>& sa,
                           const std::vector<int>& pb, const std::vector<int>& sb,
                           std::vector<int>& pc, std::vector<int>& sc) {
    size_t n = pb.size();
    pc.resize(n);
    sc.resize(n);
    for (size_t x = 0; x < n; ++x) {
        pc[x] = pa[pb[x]];
        sc[x] = sa[pb[x]] * sb[x];
    }
}

static void check_monomial_matches(const RGModule& m) {
    const auto& cert = *m.monomial;
    if (cert.size != m.rank || int(cert.perm.size()) != int(m.group->generators.size()))
        throw Error("monomial certificate: shape mismatch");
    for (size_t gi = 0; gi < m.action.size(); ++gi) {
        Matrix expect = monomial_matrix(m.ring, cert.perm[gi], cert.sign[gi]);
        if (!(expect == m.action[gi])) throw Error("monomial certificate: matrix mismatch");
    }
    // relations on the signed-permutation level
    const auto& g = *m.group;
    std::vector<std::vector<int>> eperm(g.order()), esign(g.order());
    for (int e = 0; e < g.order(); ++e) {
        std::vector<int> p(m.rank), s(m.rank, 1);
        for (int x = 0; x < m.rank; ++x) p[x] = x;
        for (int gi : g.words[e]) {
            std::vector<int> p2, s2;
            compose_signed(p, s, cert.perm[gi], cert.sign[gi], p2, s2);
            // word is left-to-right product: rho(word) = rho(w0) rho(w1) ...
            // fold as accumulated * next
            p = p2;
            s = s2;
        }
        eperm[e] = p;
        esign[e] = s;
    }
    for (int e = 0; e < g.order(); ++e)
        for (size_t gi = 0; gi < g.generators.size(); ++gi) {
            int ge = g.index_of(g.generators[gi]);
            int prod = g.multiply(ge, e);
            std::vector<int> p2, s2;
            compose_signed(cert.perm[gi], cert.sign[gi], eperm[e], esign[e], p2, s2);
            if (p2 != eperm[prod] || s2 != esign[prod])
                throw Error("monomial certificate: group relations violated");
        }
}

static constexpr int kFullRelationCheckRank = 256;

static void check_relations_dense(const RGModule& m) {
    const auto& g = *m.group;
    std::vector<Matrix> elem(g.order());
    for (int e = 0; e < g.order(); ++e) elem[e] = m.element_action(e);
    for (int e = 0; e < g.order(); ++e)
        for (size_t gi = 0; gi < g.generators.size(); ++gi) {
            int ge = g.index_of(g.generators[gi]);
            int prod = g.multiply(ge, e);
            if (!(m.action[gi] * elem[e] == elem[prod]))
                throw Error("make_module: group relations violated");
        }
}

static void check_summand(const RGModule& m) {
    const auto& c = *m.summand;
    if (!c.ambient->is_permutation_certified())
        throw Error("summand certificate: ambient not permutation-certified");
    if (c.embed.rows() != c.ambient->rank || c.embed.cols() != m.rank ||
        c.project.rows() != m.rank || c.project.cols() != c.ambient->rank)
        throw Error("summand certificate: shape mismatch");
    if (!(c.project * c.embed == Matrix::identity(m.ring, m.rank)))
        throw Error("summand certificate: project*embed != id");
    if (!(c.idempotent == c.embed * c.project))
        throw Error("summand certificate: idempotent mismatch");
    if (!(c.idempotent * c.idempotent == c.idempotent))
        throw Error("summand certificate: not idempotent");
    if (!is_equivariant(m, *c.ambient, c.embed))
        throw Error("summand certificate: embedding not equivariant");
    if (!is_equivariant(*c.ambient, m, c.project))
        throw Error("summand certificate: projection not equivariant");
}

RGModule make_module(GroupPtr g, RingSpec ring, int rank, std::vector<Matrix> action,
                     std::optional<SignedGSet> monomial, std::optional<SummandCert> summand) {
    if (int(action.size()) != int(g->generators.size()))
        throw Error("make_module: one action matrix per generator required");
    for (const auto& a : action) {
        if (a.ring() != ring || a.rows() != rank || a.cols() != rank)
            throw Error("make_module: bad action matrix shape/ring");
        if (!is_invertible(a)) throw Error("make_module: action matrix not invertible");
    }
    RGModule m;
    m.group = std::move(g);
    m.ring = ring;
    m.rank = rank;
    m.action = std::move(action);
    m.monomial = std::move(monomial);
    m.summand = std::move(summand);
    if (m.monomial && ring.is_field() && ring.p == 2)
        for (auto& sv : m.monomial->sign) sv.assign(sv.size(), 1);  // -1 = 1 in GF(2)
    if (m.monomial)
        check_monomial_matches(m);
    else if (rank <= kFullRelationCheckRank)
        check_relations_dense(m);
    if (m.summand) check_summand(m);
    return m;
}

bool is_equivariant(const RGModule& src, const RGModule& tgt, const Matrix& m) {
    for (size_t gi = 0; gi < src.action.size(); ++gi)
        if (!(tgt.action[gi] * m == m * src.action[gi])) return false;
    return true;
}

ModuleMap make_map(ModulePtr src, ModulePtr tgt, Matrix m) {
    if (src->ring != tgt->ring) throw Error("make_map: ring mismatch");
    if (m.rows() != tgt->rank || m.cols() != src->rank) throw Error("make_map: shape mismatch");
    if (!is_equivariant(*src, *tgt, m)) throw Error("make_map: not equivariant");
    return ModuleMap{std::move(src), std::move(tgt), std::move(m)};
}

// --- constructions ---------------------------------------------------------

RGModule linearize(const GroupPtr& g, const GSet& a, RingSpec ring) {
    SignedGSet cert;
    cert.size = a.size;
    cert.perm = a.action;
    cert.sign.assign(a.action.size(), std::vector<int>(a.size, 1));
    std::vector<Matrix> action;
    for (size_t gi = 0; gi < a.action.size(); ++gi)
        action.push_back(monomial_matrix(ring, cert.perm[gi], cert.sign[gi]));
    return make_module(g, ring, a.size, std::move(action), cert);
}

RGModule free_module(const GroupPtr& g, RingSpec ring, int r) {
    if (r < 0) throw Error("free_module: negative rank");
    // r disjoint regular orbits; point (copy i, element e) at index i*|G| + e
    GSet a;
    int n = g->order();
    a.size = r * n;
    for (size_t gi = 0; gi < g->generators.size(); ++gi) {
        int ge = g->index_of(g->generators[gi]);
        std::vector<int> act(a.size);
        for (int i = 0; i < r; ++i)
            for (int e = 0; e < n; ++e) act[i * n + e] = i * n + g->multiply(ge, e);
        a.action.push_back(std::move(act));
    }
    return linearize(g, a, ring);
}

RGModule trivial_module(const GroupPtr& g, RingSpec ring, int r) {
    GSet a;
    a.size = r;
    a.action.assign(g->generators.size(), perm_identity(r));
    return linearize(g, a, ring);
}

RGModule zero_module(const GroupPtr& g, RingSpec ring) { return trivial_module(g, ring, 0); }

RGModule sign_module(const GroupPtr& g, const Subgroup& h, RingSpec ring) {
    if (2 * h.order() != g->order()) throw Error("sign_module: subgroup not of index 2");
    SignedGSet cert;
    cert.size = 1;
    std::vector<Matrix> action;
    for (const auto& gen : g->generators) {
        int gi = g->index_of(gen);
        int s = h.contains(gi) ? 1 : -1;
        cert.perm.push_back({0});
        cert.sign.push_back({s});
        action.push_back(monomial_matrix(ring, {0}, {s}));
    }
    return make_module(g, ring, 1, std::move(action), cert);
}

RGModule tensor(const RGModule& m, const RGModule& n) {
    if (m.ring != n.ring) throw Error("tensor: ring mismatch");
    if (m.group != n.group) throw Error("tensor: group mismatch");
    std::vector<Matrix> action;
    for (size_t gi = 0; gi < m.action.size(); ++gi) action.push_back(m.action[gi].kron(n.action[gi]));
    std::optional<SignedGSet> cert;
    if (m.monomial && n.monomial) {
        SignedGSet c;
        c.size = m.rank * n.rank;
        for (size_t gi = 0; gi < m.action.size(); ++gi) {
            std::vector<int> p(c.size), s(c.size);
            for (int i = 0; i < m.rank; ++i)
                for (int j = 0; j < n.rank; ++j) {
                    p[i * n.rank + j] =
                        m.monomial->perm[gi][i] * n.rank + n.monomial->perm[gi][j];
                    s[i * n.rank + j] = m.monomial->sign[gi][i] * n.monomial->sign[gi][j];
                }
            c.perm.push_back(std::move(p));
            c.sign.push_back(std::move(s));
        }
        cert = std::move(c);
    }
    return make_module(m.group, m.ring, m.rank * n.rank, std::move(action), std::move(cert));
}

RGModule direct_sum_modules(const RGModule& m, const RGModule& n) {
    if (m.ring != n.ring || m.group != n.group) throw Error("direct_sum_modules: mismatch");
    std::vector<Matrix> action;
    for (size_t gi = 0; gi < m.action.size(); ++gi)
        action.push_back(direct_sum(m.action[gi], n.action[gi]));
    std::optional<SignedGSet> cert;
    if (m.monomial && n.monomial) {
        SignedGSet c;
        c.size = m.rank + n.rank;
        for (size_t gi = 0; gi < m.action.size(); ++gi) {
            std::vector<int> p(c.size), s(c.size);
            for (int i = 0; i < m.rank; ++i) {
                p[i] = m.monomial->perm[gi][i];
                s[i] = m.monomial->sign[gi][i];
            }
            for (int j = 0; j < n.rank; ++j) {
                p[m.rank + j] = m.rank + n.monomial->perm[gi][j];
                s[m.rank + j] = n.monomial->sign[gi][j];
            }
            c.perm.push_back(std::move(p));
            c.sign.push_back(std::move(s));
        }
        cert = std::move(c);
    }
    return make_module(m.group, m.ring, m.rank + n.rank, std::move(action), std::move(cert));
}

RGModule restrict_module(const RGModule& m, const SubgroupGroup& h) {
    std::vector<Matrix> action;
    std::optional<SignedGSet> cert;
    // the H-generators are parent elements; compose the parent's matrices
    std::vector<int> gen_parent;
    for (const auto& gen : h.group->generators)
        gen_parent.push_back(m.group->index_of(gen));
    for (int pe : gen_parent) action.push_back(m.element_action(pe));
    if (m.monomial) {
        SignedGSet c;
        c.size = m.rank;
        for (int pe : gen_parent) {
            std::vector<int> p(m.rank), s(m.rank, 1);
            for (int x = 0; x < m.rank; ++x) p[x] = x;
            for (int gi : m.group->words[pe]) {
                std::vector<int> p2, s2;
                compose_signed(p, s, m.monomial->perm[gi], m.monomial->sign[gi], p2, s2);
                p = p2;
                s = s2;
            }
            c.perm.push_back(std::move(p));
            c.sign.push_back(std::move(s));
        }
        cert = std::move(c);
    }
    return make_module(h.group, m.ring, m.rank, std::move(action), std::move(cert));
}

RGModule induce_module(const RGModule& n, const GroupPtr& g, const Transversal& tr,
                       const SubgroupGroup& h) {
    const int k = int(tr.representatives.size());
    const int r = n.rank;
    // basis (coset block i, basis j) at i*r + j; g.rep_i = rep_{sigma(i)} . h_i
    std::vector<Matrix> action;
    std::optional<SignedGSet> cert;
    bool monomial_ok = n.monomial.has_value();
    SignedGSet c;
    if (monomial_ok) c.size = k * r;
    for (const auto& gen : g->generators) {
        int ge = g->index_of(gen);
        Matrix a(n.ring, k * r, k * r);
        std::vector<int> p(k * r), s(k * r, 1);
        for (int i = 0; i < k; ++i) {
            int moved = g->multiply(ge, tr.representatives[i]);
            // find target coset and h-component
            int tgt = -1, hcomp = -1;
            for (int t = 0; t < k; ++t) {
                int cand = g->multiply(g->inverse[tr.representatives[t]], moved);
                if (tr.subgroup.contains(cand)) {
                    tgt = t;
                    hcomp = cand;
                    break;
                }
            }
            if (tgt < 0) throw Error("induce_module: transversal failure");
            // h-component acts via its index inside the subgroup's own group
            int hidx = -1;
            for (int e = 0; e < h.group->order(); ++e)
                if (h.to_parent[e] == hcomp) {
                    hidx = e;
                    break;
                }
            if (hidx < 0) throw Error("induce_module: h-component not in subgroup");
            Matrix block = n.element_action(hidx);
            a.set_block(tgt * r, i * r, block);
            if (monomial_ok) {
                // signed perm of the h-component
                std::vector<int> hp(r), hs(r, 1);
                for (int x = 0; x < r; ++x) hp[x] = x;
                for (int gi : h.group->words[hidx]) {
                    std::vector<int> p2, s2;
                    compose_signed(hp, hs, n.monomial->perm[gi], n.monomial->sign[gi], p2, s2);
                    hp = p2;
                    hs = s2;
                }
                for (int x = 0; x < r; ++x) {
                    p[i * r + x] = tgt * r + hp[x];
                    s[i * r + x] = hs[x];
                }
            }
        }
        action.push_back(std::move(a));
        if (monomial_ok) {
            c.perm.push_back(std::move(p));
            c.sign.push_back(std::move(s));
        }
    }
    if (monomial_ok) cert = std::move(c);
    return make_module(g, n.ring, k * r, std::move(action), std::move(cert));
}

RGModule inflate_module(const RGModule& m_over_q, const GroupPtr& g, const QuotientData& q) {
    if (m_over_q.group != q.group) throw Error("inflate_module: module not over the quotient");
    std::vector<Matrix> action;
    std::optional<SignedGSet> cert;
    bool monomial_ok = m_over_q.monomial.has_value();
    SignedGSet c;
    if (monomial_ok) c.size = m_over_q.rank;
    for (size_t gi = 0; gi < g->generators.size(); ++gi) {
        int img = q.generator_images[gi];
        action.push_back(m_over_q.element_action(img));
        if (monomial_ok) {
            std::vector<int> p(m_over_q.rank), s(m_over_q.rank, 1);
            for (int x = 0; x < m_over_q.rank; ++x) p[x] = x;
            for (int ql : q.group->words[img]) {
                std::vector<int> p2, s2;
                compose_signed(p, s, m_over_q.monomial->perm[ql], m_over_q.monomial->sign[ql], p2,
                               s2);
                p = p2;
                s = s2;
            }
            c.perm.push_back(std::move(p));
            c.sign.push_back(std::move(s));
        }
    }
    if (monomial_ok) cert = std::move(c);
    return make_module(g, m_over_q.ring, m_over_q.rank, std::move(action), std::move(cert));
}

OmegaResult omega(const RGModule& m) {
    if (!m.ring.is_field()) throw Error("omega: field coefficients required");
    const auto& g = m.group;
    const int n = g->order(), r = m.rank;
    RGModule f = free_module(g, m.ring, r);
    // untwisted basis b_{e,i} at index i*n + e; cover b_{e,i} -> rho(e) e_i
    Matrix cov(m.ring, r, r * n);
    for (int e = 0; e < n; ++e) {
        Matrix re = m.element_action(e);
        for (int i = 0; i < r; ++i)
            for (int row = 0; row < r; ++row) cov.set(row, i * n + e, re.get(row, i));
    }
    auto fptr = std::make_shared<RGModule>(f);
    auto mptr = std::make_shared<RGModule>(m);
    ModuleMap cover = make_map(fptr, mptr, cov);
    Matrix k = kernel_field(cov);
    // induced action on the kernel: solve K X_g = rho_F(g) K
    std::vector<Matrix> action;
    for (size_t gi = 0; gi < g->generators.size(); ++gi) {
        auto x = solve_field(k, f.action[gi] * k);
        if (!x) throw Error("omega: kernel not invariant");
        action.push_back(*x);
    }
    RGModule om = make_module(g, m.ring, k.cols(), std::move(action));
    ModuleMap emb = make_map(std::make_shared<RGModule>(om), fptr, k);
    return OmegaResult{std::move(om), std::move(f), std::move(emb), std::move(cover)};
}

FixedPoints fixed_points(const RGModule& m, const SubgroupGroup& h) {
    // stack (rho(h_gen) - I) and take the kernel
    Matrix stack(m.ring, 0, m.rank);
    bool any = false;
    for (const auto& gen : h.group->generators) {
        int pe = m.group->index_of(gen);
        Matrix d = m.element_action(pe) - Matrix::identity(m.ring, m.rank);
        stack = any ? stack.vstack(d) : d;
        any = true;
    }
    if (!any) return FixedPoints{m.rank, Matrix::identity(m.ring, m.rank)};
    Matrix k = kernel_any(stack);
    return FixedPoints{k.cols(), k};
}

Matrix hom_space(const RGModule& m, const RGModule& n) {
    if (!m.ring.is_field()) throw Error("hom_space: field coefficients required");
    if (m.ring != n.ring || m.group != n.group) throw Error("hom_space: mismatch");
    // X rho_M(g) = rho_N(g) X; vec column-major: (rho_M^T (x) I - I (x) rho_N) vec X = 0
    Matrix stack(m.ring, 0, m.rank * n.rank);
    bool any = false;
    Matrix idn = Matrix::identity(m.ring, n.rank);
    Matrix idm = Matrix::identity(m.ring, m.rank);
    for (size_t gi = 0; gi < m.action.size(); ++gi) {
        Matrix a = m.action[gi].transpose().kron(idn) - idm.kron(n.action[gi]);
        stack = any ? stack.vstack(a) : a;
        any = true;
    }
    if (!any) return Matrix::identity(m.ring, m.rank * n.rank);
    return kernel_field(stack);
}

Matrix unvec(const Matrix& column, int rows, int cols, RingSpec ring) {
    Matrix x(ring, rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) x.set(i, j, column.get(j * rows + i, 0));
    return x;
}

std::optional<Matrix> iso_search(const RGModule& m, const RGModule& n, uint64_t seed,
                                 int attempts) {
    if (m.rank != n.rank) return std::nullopt;
    Matrix basis = hom_space(m, n);
    if (basis.cols() == 0) return m.rank == 0 ? std::optional<Matrix>(Matrix(m.ring, 0, 0))
                                              : std::nullopt;
    // try basis elements first, then seeded random combinations
    for (int j = 0; j < basis.cols(); ++j) {
        Matrix x = unvec(basis.column(j), n.rank, m.rank, m.ring);
        if (is_invertible(x)) return x;
    }
    Rng rng(seed);
    for (int t = 0; t < attempts; ++t) {
        Matrix combo(m.ring, m.rank * n.rank, 1);
        for (int j = 0; j < basis.cols(); ++j) {
            int64_t c = rng.below(m.ring.p);
            if (c != 0) combo = combo + basis.column(j).scale(Int(c));
        }
        Matrix x = unvec(combo, n.rank, m.rank, m.ring);
        if (is_invertible(x)) return x;
    }
    return std::nullopt;
}

}  // namespace permres
