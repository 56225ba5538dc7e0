#include "permres/complex.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace permres {

Matrix ChainComplex::diff(int s) const {
    if (s > lo && s <= hi) return differentials[size_t(s - lo - 1)];
    return Matrix(ring, term_rank(s - 1), term_rank(s));
}

std::vector<int> ChainComplex::ranks() const {
    std::vector<int> r;
    for (int d = hi; d >= lo; --d) r.push_back(term(d).rank);
    return r;
}

ChainComplex make_complex(GroupPtr g, RingSpec ring, int lo, std::vector<RGModule> terms,
                          std::vector<Matrix> differentials) {
    ChainComplex c;
    c.group = std::move(g);
    c.ring = ring;
    c.lo = lo;
    c.hi = lo + int(terms.size()) - 1;
    c.terms = std::move(terms);
    c.differentials = std::move(differentials);
    if (!c.empty() && int(c.differentials.size()) != c.hi - c.lo)
        throw Error("make_complex: need one differential per adjacent pair");
    for (const auto& t : c.terms) {
        if (t.ring != ring) throw Error("make_complex: term ring mismatch");
        if (t.group != c.group) throw Error("make_complex: term group mismatch");
    }
    for (int s = c.lo + 1; s <= c.hi; ++s) {
        const Matrix& d = c.differentials[size_t(s - c.lo - 1)];
        if (d.rows() != c.term(s - 1).rank || d.cols() != c.term(s).rank)
            throw Error("make_complex: differential shape mismatch at degree " + std::to_string(s));
        if (!is_equivariant(c.term(s), c.term(s - 1), d))
            throw Error("make_complex: differential not equivariant at degree " +
                        std::to_string(s));
    }
    for (int s = c.lo + 2; s <= c.hi; ++s)
        if (!(c.diff(s - 1) * c.diff(s)).is_zero())
            throw Error("make_complex: d^2 != 0 at degree " + std::to_string(s));
    return c;
}

ChainComplex one_term_complex(const RGModule& m, int at) {
    return make_complex(m.group, m.ring, at, {m}, {});
}

Matrix ChainMap::component(int d) const {
    auto it = components.find(d);
    if (it != components.end()) return it->second;
    return Matrix(source->ring, target->term_rank(d), source->term_rank(d));
}

ChainMap make_chain_map(std::shared_ptr<const ChainComplex> src,
                        std::shared_ptr<const ChainComplex> tgt,
                        std::map<int, Matrix> components) {
    ChainMap f{std::move(src), std::move(tgt), std::move(components)};
    if (!is_chain_map(f)) throw Error("make_chain_map: does not commute with differentials");
    return f;
}

bool is_chain_map(const ChainMap& f) {
    const auto& x = *f.source;
    const auto& y = *f.target;
    for (auto& [d, m] : f.components) {
        if (m.rows() != y.term_rank(d) || m.cols() != x.term_rank(d)) return false;
        if (x.has_degree(d) && y.has_degree(d) &&
            !is_equivariant(x.term(d), y.term(d), m))
            return false;
    }
    int lo = std::min(x.lo, y.lo), hi = std::max(x.hi, y.hi);
    for (int s = lo; s <= hi + 1; ++s) {
        Matrix lhs = y.diff(s) * f.component(s);
        Matrix rhs = f.component(s - 1) * x.diff(s);
        if (!(lhs == rhs)) return false;
    }
    return true;
}

ValidationReport validate(const ChainComplex& c) {
    ValidationReport rep;
    for (int d = c.lo; d <= c.hi; ++d) {
        const RGModule& t = c.term(d);
        std::string kind = "general";
        if (t.is_free_certified())
            kind = "free";
        else if (t.is_permutation_certified())
            kind = "permutation";
        else if (t.has_monomial())
            kind = "monomial";
        else if (t.summand)
            kind = "summand";
        rep.certificate_kinds[d] = kind;
    }
    rep.m_free_index = c.lo - 1;
    for (int d = c.lo; d <= c.hi; ++d) {
        if (!c.term(d).is_free_certified() && c.term(d).rank > 0) break;
        rep.m_free_index = d;
    }
    for (int s = c.lo + 1; s <= c.hi; ++s) {
        if (!is_equivariant(c.term(s), c.term(s - 1), c.diff(s))) {
            rep.ok = false;
            rep.failing_degree = s;
            rep.message = "differential not equivariant";
            return rep;
        }
    }
    for (int s = c.lo + 2; s <= c.hi; ++s) {
        if (!(c.diff(s - 1) * c.diff(s)).is_zero()) {
            rep.ok = false;
            rep.failing_degree = s;
            rep.message = "d^2 != 0";
            return rep;
        }
    }
    return rep;
}

bool HomologyReport::is_zero() const {
    for (size_t i = 0; i < free_rank.size(); ++i) {
        if (free_rank[i] != 0) return false;
        if (i < torsion.size() && !torsion[i].empty()) return false;
    }
    return true;
}

bool HomologyReport::zero_in_positive_degrees() const {
    for (int d = std::max(lo, 1); d <= hi; ++d) {
        if (free_rank[size_t(d - lo)] != 0) return false;
        if (!torsion[size_t(d - lo)].empty()) return false;
    }
    return true;
}

std::string HomologyReport::str() const {
    std::ostringstream os;
    for (int d = hi; d >= lo; --d) {
        os << "H_" << d << " = ";
        int fr = free_rank[size_t(d - lo)];
        const auto& tor = torsion[size_t(d - lo)];
        if (fr == 0 && tor.empty()) {
            os << "0";
        } else {
            bool first = true;
            if (fr > 0) {
                os << (ring.is_field() ? "k^" : "Z^") << fr;
                first = false;
            }
            for (const auto& t : tor) {
                os << (first ? "" : " + ") << "Z/" << t.str();
                first = false;
            }
        }
        if (d > lo) os << ", ";
    }
    return os.str();
}

HomologyReport homology(const ChainComplex& c) {
    HomologyReport rep;
    rep.ring = c.ring;
    rep.lo = c.lo;
    rep.hi = c.hi;
    for (int d = c.lo; d <= c.hi; ++d) {
        Matrix dn = c.diff(d);       // out of degree d
        Matrix dn1 = c.diff(d + 1);  // into degree d
        if (c.ring.is_field()) {
            int kerdim = c.term(d).rank - rank_field(dn);
            int imdim = rank_field(dn1);
            rep.free_rank.push_back(kerdim - imdim);
            rep.torsion.push_back({});
        } else {
            int r_out = rank_integer(dn);
            auto factors = invariant_factors(dn1);
            int r_in = int(factors.size());
            rep.free_rank.push_back(c.term(d).rank - r_out - r_in);
            std::vector<Int> tor;
            for (const auto& f : factors)
                if (f > 1) tor.push_back(f);
            rep.torsion.push_back(tor);
        }
    }
    return rep;
}

bool exact_at(const ChainComplex& c, int degree) {
    HomologyReport h = homology(c);
    if (degree < h.lo || degree > h.hi) return true;
    return h.free_rank[size_t(degree - h.lo)] == 0 && h.torsion[size_t(degree - h.lo)].empty();
}

ChainComplex cone(const ChainMap& f) {
    const auto& x = *f.source;
    const auto& y = *f.target;
    if (x.ring != y.ring || x.group != y.group) throw Error("cone: mismatch");
    int lo = std::min(y.lo, x.lo + 1);
    int hi = std::max(y.hi, x.hi + 1);
    std::vector<RGModule> terms;
    std::vector<Matrix> diffs;
    auto term_at = [&](int d) -> RGModule {
        RGModule yd = y.has_degree(d) ? y.term(d) : zero_module(x.group, x.ring);
        RGModule xd1 = x.has_degree(d - 1) ? x.term(d - 1) : zero_module(x.group, x.ring);
        return direct_sum_modules(yd, xd1);
    };
    for (int d = lo; d <= hi; ++d) terms.push_back(term_at(d));
    for (int s = lo + 1; s <= hi; ++s) {
        int rows = terms[size_t(s - 1 - lo)].rank;
        int cols = terms[size_t(s - lo)].rank;
        Matrix m(x.ring, rows, cols);
        int yr = y.term_rank(s - 1);
        m.set_block(0, 0, y.diff(s));
        m.set_block(0, y.term_rank(s), f.component(s - 1));
        m.set_block(yr, y.term_rank(s), x.diff(s - 1).negate());
        diffs.push_back(std::move(m));
    }
    return make_complex(x.group, x.ring, lo, std::move(terms), std::move(diffs));
}

ChainComplex shift_complex(const ChainComplex& c, int k) {
    std::vector<Matrix> diffs = c.differentials;
    if (k % 2 != 0)
        for (auto& d : diffs) d = d.negate();
    return make_complex(c.group, c.ring, c.lo + k, c.terms, std::move(diffs));
}

ChainComplex direct_sum_complexes(const ChainComplex& a, const ChainComplex& b) {
    if (a.ring != b.ring || a.group != b.group) throw Error("direct_sum_complexes: mismatch");
    int lo = std::min(a.lo, b.lo), hi = std::max(a.hi, b.hi);
    std::vector<RGModule> terms;
    std::vector<Matrix> diffs;
    auto at = [&](const ChainComplex& c, int d) -> RGModule {
        return c.has_degree(d) ? c.term(d) : zero_module(a.group, a.ring);
    };
    for (int d = lo; d <= hi; ++d) terms.push_back(direct_sum_modules(at(a, d), at(b, d)));
    for (int s = lo + 1; s <= hi; ++s) diffs.push_back(direct_sum(a.diff(s), b.diff(s)));
    return make_complex(a.group, a.ring, lo, std::move(terms), std::move(diffs));
}

int tensor_block_offset(const ChainComplex& c, const ChainComplex& d, int s, int a) {
    int off = 0;
    for (int aa = std::min(c.hi, s - d.lo); aa >= std::max(c.lo, s - d.hi); --aa) {
        if (aa == a) return off;
        off += c.term_rank(aa) * d.term_rank(s - aa);
    }
    throw Error("tensor_block_offset: block not present");
}

ChainComplex tensor_complexes(const ChainComplex& c, const ChainComplex& d) {
    if (c.ring != d.ring || c.group != d.group) throw Error("tensor_complexes: ring mismatch");
    if (c.empty() || d.empty())
        return ChainComplex{c.group, c.ring, 0, -1, {}, {}};
    int lo = c.lo + d.lo, hi = c.hi + d.hi;
    std::vector<RGModule> terms;
    for (int s = lo; s <= hi; ++s) {
        RGModule acc = zero_module(c.group, c.ring);
        for (int a = std::min(c.hi, s - d.lo); a >= std::max(c.lo, s - d.hi); --a)
            acc = direct_sum_modules(acc, tensor(c.term(a), d.term(s - a)));
        terms.push_back(std::move(acc));
    }
    std::vector<Matrix> diffs;
    for (int s = lo + 1; s <= hi; ++s) {
        Matrix m(c.ring, terms[size_t(s - 1 - lo)].rank, terms[size_t(s - lo)].rank);
        for (int a = std::min(c.hi, s - d.lo); a >= std::max(c.lo, s - d.hi); --a) {
            int b = s - a;
            int src_off = tensor_block_offset(c, d, s, a);
            int ra = c.term_rank(a), rb = d.term_rank(b);
            if (ra == 0 || rb == 0) continue;
            // d_C part into block (a-1, b)
            if (a - 1 >= c.lo && c.term_rank(a - 1) > 0) {
                int dst = tensor_block_offset(c, d, s - 1, a - 1);
                Matrix blk = c.diff(a).kron(Matrix::identity(c.ring, rb));
                // add into place
                for (int i = 0; i < blk.rows(); ++i)
                    for (int j = 0; j < blk.cols(); ++j) {
                        Int v = blk.get(i, j);
                        if (v != 0) m.set(dst + i, src_off + j, m.get(dst + i, src_off + j) + v);
                    }
            }
            // (-1)^a id (x) d_D part into block (a, b-1)
            if (b - 1 >= d.lo && d.term_rank(b - 1) > 0) {
                int dst = tensor_block_offset(c, d, s - 1, a);
                Matrix blk = Matrix::identity(c.ring, ra).kron(d.diff(b));
                if (a % 2 != 0) blk = blk.negate();
                for (int i = 0; i < blk.rows(); ++i)
                    for (int j = 0; j < blk.cols(); ++j) {
                        Int v = blk.get(i, j);
                        if (v != 0) m.set(dst + i, src_off + j, m.get(dst + i, src_off + j) + v);
                    }
            }
        }
        diffs.push_back(std::move(m));
    }
    return make_complex(c.group, c.ring, lo, std::move(terms), std::move(diffs));
}

bool is_quasi_iso(const ChainMap& f) { return homology(cone(f)).is_zero(); }

// --- orbit-level Gaussian elimination ---------------------------------------

static std::vector<std::vector<int>> term_orbits(const RGModule& t) {
    if (!t.monomial) throw Error("simplify_complex: term without monomial certificate");
    return point_orbits(t.monomial->size, t.monomial->perm);
}

static RGModule restrict_to_points(const RGModule& t, const std::vector<int>& keep) {
    // keep must be a union of orbits
    std::vector<int> pos(t.rank, -1);
    for (size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = int(i);
    SignedGSet cert;
    cert.size = int(keep.size());
    for (size_t gi = 0; gi < t.monomial->perm.size(); ++gi) {
        std::vector<int> p(keep.size()), s(keep.size());
        for (size_t i = 0; i < keep.size(); ++i) {
            int img = t.monomial->perm[gi][keep[i]];
            if (pos[img] < 0) throw Error("restrict_to_points: set not action-stable");
            p[i] = pos[img];
            s[i] = t.monomial->sign[gi][keep[i]];
        }
        cert.perm.push_back(std::move(p));
        cert.sign.push_back(std::move(s));
    }
    std::vector<Matrix> action;
    for (size_t gi = 0; gi < cert.perm.size(); ++gi) {
        Matrix a(t.ring, cert.size, cert.size);
        for (int x = 0; x < cert.size; ++x) a.set(cert.perm[gi][x], x, int64_t(cert.sign[gi][x]));
        action.push_back(std::move(a));
    }
    return make_module(t.group, t.ring, cert.size, std::move(action), cert);
}

void simplify_complex(ChainComplex& c, const std::vector<int>& protect) {
    std::set<int> prot(protect.begin(), protect.end());
    bool changed = true;
    while (changed) {
        changed = false;
        for (int s = c.hi; s >= c.lo + 1 && !changed; --s) {
            if (prot.count(s) || prot.count(s - 1)) continue;
            if (c.term_rank(s) == 0 || c.term_rank(s - 1) == 0) continue;
            auto orb_s = term_orbits(c.term(s));
            auto orb_t = term_orbits(c.term(s - 1));
            Matrix d = c.diff(s);
            for (size_t oi = 0; oi < orb_s.size() && !changed; ++oi)
                for (size_t oj = 0; oj < orb_t.size() && !changed; ++oj) {
                    if (orb_s[oi].size() != orb_t[oj].size()) continue;
                    Matrix blk = d.submatrix(orb_t[oj], orb_s[oi]);
                    if (blk.is_zero() || !is_invertible(blk)) continue;
                    // cancel the pair (alpha = blk)
                    std::vector<int> keep_s, keep_t;
                    for (int x = 0; x < c.term_rank(s); ++x)
                        if (!std::binary_search(orb_s[oi].begin(), orb_s[oi].end(), x))
                            keep_s.push_back(x);
                    for (int x = 0; x < c.term_rank(s - 1); ++x)
                        if (!std::binary_search(orb_t[oj].begin(), orb_t[oj].end(), x))
                            keep_t.push_back(x);
                    Matrix beta = d.submatrix(orb_t[oj], keep_s);
                    Matrix gamma = d.submatrix(keep_t, orb_s[oi]);
                    Matrix delta = d.submatrix(keep_t, keep_s);
                    Matrix corrected = delta - gamma * inverse_any(blk) * beta;
                    // new terms
                    RGModule new_s = restrict_to_points(c.term(s), keep_s);
                    RGModule new_t = restrict_to_points(c.term(s - 1), keep_t);
                    // adjacent differentials
                    if (s + 1 <= c.hi) {
                        Matrix up = c.diff(s + 1).select_rows(keep_s);
                        c.differentials[size_t(s - c.lo)] = up;
                    }
                    c.differentials[size_t(s - 1 - c.lo)] = corrected;
                    if (s - 1 > c.lo) {
                        Matrix down = c.diff(s - 1).select_cols(keep_t);
                        c.differentials[size_t(s - 2 - c.lo)] = down;
                    }
                    c.term(s) = std::move(new_s);
                    c.term(s - 1) = std::move(new_t);
                    changed = true;
                }
        }
    }
    // drop zero terms at the ends
    while (c.hi > c.lo && c.term_rank(c.hi) == 0 && !prot.count(c.hi)) {
        c.terms.pop_back();
        c.differentials.pop_back();
        --c.hi;
    }
    while (c.lo < c.hi && c.term_rank(c.lo) == 0 && !prot.count(c.lo)) {
        c.terms.erase(c.terms.begin());
        c.differentials.erase(c.differentials.begin());
        ++c.lo;
    }
}

// --- normalization (zero terms below n) --------------------------------------

static RGModule module_on_kernel(const RGModule& ambient, const Matrix& kernel_basis) {
    std::vector<Matrix> action;
    for (size_t gi = 0; gi < ambient.action.size(); ++gi) {
        auto x = solve_any(kernel_basis, ambient.action[gi] * kernel_basis);
        if (!x) throw Error("module_on_kernel: subspace not invariant");
        action.push_back(*x);
    }
    return make_module(ambient.group, ambient.ring, kernel_basis.cols(), std::move(action));
}

ChainComplex normalize_zero_free(const ChainComplex& p, int n, uint64_t seed) {
    for (int d = p.lo; d < n && d <= p.hi; ++d) {
        if (!exact_at(p, d))
            throw Error("normalize_zero_free: homology nonzero below n at degree " +
                        std::to_string(d));
        if (!p.term(d).is_projective_certified() && p.term(d).rank > 0)
            throw Error("normalize_zero_free: term below n not projective-certified at degree " +
                        std::to_string(d));
        if (!p.ring.is_field() && !p.term(d).is_free_certified() && p.term(d).rank > 0)
            throw Error("normalize_zero_free: integer terms below n must be free-certified");
    }
    if (p.lo >= n) return p;

    // remember the original below-n terms for the stable-freeness repair
    std::vector<RGModule> below;
    for (int d = p.lo; d < n; ++d) below.push_back(p.term(d));

    ChainComplex c = p;
    bool contracted = false;
    while (c.lo < n && !c.empty()) {
        if (c.term_rank(c.lo) == 0) {
            c.terms.erase(c.terms.begin());
            if (!c.differentials.empty()) c.differentials.erase(c.differentials.begin());
            ++c.lo;
            continue;
        }
        if (c.lo == c.hi) throw Error("normalize_zero_free: nonzero bottom with no cover");
        // split: sigma with d_{lo+1} sigma = id
        Matrix dbot = c.diff(c.lo + 1);
        auto sigma = solve_any(dbot, Matrix::identity(c.ring, c.term_rank(c.lo)));
        if (!sigma) throw Error("normalize_zero_free: bottom differential not split surjective");
        Matrix e = *sigma * dbot;  // idempotent on term(lo+1)
        Matrix k = kernel_any(e);
        RGModule newterm = module_on_kernel(c.term(c.lo + 1), k);
        std::vector<RGModule> terms;
        terms.push_back(newterm);
        for (int d = c.lo + 2; d <= c.hi; ++d) terms.push_back(c.term(d));
        std::vector<Matrix> diffs;
        if (c.lo + 2 <= c.hi) {
            Matrix one_minus_e = Matrix::identity(c.ring, e.rows()) - e;
            auto coords = solve_any(k, one_minus_e * c.diff(c.lo + 2));
            if (!coords) throw Error("normalize_zero_free: contraction coordinate solve failed");
            diffs.push_back(*coords);
            for (int d = c.lo + 3; d <= c.hi; ++d) diffs.push_back(c.diff(d));
        }
        c = make_complex(c.group, c.ring, c.lo + 1, std::move(terms), std::move(diffs));
        contracted = true;
    }
    if (c.empty() || (c.lo == n && c.term_rank(n) == 0) || !contracted) return c;
    if (c.term(n).is_free_certified()) return c;

    // repair the bottom term: add 0 -> L -> L -> 0 with L the original odd-offset sum
    RGModule l = zero_module(c.group, c.ring);
    for (int d = n - 1; !below.empty() && d >= n - int(below.size()); --d)
        if ((n - d) % 2 == 1) l = direct_sum_modules(l, below[size_t(d - (n - int(below.size())))]);
    RGModule t = c.term(n);
    RGModule bottom = direct_sum_modules(t, l);
    // explicit free structure via intertwiner search
    if (bottom.rank % c.group->order() != 0)
        throw Error("normalize_zero_free: repaired bottom has non-free rank");
    RGModule freeb = free_module(c.group, c.ring, bottom.rank / c.group->order());
    std::optional<Matrix> iso;
    if (c.ring.is_field()) {
        iso = iso_search(bottom, freeb, seed);
    } else {
        // integer case: bounded unimodular search over an integer hom basis
        Matrix stack(c.ring, 0, bottom.rank * freeb.rank);
        bool any = false;
        Matrix idn = Matrix::identity(c.ring, freeb.rank);
        Matrix idm = Matrix::identity(c.ring, bottom.rank);
        for (size_t gi = 0; gi < bottom.action.size(); ++gi) {
            Matrix a = bottom.action[gi].transpose().kron(idn) - idm.kron(freeb.action[gi]);
            stack = any ? stack.vstack(a) : a;
            any = true;
        }
        Matrix basis = kernel_integer(stack);
        Rng rng(seed);
        for (int t2 = 0; t2 < 200 && !iso; ++t2) {
            Matrix combo(c.ring, bottom.rank * freeb.rank, 1);
            for (int j = 0; j < basis.cols(); ++j) {
                int64_t co = rng.below(3) - 1;
                if (co != 0) combo = combo + basis.column(j).scale(Int(co));
            }
            Matrix x = unvec(combo, freeb.rank, bottom.rank, c.ring);
            if (is_invertible(x)) iso = x;
        }
    }
    if (!iso) throw Error("normalize_zero_free: no explicit free structure found for the bottom");

    // assemble: term(n) := free (in the new basis), term(n+1) := old term(n+1) + L
    std::vector<RGModule> terms;
    std::vector<Matrix> diffs;
    terms.push_back(freeb);
    RGModule up = c.has_degree(n + 1) ? c.term(n + 1) : zero_module(c.group, c.ring);
    terms.push_back(direct_sum_modules(up, l));
    // d_{n+1}: (up + L) -> bottom -> free basis
    Matrix dn1(c.ring, bottom.rank, up.rank + l.rank);
    Matrix old = c.diff(n + 1);  // up -> t
    dn1.set_block(0, 0, old);
    dn1.set_block(t.rank, up.rank, Matrix::identity(c.ring, l.rank));
    diffs.push_back(*iso * dn1);
    // d_{n+2}: term(n+2) -> (up + L): old map followed by inclusion
    if (c.has_degree(n + 2)) {
        Matrix d2 = c.diff(n + 2);
        Matrix m(c.ring, up.rank + l.rank, d2.cols());
        m.set_block(0, 0, d2);
        diffs.push_back(std::move(m));
        for (int d = n + 2; d <= c.hi; ++d) {
            terms.push_back(c.term(d));
            if (d + 1 <= c.hi) diffs.push_back(c.diff(d + 1));
        }
    }
    return make_complex(c.group, c.ring, n, std::move(terms), std::move(diffs));
}

// --- lifting -----------------------------------------------------------------

LiftResult lift_through_quasi_iso(const ChainMap& f, const ChainMap& s, int m) {
    const auto& p = *f.source;
    const auto& x = *f.target;
    const auto& y = *s.source;
    if (s.target.get() != f.target.get() && !(s.target->ranks() == f.target->ranks()))
        throw Error("lift_through_quasi_iso: targets differ");
    if (!p.ring.is_field())
        throw Error("lift_through_quasi_iso: unsupported ring (field coefficients required)");
    for (int d = m + 1; d <= std::max(x.hi, y.hi); ++d)
        if (x.term_rank(d) != 0 || y.term_rank(d) != 0)
            throw Error("lift_through_quasi_iso: X and Y must vanish above m");
    for (int d = p.lo; d <= std::min(p.hi, m); ++d)
        if (p.term(d).rank > 0 && !p.term(d).is_projective_certified())
            throw Error("lift_through_quasi_iso: P not projective-certified at degree " +
                        std::to_string(d));
    if (!is_quasi_iso(s)) throw Error("lift_through_quasi_iso: s is not a quasi-isomorphism");

    ChainComplex z = cone(s);  // Z_d = X_d + Y_{d-1}
    auto zp = std::make_shared<ChainComplex>(z);
    // null-homotopy of u = incl o f : P -> Z, built upward
    std::map<int, Matrix> k;  // k_d : P_d -> Z_{d+1}
    auto kd = [&](int d) -> Matrix {
        auto it = k.find(d);
        if (it != k.end()) return it->second;
        return Matrix(p.ring, z.term_rank(d + 1), p.term_rank(d));
    };
    for (int d = p.lo; d <= p.hi; ++d) {
        // u_d = [f_d; 0]
        Matrix u(p.ring, z.term_rank(d), p.term_rank(d));
        if (z.has_degree(d)) {
            Matrix fd = f.component(d);
            u.set_block(0, 0, fd);
        }
        Matrix r = u - kd(d - 1) * p.diff(d);
        if (r.is_zero()) continue;
        if (!z.has_degree(d + 1)) {
            if (!r.is_zero())
                throw Error("lift_through_quasi_iso: obstruction at degree " + std::to_string(d));
            continue;
        }
        auto sol = solve_field(z.diff(d + 1), r);
        if (!sol)
            throw Error("lift_through_quasi_iso: solver failure at degree " + std::to_string(d));
        k[d] = *sol;
    }
    // extract fhat (Y-part) and homotopy (X-part, negated)
    std::map<int, Matrix> fhat_comp, h;
    for (int d = p.lo; d <= p.hi; ++d) {
        Matrix kk = kd(d);
        if (kk.rows() == 0) continue;
        int xr = x.term_rank(d + 1);
        std::vector<int> yrows, xrows;
        for (int i = 0; i < xr; ++i) xrows.push_back(i);
        for (int i = xr; i < z.term_rank(d + 1); ++i) yrows.push_back(i);
        if (y.term_rank(d) > 0) fhat_comp[d] = kk.select_rows(yrows);
        if (xr > 0) h[d] = kk.select_rows(xrows).negate();
    }
    ChainMap fhat = make_chain_map(f.source, s.source, std::move(fhat_comp));
    return LiftResult{std::move(fhat), std::move(h)};
}

// --- hom modulo homotopy ------------------------------------------------------

HomReport hom_mod_homotopy(const ChainComplex& x, const ChainComplex& y) {
    if (!x.ring.is_field()) throw Error("hom_mod_homotopy: field coefficients required");
    if (x.ring != y.ring || x.group != y.group) throw Error("hom_mod_homotopy: mismatch");
    // variables: f_d : X_d -> Y_d for degrees where both are nonzero
    std::vector<int> degs;
    std::vector<int> offset;
    int total = 0;
    for (int d = std::max(x.lo, y.lo); d <= std::min(x.hi, y.hi); ++d) {
        if (x.term_rank(d) == 0 || y.term_rank(d) == 0) continue;
        degs.push_back(d);
        offset.push_back(total);
        total += x.term_rank(d) * y.term_rank(d);
    }
    auto deg_pos = [&](int d) -> int {
        for (size_t i = 0; i < degs.size(); ++i)
            if (degs[i] == d) return int(i);
        return -1;
    };
    // constraint rows
    std::vector<Matrix> rows;
    // equivariance per degree
    for (size_t i = 0; i < degs.size(); ++i) {
        int d = degs[i];
        int xr = x.term_rank(d), yr = y.term_rank(d);
        Matrix idx = Matrix::identity(x.ring, xr), idy = Matrix::identity(x.ring, yr);
        for (size_t gi = 0; gi < x.group->generators.size(); ++gi) {
            Matrix a = x.term(d).action[gi].transpose().kron(idy) - idx.kron(y.term(d).action[gi]);
            Matrix row(x.ring, a.rows(), total);
            row.set_block(0, offset[i], a);
            rows.push_back(std::move(row));
        }
    }
    // commutation d_Y f_s = f_{s-1} d_X on X_s -> Y_{s-1}
    for (int s2 = std::min(x.hi, y.hi) + 1; s2 > std::max(x.lo, y.lo) - 1; --s2) {
        int xr = x.term_rank(s2), yr = y.term_rank(s2 - 1);
        if (xr == 0 || yr == 0) continue;
        Matrix row(x.ring, xr * yr, total);
        bool nontrivial = false;
        int ps = deg_pos(s2);
        if (ps >= 0) {
            // vec(d_Y f_s) = (I_{xr} kron d_Y) vec(f_s)
            Matrix a = Matrix::identity(x.ring, xr).kron(y.diff(s2));
            row.set_block(0, offset[size_t(ps)], a);
            nontrivial = true;
        }
        int pm = deg_pos(s2 - 1);
        if (pm >= 0) {
            // vec(f_{s-1} d_X) = (d_X^T kron I_{yr}) vec(f_{s-1})
            Matrix a = x.diff(s2).transpose().kron(Matrix::identity(x.ring, yr)).negate();
            row.set_block(0, offset[size_t(pm)], a);
            nontrivial = true;
        }
        if (nontrivial) rows.push_back(std::move(row));
    }
    Matrix system(x.ring, 0, total);
    bool any = false;
    for (auto& r : rows) {
        system = any ? system.vstack(r) : r;
        any = true;
    }
    Matrix chainmaps = any ? kernel_field(system) : Matrix::identity(x.ring, total);

    // homotopy image: h_d : X_d -> Y_{d+1} equivariant, mapped to dh + hd
    std::vector<Matrix> boundary_cols;
    for (int d = x.lo; d <= x.hi; ++d) {
        if (x.term_rank(d) == 0 || y.term_rank(d + 1) == 0) continue;
        Matrix hb = hom_space(x.term(d), y.term(d + 1));
        for (int j = 0; j < hb.cols(); ++j) {
            Matrix hmat = unvec(hb.column(j), y.term_rank(d + 1), x.term_rank(d), x.ring);
            // contribution: at degree d: d_Y h; at degree d+1: h d_X
            Matrix col(x.ring, total, 1);
            int pd = deg_pos(d);
            if (pd >= 0) {
                Matrix contrib = y.diff(d + 1) * hmat;
                for (int cc = 0; cc < contrib.cols(); ++cc)
                    for (int rr = 0; rr < contrib.rows(); ++rr)
                        col.set(offset[size_t(pd)] + cc * contrib.rows() + rr, 0,
                                col.get(offset[size_t(pd)] + cc * contrib.rows() + rr, 0) +
                                    contrib.get(rr, cc));
            }
            int pu = deg_pos(d + 1);
            if (pu >= 0) {
                Matrix contrib = hmat * x.diff(d + 1);
                for (int cc = 0; cc < contrib.cols(); ++cc)
                    for (int rr = 0; rr < contrib.rows(); ++rr)
                        col.set(offset[size_t(pu)] + cc * contrib.rows() + rr, 0,
                                col.get(offset[size_t(pu)] + cc * contrib.rows() + rr, 0) +
                                    contrib.get(rr, cc));
            }
            boundary_cols.push_back(std::move(col));
        }
    }
    Matrix boundaries(x.ring, total, int(boundary_cols.size()));
    for (size_t j = 0; j < boundary_cols.size(); ++j) boundaries.set_block(0, int(j), boundary_cols[j]);

    int dim_maps = chainmaps.cols();
    int dim_bound = rank_field(boundaries);
    HomReport rep;
    rep.dim = dim_maps - dim_bound;
    for (int j = 0; j < chainmaps.cols(); ++j) {
        std::map<int, Matrix> comp;
        for (size_t i = 0; i < degs.size(); ++i) {
            int d = degs[i];
            Matrix sub(x.ring, x.term_rank(d) * y.term_rank(d), 1);
            for (int t = 0; t < sub.rows(); ++t) sub.set(t, 0, chainmaps.get(offset[i] + t, 0 + j));
            comp[d] = unvec(sub, y.term_rank(d), x.term_rank(d), x.ring);
        }
        rep.basis.push_back(std::move(comp));
    }
    return rep;
}

}  // namespace permres
