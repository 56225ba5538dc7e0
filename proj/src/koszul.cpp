#include "permres/koszul.hpp"

#include <algorithm>

namespace permres {

WedgeBasis wedge_basis(int n) {
    WedgeBasis wb;
    wb.n = n;
    wb.tuples.resize(size_t(n) + 1);
    for (int s = 0; s <= n; ++s) {
        std::vector<int> idx(s);
        for (int i = 0; i < s; ++i) idx[i] = i;
        while (true) {
            wb.tuples[s].push_back(idx);
            if (s == 0) break;
            int i = s - 1;
            while (i >= 0 && idx[i] == n - s + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return wb;
}

// sort a tuple, returning the permutation sign; -1 duplicates marker via sign 0
static int sort_sign(std::vector<int>& v) {
    int sign = 1;
    for (size_t i = 1; i < v.size(); ++i)
        for (size_t j = i; j > 0 && v[j - 1] > v[j]; --j) {
            std::swap(v[j - 1], v[j]);
            sign = -sign;
        }
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i] == v[i - 1]) return 0;
    return sign;
}

static int tuple_index(const std::vector<std::vector<int>>& tuples, const std::vector<int>& t) {
    auto it = std::lower_bound(tuples.begin(), tuples.end(), t);
    if (it == tuples.end() || *it != t) throw Error("koszul: tuple lookup failure");
    return int(it - tuples.begin());
}

ChainComplex koszul(const GroupPtr& g, RingSpec ring) {
    const int n = g->order();
    WedgeBasis wb = wedge_basis(n);
    std::vector<RGModule> terms;   // built degree 0 .. n
    std::vector<Matrix> diffs;

    for (int s = 0; s <= n; ++s) {
        const auto& basis = wb.tuples[s];
        SignedGSet cert;
        cert.size = int(basis.size());
        std::vector<Matrix> action;
        for (size_t gi = 0; gi < g->generators.size(); ++gi) {
            int ge = g->index_of(g->generators[gi]);
            std::vector<int> p(basis.size()), sg(basis.size());
            for (size_t b = 0; b < basis.size(); ++b) {
                std::vector<int> img(basis[b]);
                for (auto& idx : img) idx = g->multiply(ge, idx);
                int sign = sort_sign(img);
                if (sign == 0) throw Error("koszul: group action collapsed a wedge");
                p[b] = tuple_index(basis, img);
                sg[b] = sign;
            }
            Matrix a(ring, cert.size, cert.size);
            for (int x = 0; x < cert.size; ++x) a.set(p[x], x, int64_t(sg[x]));
            action.push_back(std::move(a));
            cert.perm.push_back(std::move(p));
            cert.sign.push_back(std::move(sg));
        }
        terms.push_back(make_module(g, ring, cert.size, std::move(action), cert));
    }
    for (int s = 1; s <= n; ++s) {
        const auto& src = wb.tuples[s];
        const auto& dst = wb.tuples[s - 1];
        Matrix d(ring, int(dst.size()), int(src.size()));
        for (size_t b = 0; b < src.size(); ++b) {
            for (int j = 0; j < s; ++j) {
                std::vector<int> t;
                t.reserve(s - 1);
                for (int i = 0; i < s; ++i)
                    if (i != j) t.push_back(src[b][i]);
                int row = tuple_index(dst, t);
                int sign = (j % 2 == 0) ? 1 : -1;
                d.set(row, int(b), d.get(row, int(b)) + Int(sign));
            }
        }
        diffs.push_back(std::move(d));
    }
    return make_complex(g, ring, 0, std::move(terms), std::move(diffs));
}

MonomialEmbedding monomial_embedding(const GroupPtr& g, const Subgroup& h) {
    if (!is_normal(h)) throw Error("monomial_embedding: subgroup not normal");
    MonomialEmbedding emb;
    emb.group = g;
    emb.subgroup = h;
    emb.h_group = subgroup_as_group(h);
    auto [tr, act] = coset_action(g, h);
    emb.transversal = tr;
    emb.index = int(tr.representatives.size());
    const int n = emb.index;
    emb.sigma.resize(g->order());
    emb.h_components.resize(g->order());
    for (int e = 0; e < g->order(); ++e) {
        emb.sigma[e].resize(n);
        emb.h_components[e].resize(n);
        for (int j = 0; j < n; ++j) {
            int moved = g->multiply(e, tr.representatives[j]);
            int tgt = -1, hcomp = -1;
            for (int t = 0; t < n; ++t) {
                int cand = g->multiply(g->inverse[tr.representatives[t]], moved);
                if (h.contains(cand)) {
                    tgt = t;
                    hcomp = cand;
                    break;
                }
            }
            if (tgt < 0) throw Error("monomial_embedding: coset decomposition failure");
            emb.sigma[e][j] = tgt;
            emb.h_components[e][j] = hcomp;
        }
        // verify g . rep_j = rep_{sigma(j)} . h_j exactly
        for (int j = 0; j < n; ++j) {
            int lhs = g->multiply(e, tr.representatives[j]);
            int rhs = g->multiply(tr.representatives[emb.sigma[e][j]], emb.h_components[e][j]);
            if (lhs != rhs) throw Error("monomial_embedding: invariant violated");
        }
    }
    return emb;
}

static int h_index_in_group(const MonomialEmbedding& emb, int parent_elem) {
    for (int e = 0; e < emb.h_group.group->order(); ++e)
        if (emb.h_group.to_parent[e] == parent_elem) return e;
    throw Error("tensor induction: element not in subgroup");
}

RGModule tensor_induce_module(const RGModule& n_over_h, const MonomialEmbedding& emb) {
    if (n_over_h.group != emb.h_group.group)
        throw Error("tensor_induce_module: module not over the embedding's subgroup");
    const int n = emb.index;
    const int r = n_over_h.rank;
    int rank = 1;
    for (int i = 0; i < n; ++i) rank *= r;
    // basis: tuples (x_1..x_n), index = sum x_j * r^{n-1-j} (x_1 most significant)
    std::vector<int> stride(n, 1);
    for (int j = n - 2; j >= 0; --j) stride[j] = stride[j + 1] * r;

    const auto& g = emb.group;
    std::vector<Matrix> action;
    bool monomial_ok = n_over_h.monomial.has_value();
    SignedGSet cert;
    if (monomial_ok) cert.size = rank;
    for (size_t gi = 0; gi < g->generators.size(); ++gi) {
        int ge = g->index_of(g->generators[gi]);
        const auto& sig = emb.sigma[ge];
        std::vector<Matrix> hmat(n);
        std::vector<std::vector<int>> hperm(n), hsign(n);
        for (int j = 0; j < n; ++j) {
            int hidx = h_index_in_group(emb, emb.h_components[ge][j]);
            hmat[j] = n_over_h.element_action(hidx);
            if (monomial_ok) {
                // signed permutation of rho(h_j), accumulated along the word
                std::vector<int> p(r), s(r, 1);
                for (int x = 0; x < r; ++x) p[x] = x;
                for (int wgi : emb.h_group.group->words[hidx]) {
                    std::vector<int> p2(r), s2(r);
                    for (int x = 0; x < r; ++x) {
                        p2[x] = p[n_over_h.monomial->perm[wgi][x]];
                        s2[x] = s[n_over_h.monomial->perm[wgi][x]] * n_over_h.monomial->sign[wgi][x];
                    }
                    p = p2;
                    s = s2;
                }
                hperm[j] = p;
                hsign[j] = s;
            }
        }
        Matrix a(n_over_h.ring, rank, rank);
        std::vector<int> pm(rank), sm(rank, 1);
        std::vector<int> x(n, 0);
        for (int idx = 0; idx < rank; ++idx) {
            // destination: slot sigma(j) receives h_j . x_j
            if (monomial_ok) {
                int dst = 0, sign = 1;
                for (int j = 0; j < n; ++j) {
                    dst += hperm[j][x[j]] * stride[sig[j]];
                    sign *= hsign[j][x[j]];
                }
                pm[idx] = dst;
                sm[idx] = sign;
            } else {
                // dense: columns of the big matrix via tensor of columns
                std::vector<std::pair<int, Int>> col{{0, Int(1)}};
                std::vector<std::vector<std::pair<int, Int>>> cols(n);
                for (int j = 0; j < n; ++j) {
                    cols[j].clear();
                    for (int row = 0; row < r; ++row) {
                        Int v = hmat[j].get(row, x[j]);
                        if (v != 0) cols[j].push_back({row, v});
                    }
                }
                std::vector<std::pair<int, Int>> acc{{0, Int(1)}};
                for (int j = 0; j < n; ++j) {
                    std::vector<std::pair<int, Int>> nxt;
                    for (auto& [base, v] : acc)
                        for (auto& [row, w] : cols[j]) nxt.push_back({base + row * stride[sig[j]], v * w});
                    acc = std::move(nxt);
                }
                for (auto& [row, v] : acc) a.set(row, idx, a.get(row, idx) + v);
            }
            // next tuple
            for (int j = n - 1; j >= 0; --j) {
                if (++x[j] < r) break;
                x[j] = 0;
            }
        }
        if (monomial_ok) {
            for (int t = 0; t < rank; ++t) a.set(pm[t], t, int64_t(sm[t]));
            cert.perm.push_back(std::move(pm));
            cert.sign.push_back(std::move(sm));
        }
        action.push_back(std::move(a));
    }
    return make_module(g, n_over_h.ring, rank,
                       std::move(action), monomial_ok ? std::optional<SignedGSet>(cert) : std::nullopt);
}

ChainComplex tensor_induce_complex2(const ChainComplex& c, const MonomialEmbedding& emb) {
    if (emb.index != 2) throw Error("tensor_induce_complex2: index must be exactly 2");
    if (c.group != emb.h_group.group)
        throw Error("tensor_induce_complex2: complex not over the embedding's subgroup");
    const auto& g = emb.group;
    const RingSpec ring = c.ring;

    // terms and differential of the tensor square, with the H-twisted G-action
    int lo = 2 * c.lo, hi = 2 * c.hi;
    std::vector<RGModule> terms;
    // block layout at degree s: pairs (a, b = s-a) by decreasing a
    auto blocks_of = [&](int s) {
        std::vector<std::pair<int, int>> out;
        for (int a = std::min(c.hi, s - c.lo); a >= std::max(c.lo, s - c.hi); --a)
            if (c.term_rank(a) > 0 && c.term_rank(s - a) > 0) out.push_back({a, s - a});
        return out;
    };
    auto block_offset = [&](int s, int a) {
        int off = 0;
        for (auto& [aa, bb] : blocks_of(s)) {
            if (aa == a) return off;
            off += c.term_rank(aa) * c.term_rank(bb);
        }
        throw Error("tensor_induce_complex2: missing block");
    };

    for (int s = lo; s <= hi; ++s) {
        int rank = 0;
        for (auto& [a, b] : blocks_of(s)) rank += c.term_rank(a) * c.term_rank(b);
        SignedGSet cert;
        cert.size = rank;
        std::vector<Matrix> action;
        bool monomial_ok = true;
        for (int d = c.lo; d <= c.hi; ++d)
            if (c.term_rank(d) > 0 && !c.term(d).monomial) monomial_ok = false;
        if (!monomial_ok) throw Error("tensor_induce_complex2: terms need monomial certificates");

        for (size_t gi = 0; gi < g->generators.size(); ++gi) {
            int ge = g->index_of(g->generators[gi]);
            bool swaps = emb.sigma[ge][0] == 1;
            int h1 = h_index_in_group(emb, emb.h_components[ge][0]);
            int h2 = h_index_in_group(emb, emb.h_components[ge][1]);
            std::vector<int> p(rank), sg(rank);
            for (auto& [a, b] : blocks_of(s)) {
                int off = block_offset(s, a);
                int ra = c.term_rank(a), rb = c.term_rank(b);
                // signed perms of h1 on C_a and h2 on C_b
                auto signed_elem = [&](const RGModule& t, int hidx, std::vector<int>& pp,
                                       std::vector<int>& ss) {
                    int r = t.rank;
                    pp.assign(r, 0);
                    ss.assign(r, 1);
                    for (int x2 = 0; x2 < r; ++x2) pp[x2] = x2;
                    for (int wgi : emb.h_group.group->words[hidx]) {
                        std::vector<int> p2(r), s2(r);
                        for (int x2 = 0; x2 < r; ++x2) {
                            p2[x2] = pp[t.monomial->perm[wgi][x2]];
                            s2[x2] = ss[t.monomial->perm[wgi][x2]] * t.monomial->sign[wgi][x2];
                        }
                        pp = p2;
                        ss = s2;
                    }
                };
                std::vector<int> p1, s1v, p2, s2v;
                signed_elem(c.term(a), h1, p1, s1v);
                signed_elem(c.term(b), h2, p2, s2v);
                for (int i = 0; i < ra; ++i)
                    for (int j = 0; j < rb; ++j) {
                        int src = off + i * rb + j;
                        int factor_sign = s1v[i] * s2v[j];
                        if (!swaps) {
                            p[src] = off + p1[i] * rb + p2[j];
                            sg[src] = factor_sign;
                        } else {
                            // slot 1 -> position 2 and vice versa: (x (x) y) -> (h2 y (x) h1 x)
                            int dst_off = block_offset(s, b);
                            p[src] = dst_off + p2[j] * ra + p1[i];
                            int koszul = (a % 2 != 0 && b % 2 != 0) ? -1 : 1;
                            sg[src] = factor_sign * koszul;
                        }
                    }
            }
            Matrix am(ring, rank, rank);
            for (int x2 = 0; x2 < rank; ++x2) am.set(p[x2], x2, int64_t(sg[x2]));
            action.push_back(std::move(am));
            cert.perm.push_back(std::move(p));
            cert.sign.push_back(std::move(sg));
        }
        terms.push_back(make_module(g, ring, rank, std::move(action), cert));
    }

    // differential: Koszul-rule tensor square
    std::vector<Matrix> diffs;
    for (int s = lo + 1; s <= hi; ++s) {
        Matrix m(ring, terms[size_t(s - 1 - lo)].rank, terms[size_t(s - lo)].rank);
        for (auto& [a, b] : blocks_of(s)) {
            int src_off = block_offset(s, a);
            int ra = c.term_rank(a), rb = c.term_rank(b);
            if (a - 1 >= c.lo && c.term_rank(a - 1) > 0 && c.term_rank(b) > 0) {
                int dst = block_offset(s - 1, a - 1);
                Matrix blk = c.diff(a).kron(Matrix::identity(ring, rb));
                for (int i = 0; i < blk.rows(); ++i)
                    for (int j = 0; j < blk.cols(); ++j) {
                        Int v = blk.get(i, j);
                        if (v != 0) m.set(dst + i, src_off + j, m.get(dst + i, src_off + j) + v);
                    }
            }
            if (b - 1 >= c.lo && c.term_rank(b - 1) > 0 && c.term_rank(a) > 0) {
                int dst = block_offset(s - 1, a);
                Matrix blk = Matrix::identity(ring, ra).kron(c.diff(b));
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
    return make_complex(g, ring, lo, std::move(terms), std::move(diffs));
}

}  // namespace permres
