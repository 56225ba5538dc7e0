#include "permres/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace permres {

Perm perm_identity(int degree) {
    Perm p(degree);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Perm perm_compose(const Perm& a, const Perm& b) {
    Perm r(b.size());
    for (size_t x = 0; x < b.size(); ++x) r[x] = a[b[x]];
    return r;
}

Perm perm_inverse(const Perm& a) {
    Perm r(a.size());
    for (size_t x = 0; x < a.size(); ++x) r[a[x]] = int(x);
    return r;
}

bool is_permutation(const Perm& a, int degree) {
    if (int(a.size()) != degree) return false;
    std::vector<bool> seen(degree, false);
    for (int v : a) {
        if (v < 0 || v >= degree || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

int Group::index_of(const Perm& p) const {
    for (size_t i = 0; i < elements.size(); ++i)
        if (elements[i] == p) return int(i);
    throw Error("Group::index_of: element not in group");
}

bool Group::is_p_group(int64_t& p_out) const {
    int n = order();
    if (n == 1) {
        p_out = 0;
        return true;
    }
    for (int64_t p = 2; p <= n; ++p) {
        if (!is_prime(p) || n % p != 0) continue;
        int64_t m = n;
        while (m % p == 0) m /= p;
        p_out = p;
        return m == 1;
    }
    return false;
}

GroupPtr enumerate_group(int degree, const std::vector<Perm>& generators) {
    for (const auto& g : generators)
        if (!is_permutation(g, degree)) throw Error("enumerate_group: malformed permutation");

    auto grp = std::make_shared<Group>();
    grp->degree = degree;
    grp->generators = generators;

    std::map<Perm, int> index;
    Perm id = perm_identity(degree);
    grp->elements.push_back(id);
    grp->words.push_back({});
    index[id] = 0;

    // BFS levels; new elements of each level sorted lexicographically
    std::vector<int> frontier{0};
    while (!frontier.empty()) {
        std::map<Perm, std::vector<int>> fresh;  // perm -> word
        for (int ei : frontier) {
            for (size_t gi = 0; gi < generators.size(); ++gi) {
                Perm q = perm_compose(generators[gi], grp->elements[ei]);
                if (index.count(q) || fresh.count(q)) continue;
                std::vector<int> w = grp->words[ei];
                w.insert(w.begin(), int(gi));  // word read left-to-right as product
                fresh[q] = std::move(w);
            }
        }
        frontier.clear();
        for (auto& [p, w] : fresh) {
            int idx = int(grp->elements.size());
            index[p] = idx;
            grp->elements.push_back(p);
            grp->words.push_back(std::move(w));
            frontier.push_back(idx);
        }
    }

    const int n = grp->order();
    grp->inverse.resize(n);
    grp->mult.assign(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i) {
        grp->inverse[i] = index.at(perm_inverse(grp->elements[i]));
        for (int j = 0; j < n; ++j)
            grp->mult[i][j] = index.at(perm_compose(grp->elements[i], grp->elements[j]));
    }
    return grp;
}

bool Subgroup::contains(int elem) const {
    return std::binary_search(members.begin(), members.end(), elem);
}

Subgroup trivial_subgroup(const GroupPtr& g) { return Subgroup{g, {0}, {}}; }

Subgroup full_subgroup(const GroupPtr& g) {
    std::vector<int> all(g->order());
    std::iota(all.begin(), all.end(), 0);
    std::vector<int> gens;
    for (const auto& gen : g->generators) gens.push_back(g->index_of(gen));
    return Subgroup{g, all, gens};
}

static std::vector<int> choose_generators(const GroupPtr& g, const std::vector<int>& members) {
    // greedy: add members until they generate the whole subgroup
    std::vector<int> gens;
    std::set<int> have{0};
    for (int m : members) {
        if (have.count(m)) continue;
        gens.push_back(m);
        // close under multiplication
        std::vector<int> frontier(have.begin(), have.end());
        have.insert(m);
        frontier.push_back(m);
        while (!frontier.empty()) {
            int x = frontier.back();
            frontier.pop_back();
            for (int gen : gens) {
                for (int y : {g->multiply(gen, x), g->multiply(x, gen)})
                    if (!have.count(y)) {
                        have.insert(y);
                        frontier.push_back(y);
                    }
            }
        }
        if (int(have.size()) == int(members.size())) break;
    }
    return gens;
}

Subgroup subgroup_from_members(const GroupPtr& g, std::vector<int> members) {
    std::sort(members.begin(), members.end());
    Subgroup h{g, members, choose_generators(g, members)};
    // closure sanity
    for (int a : members)
        for (int b : members)
            if (!h.contains(g->multiply(a, b))) throw Error("subgroup_from_members: not closed");
    return h;
}

Subgroup subgroup_closure(const GroupPtr& g, const std::vector<int>& gens) {
    std::set<int> have{0};
    std::vector<int> frontier{0};
    for (int x : gens)
        if (!have.count(x)) {
            have.insert(x);
            frontier.push_back(x);
        }
    while (!frontier.empty()) {
        int x = frontier.back();
        frontier.pop_back();
        for (int gen : gens) {
            for (int y : {g->multiply(gen, x), g->multiply(x, gen)})
                if (!have.count(y)) {
                    have.insert(y);
                    frontier.push_back(y);
                }
        }
    }
    std::vector<int> members(have.begin(), have.end());
    std::sort(members.begin(), members.end());
    return Subgroup{g, members, gens};
}

std::vector<Subgroup> subgroups(const GroupPtr& g, bool up_to_conjugacy, int order_cap) {
    if (g->order() > order_cap) throw Error("subgroups: group order exceeds cap");
    // cyclic-extension style closure over generated subsets
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> work;
    std::vector<int> triv{0};
    seen.insert(triv);
    work.push_back(triv);
    for (size_t w = 0; w < work.size(); ++w) {
        std::vector<int> base = work[w];
        for (int x = 1; x < g->order(); ++x) {
            if (std::binary_search(base.begin(), base.end(), x)) continue;
            std::vector<int> gens;
            gens.reserve(base.size() + 1);
            for (int b : base)
                if (b != 0) gens.push_back(b);
            gens.push_back(x);
            Subgroup h = subgroup_closure(g, gens);
            if (!seen.count(h.members)) {
                seen.insert(h.members);
                work.push_back(h.members);
            }
        }
    }
    std::vector<Subgroup> out;
    for (const auto& mem : seen) out.push_back(subgroup_from_members(g, mem));
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.members < b.members;
    });
    if (!up_to_conjugacy) return out;

    std::vector<Subgroup> reps;
    std::set<std::vector<int>> covered;
    for (const auto& h : out) {
        if (covered.count(h.members)) continue;
        reps.push_back(h);
        for (int e = 0; e < g->order(); ++e) {
            std::vector<int> conj;
            conj.reserve(h.members.size());
            for (int m : h.members)
                conj.push_back(g->multiply(g->multiply(e, m), g->inverse[e]));
            std::sort(conj.begin(), conj.end());
            covered.insert(conj);
        }
    }
    return reps;
}

bool is_normal(const Subgroup& h) {
    const auto& g = h.parent;
    for (int e = 0; e < g->order(); ++e)
        for (int m : h.members)
            if (!h.contains(g->multiply(g->multiply(e, m), g->inverse[e]))) return false;
    return true;
}

bool subgroups_conjugate(const Subgroup& a, const Subgroup& b) {
    const auto& g = a.parent;
    if (a.order() != b.order()) return false;
    for (int e = 0; e < g->order(); ++e) {
        std::vector<int> conj;
        conj.reserve(a.members.size());
        for (int m : a.members) conj.push_back(g->multiply(g->multiply(e, m), g->inverse[e]));
        std::sort(conj.begin(), conj.end());
        if (conj == b.members) return true;
    }
    return false;
}

Subgroup sylow(const GroupPtr& g, int64_t p) {
    if (!is_prime(p)) throw Error("sylow: p not prime");
    int target = 1;
    int n = g->order();
    while (n % p == 0) {
        n /= int(p);
        target *= int(p);
    }
    if (target == 1) return trivial_subgroup(g);
    for (const auto& h : subgroups(g, false))
        if (h.order() == target) return h;
    throw Error("sylow: internal failure");
}

std::vector<Subgroup> index2_normal_subgroups(const GroupPtr& g) {
    // kernel of <squares, commutators>; index-2 subgroups correspond to
    // hyperplanes of the elementary abelian quotient
    std::vector<int> kgens;
    for (int a = 0; a < g->order(); ++a) kgens.push_back(g->multiply(a, a));
    for (size_t i = 0; i < g->generators.size(); ++i)
        for (size_t j = 0; j < g->generators.size(); ++j) {
            int a = g->index_of(g->generators[i]);
            int b = g->index_of(g->generators[j]);
            int comm = g->multiply(g->multiply(a, b), g->multiply(g->inverse[a], g->inverse[b]));
            kgens.push_back(comm);
        }
    Subgroup k = subgroup_closure(g, kgens);
    if (k.order() == g->order()) return {};

    // cosets of K form an elementary abelian 2-group V
    QuotientData q = quotient_group(g, k);
    int vorder = q.group->order();
    // functionals: for each subgroup of V of index 2, pull back
    std::vector<Subgroup> out;
    std::set<std::vector<int>> seen;
    for (const auto& hv : subgroups(q.group, false)) {
        if (2 * hv.order() != vorder) continue;
        // pull back: elements of G whose coset lies in hv
        std::vector<int> members;
        for (int e = 0; e < g->order(); ++e) {
            // coset of e: image under the quotient map
            // build image by word
            int img = 0;
            for (int gi : g->words[e]) img = q.group->multiply(img, q.generator_images[gi]);
            if (hv.contains(img)) members.push_back(e);
        }
        std::sort(members.begin(), members.end());
        if (!seen.count(members)) {
            seen.insert(members);
            out.push_back(subgroup_from_members(g, members));
        }
    }
    std::sort(out.begin(), out.end(),
              [](const Subgroup& a, const Subgroup& b) { return a.members < b.members; });
    return out;
}

std::pair<Transversal, GSet> coset_action(const GroupPtr& g, const Subgroup& h) {
    // left cosets xH; identity coset first, then by minimal member index
    std::vector<int> coset_of(g->order(), -1);
    std::vector<int> reps;
    for (int e = 0; e < g->order(); ++e) {
        if (coset_of[e] >= 0) continue;
        int c = int(reps.size());
        reps.push_back(e);
        for (int m : h.members) coset_of[g->multiply(e, m)] = c;
    }
    GSet a;
    a.size = int(reps.size());
    for (const auto& gen : g->generators) {
        int gi = g->index_of(gen);
        std::vector<int> act(a.size);
        for (int c = 0; c < a.size; ++c) act[c] = coset_of[g->multiply(gi, reps[c])];
        a.action.push_back(std::move(act));
    }
    for (int c = 0; c < a.size; ++c) a.labels.push_back("g" + std::to_string(reps[c]) + "H");
    return {Transversal{h, reps}, a};
}

SubgroupGroup subgroup_as_group(const Subgroup& h) {
    std::vector<Perm> gens;
    for (int gi : h.generators) gens.push_back(h.parent->elements[gi]);
    GroupPtr grp = enumerate_group(h.parent->degree, gens);
    if (grp->order() != h.order()) throw Error("subgroup_as_group: generation mismatch");
    SubgroupGroup out{grp, {}};
    out.to_parent.resize(grp->order());
    for (int i = 0; i < grp->order(); ++i)
        out.to_parent[i] = h.parent->index_of(grp->elements[i]);
    return out;
}

QuotientData quotient_group(const GroupPtr& g, const Subgroup& n) {
    if (!is_normal(n)) throw Error("quotient_group: subgroup not normal");
    auto [tr, act] = coset_action(g, n);
    GroupPtr q = enumerate_group(act.size, act.action);
    QuotientData out{q, {}};
    for (const auto& p : act.action) out.generator_images.push_back(q->index_of(p));
    return out;
}

std::vector<std::vector<int>> point_orbits(int size, const std::vector<std::vector<int>>& perms) {
    std::vector<std::vector<int>> orbits;
    std::vector<bool> seen(size, false);
    for (int s = 0; s < size; ++s) {
        if (seen[s]) continue;
        std::vector<int> orb{s};
        seen[s] = true;
        for (size_t k = 0; k < orb.size(); ++k)
            for (const auto& p : perms) {
                int y = p[orb[k]];
                if (!seen[y]) {
                    seen[y] = true;
                    orb.push_back(y);
                }
            }
        std::sort(orb.begin(), orb.end());
        orbits.push_back(std::move(orb));
    }
    return orbits;
}

}  // namespace permres
