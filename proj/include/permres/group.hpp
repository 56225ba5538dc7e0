#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "permres/ring.hpp"

namespace permres {

// A permutation of {0..n-1} as its list of images.
using Perm = std::vector<int>;

Perm perm_identity(int degree);
Perm perm_compose(const Perm& a, const Perm& b);  // (a*b)(x) = a(b(x))
Perm perm_inverse(const Perm& a);
bool is_permutation(const Perm& a, int degree);

// Finite permutation group with a stable element enumeration: identity first,
// then BFS over generator words with lexicographic tie-break inside each level.
struct Group {
    int degree = 0;
    std::vector<Perm> generators;
    std::vector<Perm> elements;
    std::vector<std::vector<int>> words;  // generator word per element (left-to-right product)
    std::vector<int> inverse;             // element index of inverse
    std::vector<std::vector<int>> mult;   // mult[i][j] = index of elements[i] * elements[j]

    int order() const { return int(elements.size()); }
    int index_of(const Perm& p) const;
    int multiply(int i, int j) const { return mult[i][j]; }
    bool is_p_group(int64_t& p_out) const;  // true if |G| = p^k, k >= 1 or |G| = 1
};

using GroupPtr = std::shared_ptr<const Group>;

GroupPtr enumerate_group(int degree, const std::vector<Perm>& generators);

struct Subgroup {
    GroupPtr parent;
    std::vector<int> members;     // sorted element indices, identity included
    std::vector<int> generators;  // element indices generating the subgroup

    int order() const { return int(members.size()); }
    bool contains(int elem) const;
};

// All subgroups (or conjugacy-class representatives), sorted by (order, members).
std::vector<Subgroup> subgroups(const GroupPtr& g, bool up_to_conjugacy,
                                int order_cap = 24);

Subgroup trivial_subgroup(const GroupPtr& g);
Subgroup full_subgroup(const GroupPtr& g);
Subgroup subgroup_from_members(const GroupPtr& g, std::vector<int> members);
Subgroup subgroup_closure(const GroupPtr& g, const std::vector<int>& gens);

Subgroup sylow(const GroupPtr& g, int64_t p);

// All index-2 subgroups, via the quotient by <squares, commutators>.
std::vector<Subgroup> index2_normal_subgroups(const GroupPtr& g);

bool is_normal(const Subgroup& h);
bool subgroups_conjugate(const Subgroup& a, const Subgroup& b);

struct Transversal {
    Subgroup subgroup;
    std::vector<int> representatives;  // identity-coset representative first
};

struct GSet {
    int size = 0;
    std::vector<std::vector<int>> action;  // one permutation of points per group generator
    std::vector<std::string> labels;       // optional
};

// Left action of G on G/H; transversal has the identity coset first.
std::pair<Transversal, GSet> coset_action(const GroupPtr& g, const Subgroup& h);

// The subgroup as a permutation group in its own right (same domain),
// with a deterministic element numbering and a map back to parent indices.
struct SubgroupGroup {
    GroupPtr group;
    std::vector<int> to_parent;  // element index in this group -> index in parent
};
SubgroupGroup subgroup_as_group(const Subgroup& h);

// Quotient group G/N as permutation group on the cosets, with the images of
// G's generators.
struct QuotientData {
    GroupPtr group;
    std::vector<int> generator_images;  // image of each G-generator, as element index in quotient
};
QuotientData quotient_group(const GroupPtr& g, const Subgroup& n);

// Orbits of the subgroup generated by `perms` acting on {0..size-1}.
std::vector<std::vector<int>> point_orbits(int size, const std::vector<std::vector<int>>& perms);

}  // namespace permres
