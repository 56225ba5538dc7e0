#pragma once

#include "permres/complex.hpp"

namespace permres {

// Embedding data for tensor induction along a normal subgroup of index n:
// g . rep_j = rep_{sigma(g)(j)} . h_j(g), verified for every group element.
struct MonomialEmbedding {
    GroupPtr group;
    Subgroup subgroup;      // H normal in G
    SubgroupGroup h_group;  // H as a group, with parent element map
    Transversal transversal;
    int index = 0;                               // n = [G:H]
    std::vector<std::vector<int>> sigma;         // per element e: permutation of {0..n-1}
    std::vector<std::vector<int>> h_components;  // per element e: H-element (as parent index) per slot
};

MonomialEmbedding monomial_embedding(const GroupPtr& g, const Subgroup& h);

// Wedge basis of Lambda^s(RG): index tuples in lexicographic order.
struct WedgeBasis {
    int n = 0;
    std::vector<std::vector<std::vector<int>>> tuples;  // per degree s
};
WedgeBasis wedge_basis(int n);

// The Koszul complex of the augmentation, degrees n..0 with ranks binomial(n,s).
ChainComplex koszul(const GroupPtr& g, RingSpec ring);

// Tensor induction of an H-module along the embedding (any index).
RGModule tensor_induce_module(const RGModule& n_over_h, const MonomialEmbedding& emb);

// Tensor induction of a bounded complex for index exactly 2, Koszul sign rule.
ChainComplex tensor_induce_complex2(const ChainComplex& c_over_h, const MonomialEmbedding& emb);

}  // namespace permres
