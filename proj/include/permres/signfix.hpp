#pragma once

#include "permres/gmodule.hpp"

namespace permres {

struct Rectified {
    RGModule module;         // permutation-certified, same underlying space
    Matrix change_of_basis;  // diagonal +-1; new action = D * old * D (D = D^-1)
};

// Sign propagation over line orbits of a monomial module; succeeds iff the
// signs are consistent around every cycle (always, for odd p-groups).
std::optional<Rectified> rectify_lines(const RGModule& m);

// Lemma-style guarantee for odd p-groups: failure is an input error.
Rectified rectify_odd(const RGModule& m);

struct EvenSplit {
    RGModule mplus;    // permutation module on A+
    RGModule mminus;   // permutation module, M- with L (x) M- = R(A-)
    Matrix iso;        // M -> M+ (+) (L (x) M-), block reordering, equivariant
    std::vector<int> plus_points, minus_points;
};

// Lemma-style splitting for an index-2 subgroup acting without signs.
EvenSplit split_even(const RGModule& m, const Subgroup& h, int g_outside);

struct PPermCert {
    bool certified = false;
    std::string reason;           // on refusal
    std::optional<SummandCert> cert;
    std::vector<std::pair<int, int>> sylow_decomposition;  // (subgroup order, multiplicity)
};

// Try to certify M (over GF(p)) as a p-permutation module by exhibiting
// Res_P M as an explicit sum of coset modules over a p-Sylow P.
PPermCert certify_p_permutation(const RGModule& m, uint64_t seed = 1);

// Attach the summand certificate found by certify_p_permutation.
RGModule with_pperm_certificate(const RGModule& m, uint64_t seed = 1);

}  // namespace permres
