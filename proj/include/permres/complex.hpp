#pragma once

#include <map>

#include "permres/gmodule.hpp"

namespace permres {

// Bounded chain complex, homological convention: d_s : term(s) -> term(s-1).
struct ChainComplex {
    GroupPtr group;
    RingSpec ring;
    int lo = 0, hi = -1;                // empty when hi < lo
    std::vector<RGModule> terms;        // index d - lo
    std::vector<Matrix> differentials;  // index s - lo - 1 holds d_s, lo < s <= hi

    bool empty() const { return hi < lo; }
    bool has_degree(int d) const { return d >= lo && d <= hi; }
    const RGModule& term(int d) const { return terms[size_t(d - lo)]; }
    RGModule& term(int d) { return terms[size_t(d - lo)]; }
    int term_rank(int d) const { return has_degree(d) ? term(d).rank : 0; }
    // d_s as a matrix; zero-shaped when out of range
    Matrix diff(int s) const;
    std::vector<int> ranks() const;  // hi down to lo
};

// Checks shapes, d^2 = 0 and equivariance of all differentials.
ChainComplex make_complex(GroupPtr g, RingSpec ring, int lo, std::vector<RGModule> terms,
                          std::vector<Matrix> differentials);

// A single module placed in degree `at`.
ChainComplex one_term_complex(const RGModule& m, int at = 0);

struct ChainMap {
    std::shared_ptr<const ChainComplex> source, target;
    std::map<int, Matrix> components;  // degree -> matrix; missing = zero

    Matrix component(int d) const;  // zero-shaped default
};

ChainMap make_chain_map(std::shared_ptr<const ChainComplex> src,
                        std::shared_ptr<const ChainComplex> tgt,
                        std::map<int, Matrix> components);

struct ValidationReport {
    bool ok = true;
    int failing_degree = 0;
    std::string message;
    std::map<int, std::string> certificate_kinds;
    // largest m with all terms in degrees <= m free; lo-1 when none
    int m_free_index = 0;
};

ValidationReport validate(const ChainComplex& c);

struct HomologyReport {
    RingSpec ring;
    int lo = 0, hi = -1;
    std::vector<int> free_rank;               // per degree (dimension over a field)
    std::vector<std::vector<Int>> torsion;    // invariant factors > 1 (integers only)

    bool is_zero() const;
    bool zero_in_positive_degrees() const;
    std::string str() const;
};

HomologyReport homology(const ChainComplex& c);

// Exactness of im(next) = ker(prev_kernel_space) at one spot, over either ring.
bool exact_at(const ChainComplex& c, int degree);

ChainComplex cone(const ChainMap& f);
ChainComplex shift_complex(const ChainComplex& c, int k);
ChainComplex direct_sum_complexes(const ChainComplex& a, const ChainComplex& b);

// Tensor product with the Koszul sign rule; degree-s blocks ordered by
// decreasing first factor degree, Kronecker order inside each block.
ChainComplex tensor_complexes(const ChainComplex& c, const ChainComplex& d);

// Offset of the block C_a (x) D_{s-a} inside (C (x) D)_s.
int tensor_block_offset(const ChainComplex& c, const ChainComplex& d, int s, int a);

bool is_chain_map(const ChainMap& f);
bool is_quasi_iso(const ChainMap& f);

// Gaussian elimination of contractible orbit pairs in a complex of monomial
// modules. Preserves the homotopy type, terms keep (signed) permutation bases.
// Degrees listed in `protect` are never modified.
void simplify_complex(ChainComplex& c, const std::vector<int>& protect);

// Lemma-style normalization: same homology, zero terms below `n`.
ChainComplex normalize_zero_free(const ChainComplex& p, int n, uint64_t seed = 1);

struct LiftResult {
    ChainMap fhat;                 // P -> Y with s o fhat ~ f
    std::map<int, Matrix> homotopy;  // h_d : P_d -> X_{d+1}, s o fhat - f = dh + hd
};

// Lemma 2.4-style lifting through a quasi-isomorphism (field coefficients).
LiftResult lift_through_quasi_iso(const ChainMap& f, const ChainMap& s, int m);

struct HomReport {
    int dim = 0;                       // dim of {chain maps}/{null-homotopic}
    std::vector<std::map<int, Matrix>> basis;  // chain-map representatives
};

HomReport hom_mod_homotopy(const ChainComplex& x, const ChainComplex& y);

}  // namespace permres
