#pragma once

#include <optional>

#include "permres/group.hpp"
#include "permres/ring.hpp"

namespace permres {

// Signed G-set: each generator permutes the basis lines {±e_x}.
// g . e_x = sign[g][x] * e_{perm[g][x]}
struct SignedGSet {
    int size = 0;
    std::vector<std::vector<int>> perm;
    std::vector<std::vector<int>> sign;  // entries +1/-1

    bool sign_free() const;
};

struct RGModule;
using ModulePtr = std::shared_ptr<const RGModule>;

// Witness that a module is a direct summand of a permutation module.
struct SummandCert {
    ModulePtr ambient;  // permutation-certified
    Matrix embed;       // ambient_rank x rank, equivariant
    Matrix project;     // rank x ambient_rank, equivariant; project*embed = id
    Matrix idempotent;  // embed*project
};

struct RGModule {
    GroupPtr group;
    RingSpec ring;
    int rank = 0;
    std::vector<Matrix> action;  // one invertible matrix per group generator

    std::optional<SignedGSet> monomial;   // carries Permutation when sign-free
    std::optional<SummandCert> summand;

    bool has_monomial() const { return monomial.has_value(); }
    bool is_permutation_certified() const { return monomial && monomial->sign_free(); }
    // permutation-certified with all orbits regular
    bool is_free_certified() const;
    bool is_trivial_certified() const;
    // free, or summand of a free ambient
    bool is_projective_certified() const;

    Matrix element_action(int elem_index) const;  // via the BFS word
};

// Construction-time checks: invertibility, group relations (full matrix check
// below the rank threshold, signed-permutation check for monomial modules),
// and certificate consistency.
RGModule make_module(GroupPtr g, RingSpec ring, int rank, std::vector<Matrix> action,
                     std::optional<SignedGSet> monomial = std::nullopt,
                     std::optional<SummandCert> summand = std::nullopt);

// Equivariant map between modules over the same group and ring.
struct ModuleMap {
    ModulePtr source;
    ModulePtr target;
    Matrix matrix;  // target.rank x source.rank
};

ModuleMap make_map(ModulePtr src, ModulePtr tgt, Matrix m);
bool is_equivariant(const RGModule& src, const RGModule& tgt, const Matrix& m);

// --- constructions ---------------------------------------------------------

RGModule linearize(const GroupPtr& g, const GSet& a, RingSpec ring);
RGModule free_module(const GroupPtr& g, RingSpec ring, int r);
RGModule trivial_module(const GroupPtr& g, RingSpec ring, int r = 1);
RGModule zero_module(const GroupPtr& g, RingSpec ring);

// Rank-1 module where g acts by -1 iff g lies outside the index-2 subgroup h.
RGModule sign_module(const GroupPtr& g, const Subgroup& h, RingSpec ring);

RGModule tensor(const RGModule& m, const RGModule& n);
RGModule direct_sum_modules(const RGModule& m, const RGModule& n);

// Restriction along a subgroup (generators given by element words over G).
RGModule restrict_module(const RGModule& m, const SubgroupGroup& h);

// Induction along H <= G using the identity-first transversal.
RGModule induce_module(const RGModule& n, const GroupPtr& g, const Transversal& tr,
                       const SubgroupGroup& h);

// Inflation along G ->> Q given the images of G's generators in Q.
RGModule inflate_module(const RGModule& m_over_q, const GroupPtr& g,
                        const QuotientData& q);

struct OmegaResult {
    RGModule omega;      // kernel of the cover, rank (|G|-1) * rank(M)
    RGModule cover_src;  // the free module kG (x) M in its untwisted basis
    ModuleMap embedding; // omega -> cover_src
    ModuleMap cover;     // cover_src ->> M
};
OmegaResult omega(const RGModule& m);

struct FixedPoints {
    int dim = 0;
    Matrix basis;  // rank x dim, columns span the fixed subspace (saturated over Z)
};
FixedPoints fixed_points(const RGModule& m, const SubgroupGroup& h);

// Space of equivariant maps M -> N; columns are vectorized maps (column-major).
Matrix hom_space(const RGModule& m, const RGModule& n);
// Same over either ring (integer kernel for Z coefficients).
Matrix hom_space_any(const RGModule& m, const RGModule& n);
Matrix unvec(const Matrix& column, int rows, int cols, RingSpec ring);
Matrix vec_of(const Matrix& m);

// Solve d * K = r for an equivariant K : M -> N (d and r plain matrices).
std::optional<Matrix> solve_equivariant(const RGModule& m, const RGModule& n, const Matrix& d,
                                        const Matrix& r);

// Seeded search for an invertible element of hom_space(m, n).
std::optional<Matrix> iso_search(const RGModule& m, const RGModule& n, uint64_t seed,
                                 int attempts = 64);

// Deterministic pseudo-random stream (splitmix64).
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed) {}
    uint64_t next();
    int64_t below(int64_t n);  // uniform-ish in [0, n)
};

}  // namespace permres
