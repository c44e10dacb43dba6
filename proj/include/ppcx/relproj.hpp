#pragma once

#include <memory>
#include <vector>

#include "ppcx/complex.hpp"

namespace ppcx {

/// Data attached to a module V governing V-projectivity over its group G.
struct RelProjContext {
    Module V;
    std::shared_ptr<const PSubgroupTable> table;
    std::vector<int> brauer_dims;   ///< dim V(P) per rep
    std::vector<char> vanishing;    ///< V(P) = 0, per rep
    bool v_pperm = false;
    bool abs_p_divisible = false;
    /// Maximal reps P (up to conjugacy) with k[G/P] V-projective.
    std::vector<int> generator_reps;
    Module generator;  ///< sum of k[G/P] over generator_reps (zero module if none)

    const Subgroup& group() const { return V.group(); }
    unsigned p() const { return V.p(); }
    std::vector<int> vanishing_set() const;
    std::vector<int> support_set() const;
    /// Minimal members of the vanishing set under subconjugation.
    std::vector<int> minimal_vanishing() const;
    std::vector<Subgroup> family() const;
};

/// V must live over a whole permutation group (see over_whole_group).
RelProjContext make_context(const Module& v, std::uint64_t seed = 0);

enum class VProjMethod { Auto, Factoring, Higman, Brauer };

/// Is X a direct summand of V (x) N for some N?
/// Factoring: the evaluation V* (x) V (x) X -> X is split surjective.
/// Higman: X is projective relative to the maximal generator subgroups.
/// Brauer: for p-permutation X and V, X(P) = 0 at every minimal vanishing P.
bool is_V_projective(const Module& x, const RelProjContext& ctx, VProjMethod method = VProjMethod::Auto);
/// Complexes: chain-level Higman criterion over the generator family.
bool is_V_projective(const ChainComplex& c, const RelProjContext& ctx);

/// Drops V-projective indecomposable summands of the complex.
ChainComplex strip_V_projectives(const ChainComplex& c, const RelProjContext& ctx, std::uint64_t seed = 0);
/// Drops V-projective indecomposable summands of the module.
Module strip_V_projectives(const Module& m, const RelProjContext& ctx, std::uint64_t seed = 0);

/// Relative syzygy Omega_V^n(M) for n in [-2, 2], with V-projective summands stripped.
Module relative_syzygy(const Module& m, const RelProjContext& ctx, int n, std::uint64_t seed = 0);

/// Evaluation map V* (x) V (x) M -> M and coevaluation M -> V* (x) V (x) M.
FpMatrix evaluation_map(int dim_v, int dim_m, unsigned p);
FpMatrix coevaluation_map(int dim_v, int dim_m, unsigned p);

}  // namespace ppcx
