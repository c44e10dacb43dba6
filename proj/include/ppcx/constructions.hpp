#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ppcx/complex.hpp"

namespace ppcx {

/// Projective indecomposables of kH (one per iso class) obtained by decomposing
/// the regular module, with their multiplicities and tops.
struct CoverHullCache {
    Subgroup group;
    unsigned p = 2;
    std::vector<Module> pims;
    std::vector<int> multiplicity;  ///< in the regular module
    std::vector<Module> simples;    ///< top of each PIM
    std::vector<int> end_dims;      ///< dim End(simple)
    bool split = true;              ///< every simple is absolutely irreducible
    /// Basis of the Jacobson radical of kH as group-algebra vectors (by element position).
    std::vector<std::vector<Scalar>> radical;
};

std::shared_ptr<const CoverHullCache> cover_hull_cache(const Subgroup& h, unsigned p);

/// Basis (columns) of rad(M) = J(kH) M.
FpMatrix radical_of(const Module& m);

/// Projective cover P -> M (surjective, kernel inside rad P).
ModuleHom projective_cover(const Module& m);
/// Injective hull M -> I, the dual of the projective cover of M*.
ModuleHom injective_hull(const Module& m);
/// P -> Z whose composite with Z -> Z/U is a projective cover of Z/U
/// (U given by a basis of an invariant subspace of Z).
ModuleHom cover_of_quotient(const Module& z, const FpMatrix& u);

/// Adds projectives below and above degree d until the homology is concentrated in
/// degree d. Each step covers (resp. embeds) only the homology that has to be
/// killed, so no projective summand is added where none is needed. Brauer
/// constructions at nontrivial p-subgroups are unchanged.
ChainComplex concentrate_homology(const ChainComplex& c, int d);

/// k[H/Q] -> k in degrees 1, 0 (the augmentation; Q = 1 gives kH -> k).
ChainComplex augmentation(const Subgroup& h, const Subgroup& q, unsigned p);
ChainComplex augmentation(const Subgroup& h, unsigned p);
/// kH -> kH given by the norm element, in degrees 1, 0.
ChainComplex norm_complex(const Subgroup& h, unsigned p);
/// Truncated minimal projective resolution P_{n-1} -> ... -> P_0 -> k, k in degree 0.
ChainComplex periodic_truncation(const Subgroup& h, unsigned p, int n);
/// kG -> kX -> k over the frozen SD16 with X = G/H, H a noncentral involution subgroup.
ChainComplex sd16_CE();

/// Catalog lookup. Names: augmentation, omega_complex, norm, periodic_truncation,
/// sd16_CE. The group is ignored for sd16_CE; length is used by periodic_truncation.
ChainComplex named_example(const std::string& name, const std::string& group = "C2", unsigned p = 2, int length = 2);
std::vector<std::string> named_example_list();

}  // namespace ppcx
