#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ppcx/fp_matrix.hpp"
#include "ppcx/group.hpp"

namespace ppcx {

/// A finite-dimensional left kH-module for a subgroup H of an ambient permutation
/// group, given by the matrices of H's generators. Cheap to copy (shared data).
class Module {
public:
    Module() = default;

    static Module zero(const Subgroup& h, unsigned p);
    static Module trivial(const Subgroup& h, unsigned p);
    static Module regular(const Subgroup& h, unsigned p);
    /// k[H/K] with basis the left cosets tK ordered by their minimal element.
    static Module perm_on_cosets(const Subgroup& h, const Subgroup& k, unsigned p);
    /// One-dimensional module; values are the images of H's generators (validated).
    static Module one_dim(const Subgroup& h, unsigned p, const std::vector<long long>& values);
    /// Arbitrary generator matrices (validated against the group law).
    static Module from_matrices(const Subgroup& h, unsigned p, std::vector<FpMatrix> mats, std::string label = "matrix");
    /// Unvalidated constructor for modules that are correct by construction.
    static Module make_unchecked(const Subgroup& h, unsigned p, int dim, std::vector<FpMatrix> mats, std::string label,
                                 bool pperm = false);

    bool valid() const { return d_ != nullptr; }
    const Subgroup& group() const { return d_->group; }
    unsigned p() const { return d_->p; }
    int dim() const { return d_->dim; }
    const std::vector<FpMatrix>& gen_actions() const { return d_->gens; }
    const std::string& label() const { return d_->label; }
    /// Matrices of all group elements, indexed by position in group().elements().
    const std::vector<FpMatrix>& all_actions() const;
    FpMatrix action(int elem) const;
    /// True if every generator acts by a permutation matrix.
    bool is_permutation() const { return d_->permutation; }
    /// Known to be p-permutation by construction (summand of a permutation module).
    bool pperm_known() const { return d_->pperm; }
    /// Set for Brauer quotients: the normal p-subgroup acting trivially.
    const std::optional<Subgroup>& trivial_on() const { return d_->trivial_on; }

    Module with_label(std::string label) const;
    Module with_trivial_on(const Subgroup& p) const;
    Module with_pperm(bool v) const;

private:
    struct Data {
        Subgroup group;
        unsigned p = 2;
        int dim = 0;
        std::vector<FpMatrix> gens;
        std::string label;
        bool permutation = false;
        bool pperm = false;
        std::optional<Subgroup> trivial_on;
        mutable std::once_flag acts_once;
        mutable std::vector<FpMatrix> acts;
    };
    std::shared_ptr<Data> d_;
};

struct ModuleHom {
    Module source;
    Module target;
    FpMatrix matrix;  ///< target.dim x source.dim
};

/// Throws unless M and N live over the same subgroup and field.
void check_compatible(const Module& m, const Module& n);
bool is_module_hom(const Module& m, const Module& n, const FpMatrix& f);

// Functors.
Module dual(const Module& m);
Module tensor(const Module& m, const Module& n);
Module hom_module(const Module& m, const Module& n);
Module direct_sum(const std::vector<Module>& ms);
Module direct_sum(const Module& a, const Module& b);
Module restrict_to(const Module& m, const Subgroup& k);
Module induce_to(const Module& m, const Subgroup& k);
Module inflate(const QuotientMap& q, const Module& m);
/// ^gM, a module over g H g^-1.
Module conjugate(const Module& m, int g);
/// Module with the same matrices over another realization of the same abstract group,
/// matching generators by permutation.
Module rebase(const Module& m, const Subgroup& target);

/// Invariant subspace (columns of basis) as a submodule.
Module submodule(const Module& m, const FpMatrix& basis, std::string label = "sub");
/// Quotient by an invariant subspace; also returns the quotient map if requested.
Module quotient_module(const Module& m, const FpMatrix& sub_basis, FpMatrix* qmap = nullptr);
/// U / W for invariant W ⊆ U; optional matrices: coordinates map (q x n) and lift (n x q).
Module subquotient_module(const Module& m, const FpMatrix& u, const FpMatrix& w, FpMatrix* coords = nullptr,
                          FpMatrix* lift = nullptr, std::string label = "subquotient");

/// Basis (columns) of the fixed points M^K for a subgroup K of M's group.
FpMatrix fixed_points(const Module& m, const Subgroup& k);
/// Matrix of the relative trace tr^P_Q = sum over P/Q of the action.
FpMatrix relative_trace(const Module& m, const Subgroup& q, const Subgroup& p);

/// Brauer quotient M(P) as a module over N_H(P) with P recorded as acting trivially.
Module brauer(const Module& m, const Subgroup& p);
/// Also returns the data of the quotient map M^P -> M(P).
struct BrauerData {
    Module module;
    FpMatrix fixed;      ///< basis of M^P (n x f)
    FpMatrix traces;     ///< basis of the trace subspace
    FpMatrix complement; ///< representatives of a basis of M(P) (n x q)
    FpMatrix coords;     ///< q x n, coordinates of fixed vectors modulo traces
};
BrauerData brauer_data(const Module& m, const Subgroup& p);

std::vector<FpMatrix> hom_space(const Module& m, const Module& n);
std::optional<FpMatrix> iso_test(const Module& m, const Module& n, std::uint64_t seed = 0);

struct Summand {
    Module module;
    FpMatrix embed;  ///< dim M x dim summand
    FpMatrix proj;   ///< dim summand x dim M
    int iso_class = 0;
};

struct DecompositionReport {
    std::vector<Summand> summands;
    std::vector<int> class_first;   ///< index of the first summand of each iso class
    std::vector<int> multiplicity;  ///< per iso class
};

DecompositionReport decompose(const Module& m, std::uint64_t seed = 0);
/// Iso test for modules known to be indecomposable (local endomorphism rings).
std::optional<FpMatrix> iso_indecomposable(const Module& a, const Module& b);
bool is_indecomposable(const Module& m);

struct VertexResult {
    int rep = 0;  ///< index into the p-subgroup table of the module's group
    Subgroup vertex;
    bool trivial_source = false;
    bool used_brauer_shortcut = false;
};
/// The same module over its group realized as a whole permutation group.
Module over_whole_group(const Module& m);

/// Vertex of an indecomposable module. Modules over a proper subgroup are first
/// moved to the realization of that subgroup as a group (see over_whole_group), and
/// the vertex refers to that group's p-subgroup table.
VertexResult vertex(const Module& m, std::uint64_t seed = 0);
/// Higman's criterion: is M relatively projective with respect to the given subgroups
/// (sum over the family of relative traces hits the identity)?
bool is_relatively_projective(const Module& m, const std::vector<Subgroup>& family);

/// Values of a 1-dimensional module on the generators of its group.
std::vector<unsigned> character1d(const Module& m);
/// Values of a 1-dimensional module on every element (by position).
std::vector<unsigned> character_values(const Module& m);

/// True iff M is p-permutation (every indecomposable summand is a summand of some k[G/P]).
bool is_p_permutation(const Module& m, std::uint64_t seed = 0);

}  // namespace ppcx
