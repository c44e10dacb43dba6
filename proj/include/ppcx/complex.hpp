#pragma once

#include <map>
#include <optional>
#include <vector>

#include "ppcx/module.hpp"

namespace ppcx {

/// Bounded chain complex of kH-modules with homological indexing:
/// d_i : C_i -> C_{i-1}. Terms outside [lo, hi] are zero.
class ChainComplex {
public:
    ChainComplex() = default;

    /// terms[j] sits in degree lo + j; diffs[j] is d_{lo+j+1} : C_{lo+j+1} -> C_{lo+j}.
    static ChainComplex make(const Subgroup& h, unsigned p, int lo, std::vector<Module> terms, std::vector<FpMatrix> diffs,
                             std::string label = "C", bool validate = true);
    static ChainComplex zero(const Subgroup& h, unsigned p);
    static ChainComplex singleton(const Module& m, int degree);

    const Subgroup& group() const { return group_; }
    unsigned p() const { return p_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(terms_.size()) - 1; }
    bool is_zero() const;
    const Module& term(int i) const;
    int dim(int i) const;
    /// d_i : C_i -> C_{i-1}, a zero matrix of the right shape when either side vanishes.
    FpMatrix d(int i) const;
    int total_dim() const;
    /// Offset of degree i in the total space (degrees ascending).
    int offset(int i) const;
    const std::string& label() const { return label_; }
    ChainComplex with_label(std::string label) const;
    /// Euler characteristic sum (-1)^i dim C_i.
    int euler() const;
    bool pperm_known() const;

private:
    Subgroup group_;
    unsigned p_ = 2;
    int lo_ = 0;
    std::vector<Module> terms_;
    std::vector<FpMatrix> diffs_;
    std::string label_;
    Module zero_;
};

/// Degreewise maps f_i : X_i -> Y_i.
struct ChainMap {
    ChainComplex source;
    ChainComplex target;
    std::map<int, FpMatrix> comps;
    FpMatrix at(int i) const;
    /// Block-diagonal matrix on the total spaces.
    FpMatrix total() const;
};

bool is_chain_map(const ChainMap& f);
ChainMap compose(const ChainMap& g, const ChainMap& f);
ChainMap identity_map(const ChainComplex& c);
/// Splits a total block-diagonal matrix back into components.
ChainMap chain_map_from_total(const ChainComplex& x, const ChainComplex& y, const FpMatrix& total);

struct HomologyData {
    Module module;
    FpMatrix cycles;      ///< basis of ker d_i
    FpMatrix boundaries;  ///< basis of im d_{i+1}
    FpMatrix lift;        ///< n x h, cycle representatives of a basis of H_i
    FpMatrix coords;      ///< h x n, class of a cycle in that basis
};

HomologyData homology_data(const ChainComplex& c, int i);
/// Nonzero homology modules by degree.
std::map<int, Module> homology(const ChainComplex& c);
std::map<int, int> homology_dims(const ChainComplex& c);

ChainComplex dual(const ChainComplex& c);
/// C[n]_i = C_{i-n}.
ChainComplex shift(const ChainComplex& c, int n);
ChainComplex tensor(const ChainComplex& c, const ChainComplex& d);
ChainComplex cone(const ChainMap& f);
ChainComplex direct_sum(const std::vector<ChainComplex>& cs);
ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b);
ChainComplex restrict_to(const ChainComplex& c, const Subgroup& k);
ChainComplex induce_to(const ChainComplex& c, const Subgroup& k);
ChainComplex inflate(const QuotientMap& q, const ChainComplex& c);
ChainComplex conjugate(const ChainComplex& c, int g);
ChainComplex rebase(const ChainComplex& c, const Subgroup& target);

/// Componentwise Brauer construction over N_H(P).
ChainComplex brauer_chain(const ChainComplex& c, const Subgroup& p);

/// Basis of the space of chain maps X -> Y.
std::vector<ChainMap> chain_hom(const ChainComplex& x, const ChainComplex& y);

/// G-equivariant projection M -> W (coordinates in the given basis of the invariant
/// subspace W) restricting to the identity on W, if W is a direct summand.
std::optional<FpMatrix> split_projection(const Module& m, const FpMatrix& basis);

/// Every ker d_i is a summand of C_i and every im d_{i+1} a summand of ker d_i.
bool is_split_complex(const ChainComplex& c);
/// Acyclic and split.
bool is_contractible(const ChainComplex& c);

/// Removes contractible summands 0 -> A -> A -> 0 by Gaussian elimination on
/// isomorphism components between indecomposable summands of adjacent terms.
/// Terms of the result are direct sums of indecomposables.
ChainComplex strip_contractibles(const ChainComplex& c, std::uint64_t seed = 0);

struct ChainSummand {
    ChainComplex complex;
    std::map<int, FpMatrix> embed;
    std::map<int, FpMatrix> proj;
    int iso_class = 0;
};

std::vector<ChainSummand> chain_decompose(const ChainComplex& c, std::uint64_t seed = 0);
bool chain_is_indecomposable(const ChainComplex& c);
std::optional<ChainMap> chain_iso_indecomposable(const ChainComplex& a, const ChainComplex& b);
std::optional<ChainMap> chain_iso_test(const ChainComplex& a, const ChainComplex& b, std::uint64_t seed = 0);

/// Higman's criterion for complexes.
bool chain_is_relatively_projective(const ChainComplex& c, const std::vector<Subgroup>& family);

struct ChainVertex {
    int rep = 0;
    Subgroup vertex;
};
/// Vertex of an indecomposable complex, as a class of the p-subgroup table of
/// the group of the (rebased, if needed) complex.
ChainVertex chain_vertex(const ChainComplex& c);
/// The complex rebased onto a whole permutation group if its group is proper.
ChainComplex over_whole_group(const ChainComplex& c);

}  // namespace ppcx
