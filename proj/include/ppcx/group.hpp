#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ppcx/error.hpp"

namespace ppcx {

/// A permutation of {0..n-1}, stored as the image list.
using Perm = std::vector<int>;

inline constexpr int kDefaultGroupCap = 96;

Perm perm_from_cycles(int degree, const std::vector<std::vector<int>>& cycles);
std::vector<std::vector<int>> perm_to_cycles(const Perm& p);

class PermGroup;
using GroupPtr = std::shared_ptr<const PermGroup>;
struct PSubgroupTable;

/// Finite permutation group with its full element list. Elements are indexed
/// in lexicographic order of their image lists, so index 0 is the identity.
/// Composition convention: (a*b)(x) = a(b(x)).
class PermGroup {
public:
    static GroupPtr make(std::string name, int degree, const std::vector<Perm>& generators,
                         int cap = kDefaultGroupCap);

    const std::string& name() const { return name_; }
    int degree() const { return degree_; }
    int order() const { return static_cast<int>(elems_.size()); }
    int cap() const { return cap_; }
    const std::vector<Perm>& generator_perms() const { return gen_perms_; }
    /// Element indices of the generators (identity generators dropped).
    const std::vector<int>& generators() const { return gens_; }
    const Perm& perm(int e) const { return elems_[e]; }
    int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * order() + b]; }
    int inv(int a) const { return inv_[a]; }
    /// g x g^-1
    int conj(int g, int x) const { return mul(mul(g, x), inv_[g]); }
    int elem_order(int a) const { return ord_[a]; }
    int pow(int a, long long k) const;
    /// Index of a permutation, or -1 if it is not an element.
    int index_of(const Perm& p) const;

    std::shared_ptr<const PSubgroupTable> p_table(unsigned p) const;

private:
    PermGroup() = default;
    std::string name_;
    int degree_ = 0;
    int cap_ = kDefaultGroupCap;
    std::vector<Perm> gen_perms_;
    std::vector<int> gens_;
    std::vector<Perm> elems_;
    std::vector<int> table_;
    std::vector<int> inv_;
    std::vector<int> ord_;
    mutable std::mutex cache_mu_;
    mutable std::map<unsigned, std::shared_ptr<const PSubgroupTable>> p_tables_;
    friend std::shared_ptr<const PSubgroupTable> build_p_table(const GroupPtr& g, unsigned p);
    std::weak_ptr<const PermGroup> self_;
};

/// Subgroup of an ambient PermGroup, given by generators; elements are cached
/// and sorted canonically. Cheap to copy.
class Subgroup {
public:
    Subgroup() = default;
    static Subgroup generated(const GroupPtr& g, const std::vector<int>& gens);
    /// From a known closed element set; picks generators greedily in canonical order.
    static Subgroup from_elements(const GroupPtr& g, std::vector<int> elems);
    static Subgroup whole(const GroupPtr& g);
    static Subgroup trivial(const GroupPtr& g);

    bool valid() const { return d_ != nullptr; }
    const GroupPtr& ambient() const { return d_->ambient; }
    int order() const { return static_cast<int>(d_->elems.size()); }
    const std::vector<int>& generators() const { return d_->gens; }
    const std::vector<int>& elements() const { return d_->elems; }
    bool contains(int e) const { return d_->pos[e] >= 0; }
    /// Position of an ambient element in elements(), or -1.
    int position(int e) const { return d_->pos[e]; }
    /// Spanning-tree data: element at position i equals parent_elem * gen(gen_index).
    int tree_parent(int pos) const { return d_->parent[pos]; }
    int tree_gen(int pos) const { return d_->via[pos]; }
    /// Positions in BFS order (parents before children).
    const std::vector<int>& bfs_order() const { return d_->bfs; }
    /// Generator indices w with e = g_{w[0]} * g_{w[1]} * ...
    std::vector<int> word(int e) const;

    bool is_trivial() const { return order() == 1; }
    bool is_subgroup_of(const Subgroup& o) const;
    bool operator==(const Subgroup& o) const;
    bool operator!=(const Subgroup& o) const { return !(*this == o); }
    bool operator<(const Subgroup& o) const;  ///< canonical order: by order, then elements

    Subgroup conjugate(int g) const;  ///< g H g^-1
    Subgroup intersect(const Subgroup& o) const;
    /// N_K(H) for K = within (defaults to the whole group).
    Subgroup normalizer(const Subgroup& within) const;
    bool is_normal_in(const Subgroup& o) const;
    bool is_p_group(unsigned p) const;
    /// Left coset representatives of H (this) in K: minimal element of each coset
    /// gH, listed in increasing order.
    std::vector<int> left_transversal(const Subgroup& over) const;
    std::string describe() const;

private:
    struct Data {
        GroupPtr ambient;
        std::vector<int> gens;
        std::vector<int> elems;
        std::vector<int> pos;
        std::vector<int> parent;
        std::vector<int> via;
        std::vector<int> bfs;
    };
    std::shared_ptr<const Data> d_;
};

/// closure(parent, gens): subgroup generated by gens.
Subgroup closure(const GroupPtr& g, const std::vector<int>& gens);

/// Table of G-conjugacy classes of p-subgroups.
struct PSubgroupTable {
    GroupPtr group;
    unsigned p = 2;
    std::vector<Subgroup> reps;         ///< sorted by (order, elements)
    std::vector<Subgroup> normalizers;  ///< N_G(rep)
    std::vector<int> sylow;             ///< indices of Sylow reps (exactly one)
    std::vector<std::vector<char>> leq; ///< leq[i][j]: rep i ≤_G rep j
    struct Entry {
        Subgroup sub;
        int rep;
        int witness;  ///< g with g sub g^-1 = reps[rep]
    };
    std::vector<Entry> all;  ///< every p-subgroup of G

    int size() const { return static_cast<int>(reps.size()); }
    int sylow_index() const { return sylow.at(0); }
    int rep_index(const Subgroup& s) const;
    int witness(const Subgroup& s) const;
    /// Index of the class containing s, together with a witness g: g s g^-1 = reps[idx].
    std::pair<int, int> locate(const Subgroup& s) const;
    std::string rep_label(int i) const;
};

std::shared_ptr<const PSubgroupTable> p_subgroup_table(const GroupPtr& g, unsigned p);

/// Representatives of A \ G / B: the minimal element of each double coset.
std::vector<int> double_cosets(const GroupPtr& g, const Subgroup& a, const Subgroup& b);

/// Some g with g P g^-1 = Q, scanning elements in canonical order.
std::optional<int> conjugate_test(const GroupPtr& g, const Subgroup& p, const Subgroup& q);

/// Conjugacy class representatives of all subgroups (sorted canonically).
std::vector<Subgroup> subgroup_class_reps(const GroupPtr& g);
/// All subgroups of g (sorted canonically).
std::vector<Subgroup> all_subgroups(const GroupPtr& g);

/// Quotient H/N realized as a permutation group on the left cosets of N in H.
struct QuotientMap {
    Subgroup source;  ///< H
    Subgroup kernel;  ///< N
    GroupPtr quotient;
    std::vector<int> image;  ///< ambient element -> quotient element (-1 outside H)
    int lift(int q) const;   ///< some preimage in H (minimal)
};
QuotientMap quotient(const Subgroup& h, const Subgroup& n);

unsigned p_part(long long n, unsigned p);

/// The subgroup as a permutation group in its own right (cached, so repeated
/// calls return the same group). Returns the ambient group for whole subgroups.
GroupPtr realize_as_group(const Subgroup& h);

}  // namespace ppcx
