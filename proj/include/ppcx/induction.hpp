#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ppcx/complex.hpp"

namespace ppcx {

/// (Ind_H^G M)(P) assembled term by term over double cosets N_G(P) x H with P <= ^xH.
struct MackeyBrauerDecomposition {
    Subgroup G, H, P;
    Module M;
    struct Term {
        int x;       ///< double coset representative
        Module part; ///< Ind^{N_G(P)}_{N_G(P) ∩ ^xH} ((^xM)(P))
    };
    std::vector<Term> terms;
    Module assembled;  ///< over N_G(P)
};

/// M is a p-permutation module over H <= G; P a p-subgroup of G.
MackeyBrauerDecomposition mackey_brauer_rhs(const Module& m, const Subgroup& g, const Subgroup& p,
                                            std::uint64_t seed = 0);

struct MackeyVerification {
    int lhs_dim = 0;
    int rhs_dim = 0;
    bool iso = false;
    std::optional<FpMatrix> witness;  ///< lhs -> rhs for modules
    std::optional<ChainMap> chain_witness;
};

/// Compares Brauer(Ind M) at P with the assembled right-hand side.
MackeyVerification verify_mackey_brauer(const Module& m, const Subgroup& g, const Subgroup& p, std::uint64_t seed = 0);
/// The same for a complex of p-permutation modules, termwise with the induced differentials.
MackeyVerification verify_mackey_brauer(const ChainComplex& c, const Subgroup& g, const Subgroup& p,
                                        std::uint64_t seed = 0);

struct MackeySweepCase {
    std::string group;
    unsigned p = 2;
    std::string H, M, P;
    int lhs_dim = 0;
    int rhs_dim = 0;
    bool iso = false;
};
/// Every H up to conjugacy, every p-subgroup class P, and M = k[H/Q] for Q up to
/// H-conjugacy (Q = 1 gives kH, Q = H gives k).
std::vector<MackeySweepCase> mackey_sweep(const GroupPtr& g, unsigned p, std::uint64_t seed = 0);

/// Local profile of C at a p-subgroup Q: the single degree of nonzero homology of
/// C(Q), if there is exactly one.
std::optional<int> local_degree(const ChainComplex& c, const Subgroup& q);

struct StabilityReport {
    bool stable = true;
    std::optional<Subgroup> P, Q;  ///< a G-fused pair with different marks
    int hP = 0;
    int hQ = 0;
};
/// C over H <= G: marks agree at every pair of p-subgroups of H fused in G.
StabilityReport g_stable(const ChainComplex& c, const Subgroup& g);

ChainComplex induce_chain(const ChainComplex& c, const Subgroup& g);

enum class GreenDirection { Down, Up };

/// Green correspondent of an indecomposable complex with Sylow vertex between G and
/// H containing a Sylow subgroup S. Down: C over G, result over H. Up: C over H,
/// result over G. If H does not contain N_G(S) the call still succeeds when the
/// Sylow-vertex summand happens to be unique (InvalidInput otherwise).
/// The result is the unique summand with Sylow vertex; every other summand of the
/// restriction (or induction) is checked to have a strictly smaller vertex.
ChainComplex green(const ChainComplex& c, GreenDirection dir, const Subgroup& h, const Subgroup& g,
                   std::uint64_t seed = 0);

/// Summands E of Ind_H^G D with Sylow vertex whose restriction to H is D up to
/// contractible summands. For D over a Sylow subgroup these are the complexes over G
/// restricting to D.
std::vector<ChainComplex> restriction_lifts(const ChainComplex& d, const Subgroup& g, std::uint64_t seed = 0);

}  // namespace ppcx
