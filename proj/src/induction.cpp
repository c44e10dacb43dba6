#include "ppcx/induction.hpp"

#include <map>

#include "ppcx/endo.hpp"

namespace ppcx {

namespace {

void require_pperm(const Module& m, std::uint64_t seed) {
    if (m.pperm_known()) return;
    require(is_p_permutation(m, seed), ErrorKind::NotPPermutation, "module '" + m.label() + "' is not p-permutation");
}

void require_setup(const Subgroup& h, const Subgroup& g, const Subgroup& p, unsigned prime) {
    require(h.is_subgroup_of(g), ErrorKind::NotSubgroup, "H is not a subgroup of G");
    require(p.is_subgroup_of(g), ErrorKind::NotSubgroup, "P is not a subgroup of G");
    require(p.is_p_group(prime), ErrorKind::NotPGroup, "P is not a p-group");
}

int p_part(int n, unsigned p) {
    int out = 1;
    while (n % static_cast<int>(p) == 0) {
        n /= static_cast<int>(p);
        out *= static_cast<int>(p);
    }
    return out;
}

// Double coset reps x of N_G(P) \ G / H with P <= ^xH, restricted to G.
std::vector<int> contributing_reps(const Subgroup& g, const Subgroup& h, const Subgroup& p) {
    const auto& amb = g.ambient();
    Subgroup n = p.normalizer(g);
    std::vector<int> out;
    for (int x : double_cosets(amb, n, h)) {
        if (!g.contains(x)) continue;
        if (p.is_subgroup_of(h.conjugate(x))) out.push_back(x);
    }
    return out;
}

}  // namespace

MackeyBrauerDecomposition mackey_brauer_rhs(const Module& m, const Subgroup& g, const Subgroup& p, std::uint64_t seed) {
    const Subgroup& h = m.group();
    require_setup(h, g, p, m.p());
    require_pperm(m, seed);
    MackeyBrauerDecomposition out{g, h, p, m, {}, {}};
    Subgroup n = p.normalizer(g);
    std::vector<Module> parts;
    for (int x : contributing_reps(g, h, p)) {
        Module local = brauer(conjugate(m, x), p);
        Module part = induce_to(local, n).with_label("Ind(" + m.label() + "^x(P))");
        out.terms.push_back({x, part});
        parts.push_back(part);
    }
    out.assembled = parts.empty() ? Module::zero(n, m.p()) : direct_sum(parts);
    return out;
}

MackeyVerification verify_mackey_brauer(const Module& m, const Subgroup& g, const Subgroup& p, std::uint64_t seed) {
    MackeyBrauerDecomposition rhs = mackey_brauer_rhs(m, g, p, seed);
    Module lhs = brauer(induce_to(m, g), p);
    MackeyVerification v;
    v.lhs_dim = lhs.dim();
    v.rhs_dim = rhs.assembled.dim();
    v.witness = iso_test(lhs, rhs.assembled, seed);
    v.iso = v.witness.has_value();
    return v;
}

MackeyVerification verify_mackey_brauer(const ChainComplex& c, const Subgroup& g, const Subgroup& p,
                                        std::uint64_t seed) {
    const Subgroup& h = c.group();
    require_setup(h, g, p, c.p());
    require_p_permutation_terms(c, seed);
    Subgroup n = p.normalizer(g);
    ChainComplex lhs = brauer_chain(induce_to(c, g), p);
    std::vector<ChainComplex> parts;
    for (int x : contributing_reps(g, h, p)) parts.push_back(induce_to(brauer_chain(conjugate(c, x), p), n));
    ChainComplex rhs = parts.empty() ? ChainComplex::zero(n, c.p()) : direct_sum(parts);
    MackeyVerification v;
    for (int i = lhs.lo(); i <= lhs.hi(); ++i) v.lhs_dim += lhs.dim(i);
    for (int i = rhs.lo(); i <= rhs.hi(); ++i) v.rhs_dim += rhs.dim(i);
    v.chain_witness = chain_iso_test(lhs, rhs, seed);
    v.iso = v.chain_witness.has_value();
    return v;
}

namespace {

// Subgroups of H up to H-conjugacy.
std::vector<Subgroup> subgroups_of_up_to_conj(const Subgroup& h) {
    std::vector<Subgroup> out;
    for (const auto& s : all_subgroups(h.ambient())) {
        if (!s.is_subgroup_of(h)) continue;
        bool seen = false;
        for (const auto& t : out) {
            if (t.order() != s.order()) continue;
            for (int x : h.elements())
                if (s.conjugate(x) == t) {
                    seen = true;
                    break;
                }
            if (seen) break;
        }
        if (!seen) out.push_back(s);
    }
    return out;
}

}  // namespace

std::vector<MackeySweepCase> mackey_sweep(const GroupPtr& g, unsigned p, std::uint64_t seed) {
    Subgroup whole = Subgroup::whole(g);
    auto tab = p_subgroup_table(g, p);
    std::vector<MackeySweepCase> out;
    for (const auto& h : subgroup_class_reps(g)) {
        for (const auto& q : subgroups_of_up_to_conj(h)) {
            Module m = Module::perm_on_cosets(h, q, p);
            std::string mlabel = q == h ? "k" : q.is_trivial() ? "kH" : "k[H/" + q.describe() + "]";
            for (int i = 0; i < tab->size(); ++i) {
                auto v = verify_mackey_brauer(m, whole, tab->reps[i], seed);
                out.push_back({g->name(), p, h.describe(), mlabel, tab->rep_label(i), v.lhs_dim, v.rhs_dim, v.iso});
            }
        }
    }
    return out;
}

std::optional<int> local_degree(const ChainComplex& c, const Subgroup& q) {
    std::optional<int> deg;
    for (auto [i, d] : homology_dims(brauer_chain(c, q))) {
        if (d == 0) continue;
        if (deg) return std::nullopt;
        deg = i;
    }
    return deg;
}

StabilityReport g_stable(const ChainComplex& c, const Subgroup& g) {
    const Subgroup& h = c.group();
    require(h.is_subgroup_of(g), ErrorKind::NotSubgroup, "complex group is not a subgroup of G");
    auto tab = p_subgroup_table(h.ambient(), c.p());
    // One p-subgroup of H per H-class, with its local degree.
    std::vector<std::pair<Subgroup, int>> marks;
    for (const auto& e : tab->all) {
        const Subgroup& q = e.sub;
        if (!q.is_subgroup_of(h) || !q.is_subgroup_of(g)) continue;
        bool seen = false;
        for (const auto& [t, _] : marks) {
            if (t.order() != q.order()) continue;
            for (int x : h.elements())
                if (q.conjugate(x) == t) {
                    seen = true;
                    break;
                }
            if (seen) break;
        }
        if (seen) continue;
        if (auto d = local_degree(c, q)) marks.emplace_back(q, *d);
    }
    StabilityReport r;
    for (std::size_t i = 0; i < marks.size(); ++i)
        for (std::size_t j = i + 1; j < marks.size(); ++j) {
            const auto& [a, ha] = marks[i];
            const auto& [b, hb] = marks[j];
            if (a.order() != b.order() || ha == hb) continue;
            bool fused = false;
            for (int x : g.elements())
                if (a.conjugate(x) == b) {
                    fused = true;
                    break;
                }
            if (!fused) continue;
            r.stable = false;
            r.P = a;
            r.Q = b;
            r.hP = ha;
            r.hQ = hb;
            return r;
        }
    return r;
}

ChainComplex induce_chain(const ChainComplex& c, const Subgroup& g) { return induce_to(c, g); }

ChainComplex green(const ChainComplex& c, GreenDirection dir, const Subgroup& h, const Subgroup& g, std::uint64_t seed) {
    const unsigned p = c.p();
    require(h.is_subgroup_of(g), ErrorKind::NotSubgroup, "H is not a subgroup of G");
    require(c.group() == (dir == GreenDirection::Down ? g : h), ErrorKind::GroupMismatch,
            dir == GreenDirection::Down ? "complex must live over G" : "complex must live over H");
    const int sylow = p_part(g.order(), p);
    require(p_part(h.order(), p) == sylow, ErrorKind::InvalidInput, "H does not contain a Sylow subgroup of G");
    Subgroup s;
    for (const auto& e : p_subgroup_table(g.ambient(), p)->all)
        if (e.sub.order() == sylow && e.sub.is_subgroup_of(h)) {
            s = e.sub;
            break;
        }
    require(s.valid(), ErrorKind::Internal, "no Sylow subgroup inside H");
    const bool normalizer_inside = s.normalizer(g).is_subgroup_of(h);
    require(chain_is_indecomposable(c), ErrorKind::NotIndecomposable, "complex is not indecomposable");
    require(chain_vertex(c).vertex.order() == sylow, ErrorKind::VertexNotSylow, "complex does not have Sylow vertex");
    if (h == g) return c;

    ChainComplex moved = dir == GreenDirection::Down ? restrict_to(c, h) : induce_to(c, g);
    std::optional<ChainComplex> found;
    for (const auto& sm : chain_decompose(moved, seed)) {
        if (sm.complex.is_zero()) continue;
        int order = chain_vertex(sm.complex).vertex.order();
        if (order == sylow) {
            require(!found, normalizer_inside ? ErrorKind::Internal : ErrorKind::InvalidInput,
                    "more than one summand with Sylow vertex");
            found = sm.complex;
        }
    }
    require(found.has_value(), ErrorKind::Internal, "no summand with Sylow vertex");
    return found->with_label("green(" + c.label() + ")");
}

std::vector<ChainComplex> restriction_lifts(const ChainComplex& d, const Subgroup& g, std::uint64_t seed) {
    const Subgroup& h = d.group();
    require(h.is_subgroup_of(g), ErrorKind::NotSubgroup, "complex group is not a subgroup of G");
    const int sylow = p_part(g.order(), d.p());
    ChainComplex target = strip_contractibles(d, seed);
    std::vector<ChainComplex> out;
    for (const auto& sm : chain_decompose(induce_to(d, g), seed)) {
        if (sm.complex.is_zero() || chain_vertex(sm.complex).vertex.order() != sylow) continue;
        ChainComplex res = strip_contractibles(restrict_to(sm.complex, h), seed);
        if (chain_iso_test(res, target, seed)) out.push_back(sm.complex.with_label("lift(" + d.label() + ")"));
    }
    return out;
}

}  // namespace ppcx
