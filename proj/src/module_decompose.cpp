#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

#include "ppcx/algebra.hpp"
#include "ppcx/module.hpp"

namespace ppcx {

namespace {

constexpr std::uint64_t kInternalSeed = 0x5eedc0de;

struct Fingerprint {
    int dim = 0;
    int norm_rank = 0;
    std::vector<int> gen_ranks;
    bool operator==(const Fingerprint&) const = default;
};

Fingerprint fingerprint(const Module& m) {
    Fingerprint f;
    f.dim = m.dim();
    if (m.dim() == 0) return f;
    FpMatrix s(m.p(), m.dim(), m.dim());
    for (const auto& a : m.all_actions()) s += a;
    f.norm_rank = rank(s);
    for (const auto& a : m.gen_actions()) f.gen_ranks.push_back(rank(a - FpMatrix::identity(m.p(), m.dim())));
    return f;
}

std::vector<Summand> decompose_generic(const Module& m, std::uint64_t seed) {
    auto end = hom_space(m, m);
    Rng rng(seed);
    auto pieces = primitive_pieces(end, m.p(), m.dim(), rng);
    std::vector<Summand> out;
    for (const auto& pc : pieces) {
        std::vector<FpMatrix> mats;
        for (const auto& a : m.gen_actions()) mats.push_back(pc.proj * a * pc.embed);
        Summand s;
        s.module = Module::make_unchecked(m.group(), m.p(), pc.dim(), std::move(mats), "", m.pperm_known());
        s.embed = pc.embed;
        s.proj = pc.proj;
        out.push_back(std::move(s));
    }
    return out;
}

using CacheKey = std::tuple<const PermGroup*, std::vector<int>, std::vector<int>, unsigned>;

struct CacheEntry {
    GroupPtr keep_alive;
    std::vector<Summand> summands;
};

// Indecomposable summands of k[H/K] in the coset basis of Module::perm_on_cosets.
std::vector<Summand> coset_module_summands(const Subgroup& h, const Subgroup& k, unsigned p) {
    static std::mutex mu;
    static std::map<CacheKey, CacheEntry> cache;
    CacheKey key{h.ambient().get(), h.elements(), k.elements(), p};
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second.summands;
    }
    auto res = decompose_generic(Module::perm_on_cosets(h, k, p), kInternalSeed);
    std::lock_guard<std::mutex> lk(mu);
    cache.emplace(key, CacheEntry{h.ambient(), res});
    return res;
}

std::vector<Summand> decompose_permutation(const Module& m) {
    const Subgroup& h = m.group();
    const auto& g = h.ambient();
    const unsigned p = m.p();
    const int n = m.dim();
    const int ng = static_cast<int>(h.generators().size());
    std::vector<std::vector<int>> gp(ng, std::vector<int>(n));
    for (int s = 0; s < ng; ++s)
        for (int c = 0; c < n; ++c)
            for (int r = 0; r < n; ++r)
                if (m.gen_actions()[s].at(r, c)) gp[s][c] = r;
    std::vector<std::vector<int>> ep(h.order(), std::vector<int>(n));
    for (int pos : h.bfs_order()) {
        int par = h.tree_parent(pos);
        for (int i = 0; i < n; ++i) ep[pos][i] = par < 0 ? i : ep[par][gp[h.tree_gen(pos)][i]];
    }
    std::vector<Summand> out;
    std::vector<char> seen(n, 0);
    for (int x = 0; x < n; ++x) {
        if (seen[x]) continue;
        std::vector<int> stab;
        for (int pos = 0; pos < h.order(); ++pos) {
            if (ep[pos][x] == x) stab.push_back(h.elements()[pos]);
            seen[ep[pos][x]] = 1;
        }
        Subgroup st = Subgroup::from_elements(g, stab);
        // coset t_i K  ->  point t_i(x)
        std::vector<int> reps = st.left_transversal(h);
        FpMatrix transport(p, n, static_cast<int>(reps.size()));
        for (std::size_t i = 0; i < reps.size(); ++i) transport.set(ep[h.position(reps[i])][x], static_cast<int>(i), 1);
        FpMatrix back = transport.transpose();
        for (auto s : coset_module_summands(h, st, p)) {
            s.embed = transport * s.embed;
            s.proj = s.proj * back;
            out.push_back(std::move(s));
        }
    }
    return out;
}

}  // namespace

std::optional<FpMatrix> iso_indecomposable(const Module& a, const Module& b) {
    check_compatible(a, b);
    if (a.dim() != b.dim()) return std::nullopt;
    if (a.dim() == 0) return FpMatrix(a.p(), 0, 0);
    if (!(fingerprint(a) == fingerprint(b))) return std::nullopt;
    auto f = hom_space(a, b);
    if (f.empty()) return std::nullopt;
    auto g = hom_space(b, a);
    // End(a) is local: the products g_j f_i are all non-invertible iff a and b are not isomorphic.
    for (const auto& fi : f)
        for (const auto& gj : g)
            if (invertible(gj * fi)) return fi;
    return std::nullopt;
}

bool is_indecomposable(const Module& m) {
    if (m.dim() == 0) return false;
    return algebra_is_local(hom_space(m, m), m.p(), m.dim());
}

DecompositionReport decompose(const Module& m, std::uint64_t seed) {
    DecompositionReport rep;
    if (m.dim() == 0) return rep;
    std::vector<Summand> parts = m.is_permutation() ? decompose_permutation(m) : decompose_generic(m, seed);
    std::vector<Fingerprint> fps;
    for (auto& s : parts) {
        Fingerprint fp = fingerprint(s.module);
        int cls = -1;
        for (std::size_t c = 0; c < rep.class_first.size() && cls < 0; ++c) {
            const Summand& first = rep.summands[rep.class_first[c]];
            if (fps[c] == fp && iso_indecomposable(first.module, s.module)) cls = static_cast<int>(c);
        }
        if (cls < 0) {
            cls = static_cast<int>(rep.class_first.size());
            rep.class_first.push_back(static_cast<int>(rep.summands.size()));
            rep.multiplicity.push_back(0);
            fps.push_back(fp);
        }
        rep.multiplicity[cls]++;
        s.iso_class = cls;
        s.module = s.module.with_label(m.label() + "#" + std::to_string(cls));
        rep.summands.push_back(std::move(s));
    }
    return rep;
}

namespace {

std::optional<FpMatrix> iso_by_sampling(const Module& m, const Module& n, const std::vector<FpMatrix>& hom,
                                        std::uint64_t seed, int tries) {
    Rng rng(seed);
    for (int t = 0; t < tries; ++t) {
        FpMatrix f(m.p(), n.dim(), m.dim());
        for (const auto& h : hom) f.add_scaled(h, rng.below(m.p()));
        if (invertible(f)) return f;
    }
    return std::nullopt;
}

}  // namespace

std::optional<FpMatrix> iso_test(const Module& m, const Module& n, std::uint64_t seed) {
    check_compatible(m, n);
    if (m.dim() != n.dim()) return std::nullopt;
    if (m.dim() == 0) return FpMatrix(m.p(), 0, 0);
    if (m.gen_actions() == n.gen_actions()) return FpMatrix::identity(m.p(), m.dim());
    auto hmn = hom_space(m, n);
    if (hmn.empty()) return std::nullopt;
    auto hnm = hom_space(n, m);
    if (hmn.size() != hnm.size()) return std::nullopt;
    if (hom_space(m, m).size() != hmn.size() || hom_space(n, n).size() != hmn.size()) return std::nullopt;
    if (auto f = iso_by_sampling(m, n, hmn, seed, 8)) return f;

    try {
        auto dm = decompose(m, seed);
        auto dn = decompose(n, seed);
        if (dm.summands.size() != dn.summands.size()) return std::nullopt;
        std::vector<char> used(dn.summands.size(), 0);
        FpMatrix iso(m.p(), n.dim(), m.dim());
        for (const auto& a : dm.summands) {
            bool found = false;
            for (std::size_t j = 0; j < dn.summands.size() && !found; ++j) {
                if (used[j]) continue;
                auto phi = iso_indecomposable(a.module, dn.summands[j].module);
                if (!phi) continue;
                used[j] = 1;
                found = true;
                iso += dn.summands[j].embed * (*phi) * a.proj;
            }
            if (!found) return std::nullopt;
        }
        require(invertible(iso) && is_module_hom(m, n, iso), ErrorKind::Internal, "assembled isomorphism is invalid");
        return iso;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Indeterminate) throw;
    }

    // Decomposition could not certify; search Hom directly.
    double space = 1;
    for (std::size_t i = 0; i < hmn.size() && space <= 1e6; ++i) space *= m.p();
    if (space <= 1e6) {
        const auto total = static_cast<long long>(space);
        for (long long code = 1; code < total; ++code) {
            FpMatrix f(m.p(), n.dim(), m.dim());
            long long c = code;
            for (const auto& h : hmn) {
                f.add_scaled(h, static_cast<unsigned>(c % m.p()));
                c /= m.p();
            }
            if (invertible(f)) return f;
        }
        return std::nullopt;
    }
    if (auto f = iso_by_sampling(m, n, hmn, seed + 1, 512)) return f;
    raise(ErrorKind::Indeterminate, "isomorphism test could not decide");
}

bool is_relatively_projective(const Module& m, const std::vector<Subgroup>& family) {
    const int n = m.dim();
    if (n == 0) return true;
    const unsigned p = m.p();
    const Subgroup& h = m.group();
    const auto& g = h.ambient();
    auto endg = hom_space(m, m);
    std::vector<FpMatrix> flat_cols;
    for (const auto& e : endg) flat_cols.push_back(FpMatrix::column(p, e.flat()));
    CoordinateMap cm(hstack(flat_cols, p, n * n));
    auto target = cm.coords(FpMatrix::identity(p, n).flat());
    Subspace span(p, cm.dim());
    const auto& acts = m.all_actions();
    for (const auto& q : family) {
        require(q.is_subgroup_of(h), ErrorKind::NotSubgroup, "relative projectivity family member is not a subgroup");
        if (q.order() == h.order()) return true;
        Module rq = restrict_to(m, q);
        auto endq = hom_space(rq, rq);
        auto reps = q.left_transversal(h);
        for (const auto& f : endq) {
            FpMatrix t(p, n, n);
            for (int x : reps) t += acts[h.position(x)] * f * acts[h.position(g->inv(x))];
            if (span.add(cm.coords(t.flat())) && span.contains(target)) return true;
        }
    }
    return span.contains(target);
}

Module over_whole_group(const Module& m) {
    const Subgroup& h = m.group();
    if (h.order() == h.ambient()->order()) return m;
    return rebase(m, Subgroup::whole(realize_as_group(h)));
}

VertexResult vertex(const Module& m0, std::uint64_t seed) {
    Module m = over_whole_group(m0);
    if (!is_indecomposable(m)) raise(ErrorKind::NotIndecomposable, "vertex of a decomposable module");
    const auto& g = m.group().ambient();
    auto tab = p_subgroup_table(g, m.p());
    VertexResult r;
    if (m.pperm_known()) {
        for (int i = tab->size() - 1; i >= 0; --i)
            if (brauer(m, tab->reps[i]).dim() > 0) {
                r.rep = i;
                r.used_brauer_shortcut = true;
                r.trivial_source = true;
                break;
            }
        require(r.used_brauer_shortcut, ErrorKind::NotPPermutation, "p-permutation module with no nonzero Brauer quotient");
    } else {
        r.rep = -1;
        for (int i = 0; i < tab->size() && r.rep < 0; ++i)
            if (is_relatively_projective(m, {tab->reps[i]})) r.rep = i;
        require(r.rep >= 0, ErrorKind::Internal, "module not projective relative to a Sylow subgroup");
        auto perm = Module::perm_on_cosets(m.group(), tab->reps[r.rep], m.p());
        for (const auto& s : decompose(perm, seed).summands)
            if (iso_indecomposable(s.module, m)) {
                r.trivial_source = true;
                break;
            }
    }
    r.vertex = tab->reps[r.rep];
    return r;
}

bool is_p_permutation(const Module& m, std::uint64_t seed) {
    if (m.pperm_known() || m.dim() == 0) return true;
    for (const auto& s : decompose(m, seed).summands)
        if (!vertex(s.module.with_pperm(false), seed).trivial_source) return false;
    return true;
}

}  // namespace ppcx
