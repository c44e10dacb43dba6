#include "ppcx/relproj.hpp"

namespace ppcx {

std::vector<int> RelProjContext::vanishing_set() const {
    std::vector<int> out;
    for (int i = 0; i < table->size(); ++i)
        if (vanishing[i]) out.push_back(i);
    return out;
}

std::vector<int> RelProjContext::support_set() const {
    std::vector<int> out;
    for (int i = 0; i < table->size(); ++i)
        if (!vanishing[i]) out.push_back(i);
    return out;
}

std::vector<int> RelProjContext::minimal_vanishing() const {
    std::vector<int> out;
    for (int i : vanishing_set()) {
        bool minimal = true;
        for (int j : vanishing_set())
            if (j != i && table->leq[j][i]) minimal = false;
        if (minimal) out.push_back(i);
    }
    return out;
}

std::vector<Subgroup> RelProjContext::family() const {
    std::vector<Subgroup> out;
    for (int i : generator_reps) out.push_back(table->reps[i]);
    return out;
}

FpMatrix evaluation_map(int dv, int dm, unsigned p) {
    FpMatrix e(p, dm, dv * dv * dm);
    for (int a = 0; a < dv; ++a)
        for (int c = 0; c < dm; ++c) e.set(c, (a * dv + a) * dm + c, 1);
    return e;
}

FpMatrix coevaluation_map(int dv, int dm, unsigned p) { return evaluation_map(dv, dm, p).transpose(); }

namespace {

bool factoring_criterion(const Module& x, const Module& v) {
    if (x.dim() == 0) return true;
    if (v.dim() == 0) return false;
    const unsigned p = x.p();
    Module w = tensor(tensor(dual(v), v), x);
    FpMatrix ev = evaluation_map(v.dim(), x.dim(), p);
    auto homs = hom_space(x, w);
    if (homs.empty()) return false;
    const int n = x.dim();
    std::vector<FpMatrix> cols;
    for (const auto& h : homs) cols.push_back(FpMatrix::column(p, (ev * h).flat()));
    return solve(hstack(cols, p, n * n), FpMatrix::column(p, FpMatrix::identity(p, n).flat())).has_value();
}

bool brauer_criterion(const Module& x, const RelProjContext& ctx) {
    for (int i : ctx.minimal_vanishing())
        if (brauer(x, ctx.table->reps[i]).dim() > 0) return false;
    return true;
}

}  // namespace

RelProjContext make_context(const Module& v, std::uint64_t seed) {
    require(v.group().order() == v.group().ambient()->order(), ErrorKind::GroupMismatch,
            "relative projectivity context needs a module over a whole group");
    RelProjContext ctx;
    ctx.V = v;
    ctx.table = p_subgroup_table(v.group().ambient(), v.p());
    const auto& tab = *ctx.table;
    for (int i = 0; i < tab.size(); ++i) {
        int d = brauer(v, tab.reps[i]).dim();
        ctx.brauer_dims.push_back(d);
        ctx.vanishing.push_back(d == 0);
    }
    ctx.v_pperm = v.dim() == 0 || v.pperm_known() || is_p_permutation(v, seed);
    if (ctx.v_pperm) {
        ctx.abs_p_divisible = ctx.vanishing[tab.sylow_index()] != 0;
    } else {
        ctx.abs_p_divisible = true;
        for (const auto& s : decompose(v, seed).summands)
            if (s.module.dim() % static_cast<int>(v.p()) != 0) ctx.abs_p_divisible = false;
    }
    // k[G/P] is V-projective iff (p-permutation V) P lies in the support; otherwise test directly.
    const Subgroup g = v.group();
    std::vector<char> ok(tab.size(), 0);
    for (int i = 0; i < tab.size(); ++i)
        ok[i] = ctx.v_pperm ? !ctx.vanishing[i] : factoring_criterion(Module::perm_on_cosets(g, tab.reps[i], v.p()), v);
    std::vector<Module> parts;
    for (int i = 0; i < tab.size(); ++i) {
        if (!ok[i]) continue;
        bool maximal = true;
        for (int j = 0; j < tab.size(); ++j)
            if (j != i && ok[j] && tab.leq[i][j]) maximal = false;
        if (!maximal) continue;
        ctx.generator_reps.push_back(i);
        parts.push_back(Module::perm_on_cosets(g, tab.reps[i], v.p()));
    }
    ctx.generator = parts.empty() ? Module::zero(g, v.p()) : direct_sum(parts).with_label("W");
    return ctx;
}

bool is_V_projective(const Module& x, const RelProjContext& ctx, VProjMethod method) {
    check_compatible(x, ctx.V);
    if (x.dim() == 0) return true;
    if (method == VProjMethod::Auto) {
        if (ctx.v_pperm && x.pperm_known())
            method = VProjMethod::Brauer;
        else
            method = VProjMethod::Higman;
    }
    switch (method) {
        case VProjMethod::Factoring:
            return factoring_criterion(x, ctx.V);
        case VProjMethod::Brauer:
            require(ctx.v_pperm, ErrorKind::NotPPermutation, "Brauer criterion needs p-permutation V");
            return brauer_criterion(x, ctx);
        default:
            return is_relatively_projective(x, ctx.family());
    }
}

bool is_V_projective(const ChainComplex& c, const RelProjContext& ctx) {
    if (c.is_zero()) return true;
    require(c.group() == ctx.group(), ErrorKind::GroupMismatch, "complex and context over different groups");
    return chain_is_relatively_projective(c, ctx.family());
}

ChainComplex strip_V_projectives(const ChainComplex& c, const RelProjContext& ctx, std::uint64_t seed) {
    if (c.is_zero()) return c;
    std::vector<ChainComplex> keep;
    for (const auto& s : chain_decompose(c, seed))
        if (!is_V_projective(s.complex, ctx)) keep.push_back(s.complex);
    if (keep.empty()) return ChainComplex::zero(c.group(), c.p());
    return direct_sum(keep).with_label("stripV(" + c.label() + ")");
}

Module strip_V_projectives(const Module& m, const RelProjContext& ctx, std::uint64_t seed) {
    if (m.dim() == 0) return m;
    std::vector<Module> keep;
    for (const auto& s : decompose(m, seed).summands)
        if (!is_V_projective(s.module, ctx)) keep.push_back(s.module);
    if (keep.empty()) return Module::zero(m.group(), m.p());
    return direct_sum(keep);
}

Module relative_syzygy(const Module& m, const RelProjContext& ctx, int n, std::uint64_t seed) {
    require(n >= -2 && n <= 2, ErrorKind::InvalidInput, "relative syzygies are supported for |n| <= 2");
    require(ctx.abs_p_divisible, ErrorKind::NotAbsolutelyPDivisible, "relative syzygy needs absolutely p-divisible V");
    if (n == 0) return strip_V_projectives(m, ctx, seed);
    if (n > 1) return relative_syzygy(relative_syzygy(m, ctx, 1, seed), ctx, n - 1, seed);
    if (n < -1) return relative_syzygy(relative_syzygy(m, ctx, -1, seed), ctx, n + 1, seed);
    const Module& v = ctx.V;
    Module w = tensor(tensor(dual(v), v), m);
    Module out;
    if (n == 1) {
        FpMatrix k = kernel(evaluation_map(v.dim(), m.dim(), m.p()));
        out = submodule(w, k, "Omega(" + m.label() + ")");
    } else {
        FpMatrix im = image(coevaluation_map(v.dim(), m.dim(), m.p()));
        out = quotient_module(w, im).with_label("Omega^-1(" + m.label() + ")");
    }
    return strip_V_projectives(out.with_pperm(false), ctx, seed);
}

}  // namespace ppcx
