#include "ppcx/endo.hpp"

#include <sstream>

namespace ppcx {

const char* mode_name(EndoMode m) {
    switch (m) {
        case EndoMode::Weak: return "weak";
        case EndoMode::Strong: return "strong";
        case EndoMode::Esplit: return "esplit";
        case EndoMode::Endosplit: return "endosplit";
        case EndoMode::Plain: return "plain";
    }
    return "?";
}

EndoMode parse_mode(const std::string& s) {
    for (auto m : {EndoMode::Weak, EndoMode::Strong, EndoMode::Esplit, EndoMode::Endosplit, EndoMode::Plain})
        if (s == mode_name(m)) return m;
    raise(ErrorKind::InvalidInput, "unknown mode '" + s + "' (weak, strong, esplit, endosplit, plain)");
}

const char* form_status_name(FormStatus s) {
    switch (s) {
        case FormStatus::Holds: return "holds";
        case FormStatus::Fails: return "fails";
        case FormStatus::Skipped: return "skipped";
    }
    return "?";
}

const HMarkEntry* HMarkReport::at(int rep) const {
    for (const auto& e : entries)
        if (e.rep == rep) return &e;
    return nullptr;
}

namespace {

bool is_trivial_line(const Module& m) {
    if (m.dim() != 1) return false;
    for (const auto& a : m.gen_actions())
        if (!a.is_identity()) return false;
    return true;
}

std::string degrees_text(const std::map<int, int>& prof) {
    std::ostringstream os;
    if (prof.size() == 2) {
        os << "both degrees " << prof.begin()->first << " and " << prof.rbegin()->first;
        return os.str();
    }
    os << "degrees";
    bool first = true;
    for (auto [d, n] : prof) {
        os << (first ? " " : ", ") << d;
        first = false;
    }
    return os.str();
}

HMarkEntry local_entry(const ChainComplex& c, const PSubgroupTable& tab, int i, bool want_contractible) {
    HMarkEntry e;
    e.rep = i;
    e.label = tab.rep_label(i);
    ChainComplex b = brauer_chain(c, tab.reps[i]);
    e.profile = homology_dims(b);
    if (e.profile.empty()) {
        e.contractible = want_contractible && is_contractible(b);
        return e;
    }
    if (e.profile.size() == 1) {
        e.defined = true;
        e.h = e.profile.begin()->first;
        e.homology_dim = e.profile.begin()->second;
        if (e.homology_dim == 1) e.character = character1d(homology(b).begin()->second);
    }
    return e;
}

// Why the entry fails "nonzero homology of dimension one in exactly one degree".
std::string line_failure(const HMarkEntry& e) {
    if (e.profile.empty()) return "C(" + e.label + ") is acyclic";
    if (e.profile.size() > 1) return "C(" + e.label + ") has nonzero homology in " + degrees_text(e.profile);
    return "C(" + e.label + ") has homology of dimension " + std::to_string(e.homology_dim) + " in degree " +
           std::to_string(e.h);
}

void fail(EndoVerdict& v, const std::string& why, std::optional<int> rep = std::nullopt) {
    if (!v.holds) return;
    v.holds = false;
    v.reason = why;
    v.failing_rep = rep;
}

void agree(const EndoVerdict& v, const char* form) {
    auto it = v.forms.find(form);
    if (it == v.forms.end() || it->second == FormStatus::Skipped) return;
    if ((it->second == FormStatus::Holds) != v.holds)
        raise(ErrorKind::Internal, std::string(v.property) + ": characterization " + form + " disagrees with the local criterion");
}

FormStatus status(bool b) { return b ? FormStatus::Holds : FormStatus::Fails; }

bool within_cap(const ChainComplex& c, const CheckOptions& opt) {
    long long t = c.total_dim();
    return opt.cross_check && t * t <= opt.direct_cap;
}

void require_context(const ChainComplex& c, const RelProjContext& ctx) {
    require(ctx.abs_p_divisible, ErrorKind::NotAbsolutelyPDivisible, "V is not absolutely p-divisible");
    require(c.group() == ctx.group() && c.p() == ctx.p(), ErrorKind::GroupMismatch, "complex and V live over different groups");
}

RelProjContext zero_context(const RelProjContext& ctx) {
    return make_context(Module::zero(ctx.group(), ctx.p()));
}

}  // namespace

void require_p_permutation_terms(const ChainComplex& c, std::uint64_t seed) {
    if (c.is_zero()) return;
    for (int i = c.lo(); i <= c.hi(); ++i) {
        const Module& t = c.term(i);
        if (t.pperm_known() || t.dim() == 0) continue;
        if (!is_p_permutation(t, seed))
            raise(ErrorKind::NotPPermutation, "term in degree " + std::to_string(i) + " is not p-permutation");
    }
}

bool weak_direct(const ChainComplex& c, const RelProjContext& ctx, std::uint64_t seed) {
    ChainComplex e = strip_contractibles(tensor(dual(c), c), seed);
    if (e.is_zero() || e.lo() > 0 || e.hi() < 0) return false;
    int trivial = 0;
    for (int i = e.lo(); i <= e.hi(); ++i) {
        for (const auto& s : decompose(e.term(i), seed).summands) {
            if (is_V_projective(s.module, ctx)) continue;
            if (i != 0 || !is_trivial_line(s.module)) return false;
            ++trivial;
        }
    }
    if (trivial != 1) return false;
    // A copy of k in degree 0 that is a cycle and survives some invariant functional
    // vanishing on boundaries splits off as k[0].
    const Module& e0 = e.term(0);
    const unsigned p = e.p();
    FpMatrix fixed = fixed_points(e0, e0.group());
    FpMatrix cyc = e.dim(-1) ? intersect_spaces(fixed, kernel(e.d(0))) : fixed;
    if (cyc.cols() == 0) return false;
    auto fn = hom_space(e0, Module::trivial(e0.group(), p));
    if (fn.empty()) return false;
    FpMatrix h = vstack(fn, p, e0.dim());
    FpMatrix pi = h;
    if (e.dim(1)) {
        FpMatrix coeff = kernel((h * e.d(1)).transpose());
        if (coeff.cols() == 0) return false;
        pi = coeff.transpose() * h;
    }
    return !(pi * cyc).is_zero();
}

EndoVerdict check_weak(const ChainComplex& c, const RelProjContext& ctx, const CheckOptions& opt) {
    require_context(c, ctx);
    require_p_permutation_terms(c, opt.seed);
    EndoVerdict v;
    v.property = "weak";
    v.holds = true;
    v.report.mode = EndoMode::Weak;
    const auto& tab = *ctx.table;
    for (int i = 0; i < tab.size(); ++i) {
        if (!ctx.vanishing[i]) {
            HMarkEntry e;
            e.rep = i;
            e.label = tab.rep_label(i);
            v.report.entries.push_back(e);
            continue;
        }
        HMarkEntry e = local_entry(c, tab, i, false);
        if (!(e.defined && e.homology_dim == 1)) {
            fail(v, line_failure(e), i);
            e.defined = false;
        }
        v.report.entries.push_back(e);
    }
    v.forms["local"] = status(v.holds);
    v.forms["direct"] = within_cap(c, opt) ? status(weak_direct(c, ctx, opt.seed)) : FormStatus::Skipped;
    agree(v, "direct");
    return v;
}

bool endosplit_direct(const ChainComplex& c) {
    if (homology_dims(c).size() > 1) return false;
    return is_split_complex(tensor(dual(c), c));
}

EndoVerdict check_endosplit_resolution(const ChainComplex& c0, const CheckOptions& opt) {
    ChainComplex c = over_whole_group(c0);
    require_p_permutation_terms(c, opt.seed);
    EndoVerdict v;
    v.property = "endosplit_resolution";
    v.holds = true;
    v.report.mode = EndoMode::Endosplit;
    auto tab = p_subgroup_table(c.group().ambient(), c.p());
    for (int i = 0; i < tab->size(); ++i) {
        HMarkEntry e = local_entry(c, *tab, i, true);
        if (!e.defined && !e.contractible) {
            if (e.profile.size() > 1)
                fail(v, "C(" + e.label + ") has nonzero homology in " + degrees_text(e.profile), i);
            else
                fail(v, "C(" + e.label + ") is acyclic but not contractible", i);
        }
        v.report.entries.push_back(e);
    }
    v.forms["local"] = status(v.holds);
    v.forms["split"] = within_cap(c, opt) ? status(endosplit_direct(c)) : FormStatus::Skipped;
    agree(v, "split");
    return v;
}

EndoVerdict check_module_V_endotrivial(const Module& m, const RelProjContext& ctx, std::uint64_t seed) {
    require(ctx.abs_p_divisible, ErrorKind::NotAbsolutelyPDivisible, "V is not absolutely p-divisible");
    check_compatible(m, ctx.V);
    EndoVerdict v;
    v.property = "module_V_endotrivial";
    v.holds = true;
    if (m.dim() == 0) {
        fail(v, "zero module");
        return v;
    }
    int trivial = 0;
    std::string bad;
    for (const auto& s : decompose(tensor(dual(m), m), seed).summands) {
        if (is_trivial_line(s.module))
            ++trivial;
        else if (bad.empty() && !is_V_projective(s.module, ctx))
            bad = "End(M) has a summand of dimension " + std::to_string(s.module.dim()) + " that is not V-projective";
    }
    if (trivial != 1)
        fail(v, "End(M) has " + std::to_string(trivial) + " trivial summands");
    else if (!bad.empty())
        fail(v, bad);
    return v;
}

bool esplit_direct(const ChainComplex& c, const RelProjContext& ctx, std::uint64_t seed) {
    ChainComplex e = strip_contractibles(tensor(dual(c), c), seed);
    if (e.is_zero() || e.lo() != 0 || e.hi() != 0) return false;
    int trivial = 0;
    for (const auto& s : decompose(e.term(0), seed).summands) {
        if (is_trivial_line(s.module))
            ++trivial;
        else if (!is_V_projective(s.module, ctx))
            return false;
    }
    return trivial == 1;
}

EndoVerdict check_esplit_trivial(const ChainComplex& c, const RelProjContext& ctx, const CheckOptions& opt) {
    require_context(c, ctx);
    require_p_permutation_terms(c, opt.seed);
    EndoVerdict v;
    v.property = "esplit_trivial";
    v.holds = true;
    v.report.mode = EndoMode::Esplit;
    const auto& tab = *ctx.table;
    bool endosplit = true;
    for (int i = 0; i < tab.size(); ++i) {
        HMarkEntry e = local_entry(c, tab, i, true);
        if (!e.defined) {
            if (!e.contractible) endosplit = false;
            fail(v, line_failure(e), i);
        } else if (ctx.vanishing[i] && e.homology_dim != 1) {
            fail(v, line_failure(e), i);
        }
        v.report.entries.push_back(e);
    }
    v.forms["local"] = status(v.holds);

    // Endosplit resolution whose unique homology module is V-endotrivial.
    auto hom = homology(c);
    if (!endosplit || hom.size() != 1) {
        v.forms["resolution"] = FormStatus::Fails;
    } else {
        const Module& m = hom.begin()->second;
        long long d = m.dim();
        if (opt.cross_check && d * d <= opt.direct_cap)
            v.forms["resolution"] = status(check_module_V_endotrivial(m, ctx, opt.seed).holds);
        else
            v.forms["resolution"] = FormStatus::Skipped;
    }
    agree(v, "resolution");
    v.forms["direct"] = within_cap(c, opt) ? status(esplit_direct(c, ctx, opt.seed)) : FormStatus::Skipped;
    agree(v, "direct");
    return v;
}

EndoVerdict check_strong(const ChainComplex& c, const RelProjContext& ctx, const CheckOptions& opt) {
    EndoVerdict weak = check_weak(c, ctx, opt);
    EndoVerdict v;
    v.property = "strong";
    v.report = weak.report;
    v.report.mode = EndoMode::Strong;
    v.holds = true;
    if (!weak.holds) {
        fail(v, weak.reason, weak.failing_rep);
        return v;
    }
    ChainComplex e = strip_contractibles(tensor(dual(c), c), opt.seed);
    bool found = false;
    for (const auto& s : chain_decompose(e, opt.seed)) {
        const ChainComplex& x = s.complex;
        if (!found && x.lo() == 0 && x.hi() == 0 && is_trivial_line(x.term(0))) {
            found = true;
            continue;
        }
        if (!is_V_projective(x, ctx)) {
            fail(v, "End(C) has a summand that is not a V-projective complex (total dimension " +
                        std::to_string(x.total_dim()) + ")");
            break;
        }
    }
    if (!found) raise(ErrorKind::NoTrivialSummand, "End(C) has no summand isomorphic to k[0]");
    v.forms["direct"] = status(v.holds);
    return v;
}

EndoVerdict check(const ChainComplex& c, const RelProjContext& ctx, EndoMode mode, const CheckOptions& opt) {
    switch (mode) {
        case EndoMode::Weak: return check_weak(c, ctx, opt);
        case EndoMode::Strong: return check_strong(c, ctx, opt);
        case EndoMode::Esplit: return check_esplit_trivial(c, ctx, opt);
        case EndoMode::Endosplit: return check_endosplit_resolution(c, opt);
        case EndoMode::Plain: {
            EndoVerdict v = check_esplit_trivial(c, zero_context(ctx), opt);
            v.property = "plain";
            v.report.mode = EndoMode::Plain;
            return v;
        }
    }
    raise(ErrorKind::InvalidInput, "unknown mode");
}

HMarkReport hmarks(const ChainComplex& c, const RelProjContext& ctx, EndoMode mode, const CheckOptions& opt) {
    EndoVerdict v = check(c, ctx, mode, opt);
    if (!v.holds) raise(ErrorKind::InvalidInput, std::string("h-marks need a ") + mode_name(mode) + " complex: " + v.reason);
    return v.report;
}

namespace {

// Zero in the mode's quotient category.
bool negligible(const ChainComplex& x, const RelProjContext& ctx, EndoMode mode) {
    if (mode == EndoMode::Weak) {
        for (int i : ctx.vanishing_set())
            if (!homology_dims(brauer_chain(x, ctx.table->reps[i])).empty()) return false;
        return true;
    }
    if (is_contractible(x)) return true;
    return mode != EndoMode::Plain && is_V_projective(x, ctx);
}

}  // namespace

ChainComplex cap(const ChainComplex& c, const RelProjContext& ctx, EndoMode mode, const CheckOptions& opt) {
    require(mode != EndoMode::Endosplit, ErrorKind::InvalidInput, "caps are defined for endotrivial modes only");
    CheckOptions quick = opt;
    quick.cross_check = false;
    EndoVerdict v = check(c, ctx, mode, quick);
    if (!v.holds) raise(ErrorKind::InvalidInput, std::string("cap needs a ") + mode_name(mode) + " complex: " + v.reason);
    auto pieces = chain_decompose(c, opt.seed);
    if (pieces.size() == 1) return c;
    std::optional<ChainComplex> out;
    for (const auto& s : pieces) {
        if (check(s.complex, ctx, mode, quick).holds) {
            require(!out, ErrorKind::Internal, "two endotrivial summands");
            out = s.complex;
        } else {
            require(negligible(s.complex, ctx, mode), ErrorKind::Internal, "non-endotrivial summand is not negligible");
        }
    }
    require(out.has_value(), ErrorKind::Internal, "no endotrivial summand found");
    return out->with_label("cap(" + c.label() + ")");
}

bool stable_class_equal(const ChainComplex& c, const ChainComplex& d, const RelProjContext& ctx, EndoMode mode,
                        const CheckOptions& opt) {
    require(mode != EndoMode::Endosplit, ErrorKind::InvalidInput, "stable classes are defined for endotrivial modes only");
    if (mode == EndoMode::Weak) {
        HMarkReport a = hmarks(c, ctx, mode, opt);
        HMarkReport b = hmarks(d, ctx, mode, opt);
        for (int i : ctx.vanishing_set()) {
            const HMarkEntry* x = a.at(i);
            const HMarkEntry* y = b.at(i);
            if (x->h != y->h || x->character != y->character) return false;
        }
        return true;
    }
    ChainComplex x = cap(c, ctx, mode, opt);
    ChainComplex y = cap(d, ctx, mode, opt);
    return chain_iso_test(x, y, opt.seed).has_value();
}

bool sum_endosplit_compatible(const ChainComplex& c, const ChainComplex& d, const CheckOptions& opt) {
    EndoVerdict a = check_endosplit_resolution(c, opt);
    EndoVerdict b = check_endosplit_resolution(d, opt);
    require(a.holds && b.holds, ErrorKind::InvalidInput, "both complexes must be endosplit p-permutation resolutions");
    bool ok = true;
    for (std::size_t i = 0; i < a.report.entries.size(); ++i) {
        const auto& x = a.report.entries[i];
        const auto& y = b.report.entries[i];
        if (x.contractible && y.contractible) continue;
        if (!(x.defined && y.defined && x.h == y.h)) ok = false;
    }
    CheckOptions quick = opt;
    quick.cross_check = false;
    bool sum = check_endosplit_resolution(direct_sum(c, d), quick).holds;
    require(sum == ok, ErrorKind::Internal, "direct sum criterion disagrees with the endosplit check of C + D");
    return ok;
}

}  // namespace ppcx
