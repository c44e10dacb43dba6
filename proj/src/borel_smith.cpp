#include "ppcx/borel_smith.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace ppcx {

SuperclassFn SuperclassFn::operator+(const SuperclassFn& o) const {
    require(table == o.table, ErrorKind::GroupMismatch, "superclass functions on different tables");
    SuperclassFn out{table, {}};
    for (auto [k, v] : values)
        if (o.defined(k)) out.values[k] = v + o.at(k);
    return out;
}

SuperclassFn SuperclassFn::operator-() const {
    SuperclassFn out{table, {}};
    for (auto [k, v] : values) out.values[k] = -v;
    return out;
}

SuperclassFn superclass_from_hmarks(const HMarkReport& r, std::shared_ptr<const PSubgroupTable> table) {
    SuperclassFn f{std::move(table), {}};
    for (const auto& e : r.entries)
        if (e.defined) f.values[e.rep] = e.h;
    return f;
}

const char* section_type_name(SectionType t) {
    switch (t) {
        case SectionType::Cp: return "Cp";
        case SectionType::C2_in_C4: return "C2_in_C4";
        case SectionType::C2_in_Q8: return "C2_in_Q8";
        case SectionType::CpxCp: return "CpxCp";
    }
    return "?";
}

namespace {

// Order of xH in N/H (H normal in N, x in N).
int coset_order(const PermGroup& g, const Subgroup& h, int x) {
    int k = 1, y = x;
    while (!h.contains(y)) {
        y = g.mul(y, x);
        ++k;
    }
    return k;
}

bool quotient_abelian(const PermGroup& g, const Subgroup& h, const Subgroup& n) {
    for (int x : n.generators())
        for (int y : n.generators()) {
            int c = g.mul(g.mul(x, y), g.mul(g.inv(x), g.inv(y)));
            if (!h.contains(c)) return false;
        }
    return true;
}

// Number of cosets of order exactly 2 in N/H.
int involution_cosets(const PermGroup& g, const Subgroup& h, const Subgroup& n) {
    int count = 0;
    for (int x : n.elements())
        if (coset_order(g, h, x) == 2) ++count;
    return count / h.order();
}

bool quotient_is_c4(const PermGroup& g, const Subgroup& h, const Subgroup& n) {
    if (n.order() != 4 * h.order()) return false;
    for (int x : n.elements())
        if (coset_order(g, h, x) == 4) return true;
    return false;
}

bool quotient_is_q8(const PermGroup& g, const Subgroup& h, const Subgroup& n) {
    if (n.order() != 8 * h.order()) return false;
    return !quotient_abelian(g, h, n) && involution_cosets(g, h, n) == 1;
}

bool quotient_is_elementary(const PermGroup& g, const Subgroup& h, const Subgroup& l, unsigned p) {
    if (l.order() != static_cast<int>(p * p) * h.order()) return false;
    if (!quotient_abelian(g, h, l)) return false;
    for (int x : l.elements())
        if (coset_order(g, h, x) > 1 && coset_order(g, h, x) != static_cast<int>(p)) return false;
    return true;
}

}  // namespace

std::vector<SectionWitness> enumerate_sections(const PSubgroupTable& tab) {
    const PermGroup& g = *tab.group;
    const unsigned p = tab.p;
    std::vector<SectionWitness> out;
    std::set<std::tuple<int, int, int, std::vector<int>>> seen;
    auto add = [&](SectionWitness w) {
        std::vector<int> key_int = w.intermediate_reps;
        std::sort(key_int.begin(), key_int.end());
        auto key = std::make_tuple(static_cast<int>(w.type), w.h_rep, w.l_rep, key_int);
        if (seen.insert(key).second) out.push_back(std::move(w));
    };
    for (int hi = 0; hi < tab.size(); ++hi) {
        const Subgroup& h = tab.reps[hi];
        for (const auto& le : tab.all) {
            const Subgroup& l = le.sub;
            if (l.order() <= h.order() || !h.is_subgroup_of(l) || !h.is_normal_in(l)) continue;
            if (l.order() == static_cast<int>(p) * h.order()) {
                SectionWitness w;
                w.type = SectionType::Cp;
                w.H = h;
                w.L = l;
                w.N = l;
                w.h_rep = hi;
                w.l_rep = le.rep;
                add(w);
                if (p != 2) continue;
                for (const auto& ne : tab.all) {
                    const Subgroup& n = ne.sub;
                    if (!l.is_subgroup_of(n) || !h.is_normal_in(n) || !l.is_normal_in(n)) continue;
                    SectionWitness v = w;
                    v.N = n;
                    if (quotient_is_c4(g, h, n))
                        v.type = SectionType::C2_in_C4;
                    else if (quotient_is_q8(g, h, n))
                        v.type = SectionType::C2_in_Q8;
                    else
                        continue;
                    add(v);
                }
            } else if (quotient_is_elementary(g, h, l, p)) {
                SectionWitness w;
                w.type = SectionType::CpxCp;
                w.H = h;
                w.L = l;
                w.N = l;
                w.h_rep = hi;
                w.l_rep = le.rep;
                for (const auto& ie : tab.all) {
                    const Subgroup& m = ie.sub;
                    if (m.order() == static_cast<int>(p) * h.order() && h.is_subgroup_of(m) && m.is_subgroup_of(l)) {
                        w.intermediates.push_back(m);
                        w.intermediate_reps.push_back(ie.rep);
                    }
                }
                require(w.intermediates.size() == p + 1, ErrorKind::Internal, "elementary abelian section without p + 1 lines");
                add(w);
            }
        }
    }
    return out;
}

namespace {

BorelSmithReport run_checks(const SuperclassFn& f, const std::vector<char>* vanishing) {
    BorelSmithReport r;
    r.sections = enumerate_sections(*f.table);
    const unsigned p = f.table->p;
    for (std::size_t s = 0; s < r.sections.size(); ++s) {
        const auto& w = r.sections[s];
        SectionCheck c;
        c.section = static_cast<int>(s);
        bool in_domain = f.defined(w.h_rep) && f.defined(w.l_rep);
        for (int i : w.intermediate_reps) in_domain = in_domain && f.defined(i);
        bool at_v = vanishing == nullptr || (*vanishing)[w.h_rep];
        bool constrains = !(w.type == SectionType::Cp && p == 2);
        c.enforced = in_domain && at_v && constrains;
        if (c.enforced) {
            int diff = f.at(w.h_rep) - f.at(w.l_rep);
            std::string names = f.table->rep_label(w.h_rep) + " in " + f.table->rep_label(w.l_rep);
            switch (w.type) {
                case SectionType::Cp:
                case SectionType::C2_in_C4:
                    c.passed = diff % 2 == 0;
                    c.detail = std::string(section_type_name(w.type)) + " " + names + ": f(H) - f(L) = " +
                               std::to_string(diff) + (c.passed ? " is even" : " is odd");
                    break;
                case SectionType::C2_in_Q8:
                    c.passed = diff % 4 == 0;
                    c.detail = "C2_in_Q8 " + names + ": f(H) - f(L) = " + std::to_string(diff) +
                               (c.passed ? " is divisible by 4" : " is not divisible by 4");
                    break;
                case SectionType::CpxCp: {
                    int sum = 0;
                    for (int i : w.intermediate_reps) sum += f.at(i) - f.at(w.l_rep);
                    c.passed = diff == sum;
                    c.detail = "CpxCp " + names + ": f(H) - f(L) = " + std::to_string(diff) +
                               ", sum over lines = " + std::to_string(sum);
                    break;
                }
            }
        }
        if (!c.passed && r.holds) {
            r.holds = false;
            r.first_failure = static_cast<int>(r.checks.size());
        }
        r.checks.push_back(std::move(c));
    }
    return r;
}

}  // namespace

BorelSmithReport check_borel_smith(const SuperclassFn& f) { return run_checks(f, nullptr); }

BorelSmithReport check_borel_smith_at_V(const SuperclassFn& f, const RelProjContext& ctx) {
    require(f.table == ctx.table, ErrorKind::GroupMismatch, "function and context use different tables");
    return run_checks(f, &ctx.vanishing);
}

}  // namespace ppcx
