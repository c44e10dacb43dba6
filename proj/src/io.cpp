#include "ppcx/io.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "ppcx/catalog.hpp"

namespace ppcx {

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), ErrorKind::InvalidInput, "cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        raise(ErrorKind::InvalidInput, "malformed JSON in '" + path + "': " + e.what());
    }
}

namespace {

std::vector<std::vector<int>> cycles_of(const Json& gen) {
    require(gen.is_array(), ErrorKind::InvalidInput, "a generator must be a list of cycles");
    if (!gen.empty() && gen[0].is_number_integer()) return {gen.get<std::vector<int>>()};
    return gen.get<std::vector<std::vector<int>>>();
}

const Json& get(const Json& j, const char* key) {
    require(j.is_object() && j.contains(key), ErrorKind::InvalidInput, std::string("missing field '") + key + "'");
    return j.at(key);
}

}  // namespace

GroupPtr group_from_json(const Json& j, int cap) {
    if (j.is_string()) return named_group(j.get<std::string>(), cap);
    // Equal descriptions give the same group object, so complexes read separately combine.
    static std::mutex mu;
    static std::map<std::pair<std::string, int>, GroupPtr> seen;
    auto key = std::make_pair(j.dump(), cap);
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = seen.find(key); it != seen.end()) return it->second;
    }
    std::string name = j.value("name", std::string("G"));
    int degree = get(j, "degree").get<int>();
    std::vector<Perm> gens;
    for (const auto& g : get(j, "generators")) gens.push_back(perm_from_cycles(degree, cycles_of(g)));
    GroupPtr g = PermGroup::make(name, degree, gens, cap);
    std::lock_guard<std::mutex> lock(mu);
    return seen.emplace(key, g).first->second;
}

Json group_to_json(const PermGroup& g) {
    Json gens = Json::array();
    for (const auto& p : g.generator_perms()) gens.push_back(perm_to_cycles(p));
    return Json{{"name", g.name()}, {"degree", g.degree()}, {"generators", gens}};
}

GroupPtr load_group(const std::string& spec, int cap) {
    static std::mutex mu;
    static std::map<std::pair<std::string, int>, GroupPtr> loaded;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(spec, cap);
    if (auto it = loaded.find(key); it != loaded.end()) return it->second;
    GroupPtr g;
    if (std::filesystem::is_regular_file(spec)) {
        g = group_from_json(read_json_file(spec), cap);
    } else {
        std::string name = spec;
        // Accept lower-case catalog names such as "s3" or "c2xc2".
        for (char& c : name)
            if (c == 's' || c == 'c' || c == 'a' || c == 'd' || c == 'q') c = static_cast<char>(std::toupper(c));
        if (name.size() >= 4 && name.substr(0, 4) == "SD16") name = "SD16";
        g = named_group(name, cap);
    }
    loaded.emplace(key, g);
    return g;
}

std::vector<std::vector<int>> element_cycles(const PermGroup& g, int e) { return perm_to_cycles(g.perm(e)); }

int element_from_json(const PermGroup& g, const Json& j) {
    if (j.is_number_integer()) {
        int e = j.get<int>();
        require(e >= 0 && e < g.order(), ErrorKind::InvalidInput, "element index out of range");
        return e;
    }
    int e = g.index_of(perm_from_cycles(g.degree(), cycles_of(j)));
    require(e >= 0, ErrorKind::InvalidInput, "permutation is not an element of " + g.name());
    return e;
}

Subgroup subgroup_from_json(const GroupPtr& g, const Json& ref, unsigned p) {
    if (ref.is_object()) {
        std::vector<int> gens;
        for (const auto& x : get(ref, "generators")) gens.push_back(element_from_json(*g, x));
        return Subgroup::generated(g, gens);
    }
    require(ref.is_string(), ErrorKind::InvalidInput, "subgroup reference must be a string or an object");
    std::string s = ref.get<std::string>();
    if (s == "G" || s == "whole") return Subgroup::whole(g);
    if (s == "1" || s == "trivial") return Subgroup::trivial(g);
    auto tab = p_subgroup_table(g, p);
    if (s == "sylow") return tab->reps[tab->sylow_index()];
    auto index_after = [&](std::size_t pos) {
        std::size_t end = s.find('[');
        std::string digits = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        require(!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos, ErrorKind::InvalidInput,
                "bad subgroup reference '" + s + "'");
        return std::stoi(digits);
    };
    if (s[0] == 'P') {
        int i = index_after(1);
        require(i < tab->size(), ErrorKind::InvalidInput, "no p-subgroup class " + s);
        return tab->reps[i];
    }
    if (s[0] == 'S') {
        auto reps = subgroup_class_reps(g);
        int i = index_after(1);
        require(i < static_cast<int>(reps.size()), ErrorKind::InvalidInput, "no subgroup class " + s);
        return reps[i];
    }
    if (s[0] == 'c' || s[0] == 'C') {
        int n = index_after(1);
        std::optional<Subgroup> found;
        for (const auto& h : subgroup_class_reps(g)) {
            if (h.order() != n) continue;
            bool cyclic = false;
            for (int e : h.elements()) cyclic = cyclic || g->elem_order(e) == n;
            if (!cyclic) continue;
            require(!found, ErrorKind::InvalidInput, "more than one class of cyclic subgroups of order " + std::to_string(n));
            found = h;
        }
        require(found.has_value(), ErrorKind::InvalidInput, "no cyclic subgroup of order " + std::to_string(n));
        return *found;
    }
    raise(ErrorKind::InvalidInput, "bad subgroup reference '" + s + "'");
}

Json subgroup_to_json(const Subgroup& s) {
    Json gens = Json::array();
    for (int e : s.generators()) gens.push_back(element_cycles(*s.ambient(), e));
    return Json{{"generators", gens}};
}

namespace {

FpMatrix matrix_from_json(const Json& j, unsigned p, int cols = -1) {
    auto rows = j.get<std::vector<std::vector<long long>>>();
    return FpMatrix::from_rows(p, rows, cols);
}

Json matrix_to_json(const FpMatrix& m) { return m.to_rows(); }

Module matrix_module(const Json& expr, const Subgroup& over, unsigned p) {
    std::vector<FpMatrix> mats;
    for (const auto& m : get(expr, "matrices")) mats.push_back(matrix_from_json(m, p));
    std::string label = expr.value("label", std::string("matrix"));
    if (!expr.contains("generators")) {
        if (over.generators().empty()) {
            int dim = expr.value("dim", -1);
            require(dim >= 0, ErrorKind::InvalidInput, "matrix module over the trivial group needs \"dim\"");
            return Module::make_unchecked(over, p, dim, {}, label);
        }
        return Module::from_matrices(over, p, std::move(mats), label);
    }
    std::vector<int> gens;
    for (const auto& x : expr.at("generators")) gens.push_back(element_from_json(*over.ambient(), x));
    Subgroup given = Subgroup::generated(over.ambient(), gens);
    require(given == over, ErrorKind::InvalidInput, "matrix generators do not generate the module's group");
    require(given.generators().size() == mats.size(), ErrorKind::InvalidInput,
            "one matrix per (distinct, non-identity) generator is required");
    Module m = Module::from_matrices(given, p, std::move(mats), label);
    std::vector<FpMatrix> on_over;
    for (int t : over.generators()) on_over.push_back(m.action(t));
    return Module::make_unchecked(over, p, m.dim(), std::move(on_over), label);
}

std::vector<Module> args_of(const Json& expr, const Subgroup& over, unsigned p) {
    std::vector<Module> out;
    for (const auto& a : get(expr, "args")) out.push_back(module_from_json(a, over, p));
    return out;
}

}  // namespace

Module module_from_json(const Json& expr, const Subgroup& parent, unsigned p) {
    if (expr.is_string()) {
        std::string s = expr.get<std::string>();
        if (s == "trivial" || s == "k") return Module::trivial(parent, p);
        if (s == "regular" || s == "kG") return Module::regular(parent, p);
        if (s == "zero" || s == "0") return Module::zero(parent, p);
        raise(ErrorKind::InvalidInput, "unknown module shorthand '" + s + "'");
    }
    require(expr.is_object(), ErrorKind::InvalidInput, "module expression must be a string or an object");
    const GroupPtr& g = parent.ambient();
    Subgroup over = expr.contains("over") ? subgroup_from_json(g, expr.at("over"), p) : parent;
    std::string op = get(expr, "op").get<std::string>();
    if (op == "trivial") return Module::trivial(over, p);
    if (op == "regular") return Module::regular(over, p);
    if (op == "zero") return Module::zero(over, p);
    if (op == "perm_on_cosets") return Module::perm_on_cosets(over, subgroup_from_json(g, get(expr, "subgroup"), p), p);
    if (op == "one_dim") return Module::one_dim(over, p, get(expr, "values").get<std::vector<long long>>());
    if (op == "matrix") return matrix_module(expr, over, p);
    if (op == "dual") return dual(module_from_json(get(expr, "arg"), over, p));
    if (op == "tensor" || op == "hom" || op == "sum") {
        auto a = args_of(expr, over, p);
        require(!a.empty(), ErrorKind::InvalidInput, op + " needs arguments");
        if (op == "sum") return direct_sum(a);
        require(a.size() == 2, ErrorKind::InvalidInput, op + " takes two arguments");
        return op == "tensor" ? tensor(a[0], a[1]) : hom_module(a[0], a[1]);
    }
    if (op == "res") return restrict_to(module_from_json(get(expr, "arg"), Subgroup::whole(g), p), over);
    if (op == "ind") {
        Module a = module_from_json(get(expr, "arg"), over, p);
        require(a.group() != over || expr.contains("over"), ErrorKind::InvalidInput,
                "ind needs the argument over a subgroup (set \"over\" on the argument)");
        return induce_to(a, over);
    }
    if (op == "conj") return conjugate(module_from_json(get(expr, "arg"), over, p), element_from_json(*g, get(expr, "by")));
    if (op == "brauer") return brauer(module_from_json(get(expr, "arg"), over, p), subgroup_from_json(g, get(expr, "at"), p));
    if (op == "inf") {
        QuotientMap q = quotient(over, subgroup_from_json(g, get(expr, "kernel"), p));
        return inflate(q, module_from_json(get(expr, "arg"), Subgroup::whole(q.quotient), p));
    }
    raise(ErrorKind::InvalidInput, "unknown module op '" + op + "'");
}

Json module_to_json(const Module& m) {
    Json mats = Json::array();
    for (const auto& a : m.gen_actions()) mats.push_back(matrix_to_json(a));
    Json gens = Json::array();
    for (int e : m.group().generators()) gens.push_back(element_cycles(*m.group().ambient(), e));
    return Json{{"op", "matrix"}, {"label", m.label()}, {"dim", m.dim()}, {"generators", gens}, {"matrices", mats}};
}

ChainComplex complex_from_json(const Json& in, int cap) {
    // CLI output envelopes ({"schema", "command", "result"}) are accepted as well.
    const Json& j = in.contains("result") && in.contains("command") ? in.at("result") : in;
    if (j.contains("example")) {
        std::string group = j.contains("group") ? j.at("group").get<std::string>() : "C2";
        return named_example(j.at("example").get<std::string>(), group, j.value("p", 2u), j.value("length", 2));
    }
    GroupPtr g = j.at("group").is_string() ? load_group(j.at("group").get<std::string>(), cap)
                                           : group_from_json(get(j, "group"), cap);
    unsigned p = get(j, "p").get<unsigned>();
    Subgroup over = j.contains("over") ? subgroup_from_json(g, j.at("over"), p) : Subgroup::whole(g);
    std::map<int, Module> terms;
    for (const auto& [k, v] : get(j, "terms").items()) terms[std::stoi(k)] = module_from_json(v, over, p);
    std::string label = j.value("label", std::string("C"));
    if (terms.empty()) return ChainComplex::zero(over, p);
    const int lo = terms.begin()->first, hi = terms.rbegin()->first;
    std::vector<Module> ts;
    for (int i = lo; i <= hi; ++i) ts.push_back(terms.count(i) ? terms.at(i) : Module::zero(over, p));
    std::map<int, FpMatrix> ds;
    if (j.contains("differentials"))
        for (const auto& [k, v] : j.at("differentials").items()) {
            int i = std::stoi(k);
            require(i > lo && i <= hi, ErrorKind::InvalidInput, "differential d_" + k + " outside the complex");
            ds[i] = matrix_from_json(v, p, ts[i - lo].dim());
        }
    std::vector<FpMatrix> diffs;
    for (int i = lo + 1; i <= hi; ++i)
        diffs.push_back(ds.count(i) ? ds.at(i) : FpMatrix(p, ts[i - 1 - lo].dim(), ts[i - lo].dim()));
    return ChainComplex::make(over, p, lo, std::move(ts), std::move(diffs), label);
}

Json complex_to_json(const ChainComplex& c) {
    const Subgroup& h = c.group();
    Json j{{"schema", kSchema}, {"label", c.label()}, {"group", group_to_json(*h.ambient())}, {"p", c.p()}};
    if (h.order() != h.ambient()->order()) j["over"] = subgroup_to_json(h);
    Json terms = Json::object(), diffs = Json::object();
    if (!c.is_zero()) {
        for (int i = c.lo(); i <= c.hi(); ++i) terms[std::to_string(i)] = module_to_json(c.term(i));
        for (int i = c.lo() + 1; i <= c.hi(); ++i) diffs[std::to_string(i)] = matrix_to_json(c.d(i));
    }
    j["terms"] = terms;
    j["differentials"] = diffs;
    return j;
}

Json complex_summary(const ChainComplex& c) {
    Json dims = Json::object(), hom = Json::object();
    if (!c.is_zero())
        for (int i = c.lo(); i <= c.hi(); ++i) dims[std::to_string(i)] = c.dim(i);
    for (auto [i, d] : homology_dims(c))
        if (d) hom[std::to_string(i)] = d;
    return Json{{"label", c.label()}, {"group", c.group().ambient()->name()}, {"group_order", c.group().order()},
                {"p", c.p()}, {"dims", dims}, {"homology_dims", hom}};
}

namespace {

int rep_from_key(const PSubgroupTable& t, const std::string& key) {
    for (int i = 0; i < t.size(); ++i)
        if (key == t.rep_label(i) || key == "P" + std::to_string(i)) return i;
    require(!key.empty() && key.find_first_not_of("0123456789") == std::string::npos, ErrorKind::InvalidInput,
            "unknown p-subgroup class '" + key + "'");
    int i = std::stoi(key);
    require(i < t.size(), ErrorKind::InvalidInput, "p-subgroup class index out of range");
    return i;
}

}  // namespace

SuperclassFn superclass_from_json(const Json& j, int cap) {
    const Json& gj = get(j, "group");
    GroupPtr g = gj.is_string() ? load_group(gj.get<std::string>(), cap) : group_from_json(gj, cap);
    unsigned p = get(j, "p").get<unsigned>();
    SuperclassFn f{p_subgroup_table(g, p), {}};
    const Json& vals = get(j, "values");
    if (vals.is_array()) {
        require(static_cast<int>(vals.size()) == f.table->size(), ErrorKind::InvalidInput,
                "value list length differs from the number of p-subgroup classes");
        for (int i = 0; i < f.table->size(); ++i) f.values[i] = vals[i].get<int>();
    } else {
        for (const auto& [k, v] : vals.items()) f.values[rep_from_key(*f.table, k)] = v.get<int>();
    }
    return f;
}

Json superclass_to_json(const SuperclassFn& f) {
    Json vals = Json::object();
    for (auto [k, v] : f.values) vals[f.table->rep_label(k)] = v;
    return Json{{"group", f.table->group->name()}, {"p", f.table->p}, {"values", vals}};
}

Json to_json(const PSubgroupTable& t) {
    Json reps = Json::array();
    for (int i = 0; i < t.size(); ++i) {
        const Subgroup& s = t.reps[i];
        int class_size = 0;
        for (const auto& e : t.all) class_size += e.rep == i;
        Json below = Json::array();
        for (int j = 0; j < t.size(); ++j)
            if (j != i && t.leq[j][i]) below.push_back(t.rep_label(j));
        reps.push_back(Json{{"label", t.rep_label(i)},
                            {"order", s.order()},
                            {"generators", subgroup_to_json(s)["generators"]},
                            {"class_size", class_size},
                            {"normalizer_order", t.normalizers[i].order()},
                            {"sylow", i == t.sylow_index()},
                            {"contains", below}});
    }
    return Json{{"group", t.group->name()}, {"group_order", t.group->order()}, {"p", t.p}, {"classes", reps}};
}

Json to_json(const RelProjContext& ctx) {
    Json per = Json::array();
    for (int i = 0; i < ctx.table->size(); ++i)
        per.push_back(Json{{"rep", ctx.table->rep_label(i)},
                           {"brauer_dim", ctx.brauer_dims[i]},
                           {"vanishing", static_cast<bool>(ctx.vanishing[i])}});
    Json gens = Json::array();
    for (int i : ctx.generator_reps) gens.push_back(ctx.table->rep_label(i));
    return Json{{"V", ctx.V.label()},
                {"dim", ctx.V.dim()},
                {"p_permutation", ctx.v_pperm},
                {"absolutely_p_divisible", ctx.abs_p_divisible},
                {"classes", per},
                {"generator", gens}};
}

Json to_json(const HMarkReport& r, const PSubgroupTable& t) {
    Json entries = Json::array();
    for (const auto& e : r.entries) {
        Json profile = Json::object();
        for (auto [d, n] : e.profile) profile[std::to_string(d)] = n;
        Json x{{"rep", t.rep_label(e.rep)},
               {"order", t.reps[e.rep].order()},
               {"defined", e.defined},
               {"h", e.defined ? Json(e.h) : Json(nullptr)},
               {"homology_dim", e.homology_dim},
               {"contractible", e.contractible},
               {"profile", profile}};
        if (!e.character.empty()) x["character"] = e.character;
        entries.push_back(std::move(x));
    }
    return Json{{"mode", mode_name(r.mode)}, {"entries", entries}};
}

Json to_json(const EndoVerdict& v, const PSubgroupTable& t) {
    Json forms = Json::object();
    for (const auto& [k, s] : v.forms) forms[k] = form_status_name(s);
    Json j{{"property", v.property},
           {"holds", v.holds},
           {"reason", v.reason},
           {"failing_rep", v.failing_rep ? Json(t.rep_label(*v.failing_rep)) : Json(nullptr)},
           {"forms", forms},
           {"hmarks", to_json(v.report, t)}};
    if (v.cap) j["cap"] = complex_summary(*v.cap);
    return j;
}

Json to_json(const BorelSmithReport& r, const PSubgroupTable& t) {
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        const auto& w = r.sections[c.section];
        Json x{{"type", section_type_name(w.type)},
               {"H", t.rep_label(w.h_rep)},
               {"L", t.rep_label(w.l_rep)},
               {"enforced", c.enforced},
               {"passed", c.passed},
               {"detail", c.detail}};
        if (w.type == SectionType::C2_in_C4 || w.type == SectionType::C2_in_Q8) x["N_order"] = w.N.order();
        if (!w.intermediate_reps.empty()) {
            Json mids = Json::array();
            for (int i : w.intermediate_reps) mids.push_back(t.rep_label(i));
            x["intermediates"] = mids;
        }
        checks.push_back(std::move(x));
    }
    Json j{{"holds", r.holds}, {"sections", checks}};
    j["first_failure"] = r.first_failure ? checks[*r.first_failure] : Json(nullptr);
    return j;
}

Json to_json(const MackeyVerification& v) {
    return Json{{"lhs_dim", v.lhs_dim}, {"rhs_dim", v.rhs_dim}, {"iso", v.iso}};
}

Json to_json(const std::vector<MackeySweepCase>& cases) {
    Json arr = Json::array();
    int ok = 0;
    for (const auto& c : cases) {
        ok += c.iso;
        arr.push_back(Json{{"group", c.group},
                           {"p", c.p},
                           {"H", c.H},
                           {"M", c.M},
                           {"P", c.P},
                           {"lhs_dim", c.lhs_dim},
                           {"rhs_dim", c.rhs_dim},
                           {"iso", c.iso}});
    }
    return Json{{"cases", arr}, {"total", cases.size()}, {"iso", ok}};
}

Json to_json(const DecompositionReport& d, std::uint64_t seed) {
    Json parts = Json::array();
    for (const auto& s : d.summands) {
        Json x{{"dim", s.module.dim()}, {"iso_class", s.iso_class}};
        auto v = vertex(over_whole_group(s.module), seed);
        x["vertex_order"] = v.vertex.order();
        x["trivial_source"] = v.trivial_source;
        parts.push_back(std::move(x));
    }
    return Json{{"summands", parts}, {"multiplicity", d.multiplicity}};
}

namespace {

void render(const Json& j, int indent, std::ostringstream& out) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    auto flat = [](const Json& v) {
        if (!v.is_array()) return false;
        for (const auto& x : v)
            if (x.is_structured()) return false;
        return true;
    };
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (v.is_structured() && !flat(v) && !v.empty()) {
                out << pad << k << ":\n";
                render(v, indent + 1, out);
            } else {
                out << pad << k << ": " << scalar(v) << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_object()) {
                // one line per flat object
                bool simple = true;
                for (const auto& [k, x] : v.items()) simple = simple && (!x.is_structured() || flat(x));
                if (simple) {
                    out << pad << "-";
                    for (const auto& [k, x] : v.items()) out << " " << k << "=" << scalar(x);
                    out << "\n";
                    continue;
                }
                out << pad << "-\n";
                render(v, indent + 1, out);
            } else {
                out << pad << "- " << scalar(v) << "\n";
            }
        }
    } else {
        out << pad << scalar(j) << "\n";
    }
}

}  // namespace

std::string render_text(const Json& j) {
    std::ostringstream out;
    render(j, 0, out);
    return out.str();
}

Module module_from_spec(const std::string& spec, const Subgroup& over, unsigned p) {
    if (spec.rfind("perm:", 0) == 0)
        return Module::perm_on_cosets(over, subgroup_from_json(over.ambient(), Json(spec.substr(5)), p), p);
    if (std::filesystem::is_regular_file(spec)) {
        Json j = read_json_file(spec);
        return module_from_json(j.contains("module") ? j.at("module") : j, over, p);
    }
    return module_from_json(Json(spec), over, p);
}

Json subgroup_ref_from_spec(const std::string& s) {
    if (std::filesystem::is_regular_file(s)) return read_json_file(s);
    return Json(s);
}

ChainComplex example_complex(const std::string& name, const std::string& group, unsigned p, int length, int cap) {
    if (name == "sd16_CE") return sd16_CE();
    Subgroup whole = Subgroup::whole(load_group(group, cap));
    if (name == "augmentation" || name == "omega_complex") return augmentation(whole, p);
    if (name == "norm") return norm_complex(whole, p);
    if (name == "periodic_truncation") return periodic_truncation(whole, p, length);
    raise(ErrorKind::UnknownExample, "unknown example '" + name + "'");
}

}  // namespace ppcx
