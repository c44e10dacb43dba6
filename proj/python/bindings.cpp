#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ppcx/io.hpp"

namespace py = pybind11;
using namespace ppcx;

namespace {

ChainComplex parse_complex(const std::string& text, int cap) { return complex_from_json(Json::parse(text), cap); }

RelProjContext context_for(const ChainComplex& c, EndoMode m, const std::string& v, std::uint64_t seed) {
    Module vm = m == EndoMode::Plain ? Module::zero(c.group(), c.p()) : module_from_spec(v, c.group(), c.p());
    return make_context(vm, seed);
}

unsigned largest_prime(const GroupPtr& g) {
    unsigned best = 2;
    for (unsigned q = 2; q <= static_cast<unsigned>(g->order()); ++q) {
        bool prime = true;
        for (unsigned r = 2; r * r <= q; ++r) prime = prime && q % r;
        if (prime && g->order() % q == 0) best = q;
    }
    return best;
}

std::string check_json(const std::string& complex, const std::string& mode, const std::string& v, bool cross_check,
                       int direct_cap, std::uint64_t seed, int cap) {
    ChainComplex c = over_whole_group(parse_complex(complex, cap));
    EndoMode m = parse_mode(mode);
    RelProjContext ctx = context_for(c, m, v, seed);
    EndoVerdict verdict = check(c, ctx, m, CheckOptions{seed, direct_cap, cross_check});
    Json r{{"complex", complex_summary(c)}, {"V", to_json(ctx)}, {"verdict", to_json(verdict, *ctx.table)}};
    return r.dump();
}

std::string hmarks_json(const std::string& complex, const std::string& mode, const std::string& v, bool cross_check,
                        std::uint64_t seed, int cap) {
    ChainComplex c = over_whole_group(parse_complex(complex, cap));
    EndoMode m = parse_mode(mode);
    RelProjContext ctx = context_for(c, m, v, seed);
    HMarkReport r = hmarks(c, ctx, m, CheckOptions{seed, 200, cross_check});
    return to_json(r, *ctx.table).dump();
}

std::string borel_smith_json(const std::string& fn, const std::string& v, bool at_v, int cap) {
    SuperclassFn f = superclass_from_json(Json::parse(fn), cap);
    BorelSmithReport rep;
    if (at_v)
        rep = check_borel_smith_at_V(f, make_context(module_from_spec(v, Subgroup::whole(f.table->group), f.table->p)));
    else
        rep = check_borel_smith(f);
    return Json{{"function", superclass_to_json(f)}, {"report", to_json(rep, *f.table)}}.dump();
}

std::string borel_smith_complex_json(const std::string& complex, const std::string& mode, const std::string& v,
                                     bool at_v, int cap) {
    ChainComplex c = over_whole_group(parse_complex(complex, cap));
    EndoMode m = parse_mode(mode);
    RelProjContext ctx = context_for(c, m, v, 0);
    SuperclassFn f = superclass_from_hmarks(hmarks(c, ctx, m), ctx.table);
    BorelSmithReport rep = at_v ? check_borel_smith_at_V(f, ctx) : check_borel_smith(f);
    return Json{{"function", superclass_to_json(f)}, {"report", to_json(rep, *f.table)}}.dump();
}

std::string mackey_json(const std::string& group, const std::string& h, const std::string& m,
                        const std::optional<std::string>& p_ref, unsigned p, std::uint64_t seed, int cap) {
    GroupPtr g = load_group(group, cap);
    if (p == 0) p = largest_prime(g);
    Subgroup whole = Subgroup::whole(g);
    Subgroup hs = subgroup_from_json(g, subgroup_ref_from_spec(h), p);
    Module mod = module_from_spec(m, hs, p);
    auto tab = p_subgroup_table(g, p);
    std::vector<Subgroup> ps = tab->reps;
    if (p_ref) ps = {subgroup_from_json(g, subgroup_ref_from_spec(*p_ref), p)};
    Json cases = Json::array();
    for (const auto& s : ps) {
        Json x = to_json(verify_mackey_brauer(mod, whole, s, seed));
        x["P"] = tab->rep_label(tab->rep_index(s));
        cases.push_back(std::move(x));
    }
    return Json{{"group", g->name()}, {"p", p}, {"H", hs.describe()}, {"M", mod.label()}, {"cases", cases}}.dump();
}

std::string decompose_json(const std::string& group, const std::string& m, const std::string& over, unsigned p,
                           std::uint64_t seed, int cap) {
    GroupPtr g = load_group(group, cap);
    if (p == 0) p = largest_prime(g);
    Subgroup o = subgroup_from_json(g, subgroup_ref_from_spec(over), p);
    Module mod = module_from_spec(m, o, p);
    Json r{{"group", g->name()}, {"p", p}, {"module", mod.label()}, {"dim", mod.dim()}};
    r["decomposition"] = to_json(decompose(mod, seed), seed);
    return r.dump();
}

std::string green_json(const std::string& complex, const std::string& h, const std::string& direction,
                       std::uint64_t seed, int cap) {
    ChainComplex c = parse_complex(complex, cap);
    GroupPtr g = c.group().ambient();
    Subgroup hs = subgroup_from_json(g, subgroup_ref_from_spec(h), c.p());
    require(direction == "up" || direction == "down", ErrorKind::InvalidInput, "direction must be 'up' or 'down'");
    ChainComplex out =
        green(c, direction == "up" ? GreenDirection::Up : GreenDirection::Down, hs, Subgroup::whole(g), seed);
    return complex_to_json(out).dump();
}

std::string lifts_json(const std::string& complex, std::uint64_t seed, int cap) {
    ChainComplex c = parse_complex(complex, cap);
    Json arr = Json::array();
    for (const auto& l : restriction_lifts(c, Subgroup::whole(c.group().ambient()), seed))
        arr.push_back(complex_to_json(l));
    return arr.dump();
}

template <class F>
auto unary(F f) {
    return [f](const std::string& c, int cap) { return complex_to_json(f(parse_complex(c, cap))).dump(); };
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "p-permutation endotrivial complexes over finite groups";
    static py::exception<Error> error(m, "PpcxError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(error, e.what());
        }
    });
    m.attr("SCHEMA") = kSchema;
    m.attr("DEFAULT_CAP") = kDefaultGroupCap;

    m.def("construct",
          [](const std::string& name, const std::string& group, unsigned p, int length, int cap) {
              return complex_to_json(example_complex(name, group, p, length, cap)).dump();
          },
          py::arg("name"), py::arg("group") = "C2", py::arg("p") = 2, py::arg("length") = 2,
          py::arg("cap") = kDefaultGroupCap);
    m.def("check", &check_json, py::arg("complex"), py::arg("mode") = "weak", py::arg("V") = "regular",
          py::arg("cross_check") = true, py::arg("direct_cap") = 200, py::arg("seed") = 0,
          py::arg("cap") = kDefaultGroupCap);
    m.def("hmarks", &hmarks_json, py::arg("complex"), py::arg("mode") = "weak", py::arg("V") = "regular",
          py::arg("cross_check") = true, py::arg("seed") = 0, py::arg("cap") = kDefaultGroupCap);
    m.def("borel_smith", &borel_smith_json, py::arg("function"), py::arg("V") = "regular", py::arg("at_V") = false,
          py::arg("cap") = kDefaultGroupCap);
    m.def("borel_smith_of_complex", &borel_smith_complex_json, py::arg("complex"), py::arg("mode") = "plain",
          py::arg("V") = "regular", py::arg("at_V") = false, py::arg("cap") = kDefaultGroupCap);
    m.def("psubgroups",
          [](const std::string& group, unsigned p, int cap) { return to_json(*p_subgroup_table(load_group(group, cap), p)).dump(); },
          py::arg("group"), py::arg("p"), py::arg("cap") = kDefaultGroupCap);
    m.def("mackey_verify", &mackey_json, py::arg("group"), py::arg("H"), py::arg("M") = "regular",
          py::arg("P") = py::none(), py::arg("p") = 0, py::arg("seed") = 0, py::arg("cap") = kDefaultGroupCap);
    m.def("mackey_sweep",
          [](const std::string& group, unsigned p, std::uint64_t seed, int cap) {
              return to_json(mackey_sweep(load_group(group, cap), p, seed)).dump();
          },
          py::arg("group"), py::arg("p"), py::arg("seed") = 0, py::arg("cap") = kDefaultGroupCap);
    m.def("decompose", &decompose_json, py::arg("group"), py::arg("M"), py::arg("over") = "G", py::arg("p") = 0,
          py::arg("seed") = 0, py::arg("cap") = kDefaultGroupCap);
    m.def("green", &green_json, py::arg("complex"), py::arg("H"), py::arg("direction"), py::arg("seed") = 0,
          py::arg("cap") = kDefaultGroupCap);
    m.def("lifts", &lifts_json, py::arg("complex"), py::arg("seed") = 0, py::arg("cap") = kDefaultGroupCap);
    m.def("summary", [](const std::string& c, int cap) { return complex_summary(parse_complex(c, cap)).dump(); },
          py::arg("complex"), py::arg("cap") = kDefaultGroupCap);
    m.def("dual", unary([](const ChainComplex& c) { return dual(c); }), py::arg("complex"),
          py::arg("cap") = kDefaultGroupCap);
    m.def("shift",
          [](const std::string& c, int n, int cap) { return complex_to_json(shift(parse_complex(c, cap), n)).dump(); },
          py::arg("complex"), py::arg("n"), py::arg("cap") = kDefaultGroupCap);
    m.def("tensor",
          [](const std::string& a, const std::string& b, int cap) {
              return complex_to_json(tensor(parse_complex(a, cap), parse_complex(b, cap))).dump();
          },
          py::arg("a"), py::arg("b"), py::arg("cap") = kDefaultGroupCap);
    m.def("direct_sum",
          [](const std::string& a, const std::string& b, int cap) {
              return complex_to_json(direct_sum(parse_complex(a, cap), parse_complex(b, cap))).dump();
          },
          py::arg("a"), py::arg("b"), py::arg("cap") = kDefaultGroupCap);
}
