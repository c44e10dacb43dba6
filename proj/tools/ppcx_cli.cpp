#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ppcx/io.hpp"

using namespace ppcx;

namespace {

struct Config {
    std::uint64_t seed = 0;
    int cap = kDefaultGroupCap;
    std::string format = "json";
    int jobs = 1;
};

struct ComplexSource {
    std::string file;
    std::string example;
    std::string group = "C2";
    unsigned p = 2;
    int length = 2;
};

void add_complex_options(CLI::App* sub, ComplexSource& s, bool with_p = true) {
    sub->add_option("--complex", s.file, "complex JSON file");
    sub->add_option("--example", s.example, "catalog example name");
    sub->add_option("--group", s.group, "group for --example (catalog name or group file)");
    if (with_p) sub->add_option("--p", s.p, "characteristic for --example");
    sub->add_option("--length", s.length, "length for periodic_truncation");
}

ChainComplex load_complex(const ComplexSource& s, const Config& cfg) {
    require(s.file.empty() != s.example.empty(), ErrorKind::InvalidInput, "give exactly one of --complex or --example");
    if (!s.file.empty()) return complex_from_json(read_json_file(s.file), cfg.cap);
    return example_complex(s.example, s.group, s.p, s.length, cfg.cap);
}

int emit(const std::string& command, const Config& cfg, const Json& result, int code) {
    Json out{{"schema", kSchema}, {"command", command}, {"seed", cfg.seed}, {"result", result}};
    if (cfg.format == "text")
        std::cout << render_text(out);
    else
        std::cout << out.dump(2) << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-permutation endotrivial complex toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    Config cfg;
    app.add_option("--seed", cfg.seed, "random seed (results do not depend on it)");
    app.add_option("--cap", cfg.cap, "maximum group order");
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--jobs", cfg.jobs, "worker count (accepted; runs single-threaded)");

    ComplexSource src;
    std::string mode = "weak", vspec = "regular";
    bool no_cross = false;
    int direct_cap = 200;

    auto* check_cmd = app.add_subcommand("check", "check an endotriviality property");
    auto* hmarks_cmd = app.add_subcommand("hmarks", "h-marks of a complex");
    for (auto* sub : {check_cmd, hmarks_cmd}) {
        add_complex_options(sub, src);
        sub->add_option("--mode", mode, "weak|strong|esplit|endosplit|plain");
        sub->add_option("--V", vspec, "regular|trivial|zero|perm:<subgroup>|module file");
        sub->add_flag("--no-cross-check", no_cross, "skip the direct verification forms");
        sub->add_option("--direct-cap", direct_cap, "size limit for the direct forms");
    }

    auto* bs_cmd = app.add_subcommand("borel-smith", "Borel-Smith conditions for a superclass function");
    std::string fn_file;
    bool at_v = false;
    bs_cmd->add_option("--fn", fn_file, "superclass function JSON");
    add_complex_options(bs_cmd, src);
    bs_cmd->add_option("--mode", mode, "mode used for h-marks of --complex/--example");
    bs_cmd->add_option("--V", vspec, "V for h-marks and --at-V");
    bs_cmd->add_flag("--at-V", at_v, "only sections with V(H) = 0");

    auto* brauer_cmd = app.add_subcommand("brauer", "Brauer constructions of a complex at p-subgroups");
    add_complex_options(brauer_cmd, src);
    std::string pref;
    brauer_cmd->add_option("--P", pref, "p-subgroup (default: every class)");

    auto* mackey_cmd = app.add_subcommand("mackey-verify", "Mackey formula for Brauer quotients of induced modules");
    std::string gspec = "S3", href = "G", mspec = "trivial";
    unsigned p = 0;
    bool sweep = false;
    mackey_cmd->add_option("--G", gspec, "group (catalog name or group file)");
    mackey_cmd->add_option("--H", href, "subgroup");
    mackey_cmd->add_option("--M", mspec, "module over H: trivial|regular|perm:<subgroup>|module file");
    mackey_cmd->add_option("--P", pref, "p-subgroup (default: every class)");
    mackey_cmd->add_option("--p", p, "characteristic (default: largest prime dividing |G|)");
    mackey_cmd->add_flag("--sweep", sweep, "all H, M = k[H/Q] and P");

    auto* dec_cmd = app.add_subcommand("decompose", "indecomposable summands of a module or complex");
    dec_cmd->add_option("--G", gspec, "group");
    dec_cmd->add_option("--M", mspec, "module: trivial|regular|perm:<subgroup>|module file");
    dec_cmd->add_option("--over", href, "subgroup the module lives over");
    dec_cmd->add_option("--p", p, "characteristic");
    bool dec_complex = false;
    dec_cmd->add_flag("--chain", dec_complex, "decompose the complex given by --complex/--example (uses --p)");
    add_complex_options(dec_cmd, src, false);

    auto* green_cmd = app.add_subcommand("green", "Green correspondent of a complex with Sylow vertex");
    add_complex_options(green_cmd, src);
    std::string direction = "down";
    bool lifts = false;
    green_cmd->add_option("--H", href, "subgroup containing a Sylow subgroup");
    green_cmd->add_option("--direction", direction, "down (G to H) or up (H to G)")->check(CLI::IsMember({"down", "up"}));
    green_cmd->add_flag("--lifts", lifts, "list complexes over G restricting to the input (input over H)");

    auto* construct_cmd = app.add_subcommand("construct", "build a catalog complex");
    std::string name;
    construct_cmd->add_option("--name", name, "augmentation|omega_complex|norm|periodic_truncation|sd16_CE")->required();
    construct_cmd->add_option("--group", src.group, "group");
    construct_cmd->add_option("--p", src.p, "characteristic");
    construct_cmd->add_option("--length", src.length, "truncation length");

    auto* ps_cmd = app.add_subcommand("psubgroups", "conjugacy classes of p-subgroups");
    ps_cmd->add_option("--G", gspec, "group");
    ps_cmd->add_option("--p", p, "prime")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    auto default_prime = [&](const GroupPtr& g) {
        if (p) return p;
        unsigned best = 2;
        for (unsigned q = 2; q <= static_cast<unsigned>(g->order()); ++q) {
            bool prime = true;
            for (unsigned r = 2; r * r <= q; ++r) prime = prime && q % r;
            if (prime && g->order() % q == 0) best = q;
        }
        return best;
    };
    try {
        CheckOptions opt{cfg.seed, direct_cap, !no_cross};
        if (command == "check" || command == "hmarks") {
            ChainComplex c = over_whole_group(load_complex(src, cfg));
            EndoMode m = parse_mode(mode);
            Module v = m == EndoMode::Plain ? Module::zero(c.group(), c.p()) : module_from_spec(vspec, c.group(), c.p());
            RelProjContext ctx = make_context(v, cfg.seed);
            EndoVerdict verdict = check(c, ctx, m, opt);
            Json r{{"complex", complex_summary(c)}, {"V", to_json(ctx)}};
            if (command == "check") {
                r["verdict"] = to_json(verdict, *ctx.table);
            } else {
                r["holds"] = verdict.holds;
                r["reason"] = verdict.reason;
                r["hmarks"] = to_json(verdict.report, *ctx.table);
            }
            return emit(command, cfg, r, verdict.holds ? 0 : 1);
        }
        if (command == "borel-smith") {
            SuperclassFn f;
            Json r = Json::object();
            std::optional<RelProjContext> ctx;
            if (!fn_file.empty()) {
                f = superclass_from_json(read_json_file(fn_file), cfg.cap);
                if (at_v) ctx = make_context(module_from_spec(vspec, Subgroup::whole(f.table->group), f.table->p), cfg.seed);
            } else {
                ChainComplex c = over_whole_group(load_complex(src, cfg));
                EndoMode m = parse_mode(mode);
                Module v = m == EndoMode::Plain ? Module::zero(c.group(), c.p()) : module_from_spec(vspec, c.group(), c.p());
                ctx = make_context(v, cfg.seed);
                f = superclass_from_hmarks(hmarks(c, *ctx, m, opt), ctx->table);
                r["complex"] = complex_summary(c);
            }
            r["function"] = superclass_to_json(f);
            BorelSmithReport rep = at_v ? check_borel_smith_at_V(f, *ctx) : check_borel_smith(f);
            r["report"] = to_json(rep, *f.table);
            return emit(command, cfg, r, rep.holds ? 0 : 1);
        }
        if (command == "brauer") {
            ChainComplex c = load_complex(src, cfg);
            auto tab = p_subgroup_table(c.group().ambient(), c.p());
            Json at = Json::array();
            for (int i = 0; i < tab->size(); ++i) {
                if (!tab->reps[i].is_subgroup_of(c.group())) continue;
                if (!pref.empty() && subgroup_from_json(c.group().ambient(), subgroup_ref_from_spec(pref), c.p()) != tab->reps[i])
                    continue;
                ChainComplex b = brauer_chain(c, tab->reps[i]);
                Json x = complex_summary(b);
                x["P"] = tab->rep_label(i);
                x["normalizer_order"] = b.group().order();
                at.push_back(std::move(x));
            }
            return emit(command, cfg, Json{{"complex", complex_summary(c)}, {"brauer", at}}, 0);
        }
        if (command == "mackey-verify") {
            GroupPtr g = load_group(gspec, cfg.cap);
            const unsigned q = default_prime(g);
            if (sweep) {
                auto cases = mackey_sweep(g, q, cfg.seed);
                Json r = to_json(cases);
                return emit(command, cfg, r, r["iso"] == r["total"] ? 0 : 1);
            }
            Subgroup whole = Subgroup::whole(g);
            Subgroup h = subgroup_from_json(g, subgroup_ref_from_spec(href), q);
            Module m = module_from_spec(mspec, h, q);
            auto tab = p_subgroup_table(g, q);
            std::vector<Subgroup> ps;
            if (pref.empty())
                ps = tab->reps;
            else
                ps.push_back(subgroup_from_json(g, subgroup_ref_from_spec(pref), q));
            Json cases = Json::array();
            bool all = true;
            for (const auto& s : ps) {
                auto v = verify_mackey_brauer(m, whole, s, cfg.seed);
                auto rhs = mackey_brauer_rhs(m, whole, s, cfg.seed);
                Json x = to_json(v);
                x["P"] = tab->rep_label(tab->rep_index(s));
                x["terms"] = rhs.terms.size();
                cases.push_back(std::move(x));
                all = all && v.iso;
            }
            return emit(command, cfg,
                        Json{{"group", g->name()}, {"p", q}, {"H", h.describe()}, {"M", m.label()}, {"cases", cases}},
                        all ? 0 : 1);
        }
        if (command == "decompose") {
            if (dec_complex) {
                if (p) src.p = p;
                ChainComplex c = load_complex(src, cfg);
                Json parts = Json::array();
                for (const auto& s : chain_decompose(c, cfg.seed)) {
                    Json x = complex_summary(s.complex);
                    x["iso_class"] = s.iso_class;
                    x["vertex_order"] = chain_vertex(s.complex).vertex.order();
                    parts.push_back(std::move(x));
                }
                return emit(command, cfg, Json{{"complex", complex_summary(c)}, {"summands", parts}}, 0);
            }
            GroupPtr g = load_group(gspec, cfg.cap);
            const unsigned q = default_prime(g);
            Subgroup over = subgroup_from_json(g, subgroup_ref_from_spec(href), q);
            Module m = module_from_spec(mspec, over, q);
            Json r{{"group", g->name()}, {"p", q}, {"module", m.label()}, {"dim", m.dim()}};
            r["decomposition"] = to_json(decompose(m, cfg.seed), cfg.seed);
            return emit(command, cfg, r, 0);
        }
        if (command == "green") {
            ChainComplex c = load_complex(src, cfg);
            GroupPtr g = c.group().ambient();
            Subgroup whole = Subgroup::whole(g);
            Subgroup h = subgroup_from_json(g, subgroup_ref_from_spec(href), c.p());
            Json r{{"input", complex_summary(c)}};
            if (lifts) {
                Json arr = Json::array();
                for (const auto& l : restriction_lifts(c, whole, cfg.seed)) arr.push_back(complex_to_json(l));
                r["lifts"] = arr;
                return emit(command, cfg, r, arr.empty() ? 1 : 0);
            }
            ChainComplex out = green(c, direction == "up" ? GreenDirection::Up : GreenDirection::Down, h, whole, cfg.seed);
            r["correspondent"] = complex_summary(out);
            r["complex"] = complex_to_json(out);
            return emit(command, cfg, r, 0);
        }
        if (command == "construct") {
            ComplexSource s = src;
            s.example = name;
            ChainComplex c = load_complex(s, cfg);
            return emit(command, cfg, complex_to_json(c), 0);
        }
        if (command == "psubgroups") {
            GroupPtr g = load_group(gspec, cfg.cap);
            return emit(command, cfg, to_json(*p_subgroup_table(g, p)), 0);
        }
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        Json err{{"kind", error_kind_name(e.kind())}, {"message", e.what()}};
        return emit(command, cfg, Json{{"error", err}}, e.kind() == ErrorKind::Indeterminate ? 2 : 3);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return emit(command, cfg, Json{{"error", {{"kind", "InvalidInput"}, {"message", e.what()}}}}, 3);
    }
    return 3;
}
