#include <doctest.h>

#include "ppcx/endo.hpp"
#include "samples.hpp"

using namespace ppcx;
using namespace ppcx::testing;

namespace {

int h_at(const HMarkReport& r, const Subgroup& s) {
    int i = p_subgroup_table(s.ambient(), 2)->rep_index(s);
    return r.at(i)->h;
}

RelProjContext ctx_of(const Module& v) { return make_context(v); }

}  // namespace

TEST_CASE("weak check: spec examples") {
    for (auto [name, p] : {std::pair{"C2", 2u}, {"S3", 3u}, {"C2xC2", 2u}}) {
        auto g = whole(name);
        for (const auto& v : {Module::zero(g, p), Module::regular(g, p)}) {
            auto ctx = make_context(v);
            auto r = check_weak(k_at(g, p, 0), ctx);
            CHECK(r.holds);
            for (const auto& e : r.report.entries) {
                CHECK(e.defined == static_cast<bool>(ctx.vanishing[e.rep]));
                if (!e.defined) continue;
                CHECK(e.h == 0);
                for (unsigned x : e.character) CHECK(x == 1);
            }
        }
    }
    auto c2 = whole("C2");
    auto r = check_weak(aug(c2, 2), ctx_of(Module::zero(c2, 2)));
    CHECK(r.holds);
    CHECK(h_at(r.report, Subgroup::trivial(c2.ambient())) == 1);
    CHECK(h_at(r.report, c2) == 0);

    auto v4 = whole("C2xC2");
    auto om = aug(v4, 2);
    auto ctx = ctx_of(Module::regular(v4, 2));
    CHECK(check_weak(om, ctx).holds);
    auto plain = check(om, ctx, EndoMode::Plain);
    CHECK_FALSE(plain.holds);
    CHECK(plain.failing_rep == 0);
    CHECK(plain.reason.find("dimension 3") != std::string::npos);
    CHECK_THROWS_AS(check_weak(om, ctx_of(Module::trivial(v4, 2))), Error);
}

TEST_CASE("endosplit resolutions") {
    auto s3 = whole("S3");
    for (const auto& q : subgroup_class_reps(s3.ambient()))
        CHECK(check_endosplit_resolution(ChainComplex::singleton(Module::perm_on_cosets(s3, q, 3), 0)).holds);
    CHECK(check_endosplit_resolution(aug(whole("C2"), 2)).holds);
    auto n = check_endosplit_resolution(norm_c2());
    CHECK_FALSE(n.holds);
    CHECK(n.reason.find("both degrees 0 and 1") != std::string::npos);
    CHECK(n.forms.at("split") == FormStatus::Fails);

    auto c3 = whole("C3");
    Module j = Module::from_matrices(c3, 3, {FpMatrix::from_rows(3, {{1, 1}, {0, 1}})});
    CHECK_THROWS_AS(check_endosplit_resolution(ChainComplex::singleton(j, 0)), Error);
}

TEST_CASE("esplit, strong and plain checks") {
    for (auto [name, p] : {std::pair{"C2", 2u}, {"S3", 3u}, {"C2xC2", 2u}}) {
        auto g = whole(name);
        auto ctx = ctx_of(Module::regular(g, p));
        for (int n : {-1, 0, 2}) {
            auto r = check_esplit_trivial(k_at(g, p, n), ctx);
            CHECK(r.holds);
            for (const auto& e : r.report.entries) CHECK(e.h == n);
            CHECK(check_strong(k_at(g, p, n), ctx).holds);
        }
        auto a = aug(g, p);
        CHECK(check_esplit_trivial(a, ctx).holds);
        CHECK(check_strong(a, ctx).holds);
    }
    auto v4 = whole("C2xC2");
    auto r = check_esplit_trivial(aug(v4, 2), ctx_of(Module::regular(v4, 2)));
    CHECK(r.holds);
    CHECK(r.forms.at("direct") == FormStatus::Holds);
    CHECK(r.forms.at("resolution") == FormStatus::Holds);

    auto c2 = whole("C2");
    for (const auto& v : {Module::zero(c2, 2), Module::regular(c2, 2)}) {
        auto ctx = ctx_of(v);
        for (auto m : {EndoMode::Weak, EndoMode::Strong, EndoMode::Esplit, EndoMode::Plain, EndoMode::Endosplit})
            CHECK_FALSE(check(norm_c2(), ctx, m).holds);
    }
    auto z = check(norm_c2(), ctx_of(Module::zero(c2, 2)), EndoMode::Weak);
    CHECK(z.reason.find("both degrees") != std::string::npos);

    auto ctx = ctx_of(Module::regular(c2, 2));
    auto kv = direct_sum(k_at(c2, 2, 0), ChainComplex::singleton(Module::regular(c2, 2), 0));
    CHECK(check_strong(kv, ctx).holds);
    CHECK(check_esplit_trivial(kv, ctx).holds);
}

TEST_CASE("module V-endotriviality") {
    auto v4 = whole("C2xC2");
    auto ctx = ctx_of(Module::regular(v4, 2));
    Module k = Module::trivial(v4, 2);
    CHECK(check_module_V_endotrivial(k, ctx).holds);
    auto om = homology(aug(v4, 2)).at(1);
    CHECK(om.dim() == 3);
    CHECK(check_module_V_endotrivial(om, ctx).holds);
    auto kk = check_module_V_endotrivial(direct_sum(k, k), ctx);
    CHECK_FALSE(kk.holds);
    CHECK(kk.reason.find("4 trivial") != std::string::npos);
}

TEST_CASE("caps and stable classes") {
    auto c2 = whole("C2");
    auto ctx = ctx_of(Module::regular(c2, 2));
    auto k0 = k_at(c2, 2, 0);
    auto kv = direct_sum(k0, ChainComplex::singleton(Module::regular(c2, 2), 0));
    for (auto m : {EndoMode::Weak, EndoMode::Strong, EndoMode::Esplit}) {
        auto cp = cap(kv, ctx, m);
        CHECK(cp.total_dim() == 1);
    }
    auto a = aug(c2, 2);
    auto cid = cone(identity_map(shift(k0, 3)));
    auto big = direct_sum(a, cid);
    for (auto m : {EndoMode::Weak, EndoMode::Strong, EndoMode::Esplit, EndoMode::Plain}) {
        CHECK(chain_iso_test(cap(big, ctx, m), a).has_value());
        CHECK(stable_class_equal(a, big, ctx, m));
    }
    CHECK(stable_class_equal(a, k0, ctx, EndoMode::Weak));
    CHECK_FALSE(stable_class_equal(a, k0, ctx, EndoMode::Esplit));
    CHECK_FALSE(stable_class_equal(a, k0, ctx, EndoMode::Strong));
    CHECK_FALSE(stable_class_equal(a, shift(a, 1), ctx, EndoMode::Weak));
}

TEST_CASE("h-marks are additive and negate under duality") {
    for (auto [name, p] : {std::pair{"C2xC2", 2u}, {"S3", 3u}, {"C4", 2u}}) {
        auto g = whole(name);
        auto ctx = ctx_of(Module::regular(g, p));
        std::vector<ChainComplex> cs{k_at(g, p, 1), aug(g, p)};
        for (const auto& q : subgroup_class_reps(g.ambient()))
            if (q.order() < g.order() && q.is_p_group(p)) cs.push_back(aug(g, q, p));
        for (const auto& c : cs) {
            auto hc = hmarks(c, ctx, EndoMode::Esplit);
            auto hd = hmarks(dual(c), ctx, EndoMode::Esplit);
            for (std::size_t i = 0; i < hc.entries.size(); ++i) CHECK(hd.entries[i].h == -hc.entries[i].h);
            for (const auto& d : cs) {
                CheckOptions quick;
                quick.cross_check = false;
                auto ht = hmarks(tensor(c, d), ctx, EndoMode::Esplit, quick);
                auto h2 = hmarks(d, ctx, EndoMode::Esplit);
                for (std::size_t i = 0; i < hc.entries.size(); ++i)
                    CHECK(ht.entries[i].h == hc.entries[i].h + h2.entries[i].h);
            }
        }
    }
}

TEST_CASE("direct sums of endosplit resolutions") {
    auto c2 = whole("C2");
    auto a = aug(c2, 2);
    CHECK(sum_endosplit_compatible(a, a));
    CHECK_FALSE(sum_endosplit_compatible(k_at(c2, 2, 0), k_at(c2, 2, 1)));
    CHECK_FALSE(sum_endosplit_compatible(a, k_at(c2, 2, 1)));
    CHECK(sum_endosplit_compatible(a, shift(tensor(a, a), -1)) ==
          check_endosplit_resolution(direct_sum(a, shift(tensor(a, a), -1))).holds);
}
