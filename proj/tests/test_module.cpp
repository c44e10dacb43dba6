#include <doctest.h>

#include <algorithm>

#include "ppcx/catalog.hpp"
#include "ppcx/module.hpp"

using namespace ppcx;

namespace {

Subgroup sub(const char* group, const std::vector<std::vector<std::vector<int>>>& gens) {
    auto g = named_group(group);
    std::vector<int> es;
    for (const auto& cyc : gens) es.push_back(g->index_of(perm_from_cycles(g->degree(), cyc)));
    return closure(g, es);
}

Subgroup whole(const char* group) { return Subgroup::whole(named_group(group)); }

Module sign_s3(unsigned p) {
    auto g = whole("S3");
    std::vector<long long> vals;
    for (int s : g.generators()) vals.push_back(g.ambient()->perm(s) == perm_from_cycles(3, {{0, 1, 2}}) ? 1 : -1);
    return Module::one_dim(g, p, vals);
}

// Multiset of (dim, class size) from a decomposition.
std::vector<std::pair<int, int>> shape(const DecompositionReport& r) {
    std::vector<std::pair<int, int>> out;
    for (std::size_t c = 0; c < r.class_first.size(); ++c)
        out.emplace_back(r.summands[r.class_first[c]].module.dim(), r.multiplicity[c]);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("builders") {
    auto c2 = whole("C2");
    auto k = Module::trivial(c2, 2);
    CHECK(k.dim() == 1);
    CHECK(k.gen_actions()[0].is_identity());
    auto s3 = whole("S3");
    auto c3 = sub("S3", {{{0, 1, 2}}});
    auto m = Module::perm_on_cosets(s3, c3, 3);
    CHECK(m.dim() == 2);
    for (int e : s3.elements()) {
        bool even = c3.contains(e);
        CHECK(m.action(e).is_identity() == even);
    }
    auto sgn = sign_s3(3);
    CHECK(character_values(sgn)[s3.position(s3.ambient()->index_of(perm_from_cycles(3, {{0, 1}})))] == 2);
    CHECK_THROWS_AS(Module::one_dim(s3, 3, {1, 2, 2}), Error);
    auto c3g = whole("C3");
    CHECK_NOTHROW(Module::one_dim(c3g, 7, {2}));  // 2^3 = 1 mod 7
    CHECK_THROWS_AS(Module::one_dim(c3g, 7, {3}), Error);
    CHECK_THROWS_AS(Module::from_matrices(whole("C2"), 3, {FpMatrix::from_rows(3, {{1, 1}, {0, 1}})}), Error);
}

TEST_CASE("functors") {
    auto s3 = whole("S3");
    auto c3 = sub("S3", {{{0, 1, 2}}});
    CHECK(iso_test(dual(Module::trivial(s3, 3)), Module::trivial(s3, 3)));
    auto ind = induce_to(Module::trivial(c3, 3), s3);
    CHECK(ind.dim() == 2);
    CHECK(iso_test(ind, Module::perm_on_cosets(s3, c3, 3)));
    auto c2 = whole("C2");
    auto kc2 = Module::regular(c2, 2);
    auto t = tensor(kc2, kc2);
    CHECK(t.dim() == 4);
    CHECK(iso_test(t, direct_sum(kc2, kc2)));
    auto sgn = sign_s3(3);
    CHECK(character1d(dual(sgn)) == character1d(sgn));
    CHECK_FALSE(iso_test(Module::trivial(s3, 3), sgn));
    CHECK(hom_space(Module::trivial(s3, 3), sgn).empty());
    CHECK(iso_test(Module::trivial(s3, 3), Module::trivial(s3, 3))->is_identity());
}

TEST_CASE("free adjunction: dim Hom(kG, M) = dim M") {
    Rng rng(9);
    for (const char* gname : {"C2", "S3"}) {
        auto g = whole(gname);
        for (unsigned p : {2u, 3u}) {
            auto kg = Module::regular(g, p);
            auto c3 = sub("S3", {{{0, 1, 2}}});
            std::vector<Module> samples{Module::trivial(g, p), kg, tensor(kg, kg)};
            if (std::string(gname) == "S3") {
                samples.push_back(Module::perm_on_cosets(g, c3, p));
                samples.push_back(sign_s3(p));
            }
            for (const auto& m : samples) {
                CHECK(static_cast<int>(hom_space(kg, m).size()) == m.dim());
                // the transpose path and the generic path agree
                CHECK(hom_space(m, kg).size() == hom_space(dual(kg), dual(m)).size());
            }
        }
    }
}

TEST_CASE("dual and tensor identities") {
    auto s3 = whole("S3");
    auto c2 = sub("S3", {{{0, 1}}});
    auto m = direct_sum(Module::perm_on_cosets(s3, c2, 3), sign_s3(3));
    auto dd = dual(dual(m));
    for (std::size_t s = 0; s < m.gen_actions().size(); ++s) CHECK(dd.gen_actions()[s] == m.gen_actions()[s]);
    CHECK(iso_test(tensor(m, Module::trivial(s3, 3)), m));
    CHECK(iso_test(hom_module(m, m), tensor(dual(m), m)));
}

TEST_CASE("Brauer quotient") {
    auto c2 = whole("C2");
    CHECK(brauer(Module::regular(c2, 2), c2).dim() == 0);
    auto s3 = whole("S3");
    auto c3 = sub("S3", {{{0, 1, 2}}});
    auto br = brauer(Module::perm_on_cosets(s3, c3, 3), c3);
    CHECK(br.dim() == 2);
    CHECK(br.group().order() == 6);
    auto bk = brauer(Module::trivial(s3, 3), c3);
    CHECK(bk.dim() == 1);
    CHECK(bk.trivial_on().has_value());
    // M(1) = M
    auto m = Module::perm_on_cosets(s3, sub("S3", {{{0, 1}}}), 3);
    CHECK(iso_test(brauer(m, Subgroup::trivial(s3.ambient())), m));
    // projectives vanish at nontrivial P
    for (const char* gname : {"S3", "Q8", "S4"}) {
        auto g = whole(gname);
        auto tab = p_subgroup_table(g.ambient(), 2);
        auto free = Module::regular(g, 2);
        for (int i = 1; i < tab->size(); ++i) CHECK(brauer(free, tab->reps[i]).dim() == 0);
    }
}

TEST_CASE("Brauer quotient of permutation modules counts fixed cosets") {
    // oracle: k[G/H](P) has basis the P-fixed cosets gH
    auto g = named_group("S4");
    auto tab = p_subgroup_table(g, 2);
    for (const auto& h : subgroup_class_reps(g)) {
        auto m = Module::perm_on_cosets(Subgroup::whole(g), h, 2);
        for (const auto& e : tab->all) {
            int fixed = 0;
            for (int t : h.left_transversal(Subgroup::whole(g))) {
                bool ok = true;
                for (int u : e.sub.generators()) ok = ok && h.contains(g->mul(g->inv(t), g->mul(u, t)));
                fixed += ok;
            }
            CHECK(brauer(m, e.sub).dim() == fixed);
        }
    }
}

TEST_CASE("Brauer quotient commutes with tensor on p-permutation modules") {
    auto s4 = whole("S4");
    auto g = s4.ambient();
    auto tab = p_subgroup_table(g, 2);
    auto reps = subgroup_class_reps(g);
    Rng rng(21);
    for (int t = 0; t < 6; ++t) {
        auto a = Module::perm_on_cosets(s4, reps[rng.below(static_cast<unsigned>(reps.size()))], 2);
        auto b = Module::perm_on_cosets(s4, reps[rng.below(static_cast<unsigned>(reps.size()))], 2);
        if (a.dim() * b.dim() > 72) continue;
        for (int i = 0; i < tab->size(); ++i) {
            auto p = tab->reps[i];
            auto lhs = brauer(tensor(a, b), p);
            auto rhs = tensor(brauer(a, p), brauer(b, p));
            REQUIRE(lhs.dim() == rhs.dim());
            if (lhs.dim() && lhs.dim() <= 24) CHECK(iso_test(lhs, rhs));
        }
    }
}

TEST_CASE("relative trace transitivity") {
    auto g = named_group("S4");
    auto whole4 = Subgroup::whole(g);
    auto m = Module::perm_on_cosets(whole4, sub("S4", {{{0, 1}}}), 2);
    auto tab = p_subgroup_table(g, 2);
    for (const auto& r : tab->all)
        for (const auto& q : tab->all) {
            if (!r.sub.is_subgroup_of(q.sub)) continue;
            auto p = tab->reps[tab->sylow_index()];
            if (!q.sub.is_subgroup_of(p)) continue;
            FpMatrix fr = fixed_points(m, r.sub);
            CHECK(relative_trace(m, q.sub, p) * relative_trace(m, r.sub, q.sub) * fr == relative_trace(m, r.sub, p) * fr);
        }
}

TEST_CASE("decomposition") {
    auto c2 = whole("C2");
    auto d = decompose(Module::regular(c2, 2));
    CHECK(d.summands.size() == 1);
    auto kk = direct_sum(Module::trivial(c2, 2), Module::trivial(c2, 2));
    auto dk = decompose(kk);
    CHECK(dk.summands.size() == 2);
    CHECK(dk.multiplicity == std::vector<int>{2});
    auto s3 = whole("S3");
    // k[S3/C2] at p = 3 is the projective cover of k: uniserial k, sign, k
    auto m = Module::perm_on_cosets(s3, sub("S3", {{{0, 1}}}), 3);
    auto dm = decompose(m);
    CHECK(dm.summands.size() == 1);
    CHECK(is_indecomposable(m));
    auto v = vertex(m);
    CHECK(v.vertex.order() == 1);
    CHECK(v.trivial_source);
    // at p = 2 the same module splits as k + 2-dim
    auto dm2 = decompose(Module::perm_on_cosets(s3, sub("S3", {{{0, 1}}}), 2));
    CHECK(shape(dm2) == std::vector<std::pair<int, int>>{{1, 1}, {2, 1}});
}

TEST_CASE("decomposition certificates and seed independence") {
    auto s4 = whole("S4");
    auto g = s4.ambient();
    auto reps = subgroup_class_reps(g);
    for (unsigned p : {2u, 3u}) {
        Module m = direct_sum(Module::perm_on_cosets(s4, reps[2], p), tensor(Module::perm_on_cosets(s4, reps[3], p),
                                                                             Module::one_dim(s4, p, {-1, -1})));
        auto base = decompose(m, 0);
        FpMatrix sum(p, m.dim(), m.dim());
        int total = 0;
        for (const auto& s : base.summands) {
            CHECK((s.proj * s.embed).is_identity());
            CHECK(is_module_hom(s.module, m, s.embed));
            CHECK(is_module_hom(m, s.module, s.proj));
            CHECK(is_indecomposable(s.module));
            sum += s.embed * s.proj;
            total += s.module.dim();
        }
        CHECK(sum.is_identity());
        CHECK(total == m.dim());
        for (std::uint64_t seed = 1; seed <= 5; ++seed) CHECK(shape(decompose(m, seed)) == shape(base));
    }
}

TEST_CASE("vertices") {
    for (const char* gname : {"S3", "Q8", "A4"}) {
        auto g = whole(gname);
        for (unsigned p : {2u, 3u}) {
            if (g.order() % p) continue;
            auto tab = p_subgroup_table(g.ambient(), p);
            auto vk = vertex(Module::trivial(g, p));
            CHECK(vk.rep == tab->sylow_index());
            CHECK(vk.trivial_source);
            // Higman's criterion agrees: k is projective relative to the Sylow class only
            for (int i = 0; i < tab->size(); ++i)
                CHECK(is_relatively_projective(Module::trivial(g, p), {tab->reps[i]}) == (i == tab->sylow_index()));
        }
    }
    auto kc2 = Module::regular(whole("C2"), 2);
    CHECK(vertex(kc2).vertex.order() == 1);
    CHECK_THROWS_AS(vertex(direct_sum(kc2, kc2)), Error);
    // modules over a subgroup are handled through an isomorphic whole group
    auto c3 = sub("S3", {{{0, 1, 2}}});
    CHECK(vertex(Module::trivial(c3, 3)).vertex.order() == 3);
}

TEST_CASE("p-permutation recognition") {
    auto s3 = whole("S3");
    // 1-dimensional modules restrict trivially to the Sylow subgroup: trivial source
    CHECK(is_p_permutation(sign_s3(3).with_pperm(false)));
    auto jordan = Module::from_matrices(whole("C3"), 3, {FpMatrix::from_rows(3, {{1, 1}, {0, 1}})});
    CHECK_FALSE(is_p_permutation(jordan));
    CHECK(vertex(jordan).vertex.order() == 3);
    CHECK_FALSE(vertex(jordan).trivial_source);
    CHECK(is_p_permutation(sign_s3(2).with_pperm(false)));
    CHECK(is_p_permutation(Module::regular(s3, 3).with_pperm(false)));
}
