#include <doctest.h>

#include "ppcx/catalog.hpp"
#include "ppcx/complex.hpp"

using namespace ppcx;

namespace {

Subgroup whole(const char* name) { return Subgroup::whole(named_group(name)); }

// k[G/Q] -> k in degrees 1, 0.
ChainComplex aug(const Subgroup& g, const Subgroup& q, unsigned p) {
    Module x = Module::perm_on_cosets(g, q, p);
    FpMatrix e(p, 1, x.dim());
    for (int j = 0; j < x.dim(); ++j) e.set(0, j, 1);
    return ChainComplex::make(g, p, 0, {Module::trivial(g, p), x}, {e}, "aug");
}

ChainComplex norm_c2() {
    auto g = whole("C2");
    Module kg = Module::regular(g, 2);
    FpMatrix n = FpMatrix::from_rows(2, {{1, 1}, {1, 1}});
    return ChainComplex::make(g, 2, 0, {kg, kg}, {n}, "norm");
}

int sum_prod(const std::map<int, int>& a, const std::map<int, int>& b, int n) {
    int s = 0;
    for (auto [i, x] : a) {
        auto it = b.find(n - i);
        if (it != b.end()) s += x * it->second;
    }
    return s;
}

// Small complexes of p-permutation modules built from primitives.
std::vector<ChainComplex> samples(const Subgroup& g, unsigned p) {
    auto t = Subgroup::trivial(g.ambient());
    std::vector<ChainComplex> out;
    ChainComplex a = aug(g, t, p);
    ChainComplex k0 = ChainComplex::singleton(Module::trivial(g, p), 0);
    out.push_back(a);
    out.push_back(k0);
    out.push_back(shift(a, 1));
    out.push_back(direct_sum(a, shift(k0, 2)));
    out.push_back(dual(a));
    out.push_back(tensor(a, shift(dual(a), -1)));
    return out;
}

}  // namespace

TEST_CASE("construction validates") {
    auto g = whole("C2");
    Module kg = Module::regular(g, 2);
    CHECK_THROWS_AS(ChainComplex::make(g, 2, 0, {kg, kg, kg}, {FpMatrix::identity(2, 2), FpMatrix::identity(2, 2)}),
                    Error);
    CHECK_THROWS_AS(ChainComplex::make(g, 2, 0, {Module::trivial(g, 2), kg}, {FpMatrix::from_rows(2, {{1, 0}})}), Error);
    auto z = ChainComplex::make(g, 2, 3, {Module::zero(g, 2), kg, Module::zero(g, 2)},
                                {FpMatrix(2, 0, 2), FpMatrix(2, 2, 0)});
    CHECK(z.lo() == 4);
    CHECK(z.hi() == 4);
}

TEST_CASE("homology") {
    auto g = whole("C2");
    auto m = Module::regular(g, 2);
    auto h = homology(ChainComplex::singleton(m, 0));
    REQUIRE(h.size() == 1);
    CHECK(iso_test(h.at(0), m));
    auto a = aug(g, Subgroup::trivial(g.ambient()), 2);
    CHECK(homology_dims(a) == std::map<int, int>{{1, 1}});
    auto cid = cone(identity_map(ChainComplex::singleton(m, 0)));
    CHECK(homology_dims(cid).empty());
    CHECK(is_contractible(cid));
    CHECK(strip_contractibles(cid).is_zero());
    CHECK(homology_dims(norm_c2()) == std::map<int, int>{{0, 1}, {1, 1}});
}

TEST_CASE("functors on complexes") {
    auto s3 = whole("S3");
    auto c3 = closure(s3.ambient(), {s3.ambient()->index_of(perm_from_cycles(3, {{0, 1, 2}}))});
    auto m = Module::perm_on_cosets(s3, c3, 3);
    auto t = tensor(ChainComplex::singleton(m, 0), ChainComplex::singleton(Module::trivial(s3, 3), 0));
    CHECK(t.lo() == 0);
    CHECK(t.hi() == 0);
    CHECK(iso_test(t.term(0), m));
    auto k0 = ChainComplex::singleton(Module::trivial(s3, 3), 0);
    auto dk = dual(k0);
    CHECK(dk.lo() == 0);
    CHECK(dk.term(0).gen_actions() == k0.term(0).gen_actions());
    auto a = aug(s3, c3, 3);
    auto dd = dual(dual(a));
    for (int i = a.lo(); i <= a.hi(); ++i) {
        CHECK(dd.d(i) == a.d(i));
        CHECK(dd.term(i).gen_actions() == a.term(i).gen_actions());
    }
    // tensor squares of kC2 -> k: H_2 = H_1 x H_1
    auto c2 = whole("C2");
    auto ac2 = aug(c2, Subgroup::trivial(c2.ambient()), 2);
    CHECK(homology_dims(tensor(ac2, ac2)) == std::map<int, int>{{2, 1}});
}

TEST_CASE("Kunneth and Euler characteristic on samples") {
    for (const char* name : {"C2", "C3", "S3", "C2xC2"}) {
        auto g = whole(name);
        unsigned p = g.order() % 3 == 0 ? 3 : 2;
        auto ss = samples(g, p);
        for (std::size_t i = 0; i < ss.size(); ++i)
            for (std::size_t j = 0; j < ss.size(); ++j) {
                if (ss[i].total_dim() * ss[j].total_dim() > 60) continue;
                auto t = tensor(ss[i], ss[j]);
                auto ht = homology_dims(t);
                auto ha = homology_dims(ss[i]), hb = homology_dims(ss[j]);
                for (int n = t.lo() - 1; n <= t.hi() + 1; ++n) CHECK(ht[n] == sum_prod(ha, hb, n));
                auto st = strip_contractibles(t);
                CHECK(st.euler() == t.euler());
                CHECK(homology_dims(st) == homology_dims(t));
            }
    }
}

TEST_CASE("Brauer construction of complexes") {
    auto c2 = whole("C2");
    auto a = aug(c2, Subgroup::trivial(c2.ambient()), 2);
    auto b = brauer_chain(a, c2);
    CHECK(b.lo() == 0);
    CHECK(b.hi() == 0);
    CHECK(b.dim(0) == 1);
    auto b1 = brauer_chain(a, Subgroup::trivial(c2.ambient()));
    CHECK(b1.total_dim() == a.total_dim());
    auto s = ChainComplex::singleton(Module::trivial(c2, 2), 3);
    CHECK(brauer_chain(s, c2).lo() == 3);
}

TEST_CASE("stripping contractibles") {
    auto c2 = whole("C2");
    auto a = aug(c2, Subgroup::trivial(c2.ambient()), 2);
    auto sa = strip_contractibles(a);
    CHECK(sa.dim(0) == 1);
    CHECK(sa.dim(1) == 2);
    auto n = Module::regular(c2, 2);
    auto with_cone = direct_sum(a, cone(identity_map(ChainComplex::singleton(n, 1))));
    auto sw = strip_contractibles(with_cone);
    CHECK(chain_iso_test(sw, sa));
    // homology and local homology survive
    auto s3 = whole("S3");
    auto tab = p_subgroup_table(s3.ambient(), 3);
    auto x = tensor(aug(s3, Subgroup::trivial(s3.ambient()), 3), dual(aug(s3, Subgroup::trivial(s3.ambient()), 3)));
    auto sx = strip_contractibles(x);
    for (const auto& r : tab->reps) CHECK(homology_dims(brauer_chain(sx, r)) == homology_dims(brauer_chain(x, r)));
}

TEST_CASE("chain decomposition and isomorphism") {
    auto c2 = whole("C2");
    auto a = aug(c2, Subgroup::trivial(c2.ambient()), 2);
    auto k0 = ChainComplex::singleton(Module::trivial(c2, 2), 0);
    auto parts = chain_decompose(direct_sum(a, k0));
    CHECK(parts.size() == 2);
    CHECK(chain_iso_test(a, a));
    auto m = Module::regular(c2, 2);
    CHECK_FALSE(chain_iso_test(ChainComplex::singleton(m, 0), ChainComplex::singleton(m, 1)));
    // certificates
    auto s3 = whole("S3");
    auto x = tensor(aug(s3, Subgroup::trivial(s3.ambient()), 3), dual(aug(s3, Subgroup::trivial(s3.ambient()), 3)));
    auto sx = strip_contractibles(x);
    auto pieces = chain_decompose(sx);
    int total = 0;
    for (const auto& pc : pieces) {
        CHECK(chain_is_indecomposable(pc.complex));
        total += pc.complex.total_dim();
    }
    CHECK(total == sx.total_dim());
    for (std::uint64_t seed = 1; seed < 4; ++seed) CHECK(chain_decompose(sx, seed).size() == pieces.size());
}

TEST_CASE("vertices of complexes") {
    for (const char* name : {"C2", "S3"}) {
        auto g = whole(name);
        unsigned p = g.order() % 3 == 0 ? 3 : 2;
        auto tab = p_subgroup_table(g.ambient(), p);
        CHECK(chain_vertex(ChainComplex::singleton(Module::trivial(g, p), 0)).rep == tab->sylow_index());
        // an indecomposable projective: kC2, or k[S3/C2] at p = 3
        Module proj = Module::regular(g, p);
        if (g.order() == 6) proj = Module::perm_on_cosets(g, closure(g.ambient(), {g.ambient()->index_of(perm_from_cycles(3, {{0, 1}}))}), p);
        CHECK(chain_vertex(ChainComplex::singleton(proj, 0)).vertex.order() == 1);
    }
    auto c2 = whole("C2");
    auto a = aug(c2, Subgroup::trivial(c2.ambient()), 2);
    CHECK(chain_vertex(a).vertex.order() == 2);
}

TEST_CASE("split complexes") {
    auto c2 = whole("C2");
    auto a = aug(c2, Subgroup::trivial(c2.ambient()), 2);
    CHECK_FALSE(is_split_complex(a));  // ker(aug) is not a summand of kC2
    CHECK(is_split_complex(ChainComplex::singleton(Module::regular(c2, 2), 0)));
    CHECK_FALSE(is_split_complex(norm_c2()));
    auto s = split_projection(Module::regular(c2, 2), FpMatrix::from_rows(2, {{1}, {1}}));
    CHECK_FALSE(s.has_value());
    auto kk = direct_sum(Module::trivial(c2, 2), Module::trivial(c2, 2));
    auto s2 = split_projection(kk, FpMatrix::from_rows(2, {{1}, {1}}));
    REQUIRE(s2);
    CHECK((*s2 * FpMatrix::from_rows(2, {{1}, {1}})).is_identity());
}
