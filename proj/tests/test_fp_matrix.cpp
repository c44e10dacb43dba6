#include <doctest.h>

#include <set>

#include "ppcx/fp_matrix.hpp"

using namespace ppcx;

namespace {

// Size of the column span by enumerating all coefficient vectors.
int brute_rank(const FpMatrix& m) {
    std::set<std::vector<Scalar>> seen;
    long long total = 1;
    for (int i = 0; i < m.cols(); ++i) total *= m.p();
    for (long long code = 0; code < total; ++code) {
        std::vector<Scalar> v(m.rows(), 0);
        long long c = code;
        for (int j = 0; j < m.cols(); ++j) {
            unsigned a = static_cast<unsigned>(c % m.p());
            c /= m.p();
            for (int r = 0; r < m.rows(); ++r) v[r] = static_cast<Scalar>((v[r] + a * m.at(r, j)) % m.p());
        }
        seen.insert(v);
    }
    int r = 0;
    for (std::size_t s = seen.size(); s > 1; s /= m.p()) ++r;
    return r;
}

}  // namespace

TEST_CASE("rref pack on small cases") {
    auto id = rref_pack(FpMatrix::identity(2, 3));
    CHECK(id.rank == 3);
    CHECK(id.kernel.cols() == 0);
    auto z = rref_pack(FpMatrix(5, 2, 5));
    CHECK(z.rank == 0);
    CHECK(z.kernel.cols() == 5);
    auto aug = rref_pack(FpMatrix::from_rows(3, {{1, 1, 1}}));
    CHECK(aug.rank == 1);
    CHECK(aug.kernel.cols() == 2);
    CHECK((FpMatrix::from_rows(3, {{1, 1, 1}}) * aug.kernel).is_zero());
}

TEST_CASE("rank agrees with span enumeration") {
    Rng rng(7);
    for (unsigned p : {2u, 3u, 5u}) {
        for (int t = 0; t < 20; ++t) {
            int r = 1 + static_cast<int>(rng.below(4)), c = 1 + static_cast<int>(rng.below(4));
            FpMatrix m = FpMatrix::random(p, r, c, rng);
            if (t % 3 == 0 && c > 1) {
                // force a dependency
                for (int i = 0; i < r; ++i) m.set(i, c - 1, m.at(i, 0) * 2);
            }
            auto pk = rref_pack(m);
            CHECK(pk.rank == brute_rank(m));
            CHECK(pk.rank + pk.kernel.cols() == c);
            CHECK((m * pk.kernel).is_zero());
            CHECK(rank(pk.image) == pk.rank);
        }
    }
}

TEST_CASE("solve") {
    FpMatrix a = FpMatrix::from_rows(2, {{1, 1}, {0, 0}});
    FpMatrix b = FpMatrix::from_rows(2, {{1}, {0}});
    auto x = solve(a, b);
    REQUIRE(x);
    CHECK(a * *x == b);
    CHECK(kernel(a).cols() == 1);
    CHECK_FALSE(solve(FpMatrix(3, 2, 2), FpMatrix::from_rows(3, {{1}, {0}})));
    Rng rng(11);
    for (int t = 0; t < 30; ++t) {
        FpMatrix m = FpMatrix::random(7, 4, 4, rng);
        FpMatrix rhs = FpMatrix::random(7, 4, 2, rng);
        if (auto s = solve(m, rhs)) CHECK(m * *s == rhs);
        if (auto inv = inverse(m)) {
            CHECK((m * *inv).is_identity());
            CHECK(*solve(m, rhs) == *inv * rhs);
        } else {
            CHECK(rank(m) < 4);
        }
    }
}

TEST_CASE("kron and dsum") {
    CHECK(kron(FpMatrix::identity(2, 2), FpMatrix::identity(2, 3)).is_identity());
    FpMatrix a = FpMatrix::from_rows(3, {{1, 2}, {0, 1}});
    CHECK(dsum(a, FpMatrix(3, 0, 0)) == a);
    FpMatrix sw = FpMatrix::from_rows(2, {{0, 1}, {1, 0}});
    // swapping both tensor factors reverses the basis e00,e01,e10,e11
    FpMatrix rev = FpMatrix::from_rows(2, {{0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}});
    CHECK(kron(sw, sw) == rev);
    Rng rng(3);
    for (int t = 0; t < 10; ++t) {
        FpMatrix x = FpMatrix::random(3, 4, 4, rng), y = FpMatrix::random(3, 4, 4, rng);
        FpMatrix u = FpMatrix::random(3, 4, 4, rng), v = FpMatrix::random(3, 4, 4, rng);
        CHECK(kron(x, y) * kron(u, v) == kron(x * u, y * v));
        CHECK(rank(kron(x, y)) == rank(x) * rank(y));
    }
    CHECK_THROWS_AS(kron(FpMatrix(2, 1, 1), FpMatrix(3, 1, 1)), Error);
}

TEST_CASE("subspaces and subquotients") {
    Rng rng(5);
    for (int t = 0; t < 10; ++t) {
        FpMatrix u = image(FpMatrix::random(3, 6, 4, rng));
        FpMatrix w = image(u * FpMatrix::random(3, u.cols(), 2, rng));
        auto sq = subquotient(u, w);
        CHECK(sq.complement.cols() == u.cols() - w.cols());
        CHECK(rank(hstack({w, sq.complement}, 3, 6)) == u.cols());
        CHECK((sq.quotient_coords * sq.complement).is_identity());
        if (w.cols()) CHECK((sq.quotient_coords * w).is_zero());
        CoordinateMap cm(u);
        FpMatrix c = FpMatrix::random(3, u.cols(), 3, rng);
        CHECK(cm.coords(u * c) == c);
        FpMatrix i = intersect_spaces(u, w);
        CHECK(i.cols() == w.cols());
        CHECK(space_contains(u, sum_spaces(u, w)));
    }
}
