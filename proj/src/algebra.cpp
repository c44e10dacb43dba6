#include "ppcx/algebra.hpp"

#include <algorithm>

namespace ppcx {

namespace {

// Echelon tracker that also records how each echelon row is expressed in the
// spun basis vectors, so membership tests return coordinates.
struct SpinTracker {
    unsigned p;
    int n;
    std::vector<std::vector<Scalar>> ech, combo;
    std::vector<int> piv;
    int count = 0;  // spun basis vectors so far

    // Returns true if u is independent (and adds it); otherwise fills coords.
    bool reduce_or_add(std::vector<Scalar> u, std::vector<Scalar>& coords) {
        std::vector<Scalar> coef(ech.size(), 0);
        for (std::size_t k = 0; k < ech.size(); ++k) {
            unsigned c = u[piv[k]];
            if (!c) continue;
            coef[k] = static_cast<Scalar>(c);
            axpy(u.data(), ech[k].data(), p - c, n, p);
        }
        int lead = -1;
        for (int i = 0; i < n; ++i)
            if (u[i]) {
                lead = i;
                break;
            }
        if (lead < 0) {
            coords.assign(n, 0);
            for (std::size_t k = 0; k < ech.size(); ++k)
                if (coef[k]) axpy(coords.data(), combo[k].data(), coef[k], n, p);
            return false;
        }
        unsigned inv = inv_mod(u[lead], p);
        std::vector<Scalar> cb(n, 0);
        cb[count] = 1;
        for (std::size_t k = 0; k < ech.size(); ++k)
            if (coef[k]) axpy(cb.data(), combo[k].data(), p - coef[k], n, p);
        for (auto& x : u) x = static_cast<Scalar>(x * inv % p);
        for (auto& x : cb) x = static_cast<Scalar>(x * inv % p);
        ech.push_back(std::move(u));
        combo.push_back(std::move(cb));
        piv.push_back(lead);
        ++count;
        return true;
    }
};

}  // namespace

std::vector<FpMatrix> intertwiners(const std::vector<FpMatrix>& a, const std::vector<FpMatrix>& b, unsigned p,
                                   int da, int db) {
    require(a.size() == b.size(), ErrorKind::Internal, "intertwiners: operator count mismatch");
    if (da == 0 || db == 0) return {};
    const std::size_t ns = a.size();

    SpinTracker tr{p, da, {}, {}, {}, 0};
    std::vector<std::vector<Scalar>> bvec;
    std::vector<int> bgen;
    std::vector<FpMatrix> T;
    struct Constraint {
        std::size_t s;
        int j;
        std::vector<Scalar> coords;
    };
    std::vector<Constraint> cons;
    int ngen = 0;
    std::vector<Scalar> coords;
    for (int i = 0; i < da; ++i) {
        std::vector<Scalar> e(da, 0);
        e[i] = 1;
        if (!tr.reduce_or_add(e, coords)) continue;
        const int first = static_cast<int>(bvec.size());
        bvec.push_back(e);
        bgen.push_back(ngen++);
        T.push_back(FpMatrix::identity(p, db));
        for (int j = first; j < static_cast<int>(bvec.size()); ++j) {
            for (std::size_t s = 0; s < ns; ++s) {
                std::vector<Scalar> u = a[s].apply(bvec[j]);
                if (tr.reduce_or_add(u, coords)) {
                    bvec.push_back(std::move(u));
                    bgen.push_back(bgen[j]);
                    T.push_back(b[s] * T[j]);
                } else {
                    cons.push_back({s, j, coords});
                }
            }
        }
    }
    const int U = ngen * db;
    Subspace rows(p, U);
    FpMatrix blk(p, db, U);
    for (const auto& c : cons) {
        blk = FpMatrix(p, db, U);
        for (int l = 0; l < da; ++l) {
            unsigned cl = c.coords[l];
            if (!cl) continue;
            const FpMatrix& tl = T[l];
            const int off = bgen[l] * db;
            for (int r = 0; r < db; ++r) axpy(blk.row(r) + off, tl.row(r), cl, db, p);
        }
        FpMatrix rhs = b[c.s] * T[c.j];
        const int off = bgen[c.j] * db;
        for (int r = 0; r < db; ++r) axpy(blk.row(r) + off, rhs.row(r), p - 1, db, p);
        for (int r = 0; r < db; ++r) {
            std::vector<Scalar> v(blk.row(r), blk.row(r) + U);
            rows.add(std::move(v));
        }
        if (rows.dim() == U) return {};
    }
    FpMatrix sysm = rows.basis().transpose();
    FpMatrix ker = rows.dim() == 0 ? FpMatrix::identity(p, U) : kernel(sysm);

    FpMatrix S(p, da, da);
    for (int j = 0; j < da; ++j)
        for (int i = 0; i < da; ++i) S.set(i, j, bvec[j][i]);
    FpMatrix Sinv = *inverse(S);

    std::vector<FpMatrix> out;
    out.reserve(ker.cols());
    for (int k = 0; k < ker.cols(); ++k) {
        FpMatrix spin(p, db, da);
        for (int j = 0; j < da; ++j) {
            const int off = bgen[j] * db;
            for (int r = 0; r < db; ++r) {
                unsigned s = 0;
                const Scalar* tr_row = T[j].row(r);
                for (int c = 0; c < db; ++c) s += static_cast<unsigned>(tr_row[c]) * ker.at(off + c, k);
                spin.set(r, j, s % p);
            }
        }
        out.push_back(spin * Sinv);
    }
    return out;
}

std::vector<FpMatrix> matrix_span_basis(const std::vector<FpMatrix>& ms, unsigned p, int rows, int cols) {
    Subspace s(p, rows * cols);
    std::vector<FpMatrix> out;
    for (const auto& m : ms)
        if (s.add(m.flat())) out.push_back(m);
    return out;
}

std::vector<FpMatrix> restrict_algebra(const std::vector<FpMatrix>& alg, const Piece& piece) {
    const int u = piece.dim();
    const unsigned p = piece.embed.p();
    std::vector<FpMatrix> ms{FpMatrix::identity(p, u)};
    for (const auto& a : alg) ms.push_back(piece.proj * a * piece.embed);
    return matrix_span_basis(ms, p, u, u);
}

namespace {

using IntMat = std::vector<long long>;

IntMat int_mul(const IntMat& x, const IntMat& y, int u, long long mod) {
    IntMat r(static_cast<std::size_t>(u) * u, 0);
    for (int i = 0; i < u; ++i)
        for (int k = 0; k < u; ++k) {
            long long a = x[static_cast<std::size_t>(i) * u + k];
            if (!a) continue;
            for (int j = 0; j < u; ++j) r[static_cast<std::size_t>(i) * u + j] += a * y[static_cast<std::size_t>(k) * u + j];
        }
    for (auto& v : r) v %= mod;
    return r;
}

// (Tr(lift(x)^(p^i)) mod p^(i+1)) / p^i, the i-th twisted trace functional.
unsigned twisted_trace(const FpMatrix& x, unsigned p, int i) {
    const int u = x.rows();
    if (i == 0) return trace(x);
    long long mod = 1, pi = 1;
    for (int k = 0; k <= i; ++k) mod *= p;
    for (int k = 0; k < i; ++k) pi *= p;
    IntMat m(x.data().begin(), x.data().end());
    IntMat r(static_cast<std::size_t>(u) * u, 0);
    for (int d = 0; d < u; ++d) r[static_cast<std::size_t>(d) * u + d] = 1;
    long long e = pi;
    IntMat b = m;
    while (e) {
        if (e & 1) r = int_mul(r, b, u, mod);
        e >>= 1;
        if (e) b = int_mul(b, b, u, mod);
    }
    long long t = 0;
    for (int d = 0; d < u; ++d) t += r[static_cast<std::size_t>(d) * u + d];
    t %= mod;
    require(t % pi == 0, ErrorKind::Internal, "twisted trace not divisible: radical premise violated");
    return static_cast<unsigned>((t / pi) % p);
}

bool ideal_is_nilpotent(const std::vector<FpMatrix>& j, unsigned p, int u) {
    if (j.empty()) return true;
    std::vector<FpMatrix> w = j;
    for (int step = 0; step <= u + 1; ++step) {
        std::vector<FpMatrix> prods;
        for (const auto& x : w)
            for (const auto& y : j) {
                FpMatrix z = x * y;
                if (!z.is_zero()) prods.push_back(std::move(z));
            }
        w = matrix_span_basis(prods, p, u, u);
        if (w.empty()) return true;
    }
    return false;
}

}  // namespace

std::vector<FpMatrix> radical_basis(const std::vector<FpMatrix>& alg, unsigned p, int u) {
    int l = 0;
    for (long long q = p; q <= u; q *= p) ++l;
    std::vector<FpMatrix> cur = alg;
    for (int i = 0; i <= l && !cur.empty(); ++i) {
        const int m = static_cast<int>(cur.size()), t = static_cast<int>(alg.size());
        FpMatrix g(p, t, m);  // g(t, s) = g_i(cur_s * alg_t)
        for (int s = 0; s < m; ++s)
            for (int k = 0; k < t; ++k) {
                if (i == 0) {
                    // Tr(xy) without forming the product.
                    const FpMatrix& x = cur[s];
                    const FpMatrix& y = alg[k];
                    unsigned acc = 0;
                    for (int r = 0; r < u; ++r)
                        for (int c = 0; c < u; ++c) acc += static_cast<unsigned>(x.at(r, c)) * y.at(c, r);
                    g.set(k, s, acc % p);
                } else {
                    g.set(k, s, twisted_trace(cur[s] * alg[k], p, i));
                }
            }
        FpMatrix ker = kernel(g);
        std::vector<FpMatrix> next;
        for (int c = 0; c < ker.cols(); ++c) {
            FpMatrix z(p, u, u);
            for (int s = 0; s < m; ++s)
                if (ker.at(s, c)) z.add_scaled(cur[s], ker.at(s, c));
            next.push_back(std::move(z));
        }
        cur = std::move(next);
    }
    require(ideal_is_nilpotent(cur, p, u), ErrorKind::Internal, "computed radical is not nilpotent");
    return cur;
}

bool algebra_is_local(const std::vector<FpMatrix>& alg, unsigned p, int u) {
    if (alg.size() <= 1) return true;
    std::vector<FpMatrix> j = radical_basis(alg, p, u);
    const int q = static_cast<int>(alg.size() - j.size());
    if (q == 1) return true;
    Subspace sj(p, u * u);
    for (const auto& x : j) sj.add(x.flat());
    std::vector<FpMatrix> comp;
    for (const auto& a : alg) {
        Subspace probe = sj;
        for (const auto& c : comp) probe.add(c.flat());
        if (probe.add(a.flat())) comp.push_back(a);
    }
    // A/J noncommutative => not a field.
    for (std::size_t s = 0; s < comp.size(); ++s)
        for (std::size_t t = s + 1; t < comp.size(); ++t) {
            FpMatrix c = comp[s] * comp[t] - comp[t] * comp[s];
            if (!sj.contains(c.flat())) return false;
        }
    // Commutative semisimple: number of field factors = dim ker(x -> x^p - x).
    std::vector<FpMatrix> basis = j;
    basis.insert(basis.end(), comp.begin(), comp.end());
    FpMatrix cols(p, u * u, static_cast<int>(basis.size()));
    for (int c = 0; c < cols.cols(); ++c) {
        auto f = basis[c].flat();
        for (int r = 0; r < u * u; ++r) cols.set(r, c, f[r]);
    }
    CoordinateMap cm(cols);
    const int js = static_cast<int>(j.size());
    FpMatrix frob(p, q, q);
    for (int s = 0; s < q; ++s) {
        FpMatrix y = power(comp[s], p) - comp[s];
        auto co = cm.coords(y.flat());
        for (int r = 0; r < q; ++r) frob.set(r, s, co[js + r]);
    }
    return q - rank(frob) == 1;
}

namespace {

FpMatrix fitting_power(const FpMatrix& y) {
    FpMatrix z = y;
    for (int k = 1; k < y.rows(); k *= 2) z = z * z;
    return z;
}

bool try_split(const std::vector<FpMatrix>& alg, unsigned p, int u, Rng& rng, FpMatrix& im, FpMatrix& ker) {
    FpMatrix x(p, u, u);
    for (const auto& a : alg) x.add_scaled(a, rng.below(p));
    for (unsigned lam = 0; lam < p; ++lam) {
        FpMatrix y = x - FpMatrix::identity(p, u).scaled(lam);
        FpMatrix z = fitting_power(y);
        RrefPack pk = rref_pack(z);
        if (pk.rank > 0 && pk.rank < u) {
            im = pk.image;
            ker = pk.kernel;
            return true;
        }
    }
    return false;
}

void split_piece(const Piece& piece, const std::vector<FpMatrix>& alg, unsigned p, Rng& rng, std::vector<Piece>& out) {
    const int u = piece.dim();
    if (u == 0) return;
    if (u == 1 || alg.size() <= 1) {
        out.push_back(piece);
        return;
    }
    FpMatrix im, ker;
    bool found = false;
    for (int t = 0; t < 6 && !found; ++t) found = try_split(alg, p, u, rng, im, ker);
    if (!found) {
        if (algebra_is_local(alg, p, u)) {
            out.push_back(piece);
            return;
        }
        for (int t = 0; t < 2000 && !found; ++t) found = try_split(alg, p, u, rng, im, ker);
        if (!found) raise(ErrorKind::Indeterminate, "non-local endomorphism algebra could not be split by sampling");
    }
    FpMatrix both = hstack({im, ker}, p, u);
    FpMatrix inv = *inverse(both);
    Piece loc1{im, inv.block(0, 0, im.cols(), u)};
    Piece loc2{ker, inv.block(im.cols(), 0, ker.cols(), u)};
    Piece c1{piece.embed * loc1.embed, loc1.proj * piece.proj};
    Piece c2{piece.embed * loc2.embed, loc2.proj * piece.proj};
    split_piece(c1, restrict_algebra(alg, loc1), p, rng, out);
    split_piece(c2, restrict_algebra(alg, loc2), p, rng, out);
}

}  // namespace

std::vector<Piece> primitive_pieces(const std::vector<FpMatrix>& alg, unsigned p, int n, Rng& rng) {
    std::vector<Piece> out;
    if (n == 0) return out;
    Piece whole{FpMatrix::identity(p, n), FpMatrix::identity(p, n)};
    split_piece(whole, restrict_algebra(alg, whole), p, rng, out);
    return out;
}

}  // namespace ppcx
