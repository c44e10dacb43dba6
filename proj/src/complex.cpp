#include "ppcx/complex.hpp"

#include <algorithm>

#include "ppcx/algebra.hpp"

namespace ppcx {

// ---------------------------------------------------------------- construction

ChainComplex ChainComplex::make(const Subgroup& h, unsigned p, int lo, std::vector<Module> terms,
                                std::vector<FpMatrix> diffs, std::string label, bool validate) {
    require(terms.empty() ? diffs.empty() : diffs.size() + 1 == terms.size(), ErrorKind::InvalidInput,
            "complex needs one differential between each pair of adjacent terms");
    ChainComplex c;
    c.group_ = h;
    c.p_ = p;
    c.zero_ = Module::zero(h, p);
    c.label_ = std::move(label);
    for (const auto& t : terms) {
        require(t.group() == h, ErrorKind::GroupMismatch, "complex term over a different group");
        require(t.p() == p, ErrorKind::FieldMismatch, "complex term over a different field");
    }
    // Trim zero terms at both ends.
    std::size_t first = 0, last = terms.size();
    while (first < last && terms[first].dim() == 0) ++first;
    while (last > first && terms[last - 1].dim() == 0) --last;
    if (first == last) {
        c.lo_ = 0;
        return c;
    }
    c.lo_ = lo + static_cast<int>(first);
    for (std::size_t j = first; j < last; ++j) c.terms_.push_back(terms[j]);
    for (std::size_t j = first; j + 1 < last; ++j) c.diffs_.push_back(diffs[j]);
    for (std::size_t j = 0; j < c.diffs_.size(); ++j) {
        const FpMatrix& d = c.diffs_[j];
        const Module& src = c.terms_[j + 1];
        const Module& dst = c.terms_[j];
        require(d.rows() == dst.dim() && d.cols() == src.dim(), ErrorKind::NotChainMap, "differential has wrong shape");
        if (d.rows() == 0 || d.cols() == 0) c.diffs_[j] = FpMatrix(p, d.rows(), d.cols());
        if (validate && !is_module_hom(src, dst, c.diffs_[j]))
            raise(ErrorKind::NotChainMap, "differential is not G-equivariant in degree " + std::to_string(c.lo_ + 1 + int(j)));
    }
    if (validate)
        for (std::size_t j = 0; j + 1 < c.diffs_.size(); ++j)
            if (!(c.diffs_[j] * c.diffs_[j + 1]).is_zero())
                raise(ErrorKind::NotChainMap, "d o d != 0 at degree " + std::to_string(c.lo_ + 2 + int(j)));
    return c;
}

ChainComplex ChainComplex::zero(const Subgroup& h, unsigned p) { return make(h, p, 0, {}, {}, "0"); }

ChainComplex ChainComplex::singleton(const Module& m, int degree) {
    return make(m.group(), m.p(), degree, {m}, {}, m.label() + "[" + std::to_string(degree) + "]");
}

bool ChainComplex::is_zero() const { return terms_.empty(); }

const Module& ChainComplex::term(int i) const {
    if (terms_.empty() || i < lo_ || i > hi()) return zero_;
    return terms_[i - lo_];
}

int ChainComplex::dim(int i) const { return term(i).dim(); }

FpMatrix ChainComplex::d(int i) const {
    if (i > lo_ && i <= hi()) return diffs_[i - lo_ - 1];
    return FpMatrix(p_, dim(i - 1), dim(i));
}

int ChainComplex::total_dim() const {
    int n = 0;
    for (const auto& t : terms_) n += t.dim();
    return n;
}

int ChainComplex::offset(int i) const {
    int n = 0;
    for (int j = lo_; j < i && j <= hi(); ++j) n += dim(j);
    return n;
}

ChainComplex ChainComplex::with_label(std::string label) const {
    ChainComplex c = *this;
    c.label_ = std::move(label);
    return c;
}

int ChainComplex::euler() const {
    int e = 0;
    for (int i = lo_; i <= hi(); ++i) e += (i % 2 == 0 ? 1 : -1) * dim(i);
    return e;
}

bool ChainComplex::pperm_known() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const Module& m) { return m.pperm_known(); });
}

namespace {

int min_lo(const ChainComplex& a, const ChainComplex& b) {
    if (a.is_zero()) return b.lo();
    if (b.is_zero()) return a.lo();
    return std::min(a.lo(), b.lo());
}

int max_hi(const ChainComplex& a, const ChainComplex& b) {
    if (a.is_zero()) return b.hi();
    if (b.is_zero()) return a.hi();
    return std::max(a.hi(), b.hi());
}

// Builds a complex from term and differential callbacks over [lo, hi].
template <class TermFn, class DiffFn>
ChainComplex assemble(const Subgroup& h, unsigned p, int lo, int hi, TermFn term, DiffFn diff, std::string label,
                      bool validate = true) {
    if (hi < lo) return ChainComplex::make(h, p, 0, {}, {}, std::move(label), validate);
    std::vector<Module> terms;
    std::vector<FpMatrix> diffs;
    for (int i = lo; i <= hi; ++i) terms.push_back(term(i));
    for (int i = lo + 1; i <= hi; ++i) diffs.push_back(diff(i));
    return ChainComplex::make(h, p, lo, std::move(terms), std::move(diffs), std::move(label), validate);
}

}  // namespace

// ---------------------------------------------------------------- chain maps

FpMatrix ChainMap::at(int i) const {
    auto it = comps.find(i);
    if (it != comps.end()) return it->second;
    return FpMatrix(source.p(), target.dim(i), source.dim(i));
}

FpMatrix ChainMap::total() const {
    FpMatrix t(source.p(), target.total_dim(), source.total_dim());
    if (source.is_zero() || target.is_zero()) return t;
    for (int i = source.lo(); i <= source.hi(); ++i)
        if (source.dim(i) && target.dim(i)) t.set_block(target.offset(i), source.offset(i), at(i));
    return t;
}

bool is_chain_map(const ChainMap& f) {
    const auto& x = f.source;
    const auto& y = f.target;
    int lo = min_lo(x, y), hi = max_hi(x, y);
    for (int i = lo; i <= hi; ++i) {
        if (x.dim(i) && y.dim(i) && !is_module_hom(x.term(i), y.term(i), f.at(i))) return false;
        if (y.d(i) * f.at(i) != f.at(i - 1) * x.d(i)) return false;
    }
    return true;
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
    ChainMap r{f.source, g.target, {}};
    for (int i = f.source.lo(); i <= f.source.hi(); ++i) r.comps[i] = g.at(i) * f.at(i);
    return r;
}

ChainMap identity_map(const ChainComplex& c) {
    ChainMap r{c, c, {}};
    for (int i = c.lo(); i <= c.hi(); ++i) r.comps[i] = FpMatrix::identity(c.p(), c.dim(i));
    return r;
}

ChainMap chain_map_from_total(const ChainComplex& x, const ChainComplex& y, const FpMatrix& total) {
    ChainMap r{x, y, {}};
    if (x.is_zero() || y.is_zero()) return r;
    for (int i = x.lo(); i <= x.hi(); ++i)
        if (x.dim(i) && y.dim(i)) r.comps[i] = total.block(y.offset(i), x.offset(i), y.dim(i), x.dim(i));
    return r;
}

// ---------------------------------------------------------------- homology

HomologyData homology_data(const ChainComplex& c, int i) {
    HomologyData h;
    const Module& t = c.term(i);
    const int n = t.dim();
    h.cycles = c.dim(i - 1) ? kernel(c.d(i)) : FpMatrix::identity(c.p(), n);
    h.boundaries = c.dim(i + 1) ? image(c.d(i + 1)) : FpMatrix(c.p(), n, 0);
    h.module = subquotient_module(t, h.cycles, h.boundaries, &h.coords, &h.lift, "H" + std::to_string(i));
    return h;
}

std::map<int, Module> homology(const ChainComplex& c) {
    std::map<int, Module> out;
    for (int i = c.lo(); i <= c.hi() && !c.is_zero(); ++i) {
        auto h = homology_data(c, i);
        if (h.module.dim()) out.emplace(i, h.module);
    }
    return out;
}

std::map<int, int> homology_dims(const ChainComplex& c) {
    std::map<int, int> out;
    if (c.is_zero()) return out;
    for (int i = c.lo(); i <= c.hi(); ++i) {
        int z = c.dim(i) - (c.dim(i - 1) ? rank(c.d(i)) : 0);
        int b = c.dim(i + 1) ? rank(c.d(i + 1)) : 0;
        if (z - b) out[i] = z - b;
    }
    return out;
}

// ---------------------------------------------------------------- functors

ChainComplex dual(const ChainComplex& c) {
    if (c.is_zero()) return c;
    return assemble(
        c.group(), c.p(), -c.hi(), -c.lo(), [&](int j) { return dual(c.term(-j)); },
        [&](int j) { return c.d(-j + 1).transpose(); }, "dual(" + c.label() + ")", false);
}

ChainComplex shift(const ChainComplex& c, int n) {
    if (c.is_zero()) return c;
    return assemble(
        c.group(), c.p(), c.lo() + n, c.hi() + n, [&](int j) { return c.term(j - n); }, [&](int j) { return c.d(j - n); },
        c.label() + "[" + std::to_string(n) + "]", false);
}

ChainComplex tensor(const ChainComplex& a, const ChainComplex& b) {
    require(a.p() == b.p(), ErrorKind::FieldMismatch, "complexes over different fields");
    require(a.group() == b.group(), ErrorKind::GroupMismatch, "complexes over different groups");
    if (a.is_zero() || b.is_zero()) return ChainComplex::zero(a.group(), a.p());
    const unsigned p = a.p();
    const int lo = a.lo() + b.lo(), hi = a.hi() + b.hi();
    // Block (i, n - i) of degree n, i ascending.
    auto range = [&](int n) { return std::make_pair(std::max(a.lo(), n - b.hi()), std::min(a.hi(), n - b.lo())); };
    auto block_offset = [&](int n, int i) {
        int off = 0;
        for (int k = range(n).first; k < i; ++k) off += a.dim(k) * b.dim(n - k);
        return off;
    };
    auto term = [&](int n) {
        std::vector<Module> parts;
        auto [s, e] = range(n);
        for (int i = s; i <= e; ++i) parts.push_back(tensor(a.term(i), b.term(n - i)));
        return parts.empty() ? Module::zero(a.group(), p) : direct_sum(parts);
    };
    std::vector<int> dims(hi - lo + 1, 0);
    for (int n = lo; n <= hi; ++n) {
        auto [s, e] = range(n);
        for (int i = s; i <= e; ++i) dims[n - lo] += a.dim(i) * b.dim(n - i);
    }
    auto diff = [&](int n) {
        FpMatrix d(p, dims[n - 1 - lo], dims[n - lo]);
        auto [s, e] = range(n);
        for (int i = s; i <= e; ++i) {
            int j = n - i;
            int src = block_offset(n, i);
            if (a.dim(i) * b.dim(j) == 0) continue;
            if (i - 1 >= a.lo() && a.dim(i - 1))
                d.set_block(block_offset(n - 1, i - 1), src, kron(a.d(i), FpMatrix::identity(p, b.dim(j))));
            if (j - 1 >= b.lo() && b.dim(j - 1)) {
                FpMatrix t = kron(FpMatrix::identity(p, a.dim(i)), b.d(j));
                if (i & 1) t = t.scaled(p - 1);
                d.set_block(block_offset(n - 1, i), src, t);
            }
        }
        return d;
    };
    return assemble(a.group(), p, lo, hi, term, diff, "(" + a.label() + " x " + b.label() + ")", false);
}

ChainComplex cone(const ChainMap& f) {
    const auto& x = f.source;
    const auto& y = f.target;
    const unsigned p = x.p();
    int lo = x.is_zero() ? y.lo() : (y.is_zero() ? x.lo() + 1 : std::min(x.lo() + 1, y.lo()));
    int hi = x.is_zero() ? y.hi() : (y.is_zero() ? x.hi() + 1 : std::max(x.hi() + 1, y.hi()));
    if (x.is_zero() && y.is_zero()) return ChainComplex::zero(x.group(), p);
    auto term = [&](int i) { return direct_sum(x.term(i - 1), y.term(i)); };
    auto diff = [&](int i) {
        FpMatrix d(p, x.dim(i - 2) + y.dim(i - 1), x.dim(i - 1) + y.dim(i));
        d.set_block(0, 0, x.d(i - 1).scaled(p - 1));
        d.set_block(x.dim(i - 2), 0, f.at(i - 1));
        d.set_block(x.dim(i - 2), x.dim(i - 1), y.d(i));
        return d;
    };
    return assemble(x.group(), p, lo, hi, term, diff, "cone", false);
}

ChainComplex direct_sum(const std::vector<ChainComplex>& cs) {
    require(!cs.empty(), ErrorKind::Internal, "direct sum of no complexes");
    ChainComplex acc = cs[0];
    for (std::size_t j = 1; j < cs.size(); ++j) {
        const auto& b = cs[j];
        require(acc.group() == b.group() && acc.p() == b.p(), ErrorKind::GroupMismatch, "complexes do not match");
        if (b.is_zero()) continue;
        if (acc.is_zero()) {
            acc = b;
            continue;
        }
        const ChainComplex a = acc;
        acc = assemble(
            a.group(), a.p(), min_lo(a, b), max_hi(a, b), [&](int i) { return direct_sum(a.term(i), b.term(i)); },
            [&](int i) { return dsum(a.d(i), b.d(i)); }, a.label() + " + " + b.label(), false);
    }
    return acc;
}

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b) { return direct_sum(std::vector<ChainComplex>{a, b}); }

namespace {

template <class ModFn, class DiffFn>
ChainComplex map_terms(const ChainComplex& c, const Subgroup& h, ModFn mf, DiffFn df, const std::string& label) {
    if (c.is_zero()) return ChainComplex::zero(h, c.p());
    return assemble(
        h, c.p(), c.lo(), c.hi(), [&](int i) { return mf(c.term(i)); }, [&](int i) { return df(c.d(i)); }, label, false);
}

}  // namespace

ChainComplex restrict_to(const ChainComplex& c, const Subgroup& k) {
    return map_terms(
        c, k, [&](const Module& m) { return restrict_to(m, k); }, [](const FpMatrix& d) { return d; },
        "Res(" + c.label() + ")");
}

ChainComplex induce_to(const ChainComplex& c, const Subgroup& k) {
    const int t = k.order() / c.group().order();
    return map_terms(
        c, k, [&](const Module& m) { return induce_to(m, k); },
        [&](const FpMatrix& d) { return kron(FpMatrix::identity(c.p(), t), d); }, "Ind(" + c.label() + ")");
}

ChainComplex inflate(const QuotientMap& q, const ChainComplex& c) {
    return map_terms(
        c, q.source, [&](const Module& m) { return inflate(q, m); }, [](const FpMatrix& d) { return d; },
        "Inf(" + c.label() + ")");
}

ChainComplex conjugate(const ChainComplex& c, int g) {
    return map_terms(
        c, c.group().conjugate(g), [&](const Module& m) { return conjugate(m, g); }, [](const FpMatrix& d) { return d; },
        "conj(" + c.label() + ")");
}

ChainComplex rebase(const ChainComplex& c, const Subgroup& target) {
    return map_terms(
        c, target, [&](const Module& m) { return rebase(m, target); }, [](const FpMatrix& d) { return d; }, c.label());
}

ChainComplex over_whole_group(const ChainComplex& c) {
    const Subgroup& h = c.group();
    if (h.order() == h.ambient()->order()) return c;
    return rebase(c, Subgroup::whole(realize_as_group(h)));
}

ChainComplex brauer_chain(const ChainComplex& c, const Subgroup& p) {
    require(p.is_subgroup_of(c.group()), ErrorKind::NotSubgroup, "Brauer construction at a non-subgroup");
    if (!p.is_p_group(c.p())) raise(ErrorKind::NotPGroup, "Brauer construction needs a p-subgroup");
    Subgroup nrm = p.normalizer(c.group());
    if (c.is_zero()) return ChainComplex::zero(nrm, c.p());
    std::vector<BrauerData> bd;
    for (int i = c.lo(); i <= c.hi(); ++i) bd.push_back(brauer_data(c.term(i), p));
    std::vector<Module> terms;
    std::vector<FpMatrix> diffs;
    for (const auto& b : bd) terms.push_back(b.module);
    for (int i = c.lo() + 1; i <= c.hi(); ++i) {
        const auto& src = bd[i - c.lo()];
        const auto& dst = bd[i - 1 - c.lo()];
        diffs.push_back(dst.coords * (c.d(i) * src.complement));
    }
    return ChainComplex::make(nrm, c.p(), c.lo(), std::move(terms), std::move(diffs), "Br(" + c.label() + ")");
}

// ---------------------------------------------------------------- Hom of complexes

std::vector<ChainMap> chain_hom(const ChainComplex& x, const ChainComplex& y) {
    require(x.group() == y.group() && x.p() == y.p(), ErrorKind::GroupMismatch, "complexes do not match");
    std::vector<ChainMap> out;
    if (x.is_zero() || y.is_zero()) return out;
    const unsigned p = x.p();
    const int lo = x.lo(), hi = x.hi();
    // unknowns: per degree, a basis of Hom_kG(X_i, Y_i)
    std::vector<std::vector<FpMatrix>> basis(hi - lo + 1);
    std::vector<int> col_off(hi - lo + 2, 0);
    for (int i = lo; i <= hi; ++i) {
        if (x.dim(i) && y.dim(i)) basis[i - lo] = hom_space(x.term(i), y.term(i));
        col_off[i - lo + 1] = col_off[i - lo] + static_cast<int>(basis[i - lo].size());
    }
    const int unknowns = col_off.back();
    if (unknowns == 0) return out;
    // constraints: d^Y_i f_i - f_{i-1} d^X_i = 0 in Hom_kG(X_i, Y_{i-1}), in coordinates
    std::vector<FpMatrix> blocks;
    for (int i = lo; i <= hi + 1; ++i) {
        if (x.dim(i) == 0 || y.dim(i - 1) == 0) continue;
        bool has_fi = i <= hi && !basis[i - lo].empty() && y.dim(i - 1);
        bool has_fim1 = i - 1 >= lo && !basis[i - 1 - lo].empty();
        if (!has_fi && !has_fim1) continue;
        auto target = hom_space(x.term(i), y.term(i - 1));
        if (target.empty()) continue;
        std::vector<FpMatrix> cols;
        for (const auto& t : target) cols.push_back(FpMatrix::column(p, t.flat()));
        CoordinateMap cm(hstack(cols, p, x.dim(i) * y.dim(i - 1)));
        FpMatrix rows(p, cm.dim(), unknowns);
        auto put = [&](int col, const FpMatrix& m) {
            auto v = cm.coords(m.flat());
            for (int r = 0; r < cm.dim(); ++r) rows.set(r, col, (rows.at(r, col) + v[r]) % p);
        };
        if (i <= hi) {
            FpMatrix dy = y.d(i);
            for (std::size_t k = 0; k < basis[i - lo].size(); ++k) put(col_off[i - lo] + int(k), dy * basis[i - lo][k]);
        }
        if (i - 1 >= lo) {
            FpMatrix dx = x.d(i);
            for (std::size_t k = 0; k < basis[i - 1 - lo].size(); ++k)
                put(col_off[i - 1 - lo] + int(k), (basis[i - 1 - lo][k] * dx).scaled(p - 1));
        }
        blocks.push_back(rows);
    }
    FpMatrix sol = blocks.empty() ? FpMatrix::identity(p, unknowns) : kernel(vstack(blocks, p, unknowns));
    for (int c = 0; c < sol.cols(); ++c) {
        ChainMap f{x, y, {}};
        for (int i = lo; i <= hi; ++i) {
            if (basis[i - lo].empty()) continue;
            FpMatrix m(p, y.dim(i), x.dim(i));
            for (std::size_t k = 0; k < basis[i - lo].size(); ++k)
                m.add_scaled(basis[i - lo][k], sol.at(col_off[i - lo] + int(k), c));
            f.comps[i] = m;
        }
        out.push_back(std::move(f));
    }
    return out;
}

// ---------------------------------------------------------------- splitting

std::optional<FpMatrix> split_projection(const Module& m, const FpMatrix& basis) {
    const unsigned p = m.p();
    const int n = m.dim(), k = basis.cols();
    if (k == 0) return FpMatrix(p, 0, n);
    if (k == n) return inverse(basis);
    Module sub = submodule(m, basis);
    auto homs = hom_space(m, sub);
    if (homs.empty()) return std::nullopt;
    std::vector<FpMatrix> cols;
    for (const auto& h : homs) cols.push_back(FpMatrix::column(p, (h * basis).flat()));
    auto a = solve(hstack(cols, p, k * k), FpMatrix::column(p, FpMatrix::identity(p, k).flat()));
    if (!a) return std::nullopt;
    FpMatrix pi(p, k, n);
    for (std::size_t j = 0; j < homs.size(); ++j) pi.add_scaled(homs[j], a->at(static_cast<int>(j), 0));
    return pi;
}

bool is_split_complex(const ChainComplex& c) {
    if (c.is_zero()) return true;
    for (int i = c.lo(); i <= c.hi(); ++i) {
        const Module& t = c.term(i);
        FpMatrix z = c.dim(i - 1) ? kernel(c.d(i)) : FpMatrix::identity(c.p(), t.dim());
        if (!split_projection(t, z)) return false;
        if (c.dim(i + 1) == 0 || z.cols() == 0) continue;
        FpMatrix b = image(c.d(i + 1));
        if (b.cols() == 0) continue;
        CoordinateMap cm(z);
        if (!split_projection(submodule(t, z), cm.coords(b))) return false;
    }
    return true;
}

bool is_contractible(const ChainComplex& c) { return homology_dims(c).empty() && is_split_complex(c); }

ChainComplex strip_contractibles(const ChainComplex& c, std::uint64_t seed) {
    if (c.is_zero()) return c;
    const unsigned p = c.p();
    const int lo = c.lo(), hi = c.hi();
    const int len = hi - lo + 1;
    std::vector<std::vector<Module>> blocks(len);
    std::vector<std::vector<int>> bdim(len);
    std::vector<FpMatrix> to_blocks(len), from_blocks(len);
    for (int i = lo; i <= hi; ++i) {
        auto rep = decompose(c.term(i), seed);
        std::vector<FpMatrix> em, pr;
        for (const auto& s : rep.summands) {
            blocks[i - lo].push_back(s.module);
            bdim[i - lo].push_back(s.module.dim());
            em.push_back(s.embed);
            pr.push_back(s.proj);
        }
        from_blocks[i - lo] = hstack(em, p, c.dim(i));
        to_blocks[i - lo] = vstack(pr, p, c.dim(i));
    }
    // D[j] is d_{lo+j} in block coordinates, j = 1..len-1
    std::vector<FpMatrix> dmat(len);
    for (int i = lo + 1; i <= hi; ++i) dmat[i - lo] = to_blocks[i - 1 - lo] * c.d(i) * from_blocks[i - lo];

    auto offsets = [&](int j) {
        std::vector<int> off(bdim[j].size() + 1, 0);
        for (std::size_t k = 0; k < bdim[j].size(); ++k) off[k + 1] = off[k] + bdim[j][k];
        return off;
    };
    auto range_excl = [](int n, int s, int e) {
        std::vector<int> idx;
        for (int r = 0; r < n; ++r)
            if (r < s || r >= e) idx.push_back(r);
        return idx;
    };
    auto range_in = [](int s, int e) {
        std::vector<int> idx;
        for (int r = s; r < e; ++r) idx.push_back(r);
        return idx;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (int j = 1; j < len && !changed; ++j) {
            auto so = offsets(j), to = offsets(j - 1);
            const int ns = so.back(), nt = to.back();
            for (std::size_t a = 0; a < bdim[j].size() && !changed; ++a)
                for (std::size_t b = 0; b < bdim[j - 1].size() && !changed; ++b) {
                    if (bdim[j][a] != bdim[j - 1][b]) continue;
                    auto ra = range_in(so[a], so[a + 1]), rb = range_in(to[b], to[b + 1]);
                    FpMatrix alpha = dmat[j].select_rows(rb).select_columns(ra);
                    auto ainv = inverse(alpha);
                    if (!ainv) continue;
                    auto ka = range_excl(ns, so[a], so[a + 1]), kb = range_excl(nt, to[b], to[b + 1]);
                    FpMatrix beta = dmat[j].select_rows(rb).select_columns(ka);
                    FpMatrix gamma = dmat[j].select_rows(kb).select_columns(ra);
                    FpMatrix delta = dmat[j].select_rows(kb).select_columns(ka);
                    dmat[j] = delta - gamma * (*ainv) * beta;
                    if (j + 1 < len) dmat[j + 1] = dmat[j + 1].select_rows(ka);
                    if (j - 1 >= 1) dmat[j - 1] = dmat[j - 1].select_columns(kb);
                    blocks[j].erase(blocks[j].begin() + a);
                    bdim[j].erase(bdim[j].begin() + a);
                    blocks[j - 1].erase(blocks[j - 1].begin() + b);
                    bdim[j - 1].erase(bdim[j - 1].begin() + b);
                    changed = true;
                }
        }
    }
    std::vector<Module> terms;
    std::vector<FpMatrix> diffs;
    for (int j = 0; j < len; ++j) terms.push_back(blocks[j].empty() ? Module::zero(c.group(), p) : direct_sum(blocks[j]));
    for (int j = 1; j < len; ++j) {
        int r = 0, cc = 0;
        for (int x : bdim[j - 1]) r += x;
        for (int x : bdim[j]) cc += x;
        diffs.push_back(dmat[j].rows() == r && dmat[j].cols() == cc ? dmat[j] : FpMatrix(p, r, cc));
    }
    ChainComplex out = ChainComplex::make(c.group(), p, lo, std::move(terms), std::move(diffs), "strip(" + c.label() + ")");
    require(homology_dims(out) == homology_dims(c), ErrorKind::Internal, "stripping changed homology");
    return out;
}

// ---------------------------------------------------------------- decomposition

namespace {

std::vector<FpMatrix> end_totals(const ChainComplex& c) {
    std::vector<FpMatrix> out;
    for (const auto& f : chain_hom(c, c)) out.push_back(f.total());
    return out;
}

struct ChainFingerprint {
    std::vector<int> dims;
    std::map<int, int> hdims;
    bool operator==(const ChainFingerprint&) const = default;
};

ChainFingerprint chain_fingerprint(const ChainComplex& c) {
    ChainFingerprint f;
    if (!c.is_zero()) {
        f.dims.push_back(c.lo());
        for (int i = c.lo(); i <= c.hi(); ++i) f.dims.push_back(c.dim(i));
    }
    f.hdims = homology_dims(c);
    return f;
}

}  // namespace

std::vector<ChainSummand> chain_decompose(const ChainComplex& c, std::uint64_t seed) {
    std::vector<ChainSummand> out;
    if (c.is_zero()) return out;
    const unsigned p = c.p();
    const int n = c.total_dim();
    auto alg = end_totals(c);
    Rng rng(seed);
    auto pieces = primitive_pieces(alg, p, n, rng);
    std::vector<ChainFingerprint> fps;
    std::vector<int> firsts;
    for (const auto& pc : pieces) {
        FpMatrix e = pc.embed * pc.proj;
        ChainSummand s;
        std::vector<Module> terms;
        std::vector<FpMatrix> emb, prj;
        for (int i = c.lo(); i <= c.hi(); ++i) {
            FpMatrix ei = e.block(c.offset(i), c.offset(i), c.dim(i), c.dim(i));
            FpMatrix img = image(ei);
            FpMatrix pi = img.cols() ? CoordinateMap(img).left_inverse() * ei : FpMatrix(p, 0, c.dim(i));
            terms.push_back(img.cols() ? submodule(c.term(i), img) : Module::zero(c.group(), p));
            emb.push_back(img);
            prj.push_back(pi);
        }
        std::vector<FpMatrix> diffs;
        for (int i = c.lo() + 1; i <= c.hi(); ++i) diffs.push_back(prj[i - 1 - c.lo()] * c.d(i) * emb[i - c.lo()]);
        s.complex = ChainComplex::make(c.group(), p, c.lo(), terms, diffs, c.label() + "#");
        for (int i = c.lo(); i <= c.hi(); ++i) {
            if (emb[i - c.lo()].cols() == 0) continue;
            s.embed[i] = emb[i - c.lo()];
            s.proj[i] = prj[i - c.lo()];
        }
        auto fp = chain_fingerprint(s.complex);
        int cls = -1;
        for (std::size_t k = 0; k < firsts.size() && cls < 0; ++k)
            if (fps[k] == fp && chain_iso_indecomposable(out[firsts[k]].complex, s.complex)) cls = static_cast<int>(k);
        if (cls < 0) {
            cls = static_cast<int>(firsts.size());
            firsts.push_back(static_cast<int>(out.size()));
            fps.push_back(fp);
        }
        s.iso_class = cls;
        out.push_back(std::move(s));
    }
    return out;
}

bool chain_is_indecomposable(const ChainComplex& c) {
    if (c.is_zero()) return false;
    return algebra_is_local(end_totals(c), c.p(), c.total_dim());
}

std::optional<ChainMap> chain_iso_indecomposable(const ChainComplex& a, const ChainComplex& b) {
    if (!(chain_fingerprint(a) == chain_fingerprint(b))) return std::nullopt;
    if (a.is_zero()) return identity_map(a);
    auto f = chain_hom(a, b);
    if (f.empty()) return std::nullopt;
    auto g = chain_hom(b, a);
    for (const auto& fi : f) {
        FpMatrix ft = fi.total();
        for (const auto& gj : g)
            if (invertible(gj.total() * ft)) return fi;
    }
    return std::nullopt;
}

namespace {

std::optional<ChainMap> chain_iso_sampling(const ChainComplex& a, const ChainComplex& b, const std::vector<ChainMap>& hom,
                                           std::uint64_t seed, int tries) {
    Rng rng(seed);
    for (int t = 0; t < tries; ++t) {
        FpMatrix f(a.p(), b.total_dim(), a.total_dim());
        for (const auto& h : hom) f.add_scaled(h.total(), rng.below(a.p()));
        if (invertible(f)) return chain_map_from_total(a, b, f);
    }
    return std::nullopt;
}

}  // namespace

std::optional<ChainMap> chain_iso_test(const ChainComplex& a, const ChainComplex& b, std::uint64_t seed) {
    require(a.group() == b.group() && a.p() == b.p(), ErrorKind::GroupMismatch, "complexes do not match");
    if (!(chain_fingerprint(a) == chain_fingerprint(b))) return std::nullopt;
    if (a.is_zero()) return identity_map(a);
    bool same = true;
    for (int i = a.lo(); i <= a.hi() && same; ++i)
        same = a.term(i).gen_actions() == b.term(i).gen_actions() && a.d(i) == b.d(i);
    if (same) return ChainMap{a, b, identity_map(a).comps};
    auto hab = chain_hom(a, b);
    if (hab.empty()) return std::nullopt;
    auto hba = chain_hom(b, a);
    if (hab.size() != hba.size()) return std::nullopt;
    if (auto f = chain_iso_sampling(a, b, hab, seed, 8)) return f;
    try {
        auto da = chain_decompose(a, seed);
        auto db = chain_decompose(b, seed);
        if (da.size() != db.size()) return std::nullopt;
        std::vector<char> used(db.size(), 0);
        FpMatrix iso(a.p(), b.total_dim(), a.total_dim());
        for (const auto& x : da) {
            bool found = false;
            for (std::size_t j = 0; j < db.size() && !found; ++j) {
                if (used[j]) continue;
                auto phi = chain_iso_indecomposable(x.complex, db[j].complex);
                if (!phi) continue;
                used[j] = 1;
                found = true;
                for (int i = a.lo(); i <= a.hi(); ++i) {
                    auto pe = x.proj.find(i);
                    auto ee = db[j].embed.find(i);
                    if (pe == x.proj.end() || ee == db[j].embed.end()) continue;
                    FpMatrix blk = ee->second * phi->at(i) * pe->second;
                    FpMatrix cur = iso.block(b.offset(i), a.offset(i), b.dim(i), a.dim(i));
                    iso.set_block(b.offset(i), a.offset(i), cur + blk);
                }
            }
            if (!found) return std::nullopt;
        }
        require(invertible(iso), ErrorKind::Internal, "assembled chain isomorphism is not invertible");
        return chain_map_from_total(a, b, iso);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Indeterminate) throw;
    }
    double space = 1;
    for (std::size_t i = 0; i < hab.size() && space <= 1e6; ++i) space *= a.p();
    if (space <= 1e6) {
        std::vector<FpMatrix> tots;
        for (const auto& h : hab) tots.push_back(h.total());
        for (long long code = 1; code < static_cast<long long>(space); ++code) {
            FpMatrix f(a.p(), b.total_dim(), a.total_dim());
            long long c = code;
            for (const auto& t : tots) {
                f.add_scaled(t, static_cast<unsigned>(c % a.p()));
                c /= a.p();
            }
            if (invertible(f)) return chain_map_from_total(a, b, f);
        }
        return std::nullopt;
    }
    if (auto f = chain_iso_sampling(a, b, hab, seed + 1, 512)) return f;
    raise(ErrorKind::Indeterminate, "chain isomorphism test could not decide");
}

// ---------------------------------------------------------------- relative projectivity

namespace {

std::vector<Scalar> flat_blocks(const ChainMap& f, const ChainComplex& c) {
    std::vector<Scalar> v;
    for (int i = c.lo(); i <= c.hi(); ++i) {
        auto b = f.at(i).flat();
        v.insert(v.end(), b.begin(), b.end());
    }
    return v;
}

}  // namespace

bool chain_is_relatively_projective(const ChainComplex& c, const std::vector<Subgroup>& family) {
    if (c.is_zero()) return true;
    const unsigned p = c.p();
    const Subgroup& h = c.group();
    const auto& g = h.ambient();
    auto endg = chain_hom(c, c);
    int flat_len = 0;
    for (int i = c.lo(); i <= c.hi(); ++i) flat_len += c.dim(i) * c.dim(i);
    std::vector<FpMatrix> cols;
    for (const auto& e : endg) cols.push_back(FpMatrix::column(p, flat_blocks(e, c)));
    CoordinateMap cm(hstack(cols, p, flat_len));
    auto target = cm.coords(flat_blocks(identity_map(c), c));
    Subspace span(p, cm.dim());
    for (const auto& q : family) {
        require(q.is_subgroup_of(h), ErrorKind::NotSubgroup, "family member is not a subgroup");
        if (q.order() == h.order()) return true;
        auto rc = restrict_to(c, q);
        auto reps = q.left_transversal(h);
        for (const auto& f : chain_hom(rc, rc)) {
            ChainMap t{c, c, {}};
            for (int i = c.lo(); i <= c.hi(); ++i) {
                if (c.dim(i) == 0) continue;
                const auto& acts = c.term(i).all_actions();
                FpMatrix s(p, c.dim(i), c.dim(i));
                FpMatrix fi = f.at(i);
                for (int x : reps) s += acts[h.position(x)] * fi * acts[h.position(g->inv(x))];
                t.comps[i] = s;
            }
            if (span.add(cm.coords(flat_blocks(t, c))) && span.contains(target)) return true;
        }
    }
    return span.contains(target);
}

ChainVertex chain_vertex(const ChainComplex& c0) {
    ChainComplex c = over_whole_group(c0);
    if (!chain_is_indecomposable(c)) raise(ErrorKind::NotIndecomposable, "vertex of a decomposable complex");
    auto tab = p_subgroup_table(c.group().ambient(), c.p());
    for (int i = 0; i < tab->size(); ++i)
        if (chain_is_relatively_projective(c, {tab->reps[i]})) return ChainVertex{i, tab->reps[i]};
    raise(ErrorKind::Internal, "complex not projective relative to a Sylow subgroup");
}

}  // namespace ppcx
