#include "ppcx/constructions.hpp"

#include <map>
#include <mutex>

#include "ppcx/algebra.hpp"
#include "ppcx/catalog.hpp"

namespace ppcx {

namespace {

std::mutex cache_mutex;
std::map<std::pair<Subgroup, unsigned>, std::shared_ptr<const CoverHullCache>> cache;

std::shared_ptr<CoverHullCache> build_cache(const Subgroup& h, unsigned p) {
    auto out = std::make_shared<CoverHullCache>();
    out->group = h;
    out->p = p;
    Module reg = Module::regular(h, p);
    const int n = reg.dim();
    for (const auto& r : radical_basis(matrix_span_basis(reg.all_actions(), p, n, n), p, n)) {
        std::vector<Scalar> x(n);
        for (int g = 0; g < n; ++g) x[g] = r.at(g, 0);
        out->radical.push_back(std::move(x));
    }
    auto dec = decompose(reg);
    for (std::size_t c = 0; c < dec.class_first.size(); ++c) {
        out->pims.push_back(dec.summands[dec.class_first[c]].module.with_label("PIM" + std::to_string(c)));
        out->multiplicity.push_back(dec.multiplicity[c]);
    }
    return out;
}

FpMatrix radical_with(const CoverHullCache& c, const Module& m) {
    const unsigned p = m.p();
    const auto& acts = m.all_actions();
    std::vector<FpMatrix> cols;
    for (const auto& x : c.radical) {
        FpMatrix a(p, m.dim(), m.dim());
        for (std::size_t g = 0; g < x.size(); ++g)
            if (x[g]) a.add_scaled(acts[g], x[g]);
        cols.push_back(a);
    }
    if (cols.empty()) return FpMatrix(p, m.dim(), 0);
    return image(hstack(cols, p, m.dim()));
}

}  // namespace

std::shared_ptr<const CoverHullCache> cover_hull_cache(const Subgroup& h, unsigned p) {
    auto key = std::make_pair(h, p);
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto built = build_cache(h, p);
    int total = 0;
    for (std::size_t i = 0; i < built->pims.size(); ++i) {
        Module s = quotient_module(built->pims[i], radical_with(*built, built->pims[i]));
        int e = static_cast<int>(hom_space(s, s).size());
        built->simples.push_back(s.with_label("S" + std::to_string(i)));
        built->end_dims.push_back(e);
        if (e != 1) built->split = false;
        require(built->multiplicity[i] * e == s.dim(), ErrorKind::Internal,
                "PIM multiplicity does not match the dimension of its top");
        total += built->multiplicity[i] * built->pims[i].dim();
    }
    require(total == h.order(), ErrorKind::Internal, "PIM dimensions do not add up to |H|");
    std::lock_guard<std::mutex> lock(cache_mutex);
    return cache.emplace(key, built).first->second;
}

FpMatrix radical_of(const Module& m) {
    if (m.dim() == 0) return FpMatrix(m.p(), 0, 0);
    return radical_with(*cover_hull_cache(m.group(), m.p()), m);
}

ModuleHom cover_of_quotient(const Module& z, const FpMatrix& u) {
    const unsigned p = z.p();
    const int n = z.dim();
    FpMatrix qmap, tmap;
    Module q = quotient_module(z, u, &qmap);
    if (q.dim() == 0) return {Module::zero(z.group(), p), z, FpMatrix(p, n, 0)};
    Module t = quotient_module(q, radical_of(q), &tmap);
    FpMatrix to_top = tmap * qmap;
    const int tdim = t.dim();
    auto cache_ptr = cover_hull_cache(z.group(), p);
    std::vector<Module> parts;
    std::vector<FpMatrix> maps;
    FpMatrix reached(p, tdim, 0);
    int r = 0;
    for (const auto& pim : cache_ptr->pims) {
        if (r == tdim) break;
        for (const auto& h : hom_space(pim, z)) {
            FpMatrix img = to_top * h;
            FpMatrix cand = hstack({reached, img}, p, tdim);
            int rc = rank(cand);
            if (rc == r) continue;
            reached = image(cand);
            r = rc;
            parts.push_back(pim);
            maps.push_back(h);
            if (r == tdim) break;
        }
    }
    require(r == tdim, ErrorKind::Internal, "projective cover does not reach the top");
    Module src = direct_sum(parts).with_label("P(" + z.label() + ")");
    return {src, z, hstack(maps, p, n)};
}

ModuleHom projective_cover(const Module& m) { return cover_of_quotient(m, FpMatrix(m.p(), m.dim(), 0)); }

ModuleHom injective_hull(const Module& m) {
    ModuleHom c = projective_cover(dual(m));
    return {m, dual(c.source).with_label("I(" + m.label() + ")"), c.matrix.transpose()};
}

namespace {

// Kills H_i for lo <= i < d by adding covers of the homology to degree i + 1.
ChainComplex kill_below(ChainComplex c, int d) {
    if (c.is_zero()) return c;
    const unsigned p = c.p();
    const Subgroup g = c.group();
    for (int i = c.lo(); i < d; ++i) {
        FpMatrix z = c.dim(i - 1) ? kernel(c.d(i)) : FpMatrix::identity(p, c.dim(i));
        if (z.cols() == 0) continue;
        FpMatrix b = c.dim(i + 1) ? image(c.d(i + 1)) : FpMatrix(p, c.dim(i), 0);
        CoordinateMap cm(z);
        ModuleHom cov = cover_of_quotient(submodule(c.term(i), z), cm.coords(b));
        const int extra = cov.source.dim();
        if (extra == 0) continue;
        FpMatrix f = z * cov.matrix;
        const int lo = c.lo(), hi = std::max(c.hi(), i + 1);
        std::vector<Module> terms;
        std::vector<FpMatrix> diffs;
        for (int j = lo; j <= hi; ++j) terms.push_back(j == i + 1 ? direct_sum(c.term(j), cov.source) : c.term(j));
        for (int j = lo + 1; j <= hi; ++j) {
            FpMatrix dj = c.d(j);
            if (j == i + 1) dj = hstack({dj, f}, p, c.dim(i));
            if (j == i + 2) dj = vstack({dj, FpMatrix(p, extra, c.dim(j))}, p, c.dim(j));
            diffs.push_back(dj);
        }
        c = ChainComplex::make(g, p, lo, std::move(terms), std::move(diffs), c.label());
    }
    return c;
}

}  // namespace

ChainComplex concentrate_homology(const ChainComplex& c, int d) {
    if (c.is_zero()) return c;
    ChainComplex lower = kill_below(c, d);
    ChainComplex upper = dual(kill_below(dual(lower), -d));
    return upper.with_label("conc(" + c.label() + ", " + std::to_string(d) + ")");
}

ChainComplex augmentation(const Subgroup& h, const Subgroup& q, unsigned p) {
    Module x = Module::perm_on_cosets(h, q, p);
    FpMatrix e(p, 1, x.dim());
    for (int j = 0; j < x.dim(); ++j) e.set(0, j, 1);
    std::string label = q.is_trivial() ? "kG->k" : "k[G/" + q.describe() + "]->k";
    return ChainComplex::make(h, p, 0, {Module::trivial(h, p), x}, {e}, label);
}

ChainComplex augmentation(const Subgroup& h, unsigned p) { return augmentation(h, Subgroup::trivial(h.ambient()), p); }

ChainComplex norm_complex(const Subgroup& h, unsigned p) {
    Module r = Module::regular(h, p);
    FpMatrix n(p, r.dim(), r.dim());
    for (int i = 0; i < r.dim(); ++i)
        for (int j = 0; j < r.dim(); ++j) n.set(i, j, 1);
    return ChainComplex::make(h, p, 0, {r, r}, {n}, "kG-N->kG");
}

ChainComplex periodic_truncation(const Subgroup& h, unsigned p, int n) {
    require(n >= 0, ErrorKind::InvalidInput, "truncation length must be nonnegative");
    ChainComplex k0 = ChainComplex::singleton(Module::trivial(h, p), 0);
    return concentrate_homology(k0, n).with_label("trunc(" + std::to_string(n) + ")");
}

ChainComplex sd16_CE() {
    SD16Data sd = sd16();
    Subgroup g = Subgroup::whole(sd.group);
    const unsigned p = 2;
    ChainComplex a = augmentation(g, sd.H, p);
    const Module& x = a.term(1);
    FpMatrix omega = kernel(a.d(1));
    Module kg = Module::regular(g, p);
    const auto& acts = x.all_actions();
    // kG -> Omega_X(k), 1 -> z, for the first z = x_0 - x_j generating Omega_X(k).
    for (int j = 1; j < x.dim(); ++j) {
        std::vector<Scalar> z(x.dim(), 0);
        z[0] = 1;
        z[j] = p - 1;
        FpMatrix zc = FpMatrix::column(p, z);
        std::vector<FpMatrix> cols;
        for (int e = 0; e < g.order(); ++e) cols.push_back(acts[e] * zc);
        FpMatrix f = hstack(cols, p, x.dim());
        if (rank(f) != omega.cols()) continue;
        return ChainComplex::make(g, p, 0, {Module::trivial(g, p), x, kg}, {a.d(1), f}, "C_E");
    }
    raise(ErrorKind::Internal, "no generator of Omega_X(k) found");
}

std::vector<std::string> named_example_list() {
    return {"augmentation", "omega_complex", "norm", "periodic_truncation", "sd16_CE"};
}

ChainComplex named_example(const std::string& name, const std::string& group, unsigned p, int length) {
    if (name == "sd16_CE") return sd16_CE();
    bool known = false;
    for (const auto& n : named_example_list()) known = known || n == name;
    if (!known) raise(ErrorKind::UnknownExample, "unknown example '" + name + "'");
    Subgroup g = Subgroup::whole(named_group(group));
    if (name == "augmentation" || name == "omega_complex") return augmentation(g, p);
    if (name == "norm") return norm_complex(g, p);
    return periodic_truncation(g, p, length);
}

}  // namespace ppcx
