#include "ppcx/module.hpp"

#include <algorithm>

#include "ppcx/algebra.hpp"

namespace ppcx {

namespace {

std::string clip(std::string s) {
    if (s.size() > 160) s = s.substr(0, 157) + "...";
    return s;
}

}  // namespace

Module Module::make_unchecked(const Subgroup& h, unsigned p, int dim, std::vector<FpMatrix> mats, std::string label,
                              bool pperm) {
    check_prime(p);
    require(mats.size() == h.generators().size(), ErrorKind::InvalidRepresentation,
            "need one matrix per generator of the group");
    for (const auto& m : mats) {
        require(m.rows() == dim && m.cols() == dim, ErrorKind::InvalidRepresentation, "action matrix has wrong shape");
        require(m.p() == p || dim == 0, ErrorKind::FieldMismatch, "action matrix over the wrong field");
    }
    Module r;
    r.d_ = std::make_shared<Data>();
    r.d_->group = h;
    r.d_->p = p;
    r.d_->dim = dim;
    r.d_->gens = std::move(mats);
    for (auto& g : r.d_->gens)
        if (dim == 0) g = FpMatrix(p, 0, 0);
    r.d_->label = clip(std::move(label));
    r.d_->permutation = std::all_of(r.d_->gens.begin(), r.d_->gens.end(), [](const FpMatrix& m) { return m.is_permutation(); });
    r.d_->pperm = pperm || r.d_->permutation;
    return r;
}

const std::vector<FpMatrix>& Module::all_actions() const {
    std::call_once(d_->acts_once, [this] {
        const Subgroup& h = d_->group;
        std::vector<FpMatrix> acts(h.order());
        for (int pos : h.bfs_order()) {
            int par = h.tree_parent(pos);
            if (par < 0)
                acts[pos] = FpMatrix::identity(d_->p, d_->dim);
            else
                acts[pos] = acts[par] * d_->gens[h.tree_gen(pos)];
        }
        d_->acts = std::move(acts);
    });
    return d_->acts;
}

FpMatrix Module::action(int elem) const {
    int pos = group().position(elem);
    require(pos >= 0, ErrorKind::NotSubgroup, "element outside the module's group");
    return all_actions()[pos];
}

Module Module::with_label(std::string label) const {
    Module r = make_unchecked(group(), p(), dim(), gen_actions(), std::move(label), pperm_known());
    r.d_->trivial_on = d_->trivial_on;
    return r;
}

Module Module::with_trivial_on(const Subgroup& q) const {
    Module r = make_unchecked(group(), p(), dim(), gen_actions(), label(), pperm_known());
    r.d_->trivial_on = q;
    return r;
}

Module Module::with_pperm(bool v) const {
    Module r = make_unchecked(group(), p(), dim(), gen_actions(), label(), v);
    r.d_->trivial_on = d_->trivial_on;
    return r;
}

Module Module::zero(const Subgroup& h, unsigned p) {
    return make_unchecked(h, p, 0, std::vector<FpMatrix>(h.generators().size(), FpMatrix(p, 0, 0)), "0", true);
}

Module Module::trivial(const Subgroup& h, unsigned p) {
    return make_unchecked(h, p, 1, std::vector<FpMatrix>(h.generators().size(), FpMatrix::identity(p, 1)), "k", true);
}

Module Module::regular(const Subgroup& h, unsigned p) {
    const auto& g = h.ambient();
    const int n = h.order();
    std::vector<FpMatrix> mats;
    for (int s : h.generators()) {
        FpMatrix m(p, n, n);
        for (int x = 0; x < n; ++x) m.set(h.position(g->mul(s, h.elements()[x])), x, 1);
        mats.push_back(std::move(m));
    }
    return make_unchecked(h, p, n, std::move(mats), "kG", true);
}

Module Module::perm_on_cosets(const Subgroup& h, const Subgroup& k, unsigned p) {
    require(k.is_subgroup_of(h), ErrorKind::NotSubgroup, "perm_on_cosets: K is not a subgroup of H");
    const auto& g = h.ambient();
    std::vector<int> reps = k.left_transversal(h);
    std::vector<int> coset(g->order(), -1);
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (int x : k.elements()) coset[g->mul(reps[i], x)] = static_cast<int>(i);
    const int n = static_cast<int>(reps.size());
    std::vector<FpMatrix> mats;
    for (int s : h.generators()) {
        FpMatrix m(p, n, n);
        for (int i = 0; i < n; ++i) m.set(coset[g->mul(s, reps[i])], i, 1);
        mats.push_back(std::move(m));
    }
    return make_unchecked(h, p, n, std::move(mats), "k[G/" + std::to_string(k.order()) + "]", true);
}

Module Module::one_dim(const Subgroup& h, unsigned p, const std::vector<long long>& values) {
    require(values.size() == h.generators().size(), ErrorKind::InvalidCharacter,
            "one_dim: need one value per generator");
    std::vector<FpMatrix> mats;
    for (long long v : values) {
        FpMatrix m(p, 1, 1);
        m.set(0, 0, v);
        require(m.at(0, 0) != 0, ErrorKind::InvalidCharacter, "character value must be nonzero");
        mats.push_back(m);
    }
    Module r = make_unchecked(h, p, 1, std::move(mats), "chi");
    // Multiplicativity along every edge of the Cayley graph.
    const auto& acts = r.all_actions();
    const auto& g = h.ambient();
    for (int pos = 0; pos < h.order(); ++pos)
        for (std::size_t s = 0; s < h.generators().size(); ++s) {
            int q = h.position(g->mul(h.elements()[pos], h.generators()[s]));
            if (acts[q] != acts[pos] * r.gen_actions()[s])
                raise(ErrorKind::InvalidCharacter, "values do not define a homomorphism to GF(p)^x");
        }
    return r;
}

Module Module::from_matrices(const Subgroup& h, unsigned p, std::vector<FpMatrix> mats, std::string label) {
    require(!mats.empty() || h.generators().empty(), ErrorKind::InvalidRepresentation, "no matrices given");
    const int dim = mats.empty() ? 0 : mats[0].rows();
    for (const auto& m : mats) {
        require(m.p() == p, ErrorKind::FieldMismatch, "matrix over the wrong field");
        require(invertible(m), ErrorKind::InvalidRepresentation, "action matrix is not invertible");
    }
    Module r = make_unchecked(h, p, dim, std::move(mats), std::move(label));
    const auto& acts = r.all_actions();
    const auto& g = h.ambient();
    for (int pos = 0; pos < h.order(); ++pos)
        for (std::size_t s = 0; s < h.generators().size(); ++s) {
            int q = h.position(g->mul(h.elements()[pos], h.generators()[s]));
            if (acts[q] != acts[pos] * r.gen_actions()[s])
                raise(ErrorKind::InvalidRepresentation, "matrices do not satisfy the group relations");
        }
    return r;
}

void check_compatible(const Module& m, const Module& n) {
    if (m.p() != n.p()) raise(ErrorKind::FieldMismatch, "modules over different fields");
    if (m.group() != n.group()) raise(ErrorKind::GroupMismatch, "modules over different groups");
}

bool is_module_hom(const Module& m, const Module& n, const FpMatrix& f) {
    check_compatible(m, n);
    if (f.rows() != n.dim() || f.cols() != m.dim()) return false;
    for (std::size_t s = 0; s < m.gen_actions().size(); ++s)
        if (f * m.gen_actions()[s] != n.gen_actions()[s] * f) return false;
    return true;
}

Module dual(const Module& m) {
    std::vector<FpMatrix> mats;
    for (int s : m.group().generators()) mats.push_back(m.action(m.group().ambient()->inv(s)).transpose());
    return Module::make_unchecked(m.group(), m.p(), m.dim(), std::move(mats), "dual(" + m.label() + ")", m.pperm_known());
}

Module tensor(const Module& m, const Module& n) {
    check_compatible(m, n);
    std::vector<FpMatrix> mats;
    for (std::size_t s = 0; s < m.gen_actions().size(); ++s) mats.push_back(kron(m.gen_actions()[s], n.gen_actions()[s]));
    return Module::make_unchecked(m.group(), m.p(), m.dim() * n.dim(), std::move(mats),
                                  "(" + m.label() + " x " + n.label() + ")", m.pperm_known() && n.pperm_known());
}

Module hom_module(const Module& m, const Module& n) {
    return tensor(dual(m), n).with_label("Hom(" + m.label() + "," + n.label() + ")");
}

Module direct_sum(const std::vector<Module>& ms) {
    require(!ms.empty(), ErrorKind::Internal, "direct sum of nothing");
    for (const auto& m : ms) check_compatible(ms[0], m);
    std::vector<FpMatrix> mats;
    int dim = 0;
    bool pp = true;
    std::string label;
    for (const auto& m : ms) {
        dim += m.dim();
        pp = pp && m.pperm_known();
        if (m.dim() == 0) continue;
        label += (label.empty() ? "" : " + ") + m.label();
    }
    for (std::size_t s = 0; s < ms[0].gen_actions().size(); ++s) {
        std::vector<FpMatrix> blocks;
        for (const auto& m : ms) blocks.push_back(m.gen_actions()[s]);
        mats.push_back(dsum(blocks, ms[0].p()));
    }
    return Module::make_unchecked(ms[0].group(), ms[0].p(), dim, std::move(mats), label.empty() ? "0" : label, pp);
}

Module direct_sum(const Module& a, const Module& b) { return direct_sum(std::vector<Module>{a, b}); }

Module restrict_to(const Module& m, const Subgroup& k) {
    require(k.is_subgroup_of(m.group()), ErrorKind::NotSubgroup, "restriction to a non-subgroup");
    std::vector<FpMatrix> mats;
    for (int s : k.generators()) mats.push_back(m.action(s));
    return Module::make_unchecked(k, m.p(), m.dim(), std::move(mats), "Res(" + m.label() + ")", m.pperm_known());
}

Module induce_to(const Module& m, const Subgroup& k) {
    const Subgroup& h = m.group();
    require(h.is_subgroup_of(k), ErrorKind::NotSubgroup, "induction to a group not containing the module's group");
    const auto& g = h.ambient();
    std::vector<int> reps = h.left_transversal(k);
    std::vector<int> coset(g->order(), -1);
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (int x : h.elements()) coset[g->mul(reps[i], x)] = static_cast<int>(i);
    const int t = static_cast<int>(reps.size()), d = m.dim();
    std::vector<FpMatrix> mats;
    for (int s : k.generators()) {
        FpMatrix a(m.p(), t * d, t * d);
        for (int i = 0; i < t; ++i) {
            int st = g->mul(s, reps[i]);
            int j = coset[st];
            int hh = g->mul(g->inv(reps[j]), st);
            if (d) a.set_block(j * d, i * d, m.action(hh));
        }
        mats.push_back(std::move(a));
    }
    return Module::make_unchecked(k, m.p(), t * d, std::move(mats), "Ind(" + m.label() + ")", m.pperm_known());
}

Module inflate(const QuotientMap& q, const Module& m) {
    require(m.group() == Subgroup::whole(q.quotient), ErrorKind::GroupMismatch,
            "inflation needs a module over the whole quotient group");
    std::vector<FpMatrix> mats;
    for (int s : q.source.generators()) mats.push_back(m.action(q.image[s]));
    return Module::make_unchecked(q.source, m.p(), m.dim(), std::move(mats), "Inf(" + m.label() + ")", m.pperm_known());
}

Module conjugate(const Module& m, int g) {
    Subgroup ch = m.group().conjugate(g);
    const auto& amb = m.group().ambient();
    std::vector<FpMatrix> mats;
    // generators of ch are g s g^-1 in the order of m's generators (after dedup)
    for (int t : ch.generators()) mats.push_back(m.action(amb->mul(amb->mul(amb->inv(g), t), g)));
    return Module::make_unchecked(ch, m.p(), m.dim(), std::move(mats), "conj(" + m.label() + ")", m.pperm_known());
}

Module rebase(const Module& m, const Subgroup& target) {
    const auto& src = m.group().ambient();
    std::vector<FpMatrix> mats;
    for (int t : target.generators()) {
        int e = src->index_of(target.ambient()->perm(t));
        require(e >= 0 && m.group().contains(e), ErrorKind::GroupMismatch, "rebase: generator not found");
        mats.push_back(m.action(e));
    }
    return Module::make_unchecked(target, m.p(), m.dim(), std::move(mats), m.label(), m.pperm_known());
}

Module submodule(const Module& m, const FpMatrix& basis, std::string label) {
    CoordinateMap cm(basis);
    std::vector<FpMatrix> mats;
    for (const auto& a : m.gen_actions()) mats.push_back(cm.coords(a * basis));
    return Module::make_unchecked(m.group(), m.p(), basis.cols(), std::move(mats), std::move(label));
}

Module subquotient_module(const Module& m, const FpMatrix& u, const FpMatrix& w, FpMatrix* coords, FpMatrix* lift,
                          std::string label) {
    Subquotient sq = subquotient(u, w);
    std::vector<FpMatrix> mats;
    for (const auto& a : m.gen_actions()) mats.push_back(sq.quotient_coords * (a * sq.complement));
    if (coords) *coords = sq.quotient_coords;
    if (lift) *lift = sq.complement;
    return Module::make_unchecked(m.group(), m.p(), sq.complement.cols(), std::move(mats), std::move(label));
}

Module quotient_module(const Module& m, const FpMatrix& sub_basis, FpMatrix* qmap) {
    return subquotient_module(m, FpMatrix::identity(m.p(), m.dim()), sub_basis, qmap, nullptr, "quot");
}

FpMatrix fixed_points(const Module& m, const Subgroup& k) {
    require(k.is_subgroup_of(m.group()), ErrorKind::NotSubgroup, "fixed points under a non-subgroup");
    const int n = m.dim();
    if (k.generators().empty() || n == 0) return FpMatrix::identity(m.p(), n);
    std::vector<FpMatrix> rows;
    for (int s : k.generators()) rows.push_back(m.action(s) - FpMatrix::identity(m.p(), n));
    return kernel(vstack(rows, m.p(), n));
}

FpMatrix relative_trace(const Module& m, const Subgroup& q, const Subgroup& p) {
    FpMatrix t(m.p(), m.dim(), m.dim());
    for (int x : q.left_transversal(p)) t += m.action(x);
    return t;
}

BrauerData brauer_data(const Module& m, const Subgroup& p) {
    require(p.is_subgroup_of(m.group()), ErrorKind::NotSubgroup, "Brauer construction at a non-subgroup");
    if (!p.is_p_group(m.p())) raise(ErrorKind::NotPGroup, "Brauer construction needs a p-subgroup");
    const unsigned pr = m.p();
    const int n = m.dim();
    BrauerData bd;
    bd.fixed = fixed_points(m, p);
    std::vector<FpMatrix> trace_cols{FpMatrix(pr, n, 0)};
    if (!p.is_trivial()) {
        auto tab = p_subgroup_table(p.ambient(), pr);
        for (const auto& e : tab->all) {
            if (e.sub.order() * static_cast<int>(pr) != p.order() || !e.sub.is_subgroup_of(p)) continue;
            FpMatrix fq = fixed_points(m, e.sub);
            trace_cols.push_back(relative_trace(m, e.sub, p) * fq);
        }
    }
    bd.traces = image(hstack(trace_cols, pr, n));
    Subgroup nrm = p.normalizer(m.group());
    Subquotient sq = subquotient(bd.fixed, bd.traces);
    bd.complement = sq.complement;
    bd.coords = sq.quotient_coords;
    std::vector<FpMatrix> mats;
    for (int s : nrm.generators()) mats.push_back(sq.quotient_coords * (m.action(s) * sq.complement));
    const int q = sq.complement.cols();
    Module r = Module::make_unchecked(nrm, pr, q, std::move(mats), "Br(" + m.label() + ")", m.pperm_known());
    for (int u : p.generators())
        require((sq.quotient_coords * (m.action(u) * sq.complement)).is_identity(), ErrorKind::Internal,
                "P does not act trivially on its Brauer quotient");
    bd.module = r.with_trivial_on(p);
    return bd;
}

Module brauer(const Module& m, const Subgroup& p) { return brauer_data(m, p).module; }

// ---------------------------------------------------------------- Hom spaces

namespace {

// Hom(M, N) for a permutation module M: one block per orbit, N^{Stab(x)} at the orbit rep x.
std::vector<FpMatrix> hom_from_permutation(const Module& m, const Module& n) {
    const Subgroup& h = m.group();
    const auto& g = h.ambient();
    const unsigned p = m.p();
    const int dm = m.dim(), dn = n.dim();
    const int ng = static_cast<int>(h.generators().size());
    std::vector<std::vector<int>> gp(ng, std::vector<int>(dm));
    for (int s = 0; s < ng; ++s)
        for (int c = 0; c < dm; ++c)
            for (int r = 0; r < dm; ++r)
                if (m.gen_actions()[s].at(r, c)) gp[s][c] = r;
    // point permutation of every element, along the subgroup's spanning tree
    std::vector<std::vector<int>> ep(h.order());
    for (int pos : h.bfs_order()) {
        int par = h.tree_parent(pos);
        if (par < 0) {
            ep[pos].resize(dm);
            for (int i = 0; i < dm; ++i) ep[pos][i] = i;
        } else {
            const auto& s = gp[h.tree_gen(pos)];
            ep[pos].resize(dm);
            for (int i = 0; i < dm; ++i) ep[pos][i] = ep[par][s[i]];
        }
    }
    std::vector<FpMatrix> out;
    std::vector<char> seen(dm, 0);
    for (int x = 0; x < dm; ++x) {
        if (seen[x]) continue;
        std::vector<int> stab;
        for (int pos = 0; pos < h.order(); ++pos)
            if (ep[pos][x] == x) stab.push_back(h.elements()[pos]);
        Subgroup st = Subgroup::from_elements(g, stab);
        FpMatrix fix = fixed_points(restrict_to(n, st), st);
        // orbit BFS carrying the images of the fixed vectors
        std::vector<FpMatrix> img(dm);
        std::vector<int> orbit{x};
        seen[x] = 1;
        img[x] = fix;
        for (std::size_t k = 0; k < orbit.size(); ++k) {
            int z = orbit[k];
            for (int s = 0; s < ng; ++s) {
                int y = gp[s][z];
                if (seen[y]) continue;
                seen[y] = 1;
                img[y] = n.gen_actions()[s] * img[z];
                orbit.push_back(y);
            }
        }
        for (int c = 0; c < fix.cols(); ++c) {
            FpMatrix f(p, dn, dm);
            for (int y : orbit)
                for (int r = 0; r < dn; ++r) f.set(r, y, img[y].at(r, c));
            out.push_back(std::move(f));
        }
    }
    return out;
}

}  // namespace

std::vector<FpMatrix> hom_space(const Module& m, const Module& n) {
    check_compatible(m, n);
    if (m.dim() == 0 || n.dim() == 0) return {};
    if (m.is_permutation()) return hom_from_permutation(m, n);
    if (n.is_permutation()) {
        // Hom(M, N) = Hom(N*, M*)^T and N* = N for permutation modules.
        auto t = hom_from_permutation(n, dual(m));
        for (auto& f : t) f = f.transpose();
        return t;
    }
    return intertwiners(m.gen_actions(), n.gen_actions(), m.p(), m.dim(), n.dim());
}

std::vector<unsigned> character1d(const Module& m) {
    if (m.dim() != 1) raise(ErrorKind::NotOneDimensional, "character of a module of dimension " + std::to_string(m.dim()));
    std::vector<unsigned> v;
    for (const auto& a : m.gen_actions()) v.push_back(a.at(0, 0));
    return v;
}

std::vector<unsigned> character_values(const Module& m) {
    if (m.dim() != 1) raise(ErrorKind::NotOneDimensional, "character of a module of dimension " + std::to_string(m.dim()));
    std::vector<unsigned> v;
    for (const auto& a : m.all_actions()) v.push_back(a.at(0, 0));
    return v;
}

}  // namespace ppcx
