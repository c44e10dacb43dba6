#include "ppcx/group.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace ppcx {

Perm perm_from_cycles(int degree, const std::vector<std::vector<int>>& cycles) {
    require(degree > 0, ErrorKind::InvalidInput, "degree must be positive");
    Perm p(degree);
    for (int i = 0; i < degree; ++i) p[i] = i;
    std::vector<char> seen(degree, 0);
    for (const auto& c : cycles) {
        for (int x : c) {
            require(x >= 0 && x < degree, ErrorKind::InvalidInput, "cycle point out of range: " + std::to_string(x));
            require(!seen[x], ErrorKind::InvalidInput, "point repeated in cycles: " + std::to_string(x));
            seen[x] = 1;
        }
        for (std::size_t i = 0; i < c.size(); ++i) p[c[i]] = c[(i + 1) % c.size()];
    }
    return p;
}

std::vector<std::vector<int>> perm_to_cycles(const Perm& p) {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(p.size(), 0);
    for (int i = 0; i < static_cast<int>(p.size()); ++i) {
        if (seen[i] || p[i] == i) continue;
        std::vector<int> c;
        for (int x = i; !seen[x]; x = p[x]) {
            seen[x] = 1;
            c.push_back(x);
        }
        out.push_back(c);
    }
    return out;
}

static Perm compose(const Perm& a, const Perm& b) {
    Perm r(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) r[x] = a[b[x]];
    return r;
}

static void check_perm(const Perm& p, int degree) {
    require(static_cast<int>(p.size()) == degree, ErrorKind::InvalidInput, "generator has wrong degree");
    std::vector<char> seen(degree, 0);
    for (int x : p) {
        require(x >= 0 && x < degree && !seen[x], ErrorKind::InvalidInput, "generator is not a bijection");
        seen[x] = 1;
    }
}

GroupPtr PermGroup::make(std::string name, int degree, const std::vector<Perm>& generators, int cap) {
    require(degree > 0, ErrorKind::InvalidInput, "degree must be positive");
    std::shared_ptr<PermGroup> g(new PermGroup());
    g->name_ = std::move(name);
    g->degree_ = degree;
    g->cap_ = cap;
    for (const auto& p : generators) check_perm(p, degree);
    g->gen_perms_ = generators;

    Perm id(degree);
    for (int i = 0; i < degree; ++i) id[i] = i;
    std::set<Perm> seen{id};
    std::deque<Perm> queue{id};
    while (!queue.empty()) {
        Perm cur = queue.front();
        queue.pop_front();
        for (const auto& s : generators) {
            Perm nxt = compose(cur, s);
            if (seen.insert(nxt).second) {
                if (static_cast<int>(seen.size()) > cap)
                    raise(ErrorKind::CapExceeded, "group order exceeds cap " + std::to_string(cap));
                queue.push_back(std::move(nxt));
            }
        }
    }
    g->elems_.assign(seen.begin(), seen.end());
    const int n = g->order();
    g->table_.resize(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g->table_[static_cast<std::size_t>(a) * n + b] = g->index_of(compose(g->elems_[a], g->elems_[b]));
    g->inv_.resize(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (g->mul(a, b) == 0) g->inv_[a] = b;
    g->ord_.resize(n);
    for (int a = 0; a < n; ++a) {
        int k = 1, x = a;
        while (x != 0) x = g->mul(x, a), ++k;
        g->ord_[a] = k;
    }
    for (const auto& s : generators) {
        int e = g->index_of(s);
        if (e != 0) g->gens_.push_back(e);
    }
    g->self_ = g;
    return g;
}

int PermGroup::index_of(const Perm& p) const {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), p);
    if (it == elems_.end() || *it != p) return -1;
    return static_cast<int>(it - elems_.begin());
}

int PermGroup::pow(int a, long long k) const {
    k %= ord_[a];
    if (k < 0) k += ord_[a];
    int r = 0;
    for (long long i = 0; i < k; ++i) r = mul(r, a);
    return r;
}

// ---------------------------------------------------------------- Subgroup

Subgroup Subgroup::generated(const GroupPtr& g, const std::vector<int>& gens_in) {
    auto d = std::make_shared<Data>();
    d->ambient = g;
    const int n = g->order();
    for (int e : gens_in) {
        require(e >= 0 && e < n, ErrorKind::NotSubgroup, "generator is not an element of the group");
        if (e != 0 && std::find(d->gens.begin(), d->gens.end(), e) == d->gens.end()) d->gens.push_back(e);
    }
    std::vector<int> order_found{0};
    std::vector<int> parent_e{-1}, via_e{-1};
    std::vector<int> idx(n, -1);
    idx[0] = 0;
    for (std::size_t head = 0; head < order_found.size(); ++head) {
        int cur = order_found[head];
        for (std::size_t s = 0; s < d->gens.size(); ++s) {
            int nxt = g->mul(cur, d->gens[s]);
            if (idx[nxt] >= 0) continue;
            idx[nxt] = static_cast<int>(order_found.size());
            order_found.push_back(nxt);
            parent_e.push_back(cur);
            via_e.push_back(static_cast<int>(s));
        }
    }
    d->elems = order_found;
    std::sort(d->elems.begin(), d->elems.end());
    d->pos.assign(n, -1);
    for (std::size_t i = 0; i < d->elems.size(); ++i) d->pos[d->elems[i]] = static_cast<int>(i);
    const std::size_t m = d->elems.size();
    d->parent.assign(m, -1);
    d->via.assign(m, -1);
    for (std::size_t k = 0; k < order_found.size(); ++k) {
        int ps = d->pos[order_found[k]];
        d->bfs.push_back(ps);
        if (k > 0) {
            d->parent[ps] = d->pos[parent_e[k]];
            d->via[ps] = via_e[k];
        }
    }
    Subgroup s;
    s.d_ = d;
    return s;
}

Subgroup Subgroup::from_elements(const GroupPtr& g, std::vector<int> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    std::vector<int> gens;
    std::vector<char> in(g->order(), 0);
    in[0] = 1;
    std::vector<int> cur{0};
    for (int e : elems) {
        if (in[e]) continue;
        gens.push_back(e);
        Subgroup c = generated(g, gens);
        std::fill(in.begin(), in.end(), 0);
        for (int x : c.elements()) in[x] = 1;
    }
    Subgroup s = generated(g, gens);
    require(s.elements() == elems, ErrorKind::NotSubgroup, "element set is not a subgroup");
    return s;
}

Subgroup Subgroup::whole(const GroupPtr& g) { return generated(g, g->generators()); }
Subgroup Subgroup::trivial(const GroupPtr& g) { return generated(g, {}); }

Subgroup closure(const GroupPtr& g, const std::vector<int>& gens) { return Subgroup::generated(g, gens); }

std::vector<int> Subgroup::word(int e) const {
    int ps = position(e);
    require(ps >= 0, ErrorKind::NotSubgroup, "element not in subgroup");
    std::vector<int> w;
    while (d_->parent[ps] >= 0) {
        w.push_back(d_->via[ps]);
        ps = d_->parent[ps];
    }
    std::reverse(w.begin(), w.end());
    return w;
}

bool Subgroup::is_subgroup_of(const Subgroup& o) const {
    if (ambient() != o.ambient()) return false;
    for (int e : generators())
        if (!o.contains(e)) return false;
    return true;
}

bool Subgroup::operator==(const Subgroup& o) const {
    return ambient() == o.ambient() && elements() == o.elements();
}

bool Subgroup::operator<(const Subgroup& o) const {
    if (order() != o.order()) return order() < o.order();
    if (elements() != o.elements()) return elements() < o.elements();
    return std::less<const PermGroup*>()(ambient().get(), o.ambient().get());
}

Subgroup Subgroup::conjugate(int g) const {
    std::vector<int> gens;
    for (int x : generators()) gens.push_back(ambient()->conj(g, x));
    return generated(ambient(), gens);
}

Subgroup Subgroup::intersect(const Subgroup& o) const {
    require(ambient() == o.ambient(), ErrorKind::GroupMismatch, "intersection across groups");
    std::vector<int> e;
    for (int x : elements())
        if (o.contains(x)) e.push_back(x);
    return from_elements(ambient(), e);
}

Subgroup Subgroup::normalizer(const Subgroup& within) const {
    const auto& g = ambient();
    std::vector<int> e;
    for (int k : within.elements()) {
        bool ok = true;
        for (int x : generators())
            if (!contains(g->conj(k, x))) {
                ok = false;
                break;
            }
        if (ok) e.push_back(k);
    }
    return from_elements(g, e);
}

bool Subgroup::is_normal_in(const Subgroup& o) const {
    if (!is_subgroup_of(o)) return false;
    for (int k : o.generators())
        for (int x : generators())
            if (!contains(ambient()->conj(k, x))) return false;
    return true;
}

unsigned p_part(long long n, unsigned p) {
    unsigned r = 1;
    while (n % p == 0) n /= p, r *= p;
    return r;
}

bool Subgroup::is_p_group(unsigned p) const { return static_cast<long long>(p_part(order(), p)) == order(); }

std::vector<int> Subgroup::left_transversal(const Subgroup& over) const {
    require(is_subgroup_of(over), ErrorKind::NotSubgroup, "transversal of a non-subgroup");
    const auto& g = ambient();
    std::vector<char> covered(g->order(), 0);
    std::vector<int> reps;
    for (int k : over.elements()) {
        if (covered[k]) continue;
        reps.push_back(k);
        for (int h : elements()) covered[g->mul(k, h)] = 1;
    }
    return reps;
}

std::string Subgroup::describe() const {
    std::ostringstream os;
    os << "order " << order() << " <";
    bool first = true;
    for (int e : generators()) {
        if (!first) os << ", ";
        first = false;
        auto cyc = perm_to_cycles(ambient()->perm(e));
        for (const auto& c : cyc) {
            os << '(';
            for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i];
            os << ')';
        }
    }
    os << '>';
    return os.str();
}

// -------------------------------------------------------- p-subgroup table

std::shared_ptr<const PSubgroupTable> build_p_table(const GroupPtr& g, unsigned p) {
    auto t = std::make_shared<PSubgroupTable>();
    t->group = g;
    t->p = p;
    const Subgroup whole = Subgroup::whole(g);

    // Bottom-up: every p-subgroup Q > P' arises as <P', x> with x in N(P') \ P', x^p in P'.
    std::map<std::vector<int>, Subgroup> found;
    std::deque<Subgroup> queue;
    Subgroup one = Subgroup::trivial(g);
    found.emplace(one.elements(), one);
    queue.push_back(one);
    while (!queue.empty()) {
        Subgroup cur = queue.front();
        queue.pop_front();
        Subgroup n = cur.normalizer(whole);
        for (int x : n.elements()) {
            if (cur.contains(x)) continue;
            if (!cur.contains(g->pow(x, p))) continue;
            std::vector<int> gens = cur.generators();
            gens.push_back(x);
            Subgroup q = Subgroup::generated(g, gens);
            if (found.count(q.elements())) continue;
            found.emplace(q.elements(), q);
            queue.push_back(q);
        }
    }
    std::vector<Subgroup> subs;
    for (auto& kv : found) subs.push_back(kv.second);
    std::sort(subs.begin(), subs.end());
    std::map<std::vector<int>, int> where;
    for (std::size_t i = 0; i < subs.size(); ++i) where[subs[i].elements()] = static_cast<int>(i);

    t->all.resize(subs.size());
    std::vector<char> assigned(subs.size(), 0);
    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (assigned[i]) continue;
        int ri = static_cast<int>(t->reps.size());
        t->reps.push_back(subs[i]);
        for (int x = 0; x < g->order(); ++x) {
            Subgroup c = subs[i].conjugate(x);  // x R x^-1
            int j = where.at(c.elements());
            if (assigned[j]) continue;
            assigned[j] = 1;
            t->all[j] = {subs[j], ri, g->inv(x)};
        }
    }
    const unsigned sp = p_part(g->order(), p);
    for (int i = 0; i < t->size(); ++i) {
        t->normalizers.push_back(t->reps[i].normalizer(whole));
        if (static_cast<unsigned>(t->reps[i].order()) == sp) t->sylow.push_back(i);
    }
    require(t->sylow.size() == 1, ErrorKind::Internal, "Sylow subgroups must form one class");
    const int r = t->size();
    t->leq.assign(r, std::vector<char>(r, 0));
    for (const auto& e : t->all)
        for (int i = 0; i < r; ++i)
            if (t->reps[i].is_subgroup_of(e.sub)) t->leq[i][e.rep] = 1;
    return t;
}

std::shared_ptr<const PSubgroupTable> PermGroup::p_table(unsigned p) const {
    std::lock_guard<std::mutex> lk(cache_mu_);
    auto it = p_tables_.find(p);
    if (it != p_tables_.end()) return it->second;
    auto t = build_p_table(self_.lock(), p);
    p_tables_[p] = t;
    return t;
}

std::shared_ptr<const PSubgroupTable> p_subgroup_table(const GroupPtr& g, unsigned p) { return g->p_table(p); }

std::pair<int, int> PSubgroupTable::locate(const Subgroup& s) const {
    require(s.ambient() == group, ErrorKind::GroupMismatch, "subgroup of a different group");
    // all is sorted canonically
    auto it = std::lower_bound(all.begin(), all.end(), s, [](const Entry& e, const Subgroup& x) { return e.sub < x; });
    require(it != all.end() && it->sub == s, ErrorKind::NotPGroup, "not a p-subgroup: " + s.describe());
    return {it->rep, it->witness};
}

int PSubgroupTable::rep_index(const Subgroup& s) const { return locate(s).first; }
int PSubgroupTable::witness(const Subgroup& s) const { return locate(s).second; }

std::string PSubgroupTable::rep_label(int i) const { return "P" + std::to_string(i) + "[" + std::to_string(reps[i].order()) + "]"; }

// ------------------------------------------------------------ misc group ops

std::vector<int> double_cosets(const GroupPtr& g, const Subgroup& a, const Subgroup& b) {
    require(a.ambient() == g && b.ambient() == g, ErrorKind::GroupMismatch, "double cosets across groups");
    std::vector<char> covered(g->order(), 0);
    std::vector<int> reps;
    for (int x = 0; x < g->order(); ++x) {
        if (covered[x]) continue;
        reps.push_back(x);
        for (int u : a.elements())
            for (int v : b.elements()) covered[g->mul(g->mul(u, x), v)] = 1;
    }
    return reps;
}

std::optional<int> conjugate_test(const GroupPtr& g, const Subgroup& p, const Subgroup& q) {
    if (p.order() != q.order()) return std::nullopt;
    for (int x = 0; x < g->order(); ++x) {
        bool ok = true;
        for (int e : p.generators())
            if (!q.contains(g->conj(x, e))) {
                ok = false;
                break;
            }
        if (ok) return x;
    }
    return std::nullopt;
}

std::vector<Subgroup> all_subgroups(const GroupPtr& g) {
    std::map<std::vector<int>, Subgroup> found;
    std::vector<Subgroup> cyclic;
    for (int x = 0; x < g->order(); ++x) {
        Subgroup c = Subgroup::generated(g, {x});
        if (found.emplace(c.elements(), c).second) cyclic.push_back(c);
    }
    std::vector<Subgroup> frontier;
    for (auto& kv : found) frontier.push_back(kv.second);
    while (!frontier.empty()) {
        std::vector<Subgroup> next;
        for (const auto& h : frontier)
            for (const auto& c : cyclic) {
                if (c.is_subgroup_of(h)) continue;
                std::vector<int> gens = h.generators();
                gens.insert(gens.end(), c.generators().begin(), c.generators().end());
                Subgroup j = Subgroup::generated(g, gens);
                if (found.emplace(j.elements(), j).second) next.push_back(j);
            }
        frontier = std::move(next);
    }
    std::vector<Subgroup> out;
    for (auto& kv : found) out.push_back(Subgroup::from_elements(g, kv.first));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Subgroup> subgroup_class_reps(const GroupPtr& g) {
    auto subs = all_subgroups(g);
    std::map<std::vector<int>, int> where;
    for (std::size_t i = 0; i < subs.size(); ++i) where[subs[i].elements()] = static_cast<int>(i);
    std::vector<char> assigned(subs.size(), 0);
    std::vector<Subgroup> reps;
    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (assigned[i]) continue;
        reps.push_back(subs[i]);
        for (int x = 0; x < g->order(); ++x) assigned[where.at(subs[i].conjugate(x).elements())] = 1;
    }
    return reps;
}

QuotientMap quotient(const Subgroup& h, const Subgroup& n) {
    require(n.is_normal_in(h), ErrorKind::NotSubgroup, "quotient by a non-normal subgroup");
    const auto& g = h.ambient();
    QuotientMap q;
    q.source = h;
    q.kernel = n;
    std::vector<int> reps = n.left_transversal(h);
    std::vector<int> coset(g->order(), -1);
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (int x : n.elements()) coset[g->mul(reps[i], x)] = static_cast<int>(i);
    const int deg = static_cast<int>(reps.size());
    auto act = [&](int e) {
        Perm p(deg);
        for (int i = 0; i < deg; ++i) p[i] = coset[g->mul(e, reps[i])];
        return p;
    };
    std::vector<Perm> gens;
    for (int e : h.generators()) gens.push_back(act(e));
    q.quotient = PermGroup::make(g->name() + "/N", deg, gens, g->cap());
    q.image.assign(g->order(), -1);
    for (int e : h.elements()) q.image[e] = q.quotient->index_of(act(e));
    return q;
}

int QuotientMap::lift(int qe) const {
    for (int e : source.elements())
        if (image[e] == qe) return e;
    raise(ErrorKind::Internal, "quotient element without preimage");
}

GroupPtr realize_as_group(const Subgroup& h) {
    const GroupPtr& g = h.ambient();
    if (h.order() == g->order()) return g;
    static std::mutex mu;
    static std::map<std::pair<const PermGroup*, std::vector<int>>, std::pair<GroupPtr, GroupPtr>> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_pair(g.get(), h.elements());
    auto it = cache.find(key);
    if (it != cache.end()) return it->second.second;
    std::vector<Perm> gens;
    for (int s : h.generators()) gens.push_back(g->perm(s));
    GroupPtr ng = PermGroup::make(g->name() + "/sub" + std::to_string(h.order()), g->degree(), gens,
                                  std::max(g->cap(), h.order()));
    cache.emplace(key, std::make_pair(g, ng));
    return ng;
}

}  // namespace ppcx
