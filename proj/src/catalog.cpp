#include "ppcx/catalog.hpp"

#include <map>
#include <mutex>
#include <regex>

namespace ppcx {

GroupPtr cyclic_group(int n) {
    require(n >= 1, ErrorKind::InvalidInput, "cyclic group order must be positive");
    Perm r(n);
    for (int i = 0; i < n; ++i) r[i] = (i + 1) % n;
    return PermGroup::make("C" + std::to_string(n), n, n > 1 ? std::vector<Perm>{r} : std::vector<Perm>{});
}

GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b, const std::string& name) {
    const int da = a->degree(), db = b->degree();
    std::vector<Perm> gens;
    for (const auto& g : a->generator_perms()) {
        Perm p(da + db);
        for (int i = 0; i < da; ++i) p[i] = g[i];
        for (int i = 0; i < db; ++i) p[da + i] = da + i;
        gens.push_back(p);
    }
    for (const auto& g : b->generator_perms()) {
        Perm p(da + db);
        for (int i = 0; i < da; ++i) p[i] = i;
        for (int i = 0; i < db; ++i) p[da + i] = da + g[i];
        gens.push_back(p);
    }
    return PermGroup::make(name, da + db, gens);
}

// Quaternion units as (sign, unit) with unit 0..3 = 1, i, j, k; point index = 4*neg + unit.
static int qmul(int a, int b) {
    static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    int ua = a % 4, ub = b % 4;
    int neg = (a / 4 + b / 4 + sign[ua][ub]) % 2;
    return 4 * neg + unit[ua][ub];
}

static GroupPtr make_q8() {
    std::vector<Perm> gens;
    for (int u : {1, 2}) {
        Perm p(8);
        for (int x = 0; x < 8; ++x) p[x] = qmul(u, x);
        gens.push_back(p);
    }
    return PermGroup::make("Q8", 8, gens);
}

SD16Data sd16() {
    static std::once_flag once;
    static SD16Data data;
    std::call_once(once, [] {
        Perm r(8), s(8);
        for (int i = 0; i < 8; ++i) {
            r[i] = (i + 1) % 8;
            s[i] = (3 * i) % 8;
        }
        data.group = PermGroup::make("SD16", 8, {r, s});
        data.r = data.group->index_of(r);
        data.s = data.group->index_of(s);
        data.H = Subgroup::generated(data.group, {data.s});
    });
    return data;
}

GroupPtr named_group(const std::string& name, int cap) {
    static std::mutex mu;
    static std::map<std::string, GroupPtr> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(name);
    if (it != cache.end()) {
        require(it->second->order() <= cap, ErrorKind::CapExceeded, "group order exceeds cap");
        return it->second;
    }
    GroupPtr g;
    std::smatch m;
    static const std::regex cyc("C([0-9]+)");
    static const std::regex prod("C([0-9]+)xC([0-9]+)");
    if (std::regex_match(name, m, cyc)) {
        g = cyclic_group(std::stoi(m[1]));
    } else if (std::regex_match(name, m, prod)) {
        g = direct_product(cyclic_group(std::stoi(m[1])), cyclic_group(std::stoi(m[2])), name);
    } else if (name == "S3") {
        g = PermGroup::make("S3", 3, {perm_from_cycles(3, {{0, 1, 2}}), perm_from_cycles(3, {{0, 1}})});
    } else if (name == "S4") {
        g = PermGroup::make("S4", 4, {perm_from_cycles(4, {{0, 1, 2, 3}}), perm_from_cycles(4, {{0, 1}})});
    } else if (name == "A4") {
        g = PermGroup::make("A4", 4, {perm_from_cycles(4, {{0, 1, 2}}), perm_from_cycles(4, {{0, 1}, {2, 3}})});
    } else if (name == "D8") {
        g = PermGroup::make("D8", 4, {perm_from_cycles(4, {{0, 1, 2, 3}}), perm_from_cycles(4, {{1, 3}})});
    } else if (name == "Q8") {
        g = make_q8();
    } else if (name == "SD16") {
        g = sd16().group;
    } else {
        raise(ErrorKind::InvalidInput, "unknown group name: " + name);
    }
    require(g->order() <= cap, ErrorKind::CapExceeded, "group order exceeds cap");
    cache[name] = g;
    return g;
}

std::vector<std::string> named_group_list() {
    return {"Cn", "CaxCb", "S3", "S4", "A4", "D8", "Q8", "SD16"};
}

}  // namespace ppcx
