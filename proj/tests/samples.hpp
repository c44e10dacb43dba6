#pragma once

#include "ppcx/catalog.hpp"
#include "ppcx/complex.hpp"

namespace ppcx::testing {

inline Subgroup whole(const char* name) { return Subgroup::whole(named_group(name)); }

// k[G/Q] -> k in degrees 1, 0.
inline ChainComplex aug(const Subgroup& g, const Subgroup& q, unsigned p) {
    Module x = Module::perm_on_cosets(g, q, p);
    FpMatrix e(p, 1, x.dim());
    for (int j = 0; j < x.dim(); ++j) e.set(0, j, 1);
    return ChainComplex::make(g, p, 0, {Module::trivial(g, p), x}, {e}, "aug");
}

inline ChainComplex aug(const Subgroup& g, unsigned p) { return aug(g, Subgroup::trivial(g.ambient()), p); }

// kC2 -(1+s)-> kC2
inline ChainComplex norm_c2() {
    auto g = whole("C2");
    Module kg = Module::regular(g, 2);
    FpMatrix n = FpMatrix::from_rows(2, {{1, 1}, {1, 1}});
    return ChainComplex::make(g, 2, 0, {kg, kg}, {n}, "norm");
}

inline ChainComplex k_at(const Subgroup& g, unsigned p, int n) {
    return ChainComplex::singleton(Module::trivial(g, p), n);
}

}  // namespace ppcx::testing
