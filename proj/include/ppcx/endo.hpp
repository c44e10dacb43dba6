#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ppcx/relproj.hpp"

namespace ppcx {

/// weak / strong / esplit: relative to ctx.V. plain: V = 0. endosplit: endosplit
/// p-permutation resolutions (no V).
enum class EndoMode { Weak, Strong, Esplit, Endosplit, Plain };
const char* mode_name(EndoMode m);
EndoMode parse_mode(const std::string& s);

struct HMarkEntry {
    int rep = 0;
    std::string label;
    bool defined = false;
    int h = 0;
    int homology_dim = 0;
    bool contractible = false;
    std::map<int, int> profile;           ///< degree -> dim H_i(C(P)), nonzero only
    std::vector<unsigned> character;      ///< on generators of N_G(P) when homology_dim = 1
};

struct HMarkReport {
    EndoMode mode = EndoMode::Weak;
    std::vector<HMarkEntry> entries;  ///< one per p-subgroup class rep, in table order
    const HMarkEntry* at(int rep) const;
};

/// Status of one of the equivalent characterizations computed by a check.
enum class FormStatus { Holds, Fails, Skipped };
const char* form_status_name(FormStatus s);

struct EndoVerdict {
    std::string property;
    bool holds = false;
    std::string reason;              ///< the violated condition when !holds
    std::optional<int> failing_rep;  ///< p-subgroup class at fault, if local
    HMarkReport report;
    std::map<std::string, FormStatus> forms;
    std::optional<ChainComplex> cap;
};

struct CheckOptions {
    std::uint64_t seed = 0;
    /// Direct forms (built on C* (x) C or M* (x) M) run only when that total
    /// dimension is at most this; otherwise they are reported as skipped.
    int direct_cap = 200;
    bool cross_check = true;
};

/// Every term of C is p-permutation; throws NotPPermutation otherwise.
void require_p_permutation_terms(const ChainComplex& c, std::uint64_t seed = 0);

/// Local criterion at every vanishing rep: C(P) has homology of dimension 1 in one degree.
EndoVerdict check_weak(const ChainComplex& c, const RelProjContext& ctx, const CheckOptions& opt = {});
/// C (x) C* is k[0] plus a complex of V-projective modules, up to homotopy: reduce
/// C* (x) C to its contractible-free form and look for a split k[0] whose
/// complement is degreewise V-projective.
bool weak_direct(const ChainComplex& c, const RelProjContext& ctx, std::uint64_t seed = 0);

/// Per-P criterion: C(P) contractible or with nonzero homology in exactly one degree.
EndoVerdict check_endosplit_resolution(const ChainComplex& c, const CheckOptions& opt = {});
/// C* (x) C is split and H(C) is nonzero in at most one degree.
bool endosplit_direct(const ChainComplex& c);

EndoVerdict check_esplit_trivial(const ChainComplex& c, const RelProjContext& ctx, const CheckOptions& opt = {});
/// C* (x) C reduces to (k + M)[0] with M V-projective.
bool esplit_direct(const ChainComplex& c, const RelProjContext& ctx, std::uint64_t seed = 0);

EndoVerdict check_strong(const ChainComplex& c, const RelProjContext& ctx, const CheckOptions& opt = {});
EndoVerdict check_module_V_endotrivial(const Module& m, const RelProjContext& ctx, std::uint64_t seed = 0);

/// Dispatch on mode; Plain ignores ctx.V and uses V = 0, Endosplit ignores ctx.
EndoVerdict check(const ChainComplex& c, const RelProjContext& ctx, EndoMode mode, const CheckOptions& opt = {});

/// Throws InvalidInput when the mode's check fails.
HMarkReport hmarks(const ChainComplex& c, const RelProjContext& ctx, EndoMode mode, const CheckOptions& opt = {});

/// The unique indecomposable summand of C passing the mode's check.
ChainComplex cap(const ChainComplex& c, const RelProjContext& ctx, EndoMode mode, const CheckOptions& opt = {});

/// Weak: equal h-marks and characters on the vanishing set. Strong/esplit/plain:
/// isomorphic caps.
bool stable_class_equal(const ChainComplex& c, const ChainComplex& d, const RelProjContext& ctx, EndoMode mode,
                        const CheckOptions& opt = {});

/// For every P both C(P), D(P) contractible or concentrated in the same degree;
/// cross-checked against check_endosplit_resolution(C + D).
bool sum_endosplit_compatible(const ChainComplex& c, const ChainComplex& d, const CheckOptions& opt = {});

}  // namespace ppcx
