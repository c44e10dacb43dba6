#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ppcx/endo.hpp"

namespace ppcx {

/// Integer-valued function on (a subset of) the p-subgroup classes of a group.
struct SuperclassFn {
    std::shared_ptr<const PSubgroupTable> table;
    std::map<int, int> values;  ///< rep index -> value; the keys are the domain

    bool defined(int rep) const { return values.count(rep) != 0; }
    int at(int rep) const { return values.at(rep); }
    SuperclassFn operator+(const SuperclassFn& o) const;
    SuperclassFn operator-() const;
};

/// Values of the defined entries of an h-mark report.
SuperclassFn superclass_from_hmarks(const HMarkReport& r, std::shared_ptr<const PSubgroupTable> table);

enum class SectionType { Cp, C2_in_C4, C2_in_Q8, CpxCp };
const char* section_type_name(SectionType t);

/// H normal in L (and L normal in N <= N_G(H) for the C4/Q8 types), with the
/// quotient type read off from coset arithmetic.
struct SectionWitness {
    SectionType type = SectionType::Cp;
    Subgroup H, L, N;
    int h_rep = 0;
    int l_rep = 0;
    std::vector<Subgroup> intermediates;  ///< CpxCp: the p + 1 subgroups between H and L
    std::vector<int> intermediate_reps;
};

/// All sections up to G-conjugacy of the classes involved. Cp sections are listed
/// for every p but only constrain f when p is odd.
std::vector<SectionWitness> enumerate_sections(const PSubgroupTable& table);

struct SectionCheck {
    int section = 0;
    bool enforced = false;
    bool passed = true;
    std::string detail;
};

struct BorelSmithReport {
    bool holds = true;
    std::vector<SectionWitness> sections;
    std::vector<SectionCheck> checks;
    std::optional<int> first_failure;  ///< index into checks
};

/// Sections whose H and L (and intermediates) lie in the domain are enforced.
BorelSmithReport check_borel_smith(const SuperclassFn& f);
/// As above, restricted to sections with V(H) = 0.
BorelSmithReport check_borel_smith_at_V(const SuperclassFn& f, const RelProjContext& ctx);

}  // namespace ppcx
