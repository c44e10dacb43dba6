#pragma once

#include <string>
#include <vector>

#include "ppcx/group.hpp"

namespace ppcx {

/// Small named groups used by tests, examples and the CLI.
/// Accepted names: Cn (cyclic, n >= 1), CpxCp style products "CaxCb", S3, S4, A4,
/// D8, Q8, SD16.
GroupPtr named_group(const std::string& name, int cap = kDefaultGroupCap);
std::vector<std::string> named_group_list();

GroupPtr cyclic_group(int n);
GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b, const std::string& name);

/// The frozen SD16 realization on 8 points: r = (0 1 2 3 4 5 6 7), s: i -> 3i mod 8.
struct SD16Data {
    GroupPtr group;
    int r = 0;
    int s = 0;
    Subgroup H;  ///< noncentral involution subgroup <s>
};
SD16Data sd16();

}  // namespace ppcx
