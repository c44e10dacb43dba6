#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ppcx/borel_smith.hpp"
#include "ppcx/constructions.hpp"
#include "ppcx/endo.hpp"
#include "ppcx/induction.hpp"

namespace ppcx {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "ppcx/1";

Json read_json_file(const std::string& path);

/// Catalog name (string) or {"name", "degree", "generators": [generator, ...]} where a
/// generator is a list of cycles, or a single flat cycle.
GroupPtr group_from_json(const Json& j, int cap = kDefaultGroupCap);
Json group_to_json(const PermGroup& g);
/// A path to a JSON group file, or a catalog name. Repeated loads of the same spec
/// return the same group object.
GroupPtr load_group(const std::string& spec, int cap = kDefaultGroupCap);

/// Subgroup references: "G", "1", "sylow", "P<i>" (p-subgroup class rep), "S<i>"
/// (subgroup class rep), "c<n>" (the cyclic subgroup class of order n, which must be
/// unique), or {"generators": [generator, ...]}.
Subgroup subgroup_from_json(const GroupPtr& g, const Json& ref, unsigned p);
Json subgroup_to_json(const Subgroup& s);
std::vector<std::vector<int>> element_cycles(const PermGroup& g, int e);
int element_from_json(const PermGroup& g, const Json& j);

/// Module expression trees. Leaves: "trivial" | "k", "regular" | "kG",
/// {"op": "perm_on_cosets", "subgroup": ref}, {"op": "one_dim", "values": [...]},
/// {"op": "matrix", "matrices": [...], "generators"?: [...]}.
/// Nodes: dual, tensor, hom, sum (args), res, ind (arg), conj (arg, by), brauer (arg, at),
/// inf (arg over the quotient by "kernel"). Any node may carry "over": ref, which sets
/// the group it lives over; res and ind move the argument to the node's group.
Module module_from_json(const Json& expr, const Subgroup& over, unsigned p);
Json module_to_json(const Module& m);

/// regular | kG | trivial | k | zero | perm:<subgroup ref> | path to a module expression file.
Module module_from_spec(const std::string& spec, const Subgroup& over, unsigned p);
/// A path to a JSON subgroup reference, or the reference string itself.
Json subgroup_ref_from_spec(const std::string& s);

/// Catalog complex by name over a catalog group or group file.
ChainComplex example_complex(const std::string& name, const std::string& group, unsigned p, int length,
                             int cap = kDefaultGroupCap);

/// {"group", "p", "over"?, "terms": {deg: module-expr}, "differentials": {deg: rows}} or
/// {"example": name, "group"?, "p"?, "length"?}.
ChainComplex complex_from_json(const Json& j, int cap = kDefaultGroupCap);
Json complex_to_json(const ChainComplex& c);

/// {"group", "p", "values": {rep: int}} with rep given as "P<i>", a rep label, or an index.
SuperclassFn superclass_from_json(const Json& j, int cap = kDefaultGroupCap);
Json superclass_to_json(const SuperclassFn& f);

Json to_json(const PSubgroupTable& t);
Json to_json(const RelProjContext& ctx);
Json to_json(const HMarkReport& r, const PSubgroupTable& t);
Json to_json(const EndoVerdict& v, const PSubgroupTable& t);
Json to_json(const BorelSmithReport& r, const PSubgroupTable& t);
Json to_json(const MackeyVerification& v);
Json to_json(const std::vector<MackeySweepCase>& cases);
Json to_json(const DecompositionReport& d, std::uint64_t seed);
Json complex_summary(const ChainComplex& c);

/// Indented "key: value" rendering of a JSON report.
std::string render_text(const Json& j);

}  // namespace ppcx
