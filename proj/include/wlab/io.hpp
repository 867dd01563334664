#pragma once

#include <string>

#include "json.hpp"
#include "wlab/additive.hpp"
#include "wlab/k1.hpp"
#include "wlab/suite.hpp"

namespace wlab {

using Json = nlohmann::json;

/// Version tag stamped on every document we emit and required on every
/// document we accept.
inline constexpr const char* kSchemaTag = "whitehead-lab/1";

/// Group spec documents:
///   {"p": 2, "generators": [[[1,2,3,4]], [[1,3]]]}      cycles on 1-based points
///   {"p": 2, "catalog": "dihedral", "params": [4]}      positional params
///   {"p": 2, "catalog": "cyclic", "params": {"order": 8}}
///   {"p": 3, "catalog": "product",
///    "factors": [{"name": "cyclic", "params": [3]}, ...]}
FiniteGroup group_from_spec(const Json& spec);
FiniteGroup group_from_spec_text(const std::string& text);

/// Shorthand accepted on the command line:
///   catalog:cyclic:8   catalog:heisenberg   catalog:product:cyclic.3,cyclic.9
FiniteGroup group_from_catalog_string(const std::string& s, long p);

/// Canonical description: elements, Cayley table hash, class and subgroup
/// inventory.  Deterministic for a fixed group.
Json group_info_json(const GroupContext& C);

/// Elements carry their basis label ("group", "conj", "sub:i", "ab:i",
/// "subconj:i"), the prime, both precisions, and the nonzero coefficients as
/// decimal strings keyed by global display id.
Json element_to_json(const ZpElt& x);
ZpElt element_from_json(const GroupContext& C, const Json& j);

/// Resolve a serialized basis label against a context.
const BasisSpec& basis_by_label(const GroupContext& C, const std::string& label);

Json tuple_to_json(const PhiTuple& t);
PhiTuple tuple_from_json(const GroupContext& C, const Json& j);

Json psi_to_json(const PsiTuple& t);
PsiTuple psi_from_json(const GroupContext& C, const Json& j);

Json report_to_json(const ConditionReport& r);

Json howell_to_json(const HowellBasis& b);

Json suite_report_to_json(const SuiteReport& r);
std::string suite_report_text(const SuiteReport& r);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace wlab
