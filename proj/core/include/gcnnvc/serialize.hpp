#pragma once

#include <initializer_list>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "gcnnvc/bounds.hpp"
#include "gcnnvc/constructions.hpp"
#include "gcnnvc/group.hpp"
#include "gcnnvc/network.hpp"
#include "gcnnvc/selftest.hpp"
#include "gcnnvc/signal.hpp"
#include "gcnnvc/verify.hpp"

// JSON is the canonical form. Readers are strict: unknown or missing fields
// raise InvalidArgument naming the offending path. Nested arrays carry the
// shapes explicitly (weights[i][j][s] for G-conv layers, weights[j][i] for
// dense layers, values[c][j] for signals, values[s][d] for kernel bases).

namespace gcnnvc::json {

using Json = nlohmann::json;

// InvalidArgument if `j` is not an object or has a key outside `allowed`.
void expect_keys(const Json& j, std::initializer_list<std::string_view> allowed,
                 std::string_view where);

Json to_json(const GroupDescriptor& d);
// Accepts either the object form or a descriptor string.
GroupDescriptor group_from_json(const Json& j);

Json to_json(const GcnnSpec& s);
GcnnSpec gcnn_spec_from_json(const Json& j);
Json to_json(const GcnnParams& p);
GcnnParams gcnn_params_from_json(const Json& j, const GcnnSpec& spec);

Json to_json(const DnnSpec& s);
DnnSpec dnn_spec_from_json(const Json& j);
Json to_json(const DnnParams& p);
DnnParams dnn_params_from_json(const Json& j, const DnnSpec& spec);

Json to_json(const KernelBasis& b);
KernelBasis basis_from_json(const Json& j);
Json to_json(const Signal& f);
Signal signal_from_json(const Json& j);

Json to_json(const ShatterInstance& inst);
ShatterInstance instance_from_json(const Json& j);

// `timing` controls whether wall-clock fields are written.
Json to_json(const ShatterReport& r, bool timing);
ShatterReport shatter_report_from_json(const Json& j);
Json to_json(const InvarianceReport& r);
InvarianceReport invariance_report_from_json(const Json& j);
Json to_json(const LiftReport& r);
LiftReport lift_report_from_json(const Json& j);
Json to_json(const BoundConsistency& b);
BoundConsistency bound_consistency_from_json(const Json& j);
Json to_json(const BoundReport& r);
BoundReport bound_report_from_json(const Json& j);
Json to_json(const SelftestReport& r);
SelftestReport selftest_report_from_json(const Json& j);

// CSV projections: a header line and one row per record, comma separated,
// vectors joined with ';'.
//
// bounds:     k,widths,r,m,gcnn_weights,dnn_weights,ub_gcnn_theorem,
//             ub_gcnn_proof_variant,ub_dnn,comparison_rhs,comparison_holds,
//             log2_growth_at_m,vc_upper_by_search,sandwich_lower,sandwich_upper
// shatter:    provenance,m,labelings_total,checked,realized,distinct_patterns,
//             success,certified,max_margin_violation,min_margin
// invariance: trials,max_abs_deviation,max_rel_deviation,passed
// lift:       trials,max_residual,max_rel_residual
// selftest:   id,name,passed,detail
std::string to_csv(const BoundReport& r);
std::string to_csv(const ShatterReport& r);
std::string to_csv(const InvarianceReport& r);
std::string to_csv(const LiftReport& r);
std::string to_csv(const SelftestReport& r);

// Shortest round-trip decimal form, as used in JSON output.
std::string format_double(double x);

}  // namespace gcnnvc::json
