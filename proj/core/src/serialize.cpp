#include "gcnnvc/serialize.hpp"

#include <algorithm>
#include <sstream>

#include "gcnnvc/errors.hpp"

namespace gcnnvc::json {

namespace {

std::string path(std::string_view where, std::string_view key) {
  std::string p(where);
  p += '.';
  p += key;
  return p;
}

const Json& field(const Json& j, std::string_view key, std::string_view where) {
  auto it = j.find(key);
  if (it == j.end()) throw InvalidArgument(std::string(where) + ": missing field '" + std::string(key) + "'");
  return *it;
}

std::size_t as_size(const Json& v, std::string_view where) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw InvalidArgument(std::string(where) + ": expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::uint64_t as_u64(const Json& v, std::string_view where) {
  return static_cast<std::uint64_t>(as_size(v, where));
}

double as_double(const Json& v, std::string_view where) {
  if (!v.is_number()) throw InvalidArgument(std::string(where) + ": expected a number");
  return v.get<double>();
}

bool as_bool(const Json& v, std::string_view where) {
  if (!v.is_boolean()) throw InvalidArgument(std::string(where) + ": expected true or false");
  return v.get<bool>();
}

std::string as_string(const Json& v, std::string_view where) {
  if (!v.is_string()) throw InvalidArgument(std::string(where) + ": expected a string");
  return v.get<std::string>();
}

const Json& as_array(const Json& v, std::string_view where) {
  if (!v.is_array()) throw InvalidArgument(std::string(where) + ": expected an array");
  return v;
}

const Json& as_array(const Json& v, std::size_t size, std::string_view where) {
  as_array(v, where);
  if (v.size() != size) {
    throw InvalidArgument(std::string(where) + ": expected " + std::to_string(size) +
                          " entries, got " + std::to_string(v.size()));
  }
  return v;
}

std::size_t get_size(const Json& j, std::string_view key, std::string_view where) {
  return as_size(field(j, key, where), path(where, key));
}
std::uint64_t get_u64(const Json& j, std::string_view key, std::string_view where) {
  return as_u64(field(j, key, where), path(where, key));
}
double get_double(const Json& j, std::string_view key, std::string_view where) {
  return as_double(field(j, key, where), path(where, key));
}
bool get_bool(const Json& j, std::string_view key, std::string_view where) {
  return as_bool(field(j, key, where), path(where, key));
}
std::string get_string(const Json& j, std::string_view key, std::string_view where) {
  return as_string(field(j, key, where), path(where, key));
}

std::vector<double> doubles(const Json& v, std::string_view where) {
  as_array(v, where);
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_double(v[i], std::string(where) + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<double> doubles(const Json& v, std::size_t size, std::string_view where) {
  as_array(v, size, where);
  return doubles(v, where);
}

template <class T>
std::vector<T> unsigneds(const Json& v, std::string_view where) {
  as_array(v, where);
  std::vector<T> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(static_cast<T>(as_size(v[i], std::string(where) + "[" + std::to_string(i) + "]")));
  }
  return out;
}

// Wraps shape and value errors from constructors with the JSON location.
template <class F>
auto located(std::string_view where, F&& f) {
  try {
    return f();
  } catch (const InvalidArgument& e) {
    const std::string msg = e.what();
    if (msg.rfind(std::string(where), 0) == 0) throw;
    throw InvalidArgument(std::string(where) + ": " + msg);
  }
}

std::string join(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(v[i]);
  }
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

const char* yesno(bool b) { return b ? "true" : "false"; }

}  // namespace

void expect_keys(const Json& j, std::initializer_list<std::string_view> allowed,
                 std::string_view where) {
  if (!j.is_object()) throw InvalidArgument(std::string(where) + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), std::string_view(it.key())) == allowed.end()) {
      throw InvalidArgument(std::string(where) + ": unknown field '" + it.key() + "'");
    }
  }
}

std::string format_double(double x) { return Json(x).dump(); }

// --- groups ----------------------------------------------------------------

Json to_json(const GroupDescriptor& d) {
  switch (d.kind) {
    case GroupKind::cyclic:
      return {{"kind", "cyclic"}, {"n", d.n}};
    case GroupKind::dihedral:
      return {{"kind", "dihedral"}, {"n", d.n}};
    case GroupKind::grid:
      return {{"kind", "grid"}, {"height", d.height}, {"width", d.width}};
    case GroupKind::product: {
      Json factors = Json::array();
      for (const auto& f : d.factors) factors.push_back(to_json(f));
      return {{"kind", "product"}, {"factors", factors}};
    }
    case GroupKind::custom:
      break;
  }
  throw UnsupportedOperation("custom groups have no descriptor");
}

namespace {

GroupDescriptor group_from_json_at(const Json& j, const std::string& where) {
  if (j.is_string()) {
    return located(where, [&] { return GroupDescriptor::parse(j.get<std::string>()); });
  }
  if (!j.is_object()) throw InvalidArgument(where + ": expected a descriptor string or object");
  const std::string kind = get_string(j, "kind", where);
  GroupDescriptor d;
  if (kind == "cyclic" || kind == "dihedral") {
    expect_keys(j, {"kind", "n"}, where);
    d.kind = kind == "cyclic" ? GroupKind::cyclic : GroupKind::dihedral;
    d.n = get_size(j, "n", where);
  } else if (kind == "grid") {
    expect_keys(j, {"kind", "height", "width"}, where);
    d.kind = GroupKind::grid;
    d.height = get_size(j, "height", where);
    d.width = get_size(j, "width", where);
  } else if (kind == "product") {
    expect_keys(j, {"kind", "factors"}, where);
    d.kind = GroupKind::product;
    const Json& fs = as_array(field(j, "factors", where), 2, path(where, "factors"));
    for (std::size_t i = 0; i < fs.size(); ++i) {
      d.factors.push_back(group_from_json_at(fs[i], where + ".factors[" + std::to_string(i) + "]"));
    }
  } else {
    throw InvalidArgument(path(where, "kind") + ": unknown group kind '" + kind + "'");
  }
  return d;
}

}  // namespace

GroupDescriptor group_from_json(const Json& j) { return group_from_json_at(j, "group"); }

// --- architectures and parameters -----------------------------------------

Json to_json(const GcnnSpec& s) {
  return {{"k", s.k}, {"widths", s.widths}, {"resolution", s.resolution}};
}

GcnnSpec gcnn_spec_from_json(const Json& j) {
  const std::string where = "spec";
  expect_keys(j, {"k", "widths", "resolution"}, where);
  GcnnSpec s{get_size(j, "k", where),
             unsigneds<std::size_t>(field(j, "widths", where), path(where, "widths")),
             get_size(j, "resolution", where)};
  located(where, [&] { s.validate(); return 0; });
  return s;
}

Json to_json(const GcnnParams& p) {
  Json layers = Json::array();
  for (const auto& layer : p.layers) {
    Json w = Json::array();
    for (std::size_t i = 0; i < layer.in; ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < layer.out; ++j) {
        auto kw = layer.kernel_weights(i, j);
        row.push_back(std::vector<double>(kw.begin(), kw.end()));
      }
      w.push_back(std::move(row));
    }
    layers.push_back({{"weights", std::move(w)}, {"biases", layer.biases}});
  }
  return {{"layers", std::move(layers)}};
}

GcnnParams gcnn_params_from_json(const Json& j, const GcnnSpec& spec) {
  const std::string where = "params";
  expect_keys(j, {"layers"}, where);
  spec.validate();
  GcnnParams p = GcnnParams::zeros(spec);
  const Json& layers = as_array(field(j, "layers", where), spec.depth(), where + ".layers");
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const std::string lw = where + ".layers[" + std::to_string(l) + "]";
    expect_keys(layers[l], {"weights", "biases"}, lw);
    auto& layer = p.layers[l];
    const Json& w = as_array(field(layers[l], "weights", lw), layer.in, lw + ".weights");
    for (std::size_t i = 0; i < layer.in; ++i) {
      const std::string iw = lw + ".weights[" + std::to_string(i) + "]";
      as_array(w[i], layer.out, iw);
      for (std::size_t jj = 0; jj < layer.out; ++jj) {
        const auto vals = doubles(w[i][jj], layer.k, iw + "[" + std::to_string(jj) + "]");
        std::copy(vals.begin(), vals.end(), layer.kernel_weights(i, jj).begin());
      }
    }
    layer.biases = doubles(field(layers[l], "biases", lw), layer.out, lw + ".biases");
  }
  located(where, [&] { p.check(spec); return 0; });
  return p;
}

Json to_json(const DnnSpec& s) { return {{"widths", s.widths}}; }

DnnSpec dnn_spec_from_json(const Json& j) {
  const std::string where = "dnn";
  expect_keys(j, {"widths"}, where);
  DnnSpec s{unsigneds<std::size_t>(field(j, "widths", where), path(where, "widths"))};
  located(where, [&] { s.validate(); return 0; });
  return s;
}

Json to_json(const DnnParams& p) {
  Json layers = Json::array();
  for (const auto& layer : p.layers) {
    Json w = Json::array();
    for (std::size_t jj = 0; jj < layer.out; ++jj) {
      w.push_back(std::vector<double>(layer.weights.begin() + static_cast<long>(jj * layer.in),
                                      layer.weights.begin() + static_cast<long>((jj + 1) * layer.in)));
    }
    layers.push_back({{"weights", std::move(w)}, {"biases", layer.biases}});
  }
  return {{"layers", std::move(layers)}};
}

DnnParams dnn_params_from_json(const Json& j, const DnnSpec& spec) {
  const std::string where = "dnn_params";
  expect_keys(j, {"layers"}, where);
  spec.validate();
  DnnParams p = DnnParams::zeros(spec);
  const Json& layers = as_array(field(j, "layers", where), spec.depth(), where + ".layers");
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const std::string lw = where + ".layers[" + std::to_string(l) + "]";
    expect_keys(layers[l], {"weights", "biases"}, lw);
    auto& layer = p.layers[l];
    const Json& w = as_array(field(layers[l], "weights", lw), layer.out, lw + ".weights");
    for (std::size_t jj = 0; jj < layer.out; ++jj) {
      const auto row = doubles(w[jj], layer.in, lw + ".weights[" + std::to_string(jj) + "]");
      std::copy(row.begin(), row.end(), layer.weights.begin() + static_cast<long>(jj * layer.in));
    }
    layer.biases = doubles(field(layers[l], "biases", lw), layer.out, lw + ".biases");
  }
  located(where, [&] { p.check(spec); return 0; });
  return p;
}

Json to_json(const KernelBasis& b) {
  Json values = Json::array();
  for (std::size_t s = 0; s < b.size(); ++s) {
    auto fn = b.function(s);
    values.push_back(std::vector<double>(fn.begin(), fn.end()));
  }
  return {{"k", b.size()}, {"diff_count", b.diff_count()}, {"values", std::move(values)}};
}

KernelBasis basis_from_json(const Json& j) {
  const std::string where = "basis";
  expect_keys(j, {"k", "diff_count", "values"}, where);
  const std::size_t k = get_size(j, "k", where);
  const std::size_t d = get_size(j, "diff_count", where);
  const Json& rows = as_array(field(j, "values", where), k, where + ".values");
  std::vector<double> values;
  for (std::size_t s = 0; s < k; ++s) {
    const auto row = doubles(rows[s], d, where + ".values[" + std::to_string(s) + "]");
    values.insert(values.end(), row.begin(), row.end());
  }
  return located(where, [&] { return KernelBasis(k, d, std::move(values)); });
}

Json to_json(const Signal& f) {
  Json values = Json::array();
  for (std::size_t c = 0; c < f.channels(); ++c) {
    auto ch = f.channel(c);
    values.push_back(std::vector<double>(ch.begin(), ch.end()));
  }
  return {{"channels", f.channels()}, {"resolution", f.resolution()}, {"values", std::move(values)}};
}

namespace {

Signal signal_from_json_at(const Json& j, const std::string& where) {
  expect_keys(j, {"channels", "resolution", "values"}, where);
  const std::size_t c = get_size(j, "channels", where);
  const std::size_t r = get_size(j, "resolution", where);
  const Json& rows = as_array(field(j, "values", where), c, where + ".values");
  std::vector<double> values;
  for (std::size_t ch = 0; ch < c; ++ch) {
    const auto row = doubles(rows[ch], r, where + ".values[" + std::to_string(ch) + "]");
    values.insert(values.end(), row.begin(), row.end());
  }
  return located(where, [&] { return Signal(c, r, std::move(values)); });
}

}  // namespace

Signal signal_from_json(const Json& j) { return signal_from_json_at(j, "signal"); }

// --- instances -------------------------------------------------------------

Json to_json(const ShatterInstance& inst) {
  if (!inst.group.descriptor()) {
    throw UnsupportedOperation("instance group '" + inst.group.label() + "' has no descriptor");
  }
  Json functions = Json::array();
  for (const auto& f : inst.functions) functions.push_back(to_json(f));
  Json blocks = Json::array();
  for (const auto& b : inst.blocks) {
    Json family = Json::array();
    for (const auto& p : b.family) family.push_back(to_json(p));
    blocks.push_back({{"first", b.first},
                      {"count", b.count},
                      {"spec", to_json(b.spec)},
                      {"family", std::move(family)},
                      {"lo", b.lo},
                      {"hi", b.hi},
                      {"delta", b.delta},
                      {"points", b.points},
                      {"output_bounds", b.output_bounds}});
  }
  return {{"group", to_json(*inst.group.descriptor())},
          {"functions", std::move(functions)},
          {"blocks", std::move(blocks)},
          {"threshold", inst.threshold},
          {"provenance", std::string(to_string(inst.provenance))}};
}

ShatterInstance instance_from_json(const Json& j) {
  const std::string where = "instance";
  expect_keys(j, {"group", "functions", "blocks", "threshold", "provenance"}, where);
  const GroupDescriptor desc = group_from_json_at(field(j, "group", where), where + ".group");
  ShatterInstance inst{located(where + ".group", [&] { return build_group(desc); }),
                       {},
                       {},
                       get_double(j, "threshold", where),
                       located(where + ".provenance", [&] {
                         return construction_from_string(get_string(j, "provenance", where));
                       })};
  const Json& fs = as_array(field(j, "functions", where), where + ".functions");
  for (std::size_t i = 0; i < fs.size(); ++i) {
    inst.functions.push_back(signal_from_json_at(fs[i], where + ".functions[" + std::to_string(i) + "]"));
  }
  const Json& bs = as_array(field(j, "blocks", where), where + ".blocks");
  for (std::size_t i = 0; i < bs.size(); ++i) {
    const std::string bw = where + ".blocks[" + std::to_string(i) + "]";
    expect_keys(bs[i], {"first", "count", "spec", "family", "lo", "hi", "delta", "points",
                        "output_bounds"},
                bw);
    ClassifierBlock b;
    b.first = get_size(bs[i], "first", bw);
    b.count = get_size(bs[i], "count", bw);
    if (b.count > 20) throw InvalidArgument(bw + ".count: at most 20 functions per block");
    b.spec = located(bw + ".spec", [&] { return dnn_spec_from_json(field(bs[i], "spec", bw)); });
    const Json& fam = as_array(field(bs[i], "family", bw), std::size_t{1} << b.count, bw + ".family");
    for (std::size_t q = 0; q < fam.size(); ++q) {
      b.family.push_back(located(bw + ".family[" + std::to_string(q) + "]",
                                 [&] { return dnn_params_from_json(fam[q], b.spec); }));
    }
    b.lo = get_double(bs[i], "lo", bw);
    b.hi = get_double(bs[i], "hi", bw);
    b.delta = get_double(bs[i], "delta", bw);
    b.points = doubles(field(bs[i], "points", bw), bw + ".points");
    b.output_bounds = doubles(field(bs[i], "output_bounds", bw), bw + ".output_bounds");
    inst.blocks.push_back(std::move(b));
  }
  located(where, [&] { inst.check(); return 0; });
  return inst;
}

// --- reports ---------------------------------------------------------------

Json to_json(const ShatterReport& r, bool timing) {
  Json j = {{"m", r.m},
            {"labelings_total", r.labelings_total},
            {"checked", r.checked},
            {"realized", r.realized},
            {"distinct_patterns", r.distinct_patterns},
            {"success", r.success},
            {"certified", r.certified},
            {"max_margin_violation", r.max_margin_violation},
            {"min_margin", r.min_margin},
            {"failed_labelings", r.failed_labelings},
            {"provenance", std::string(to_string(r.provenance))}};
  if (timing) j["wall_time_seconds"] = r.wall_time_seconds;
  return j;
}

ShatterReport shatter_report_from_json(const Json& j) {
  const std::string where = "shatter_report";
  expect_keys(j, {"m", "labelings_total", "checked", "realized", "distinct_patterns", "success",
                  "certified", "max_margin_violation", "min_margin", "failed_labelings",
                  "provenance", "wall_time_seconds"},
              where);
  ShatterReport r;
  r.m = get_size(j, "m", where);
  r.labelings_total = get_u64(j, "labelings_total", where);
  r.checked = get_u64(j, "checked", where);
  r.realized = get_u64(j, "realized", where);
  r.distinct_patterns = get_u64(j, "distinct_patterns", where);
  r.success = get_bool(j, "success", where);
  r.certified = get_bool(j, "certified", where);
  r.max_margin_violation = get_double(j, "max_margin_violation", where);
  r.min_margin = get_double(j, "min_margin", where);
  r.failed_labelings = unsigneds<std::uint64_t>(field(j, "failed_labelings", where),
                                                where + ".failed_labelings");
  r.provenance = located(where + ".provenance", [&] {
    return construction_from_string(get_string(j, "provenance", where));
  });
  if (j.contains("wall_time_seconds")) r.wall_time_seconds = get_double(j, "wall_time_seconds", where);
  return r;
}

Json to_json(const InvarianceReport& r) {
  return {{"trials", r.trials},
          {"max_abs_deviation", r.max_abs_deviation},
          {"max_rel_deviation", r.max_rel_deviation},
          {"passed", r.passed}};
}

InvarianceReport invariance_report_from_json(const Json& j) {
  const std::string where = "invariance_report";
  expect_keys(j, {"trials", "max_abs_deviation", "max_rel_deviation", "passed"}, where);
  return {get_size(j, "trials", where), get_double(j, "max_abs_deviation", where),
          get_double(j, "max_rel_deviation", where), get_bool(j, "passed", where)};
}

Json to_json(const LiftReport& r) {
  return {{"trials", r.trials},
          {"max_residual", r.max_residual},
          {"max_rel_residual", r.max_rel_residual}};
}

LiftReport lift_report_from_json(const Json& j) {
  const std::string where = "lift_report";
  expect_keys(j, {"trials", "max_residual", "max_rel_residual"}, where);
  return {get_size(j, "trials", where), get_double(j, "max_residual", where),
          get_double(j, "max_rel_residual", where)};
}

Json to_json(const BoundConsistency& b) {
  return {{"m", b.m}, {"vc_upper", b.vc_upper}, {"holds", b.holds}};
}

BoundConsistency bound_consistency_from_json(const Json& j) {
  const std::string where = "bound_consistency";
  expect_keys(j, {"m", "vc_upper", "holds"}, where);
  return {get_size(j, "m", where), get_u64(j, "vc_upper", where), get_bool(j, "holds", where)};
}

Json to_json(const BoundReport& r) {
  Json constants = nullptr;
  if (r.constants) constants = {{"c", r.constants->c}, {"C", r.constants->C}};
  return {{"spec", to_json(r.spec)},
          {"m", r.m},
          {"gcnn_weights", r.gcnn_weights},
          {"dnn_weights", r.dnn_weights},
          {"ub_gcnn_theorem", r.ub_gcnn_theorem},
          {"ub_gcnn_proof_variant", r.ub_gcnn_proof_variant},
          {"ub_dnn", r.ub_dnn},
          {"comparison_rhs", r.comparison_rhs},
          {"comparison_holds", r.comparison_holds},
          {"log2_growth_at_m", r.log2_growth_at_m},
          {"log2_region_counts", r.log2_region_counts},
          {"vc_upper_by_search", r.vc_upper_by_search},
          {"constants", std::move(constants)},
          {"sandwich_lower", r.sandwich_lower},
          {"sandwich_upper", r.sandwich_upper}};
}

BoundReport bound_report_from_json(const Json& j) {
  const std::string where = "bound_report";
  expect_keys(j, {"spec", "m", "gcnn_weights", "dnn_weights", "ub_gcnn_theorem",
                  "ub_gcnn_proof_variant", "ub_dnn", "comparison_rhs", "comparison_holds",
                  "log2_growth_at_m", "log2_region_counts", "vc_upper_by_search", "constants",
                  "sandwich_lower", "sandwich_upper"},
              where);
  BoundReport r;
  r.spec = located(where + ".spec", [&] { return gcnn_spec_from_json(field(j, "spec", where)); });
  r.m = get_u64(j, "m", where);
  r.gcnn_weights = unsigneds<std::uint64_t>(field(j, "gcnn_weights", where), where + ".gcnn_weights");
  r.dnn_weights = unsigneds<std::uint64_t>(field(j, "dnn_weights", where), where + ".dnn_weights");
  r.ub_gcnn_theorem = get_double(j, "ub_gcnn_theorem", where);
  r.ub_gcnn_proof_variant = get_double(j, "ub_gcnn_proof_variant", where);
  r.ub_dnn = get_double(j, "ub_dnn", where);
  r.comparison_rhs = get_double(j, "comparison_rhs", where);
  r.comparison_holds = get_bool(j, "comparison_holds", where);
  r.log2_growth_at_m = get_double(j, "log2_growth_at_m", where);
  r.log2_region_counts = doubles(field(j, "log2_region_counts", where), where + ".log2_region_counts");
  r.vc_upper_by_search = get_u64(j, "vc_upper_by_search", where);
  const Json& c = field(j, "constants", where);
  if (!c.is_null()) {
    expect_keys(c, {"c", "C"}, where + ".constants");
    r.constants = SandwichConstants{get_double(c, "c", where + ".constants"),
                                    get_double(c, "C", where + ".constants")};
  }
  r.sandwich_lower = get_double(j, "sandwich_lower", where);
  r.sandwich_upper = get_double(j, "sandwich_upper", where);
  return r;
}

Json to_json(const SelftestReport& r) {
  Json criteria = Json::array();
  for (const auto& c : r.criteria) {
    criteria.push_back({{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  return {{"seed", r.seed}, {"passed", r.passed()}, {"criteria", std::move(criteria)}};
}

SelftestReport selftest_report_from_json(const Json& j) {
  const std::string where = "selftest_report";
  expect_keys(j, {"seed", "passed", "criteria"}, where);
  SelftestReport r;
  r.seed = get_u64(j, "seed", where);
  const Json& cs = as_array(field(j, "criteria", where), where + ".criteria");
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const std::string cw = where + ".criteria[" + std::to_string(i) + "]";
    expect_keys(cs[i], {"id", "name", "passed", "detail"}, cw);
    r.criteria.push_back({static_cast<int>(get_size(cs[i], "id", cw)), get_string(cs[i], "name", cw),
                          get_bool(cs[i], "passed", cw), get_string(cs[i], "detail", cw)});
  }
  if (get_bool(j, "passed", where) != r.passed()) {
    throw InvalidArgument(where + ".passed: disagrees with the criteria");
  }
  return r;
}

// --- CSV -------------------------------------------------------------------

std::string to_csv(const BoundReport& r) {
  std::ostringstream out;
  out << "k,widths,r,m,gcnn_weights,dnn_weights,ub_gcnn_theorem,ub_gcnn_proof_variant,ub_dnn,"
         "comparison_rhs,comparison_holds,log2_growth_at_m,vc_upper_by_search,sandwich_lower,"
         "sandwich_upper\n";
  out << r.spec.k << ',' << join(r.spec.widths) << ',' << r.spec.resolution << ',' << r.m << ','
      << join(r.gcnn_weights) << ',' << join(r.dnn_weights) << ','
      << format_double(r.ub_gcnn_theorem) << ',' << format_double(r.ub_gcnn_proof_variant) << ','
      << format_double(r.ub_dnn) << ',' << format_double(r.comparison_rhs) << ','
      << yesno(r.comparison_holds) << ',' << format_double(r.log2_growth_at_m) << ','
      << r.vc_upper_by_search << ',' << format_double(r.sandwich_lower) << ','
      << format_double(r.sandwich_upper) << '\n';
  return out.str();
}

std::string to_csv(const ShatterReport& r) {
  std::ostringstream out;
  out << "provenance,m,labelings_total,checked,realized,distinct_patterns,success,certified,"
         "max_margin_violation,min_margin\n";
  out << to_string(r.provenance) << ',' << r.m << ',' << r.labelings_total << ',' << r.checked
      << ',' << r.realized << ',' << r.distinct_patterns << ',' << yesno(r.success) << ','
      << yesno(r.certified) << ',' << format_double(r.max_margin_violation) << ','
      << format_double(r.min_margin) << '\n';
  return out.str();
}

std::string to_csv(const InvarianceReport& r) {
  std::ostringstream out;
  out << "trials,max_abs_deviation,max_rel_deviation,passed\n";
  out << r.trials << ',' << format_double(r.max_abs_deviation) << ','
      << format_double(r.max_rel_deviation) << ',' << yesno(r.passed) << '\n';
  return out.str();
}

std::string to_csv(const LiftReport& r) {
  std::ostringstream out;
  out << "trials,max_residual,max_rel_residual\n";
  out << r.trials << ',' << format_double(r.max_residual) << ','
      << format_double(r.max_rel_residual) << '\n';
  return out.str();
}

std::string to_csv(const SelftestReport& r) {
  std::ostringstream out;
  out << "id,name,passed,detail\n";
  for (const auto& c : r.criteria) {
    out << c.id << ',' << csv_field(c.name) << ',' << yesno(c.passed) << ','
        << csv_field(c.detail) << '\n';
  }
  return out.str();
}

}  // namespace gcnnvc::json
