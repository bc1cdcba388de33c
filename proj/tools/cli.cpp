#include "cli.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gcnnvc/constructions.hpp"
#include "gcnnvc/errors.hpp"
#include "gcnnvc/rng.hpp"
#include "gcnnvc/selftest.hpp"
#include "gcnnvc/serialize.hpp"
#include "gcnnvc/verify.hpp"

namespace gcnnvc::cli {

namespace {

using json::Json;

constexpr const char* kVersion = "0.1.0";

struct Outcome {
  Json result;
  bool passed = false;
  std::string csv;
};

struct Context {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  bool timing = true;
};

Json read_json_file(const std::string& file, const char* what) {
  std::ifstream in(file);
  if (!in) throw InvalidArgument(std::string("cannot read ") + what + " '" + file + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument(file + ": " + e.what());
  }
}

std::string timestamp_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::uint64_t get_u64(const Json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_number_unsigned()) {
    throw InvalidArgument(where + "." + key + ": expected a non-negative integer");
  }
  return it->get<std::uint64_t>();
}

double get_number(const Json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_number()) throw InvalidArgument(where + "." + key + ": expected a number");
  return it->get<double>();
}

const Json& section(const Json& spec, const char* key) {
  const auto it = spec.find(key);
  if (it == spec.end()) throw InvalidArgument(std::string("spec: missing section '") + key + "'");
  return *it;
}

// "gcnn": {"k", "widths", "group" | "resolution"}. The group is optional for
// commands that only need r.
GcnnSpec parse_gcnn(const Json& j, std::optional<DiscretizedGroup>* group) {
  json::expect_keys(j, {"k", "widths", "group", "resolution"}, "gcnn");
  Json plain = {{"k", j.contains("k") ? j.at("k") : Json(1)}, {"widths", j.contains("widths") ? j.at("widths") : Json()}};
  if (j.contains("group")) {
    DiscretizedGroup g = build_group(json::group_from_json(j.at("group")));
    if (j.contains("resolution") && j.at("resolution") != Json(g.resolution())) {
      throw InvalidArgument("gcnn.resolution: disagrees with the group order");
    }
    plain["resolution"] = g.resolution();
    if (group) *group = std::move(g);
  } else if (j.contains("resolution")) {
    if (group) throw InvalidArgument("gcnn: this command needs a 'group'");
    plain["resolution"] = j.at("resolution");
  } else {
    throw InvalidArgument("gcnn: missing field 'group'");
  }
  try {
    return json::gcnn_spec_from_json(plain);
  } catch (const InvalidArgument& e) {
    std::string msg = e.what();
    if (msg.rfind("spec", 0) == 0) msg.replace(0, 4, "gcnn");
    throw InvalidArgument(msg);
  }
}

// Explicit layers, or {"seed", "scale"} for a reproducible random draw; the
// run seed when absent.
template <class Spec, class Params, class FromJson>
Params parse_params(const Json* j, const Spec& spec, std::uint64_t seed, const char* where,
                    FromJson from_json) {
  if (j && j->contains("layers")) return from_json(*j, spec);
  double scale = 1.0;
  if (j) {
    json::expect_keys(*j, {"seed", "scale"}, where);
    if (j->contains("seed")) seed = get_u64(*j, "seed", where);
    if (j->contains("scale")) scale = get_number(*j, "scale", where);
  }
  Rng rng(seed);
  return Params::random(spec, rng, scale);
}

// Explicit values, {"kind": "identity"}, {"kind": "window", "size": s} on
// grids, or {"kind": "random", "seed", "scale"}. Default: identity for k = 1,
// otherwise random from the run seed.
KernelBasis parse_basis(const Json* j, const GcnnSpec& spec, const DiscretizedGroup& g,
                        std::uint64_t seed) {
  std::string kind = spec.k == 1 ? "identity" : "random";
  if (j && j->contains("values")) return json::basis_from_json(*j);
  if (j) {
    json::expect_keys(*j, {"kind", "seed", "scale", "size"}, "basis");
    if (!j->contains("kind") || !j->at("kind").is_string()) {
      throw InvalidArgument("basis.kind: expected a string");
    }
    kind = j->at("kind").get<std::string>();
  }
  KernelBasis basis = [&] {
    if (kind == "identity") return identity_indicator_basis(g);
    if (kind == "window") return cnn_window_basis(g, get_u64(*j, "size", "basis"));
    if (kind == "random") {
      std::uint64_t s = seed ^ 0x5bd1e995ULL;
      double scale = 1.0;
      if (j && j->contains("seed")) s = get_u64(*j, "seed", "basis");
      if (j && j->contains("scale")) scale = get_number(*j, "scale", "basis");
      Rng rng(s);
      return random_basis(g, spec.k, rng, scale);
    }
    throw InvalidArgument("basis.kind: unknown kind '" + kind + "'");
  }();
  if (basis.size() != spec.k) {
    throw InvalidArgument("basis: has " + std::to_string(basis.size()) + " functions, gcnn.k is " +
                          std::to_string(spec.k));
  }
  return basis;
}

const Json* optional_section(const Json& spec, const char* key) {
  const auto it = spec.find(key);
  return it == spec.end() ? nullptr : &*it;
}

// --- commands ---------------------------------------------------------------

Outcome do_bounds(const Json& input, const Context&) {
  json::expect_keys(input, {"gcnn", "params", "basis", "bounds", "constants"}, "spec");
  const GcnnSpec spec = parse_gcnn(section(input, "gcnn"), nullptr);
  std::uint64_t m = 1;
  if (const Json* b = optional_section(input, "bounds")) {
    json::expect_keys(*b, {"m"}, "bounds");
    if (b->contains("m")) m = get_u64(*b, "m", "bounds");
  }
  std::optional<SandwichConstants> constants;
  if (const Json* c = optional_section(input, "constants"); c && !c->is_null()) {
    json::expect_keys(*c, {"c", "C"}, "constants");
    constants = SandwichConstants{get_number(*c, "c", "constants"), get_number(*c, "C", "constants")};
  }
  const BoundReport rep = make_bound_report(spec, m, constants);
  return {json::to_json(rep), rep.comparison_holds, json::to_csv(rep)};
}

ShatterInstance build_from_source(const Json& src) {
  if (src.contains("instance")) {
    json::expect_keys(src, {"instance"}, "shatter");
    return json::instance_from_json(src.at("instance"));
  }
  json::expect_keys(src, {"construction", "group", "A", "B", "blocks", "points"}, "shatter");
  if (!src.contains("construction") || !src.at("construction").is_string()) {
    throw InvalidArgument("shatter.construction: expected a string");
  }
  const Construction c = construction_from_string(src.at("construction").get<std::string>());
  if (!src.contains("group")) throw InvalidArgument("shatter: missing field 'group'");
  const DiscretizedGroup g = build_group(json::group_from_json(src.at("group")));
  switch (c) {
    case Construction::interval_indicator:
      return build_shatter_instance(g, get_number(src, "A", "shatter"), get_number(src, "B", "shatter"));
    case Construction::disjoint_intervals:
      return build_composite_instance(g, get_u64(src, "blocks", "shatter"));
    case Construction::hypercube_lift: {
      if (!src.contains("points") || !src.at("points").is_array()) {
        throw InvalidArgument("shatter.points: expected an array of points");
      }
      std::vector<std::vector<double>> points;
      for (const auto& p : src.at("points")) {
        if (!p.is_array()) throw InvalidArgument("shatter.points: expected arrays of numbers");
        std::vector<double> y;
        for (const auto& v : p) {
          if (!v.is_number()) throw InvalidArgument("shatter.points: expected numbers");
          y.push_back(v.get<double>());
        }
        points.push_back(std::move(y));
      }
      return build_hypercube_lift(linear_threshold_family(std::move(points)), g,
                                  get_number(src, "A", "shatter"), get_number(src, "B", "shatter"));
    }
    case Construction::custom:
      break;
  }
  throw InvalidArgument("shatter.construction: 'custom' needs an explicit instance");
}

Outcome do_shatter(const Json& input, const Context& ctx, std::optional<ShatterInstance>* built) {
  json::expect_keys(input, {"shatter"}, "spec");
  ShatterInstance inst = build_from_source(section(input, "shatter"));
  VerifyOptions options;
  options.seed = ctx.seed;
  const ShatterReport rep = verify_shattering(inst, options);
  const BoundConsistency consistency = verify_bound_consistency(inst, inst.class_spec());
  Outcome out;
  out.result = {{"shatter", json::to_json(rep, ctx.timing)},
                {"bound_consistency", json::to_json(consistency)},
                {"class_spec", json::to_json(inst.class_spec())}};
  out.passed = rep.success && consistency.holds;
  out.csv = json::to_csv(rep);
  if (built) *built = std::move(inst);
  return out;
}

Outcome do_lift_check(const Json& input, const Context& ctx) {
  json::expect_keys(input, {"dnn", "dnn_params", "group"}, "spec");
  const DnnSpec spec = json::dnn_spec_from_json(section(input, "dnn"));
  const DiscretizedGroup g = build_group(json::group_from_json(section(input, "group")));
  const DnnParams params = parse_params<DnnSpec, DnnParams>(
      optional_section(input, "dnn_params"), spec, ctx.seed, "dnn_params", json::dnn_params_from_json);
  const DnnNetwork dnn{spec, params};
  const LiftReport rep = verify_lift_equality(dnn, lift_dnn_to_gcnn(dnn, g), g, ctx.trials, ctx.seed);
  return {json::to_json(rep), rep.max_rel_residual <= 1e-9, json::to_csv(rep)};
}

Outcome do_invariance(const Json& input, const Context& ctx) {
  json::expect_keys(input, {"gcnn", "params", "basis", "bounds", "constants"}, "spec");
  std::optional<DiscretizedGroup> g;
  const GcnnSpec spec = parse_gcnn(section(input, "gcnn"), &g);
  const GcnnParams params = parse_params<GcnnSpec, GcnnParams>(
      optional_section(input, "params"), spec, ctx.seed, "params", json::gcnn_params_from_json);
  const KernelBasis basis = parse_basis(optional_section(input, "basis"), spec, *g, ctx.seed);
  const InvarianceReport rep = verify_invariance(spec, params, basis, *g, ctx.trials, ctx.seed);
  return {json::to_json(rep), rep.passed, json::to_csv(rep)};
}

Outcome do_selftest(const Context& ctx) {
  const SelftestReport rep = run_selftest(ctx.seed);
  return {json::to_json(rep), rep.passed(), json::to_csv(rep)};
}

Outcome execute(const std::string& command, const Json& input, const Context& ctx,
                std::optional<ShatterInstance>* built = nullptr) {
  if (command == "bounds") return do_bounds(input, ctx);
  if (command == "shatter") return do_shatter(input, ctx, built);
  if (command == "lift-check") return do_lift_check(input, ctx);
  if (command == "invariance") return do_invariance(input, ctx);
  if (command == "selftest") return do_selftest(ctx);
  throw InvalidArgument("unknown command '" + command + "'");
}

// Strict schema check of a stored result.
void validate_result(const std::string& command, const Json& result) {
  if (command == "bounds") {
    json::bound_report_from_json(result);
  } else if (command == "shatter") {
    json::expect_keys(result, {"shatter", "bound_consistency", "class_spec"}, "result");
    json::shatter_report_from_json(section(result, "shatter"));
    json::bound_consistency_from_json(section(result, "bound_consistency"));
    json::gcnn_spec_from_json(section(result, "class_spec"));
  } else if (command == "lift-check") {
    json::lift_report_from_json(result);
  } else if (command == "invariance") {
    json::invariance_report_from_json(result);
  } else if (command == "selftest") {
    json::selftest_report_from_json(result);
  } else {
    throw InvalidArgument("report.command: cannot replay '" + command + "'");
  }
}

Json without_timing(Json result) {
  if (result.contains("shatter")) result["shatter"].erase("wall_time_seconds");
  return result;
}

Outcome do_replay(const std::string& path) {
  const Json report = read_json_file(path, "report");
  json::expect_keys(report, {"tool", "version", "command", "rng", "seed", "trials", "input",
                             "result", "passed", "generated_at"},
                    "report");
  for (const char* key : {"tool", "command", "rng", "seed", "trials", "input", "result", "passed"}) {
    if (!report.contains(key)) throw InvalidArgument(std::string("report: missing field '") + key + "'");
  }
  if (!report.at("command").is_string()) throw InvalidArgument("report.command: expected a string");
  const std::string command = report.at("command").get<std::string>();
  const Json& stored = report.at("result");
  validate_result(command, stored);
  if (report.at("rng") != Json(std::string(Rng::kAlgorithm))) {
    throw InvalidArgument("report.rng: generated with '" + report.at("rng").dump() +
                          "', this build uses '" + std::string(Rng::kAlgorithm) + "'");
  }
  Context again{get_u64(report, "seed", "report"), get_u64(report, "trials", "report"), false};
  const Outcome rerun = execute(command, report.at("input"), again);
  const bool identical = without_timing(rerun.result) == without_timing(stored) &&
                         Json(rerun.passed) == report.at("passed");
  std::ostringstream csv;
  csv << "replayed,identical\n" << command << ',' << (identical ? "true" : "false") << '\n';
  return {{{"replayed", command}, {"identical", identical}}, identical, csv.str()};
}

void write_text(const std::optional<std::string>& path, const std::string& text, std::ostream& out) {
  if (!path) {
    out << text;
    return;
  }
  std::ofstream f(*path, std::ios::trunc);
  if (!f) throw InvalidArgument("cannot write '" + *path + "'");
  f << text;
  if (!f) throw InvalidArgument("failed writing '" + *path + "'");
}

Json input_for(const RunConfig& config) {
  if (config.command == "selftest") return nullptr;
  if (config.command == "shatter") {
    const int sources = (config.instance_path ? 1 : 0) + (config.group ? 1 : 0) + (config.spec_path ? 1 : 0);
    if (sources != 1) {
      throw InvalidArgument("shatter: give exactly one of --group, --instance or --spec");
    }
    if (config.instance_path) {
      return {{"shatter", {{"instance", read_json_file(*config.instance_path, "instance file")}}}};
    }
    if (config.group) {
      const Json desc = json::to_json(GroupDescriptor::parse(*config.group));
      if (config.blocks == 1) {
        return {{"shatter", {{"construction", "interval-indicator"}, {"group", desc}, {"A", 0.0}, {"B", 1.0}}}};
      }
      return {{"shatter", {{"construction", "disjoint-intervals"}, {"group", desc}, {"blocks", config.blocks}}}};
    }
  }
  if (!config.spec_path) throw InvalidArgument(config.command + ": --spec is required");
  Json spec = read_json_file(*config.spec_path, "spec file");
  if (!spec.is_object()) throw InvalidArgument(*config.spec_path + ": expected a JSON object");
  if (config.constants) {
    if (config.command != "bounds") throw InvalidArgument("--constants only applies to bounds");
    spec["constants"] = {{"c", config.constants->c}, {"C", config.constants->C}};
  }
  return spec;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.format != "json" && config.format != "csv") {
      throw InvalidArgument("--format must be json or csv");
    }
    if (config.emit_instance_path && config.command != "shatter") {
      throw InvalidArgument("--emit-instance only applies to shatter");
    }
    const Context ctx{config.seed, config.trials, config.timestamp};
    Outcome outcome;
    Json input;
    std::optional<ShatterInstance> built;
    if (config.command == "replay") {
      if (!config.report_path) throw InvalidArgument("replay: report file required");
      outcome = do_replay(*config.report_path);
    } else {
      input = input_for(config);
      outcome = execute(config.command, input, ctx, &built);
    }

    std::string text;
    if (config.format == "csv") {
      text = outcome.csv;
    } else {
      Json report = {{"tool", "gcnnvc"},
                     {"version", kVersion},
                     {"command", config.command},
                     {"rng", std::string(Rng::kAlgorithm)},
                     {"seed", config.seed},
                     {"trials", config.trials},
                     {"input", input},
                     {"result", outcome.result},
                     {"passed", outcome.passed}};
      if (config.timestamp) report["generated_at"] = timestamp_utc();
      text = report.dump(2) + "\n";
    }
    std::string instance_text;
    if (config.emit_instance_path) instance_text = json::to_json(*built).dump() + "\n";

    if (config.emit_instance_path) write_text(config.emit_instance_path, instance_text, out);
    write_text(config.out_path, text, out);
    if (!outcome.passed) {
      err << "gcnnvc " << config.command << ": verification failed\n";
      return kVerificationFailed;
    }
    return kOk;
  } catch (const std::exception& e) {
    err << "gcnnvc " << config.command << ": " << e.what() << '\n';
    return kUsage;
  }
}

int main_with_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounds, constructions and shattering checks for group-convolutional networks",
               "gcnnvc"};
  app.require_subcommand(1);
  RunConfig config;
  std::string constants;

  auto common = [&](CLI::App* sub, bool with_spec) {
    if (with_spec) sub->add_option("--spec", config.spec_path, "JSON spec file");
    sub->add_option("--seed", config.seed, "Seed for every random draw");
    sub->add_option("--trials", config.trials, "Random trials")->check(CLI::PositiveNumber);
    sub->add_option("--format", config.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", config.out_path, "Write the report here instead of stdout");
    sub->add_flag_callback("--no-timestamp", [&] { config.timestamp = false; },
                  "Omit wall-clock fields");
  };

  auto* bounds = app.add_subcommand("bounds", "Upper-bound report for an architecture");
  common(bounds, true);
  bounds->add_option("--constants", constants, "Sandwich constants as c,C");

  auto* shatter = app.add_subcommand("shatter", "Build and verify a shattering instance");
  common(shatter, true);
  shatter->add_option("--group", config.group, "Group descriptor, e.g. cyclic:8");
  shatter->add_option("--blocks", config.blocks, "Disjoint interval blocks")->check(CLI::PositiveNumber);
  shatter->add_option("--instance", config.instance_path, "Instance JSON to verify");
  shatter->add_option("--emit-instance", config.emit_instance_path, "Write the instance JSON here");

  auto* lift = app.add_subcommand("lift-check", "Compare a lifted DNN with its GCNN");
  common(lift, true);
  auto* invariance = app.add_subcommand("invariance", "Check invariance under the group action");
  common(invariance, true);
  auto* selftest = app.add_subcommand("selftest", "Run the acceptance corpus");
  common(selftest, false);
  auto* replay = app.add_subcommand("replay", "Re-read a report and rerun it");
  common(replay, false);
  replay->add_option("report", config.report_path, "Report JSON written by gcnnvc")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  config.command = app.get_subcommands().front()->get_name();
  if (!constants.empty()) {
    double c = 0.0, C = 0.0;
    char comma = 0;
    std::istringstream in(constants);
    if (!(in >> c >> comma >> C) || comma != ',' || !(in >> std::ws).eof()) {
      err << "gcnnvc: --constants expects c,C\n";
      return kUsage;
    }
    config.constants = SandwichConstants{c, C};
  }
  return run(config, out, err);
}

}  // namespace gcnnvc::cli
