#include "gcnnvc/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>
#include <unordered_set>

#include "gcnnvc/bounds.hpp"
#include "gcnnvc/errors.hpp"
#include "gcnnvc/rng.hpp"

namespace gcnnvc {

std::size_t verifier_threads(std::size_t requested) {
  std::size_t n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GCNNVC_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<std::size_t>(n, cap);
  }
  return n;
}

namespace {

struct LabelingResult {
  std::uint64_t pattern = 0;  // bit j set iff the classifier says +1 on f_j
  double worst_violation = 0.0;
  double min_margin = std::numeric_limits<double>::infinity();
};

LabelingResult evaluate_labeling(const ShatterInstance& inst, std::uint64_t labeling) {
  LabelingResult res;
  const GcnnNetwork net = inst.classifier(labeling);
  for (std::size_t j = 0; j < inst.size(); ++j) {
    const double score = net(inst.group, inst.functions[j]) - inst.threshold;
    const bool positive = score > 0.0;
    const bool wanted = (labeling >> j) & 1u;
    if (positive) res.pattern |= std::uint64_t{1} << j;
    const double margin = wanted ? score : -score;
    res.min_margin = std::min(res.min_margin, margin);
    if (positive != wanted) res.worst_violation = std::max(res.worst_violation, std::abs(score));
  }
  return res;
}

}  // namespace

ShatterReport verify_shattering(const ShatterInstance& inst, const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  inst.check();
  ShatterReport report;
  report.m = inst.size();
  report.provenance = inst.provenance;
  report.labelings_total = inst.labelings();

  if (report.m == 0) {
    report.checked = report.realized = report.distinct_patterns = 1;
    report.success = report.certified = true;
    return report;
  }

  std::vector<std::uint64_t> labelings;
  if (report.m <= kExhaustiveLimit) {
    labelings.resize(report.labelings_total);
    for (std::uint64_t q = 0; q < report.labelings_total; ++q) labelings[q] = q;
    report.certified = true;
  } else if (options.allow_sampling) {
    Rng rng(options.seed);
    labelings.resize(options.samples);
    for (auto& q : labelings) q = rng.below(report.labelings_total);
    std::sort(labelings.begin(), labelings.end());
    labelings.erase(std::unique(labelings.begin(), labelings.end()), labelings.end());
  } else {
    throw ResourceLimit("verify_shattering: " + std::to_string(report.m) +
                        " functions exceed the exhaustive budget of " +
                        std::to_string(kExhaustiveLimit));
  }

  std::vector<LabelingResult> results(labelings.size());
  const std::size_t workers = std::min(verifier_threads(options.threads), labelings.size());
  auto work = [&](std::size_t t) {
    for (std::size_t idx = t; idx < labelings.size(); idx += workers) {
      results[idx] = evaluate_labeling(inst, labelings[idx]);
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work, t);
  }

  std::unordered_set<std::uint64_t> patterns;
  report.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t idx = 0; idx < labelings.size(); ++idx) {
    const auto& res = results[idx];
    patterns.insert(res.pattern);
    report.min_margin = std::min(report.min_margin, res.min_margin);
    report.max_margin_violation = std::max(report.max_margin_violation, res.worst_violation);
    if (res.pattern == labelings[idx]) {
      ++report.realized;
    } else if (report.failed_labelings.size() < ShatterReport::kMaxListed) {
      report.failed_labelings.push_back(labelings[idx]);
    }
  }
  report.checked = labelings.size();
  report.distinct_patterns = patterns.size();
  report.success = report.realized == report.checked &&
                   report.distinct_patterns == report.checked &&
                   report.checked == report.labelings_total;
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

InvarianceReport verify_invariance(const GcnnSpec& spec, const GcnnParams& params,
                                   const KernelBasis& basis, const DiscretizedGroup& g,
                                   std::size_t trials, std::uint64_t seed,
                                   std::optional<Element> element) {
  if (!g.closed()) {
    throw UnsupportedOperation("verify_invariance: " + g.label() +
                               " has no group action (zero-padded grid)");
  }
  if (element && *element >= g.resolution()) {
    throw InvalidArgument("verify_invariance: element out of range");
  }
  InvarianceReport report;
  report.trials = trials;
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng local = rng.fork();
    const Signal f = random_signal(spec.widths.front(), g.resolution(), local);
    const Element a = element ? *element : local.below(g.resolution());
    const double h = gcnn_forward(spec, params, basis, g, f);
    const double ha = gcnn_forward(spec, params, basis, g, apply_left_action(g, a, f));
    const double dev = std::abs(ha - h);
    report.max_abs_deviation = std::max(report.max_abs_deviation, dev);
    report.max_rel_deviation = std::max(report.max_rel_deviation, dev / (1.0 + std::abs(h)));
  }
  report.passed = report.max_rel_deviation <= 1e-9;
  return report;
}

LiftReport verify_lift_equality(const DnnNetwork& dnn, const GcnnNetwork& gcnn,
                                const DiscretizedGroup& g, std::size_t trials,
                                std::uint64_t seed) {
  LiftReport report;
  report.trials = trials;
  Rng rng(seed);
  const std::size_t m0 = dnn.spec.widths.front();
  const std::size_t r = g.resolution();
  for (std::size_t t = 0; t < trials; ++t) {
    Rng local = rng.fork();
    const Signal f = random_signal(m0, r, local);
    std::vector<std::vector<double>> outputs(r);
    for (Element j = 0; j < r; ++j) outputs[j] = dnn_forward(dnn.spec, dnn.params, f.value_at(j));
    double lhs = 0.0;
    for (std::size_t i = 0; i < dnn.spec.widths.back(); ++i) {
      for (Element j = 0; j < r; ++j) lhs += outputs[j][i];
    }
    const double rhs = gcnn(g, f);
    const double residual = std::abs(lhs - rhs);
    report.max_residual = std::max(report.max_residual, residual);
    report.max_rel_residual = std::max(report.max_rel_residual, residual / (1.0 + std::abs(lhs)));
  }
  return report;
}

BoundConsistency verify_bound_consistency(const ShatterInstance& inst, const GcnnSpec& spec) {
  spec.validate();
  const GcnnSpec need = inst.class_spec();
  bool contains = spec.resolution == need.resolution && spec.depth() == need.depth() &&
                  spec.widths.front() == need.widths.front() && spec.k >= need.k;
  for (std::size_t l = 1; contains && l < need.widths.size(); ++l) {
    contains = spec.widths[l] >= need.widths[l];
  }
  if (!contains) {
    throw InvalidArgument("verify_bound_consistency: the class does not contain the instance "
                          "networks (needs r, depth and input width equal, widths at least the "
                          "instance's)");
  }
  BoundConsistency out;
  out.m = inst.size();
  out.vc_upper = vc_upper_by_search(spec);
  out.holds = out.m <= out.vc_upper;
  return out;
}

}  // namespace gcnnvc
