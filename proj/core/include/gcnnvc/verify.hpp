#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "gcnnvc/constructions.hpp"
#include "gcnnvc/network.hpp"

namespace gcnnvc {

/// Outcome of checking every labeling of an instance.
///
/// A labeling is realized when its classifier reproduces it on every function
/// under sign(x) = +1 iff x > 0. Independently of the labeling index, the
/// sign patterns actually produced are collected and counted.
struct ShatterReport {
  std::size_t m = 0;
  std::uint64_t labelings_total = 0;  // 2^m
  std::uint64_t checked = 0;          // == labelings_total unless sampled
  std::uint64_t realized = 0;
  std::uint64_t distinct_patterns = 0;
  bool success = false;
  bool certified = false;  // false for sampled runs
  // Largest distance by which an output lies on the wrong side of the threshold.
  double max_margin_violation = 0.0;
  // Smallest signed distance to the threshold (positive on the correct side).
  double min_margin = 0.0;
  std::vector<std::uint64_t> failed_labelings;  // first kMaxListed, ascending
  Construction provenance = Construction::custom;
  double wall_time_seconds = 0.0;

  static constexpr std::size_t kMaxListed = 16;
};

struct VerifyOptions {
  // Above kExhaustiveLimit functions, sample labelings instead of refusing.
  bool allow_sampling = false;
  std::uint64_t samples = 4096;
  std::uint64_t seed = 0;
  // 0: hardware concurrency. GCNNVC_THREADS caps it either way.
  std::size_t threads = 0;
};

inline constexpr std::size_t kExhaustiveLimit = 20;

// ResourceLimit when m > 20 and sampling is not allowed.
ShatterReport verify_shattering(const ShatterInstance& inst, const VerifyOptions& options = {});

// Number of worker threads after applying GCNNVC_THREADS.
std::size_t verifier_threads(std::size_t requested);

struct InvarianceReport {
  std::size_t trials = 0;
  double max_abs_deviation = 0.0;
  double max_rel_deviation = 0.0;  // |h(a o f) - h(f)| / (1 + |h(f)|)
  bool passed = false;             // max_rel_deviation <= 1e-9
};

// Random signals (and random elements unless `element` is given) on a closed
// group. UnsupportedOperation for grid translations.
InvarianceReport verify_invariance(const GcnnSpec& spec, const GcnnParams& params,
                                   const KernelBasis& basis, const DiscretizedGroup& g,
                                   std::size_t trials, std::uint64_t seed,
                                   std::optional<Element> element = std::nullopt);

struct LiftReport {
  std::size_t trials = 0;
  double max_residual = 0.0;
  double max_rel_residual = 0.0;  // residual / (1 + |sum of DNN outputs|)
};

// Compares the GCNN against the sum of DNN outputs over all elements and
// output units, computed directly from dnn_forward. Reports the residual
// without judging it.
LiftReport verify_lift_equality(const DnnNetwork& dnn, const GcnnNetwork& gcnn,
                                const DiscretizedGroup& g, std::size_t trials, std::uint64_t seed);

struct BoundConsistency {
  std::size_t m = 0;
  std::uint64_t vc_upper = 0;
  bool holds = false;
};

// Checks inst.m <= vc_upper_by_search(spec). `spec` must contain every
// classifier of the instance (same r, depth and input width, widths at least
// the instance's); InvalidArgument otherwise.
BoundConsistency verify_bound_consistency(const ShatterInstance& inst, const GcnnSpec& spec);

}  // namespace gcnnvc
