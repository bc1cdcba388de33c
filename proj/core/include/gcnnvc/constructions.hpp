#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "gcnnvc/group.hpp"
#include "gcnnvc/network.hpp"
#include "gcnnvc/signal.hpp"

namespace gcnnvc {

struct DnnNetwork {
  DnnSpec spec;
  DnnParams params;

  std::vector<double> operator()(std::span<const double> x) const {
    return dnn_forward(spec, params, x);
  }
  friend bool operator==(const DnnNetwork&, const DnnNetwork&) = default;
};

struct GcnnNetwork {
  GcnnSpec spec;
  GcnnParams params;
  KernelBasis basis;

  double operator()(const DiscretizedGroup& g, const Signal& f) const {
    return gcnn_forward(spec, params, basis, g, f);
  }
};

/// Shallow ReLU approximation of the indicator of [a, b]:
///
///   (1/eps) [ (x-(a-eps))+ - (x-a)+ - (x-b)+ + (x-(b+eps))+ ]
///
/// Four hidden units, widths (1, 4, 1). Equals 1 on [a, b], 0 outside
/// (a-eps, b+eps) and is linear on the two ramps. The output unit carries the
/// usual ReLU, which is inactive because the value is never negative.
DnnNetwork indicator_net(double a, double b, double eps);

/// GCNN with the same widths, k = 1 and the identity-indicator basis whose
/// weights are copied from the DNN. For every signal f,
///   gcnn(f) = sum_i sum_j dnn(f(g_j))_i.
GcnnNetwork lift_dnn_to_gcnn(const DnnSpec& spec, const DnnParams& params,
                             const DiscretizedGroup& g);
inline GcnnNetwork lift_dnn_to_gcnn(const DnnNetwork& net, const DiscretizedGroup& g) {
  return lift_dnn_to_gcnn(net.spec, net.params, g);
}

/// Runs several networks side by side on a shared input: the first layers are
/// stacked, later layers block-diagonal. Outputs are concatenated, so after
/// global pooling the result is the sum of the parts. Parts must share input
/// dimension and depth.
DnnNetwork juxtapose(std::span<const DnnNetwork> parts);

/// Appends identity ReLU layers until `depth` is reached. Exact whenever the
/// network's outputs are non-negative, which holds for every network here.
DnnNetwork pad_depth(const DnnNetwork& net, std::size_t depth);

/// The i-th subset of {1..m}, i in [1, 2^m]: element t+1 belongs to it iff
/// bit t of i-1 is set.
std::vector<std::size_t> subset_index(std::uint64_t i, std::size_t m);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Outward-rounded interval bounds of every output over an input box.
std::vector<Interval> propagate_intervals(const DnnSpec& spec, const DnnParams& params,
                                          std::span<const Interval> box);

enum class Construction { interval_indicator, disjoint_intervals, hypercube_lift, custom };

std::string_view to_string(Construction c);
Construction construction_from_string(std::string_view s);

/// A family of scalar-output DNNs covering a contiguous range of functions:
/// family[q] realizes the block-local labeling q.
struct ClassifierBlock {
  std::size_t first = 0;
  std::size_t count = 0;
  DnnSpec spec;
  std::vector<DnnParams> family;

  // Interval blocks: [lo, hi], grid step delta, points y_1..y_d.
  double lo = 0.0;
  double hi = 0.0;
  double delta = 0.0;
  std::vector<double> points;

  // Hypercube blocks: the certified bound T used by family[q].
  std::vector<double> output_bounds;
};

/// Input functions plus a classifier for each of their 2^m labelings.
///
/// Labeling q assigns +1 to function j iff bit j of q is set (enumeration in
/// integer order). The classifier for q is sign(h_q(f) - threshold), where h_q
/// is the lift of the juxtaposition of each block's family member selected by
/// the bits of q in that block's range.
struct ShatterInstance {
  DiscretizedGroup group;
  std::vector<Signal> functions;
  std::vector<ClassifierBlock> blocks;
  double threshold = 0.0;
  Construction provenance = Construction::custom;

  std::size_t size() const { return functions.size(); }
  std::uint64_t labelings() const { return std::uint64_t{1} << size(); }

  DnnNetwork classifier_dnn(std::uint64_t labeling) const;
  GcnnNetwork classifier(std::uint64_t labeling) const;
  // The dense architecture H(1, widths, r) containing every classifier.
  GcnnSpec class_spec() const;
  // InvalidArgument when blocks do not tile the functions or families have
  // the wrong size or shape.
  void check() const;
};

/// floor(log2 r) functions into [A, B] shattered by lifted indicator nets,
/// with classifiers that vanish on every function taking values outside
/// [A, B]. Closed groups, r >= 2.
///
/// Each window is indicator_net(y - delta/2, y + delta/2, delta/2) with its
/// output weights scaled by 1 + 2^-23 and output bias 2^-24, so on the
/// instance's functions every classifier returns exactly 0 or slightly more
/// than 1. InvalidArgument when B - A is too small next to |A| + |B| for that
/// guard to absorb rounding.
ShatterInstance build_shatter_instance(const DiscretizedGroup& g, double A, double B);

/// W disjoint copies of the interval construction on
/// [(2m+5) i, (2m+5) i + m + 2], i = 1..W, m = floor(log2 r), realized as one
/// GCNN per labeling with widths (1, 4W, W).
ShatterInstance build_composite_instance(const DiscretizedGroup& g, std::size_t blocks);

/// Points in R^{m0} together with a DNN family shattering them: for labeling
/// q, sign(nets[q](points[j]) - thresholds[q]) is +1 iff bit j of q is set.
struct ShatteringFamily {
  std::vector<std::vector<double>> points;
  DnnSpec spec;
  std::vector<DnnParams> nets;
  std::vector<double> thresholds;

  // InvalidArgument unless shapes agree and every labeling is realized.
  void check() const;
};

/// Depth-2 family sigma(w.y - c) -> identity, with w the signed sum of the
/// points. Works for points in general position with few members (e.g. 2 or 3
/// points); InvalidArgument if some labeling is not separated this way.
ShatteringFamily linear_threshold_family(std::vector<std::vector<double>> points);

/// Indicator of the hypercube [A, B]^{m0}: mean of per-coordinate
/// indicator_net(A, B, 0.5), widths (m0, 4 m0, 1).
DnnNetwork hypercube_indicator(std::size_t m0, double A, double B);

/// Lifts a shattering family of points to functions on G^r: f_i(e) = y_i and
/// f_i(g) = centre of [A, B]^{m0} elsewhere. Each classifier is
/// sigma(h - (T - b) I - b) with I the hypercube indicator and T a certified
/// bound on |h| over the cube; classifiers vanish on cube-valued signals.
/// Requires A > max ||y||_inf + 1 and B > A.
ShatterInstance build_hypercube_lift(const ShatteringFamily& family, const DiscretizedGroup& g,
                                     double A, double B);

}  // namespace gcnnvc
