#include "gcnnvc/constructions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "gcnnvc/errors.hpp"

namespace gcnnvc {

namespace {

std::size_t floor_log2(std::size_t r) { return static_cast<std::size_t>(std::bit_width(r)) - 1; }

// Largest m for which labelings fit a 64-bit pattern.
constexpr std::size_t kMaxFunctions = 63;

// Output bias of the interval windows, see interval_block.
constexpr double kWindowGuard = 0x1p-24;

}  // namespace

DnnNetwork indicator_net(double a, double b, double eps) {
  if (!(a < b)) throw InvalidArgument("indicator_net: need a < b");
  if (!(eps > 0.0)) throw InvalidArgument("indicator_net: need eps > 0");
  DnnNetwork net{DnnSpec{{1, 4, 1}}, {}};
  net.params = DnnParams::zeros(net.spec);
  auto& hidden = net.params.layers[0];
  hidden.weights = {1.0, 1.0, 1.0, 1.0};
  hidden.biases = {a - eps, a, b, b + eps};
  auto& out = net.params.layers[1];
  const double s = 1.0 / eps;
  out.weights = {s, -s, -s, s};
  out.biases = {0.0};
  return net;
}

GcnnNetwork lift_dnn_to_gcnn(const DnnSpec& spec, const DnnParams& params,
                             const DiscretizedGroup& g) {
  params.check(spec);
  GcnnSpec gspec{1, spec.widths, g.resolution()};
  GcnnParams gparams = GcnnParams::zeros(gspec);
  for (std::size_t l = 0; l < params.layers.size(); ++l) {
    const auto& src = params.layers[l];
    auto& dst = gparams.layers[l];
    for (std::size_t i = 0; i < src.in; ++i) {
      for (std::size_t j = 0; j < src.out; ++j) dst.kernel_weights(i, j)[0] = src.weight(j, i);
    }
    dst.biases = src.biases;
  }
  return GcnnNetwork{std::move(gspec), std::move(gparams), identity_indicator_basis(g)};
}

DnnNetwork juxtapose(std::span<const DnnNetwork> parts) {
  if (parts.empty()) throw InvalidArgument("juxtapose: no networks");
  const auto& first = parts.front().spec;
  first.validate();
  const std::size_t depth = first.depth();
  std::vector<std::size_t> widths(depth + 1, 0);
  widths[0] = first.widths[0];
  for (const auto& p : parts) {
    p.params.check(p.spec);
    if (p.spec.depth() != depth || p.spec.widths[0] != widths[0]) {
      throw InvalidArgument("juxtapose: networks must share input dimension and depth");
    }
    for (std::size_t l = 1; l <= depth; ++l) widths[l] += p.spec.widths[l];
  }
  DnnNetwork out{DnnSpec{widths}, {}};
  out.params = DnnParams::zeros(out.spec);

  std::vector<std::size_t> row_offset(depth + 1, 0);  // per layer, current block offset
  for (const auto& p : parts) {
    for (std::size_t l = 0; l < depth; ++l) {
      const auto& src = p.params.layers[l];
      auto& dst = out.params.layers[l];
      // Layer 0 reads the shared input; later layers read their own block.
      const std::size_t col0 = l == 0 ? 0 : row_offset[l];
      const std::size_t row0 = row_offset[l + 1];
      for (std::size_t j = 0; j < src.out; ++j) {
        for (std::size_t i = 0; i < src.in; ++i) dst.weight(row0 + j, col0 + i) = src.weight(j, i);
        dst.biases[row0 + j] = src.biases[j];
      }
    }
    for (std::size_t l = 1; l <= depth; ++l) row_offset[l] += p.spec.widths[l];
  }
  return out;
}

DnnNetwork pad_depth(const DnnNetwork& net, std::size_t depth) {
  net.params.check(net.spec);
  if (depth < net.spec.depth()) throw InvalidArgument("pad_depth: network is already deeper");
  DnnNetwork out = net;
  const std::size_t width = net.spec.widths.back();
  while (out.spec.depth() < depth) {
    out.spec.widths.push_back(width);
    DnnLayer layer{width, width, std::vector<double>(width * width, 0.0),
                   std::vector<double>(width, 0.0)};
    for (std::size_t u = 0; u < width; ++u) layer.weight(u, u) = 1.0;
    out.params.layers.push_back(std::move(layer));
  }
  return out;
}

std::vector<std::size_t> subset_index(std::uint64_t i, std::size_t m) {
  if (m > kMaxFunctions) throw InvalidArgument("subset_index: m too large");
  if (i < 1 || i > (std::uint64_t{1} << m)) {
    throw InvalidArgument("subset_index: i must lie in [1, 2^m]");
  }
  std::vector<std::size_t> subset;
  const std::uint64_t bits = i - 1;
  for (std::size_t t = 0; t < m; ++t) {
    if ((bits >> t) & 1u) subset.push_back(t + 1);
  }
  return subset;
}

std::vector<Interval> propagate_intervals(const DnnSpec& spec, const DnnParams& params,
                                          std::span<const Interval> box) {
  params.check(spec);
  if (box.size() != spec.widths[0]) throw InvalidArgument("propagate_intervals: box dimension");
  constexpr double kRel = 8.0 * std::numeric_limits<double>::epsilon();
  std::vector<Interval> cur(box.begin(), box.end());
  for (const auto& layer : params.layers) {
    std::vector<Interval> next(layer.out);
    for (std::size_t j = 0; j < layer.out; ++j) {
      double lo = 0.0, hi = 0.0, mag = std::abs(layer.biases[j]);
      for (std::size_t i = 0; i < layer.in; ++i) {
        const double w = layer.weight(j, i);
        if (w >= 0.0) {
          lo += w * cur[i].lo;
          hi += w * cur[i].hi;
        } else {
          lo += w * cur[i].hi;
          hi += w * cur[i].lo;
        }
        mag += std::abs(w) * std::max(std::abs(cur[i].lo), std::abs(cur[i].hi));
      }
      // Accumulated rounding is below (in+1) eps * mag; widen by more than that.
      const double slack = kRel * static_cast<double>(layer.in + 1) * mag +
                           std::numeric_limits<double>::denorm_min();
      lo = lo - layer.biases[j] - slack;
      hi = hi - layer.biases[j] + slack;
      next[j] = {relu(lo), relu(hi)};
    }
    cur = std::move(next);
  }
  return cur;
}

std::string_view to_string(Construction c) {
  switch (c) {
    case Construction::interval_indicator:
      return "interval-indicator";
    case Construction::disjoint_intervals:
      return "disjoint-intervals";
    case Construction::hypercube_lift:
      return "hypercube-lift";
    case Construction::custom:
      break;
  }
  return "custom";
}

Construction construction_from_string(std::string_view s) {
  for (auto c : {Construction::interval_indicator, Construction::disjoint_intervals,
                 Construction::hypercube_lift, Construction::custom}) {
    if (to_string(c) == s) return c;
  }
  throw InvalidArgument("unknown construction '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------

DnnNetwork ShatterInstance::classifier_dnn(std::uint64_t labeling) const {
  if (labeling >= labelings()) throw InvalidArgument("classifier: labeling out of range");
  std::vector<DnnNetwork> parts;
  parts.reserve(blocks.size());
  for (const auto& block : blocks) {
    const std::uint64_t mask = (std::uint64_t{1} << block.count) - 1;
    const std::uint64_t local = (labeling >> block.first) & mask;
    parts.push_back(DnnNetwork{block.spec, block.family.at(local)});
  }
  if (parts.size() == 1) return std::move(parts.front());
  return juxtapose(parts);
}

GcnnNetwork ShatterInstance::classifier(std::uint64_t labeling) const {
  return lift_dnn_to_gcnn(classifier_dnn(labeling), group);
}

GcnnSpec ShatterInstance::class_spec() const {
  if (blocks.empty()) throw InvalidArgument("ShatterInstance: no classifier blocks");
  std::vector<std::size_t> widths = blocks.front().spec.widths;
  for (std::size_t b = 1; b < blocks.size(); ++b) {
    for (std::size_t l = 1; l < widths.size(); ++l) widths[l] += blocks[b].spec.widths.at(l);
  }
  return GcnnSpec{1, std::move(widths), group.resolution()};
}

void ShatterInstance::check() const {
  if (size() > kMaxFunctions) throw InvalidArgument("ShatterInstance: more than 63 functions");
  std::size_t next = 0;
  for (const auto& f : functions) {
    if (f.resolution() != group.resolution()) {
      throw InvalidArgument("ShatterInstance: function resolution does not match the group");
    }
  }
  for (const auto& block : blocks) {
    if (block.first != next) throw InvalidArgument("ShatterInstance: blocks must tile functions");
    next += block.count;
    if (block.family.size() != (std::size_t{1} << block.count)) {
      throw InvalidArgument("ShatterInstance: block family must have 2^count members");
    }
    for (const auto& p : block.family) p.check(block.spec);
    if (block.spec.widths.front() != blocks.front().spec.widths.front() ||
        block.spec.depth() != blocks.front().spec.depth()) {
      throw InvalidArgument("ShatterInstance: blocks must share input dimension and depth");
    }
    for (const auto& f : functions) {
      if (f.channels() != block.spec.widths.front()) {
        throw InvalidArgument("ShatterInstance: function channels do not match the networks");
      }
    }
  }
  if (next != size()) throw InvalidArgument("ShatterInstance: blocks must tile functions");
}

// ---------------------------------------------------------------------------

namespace {

// One interval block: functions f_1..f_m appended to `functions`, classifier
// family indexed by labeling.
ClassifierBlock interval_block(const DiscretizedGroup& g, double A, double B, std::size_t first,
                               std::vector<Signal>& functions) {
  const std::size_t r = g.resolution();
  const std::size_t m = floor_log2(r);
  const std::size_t d = std::size_t{1} << m;
  ClassifierBlock block;
  block.first = first;
  block.count = m;
  block.spec = DnnSpec{{1, 4, 1}};
  block.lo = A;
  block.hi = B;
  block.delta = (B - A) / (2.0 * static_cast<double>(d + 2));
  // Rounding residue of a window output is a few ulps of |x| over delta.
  const double residue = 64.0 * std::numeric_limits<double>::epsilon() *
                         (std::abs(A) + std::abs(B)) / block.delta;
  if (!(residue < kWindowGuard / 4.0)) {
    throw InvalidArgument("interval block: [A, B] is too narrow for its magnitude");
  }
  block.points.resize(d);
  for (std::size_t i = 1; i <= d; ++i) block.points[i - 1] = A + static_cast<double>(i) * block.delta;
  const double filler = B - block.delta;

  // f_j(g_i) = y_i if j is in S_i, else the filler; S_i from subset_index.
  for (std::size_t j = 1; j <= m; ++j) {
    std::vector<double> values(r, filler);
    for (std::size_t i = 1; i <= d; ++i) {
      const bool member = ((i - 1) >> (j - 1)) & 1u;
      if (member) values[i - 1] = block.points[i - 1];
    }
    functions.emplace_back(std::move(values));
  }

  // Labeling q has positive set S_{q+1}, realized by the window around y_{q+1}.
  block.family.reserve(d);
  for (std::size_t q = 0; q < d; ++q) {
    const double y = block.points[q];
    const double half = block.delta / 2.0;
    DnnNetwork window = indicator_net(y - half, y + half, half);
    if (window.params.layers.front().weights.size() != 4) {
      throw std::logic_error("interval block: window net must have 4 first-layer weights");
    }
    // Right of the window the four ramps cancel only up to rounding. A tiny
    // output bias pushes that residue below zero so the ReLU returns exactly
    // 0, and the matching weight scale keeps the plateau at 1 + guard.
    auto& out = window.params.layers.back();
    for (auto& w : out.weights) w *= 1.0 + 2.0 * kWindowGuard;
    out.biases[0] = kWindowGuard;
    block.family.push_back(std::move(window.params));
  }
  return block;
}

}  // namespace

ShatterInstance build_shatter_instance(const DiscretizedGroup& g, double A, double B) {
  if (!(A < B)) throw InvalidArgument("build_shatter_instance: need A < B");
  if (!g.closed()) {
    throw UnsupportedOperation("build_shatter_instance: " + g.label() + " is not a closed group");
  }
  if (g.resolution() < 2) throw InvalidArgument("build_shatter_instance: need r >= 2");
  ShatterInstance inst{g, {}, {}, 0.5, Construction::interval_indicator};
  inst.blocks.push_back(interval_block(g, A, B, 0, inst.functions));
  inst.check();
  return inst;
}

ShatterInstance build_composite_instance(const DiscretizedGroup& g, std::size_t blocks) {
  if (blocks == 0) throw InvalidArgument("build_composite_instance: need at least one block");
  if (!g.closed()) {
    throw UnsupportedOperation("build_composite_instance: " + g.label() +
                               " is not a closed group");
  }
  if (g.resolution() < 2) throw InvalidArgument("build_composite_instance: need r >= 2");
  const std::size_t m = floor_log2(g.resolution());
  if (blocks * m > kMaxFunctions) {
    throw ResourceLimit("build_composite_instance: " + std::to_string(blocks * m) +
                        " functions exceed the 63-function labeling range");
  }
  ShatterInstance inst{g, {}, {}, 0.5, Construction::disjoint_intervals};
  const double stride = static_cast<double>(2 * m + 5);
  for (std::size_t i = 1; i <= blocks; ++i) {
    const double A = stride * static_cast<double>(i);
    const double B = A + static_cast<double>(m + 2);
    inst.blocks.push_back(interval_block(g, A, B, (i - 1) * m, inst.functions));
  }
  inst.check();
  return inst;
}

// ---------------------------------------------------------------------------

void ShatteringFamily::check() const {
  if (points.empty()) throw InvalidArgument("ShatteringFamily: no points");
  if (points.size() > 20) throw InvalidArgument("ShatteringFamily: at most 20 points");
  spec.validate();
  const std::size_t m0 = spec.widths.front();
  if (spec.widths.back() != 1) throw InvalidArgument("ShatteringFamily: nets must be scalar");
  for (const auto& p : points) {
    if (p.size() != m0) throw InvalidArgument("ShatteringFamily: point dimension mismatch");
  }
  const std::size_t d = std::size_t{1} << points.size();
  if (nets.size() != d || thresholds.size() != d) {
    throw InvalidArgument("ShatteringFamily: need one net and threshold per labeling");
  }
  for (std::size_t q = 0; q < d; ++q) {
    for (std::size_t j = 0; j < points.size(); ++j) {
      const bool want = (q >> j) & 1u;
      const bool got = dnn_forward(spec, nets[q], points[j])[0] - thresholds[q] > 0.0;
      if (want != got) {
        throw InvalidArgument("ShatteringFamily: labeling " + std::to_string(q) +
                              " is not realized on point " + std::to_string(j));
      }
    }
  }
}

ShatteringFamily linear_threshold_family(std::vector<std::vector<double>> points) {
  if (points.empty() || points.size() > 20) {
    throw InvalidArgument("linear_threshold_family: need 1..20 points");
  }
  const std::size_t m0 = points.front().size();
  if (m0 == 0) throw InvalidArgument("linear_threshold_family: empty points");
  ShatteringFamily fam;
  fam.spec = DnnSpec{{m0, 1, 1}};
  const std::size_t m = points.size();
  for (std::size_t q = 0; q < (std::size_t{1} << m); ++q) {
    std::vector<double> w(m0, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      if (points[j].size() != m0) throw InvalidArgument("linear_threshold_family: dimensions");
      const double sign = ((q >> j) & 1u) ? 1.0 : -1.0;
      for (std::size_t c = 0; c < m0; ++c) w[c] += sign * points[j][c];
    }
    double pos_min = std::numeric_limits<double>::infinity();
    double neg_max = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < m; ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < m0; ++c) s += w[c] * points[j][c];
      if ((q >> j) & 1u) {
        pos_min = std::min(pos_min, s);
      } else {
        neg_max = std::max(neg_max, s);
      }
    }
    double cut;
    if (std::isinf(neg_max)) {
      cut = pos_min - 1.0;
    } else if (std::isinf(pos_min)) {
      cut = neg_max + 1.0;
    } else if (pos_min > neg_max) {
      cut = 0.5 * (pos_min + neg_max);
    } else {
      throw InvalidArgument("linear_threshold_family: labeling " + std::to_string(q) +
                            " is not separated by the signed-sum direction");
    }
    DnnParams p = DnnParams::zeros(fam.spec);
    p.layers[0].weights = w;
    p.layers[0].biases = {cut};
    p.layers[1].weights = {1.0};
    fam.nets.push_back(std::move(p));
    fam.thresholds.push_back(std::isinf(pos_min) ? 0.5 : 0.5 * (pos_min - cut));
  }
  fam.points = std::move(points);
  fam.check();
  return fam;
}

DnnNetwork hypercube_indicator(std::size_t m0, double A, double B) {
  if (m0 == 0) throw InvalidArgument("hypercube_indicator: dimension must be positive");
  constexpr double eps = 0.5;
  const DnnNetwork unit = indicator_net(A, B, eps);
  DnnNetwork net{DnnSpec{{m0, 4 * m0, 1}}, {}};
  net.params = DnnParams::zeros(net.spec);
  auto& hidden = net.params.layers[0];
  auto& out = net.params.layers[1];
  const double scale = 1.0 / static_cast<double>(m0);
  for (std::size_t c = 0; c < m0; ++c) {
    for (std::size_t t = 0; t < 4; ++t) {
      hidden.weight(4 * c + t, c) = unit.params.layers[0].weights[t];
      hidden.biases[4 * c + t] = unit.params.layers[0].biases[t];
      out.weight(0, 4 * c + t) = scale * unit.params.layers[1].weights[t];
    }
  }
  return net;
}

ShatterInstance build_hypercube_lift(const ShatteringFamily& family, const DiscretizedGroup& g,
                                     double A, double B) {
  family.check();
  double max_norm = 0.0;
  for (const auto& p : family.points) {
    for (double v : p) max_norm = std::max(max_norm, std::abs(v));
  }
  if (!(A > max_norm + 1.0)) {
    throw InvalidArgument("build_hypercube_lift: need A > max ||y||_inf + 1");
  }
  if (!(B > A)) throw InvalidArgument("build_hypercube_lift: need B > A");

  const std::size_t m0 = family.spec.widths.front();
  const std::size_t m = family.points.size();
  const std::size_t depth = std::max<std::size_t>(family.spec.depth(), 2);
  const DnnNetwork cube = pad_depth(hypercube_indicator(m0, A, B), depth);
  const std::vector<Interval> box(m0, Interval{A, B});

  ClassifierBlock block;
  block.first = 0;
  block.count = m;
  block.lo = A;
  block.hi = B;
  for (std::size_t q = 0; q < family.nets.size(); ++q) {
    const DnnNetwork base = pad_depth(DnnNetwork{family.spec, family.nets[q]}, depth);
    const double b = family.thresholds[q];
    const Interval range = propagate_intervals(family.spec, family.nets[q], box).front();
    const double bound = std::max(std::abs(range.lo), std::abs(range.hi));
    // I(y) = 1 on the cube only up to rounding; the slack keeps the final
    // pre-activation strictly negative there.
    const double t_hat = bound + 1e-6 * (1.0 + bound + std::abs(b));

    const DnnNetwork both[] = {base, cube};
    DnnNetwork net = juxtapose(both);
    net.spec.widths.push_back(1);
    net.params.layers.push_back(DnnLayer{2, 1, {1.0, -(t_hat - b)}, {b}});
    net.params.check(net.spec);
    if (q == 0) block.spec = net.spec;
    block.family.push_back(std::move(net.params));
    block.output_bounds.push_back(t_hat);
  }

  ShatterInstance inst{g, {}, {}, 0.0, Construction::hypercube_lift};
  const Element e = g.identity();
  const std::size_t r = g.resolution();
  const double centre = 0.5 * (A + B);
  for (const auto& y : family.points) {
    std::vector<double> values(m0 * r, centre);
    for (std::size_t c = 0; c < m0; ++c) values[c * r + e] = y[c];
    inst.functions.emplace_back(m0, r, std::move(values));
  }
  inst.blocks.push_back(std::move(block));
  inst.check();
  return inst;
}

}  // namespace gcnnvc
