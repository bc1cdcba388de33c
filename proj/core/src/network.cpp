#include "gcnnvc/network.hpp"

#include <cmath>
#include <string>

#include "gcnnvc/errors.hpp"

namespace gcnnvc {

namespace {

void check_widths(const std::vector<std::size_t>& widths, const char* what) {
  if (widths.size() < 2) throw InvalidArgument(std::string(what) + ": need at least one layer");
  for (std::size_t m : widths) {
    if (m == 0) throw InvalidArgument(std::string(what) + ": widths must be positive");
  }
}

void check_finite(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw InvalidArgument(std::string(what) + ": non-finite parameter");
  }
}

}  // namespace

void GcnnSpec::validate() const {
  if (k == 0) throw InvalidArgument("GcnnSpec: k must be at least 1");
  if (resolution == 0) throw InvalidArgument("GcnnSpec: resolution must be positive");
  check_widths(widths, "GcnnSpec");
}

void DnnSpec::validate() const { check_widths(widths, "DnnSpec"); }

GcnnParams GcnnParams::zeros(const GcnnSpec& spec) {
  spec.validate();
  GcnnParams p;
  for (std::size_t l = 0; l < spec.depth(); ++l) {
    const std::size_t in = spec.widths[l], out = spec.widths[l + 1];
    p.layers.push_back({in, out, spec.k, std::vector<double>(in * out * spec.k, 0.0),
                        std::vector<double>(out, 0.0)});
  }
  return p;
}

GcnnParams GcnnParams::random(const GcnnSpec& spec, Rng& rng, double scale) {
  GcnnParams p = zeros(spec);
  for (auto& layer : p.layers) {
    for (double& w : layer.weights) w = rng.uniform(-scale, scale);
    for (double& b : layer.biases) b = rng.uniform(-scale, scale);
  }
  return p;
}

void GcnnParams::check(const GcnnSpec& spec) const {
  spec.validate();
  if (layers.size() != spec.depth()) {
    throw InvalidArgument("GcnnParams: " + std::to_string(layers.size()) + " layers for depth " +
                          std::to_string(spec.depth()));
  }
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& layer = layers[l];
    const std::size_t in = spec.widths[l], out = spec.widths[l + 1];
    if (layer.in != in || layer.out != out || layer.k != spec.k ||
        layer.weights.size() != in * out * spec.k || layer.biases.size() != out) {
      throw InvalidArgument("GcnnParams: layer " + std::to_string(l) + " shape mismatch");
    }
    check_finite(layer.weights, "GcnnParams");
    check_finite(layer.biases, "GcnnParams");
  }
}

DnnParams DnnParams::zeros(const DnnSpec& spec) {
  spec.validate();
  DnnParams p;
  for (std::size_t l = 0; l < spec.depth(); ++l) {
    const std::size_t in = spec.widths[l], out = spec.widths[l + 1];
    p.layers.push_back({in, out, std::vector<double>(in * out, 0.0), std::vector<double>(out, 0.0)});
  }
  return p;
}

DnnParams DnnParams::random(const DnnSpec& spec, Rng& rng, double scale) {
  DnnParams p = zeros(spec);
  for (auto& layer : p.layers) {
    for (double& w : layer.weights) w = rng.uniform(-scale, scale);
    for (double& b : layer.biases) b = rng.uniform(-scale, scale);
  }
  return p;
}

void DnnParams::check(const DnnSpec& spec) const {
  spec.validate();
  if (layers.size() != spec.depth()) {
    throw InvalidArgument("DnnParams: " + std::to_string(layers.size()) + " layers for depth " +
                          std::to_string(spec.depth()));
  }
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& layer = layers[l];
    const std::size_t in = spec.widths[l], out = spec.widths[l + 1];
    if (layer.in != in || layer.out != out || layer.weights.size() != in * out ||
        layer.biases.size() != out) {
      throw InvalidArgument("DnnParams: layer " + std::to_string(l) + " shape mismatch");
    }
    check_finite(layer.weights, "DnnParams");
    check_finite(layer.biases, "DnnParams");
  }
}

std::vector<Signal> gcnn_feature_maps(const GcnnSpec& spec, const GcnnParams& params,
                                      const KernelBasis& basis, const DiscretizedGroup& g,
                                      const Signal& f) {
  params.check(spec);
  if (basis.size() != spec.k) {
    throw InvalidArgument("gcnn: basis has " + std::to_string(basis.size()) +
                          " functions, spec k = " + std::to_string(spec.k));
  }
  if (basis.diff_count() != g.diff_count()) {
    throw InvalidArgument("gcnn: basis is not defined on the group's difference domain");
  }
  if (spec.resolution != g.resolution() || f.resolution() != g.resolution()) {
    throw InvalidArgument("gcnn: resolution mismatch between spec, group and signal");
  }
  if (f.channels() != spec.widths[0]) {
    throw InvalidArgument("gcnn: signal has " + std::to_string(f.channels()) +
                          " channels, spec m_0 = " + std::to_string(spec.widths[0]));
  }

  const std::size_t r = g.resolution();
  std::vector<Signal> maps;
  maps.reserve(spec.depth() + 1);
  maps.push_back(f);
  for (const auto& layer : params.layers) {
    const Signal& h = maps.back();
    std::vector<double> next(layer.out * r, 0.0);
    for (std::size_t j = 0; j < layer.out; ++j) {
      std::span<double> acc(next.data() + j * r, r);
      for (std::size_t i = 0; i < layer.in; ++i) {
        const auto kernel = combine_kernel(basis, layer.kernel_weights(i, j));
        const auto conv = correlate_with_kernel(g, kernel, h.channel(i));
        for (Element x = 0; x < r; ++x) acc[x] += conv[x];
      }
      for (Element x = 0; x < r; ++x) acc[x] = relu(acc[x] - layer.biases[j]);
    }
    maps.emplace_back(layer.out, r, std::move(next));
  }
  return maps;
}

double gcnn_forward(const GcnnSpec& spec, const GcnnParams& params, const KernelBasis& basis,
                    const DiscretizedGroup& g, const Signal& f) {
  const auto maps = gcnn_feature_maps(spec, params, basis, g, f);
  double total = 0.0;
  for (double v : maps.back().values()) total += v;
  return total;
}

std::vector<double> dnn_forward(const DnnSpec& spec, const DnnParams& params,
                                std::span<const double> x) {
  params.check(spec);
  if (x.size() != spec.widths[0]) {
    throw InvalidArgument("dnn_forward: input has dimension " + std::to_string(x.size()) +
                          ", expected " + std::to_string(spec.widths[0]));
  }
  std::vector<double> z(x.begin(), x.end());
  for (const auto& layer : params.layers) {
    std::vector<double> next(layer.out);
    for (std::size_t j = 0; j < layer.out; ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i < layer.in; ++i) acc += layer.weight(j, i) * z[i];
      next[j] = relu(acc - layer.biases[j]);
    }
    z = std::move(next);
  }
  return z;
}

std::vector<std::uint64_t> count_gcnn_weights(const GcnnSpec& spec) {
  spec.validate();
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
  for (std::size_t j = 1; j < spec.widths.size(); ++j) {
    total += spec.widths[j] * (spec.k * spec.widths[j - 1] + 1);
    counts.push_back(total);
  }
  return counts;
}

std::vector<std::uint64_t> count_dnn_weights(const DnnSpec& spec) {
  spec.validate();
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
  for (std::size_t j = 1; j < spec.widths.size(); ++j) {
    total += spec.widths[j] * (spec.widths[j - 1] + 1);
    counts.push_back(total);
  }
  return counts;
}

std::uint64_t count_nonzero(const DnnParams& params) {
  std::uint64_t n = 0;
  for (const auto& layer : params.layers) {
    for (double w : layer.weights) n += (w != 0.0);
    for (double b : layer.biases) n += (b != 0.0);
  }
  return n;
}

}  // namespace gcnnvc
