#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gcnnvc/group.hpp"
#include "gcnnvc/rng.hpp"
#include "gcnnvc/signal.hpp"

namespace gcnnvc {

/// Architecture of the GCNN class H(k, m_0, ..., m_L, r).
struct GcnnSpec {
  std::size_t k = 1;
  std::vector<std::size_t> widths;  // m_0 .. m_L
  std::size_t resolution = 1;

  std::size_t depth() const { return widths.empty() ? 0 : widths.size() - 1; }
  // InvalidArgument unless k >= 1, L >= 1, every width >= 1 and r >= 1.
  void validate() const;

  friend bool operator==(const GcnnSpec&, const GcnnSpec&) = default;
};

/// Parameters of one G-conv layer: w_ij in R^k for i < in, j < out, stored at
/// ((i * out) + j) * k, and biases b_j.
struct GcnnLayer {
  std::size_t in = 0;
  std::size_t out = 0;
  std::size_t k = 0;
  std::vector<double> weights;
  std::vector<double> biases;

  std::span<const double> kernel_weights(std::size_t i, std::size_t j) const {
    return std::span<const double>(weights).subspan((i * out + j) * k, k);
  }
  std::span<double> kernel_weights(std::size_t i, std::size_t j) {
    return std::span<double>(weights).subspan((i * out + j) * k, k);
  }

  friend bool operator==(const GcnnLayer&, const GcnnLayer&) = default;
};

struct GcnnParams {
  std::vector<GcnnLayer> layers;

  static GcnnParams zeros(const GcnnSpec& spec);
  // Weights and biases uniform in [-scale, scale].
  static GcnnParams random(const GcnnSpec& spec, Rng& rng, double scale = 1.0);
  // InvalidArgument when shapes disagree with `spec` or entries are non-finite.
  void check(const GcnnSpec& spec) const;

  friend bool operator==(const GcnnParams&, const GcnnParams&) = default;
};

/// Architecture of the fully connected class F(m_0, ..., m_L). The last layer
/// holds m_L parallel units; a scalar head is m_L = 1.
struct DnnSpec {
  std::vector<std::size_t> widths;

  std::size_t depth() const { return widths.empty() ? 0 : widths.size() - 1; }
  void validate() const;

  friend bool operator==(const DnnSpec&, const DnnSpec&) = default;
};

/// Dense layer of units sigma(w^T z - b); weights row-major out x in.
struct DnnLayer {
  std::size_t in = 0;
  std::size_t out = 0;
  std::vector<double> weights;
  std::vector<double> biases;

  double weight(std::size_t j, std::size_t i) const { return weights[j * in + i]; }
  double& weight(std::size_t j, std::size_t i) { return weights[j * in + i]; }

  friend bool operator==(const DnnLayer&, const DnnLayer&) = default;
};

struct DnnParams {
  std::vector<DnnLayer> layers;

  static DnnParams zeros(const DnnSpec& spec);
  static DnnParams random(const DnnSpec& spec, Rng& rng, double scale = 1.0);
  void check(const DnnSpec& spec) const;

  friend bool operator==(const DnnParams&, const DnnParams&) = default;
};

inline double relu(double x) { return x > 0.0 ? x : 0.0; }

// Feature maps h_0 (the input) through h_L, each an m_l x r signal.
std::vector<Signal> gcnn_feature_maps(const GcnnSpec& spec, const GcnnParams& params,
                                      const KernelBasis& basis, const DiscretizedGroup& g,
                                      const Signal& f);

// Global sum pooling of the last feature maps over channels and elements.
double gcnn_forward(const GcnnSpec& spec, const GcnnParams& params, const KernelBasis& basis,
                    const DiscretizedGroup& g, const Signal& f);

// All m_L outputs of the last layer.
std::vector<double> dnn_forward(const DnnSpec& spec, const DnnParams& params,
                                std::span<const double> x);

// Cumulative parameter counts W_1..W_L.
std::vector<std::uint64_t> count_gcnn_weights(const GcnnSpec& spec);
std::vector<std::uint64_t> count_dnn_weights(const DnnSpec& spec);

// Number of nonzero weights and biases.
std::uint64_t count_nonzero(const DnnParams& params);

}  // namespace gcnnvc
