#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gcnnvc/group.hpp"
#include "gcnnvc/rng.hpp"

namespace gcnnvc {

/// A function f: G^r -> R^{m0}, stored channel-major (channel c, element j at
/// c*r + j). Immutable; all entries finite.
class Signal {
 public:
  Signal(std::size_t channels, std::size_t resolution);
  Signal(std::size_t channels, std::size_t resolution, std::vector<double> values);
  // Single-channel signal.
  explicit Signal(std::vector<double> values);

  std::size_t channels() const { return channels_; }
  std::size_t resolution() const { return resolution_; }
  double at(std::size_t channel, Element j) const { return values_[channel * resolution_ + j]; }
  std::span<const double> channel(std::size_t c) const {
    return std::span<const double>(values_).subspan(c * resolution_, resolution_);
  }
  std::span<const double> values() const { return values_; }
  // The vector f(g_j) in R^{m0}.
  std::vector<double> value_at(Element j) const;

  friend bool operator==(const Signal&, const Signal&) = default;

 private:
  std::size_t channels_;
  std::size_t resolution_;
  std::vector<double> values_;
};

/// k basis functions K_s evaluated on the difference domain D (row-major k x |D|).
class KernelBasis {
 public:
  KernelBasis(std::size_t k, std::size_t diff_count, std::vector<double> values);

  std::size_t size() const { return k_; }
  std::size_t diff_count() const { return diff_count_; }
  std::span<const double> function(std::size_t s) const {
    return std::span<const double>(values_).subspan(s * diff_count_, diff_count_);
  }
  std::span<const double> values() const { return values_; }

  friend bool operator==(const KernelBasis&, const KernelBasis&) = default;

 private:
  std::size_t k_;
  std::size_t diff_count_;
  std::vector<double> values_;
};

/// Coefficients w of the learned kernel K_w = sum_s w_s K_s.
struct KernelWeights {
  std::vector<double> w;
};

// K_w evaluated on D.
std::vector<double> combine_kernel(const KernelBasis& basis, std::span<const double> w);

// (K * f)(g_i) = sum_j K(g_i^{-1} g_j) f(g_j) for a kernel already evaluated
// on D. Unnormalized: no 1/|G| factor.
std::vector<double> correlate_with_kernel(const DiscretizedGroup& g,
                                          std::span<const double> kernel_on_d,
                                          std::span<const double> f);

std::vector<double> g_correlate(const DiscretizedGroup& g, const KernelBasis& basis,
                                const KernelWeights& w, std::span<const double> f);

// Channel-wise (a o f)(g_j) = f(a^{-1} g_j). Closed groups only.
Signal apply_left_action(const DiscretizedGroup& g, Element a, const Signal& f);

// k = 1, the indicator of the identity difference. Correlating with weight 1
// is the identity map on any discretization.
KernelBasis identity_indicator_basis(const DiscretizedGroup& g);

// s*s indicators of the offsets of an s x s window centred on the zero shift,
// ordered row-major by (dr, dc) from (-(s-1)/2, -(s-1)/2). Grid groups only.
KernelBasis cnn_window_basis(const DiscretizedGroup& grid, std::size_t s);

// k basis functions with entries uniform in [-scale, scale].
KernelBasis random_basis(const DiscretizedGroup& g, std::size_t k, Rng& rng, double scale = 1.0);

Signal random_signal(std::size_t channels, std::size_t resolution, Rng& rng, double lo = -10.0,
                     double hi = 10.0);

}  // namespace gcnnvc
