#include "gcnnvc/signal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gcnnvc/errors.hpp"

namespace gcnnvc {

namespace {

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidArgument(std::string(what) + ": non-finite entry");
  }
}

}  // namespace

Signal::Signal(std::size_t channels, std::size_t resolution)
    : Signal(channels, resolution, std::vector<double>(channels * resolution, 0.0)) {}

Signal::Signal(std::size_t channels, std::size_t resolution, std::vector<double> values)
    : channels_(channels), resolution_(resolution), values_(std::move(values)) {
  if (channels == 0 || resolution == 0) throw InvalidArgument("Signal: empty shape");
  if (values_.size() != channels * resolution) {
    throw InvalidArgument("Signal: expected " + std::to_string(channels * resolution) +
                          " values, got " + std::to_string(values_.size()));
  }
  require_finite(values_, "Signal");
}

Signal::Signal(std::vector<double> values) : channels_(1), resolution_(values.size()) {
  if (resolution_ == 0) throw InvalidArgument("Signal: empty shape");
  require_finite(values, "Signal");
  values_ = std::move(values);
}

std::vector<double> Signal::value_at(Element j) const {
  std::vector<double> v(channels_);
  for (std::size_t c = 0; c < channels_; ++c) v[c] = at(c, j);
  return v;
}

KernelBasis::KernelBasis(std::size_t k, std::size_t diff_count, std::vector<double> values)
    : k_(k), diff_count_(diff_count), values_(std::move(values)) {
  if (k == 0) throw InvalidArgument("KernelBasis: k must be at least 1");
  if (values_.size() != k * diff_count) {
    throw InvalidArgument("KernelBasis: expected k*|D| = " + std::to_string(k * diff_count) +
                          " values");
  }
  require_finite(values_, "KernelBasis");
}

std::vector<double> combine_kernel(const KernelBasis& basis, std::span<const double> w) {
  if (w.size() != basis.size()) {
    throw InvalidArgument("combine_kernel: weight length " + std::to_string(w.size()) +
                          " != basis size " + std::to_string(basis.size()));
  }
  std::vector<double> kernel(basis.diff_count(), 0.0);
  for (std::size_t s = 0; s < basis.size(); ++s) {
    if (w[s] == 0.0) continue;
    const auto fn = basis.function(s);
    for (std::size_t d = 0; d < kernel.size(); ++d) kernel[d] += w[s] * fn[d];
  }
  return kernel;
}

std::vector<double> correlate_with_kernel(const DiscretizedGroup& g,
                                          std::span<const double> kernel_on_d,
                                          std::span<const double> f) {
  const std::size_t r = g.resolution();
  if (f.size() != r) throw InvalidArgument("g_correlate: signal length does not match r");
  if (kernel_on_d.size() != g.diff_count()) {
    throw InvalidArgument("g_correlate: kernel is not defined on this difference domain");
  }
  const auto diff = g.diff_table();
  std::vector<double> out(r, 0.0);
  for (Element i = 0; i < r; ++i) {
    const std::uint32_t* row = diff.data() + i * r;
    double acc = 0.0;
    for (Element j = 0; j < r; ++j) {
      const double k = kernel_on_d[row[j]];
      if (k != 0.0) acc += k * f[j];
    }
    out[i] = acc;
  }
  return out;
}

std::vector<double> g_correlate(const DiscretizedGroup& g, const KernelBasis& basis,
                                const KernelWeights& w, std::span<const double> f) {
  if (basis.diff_count() != g.diff_count()) {
    throw InvalidArgument("g_correlate: basis difference domain does not match the group");
  }
  require_finite(f, "g_correlate");
  require_finite(w.w, "g_correlate weights");
  return correlate_with_kernel(g, combine_kernel(basis, w.w), f);
}

Signal apply_left_action(const DiscretizedGroup& g, Element a, const Signal& f) {
  if (f.resolution() != g.resolution()) {
    throw InvalidArgument("apply_left_action: signal resolution does not match the group");
  }
  const Permutation pi = left_action_permutation(g, a);
  std::vector<double> out(f.values().size());
  const std::size_t r = g.resolution();
  for (std::size_t c = 0; c < f.channels(); ++c) {
    for (Element j = 0; j < r; ++j) out[c * r + j] = f.at(c, pi[j]);
  }
  return Signal(f.channels(), r, std::move(out));
}

KernelBasis identity_indicator_basis(const DiscretizedGroup& g) {
  std::vector<double> values(g.diff_count(), 0.0);
  values[g.identity_difference()] = 1.0;
  return KernelBasis(1, g.diff_count(), std::move(values));
}

KernelBasis cnn_window_basis(const DiscretizedGroup& grid, std::size_t s) {
  if (grid.kind() != GroupKind::grid) {
    throw InvalidArgument("cnn_window_basis: requires a grid translation group");
  }
  if (s == 0 || s % 2 == 0) throw InvalidArgument("cnn_window_basis: window size must be odd");
  if (s > 2 * std::min(grid.grid_height(), grid.grid_width()) - 1) {
    throw InvalidArgument("cnn_window_basis: window larger than the difference domain");
  }
  const long half = static_cast<long>(s - 1) / 2;
  const std::size_t dc = grid.diff_count();
  std::vector<double> values(s * s * dc, 0.0);
  std::size_t t = 0;
  for (long dr = -half; dr <= half; ++dr) {
    for (long dcol = -half; dcol <= half; ++dcol, ++t) {
      values[t * dc + grid.grid_offset_index(dr, dcol)] = 1.0;
    }
  }
  return KernelBasis(s * s, dc, std::move(values));
}

KernelBasis random_basis(const DiscretizedGroup& g, std::size_t k, Rng& rng, double scale) {
  std::vector<double> values(k * g.diff_count());
  for (double& v : values) v = rng.uniform(-scale, scale);
  return KernelBasis(k, g.diff_count(), std::move(values));
}

Signal random_signal(std::size_t channels, std::size_t resolution, Rng& rng, double lo,
                     double hi) {
  std::vector<double> values(channels * resolution);
  for (double& v : values) v = rng.uniform(lo, hi);
  return Signal(channels, resolution, std::move(values));
}

}  // namespace gcnnvc
