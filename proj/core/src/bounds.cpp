#include "gcnnvc/bounds.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "gcnnvc/errors.hpp"

namespace gcnnvc {

namespace {

constexpr double kE = std::numbers::e;

void require_resolution(const GcnnSpec& spec) {
  spec.validate();
  if (spec.resolution <= 1) {
    throw InvalidArgument("upper bounds need resolution r > 1, got " +
                          std::to_string(spec.resolution));
  }
}

double sum_weights(const std::vector<std::uint64_t>& w) {
  return static_cast<double>(std::accumulate(w.begin(), w.end(), std::uint64_t{0}));
}

// log2 of 2 (2 e polys degree / vars)^vars, the sign-pattern count of `polys`
// polynomials of degree `degree` in `vars` variables; falls back to the
// trivial log2 2^polys when vars > polys.
double log2_sign_patterns(double polys, double degree, double vars) {
  if (vars > polys) return polys;
  return 1.0 + vars * std::log2(2.0 * kE * polys * degree / vars);
}

}  // namespace

GcnnUpperBound ub_gcnn(const GcnnSpec& spec) {
  require_resolution(spec);
  const auto w = count_gcnn_weights(spec);
  const double total = sum_weights(w);
  double sum_m = 0.0, sum_lm = 0.0;
  for (std::size_t l = 1; l < spec.widths.size(); ++l) {
    sum_m += static_cast<double>(spec.widths[l]);
    sum_lm += static_cast<double>(l * spec.widths[l]);
  }
  const double r = static_cast<double>(spec.resolution);
  const double L = static_cast<double>(spec.depth());
  GcnnUpperBound ub;
  ub.theorem = L + 1.0 + 4.0 * total * std::log2(8.0 * kE * r * sum_m);
  ub.proof_variant = L + 1.0 + 4.0 * total * std::log2(8.0 * kE * r * sum_lm);
  if (ub.theorem > ub.proof_variant) {
    throw std::logic_error("ub_gcnn: theorem form exceeds the proof form");
  }
  return ub;
}

double ub_dnn(const DnnSpec& spec) {
  const auto w = count_dnn_weights(spec);
  double sum_lm = 0.0;
  for (std::size_t l = 1; l < spec.widths.size(); ++l) {
    sum_lm += static_cast<double>(l * spec.widths[l]);
  }
  return static_cast<double>(spec.depth()) + 2.0 * sum_weights(w) * std::log2(4.0 * kE * sum_lm);
}

DnnSpec matching_dnn(const GcnnSpec& spec) { return DnnSpec{spec.widths}; }

ComparisonCheck comparison_rhs(const GcnnSpec& spec) {
  ComparisonCheck out;
  out.ub_gcnn = ub_gcnn(spec).theorem;
  const double k = static_cast<double>(spec.k);
  const double r = static_cast<double>(spec.resolution);
  out.rhs = 2.0 * k * ub_dnn(matching_dnn(spec)) +
            4.0 * sum_weights(count_gcnn_weights(spec)) * std::log2(2.0 * r);
  out.holds = out.ub_gcnn <= out.rhs * (1.0 + 1e-9);
  return out;
}

std::vector<double> log2_region_counts(const GcnnSpec& spec, std::uint64_t m) {
  spec.validate();
  if (m == 0) throw InvalidArgument("log2_region_counts: m must be positive");
  const auto w = count_gcnn_weights(spec);
  const double r = static_cast<double>(spec.resolution);
  const double md = static_cast<double>(m);
  std::vector<double> out;
  double log2_s = 0.0;
  for (std::size_t l = 0; l < spec.depth(); ++l) {
    const double units = static_cast<double>(spec.widths[l + 1]);
    log2_s += log2_sign_patterns(units * md * r, static_cast<double>(l + 1),
                                 static_cast<double>(w[l]));
    out.push_back(log2_s);
  }
  return out;
}

double log2_growth_bound(const GcnnSpec& spec, std::uint64_t m) {
  const auto regions = log2_region_counts(spec, m);
  const double vars = static_cast<double>(count_gcnn_weights(spec).back() + 1);
  return regions.back() +
         log2_sign_patterns(static_cast<double>(m), static_cast<double>(spec.depth()), vars);
}

std::uint64_t vc_upper_by_search(const GcnnSpec& spec) {
  require_resolution(spec);
  auto shatter_excluded = [&spec](std::uint64_t m) {
    return log2_growth_bound(spec, m) < static_cast<double>(m);
  };
  // Doubling finds some m where the bound is beaten; the bound is eventually
  // concave in m, so the predicate stays true beyond its first true point.
  std::uint64_t lo = 0, hi = 1;
  while (!shatter_excluded(hi)) {
    lo = hi;
    if (hi > (std::uint64_t{1} << 60)) throw std::logic_error("vc_upper_by_search diverged");
    hi *= 2;
  }
  // Invariant: predicate false at lo (or lo == 0), true at hi.
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (shatter_excluded(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

Lemma16Outcome bartlett_lemma16_check(double m, double kappa, double w, double r) {
  if (!(r >= 16.0 && m >= w && w >= kappa && kappa >= 0.0)) return Lemma16Outcome::not_applicable;
  const double growth = w > 0.0 ? w * std::log2(m * r / w) : 0.0;
  if (!(m <= kappa + growth)) return Lemma16Outcome::not_applicable;
  const double conclusion = kappa + w * std::log2(2.0 * r * std::log2(r));
  return m <= conclusion ? Lemma16Outcome::holds : Lemma16Outcome::violated;
}

BoundReport make_bound_report(const GcnnSpec& spec, std::uint64_t m,
                              std::optional<SandwichConstants> constants) {
  BoundReport rep;
  rep.spec = spec;
  rep.m = m;
  rep.gcnn_weights = count_gcnn_weights(spec);
  rep.dnn_weights = count_dnn_weights(matching_dnn(spec));
  const auto ub = ub_gcnn(spec);
  rep.ub_gcnn_theorem = ub.theorem;
  rep.ub_gcnn_proof_variant = ub.proof_variant;
  rep.ub_dnn = ub_dnn(matching_dnn(spec));
  const auto cmp = comparison_rhs(spec);
  rep.comparison_rhs = cmp.rhs;
  rep.comparison_holds = cmp.holds;
  rep.log2_region_counts = log2_region_counts(spec, m);
  rep.log2_growth_at_m = log2_growth_bound(spec, m);
  rep.vc_upper_by_search = vc_upper_by_search(spec);
  rep.constants = constants;
  if (constants) {
    const double wl = static_cast<double>(rep.gcnn_weights.back());
    const double log_r = std::log2(static_cast<double>(spec.resolution));
    const double L = static_cast<double>(spec.depth());
    rep.sandwich_lower = constants->c * (rep.ub_dnn + wl * log_r);
    rep.sandwich_upper = constants->C * (rep.ub_dnn + L * wl * log_r);
  }
  return rep;
}

}  // namespace gcnnvc
