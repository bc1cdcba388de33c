#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gcnnvc/network.hpp"

namespace gcnnvc {

// Upper bound on the VC dimension of H(k, m_0..m_L, r) in two forms that
// differ only in the argument of the logarithm:
//   theorem        L+1 + 4 (sum_l W_l) log2(8 e r sum_l m_l)
//   proof_variant  L+1 + 4 (sum_l W_l) log2(8 e r sum_l l*m_l)
// theorem <= proof_variant always holds and is checked on every call.
struct GcnnUpperBound {
  double theorem = 0.0;
  double proof_variant = 0.0;
};

GcnnUpperBound ub_gcnn(const GcnnSpec& spec);

// L + 2 (sum_l W_l(F)) log2(4 e sum_l l*m_l).
double ub_dnn(const DnnSpec& spec);

// The width-matched fully connected architecture.
DnnSpec matching_dnn(const GcnnSpec& spec);

struct ComparisonCheck {
  double ub_gcnn = 0.0;  // theorem form
  double rhs = 0.0;      // 2k UB(F) + 4 (sum_l W_l) log2(2r)
  bool holds = false;    // ub_gcnn <= rhs within 1e-9 relative
};

ComparisonCheck comparison_rhs(const GcnnSpec& spec);

// log2 S(1..L) for m input functions, S(0) = 1, each step
//   S(l+1) <= 2 (2 e m_{l+1} m r (l+1) / W_{l+1})^{W_{l+1}} S(l).
// The sign-pattern count behind each step needs W_{l+1} <= m_{l+1} m r;
// when that fails the step uses the trivial 2^{m_{l+1} m r} instead.
std::vector<double> log2_region_counts(const GcnnSpec& spec, std::uint64_t m);

// log2 of the growth function bound: region count after L layers times
// 2 (2 e m L / (W_L + 1))^{W_L + 1} (trivial 2^m when W_L + 1 > m).
double log2_growth_bound(const GcnnSpec& spec, std::uint64_t m);

// Smallest m with log2_growth_bound(spec, m) < m; no set of m functions is
// shattered, so it upper-bounds the VC dimension.
std::uint64_t vc_upper_by_search(const GcnnSpec& spec);

enum class Lemma16Outcome { holds, violated, not_applicable };

// Numeric check of: if 2^m <= 2^kappa (m r / w)^w with r >= 16 and
// m >= w >= kappa >= 0, then m <= kappa + w log2(2 r log2 r).
Lemma16Outcome bartlett_lemma16_check(double m, double kappa, double w, double r);

// Free constants of the two-sided sandwich display. Reported, never asserted.
struct SandwichConstants {
  double c = 0.0;
  double C = 0.0;
};

struct BoundReport {
  GcnnSpec spec;
  std::uint64_t m = 0;
  std::vector<std::uint64_t> gcnn_weights;  // W_1..W_L
  std::vector<std::uint64_t> dnn_weights;   // W_1(F)..W_L(F)
  double ub_gcnn_theorem = 0.0;
  double ub_gcnn_proof_variant = 0.0;
  double ub_dnn = 0.0;
  double comparison_rhs = 0.0;
  bool comparison_holds = false;
  double log2_growth_at_m = 0.0;
  std::vector<double> log2_region_counts;
  std::uint64_t vc_upper_by_search = 0;
  // With constants: c (UB(F) + W_L log2 r) and C (UB(F) + L W_L log2 r), using
  // UB(F) in place of the unknown VC(F).
  std::optional<SandwichConstants> constants;
  double sandwich_lower = 0.0;
  double sandwich_upper = 0.0;
};

BoundReport make_bound_report(const GcnnSpec& spec, std::uint64_t m,
                              std::optional<SandwichConstants> constants = std::nullopt);

}  // namespace gcnnvc
