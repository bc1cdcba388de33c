#include "gcnnvc/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gcnnvc/bounds.hpp"
#include "gcnnvc/constructions.hpp"
#include "gcnnvc/errors.hpp"
#include "gcnnvc/group.hpp"
#include "gcnnvc/rng.hpp"
#include "gcnnvc/serialize.hpp"
#include "gcnnvc/signal.hpp"
#include "gcnnvc/verify.hpp"

namespace gcnnvc {

bool SelftestReport::passed() const {
  return !criteria.empty() &&
         std::all_of(criteria.begin(), criteria.end(), [](const auto& c) { return c.passed; });
}

namespace {

using json::format_double;

std::uint64_t criterion_seed(std::uint64_t seed, int id) {
  return seed * 0x100000001b3ULL + static_cast<std::uint64_t>(id) * 0x9e3779b97f4a7c15ULL;
}

// Random closed group: cyclic, dihedral or a product of two small ones.
DiscretizedGroup random_closed_group(Rng& rng, std::size_t max_order) {
  for (;;) {
    switch (rng.below(3)) {
      case 0:
        return build_cyclic(static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(max_order))));
      case 1: {
        const auto n = static_cast<std::size_t>(rng.between(3, 8));
        if (2 * n <= max_order) return build_dihedral(n);
        break;
      }
      default: {
        const auto a = static_cast<std::size_t>(rng.between(1, 4));
        const auto b = static_cast<std::size_t>(rng.between(1, 4));
        if (a * b <= max_order) return build_product(build_cyclic(a), build_cyclic(b));
      }
    }
  }
}

DiscretizedGroup family_group(int family, Rng& rng) {
  switch (family) {
    case 0:
      return build_cyclic(static_cast<std::size_t>(rng.between(1, 16)));
    case 1:
      return build_dihedral(static_cast<std::size_t>(rng.between(3, 8)));
    case 2:
      return build_product(build_cyclic(static_cast<std::size_t>(rng.between(1, 4))),
                           build_dihedral(static_cast<std::size_t>(rng.between(3, 4))));
    default:
      return build_grid_translation(static_cast<std::size_t>(rng.between(1, 4)),
                                    static_cast<std::size_t>(rng.between(1, 4)));
  }
}

constexpr const char* kFamilies[] = {"cyclic", "dihedral", "product", "grid"};

CriterionResult make(int id, const char* name, bool passed, const std::string& detail) {
  return CriterionResult{id, name, passed, detail};
}

// --- 1 ---------------------------------------------------------------------

// Dihedral element s*n+k acts on polygon vertices as v -> (-1)^s (v + k).
bool dihedral_matches_polygon(const DiscretizedGroup& g, std::size_t n) {
  auto act = [n](std::size_t e, std::size_t v) {
    const std::size_t s = e / n, k = e % n;
    const std::size_t moved = (v + k) % n;
    return s ? (n - moved) % n : moved;
  };
  for (std::size_t a = 0; a < 2 * n; ++a) {
    for (std::size_t b = 0; b < 2 * n; ++b) {
      const std::size_t c = g.compose(a, b);
      for (std::size_t v = 0; v < n; ++v) {
        if (act(c, v) != act(a, act(b, v))) return false;
      }
    }
  }
  return true;
}

CriterionResult criterion_axioms() {
  std::size_t groups = 0, violations = 0, oracle_mismatches = 0;
  auto check = [&](const DiscretizedGroup& g) {
    ++groups;
    violations += validate_group_axioms(g).total;
  };
  for (std::size_t n = 1; n <= 64; ++n) {
    const auto g = build_cyclic(n);
    check(g);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) oracle_mismatches += g.compose(a, b) != (a + b) % n;
    }
  }
  for (std::size_t n = 3; n <= 16; ++n) {
    const auto g = build_dihedral(n);
    check(g);
    oracle_mismatches += !dihedral_matches_polygon(g, n);
  }
  const std::pair<const char*, const char*> products[] = {
      {"cyclic:2", "cyclic:2"}, {"cyclic:2", "cyclic:3"}, {"cyclic:3", "dihedral:3"},
      {"dihedral:4", "cyclic:2"}, {"cyclic:4", "cyclic:6"}, {"dihedral:3", "dihedral:3"}};
  for (const auto& [a, b] : products) {
    const auto ga = build_group(a), gb = build_group(b);
    const auto g = build_product(ga, gb);
    check(g);
    for (std::size_t x = 0; x < g.resolution(); ++x) {
      for (std::size_t y = 0; y < g.resolution(); ++y) {
        const std::size_t rb = gb.resolution();
        const std::size_t want = ga.compose(x / rb, y / rb) * rb + gb.compose(x % rb, y % rb);
        oracle_mismatches += g.compose(x, y) != want;
      }
    }
  }
  std::ostringstream d;
  d << groups << " groups, " << violations << " axiom violations, " << oracle_mismatches
    << " table mismatches against direct formulas";
  return make(1, "group axioms", violations == 0 && oracle_mismatches == 0, d.str());
}

// --- 2 ---------------------------------------------------------------------

CriterionResult criterion_identity_kernel(std::uint64_t seed) {
  Rng rng(seed);
  std::size_t cases = 0, mismatches = 0;
  for (int family = 0; family < 4; ++family) {
    for (int t = 0; t < 100; ++t) {
      const auto g = family_group(family, rng);
      std::vector<double> f(g.resolution());
      for (auto& v : f) v = static_cast<double>(rng.between(-1000, 1000));
      const auto out = g_correlate(g, identity_indicator_basis(g), KernelWeights{{1.0}}, f);
      ++cases;
      mismatches += out != f;
    }
  }
  std::ostringstream d;
  d << cases << " cases over 4 families, " << mismatches << " not reproduced bitwise";
  return make(2, "identity kernel", mismatches == 0, d.str());
}

// --- 3 ---------------------------------------------------------------------

CriterionResult criterion_equivariance(std::uint64_t seed) {
  Rng rng(seed);
  double worst_equiv = 0.0, worst_oracle = 0.0;
  std::size_t draws = 0;
  for (int t = 0; t < 200; ++t) {
    const auto g = t % 2 == 0 ? build_cyclic(static_cast<std::size_t>(rng.between(1, 16)))
                              : build_dihedral(static_cast<std::size_t>(rng.between(3, 8)));
    const std::size_t r = g.resolution();
    const std::size_t k = static_cast<std::size_t>(rng.between(1, 3));
    const KernelBasis basis = random_basis(g, k, rng);
    KernelWeights w;
    for (std::size_t s = 0; s < k; ++s) w.w.push_back(rng.uniform(-1.0, 1.0));
    const Signal f = random_signal(1, r, rng);
    const Element a = rng.below(r);

    // Oracle: kernel on group elements and the action, straight from the tables.
    const auto kernel = combine_kernel(basis, w.w);
    auto oracle_corr = [&](std::span<const double> x) {
      std::vector<double> y(r, 0.0);
      for (Element i = 0; i < r; ++i) {
        for (Element j = 0; j < r; ++j) y[i] += kernel[g.compose(g.inverse(i), j)] * x[j];
      }
      return y;
    };
    auto oracle_act = [&](std::span<const double> x) {
      std::vector<double> y(r);
      for (Element j = 0; j < r; ++j) y[j] = x[g.compose(g.inverse(a), j)];
      return y;
    };

    const auto corr_then_act = apply_left_action(g, a, Signal(g_correlate(g, basis, w, f.values())));
    const auto act_then_corr = g_correlate(g, basis, w, apply_left_action(g, a, f).values());
    const auto oracle = oracle_act(oracle_corr(f.values()));
    for (Element j = 0; j < r; ++j) {
      worst_equiv = std::max(worst_equiv, std::abs(corr_then_act.at(0, j) - act_then_corr[j]));
      worst_oracle = std::max(worst_oracle, std::abs(corr_then_act.at(0, j) - oracle[j]));
    }
    ++draws;
  }
  std::ostringstream d;
  d << draws << " draws on cyclic and dihedral groups, r <= 16; max |K*(a.f) - a.(K*f)| = "
    << format_double(worst_equiv) << ", max deviation from table oracle = "
    << format_double(worst_oracle);
  return make(3, "equivariance", worst_equiv <= 1e-12 && worst_oracle <= 1e-12, d.str());
}

// --- 4 ---------------------------------------------------------------------

GcnnSpec random_gcnn_spec(Rng& rng, std::size_t r) {
  GcnnSpec spec;
  spec.k = static_cast<std::size_t>(rng.between(1, 3));
  spec.resolution = r;
  const auto depth = static_cast<std::size_t>(rng.between(1, 3));
  for (std::size_t l = 0; l <= depth; ++l) spec.widths.push_back(static_cast<std::size_t>(rng.between(1, 3)));
  return spec;
}

CriterionResult criterion_invariance(std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  std::size_t triples = 0;
  for (int t = 0; t < 100; ++t) {
    const auto g = random_closed_group(rng, 24);
    const GcnnSpec spec = random_gcnn_spec(rng, g.resolution());
    const auto params = GcnnParams::random(spec, rng);
    const auto basis = random_basis(g, spec.k, rng);
    const auto rep = verify_invariance(spec, params, basis, g, 1, rng.next());
    worst = std::max(worst, rep.max_rel_deviation);
    ++triples;
  }
  std::ostringstream d;
  d << triples << " (net, signal, element) triples; max relative deviation "
    << format_double(worst);
  return make(4, "invariance", worst <= 1e-9, d.str());
}

// --- 5 ---------------------------------------------------------------------

CriterionResult criterion_lift(std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  std::ostringstream d;
  for (int family = 0; family < 4; ++family) {
    double fam_worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      const auto g = family_group(family, rng);
      DnnSpec spec;
      const auto depth = static_cast<std::size_t>(rng.between(1, 3));
      for (std::size_t l = 0; l <= depth; ++l) spec.widths.push_back(static_cast<std::size_t>(rng.between(1, 4)));
      const DnnNetwork dnn{spec, DnnParams::random(spec, rng)};
      const auto rep = verify_lift_equality(dnn, lift_dnn_to_gcnn(dnn, g), g, 1, rng.next());
      fam_worst = std::max(fam_worst, rep.max_rel_residual);
    }
    worst = std::max(worst, fam_worst);
    d << (family ? "; " : "") << kFamilies[family] << " " << format_double(fam_worst);
  }
  return make(5, "lift equality", worst <= 1e-9,
              "100 pairs per family, max relative residual: " + d.str());
}

// --- 6, 7, 8, 10 -----------------------------------------------------------

struct CorpusInstance {
  std::string name;
  ShatterInstance inst;
};

std::vector<CorpusInstance> interval_instances() {
  std::vector<CorpusInstance> out;
  for (std::size_t r : {2, 4, 8, 16, 32, 64}) {
    out.push_back({"cyclic:" + std::to_string(r), build_shatter_instance(build_cyclic(r), 0.0, 1.0)});
  }
  return out;
}

std::vector<CorpusInstance> hypercube_instances() {
  std::vector<CorpusInstance> out;
  out.push_back({"m0=1 on cyclic:4",
                 build_hypercube_lift(linear_threshold_family({{1.0}, {2.0}}), build_cyclic(4),
                                      4.0, 6.0)});
  out.push_back({"m0=2 on dihedral:3",
                 build_hypercube_lift(linear_threshold_family({{1.0, 0.0}, {0.0, 1.0}, {0.0, 0.0}}),
                                      build_dihedral(3), 3.0, 5.0)});
  return out;
}

CriterionResult criterion_shattering() {
  bool ok = true;
  bool fast = true;
  std::ostringstream d;
  for (const auto& [name, inst] : interval_instances()) {
    const std::size_t r = inst.group.resolution();
    const std::size_t want = static_cast<std::size_t>(std::bit_width(r)) - 1;
    const auto start = std::chrono::steady_clock::now();
    const ShatterReport rep = verify_shattering(inst);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (want == 6 && secs >= 1.0) fast = false;
    const bool good = rep.m == want && rep.success && rep.max_margin_violation == 0.0;
    ok = ok && good;
    d << (r == 2 ? "" : "; ") << "r=" << r << " m=" << rep.m << " " << rep.realized << "/"
      << rep.labelings_total;
  }
  d << "; m=6 under 1 s: " << (fast ? "yes" : "no");
  return make(6, "interval shattering", ok && fast, d.str());
}

CriterionResult criterion_composite() {
  const ShatterInstance inst = build_composite_instance(build_cyclic(8), 3);
  const ShatterReport rep = verify_shattering(inst);

  // Block isolation: each block's classifiers vanish on the other blocks' functions.
  std::size_t nonzero = 0, evaluations = 0;
  for (const auto& block : inst.blocks) {
    for (const auto& params : block.family) {
      for (std::size_t j = 0; j < inst.size(); ++j) {
        if (j >= block.first && j < block.first + block.count) continue;
        double total = 0.0;
        for (Element e = 0; e < inst.group.resolution(); ++e) {
          total += dnn_forward(block.spec, params, inst.functions[j].value_at(e))[0];
        }
        ++evaluations;
        nonzero += total != 0.0;
      }
    }
  }
  std::ostringstream d;
  d << "m=" << rep.m << ", " << rep.realized << "/" << rep.labelings_total
    << " labelings realized, widths";
  for (auto w : inst.class_spec().widths) d << ' ' << w;
  d << "; " << nonzero << " of " << evaluations << " cross-block outputs nonzero";
  const bool ok = rep.m == 9 && rep.success && rep.max_margin_violation == 0.0 && nonzero == 0;
  return make(7, "composite shattering", ok, d.str());
}

CriterionResult criterion_hypercube(std::uint64_t seed) {
  Rng rng(seed);
  bool ok = true;
  double worst = 0.0;
  std::ostringstream d;
  bool first = true;
  for (const auto& [name, inst] : hypercube_instances()) {
    const ShatterReport rep = verify_shattering(inst);
    ok = ok && rep.success;
    const std::size_t m0 = inst.functions.front().channels();
    const double A = inst.blocks.front().lo, B = inst.blocks.front().hi;
    for (int t = 0; t < 50; ++t) {
      const Signal f = random_signal(m0, inst.group.resolution(), rng, A, B);
      for (std::uint64_t q = 0; q < inst.labelings(); ++q) {
        worst = std::max(worst, std::abs(inst.classifier(q)(inst.group, f)));
      }
    }
    d << (first ? "" : "; ") << name << ": " << rep.realized << "/" << rep.labelings_total;
    first = false;
  }
  d << "; max |output| on 50 cube-valued signals " << format_double(worst);
  return make(8, "hypercube lift", ok && worst <= 1e-12, d.str());
}

CriterionResult criterion_lower_upper() {
  std::vector<CorpusInstance> all = interval_instances();
  all.push_back({"composite W=3 on cyclic:8", build_composite_instance(build_cyclic(8), 3)});
  for (auto& c : hypercube_instances()) all.push_back(std::move(c));
  bool ok = true;
  std::ostringstream d;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto res = verify_bound_consistency(all[i].inst, all[i].inst.class_spec());
    ok = ok && res.holds;
    d << (i ? "; " : "") << all[i].name << " " << res.m << "<=" << res.vc_upper;
  }
  return make(10, "lower below upper", ok, d.str());
}

// --- 9 ---------------------------------------------------------------------

double oracle_ub_gcnn(const GcnnSpec& s) {
  double sum_w = 0.0, cum = 0.0, sum_m = 0.0;
  for (std::size_t l = 1; l < s.widths.size(); ++l) {
    cum += static_cast<double>(s.widths[l]) * static_cast<double>(s.k * s.widths[l - 1] + 1);
    sum_w += cum;
    sum_m += static_cast<double>(s.widths[l]);
  }
  const double L = static_cast<double>(s.depth());
  return L + 1.0 +
         4.0 * sum_w * std::log2(8.0 * std::numbers::e * static_cast<double>(s.resolution) * sum_m);
}

CriterionResult criterion_bound_chain(std::uint64_t seed) {
  Rng rng(seed);
  std::size_t order_fail = 0, variant_fail = 0, search_fail = 0, oracle_fail = 0;
  for (int t = 0; t < 1000; ++t) {
    GcnnSpec spec;
    spec.k = static_cast<std::size_t>(rng.between(1, 8));
    spec.resolution = static_cast<std::size_t>(rng.between(2, 1024));
    const auto depth = static_cast<std::size_t>(rng.between(1, 4));
    for (std::size_t l = 0; l <= depth; ++l) spec.widths.push_back(static_cast<std::size_t>(rng.between(1, 16)));
    const auto ub = ub_gcnn(spec);
    const auto cmp = comparison_rhs(spec);
    order_fail += !cmp.holds;
    variant_fail += !(ub.theorem <= ub.proof_variant);
    search_fail += !(static_cast<double>(vc_upper_by_search(spec)) <= ub.proof_variant + 1.0);
    const double want = oracle_ub_gcnn(spec);
    oracle_fail += std::abs(want - ub.theorem) > 1e-9 * want;
  }
  std::ostringstream d;
  d << "1000 specs; comparison failures " << order_fail << ", theorem > proof variant "
    << variant_fail << ", search above proof variant + 1 " << search_fail
    << ", mismatches against direct evaluation " << oracle_fail;
  return make(9, "bound chain", order_fail + variant_fail + search_fail + oracle_fail == 0, d.str());
}

// --- 11 --------------------------------------------------------------------

CriterionResult criterion_lemma_sweep() {
  std::uint64_t checked = 0, applicable = 0, violated = 0;
  for (double r : {16.0, 32.0, 64.0}) {
    for (int w = 1; w <= 16; ++w) {
      for (int kappa = 0; kappa <= w; ++kappa) {
        for (int m = w; m <= 10000; ++m) {
          const auto out = bartlett_lemma16_check(m, kappa, w, r);
          ++checked;
          applicable += out != Lemma16Outcome::not_applicable;
          violated += out == Lemma16Outcome::violated;
        }
      }
    }
  }
  std::ostringstream d;
  d << checked << " grid points, " << applicable << " satisfy the hypothesis, " << violated
    << " counterexamples";
  return make(11, "counting lemma sweep", violated == 0 && applicable > 0, d.str());
}

// --- 12 --------------------------------------------------------------------

std::string corpus_json(std::uint64_t seed) {
  SelftestReport rep;
  rep.seed = seed;
  for (int id = 1; id < kCriterionCount; ++id) rep.criteria.push_back(run_criterion(id, seed));
  return json::to_json(rep).dump();
}

CriterionResult criterion_determinism(std::uint64_t seed) {
  const std::string a = corpus_json(seed);
  const std::string b = corpus_json(seed);
  std::ostringstream d;
  d << "two runs of criteria 1-11, " << a.size() << " bytes, "
    << (a == b ? "identical" : "different");
  return make(12, "determinism", a == b, d.str());
}

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
  const std::uint64_t s = criterion_seed(seed, id);
  switch (id) {
    case 1: return criterion_axioms();
    case 2: return criterion_identity_kernel(s);
    case 3: return criterion_equivariance(s);
    case 4: return criterion_invariance(s);
    case 5: return criterion_lift(s);
    case 6: return criterion_shattering();
    case 7: return criterion_composite();
    case 8: return criterion_hypercube(s);
    case 9: return criterion_bound_chain(s);
    case 10: return criterion_lower_upper();
    case 11: return criterion_lemma_sweep();
    case 12: return criterion_determinism(seed);
    default: break;
  }
  throw InvalidArgument("run_criterion: id must lie in [1, 12]");
}

SelftestReport run_selftest(std::uint64_t seed) {
  SelftestReport rep;
  rep.seed = seed;
  for (int id = 1; id <= kCriterionCount; ++id) {
    try {
      rep.criteria.push_back(run_criterion(id, seed));
    } catch (const std::exception& e) {
      rep.criteria.push_back({id, "criterion " + std::to_string(id), false,
                              std::string("error: ") + e.what()});
    }
  }
  return rep;
}

}  // namespace gcnnvc
