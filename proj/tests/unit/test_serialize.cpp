#include <gtest/gtest.h>

#include "gcnnvc/errors.hpp"
#include "gcnnvc/serialize.hpp"

using namespace gcnnvc;
using gcnnvc::json::Json;

namespace {

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST(Json, GroupStringAndObjectForms) {
  const auto d = GroupDescriptor::parse("product:(cyclic:2,dihedral:3)");
  const Json obj = json::to_json(d);
  EXPECT_EQ(obj["kind"], "product");
  EXPECT_EQ(json::group_from_json(obj), d);
  EXPECT_EQ(json::group_from_json(Json("product:(cyclic:2,dihedral:3)")), d);
  EXPECT_EQ(json::group_from_json(Json::parse(R"({"kind":"grid","height":3,"width":4})")),
            GroupDescriptor::parse("grid:3x4"));
  EXPECT_THROW(json::group_from_json(Json::parse(R"({"kind":"cyclic","n":3,"extra":1})")),
               InvalidArgument);
  EXPECT_THROW(json::group_from_json(Json::parse(R"({"kind":"torus","n":3})")), InvalidArgument);
  EXPECT_THROW(json::group_from_json(Json(5)), InvalidArgument);
}

TEST(Json, SpecsAndParamsRoundTrip) {
  Rng rng(1);
  const GcnnSpec gs{3, {2, 4, 1}, 6};
  EXPECT_EQ(json::gcnn_spec_from_json(json::to_json(gs)), gs);
  const auto gp = GcnnParams::random(gs, rng);
  EXPECT_EQ(json::gcnn_params_from_json(json::to_json(gp), gs), gp);

  const DnnSpec ds{{3, 5, 2}};
  EXPECT_EQ(json::dnn_spec_from_json(json::to_json(ds)), ds);
  const auto dp = DnnParams::random(ds, rng);
  EXPECT_EQ(json::dnn_params_from_json(json::to_json(dp), ds), dp);

  const auto g = build_dihedral(3);
  const auto basis = random_basis(g, 2, rng);
  EXPECT_EQ(json::basis_from_json(json::to_json(basis)), basis);
  const auto f = random_signal(2, 6, rng);
  EXPECT_EQ(json::signal_from_json(json::to_json(f)), f);
}

TEST(Json, ShapesAreChecked) {
  const GcnnSpec gs{2, {1, 2}, 4};
  Json p = json::to_json(GcnnParams::zeros(gs));
  p["layers"][0]["weights"][0][1].push_back(1.0);
  EXPECT_THROW(json::gcnn_params_from_json(p, gs), InvalidArgument);
  EXPECT_THROW(json::gcnn_spec_from_json(Json::parse(R"({"k":1,"widths":[1],"resolution":2})")),
               InvalidArgument);
  EXPECT_THROW(json::gcnn_spec_from_json(Json::parse(R"({"k":1,"widths":[1,-1],"resolution":2})")),
               InvalidArgument);
  EXPECT_THROW(json::gcnn_spec_from_json(Json::parse(R"({"k":1,"widths":[1,1]})")), InvalidArgument);
}

TEST(Json, UnknownFieldNamesItsPath) {
  auto j = json::to_json(GcnnSpec{1, {1, 1}, 2});
  j["depth"] = 3;
  try {
    json::gcnn_spec_from_json(j);
    FAIL() << "accepted an unknown field";
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("depth"), std::string::npos);
  }
}

TEST(Json, InstancesRoundTrip) {
  for (const auto& inst : {build_shatter_instance(build_cyclic(8), 0.0, 1.0),
                           build_composite_instance(build_dihedral(3), 2),
                           build_hypercube_lift(linear_threshold_family({{-0.5}, {0.5}}),
                                                build_cyclic(4), 2.0, 3.0)}) {
    const auto back = json::instance_from_json(json::to_json(inst));
    EXPECT_EQ(back.functions, inst.functions);
    EXPECT_EQ(back.threshold, inst.threshold);
    EXPECT_EQ(back.provenance, inst.provenance);
    ASSERT_EQ(back.blocks.size(), inst.blocks.size());
    for (std::uint64_t q = 0; q < inst.labelings(); ++q) {
      EXPECT_EQ(back.classifier_dnn(q), inst.classifier_dnn(q));
    }
    EXPECT_EQ(json::to_json(back), json::to_json(inst));
  }
}

TEST(Json, InstanceWithTruncatedFamilyRejected) {
  auto j = json::to_json(build_shatter_instance(build_cyclic(4), 0.0, 1.0));
  j["blocks"][0]["family"].erase(3);
  EXPECT_THROW(json::instance_from_json(j), InvalidArgument);
}

TEST(Json, ReportsRoundTrip) {
  const auto inst = build_shatter_instance(build_cyclic(8), 0.0, 1.0);
  auto rep = verify_shattering(inst);
  const auto timed = json::to_json(rep, true);
  EXPECT_TRUE(timed.contains("wall_time_seconds"));
  const auto plain = json::to_json(rep, false);
  EXPECT_FALSE(plain.contains("wall_time_seconds"));
  EXPECT_EQ(json::to_json(json::shatter_report_from_json(plain), false), plain);

  const InvarianceReport inv{100, 1e-13, 2e-14, true};
  EXPECT_EQ(json::to_json(json::invariance_report_from_json(json::to_json(inv))), json::to_json(inv));
  const LiftReport lift{50, 3e-12, 1e-13};
  EXPECT_EQ(json::to_json(json::lift_report_from_json(json::to_json(lift))), json::to_json(lift));
  const BoundConsistency bc{3, 368, true};
  EXPECT_EQ(json::to_json(json::bound_consistency_from_json(json::to_json(bc))), json::to_json(bc));

  for (const auto& br : {make_bound_report(GcnnSpec{2, {1, 3, 1}, 8}, 10),
                         make_bound_report(GcnnSpec{1, {1, 1}, 2}, 1, SandwichConstants{0.5, 2.0})}) {
    const auto j = json::to_json(br);
    EXPECT_EQ(json::to_json(json::bound_report_from_json(j)), j);
  }

  SelftestReport st{7, {{1, "groups", true, "ok"}, {2, "identity", false, "x,y"}}};
  EXPECT_EQ(json::selftest_report_from_json(json::to_json(st)), st);
  auto lying = json::to_json(st);
  lying["passed"] = true;
  EXPECT_THROW(json::selftest_report_from_json(lying), InvalidArgument);
}

TEST(Json, DoublesRoundTripExactly) {
  for (double x : {0.1, 1.0 / 3, 45.541554, 1e-300, -2.5e17}) {
    EXPECT_EQ(std::stod(json::format_double(x)), x);
  }
}

TEST(Csv, HeadersAndRows) {
  const auto br = make_bound_report(GcnnSpec{1, {1, 1}, 2}, 1);
  const auto csv = json::to_csv(br);
  EXPECT_EQ(first_line(csv),
            "k,widths,r,m,gcnn_weights,dnn_weights,ub_gcnn_theorem,ub_gcnn_proof_variant,ub_dnn,"
            "comparison_rhs,comparison_holds,log2_growth_at_m,vc_upper_by_search,sandwich_lower,"
            "sandwich_upper");
  EXPECT_EQ(csv.substr(csv.find('\n') + 1, 15), "1,1;1,2,1,2,2,4");

  const auto rep = verify_shattering(build_shatter_instance(build_cyclic(4), 0.0, 1.0));
  const auto shatter = json::to_csv(rep);
  EXPECT_EQ(first_line(shatter),
            "provenance,m,labelings_total,checked,realized,distinct_patterns,success,certified,"
            "max_margin_violation,min_margin");
  EXPECT_EQ(shatter.substr(shatter.find('\n') + 1, 33), "interval-indicator,2,4,4,4,4,true");

  EXPECT_EQ(json::to_csv(InvarianceReport{5, 0, 0, true}),
            "trials,max_abs_deviation,max_rel_deviation,passed\n5,0.0,0.0,true\n");
  EXPECT_EQ(first_line(json::to_csv(LiftReport{})), "trials,max_residual,max_rel_residual");

  const SelftestReport st{1, {{3, "equivariance", true, "a, \"b\""}}};
  EXPECT_EQ(json::to_csv(st), "id,name,passed,detail\n3,equivariance,true,\"a, \"\"b\"\"\"\n");
}
