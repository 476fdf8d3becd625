#include <gtest/gtest.h>

#include "support.hpp"

using namespace wss;
using namespace wss::testing;

TEST(Channel, ExplicitTripleAtNearDistance) {
  GeometryParams<Q> geom(Q(60), Q(10));
  ChannelModel<Q> model = ExplicitTriple<Q>{worked_alice(), geom};
  EXPECT_EQ(success_probability(model, Q(10)), dec("0.99"));
  EXPECT_EQ(success_probability(model, Q(30)), dec("0.94"));
  EXPECT_EQ(success_probability(model, Q(50)), dec("0.80"));
  EXPECT_THROW(success_probability(model, Q(20)), DomainError);
}

TEST(Channel, FlatQuadraticIsConstant) {
  const Q a = Q(1) - Q(1, 1000000000);
  ChannelModel<Q> model = ConcaveQuadratic<Q>(a, Q(0), Q(100));
  for (int d : {1, 37, 100}) EXPECT_EQ(success_probability(model, Q(d)), a);
  // a flat channel is not strictly decreasing, so it cannot define a game
  EXPECT_THROW(triple_from_model(model, GeometryParams<Q>(Q(100), Q(10))), ValidationError);
}

TEST(Channel, QuadraticEvaluation) {
  ChannelModel<Q> model = ConcaveQuadratic<Q>(dec("0.99"), dec("0.0001"), Q(60));
  const Q expected = dec("0.99") - dec("0.0001") * Q(20) * Q(20);
  EXPECT_EQ(success_probability(model, Q(20)), expected);
  EXPECT_EQ(expected, dec("0.95"));
  EXPECT_THROW(success_probability(model, Q(61)), DomainError);
  EXPECT_THROW(success_probability(model, Q(0)), DomainError);
}

TEST(Channel, QuadraticParameterChecks) {
  EXPECT_THROW(ConcaveQuadratic<Q>(Q(1), Q(0), Q(10)), ValidationError);
  EXPECT_THROW(ConcaveQuadratic<Q>(dec("0.9"), dec("-0.1"), Q(10)), ValidationError);
  EXPECT_THROW(ConcaveQuadratic<Q>(dec("0.9"), dec("0.01"), Q(10)), ValidationError);  // 0.9 - 1 <= 0
}

TEST(Channel, TripleFromQuadraticModel) {
  const Q a = dec("0.95"), b = dec("0.00005");
  ChannelModel<Q> model = ConcaveQuadratic<Q>(a, b, Q(60));
  const auto t = triple_from_model(model, GeometryParams<Q>(Q(60), Q(10)));
  // pointwise a - b d^2 at 10, 30, 50
  EXPECT_EQ(t.p_near, a - b * 100);
  EXPECT_EQ(t.p_mid, a - b * 900);
  EXPECT_EQ(t.p_far, a - b * 2500);
  EXPECT_EQ(t, triple("0.945", "0.905", "0.825"));
  EXPECT_TRUE(t.p_near > t.p_mid && t.p_mid > t.p_far);
  EXPECT_GT(t.p_mid, (t.p_near + t.p_far) / 2);
  EXPECT_EQ((t.p_near + t.p_far) / 2, dec("0.885"));
}

TEST(Channel, TableInterpolation) {
  ChannelModel<Q> model =
      TableInterpolated<Q>({{Q(10), dec("0.99")}, {Q(30), dec("0.94")}, {Q(50), dec("0.80")}});
  EXPECT_EQ(success_probability(model, Q(20)), (dec("0.99") + dec("0.94")) / 2);
  EXPECT_EQ(triple_from_model(model, GeometryParams<Q>(Q(60), Q(10))), worked_alice());
  EXPECT_THROW(success_probability(model, Q(5)), DomainError);
  EXPECT_THROW(TableInterpolated<Q>({{Q(10), dec("0.9")}}), ArgumentError);
  EXPECT_THROW(TableInterpolated<Q>({{Q(10), dec("0.9")}, {Q(5), dec("0.8")}}), ArgumentError);
}

TEST(Channel, GeometryInvariants) {
  EXPECT_THROW(GeometryParams<Q>(Q(60), Q(30)), ArgumentError);
  EXPECT_THROW(GeometryParams<Q>(Q(60), Q(0)), ArgumentError);
  EXPECT_THROW(GeometryParams<Q>(Q(0), Q(1)), ArgumentError);
  GeometryParams<Q> g(Q(60), Q(10));
  EXPECT_EQ(g.near(), Q(10));
  EXPECT_EQ(g.mid(), Q(30));
  EXPECT_EQ(g.far(), Q(50));
}

TEST(Channel, ConstantModelViolatesMonotonicity) {
  ChannelModel<Q> model = TableInterpolated<Q>({{Q(1), dec("0.7")}, {Q(100), dec("0.7")}});
  try {
    triple_from_model(model, GeometryParams<Q>(Q(60), Q(10)), "alice");
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("(iii)"), std::string::npos);
  }
}

TEST(Channel, MidpointBoundaryIsRejected) {
  const auto t = triple("0.9", "0.75", "0.6");
  EXPECT_EQ(t.p_mid, (t.p_near + t.p_far) / 2);
  EXPECT_FALSE(is_admissible(t));
  try {
    require_admissible(t, "bob");
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("(iv)"), std::string::npos);
  }
}

TEST(Channel, ValidationReportForWorkedExample) {
  const auto r = validate_assumption(worked_alice(), worked_bob());
  EXPECT_TRUE(r.ok());
  ASSERT_EQ(r.senders.size(), 2u);
  // 0.94 > (0.99+0.80)/2 = 0.895 and 0.84 > (0.90+0.70)/2 = 0.80
  EXPECT_NE(r.senders[0].checks[2].detail.find("0.895"), std::string::npos);
  EXPECT_NE(r.senders[1].checks[2].detail.find("= 0.8"), std::string::npos);
  EXPECT_EQ(r.notes.size(), 2u);
}

TEST(Channel, ValidationReportSymmetric) {
  const auto t = triple("0.9", "0.8", "0.6");
  EXPECT_TRUE(validate_assumption(t, t).ok());
  EXPECT_GT(t.p_mid, dec("0.75"));
}

TEST(Channel, ValidationReportMidpointFailure) {
  const auto r = validate_assumption(triple("0.9", "0.7", "0.6"), triple("0.9", "0.8", "0.6"));
  EXPECT_FALSE(r.ok());
  EXPECT_FALSE(r.senders[0].ok());
  EXPECT_TRUE(r.senders[1].ok());
  const auto& failed = r.senders[0].checks[2];
  EXPECT_EQ(failed.condition, Condition::MidpointConcave);
  EXPECT_FALSE(failed.holds);
  EXPECT_NE(failed.detail.find("0.75"), std::string::npos);
}

TEST(Channel, OpenIntervalRequired) {
  EXPECT_FALSE(is_admissible(triple("1", "0.8", "0.6")));
  EXPECT_FALSE(is_admissible(triple("0.9", "0.8", "0")));
}

TEST(Channel, FloatModeFlagsAmbiguousBoundary) {
  ChannelTriple<double> t{0.9, 0.75 + 1e-14, 0.6};
  const auto checks = check_triple(t);
  EXPECT_TRUE(checks[2].ambiguous);
  EXPECT_FALSE(checks[2].holds);
}
