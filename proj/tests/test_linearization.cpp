#include <gtest/gtest.h>

#include "testing/generators.hpp"
#include "torlin/linearization.hpp"

namespace torlin {
namespace {

using testing::golden_direction;

Vector vec(double a, double b) { return (Vector(2) << a, b).finished(); }

class LinearizationTest : public ::testing::Test {
 protected:
  DirectionVector alpha = golden_direction();
  std::shared_ptr<const Battery> battery = make_battery(alpha);
  TorusPoint x = TorusPoint(Vector::Zero(2));
  testing::Rng rng{71};

  TorusPoint random_point() { return TorusPoint(testing::uniform_vector(rng, 2, 0.0, 1.0)); }

  LinearizationPoint at(const TorusPoint& y) { return linearize(y, x, testing::random_path(rng, x, y, alpha), alpha, battery); }
};

TEST_F(LinearizationTest, BatteryContents) {
  EXPECT_NE(battery->find("dx1"), Battery::npos);
  EXPECT_NE(battery->find("theta[1,2]"), Battery::npos);
  EXPECT_NE(battery->find("theta[1,2]cos[1,-1]"), Battery::npos);
  EXPECT_NE(battery->find("eta0"), Battery::npos);
  EXPECT_NE(battery->find("eta0dx2"), Battery::npos);
  for (const auto& f : battery->forms) {
    const TrigPoly contraction = contract_with_flow(f.form, alpha);
    if (f.family == FormFamily::transverse) EXPECT_LT(contraction.max_coefficient(), 1e-15) << f.id;
    if (f.family == FormFamily::unit_flow) {
      EXPECT_NEAR(contraction.mean(), 1.0, 1e-15) << f.id;
      EXPECT_LT(contraction.without_mean().max_coefficient(), 1e-15) << f.id;
    }
  }
}

TEST_F(LinearizationTest, TrivialPathEvaluatesToZero) {
  const LinearizationPoint p = linearize(x, x, PiecewiseCurve::trivial(LiftPoint(x.coords)), alpha, battery);
  for (double v : p.evaluations) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(albanese(p).coords, Vector::Zero(2));
}

TEST_F(LinearizationTest, LoopPathKeepsRawIntegrals) {
  for (int i = 0; i < 10; ++i) {
    const PiecewiseCurve loop = testing::random_loop(rng, x, alpha);
    const LinearizationPoint p = linearize(x, x, loop, alpha, battery);
    for (std::size_t k = 0; k < battery->forms.size(); ++k) {
      EXPECT_NEAR(p.evaluations[k], integrate(loop, battery->forms[k].form), 1e-10);
    }
  }
}

TEST_F(LinearizationTest, FlowPathGivesGeneratorTimesT) {
  const GeneratorCurrent c = generator(alpha, battery);
  for (double t : {-3.5, 0.25, 7.0}) {
    const PiecewiseCurve path = PiecewiseCurve::from_steps(LiftPoint(x.coords), {{alpha.alpha() * t, SegmentKind::flow}});
    const LinearizationPoint p = linearize(flow(x, t, alpha), x, path, alpha, battery);
    for (std::size_t k = 0; k < battery->forms.size(); ++k) EXPECT_NEAR(p.evaluations[k], c.values[k] * t, 1e-10);
  }
}

TEST_F(LinearizationTest, EndpointChecked) {
  const PiecewiseCurve path = PiecewiseCurve::from_steps(LiftPoint(x.coords), {{vec(0.3, 0.2), SegmentKind::transverse}});
  EXPECT_THROW(linearize(TorusPoint(vec(0.4, 0.2)), x, path, alpha, battery), EndpointMismatch);
  EXPECT_THROW(linearize(TorusPoint(vec(0.3, 0.2)), TorusPoint(vec(0.1, 0.0)), path, alpha, battery), EndpointMismatch);
}

TEST_F(LinearizationTest, GeneratorValues) {
  const GeneratorCurrent c = generator(alpha, battery);
  EXPECT_EQ(c.value("dx1"), alpha[0]);
  EXPECT_EQ(c.value("dx2"), alpha[1]);
  EXPECT_NEAR(c.value("cos[1,0]dx1"), 0.0, 1e-15);
  EXPECT_NEAR(c.value("eta0"), 1.0, 1e-15);
  for (std::size_t k = 0; k < battery->forms.size(); ++k) {
    if (battery->forms[k].family == FormFamily::transverse) EXPECT_NEAR(c.values[k], 0.0, 1e-15);
  }
  const TrigPoly f = TrigPoly::cosine((LatticeVector(2) << 2, 1).finished());
  EXPECT_NEAR(solve_for_form(exterior_derivative(f), alpha).c, 0.0, 1e-15);
}

TEST_F(LinearizationTest, EquivarianceIsExact) {
  for (int i = 0; i < 30; ++i) {
    const LinearizationPoint p = at(random_point());
    EXPECT_EQ(check_equivariance(p, 0.0, alpha), 0.0);
    const double t = testing::uniform(rng, -10.0, 10.0);
    EXPECT_LT(check_equivariance(p, t, alpha), 1e-9);
  }
}

TEST_F(LinearizationTest, EquivarianceComposes) {
  for (int i = 0; i < 10; ++i) {
    const LinearizationPoint p = at(random_point());
    const double t1 = testing::uniform(rng, -5.0, 5.0), t2 = testing::uniform(rng, -5.0, 5.0);
    const double d1 = check_equivariance(p, t1, alpha);
    const LinearizationPoint q = flow_point(p, t1, alpha);
    const double d2 = check_equivariance(q, t2, alpha);
    EXPECT_LE(check_equivariance(p, t1 + t2, alpha), d1 + d2 + 1e-9);
  }
}

TEST_F(LinearizationTest, AlbaneseIsDisplacement) {
  for (int i = 0; i < 30; ++i) {
    const TorusPoint y = random_point();
    const LinearizationPoint p1 = at(y);
    const LinearizationPoint p2 = at(y);
    const Vector expected = reduce_mod_one(y.coords - x.coords);
    EXPECT_LE(circle_distance(albanese(p1).coords, expected), 1e-9);
    EXPECT_LE(circle_distance(albanese(p2).coords, expected), 1e-9);
    const PiecewiseCurve looped = concatenate(p1.path(), testing::random_loop(rng, y, alpha));
    const LinearizationPoint p3 = linearize(y, x, looped, alpha, battery);
    EXPECT_LE(circle_distance(albanese(p3).coords, albanese(p1).coords), 1e-9);
  }
}

TEST_F(LinearizationTest, AlbaneseSemiConjugacy) {
  for (int i = 0; i < 20; ++i) {
    const LinearizationPoint p = at(random_point());
    const double t = testing::uniform(rng, -10.0, 10.0);
    const LinearizationPoint q = flow_point(p, t, alpha);
    const Vector shifted = reduce_mod_one(albanese(p).coords + t * alpha.alpha());
    EXPECT_LE(circle_distance(albanese(q).coords, shifted), 1e-9);
  }
}

TEST_F(LinearizationTest, GeneratorProjectsOntoFlowDirection) {
  const GeneratorCurrent c = generator(alpha, battery);
  for (double t : {0.3, 1.7, -4.2}) {
    Vector periods(2);
    periods << c.value("dx1") * t, c.value("dx2") * t;
    EXPECT_LE(circle_distance(reduce_mod_one(periods), reduce_mod_one(Vector(t * alpha.alpha()))), 1e-12);
  }
}

TEST_F(LinearizationTest, PathDifferenceIsClosingLoop) {
  for (int i = 0; i < 15; ++i) {
    const TorusPoint y = random_point();
    const LinearizationPoint p1 = at(y);
    const LinearizationPoint p2 = at(y);
    const PiecewiseCurve closing = concatenate(p1.path(), reverse(p2.path()));
    ASSERT_TRUE(closing.is_closed());
    EXPECT_TRUE(is_loop_current(p1.representative.base(), p2.representative.base()));
    for (std::size_t k = 0; k < battery->forms.size(); ++k) {
      EXPECT_NEAR(p1.evaluations[k] - p2.evaluations[k], integrate(closing, battery->forms[k].form), 1e-10);
    }
  }
}

TEST_F(LinearizationTest, BlindToExactForms) {
  for (int i = 0; i < 10; ++i) {
    const LinearizationPoint p = at(random_point());
    const TrigPoly f = testing::random_trig_poly(rng, 2, 3, 4);
    EXPECT_NEAR(evaluate_twisted(p.representative, exterior_derivative(f)), 0.0, 1e-10);
  }
}

TEST_F(LinearizationTest, ProbeSeparatesDistinctPoints) {
  const LinearizationPoint p1 = at(TorusPoint(vec(0.2, 0.3)));
  const LinearizationPoint p2 = at(TorusPoint(vec(0.7, 0.3)));
  const SeparationReport r = injectivity_probe(p1, p2);
  EXPECT_EQ(r.status, SeparationReport::Status::separated);
  EXPECT_EQ(r.form_id, "dx1");
  EXPECT_NEAR(std::fmod(r.gap, 1.0), 0.5, 1e-9);
}

TEST_F(LinearizationTest, ProbeOnSamePoint) {
  const LinearizationPoint p = at(TorusPoint(vec(0.2, 0.3)));
  const SeparationReport same = injectivity_probe(p, p);
  EXPECT_EQ(same.status, SeparationReport::Status::same_class);
  EXPECT_EQ(same.gap, 0.0);
  const PiecewiseCurve looped = concatenate(p.path(), testing::random_loop(rng, p.endpoint, alpha));
  const LinearizationPoint q = linearize(p.endpoint, x, looped, alpha, battery);
  const SeparationReport other = injectivity_probe(p, q);
  EXPECT_EQ(other.status, SeparationReport::Status::distinct_class);
  EXPECT_TRUE(project_pi_x(p.representative.base(), x).equals(project_pi_x(q.representative.base(), x)));
}

TEST_F(LinearizationTest, ProbeSeparatesTinyFlowStep) {
  const TorusPoint y = TorusPoint(vec(0.2, 0.3));
  const LinearizationPoint p1 = at(y);
  const LinearizationPoint p2 = flow_point(p1, 1e-7, alpha);
  const SeparationReport r = injectivity_probe(p1, p2, 1e-9);
  EXPECT_EQ(r.status, SeparationReport::Status::separated);
  EXPECT_GT(r.gap, 1e-9);
  const SeparationReport coarse = injectivity_probe(p1, p2, 1e-6);
  EXPECT_EQ(coarse.status, SeparationReport::Status::inconclusive);
}

}  // namespace
}  // namespace torlin
