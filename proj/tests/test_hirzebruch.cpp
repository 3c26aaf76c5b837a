#include <doctest.h>

#include <cmath>
#include <complex>

#include "cusplink/catalog.hpp"
#include "cusplink/hirzebruch.hpp"
#include "test_util.hpp"

using namespace cusplink;

namespace {

SamplePlan small_plan(long n = 300, uint64_t seed = 42) {
  SamplePlan p;
  p.seed = seed;
  p.n_samples = n;
  return p;
}

const CuspModel& model3() {
  static const CuspModel m = build_cusp_model(BCycle({3}));
  return m;
}

}  // namespace

TEST_CASE("build_cusp_model exact data") {
  const CuspModel& m = model3();
  CHECK(m.w0 == QuadElem(5, Rat(3, 2), Rat(1, 2)));
  CHECK(m.unit == QuadElem(5, Rat(3, 2), Rat(-1, 2)));
  CHECK(m.a_d == doctest::Approx(2.6180339887498949).epsilon(1e-14));
  CHECK(m.s_d == doctest::Approx(std::sqrt(std::sqrt(5.0))).epsilon(1e-14));
 // link frame: det(v_+ | v_-) = 1 and A v_+ = a v_+ in floats
  double det = m.sol.v_plus[0] * m.sol.v_minus[1] - m.sol.v_plus[1] * m.sol.v_minus[0];
  CHECK(det == doctest::Approx(1.0).epsilon(1e-13));
  auto [avx, avy] = m.monodromy.apply(m.sol.v_plus[0], m.sol.v_plus[1]);
  CHECK(avx == doctest::Approx(m.a_d * m.sol.v_plus[0]).epsilon(1e-12));
  CHECK(avy == doctest::Approx(m.a_d * m.sol.v_plus[1]).epsilon(1e-12));
}

TEST_CASE("phi/psi inverse maps") {
  const CuspModel& m = model3();

  // z1 = z2 gives u0 = 1
  ChartPoint c0 = psi_map(m, UpperPoint{Cplx(0.3, 1.2), Cplx(0.3, 1.2)});
  CHECK(std::abs(c0.u - Cplx(1.0, 0.0)) <= 1e-12);

  // |u0| < 1, |v0| < 1 implies the image lies in H x H
  ChartPoint inside{0, Cplx(0.4, 0.3), Cplx(-0.2, 0.5)};
  UpperPoint z = phi_map(m, inside);
  CHECK(z.z1.imag() > 0.0);
  CHECK(z.z2.imag() > 0.0);

  ChartPoint outside{0, Cplx(3.0, 0.0), Cplx(2.0, 0.0)};
  CHECK_THROWS_WITH_AS(phi_map(m, outside), doctest::Contains("NotInYPlus"), Error);
  ChartPoint on_axis{0, Cplx(0.0, 0.0), Cplx(0.5, 0.0)};
  CHECK_THROWS_WITH_AS(phi_map(m, on_axis), doctest::Contains("ChartBoundary"), Error);

  // psi is M-invariant: shifting z by a in M reproduces the same chart point
  testutil::Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    UpperPoint zz{Cplx(rng.real(-2, 2), rng.real(0.2, 3)), Cplx(rng.real(-2, 2), rng.real(0.2, 3))};
    ChartPoint base = psi_map(m, zz);
    long k = rng.range(-3, 3), l = rng.range(-3, 3);
    UpperPoint shifted{zz.z1 + (k * m.w0_d + l), zz.z2 + (k * m.w0bar_d + l)};
    ChartPoint moved = psi_map(m, shifted);
    CHECK(std::abs(moved.u - base.u) <= 1e-9 * std::max(1.0, std::abs(base.u)));
    CHECK(std::abs(moved.v - base.v) <= 1e-9 * std::max(1.0, std::abs(base.v)));
  }

  for (const BCycle& c : catalog_cycles()) {
    CuspModel cm = build_cusp_model(c);
    for (const Report& r : phi_psi_checks(cm, small_plan(500))) {
      CAPTURE(r.check);
      CAPTURE(r.max_abs_error);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("chart transitions") {
  const CuspModel& m = model3();
  ChartPoint c{0, Cplx(0.6, 0.2), Cplx(0.1, -0.7)};
  ChartPoint fwd = chart_transition(m, c, +1);
  CHECK(fwd.k == 1);
  ChartPoint back = chart_transition(m, fwd, -1);
  CHECK(back.k == 0);
  CHECK(std::abs(back.u - c.u) <= 1e-12);
  CHECK(std::abs(back.v - c.v) <= 1e-12);

  ChartPoint zero{0, Cplx(0.0, 0.0), Cplx(0.5, 0.0)};
  CHECK_THROWS_WITH_AS(chart_transition(m, zero, +1), doctest::Contains("ChartBoundary"), Error);
  CHECK_THROWS_WITH_AS(chart_transition(m, c, 2), doctest::Contains("BadInput"), Error);

  for (const BCycle& c2 : catalog_cycles()) {
    CuspModel cm = build_cusp_model(c2);
    for (const Report& r : chart_checks(cm, small_plan())) {
      CAPTURE(r.check);
      CAPTURE(r.max_abs_error);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("psh value and Levi matrix") {
  UpperPoint unit{Cplx(0.0, 1.0), Cplx(0.0, 1.0)};
  auto l = levi_matrix(unit);
  CHECK(4.0 * l[0] == 2.0);
  CHECK(4.0 * l[1] == 1.0);
  CHECK(4.0 * l[2] == 1.0);
  CHECK(4.0 * l[3] == 2.0);
  CHECK(psh_value(unit) == 1.0);

  testutil::Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    double y1 = rng.real(0.01, 100), y2 = rng.real(0.01, 100);
    auto lv = levi_matrix(UpperPoint{Cplx(0, y1), Cplx(0, y2)});
    CHECK(lv[0] > 0.0);
    CHECK(lv[0] * lv[3] - lv[1] * lv[2] > 0.0);
  }

  for (const Report& r : levi_checks(model3(), small_plan())) {
    CAPTURE(r.check);
    CAPTURE(r.max_abs_error);
    CHECK(r.pass);
  }
}

TEST_CASE("g_action") {
  const CuspModel& m = model3();
  BoundaryPoint p = make_boundary_point(0.7, 2.0, -1.3, 0.5);
  QuadElem zero = QuadElem::rational(m.w0.d0(), 0);

  BoundaryPoint id = g_action(m, 0, zero, p);
  CHECK(id.x1 == p.x1);
  CHECK(id.y1 == p.y1);

  // group law (n1,a1)(n2,a2) = (n1+n2, a1 + eps1 a2)
  testutil::Rng rng(13);
  for (int i = 0; i < 50; ++i) {
    long n1 = rng.range(-3, 3), n2 = rng.range(-3, 3);
    QuadElem a1 = m.w0 * Rat(rng.range(-4, 4)) + Rat(rng.range(-4, 4));
    QuadElem a2 = m.w0 * Rat(rng.range(-4, 4)) + Rat(rng.range(-4, 4));
    BoundaryPoint lhs = g_action(m, n1, a1, g_action(m, n2, a2, p));
    QuadElem composed = a1 + m.unit.pow(n1) * a2;
    BoundaryPoint rhs = g_action(m, n1 + n2, composed, p);
    CHECK(lhs.x1 == doctest::Approx(rhs.x1).epsilon(1e-12));
    CHECK(lhs.y1 == doctest::Approx(rhs.y1).epsilon(1e-12));
    CHECK(lhs.x2 == doctest::Approx(rhs.x2).epsilon(1e-12));
    CHECK(lhs.y2 == doctest::Approx(rhs.y2).epsilon(1e-12));
    CHECK(lhs.y1 * lhs.y2 == doctest::Approx(1.0).epsilon(1e-12));
  }

  QuadElem not_in_m = m.w0 * Rat(1, 2);
  CHECK_THROWS_WITH_AS(g_action(m, 1, not_in_m, p), doctest::Contains("NotInLattice"), Error);
}

TEST_CASE("lattice_decompose") {
  const CuspModel& m = model3();
  auto r1 = lattice_decompose(m, m.w0_d, m.w0bar_d, 1e-6);
  REQUIRE(r1.has_value());
  CHECK(r1->first == 1);
  CHECK(r1->second == 0);

  auto r2 = lattice_decompose(m, 1.0, 1.0, 1e-6);
  REQUIRE(r2.has_value());
  CHECK(r2->first == 0);
  CHECK(r2->second == 1);

  testutil::Rng rng(17);
  for (int i = 0; i < 300; ++i) {
    long k = rng.range(-1000000, 1000000), l = rng.range(-1000000, 1000000);
    auto r = lattice_decompose(m, k * m.w0_d + l, k * m.w0bar_d + l, 1e-6);
    REQUIRE(r.has_value());
    CHECK(r->first == k);
    CHECK(r->second == l);
  }

  CHECK_FALSE(lattice_decompose(m, 0.5 * M_PI, 0.123, 1e-6).has_value());
}

TEST_CASE("quotient_equiv") {
  const CuspModel& m = model3();
  BoundaryPoint p = make_boundary_point(0.4, 1.7, 2.2, 1.0 / 1.7);

  auto self = quotient_equiv(m, p, p, 1e-6);
  REQUIRE(self.has_value());
  CHECK(self->n == 0);
  CHECK(self->k == 0);
  CHECK(self->l == 0);

  testutil::Rng rng(19);
  for (int i = 0; i < 100; ++i) {
    long n = rng.range(-4, 4);
    long k = rng.range(-5, 5), l = rng.range(-5, 5);
    QuadElem a = m.w0 * Rat(k) + Rat(l);
    BoundaryPoint q = g_action(m, n, a, p);
    auto w = quotient_equiv(m, p, q, 1e-6);
    REQUIRE(w.has_value());
    CHECK(w->n == n);
    CHECK(w->k == k);
    CHECK(w->l == l);
  }

  BoundaryPoint off = make_boundary_point(p.x1 + 0.5 * M_SQRT2, p.y1, p.x2, p.y2);
  CHECK_FALSE(quotient_equiv(m, p, off, 1e-6).has_value());
}

TEST_CASE("f_map and h_map") {
  for (const BCycle& c : catalog_cycles()) {
    CuspModel m = build_cusp_model(c);
    testutil::Rng rng(23);
    for (int i = 0; i < 200; ++i) {
      Point p = Point::of({rng.real(-2, 2), rng.real(-2, 2), rng.real(-1, 2)});
      BoundaryPoint q = f_map(m, p);
      CHECK(std::fabs(q.y1 * q.y2 - 1.0) <= 1e-12);
      Point back = h_map(m, q);
      for (int j = 0; j < 3; ++j) {
        size_t sj = static_cast<size_t>(j);
        CHECK(std::fabs(back.x[sj] - p.x[sj]) <= 1e-12 * std::max(1.0, std::fabs(p.x[sj])));
      }
    }

    // F(A(1,w0)/s, 0) ~ F((1,w0)/s, 1): F descends to the mapping torus
    double vx = m.sol.v_plus[0], vy = m.sol.v_plus[1];
    auto [ax, ay] = m.monodromy.apply(vx, vy);
    auto w = quotient_equiv(m, f_map(m, Point::of({vx, vy, 1.0})),
                            f_map(m, Point::of({ax, ay, 0.0})), 1e-6);
    REQUIRE(w.has_value());
    CHECK(w->n == 1);
    CHECK(w->k == 0);
    CHECK(w->l == 0);

    for (const Report& r : link_checks(m, small_plan())) {
      CAPTURE(r.check);
      CAPTURE(r.max_abs_error);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("pullback identity") {
  for (const BCycle& c : catalog_cycles()) {
    CuspModel m = build_cusp_model(c);
    auto rs = pullback_check(m, small_plan(1000));
    REQUIRE(rs.size() == 2);
    CAPTURE(rs[0].max_abs_error);
    CHECK(rs[0].pass);  // |F* alpha - s (beta_+ + beta_-)| <= 1e-9
    CAPTURE(rs[1].max_abs_error);
    CHECK(rs[1].pass);  // analytic vs fd Jacobian <= 1e-6
  }

  // v = 0 gives 0 on both sides; the pairing is linear in v
  const CuspModel& m = model3();
  Point p = Point::of({0.3, 0.6, 0.4});
  auto j = f_jacobian(m, p);
  BoundaryPoint q = f_map(m, p);
  auto pair_with = [&](const Vec& v) {
    Vec pushed;
    pushed.dim = 4;
    for (int r = 0; r < 4; ++r) {
      double acc = 0;
      for (int cidx = 0; cidx < 3; ++cidx)
        acc += j[static_cast<size_t>(r)][static_cast<size_t>(cidx)] * v.x[static_cast<size_t>(cidx)];
      pushed.x[static_cast<size_t>(r)] = acc;
    }
    return q.y2 * pushed.x[0] + q.y1 * pushed.x[2];
  };
  Vec zero = Point::of({0.0, 0.0, 0.0});
  CHECK(pair_with(zero) == 0.0);
  Vec v = Point::of({0.3, -0.8, 0.5});
  Vec v2 = Point::of({0.6, -1.6, 1.0});
  CHECK(pair_with(v2) == doctest::Approx(2.0 * pair_with(v)).epsilon(1e-13));
}
