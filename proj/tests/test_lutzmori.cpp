#include <doctest.h>

#include <cmath>

#include "cusplink/catalog.hpp"
#include "cusplink/hirzebruch.hpp"
#include "cusplink/lutzmori.hpp"
#include "test_util.hpp"

using namespace cusplink;

namespace {
SamplePlan small_plan(long n = 500, uint64_t seed = 42) {
  SamplePlan p;
  p.seed = seed;
  p.n_samples = n;
  return p;
}
}  // namespace

TEST_CASE("lutz_form3 endpoint values") {
  KFormValue at_pi = lutz_form3(make_tube_point3(0.3, M_PI, 1.0));
  CHECK(at_pi.coef(1) == 1.0);                 // -cos(pi) dz = dz
  CHECK(std::fabs(at_pi.coef(4)) <= 1e-12);    // s sin s ~ 0
  KFormValue at_zero = lutz_form3(make_tube_point3(0.3, 0.0, 1.0));
  CHECK(at_zero.coef(1) == -1.0);
  CHECK(at_zero.coef(4) == 0.0);
  CHECK_THROWS_WITH_AS(make_tube_point3(0, 4.0, 0), doctest::Contains("BadInput"), Error);
}

TEST_CASE("lutz3 contact coefficient equals s + sin s cos s") {
  FormField lam = lutz_field3();
  testutil::Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    double s = rng.real(0.01, M_PI);
    Point p = Point::of({rng.real(0, 1), s, rng.real(0, 2 * M_PI)});
    double coef = wedge(lam.eval(p), ext_derivative(lam, p)).coef(7);
    CHECK(std::fabs(coef - (s + std::sin(s) * std::cos(s))) <= 1e-9);
    CHECK(coef > 0.0);
  }
  // s = pi: coefficient is exactly pi up to rounding
  Point top = Point::of({0.0, M_PI, 0.5});
  CHECK(wedge(lam.eval(top), ext_derivative(lam, top)).coef(7) ==
        doctest::Approx(M_PI).epsilon(1e-12));

  for (const Report& r : contact3_check(small_plan(1000))) {
    CAPTURE(r.check);
    CAPTURE(r.max_abs_error);
    CHECK(r.pass);
  }
}

TEST_CASE("lutz_mori_form5 endpoint and theta independence") {
  CuspModel m = build_cusp_model(BCycle({3}));
  double x = 0.3, y = 0.8, z = 0.45;
  KFormValue ap = m.sol.alpha_plus.eval(Point::of({x, y, z}));
  KFormValue am = m.sol.alpha_minus.eval(Point::of({x, y, z}));

  KFormValue at_pi = lutz_mori_form5(m.sol, make_tube_point5(x, y, z, M_PI, 2.2));
  for (uint32_t bit : {1u, 2u, 4u})
    CHECK(std::fabs(at_pi.coef(bit) - ap.coef(bit)) <= 1e-12);
  CHECK(std::fabs(at_pi.coef(8)) == 0.0);
  CHECK(std::fabs(at_pi.coef(16)) <= 1e-12);

  KFormValue at_zero = lutz_mori_form5(m.sol, make_tube_point5(x, y, z, 0.0, 2.2));
  for (uint32_t bit : {1u, 2u, 4u})
    CHECK(std::fabs(at_zero.coef(bit) - am.coef(bit)) <= 1e-12);

  KFormValue t1 = lutz_mori_form5(m.sol, make_tube_point5(x, y, z, 1.0, 0.4));
  KFormValue t2 = lutz_mori_form5(m.sol, make_tube_point5(x, y, z, 1.0, 5.1));
  CHECK(t1.max_abs_diff(t2) == 0.0);
}

TEST_CASE("lutz5 contact condition on the acceptance grid") {
  std::vector<SolModel> models;
  for (const BCycle& c : catalog_cycles()) models.push_back(build_cusp_model(c).sol);
  for (const MoriPreset& mp : catalog_mori())
    models.push_back(build_sol_model(mori_matrix(mp.m, mp.k)));

  for (const SolModel& sol : models) {
    CAPTURE(sol.a);
    // hand-derived oracle: coef = 2 ln a (s (1 + cos^2 s) + sin 2s)
    FormField lam = lutz_mori_field5(sol);
    testutil::Rng rng(7);
    for (int i = 0; i < 60; ++i) {
      double s = rng.real(0.05, M_PI);
      Point p = Point::of({rng.real(0, 1), rng.real(0, 1), rng.real(0, 1), s,
                           rng.real(0, 2 * M_PI)});
      KFormValue lv = lam.eval(p);
      KFormValue dl = ext_derivative(lam, p);
      double coef = wedge(wedge(lv, dl), dl).coef(31);
      double oracle = 2.0 * sol.ln_a * (s * (1.0 + std::cos(s) * std::cos(s)) + std::sin(2 * s));
      CHECK(coef == doctest::Approx(oracle).epsilon(1e-9));
    }
    for (const Report& r : lutz5_suite(sol, small_plan(2000))) {
      CAPTURE(r.check);
      CAPTURE(r.max_abs_error);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("contact5_check with zero samples passes vacuously") {
  SolModel sol = build_cusp_model(BCycle({3})).sol;
  for (const Report& r : contact5_check(sol, small_plan(0))) {
    CHECK(r.pass);
    CHECK(r.samples == 0);
    CHECK(r.max_abs_error == 0.0);
  }
  CHECK_THROWS_WITH_AS(contact5_check(sol, small_plan(5), 0.0), doctest::Contains("BadInput"),
                       Error);
}

TEST_CASE("degenerate tube form fails the contact condition") {
  SolModel sol = build_cusp_model(BCycle({3})).sol;
  // drop the dtheta term: lambda_deg = (1-cos s)/2 (alpha_+ + alpha_-)
  FormField ap = sol.alpha_plus, am = sol.alpha_minus;
  FormField deg;
  deg.dim = 5;
  deg.degree = 1;
  deg.eval = [ap, am](const Point& q) {
    Point base = Point::of({q.x[0], q.x[1], q.x[2]});
    double f = 0.5 * (1.0 - std::cos(q.x[3]));
    KFormValue a = ap.eval(base);
    KFormValue b = am.eval(base);
    a += b;
    KFormValue out(5, 1);
    for (uint32_t bit : {1u, 2u, 4u}) out.set_coef(bit, f * a.coef(bit));
    return out;
  };
  testutil::Rng rng(11);
  for (int i = 0; i < 30; ++i) {
    Point p = Point::of({rng.real(0, 1), rng.real(0, 1), rng.real(0, 1), rng.real(0.3, 3.0),
                         rng.real(0, 2 * M_PI)});
    KFormValue lv = deg.eval(p);
    KFormValue dl = fd_ext_derivative(deg, p, 1e-5);
    CHECK(std::fabs(wedge(wedge(lv, dl), dl).coef(31)) <= 1e-6);
  }
}

TEST_CASE("boundary matching at s = pi") {
  for (const BCycle& c : catalog_cycles()) {
    SolModel sol = build_cusp_model(c).sol;
    Report r = boundary_match_check(sol, small_plan());
    CAPTURE(r.max_abs_error);
    CHECK(r.pass);
  }
}
