#include "cusplink/lutzmori.hpp"

#include <bit>
#include <cmath>

namespace cusplink {

namespace {
// dim-3 tube chart (z, s, theta)
constexpr uint32_t kDz3 = 1, kDth3 = 4;
constexpr uint32_t kDzDs3 = 3, kDsDth3 = 6;
// dim-5 chart (x, y, z, s, theta)
constexpr uint32_t kDs5 = 8, kDth5 = 16;
constexpr uint32_t kVol5 = 31;

void check_s(double s) {
  if (!(s >= 0.0 && s <= M_PI)) fail("BadInput", "s must lie in [0, pi]");
}
}  // namespace

TubePoint3 make_tube_point3(double z, double s, double theta) {
  check_s(s);
  return TubePoint3{z, s, theta};
}

TubePoint5 make_tube_point5(double x, double y, double z, double s, double theta) {
  check_s(s);
  return TubePoint5{x, y, z, s, theta};
}

KFormValue lutz_form3(const TubePoint3& p) {
  KFormValue f(3, 1);
  f.set_coef(kDz3, -std::cos(p.s));
  f.set_coef(kDth3, -p.s * std::sin(p.s));
  return f;
}

FormField lutz_field3() {
  FormField d;
  d.dim = 3;
  d.degree = 2;
  d.eval = [](const Point& q) {
    double s = q.x[1];
    KFormValue f(3, 2);
    // d(-cos s) ^ dz = sin s ds ^ dz = -sin s dz ^ ds
    f.set_coef(kDzDs3, -std::sin(s));
    f.set_coef(kDsDth3, -(std::sin(s) + s * std::cos(s)));
    return f;
  };
  FormField lam;
  lam.dim = 3;
  lam.degree = 1;
  lam.eval = [](const Point& q) { return lutz_form3(TubePoint3{q.x[0], q.x[1], q.x[2]}); };
  lam.analytic_d = std::make_shared<const FormField>(std::move(d));
  return lam;
}

namespace {

// Lift a 3d form value on (x,y,z) into the 5d chart; the coordinate bits agree.
KFormValue lift35(const KFormValue& f, int degree) {
  KFormValue out(5, degree);
  for (uint32_t mask = 0; mask < 8u; ++mask) {
    if (std::popcount(mask) != degree) continue;
    out.set_coef(mask, f.coef(mask));
  }
  return out;
}

}  // namespace

KFormValue lutz_mori_form5(const SolModel& m, const TubePoint5& p) {
  Point base = Point::of({p.x, p.y, p.z});
  double fp = 0.5 * (1.0 - std::cos(p.s)), fm = 0.5 * (1.0 + std::cos(p.s));
  KFormValue lam = lift35(m.alpha_plus.eval(base), 1);
  lam.scale(fp);
  KFormValue am = lift35(m.alpha_minus.eval(base), 1);
  am.scale(fm);
  lam += am;
  lam.add_coef(kDth5, -p.s * std::sin(p.s));
  return lam;
}

FormField lutz_mori_field5(const SolModel& m) {
  // Capture the alpha fields by value so the tube field owns its data.
  FormField alpha_p = m.alpha_plus, alpha_m = m.alpha_minus;
  FormField d;
  d.dim = 5;
  d.degree = 2;
  d.eval = [alpha_p, alpha_m](const Point& q) {
    Point base = Point::of({q.x[0], q.x[1], q.x[2]});
    double s = q.x[3];
    double fp = 0.5 * (1.0 - std::cos(s)), fm = 0.5 * (1.0 + std::cos(s));
    double dfp = 0.5 * std::sin(s), dfm = -0.5 * std::sin(s);
    KFormValue out(5, 2);
    // f'(s) ds ^ alpha = -f'(s) alpha_i dx^i ^ ds
    KFormValue ap = alpha_p.eval(base), am = alpha_m.eval(base);
    for (uint32_t bit = 1; bit <= 4u; bit <<= 1) {
      out.add_coef(bit | kDs5, -(dfp * ap.coef(bit) + dfm * am.coef(bit)));
    }
    KFormValue dap = lift35(ext_derivative(alpha_p, base), 2);
    dap.scale(fp);
    out += dap;
    KFormValue dam = lift35(ext_derivative(alpha_m, base), 2);
    dam.scale(fm);
    out += dam;
    out.add_coef(kDs5 | kDth5, -(std::sin(s) + s * std::cos(s)));
    return out;
  };
  FormField lam;
  lam.dim = 5;
  lam.degree = 1;
  lam.eval = [alpha_p, alpha_m](const Point& q) {
    double s = q.x[3];
    Point base = Point::of({q.x[0], q.x[1], q.x[2]});
    double fp = 0.5 * (1.0 - std::cos(s)), fm = 0.5 * (1.0 + std::cos(s));
    KFormValue v = lift35(alpha_p.eval(base), 1);
    v.scale(fp);
    KFormValue vm = lift35(alpha_m.eval(base), 1);
    vm.scale(fm);
    v += vm;
    v.add_coef(kDth5, -s * std::sin(s));
    return v;
  };
  lam.analytic_d = std::make_shared<const FormField>(std::move(d));
  return lam;
}

std::vector<Report> contact3_check(const SamplePlan& plan, double s_min) {
  if (!(s_min > 0.0)) fail("BadInput", "s_min must be positive");
  ReportBuilder an("lutz3.contact", plan.tol_or(1e-9));
  an.param("s_min", s_min);
  ReportBuilder fd("lutz3.fd", plan.tol_or(1e-6));
  fd.param("h", plan.h);
  FormField lam = lutz_field3();
  for (long i = 0; i < plan.n_samples; ++i) {
    double z = sample_u01(plan.seed, static_cast<uint64_t>(i), 0);
    double s = s_min + (M_PI - s_min) * sample_u01(plan.seed, static_cast<uint64_t>(i), 1);
    double th = 2.0 * M_PI * sample_u01(plan.seed, static_cast<uint64_t>(i), 2);
    Point p = Point::of({z, s, th});
    KFormValue lv = lam.eval(p);
    double coef_an = wedge(lv, ext_derivative(lam, p)).coef(7);
    double oracle = s + std::sin(s) * std::cos(s);
    if (!(coef_an > 0.0))
      an.observe_failure(i, "coefficient not positive");
    else
      an.observe(i, std::fabs(coef_an - oracle));
    double coef_fd = wedge(lv, fd_ext_derivative(lam, p, plan.h)).coef(7);
    fd.observe(i, std::fabs(coef_fd - coef_an));
  }
  std::vector<Report> out;
  out.push_back(an.finish());
  out.push_back(fd.finish());
  return out;
}

std::vector<Report> contact5_check(const SolModel& m, const SamplePlan& plan, double s_min) {
  if (!(s_min > 0.0)) fail("BadInput", "s_min must be positive");
  double floor_mag = plan.tol_or(1e-6);
  ReportBuilder nv("lutz5.contact", 0.0);
  nv.param("s_min", s_min).param("min_magnitude", floor_mag);
  ReportBuilder fd("lutz5.fd", plan.tol_or(1e-6));
  fd.param("h", plan.h);
  FormField lam = lutz_mori_field5(m);
  double min_signed = 0.0;
  double sign_ref = 0.0;
  bool first = true;
  for (long i = 0; i < plan.n_samples; ++i) {
    double x = sample_u01(plan.seed, static_cast<uint64_t>(i), 0);
    double y = sample_u01(plan.seed, static_cast<uint64_t>(i), 1);
    double z = sample_u01(plan.seed, static_cast<uint64_t>(i), 2);
    double s = s_min + (M_PI - s_min) * sample_u01(plan.seed, static_cast<uint64_t>(i), 3);
    double th = 2.0 * M_PI * sample_u01(plan.seed, static_cast<uint64_t>(i), 4);
    Point p = Point::of({x, y, z, s, th});
    KFormValue lv = lam.eval(p);
    KFormValue dl = ext_derivative(lam, p);
    double coef = wedge(wedge(lv, dl), dl).coef(kVol5);
    if (first) {
      sign_ref = coef >= 0 ? 1.0 : -1.0;
      min_signed = sign_ref * coef;
      first = false;
    } else {
      min_signed = std::min(min_signed, sign_ref * coef);
    }
    nv.observe(i, 0.0);
    double coef_fd = wedge(wedge(lv, fd_ext_derivative(lam, p, plan.h)), dl).coef(kVol5);
    fd.observe(i, std::fabs(coef_fd - coef));
  }
  if (!first) {
    nv.detail("min_signed_coef", sign_ref * min_signed);
    nv.detail("sign", sign_ref > 0 ? "+" : "-");
    nv.aggregate(std::max(0.0, floor_mag - min_signed));
  }
  std::vector<Report> out;
  out.push_back(nv.finish());
  out.push_back(fd.finish());
  return out;
}

Report boundary_match_check(const SolModel& m, const SamplePlan& plan) {
  ReportBuilder rb("lutz5.boundary", plan.tol_or(1e-12));
  for (long i = 0; i < plan.n_samples; ++i) {
    double x = sample_u01(plan.seed, static_cast<uint64_t>(i), 0);
    double y = sample_u01(plan.seed, static_cast<uint64_t>(i), 1);
    double z = sample_u01(plan.seed, static_cast<uint64_t>(i), 2);
    double th = 2.0 * M_PI * sample_u01(plan.seed, static_cast<uint64_t>(i), 4);
    KFormValue lam = lutz_mori_form5(m, TubePoint5{x, y, z, M_PI, th});
    KFormValue ap = lift35(m.alpha_plus.eval(Point::of({x, y, z})), 1);
    rb.observe(i, lam.max_abs_diff(ap));
  }
  return rb.finish();
}

std::vector<Report> lutz3_suite(const SamplePlan& plan) { return contact3_check(plan); }

std::vector<Report> lutz5_suite(const SolModel& m, const SamplePlan& plan) {
  std::vector<Report> out = contact5_check(m, plan);
  out.push_back(boundary_match_check(m, plan));
  return out;
}

}  // namespace cusplink
