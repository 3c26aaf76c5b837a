#include "cusplink/hirzebruch.hpp"

#include <cmath>

namespace cusplink {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kBoundaryTol = 1e-12;

Cplx int_pow(Cplx base, long e) {
  Cplx acc(1.0, 0.0);
  bool invert = e < 0;
  unsigned long n = invert ? static_cast<unsigned long>(-(e + 1)) + 1 : static_cast<unsigned long>(e);
  while (n > 0) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return invert ? 1.0 / acc : acc;
}

double wrap_to_pi(double theta) {
  double t = std::remainder(theta, kTwoPi);
  if (t <= -M_PI) t += kTwoPi;
  return t;
}
}  // namespace

BoundaryPoint make_boundary_point(double x1, double y1, double x2, double y2) {
  if (!(y1 > 0.0) || !(y2 > 0.0)) fail("NotOnBoundary", "y coordinates must be positive");
  if (std::fabs(y1 * y2 - 1.0) > kBoundaryTol)
    fail("NotOnBoundary", "y1*y2 = " + format_double(y1 * y2) + " is not 1 within 1e-12");
  return BoundaryPoint{x1, y1, x2, y2};
}

CuspModel build_cusp_model(const BCycle& c) {
  long r = c.size();
  CFData cf = cf_sequence(c, -r, 3 * r);
  QuadElem w0 = cf.w0();
  QuadElem w0bar = w0.conjugate();
  QuadElem unit = cf.unit();
  double w0_d = w0.to_double();
  double w0bar_d = w0bar.to_double();
  double a_d = unit.inverse().to_double();
  double s_d = std::sqrt((w0 - w0bar).to_double());
  Mat2Z a_mat = cycle_to_matrix(c).inverse();
  SolModel sol = build_sol_model(a_mat, a_d, {1.0 / s_d, w0_d / s_d},
                                 {-1.0 / s_d, -w0bar_d / s_d});
  return CuspModel{c,   std::move(cf), std::move(w0), std::move(w0bar), std::move(unit),
                   w0_d, w0bar_d,      a_d,            s_d,              a_mat,
                   std::move(sol)};
}

std::pair<Cplx, Cplx> phi_map_raw(const CuspModel& m, const ChartPoint& c) {
  if (c.k != 0) fail("BadInput", "phi_map expects a chart-0 point");
  if (c.u == 0.0 || c.v == 0.0) fail("ChartBoundary", "phi_map undefined on u0 = 0 or v0 = 0");
  Cplx lu = std::log(c.u), lv = std::log(c.v);
  Cplx inv_2pii(0.0, -1.0 / kTwoPi);  // 1/(2 pi i)
  return {(m.w0_d * lu + lv) * inv_2pii, (m.w0bar_d * lu + lv) * inv_2pii};
}

UpperPoint phi_map(const CuspModel& m, const ChartPoint& c) {
  auto [z1, z2] = phi_map_raw(m, c);
  if (!(z1.imag() > 0.0) || !(z2.imag() > 0.0))
    fail("NotInYPlus", "image not in H x H (|u0|, |v0| too large)");
  // Reduce (x1, x2) to the fundamental domain of the lattice {k(w0,w0bar) + l(1,1)}.
  double mu = (z1.real() - z2.real()) / (m.w0_d - m.w0bar_d);
  double nu = z1.real() - mu * m.w0_d;
  double k = std::floor(mu), l = std::floor(nu);
  double x1 = z1.real() - k * m.w0_d - l;
  double x2 = z2.real() - k * m.w0bar_d - l;
  return UpperPoint{Cplx(x1, z1.imag()), Cplx(x2, z2.imag())};
}

ChartPoint psi_map(const CuspModel& m, const UpperPoint& z) {
  if (!(z.z1.imag() > 0.0) || !(z.z2.imag() > 0.0))
    fail("BadInput", "psi_map expects a point of H x H");
  Cplx i2pi(0.0, kTwoPi);
  double denom = m.w0_d - m.w0bar_d;
  Cplx u0 = std::exp(i2pi * (z.z1 - z.z2) / denom);
  Cplx v0 = std::exp(i2pi * (m.w0_d * z.z2 - m.w0bar_d * z.z1) / denom);
  return ChartPoint{0, u0, v0};
}

ChartPoint chart_transition(const CuspModel& m, const ChartPoint& c, int direction) {
  if (direction == 1) {
    if (c.u == 0.0) fail("ChartBoundary", "forward transition undefined on u_k = 0");
    long b = m.cycle.at(c.k);
    return ChartPoint{c.k + 1, int_pow(c.u, b) * c.v, 1.0 / c.u};
  }
  if (direction == -1) {
    if (c.v == 0.0) fail("ChartBoundary", "backward transition undefined on v_k = 0");
    long b = m.cycle.at(c.k - 1);
    return ChartPoint{c.k - 1, 1.0 / c.v, c.u * int_pow(c.v, b)};
  }
  fail("BadInput", "direction must be +1 or -1");
}

double psh_value(const UpperPoint& z) { return 1.0 / (z.z1.imag() * z.z2.imag()); }

std::array<double, 4> levi_matrix(const UpperPoint& z) {
  double y1 = z.z1.imag(), y2 = z.z2.imag();
  return {1.0 / (2.0 * y1 * y1 * y1 * y2), 1.0 / (4.0 * y1 * y1 * y2 * y2),
          1.0 / (4.0 * y1 * y1 * y2 * y2), 1.0 / (2.0 * y1 * y2 * y2 * y2)};
}

std::optional<std::pair<Int, Int>> decompose_in_module(const CuspModel& m, const QuadElem& a) {
  if (a.d0() != m.w0.d0()) return std::nullopt;
  // a = k w0 + l  =>  k = a.b / w0.b, l = a.a - k w0.a, both integral.
  Rat k = a.b() / m.w0.b();
  Rat l = a.a() - k * m.w0.a();
  if (k.get_den() != 1 || l.get_den() != 1) return std::nullopt;
  return std::make_pair(Int(k.get_num()), Int(l.get_num()));
}

namespace {

struct GReal {
  double eps, eps_inv, a, abar;
};

GReal g_reals(const CuspModel& m, long n, const QuadElem& a) {
  if (std::labs(n) > 1024) fail("BadInput", "|n| too large for a float-realized action");
  auto kl = decompose_in_module(m, a);
  if (!kl) fail("NotInLattice", "element " + a.to_string() + " is not in M = Z w0 + Z");
  return GReal{m.unit.pow(n).to_double(), m.unit.pow(-n).to_double(), a.to_double(),
               a.conjugate().to_double()};
}

}  // namespace

UpperPoint g_action(const CuspModel& m, long n, const QuadElem& a, const UpperPoint& p) {
  GReal g = g_reals(m, n, a);
  return UpperPoint{g.eps * p.z1 + g.a, g.eps_inv * p.z2 + g.abar};
}

BoundaryPoint g_action(const CuspModel& m, long n, const QuadElem& a, const BoundaryPoint& p) {
  GReal g = g_reals(m, n, a);
  return make_boundary_point(g.eps * p.x1 + g.a, g.eps * p.y1, g.eps_inv * p.x2 + g.abar,
                             g.eps_inv * p.y2);
}

std::optional<std::pair<long, long>> lattice_decompose(const CuspModel& m, double t1, double t2,
                                                       double tau) {
  double kf = (t1 - t2) / (m.w0_d - m.w0bar_d);
  double lf = t1 - kf * m.w0_d;
  double kr = std::round(kf), lr = std::round(lf);
  if (std::fabs(kf - kr) > tau || std::fabs(lf - lr) > tau) return std::nullopt;
  if (std::fabs(kr * m.w0_d + lr - t1) > tau || std::fabs(kr * m.w0bar_d + lr - t2) > tau)
    return std::nullopt;
  if (std::fabs(kr) > 1e15 || std::fabs(lr) > 1e15) return std::nullopt;
  return std::make_pair(static_cast<long>(kr), static_cast<long>(lr));
}

std::optional<GWitness> quotient_equiv(const CuspModel& m, const BoundaryPoint& p,
                                       const BoundaryPoint& q, double tau) {
  double unit_d = m.unit.to_double();
  double n_f = std::log(q.y1 / p.y1) / std::log(unit_d);
  double n_r = std::round(n_f);
  if (std::fabs(n_r) > 64) return std::nullopt;
  long n = static_cast<long>(n_r);
  double eps = m.unit.pow(n).to_double();
  double eps_inv = m.unit.pow(-n).to_double();
  if (std::fabs(q.y1 / (eps * p.y1) - 1.0) > tau) return std::nullopt;
  if (std::fabs(q.y2 / (eps_inv * p.y2) - 1.0) > tau) return std::nullopt;
  auto kl = lattice_decompose(m, q.x1 - eps * p.x1, q.x2 - eps_inv * p.x2, tau);
  if (!kl) return std::nullopt;
  return GWitness{n, kl->first, kl->second};
}

BoundaryPoint f_map(const CuspModel& m, const Point& p) {
  if (p.dim != 3) fail("BadArity", "f_map expects a 3d point");
  double x = p.x[0], y = p.x[1], z = p.x[2];
  return make_boundary_point(y - m.w0_d * x, std::pow(m.a_d, z), y - m.w0bar_d * x,
                             std::pow(m.a_d, -z));
}

Point h_map(const CuspModel& m, const BoundaryPoint& q) {
  double denom = m.w0_d - m.w0bar_d;
  Point p;
  p.dim = 3;
  p.x[0] = (q.x2 - q.x1) / denom;
  p.x[1] = (m.w0_d * q.x2 - m.w0bar_d * q.x1) / denom;
  p.x[2] = std::log(q.y1) / std::log(m.a_d);
  return p;
}

std::array<std::array<double, 3>, 4> f_jacobian(const CuspModel& m, const Point& p) {
  double ln_a = std::log(m.a_d);
  double y1 = std::pow(m.a_d, p.x[2]), y2 = std::pow(m.a_d, -p.x[2]);
  return {{{-m.w0_d, 1.0, 0.0},
           {0.0, 0.0, ln_a * y1},
           {-m.w0bar_d, 1.0, 0.0},
           {0.0, 0.0, -ln_a * y2}}};
}

namespace {

// alpha~ = y2 dx1 + y1 dx2 on the (x1,y1,x2,y2) chart.
KFormValue alpha_tilde(const BoundaryPoint& q) {
  KFormValue f(4, 1);
  f.set_coef(1u << 0, q.y2);
  f.set_coef(1u << 2, q.y1);
  return f;
}

Vec apply_jacobian(const std::array<std::array<double, 3>, 4>& j, const Vec& v) {
  Vec out;
  out.dim = 4;
  for (int r = 0; r < 4; ++r) {
    double acc = 0;
    for (int c = 0; c < 3; ++c)
      acc += j[static_cast<size_t>(r)][static_cast<size_t>(c)] * v.x[static_cast<size_t>(c)];
    out.x[static_cast<size_t>(r)] = acc;
  }
  return out;
}

ChartPoint sample_chart_point(const SamplePlan& plan, long i) {
  double mu = 0.5 + 0.4 * sample_u01(plan.seed, static_cast<uint64_t>(i), 32);
  double mv = 0.5 + 0.4 * sample_u01(plan.seed, static_cast<uint64_t>(i), 33);
  double tu = kTwoPi * sample_u01(plan.seed, static_cast<uint64_t>(i), 34);
  double tv = kTwoPi * sample_u01(plan.seed, static_cast<uint64_t>(i), 35);
  return ChartPoint{0, Cplx(mu * std::cos(tu), mu * std::sin(tu)),
                    Cplx(mv * std::cos(tv), mv * std::sin(tv))};
}

}  // namespace

std::vector<Report> phi_psi_checks(const CuspModel& m, const SamplePlan& plan) {
  ReportBuilder chart_rt("hz.phipsi.chart_roundtrip", plan.tol_or(1e-9));
  ReportBuilder upper_rt("hz.phipsi.upper_roundtrip", plan.tol_or(1e-9));
  ReportBuilder branch("hz.phipsi.branch_shift", plan.tol_or(1e-6));
  for (long i = 0; i < plan.n_samples; ++i) {
    // Psi after Phi on the chart band.
    ChartPoint c = sample_chart_point(plan, i);
    ChartPoint back = psi_map(m, phi_map(m, c));
    chart_rt.observe(i, std::max(std::abs(back.u - c.u), std::abs(back.v - c.v)));

    // Phi after Psi on fundamental-domain representatives of H x H / M.
    double mu = 0.05 + 0.9 * sample_u01(plan.seed, static_cast<uint64_t>(i), 36);
    double nu = 0.05 + 0.9 * sample_u01(plan.seed, static_cast<uint64_t>(i), 37);
    double y1 = 0.2 + 4.8 * sample_u01(plan.seed, static_cast<uint64_t>(i), 38);
    double y2 = 0.2 + 4.8 * sample_u01(plan.seed, static_cast<uint64_t>(i), 39);
    UpperPoint z{Cplx(mu * m.w0_d + nu, y1), Cplx(mu * m.w0bar_d + nu, y2)};
    UpperPoint zb = phi_map(m, psi_map(m, z));
    upper_rt.observe(i, std::max(std::abs(zb.z1 - z.z1), std::abs(zb.z2 - z.z2)));

    // A 2 pi i branch shift of log u0 moves (z1, z2) by (w0, w0bar).
    auto [z1, z2] = phi_map_raw(m, c);
    Cplx inv_2pii(0.0, -1.0 / kTwoPi);
    Cplx z1s = z1 + m.w0_d * Cplx(0.0, kTwoPi) * inv_2pii;
    Cplx z2s = z2 + m.w0bar_d * Cplx(0.0, kTwoPi) * inv_2pii;
    auto kl = lattice_decompose(m, (z1s - z1).real(), (z2s - z2).real(), plan.tol_or(1e-6));
    if (!kl || kl->first != 1 || kl->second != 0)
      branch.observe_failure(i, "branch shift did not decompose to (1,0)");
    else
      branch.observe(i, std::max(std::fabs((z1s - z1).real() - m.w0_d),
                                 std::fabs((z2s - z2).real() - m.w0bar_d)));
  }
  std::vector<Report> out;
  out.push_back(chart_rt.finish());
  out.push_back(upper_rt.finish());
  out.push_back(branch.finish());
  return out;
}

std::vector<Report> chart_checks(const CuspModel& m, const SamplePlan& plan) {
  long r = m.cycle.size();
  ReportBuilder power("hz.charts.powerlaw", plan.tol_or(1e-9));
  power.param("k_max", 2 * r);
  ReportBuilder cong("hz.charts.congruence", plan.tol_or(1e-9));
  cong.param("k_max", 2 * r);
  double cong_tau = plan.tol_or(1e-9);

  for (long i = 0; i < plan.n_samples; ++i) {
    ChartPoint c0 = sample_chart_point(plan, i);
    Cplx lu0 = std::log(c0.u), lv0 = std::log(c0.v);

    // Power law via the plain complex transitions. A coordinate can
    // underflow to an exact zero for huge p_k; that sample counts as
    // errored instead of aborting the run.
    double perr = 0.0;
    const char* perr_fail = nullptr;
    ChartPoint c = c0;
    try {
      for (long k = 1; k <= 2 * r; ++k) {
        c = chart_transition(m, c, +1);
        Cplx u_ref = std::exp(static_cast<double>(m.cf.pk(k).get_d()) * lu0 +
                              static_cast<double>(m.cf.qk(k).get_d()) * lv0);
        Cplx v_ref = std::exp(-(static_cast<double>(m.cf.pk(k - 1).get_d()) * lu0 +
                                static_cast<double>(m.cf.qk(k - 1).get_d()) * lv0));
        double eu = std::abs(c.u - u_ref) / std::max(1.0, std::abs(u_ref));
        double ev = std::abs(c.v - v_ref) / std::max(1.0, std::abs(v_ref));
        if (!std::isfinite(eu) || !std::isfinite(ev)) {
          perr_fail = "non-finite chart coordinate";
          break;
        }
        perr = std::max({perr, eu, ev});
      }
    } catch (const Error&) {
      perr_fail = "chart coordinate underflowed to a chart boundary";
    }
    if (perr_fail)
      power.observe_failure(i, perr_fail);
    else
      power.observe(i, perr);

    // A-weighted congruence: 2 pi i z1 = A_{k-1} Log u_k + A_k Log v_k modulo 2 pi i M,
    // iterated in log-polar form (ln|.| and principal argument) so deep
    // transitions stay in floating range.
    Cplx z1 = (m.w0_d * lu0 + lv0) * Cplx(0.0, -1.0 / kTwoPi);
    Cplx z2 = (m.w0bar_d * lu0 + lv0) * Cplx(0.0, -1.0 / kTwoPi);
    double cerr = 0.0;
    bool cong_witness = true;
    double lu_mag = std::log(std::abs(c0.u)), lv_mag = std::log(std::abs(c0.v));
    double lu_arg = std::arg(c0.u), lv_arg = std::arg(c0.v);
    for (long k = 1; k <= 2 * r; ++k) {
      long b = m.cycle.at(k - 1);
      double nu_mag = b * lu_mag + lv_mag;
      double nu_arg = wrap_to_pi(b * lu_arg + lv_arg);
      double nv_mag = -lu_mag;
      double nv_arg = wrap_to_pi(-lu_arg);
      lu_mag = nu_mag;
      lu_arg = nu_arg;
      lv_mag = nv_mag;
      lv_arg = nv_arg;
      Cplx log_uk(lu_mag, lu_arg), log_vk(lv_mag, lv_arg);
      Cplx inv_2pii(0.0, -1.0 / kTwoPi);
      Cplx d1 = z1 - (m.cf.Ak(k - 1).to_double() * log_uk + m.cf.Ak(k).to_double() * log_vk) *
                         inv_2pii;
      Cplx d2 = z2 - (m.cf.Ak(k - 1).conjugate().to_double() * log_uk +
                      m.cf.Ak(k).conjugate().to_double() * log_vk) *
                         inv_2pii;
      auto kl = lattice_decompose(m, d1.real(), d2.real(), cong_tau);
      if (!kl) {
        cong_witness = false;
        break;
      }
      double rec1 = std::fabs(d1.real() - (kl->first * m.w0_d + kl->second));
      double rec2 = std::fabs(d2.real() - (kl->first * m.w0bar_d + kl->second));
      cerr = std::max({cerr, rec1, rec2, std::fabs(d1.imag()), std::fabs(d2.imag())});
    }
    if (cong_witness)
      cong.observe(i, cerr);
    else
      cong.observe_failure(i, "no lattice witness for the congruence");
  }
  std::vector<Report> out;
  out.push_back(power.finish());
  out.push_back(cong.finish());
  return out;
}

std::vector<Report> levi_checks(const CuspModel& m, const SamplePlan& plan) {
  ReportBuilder at_unit("hz.levi.at_unit", 0.0);
  UpperPoint unit_pt{Cplx(0.0, 1.0), Cplx(0.0, 1.0)};
  auto l = levi_matrix(unit_pt);
  double unit_err = std::max({std::fabs(4.0 * l[0] - 2.0), std::fabs(4.0 * l[1] - 1.0),
                              std::fabs(4.0 * l[2] - 1.0), std::fabs(4.0 * l[3] - 2.0)});
  at_unit.observe(0, unit_err);

  ReportBuilder minors("hz.levi.minors", 0.0);
  double min_m1 = 0, min_m2 = 0;
  bool first = true;
  for (long i = 0; i < plan.n_samples; ++i) {
    double y1 = 0.01 + 99.99 * sample_u01(plan.seed, static_cast<uint64_t>(i), 40);
    double y2 = 0.01 + 99.99 * sample_u01(plan.seed, static_cast<uint64_t>(i), 41);
    auto lv = levi_matrix(UpperPoint{Cplx(0.0, y1), Cplx(0.0, y2)});
    double m1 = lv[0];
    double m2 = lv[0] * lv[3] - lv[1] * lv[2];
    if (first || m1 < min_m1) min_m1 = m1;
    if (first || m2 < min_m2) min_m2 = m2;
    first = false;
    minors.observe(i, (m1 > 0.0 && m2 > 0.0) ? 0.0 : 1.0);
  }
  minors.detail("min_leading_minor", min_m1);
  minors.detail("min_det", min_m2);

  ReportBuilder ginv("hz.levi.ginvariance", plan.tol_or(1e-12));
  long z_samples = std::min<long>(plan.n_samples, 50);
  for (long i = 0; i < z_samples; ++i) {
    double x1 = -5.0 + 10.0 * sample_u01(plan.seed, static_cast<uint64_t>(i), 42);
    double x2 = -5.0 + 10.0 * sample_u01(plan.seed, static_cast<uint64_t>(i), 43);
    double y1 = 0.1 + 9.9 * sample_u01(plan.seed, static_cast<uint64_t>(i), 44);
    double y2 = 0.1 + 9.9 * sample_u01(plan.seed, static_cast<uint64_t>(i), 45);
    UpperPoint z{Cplx(x1, y1), Cplx(x2, y2)};
    double phi = psh_value(z);
    double err = 0;
    for (long n = -3; n <= 3; ++n) {
      for (int j = 0; j < 20; ++j) {
        uint64_t ctr = static_cast<uint64_t>(i * 1024 + (n + 3) * 32 + j);
        long kk = static_cast<long>(std::floor(21.0 * sample_u01(plan.seed, ctr, 46))) - 10;
        long ll = static_cast<long>(std::floor(21.0 * sample_u01(plan.seed, ctr, 47))) - 10;
        QuadElem a = m.w0 * Rat(kk) + Rat(ll);
        double phi_g = psh_value(g_action(m, n, a, z));
        err = std::max(err, std::fabs(phi_g - phi) / std::fabs(phi));
      }
    }
    ginv.observe(i, err);
  }

  std::vector<Report> out;
  out.push_back(at_unit.finish());
  out.push_back(minors.finish());
  out.push_back(ginv.finish());
  return out;
}

std::vector<Report> pullback_check(const CuspModel& m, const SamplePlan& plan) {
  ReportBuilder pull("hz.link.pullback", plan.tol_or(1e-9));
  ReportBuilder jac("hz.link.jacobian_fd", plan.tol_or(1e-6));
  jac.param("h", plan.h);
  for (long i = 0; i < plan.n_samples; ++i) {
    Point p = sample_point(plan, i);
    Vec v = sample_vector(plan, i, 3, -1.0, 1.0);
    BoundaryPoint fp = f_map(m, p);
    KFormValue at = alpha_tilde(fp);
    auto jan = f_jacobian(m, p);
    std::array<Vec, 1> pushed{apply_jacobian(jan, v)};
    double lhs = at.evaluate(pushed);
    std::array<Vec, 1> vv{v};
    double rhs = m.s_d * m.sol.alpha_plus.eval(p).evaluate(vv);
    pull.observe(i, std::fabs(lhs - rhs));

    // fd Jacobian cross-check of the analytic Jacobian.
    std::array<std::array<double, 3>, 4> jfd{};
    for (int col = 0; col < 3; ++col) {
      Point hi = p, lo = p;
      hi.x[static_cast<size_t>(col)] += plan.h;
      lo.x[static_cast<size_t>(col)] -= plan.h;
      BoundaryPoint fhi = f_map(m, hi), flo = f_map(m, lo);
      double dhi[4] = {fhi.x1, fhi.y1, fhi.x2, fhi.y2};
      double dlo[4] = {flo.x1, flo.y1, flo.x2, flo.y2};
      for (int row = 0; row < 4; ++row)
        jfd[static_cast<size_t>(row)][static_cast<size_t>(col)] =
            (dhi[row] - dlo[row]) / (2.0 * plan.h);
    }
    std::array<Vec, 1> pushed_fd{apply_jacobian(jfd, v)};
    jac.observe(i, std::fabs(at.evaluate(pushed_fd) - lhs));
  }
  std::vector<Report> out;
  out.push_back(pull.finish());
  out.push_back(jac.finish());
  return out;
}

std::vector<Report> link_checks(const CuspModel& m, const SamplePlan& plan) {
  ReportBuilder hf("hz.link.hf_identity", plan.tol_or(1e-12));
  ReportBuilder boundary("hz.link.boundary", plan.tol_or(1e-12));
  ReportBuilder equi("hz.link.equivariance", 0.0);
  ReportBuilder shift("hz.link.lattice_shift", 0.0);
  double witness_tau = 1e-6;
  equi.param("tau", witness_tau);
  shift.param("tau", witness_tau);

  for (long i = 0; i < plan.n_samples; ++i) {
    double x = -2.0 + 4.0 * sample_u01(plan.seed, static_cast<uint64_t>(i), 48);
    double y = -2.0 + 4.0 * sample_u01(plan.seed, static_cast<uint64_t>(i), 49);
    double z = -1.0 + 3.0 * sample_u01(plan.seed, static_cast<uint64_t>(i), 50);
    Point p = Point::of({x, y, z});
    BoundaryPoint q = f_map(m, p);
    boundary.observe(i, std::fabs(q.y1 * q.y2 - 1.0));
    Point back = h_map(m, q);
    hf.observe(i, std::max({std::fabs(back.x[0] - p.x[0]), std::fabs(back.x[1] - p.x[1]),
                            std::fabs(back.x[2] - p.x[2])}));

    // Monodromy equivariance: F(A(x,y), 0) ~ F((x,y), 1) in the G-quotient.
    double x01 = sample_u01(plan.seed, static_cast<uint64_t>(i), 51);
    double y01 = sample_u01(plan.seed, static_cast<uint64_t>(i), 52);
    auto [ax, ay] = m.monodromy.apply(x01, y01);
    BoundaryPoint fa = f_map(m, Point::of({ax, ay, 0.0}));
    BoundaryPoint f1 = f_map(m, Point::of({x01, y01, 1.0}));
    auto w = quotient_equiv(m, f1, fa, witness_tau);
    if (!w || w->n != 1 || w->k != 0 || w->l != 0)
      equi.observe_failure(i, "missing witness (expected n=1, a=0)");
    else
      equi.observe(i, 0.0);

    // Integer T^2 shifts land in the same orbit via a pure lattice witness.
    long mm = (static_cast<long>(i) % 7) - 3;
    long nn = (static_cast<long>(i / 7) % 7) - 3;
    BoundaryPoint fs = f_map(m, Point::of({x01 + mm, y01 + nn, 0.5}));
    BoundaryPoint f0 = f_map(m, Point::of({x01, y01, 0.5}));
    auto ws = quotient_equiv(m, f0, fs, witness_tau);
    if (!ws || ws->n != 0 || ws->k != -mm || ws->l != nn)
      shift.observe_failure(i, "missing witness (expected n=0, a=-m*w0+n)");
    else
      shift.observe(i, 0.0);
  }
  std::vector<Report> out;
  out.push_back(hf.finish());
  out.push_back(boundary.finish());
  out.push_back(equi.finish());
  out.push_back(shift.finish());
  for (Report& r : pullback_check(m, plan)) out.push_back(std::move(r));
  return out;
}

}  // namespace cusplink
