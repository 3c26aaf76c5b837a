#pragma once

// Hirzebruch's construction data for a cusp cycle: charts R_k and their
// transitions, the maps Phi/Psi to H x H modulo the module M, the
// pluri-subharmonic function phi and its Levi form, the G(M,V)-action with a
// quotient-equivalence decision procedure, and the boundary-chart maps F/H
// together with the pullback identity F* alpha = sqrt(w0 - w0bar) (beta_+ + beta_-).

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "cusplink/monodromy.hpp"
#include "cusplink/solgeom.hpp"

namespace cusplink {

using Cplx = std::complex<double>;

struct UpperPoint {
  Cplx z1, z2;  // both in the upper half plane
};

// Point of boundary W(1) in coordinates (x1, y1, x2, y2): y1, y2 > 0 and
// y1*y2 = 1 within 1e-12.
struct BoundaryPoint {
  double x1, y1, x2, y2;
};
BoundaryPoint make_boundary_point(double x1, double y1, double x2, double y2);

struct ChartPoint {
  long k = 0;
  Cplx u, v;
};

struct CuspModel {
  BCycle cycle;
  CFData cf;
  QuadElem w0, w0bar, unit;  // exact; unit = A_r < 1
  double w0_d, w0bar_d;
  double a_d;  // to_real(A_r^{-1}) > 1
  double s_d;  // sqrt(w0 - w0bar) as a real number
  Mat2Z monodromy;  // {cycle_to_matrix(cycle)}^{-1}
  SolModel sol;      // T_A with the link frame v_+ = (1,w0)/s, v_- = -(1,w0bar)/s
};

CuspModel build_cusp_model(const BCycle& c);

// Unreduced principal-branch (z1, z2); the lattice/branch tests need it.
std::pair<Cplx, Cplx> phi_map_raw(const CuspModel& m, const ChartPoint& c);
// Canonical fundamental-domain representative modulo the M-translations.
UpperPoint phi_map(const CuspModel& m, const ChartPoint& c);
ChartPoint psi_map(const CuspModel& m, const UpperPoint& z);
ChartPoint chart_transition(const CuspModel& m, const ChartPoint& c, int direction);

double psh_value(const UpperPoint& z);
// Levi matrix L of phi (row-major); 4L = (1/(y1^3 y2^3)) [[2 y2^2, y1 y2],[y1 y2, 2 y1^2]].
std::array<double, 4> levi_matrix(const UpperPoint& z);

// Exact decomposition a = k*w0 + l in M, when it exists.
std::optional<std::pair<Int, Int>> decompose_in_module(const CuspModel& m, const QuadElem& a);

UpperPoint g_action(const CuspModel& m, long n, const QuadElem& a, const UpperPoint& p);
BoundaryPoint g_action(const CuspModel& m, long n, const QuadElem& a, const BoundaryPoint& p);

std::optional<std::pair<long, long>> lattice_decompose(const CuspModel& m, double t1, double t2,
                                                       double tau);

struct GWitness {
  long n;
  long k, l;  // lattice element k*w0 + l
};
// Witness g = (n, k*w0+l) with q = g . p, or nullopt.
std::optional<GWitness> quotient_equiv(const CuspModel& m, const BoundaryPoint& p,
                                       const BoundaryPoint& q, double tau);

BoundaryPoint f_map(const CuspModel& m, const Point& p);  // p = (x, y, z)
Point h_map(const CuspModel& m, const BoundaryPoint& q);
// Analytic Jacobian of f_map: rows (x1,y1,x2,y2), columns (x,y,z).
std::array<std::array<double, 3>, 4> f_jacobian(const CuspModel& m, const Point& p);

std::vector<Report> phi_psi_checks(const CuspModel& m, const SamplePlan& plan);
std::vector<Report> chart_checks(const CuspModel& m, const SamplePlan& plan);
std::vector<Report> levi_checks(const CuspModel& m, const SamplePlan& plan);
std::vector<Report> pullback_check(const CuspModel& m, const SamplePlan& plan);
std::vector<Report> link_checks(const CuspModel& m, const SamplePlan& plan);

}  // namespace cusplink
