#pragma once

// Lutz tube (3d) and Lutz-Mori tube (5d) contact forms built from the Geiges
// pair (alpha_+, alpha_-) on T_A, with sampled contact-condition certification.

#include <vector>

#include "cusplink/solgeom.hpp"

namespace cusplink {

// Tube chart (z, s, theta); s in [0, pi], theta mod 2 pi.
struct TubePoint3 {
  double z, s, theta;
};
// Tube chart (x, y, z, s, theta) over T_A x D^2.
struct TubePoint5 {
  double x, y, z, s, theta;
};

TubePoint3 make_tube_point3(double z, double s, double theta);
TubePoint5 make_tube_point5(double x, double y, double z, double s, double theta);

// lambda = -cos s dz - s sin s dtheta
KFormValue lutz_form3(const TubePoint3& p);
FormField lutz_field3();  // with the analytic derivative registered

// lambda = (1-cos s)/2 alpha_+ + (1+cos s)/2 alpha_- - s sin s dtheta
KFormValue lutz_mori_form5(const SolModel& m, const TubePoint5& p);
FormField lutz_mori_field5(const SolModel& m);

std::vector<Report> contact3_check(const SamplePlan& plan, double s_min = 0.01);
std::vector<Report> contact5_check(const SolModel& m, const SamplePlan& plan, double s_min = 0.05);
Report boundary_match_check(const SolModel& m, const SamplePlan& plan);

std::vector<Report> lutz3_suite(const SamplePlan& plan);
std::vector<Report> lutz5_suite(const SolModel& m, const SamplePlan& plan);

}  // namespace cusplink
